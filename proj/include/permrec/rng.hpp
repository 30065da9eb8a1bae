#pragma once

#include <cmath>
#include <cstdint>

namespace permrec {

/// Seeded xoshiro256++ generator with a Box-Muller Gaussian source.
///
/// The generator algorithm is fixed (not stdlib-delegated) so that streams are
/// bit-identical across platforms and toolchains for a given seed. Gaussian
/// draws go through Box-Muller rather than std::normal_distribution for the
/// same reason.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01();

    /// Unbiased integer in [0, bound) via rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal deviate (Box-Muller, second value cached).
    double gaussian();

    /// Stream seed for (master_seed, cell_index, trial_index).
    /// splitmix64 chaining keeps distinct triples on distinct streams, so
    /// trials stay reproducible under any parallel schedule.
    static std::uint64_t derive_seed(std::uint64_t master_seed,
                                     std::uint64_t cell_index,
                                     std::uint64_t trial_index);

  private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace permrec

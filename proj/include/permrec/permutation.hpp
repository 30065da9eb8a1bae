#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permrec/matrix.hpp"
#include "permrec/rng.hpp"

namespace permrec {

/// A bijection on {0..n-1}, stored as its mapping i -> pi(i).
/// Dense 0/1 matrix forms appear only in test oracles.
class Permutation {
  public:
    static Permutation identity(std::size_t n);
    /// Validates that mapping is a bijection.
    static Permutation from_mapping(std::vector<std::size_t> mapping);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& mapping() const { return map_; }

    Permutation inverse() const;
    /// (a.compose(b))(i) = a(b(i))
    Permutation compose(const Permutation& other) const;

    bool operator==(const Permutation& other) const { return map_ == other.map_; }
    bool operator!=(const Permutation& other) const { return map_ != other.map_; }

    /// One line of space-separated 1-based images pi(1)..pi(n).
    std::string to_line() const;
    static Permutation from_line(const std::string& line);

  private:
    explicit Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {}
    std::vector<std::size_t> map_;
};

/// Number of indices where the mappings disagree. Symmetric, never 1.
std::size_t hamming(const Permutation& p1, const Permutation& p2);

/// Row permutation: output row p(i) is input row i, i.e. Pi * M for the
/// matrix Pi with Pi[p(i), i] = 1.
DenseMatrix apply_rows(const Permutation& p, const DenseMatrix& m);

/// Permutation at Hamming distance exactly h from the identity: the displaced
/// index set is a uniform h-subset and its restriction a uniform derangement
/// (rejection sampled). h must be 0 or in [2, n].
Permutation sample_with_hamming(std::size_t n, std::size_t h, SeededRng& rng);

}  // namespace permrec

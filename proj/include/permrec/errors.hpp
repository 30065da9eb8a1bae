#pragma once

#include <stdexcept>
#include <string>

namespace permrec {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

struct ZeroMatrix : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct InfeasibleHamming : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct InvalidSpectrum : Error {
    using Error::Error;
};

struct HypothesisViolated : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace permrec

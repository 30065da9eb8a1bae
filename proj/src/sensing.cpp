#include "permrec/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permrec/errors.hpp"

namespace permrec {

std::string Spectrum::label() const {
    switch (kind) {
        case Kind::RankOne:
            return "rank1";
        case Kind::FullRankEqual:
            return "fullrank";
        case Kind::Explicit: {
            std::ostringstream os;
            os << "explicit:";
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (i) os << ';';
                os << values[i];
            }
            return os.str();
        }
    }
    return "?";
}

Spectrum Spectrum::parse(const std::string& text) {
    if (text == "rank1") return rank_one();
    if (text == "fullrank") return full_rank_equal();
    const std::string prefix = "explicit:";
    if (text.rfind(prefix, 0) == 0) {
        std::vector<double> vals;
        std::string body = text.substr(prefix.size());
        std::replace(body.begin(), body.end(), ';', ',');
        std::istringstream is(body);
        std::string item;
        while (std::getline(is, item, ',')) {
            if (item.empty()) continue;
            vals.push_back(std::stod(item));
        }
        return explicit_values(std::move(vals));
    }
    throw ConfigError("unknown spectrum '" + text + "' (expected rank1|fullrank|explicit:<csv>)");
}

void ModelParams::validate() const {
    if (n < 2 * p || p == 0) throw ConfigError("ModelParams: need n >= 2p and p >= 1");
    if (h == 1 || h > n) throw ConfigError("ModelParams: h must be 0 or in [2, n]");
    if (m < 1) throw ConfigError("ModelParams: m >= 1 required");
    if (!(snr > 0.0)) throw ConfigError("ModelParams: snr must be positive");
    if (!(sigma_sq > 0.0)) throw ConfigError("ModelParams: sigma_sq must be positive");
    if (spectrum.kind == Spectrum::Kind::Explicit) {
        if (spectrum.values.empty() || spectrum.values.size() > std::min(p, m))
            throw InvalidSpectrum("explicit spectrum needs 1..min(p,m) values");
        for (double v : spectrum.values)
            if (!(v > 0.0)) throw InvalidSpectrum("explicit singular values must be positive");
    }
}

double snr_of(const DenseMatrix& b, double sigma_sq, std::size_t m) {
    const double energy = frobenius_norm_sq(b);
    if (energy < 1e-300) throw ZeroMatrix("snr_of: B is numerically zero");
    return energy / (static_cast<double>(m) * sigma_sq);
}

DenseMatrix make_b_star(const ModelParams& params) {
    params.validate();
    DenseMatrix b(params.p, params.m);
    switch (params.spectrum.kind) {
        case Spectrum::Kind::RankOne:
            for (std::size_t j = 0; j < params.m; ++j) b(0, j) = 1.0;
            break;
        case Spectrum::Kind::FullRankEqual:
            for (std::size_t j = 0; j < params.m; ++j) b(j % params.p, j) = 1.0;
            break;
        case Spectrum::Kind::Explicit:
            for (std::size_t k = 0; k < params.spectrum.values.size(); ++k)
                b(k, k) = params.spectrum.values[k];
            break;
    }
    const double target = params.snr * static_cast<double>(params.m) * params.sigma_sq;
    const double factor = std::sqrt(target / frobenius_norm_sq(b));
    for (double& v : b.data()) v *= factor;
    b.require_finite();  // snr * m * sigma_sq can overflow the energy budget
    return b;
}

SensingInstance generate(const ModelParams& params, SeededRng& rng) {
    params.validate();
    DenseMatrix x(params.n, params.p);
    for (double& v : x.data()) v = rng.gaussian();

    DenseMatrix b = make_b_star(params);

    Permutation pi = sample_with_hamming(params.n, params.h, rng);

    const double sigma = std::sqrt(params.sigma_sq);
    DenseMatrix w(params.n, params.m);
    for (double& v : w.data()) v = sigma * rng.gaussian();

    const DenseMatrix signal = apply_rows(pi, x * b);
    DenseMatrix y = signal + w;
    // store the rounded residual (<= 1 ulp from the Gaussian draw) so that
    // Y - Pi X B == W holds bitwise for any later reconstruction
    w = y - signal;
    return SensingInstance{params, std::move(x), std::move(b), std::move(pi), std::move(w),
                           std::move(y)};
}

double residual(const Permutation& p, const DenseMatrix& x, const DenseMatrix& y) {
    if (p.size() != x.rows() || x.rows() != y.rows())
        throw SizeMismatch("residual: incompatible shapes");
    const Projector proj = orth_projector(apply_rows(p, x));
    const double total = frobenius_norm_sq(y);
    return std::max(0.0, total - proj.projected_norm_sq(y));
}

}  // namespace permrec

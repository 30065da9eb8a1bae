#include "permrec/permutation.hpp"

#include <sstream>

#include "permrec/errors.hpp"

namespace permrec {

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::from_mapping(std::vector<std::size_t> mapping) {
    std::vector<bool> seen(mapping.size(), false);
    for (std::size_t v : mapping) {
        if (v >= mapping.size() || seen[v])
            throw Error("Permutation: mapping is not a bijection");
        seen[v] = true;
    }
    return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (size() != other.size()) throw SizeMismatch("compose: size mismatch");
    std::vector<std::size_t> m(size());
    for (std::size_t i = 0; i < size(); ++i) m[i] = map_[other.map_[i]];
    return Permutation(std::move(m));
}

std::string Permutation::to_line() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (i) os << ' ';
        os << map_[i] + 1;
    }
    return os.str();
}

Permutation Permutation::from_line(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::size_t> m;
    long long v;
    while (is >> v) {
        if (v < 1) throw Error("Permutation::from_line: images are 1-based");
        m.push_back(static_cast<std::size_t>(v - 1));
    }
    return from_mapping(std::move(m));
}

std::size_t hamming(const Permutation& p1, const Permutation& p2) {
    if (p1.size() != p2.size()) throw SizeMismatch("hamming: size mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (p1(i) != p2(i)) ++d;
    return d;
}

DenseMatrix apply_rows(const Permutation& p, const DenseMatrix& m) {
    if (p.size() != m.rows()) throw SizeMismatch("apply_rows: permutation size != rows");
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const std::size_t t = p(i);
        for (std::size_t j = 0; j < m.cols(); ++j) out(t, j) = m(i, j);
    }
    return out;
}

Permutation sample_with_hamming(std::size_t n, std::size_t h, SeededRng& rng) {
    if (h == 1 || h > n)
        throw InfeasibleHamming("sample_with_hamming: h must be 0 or in [2, n]");
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i;
    if (h == 0) return Permutation::from_mapping(std::move(map));

    // uniform h-subset: partial Fisher-Yates
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t k = 0; k < h; ++k)
        std::swap(pool[k], pool[k + rng.below(n - k)]);
    pool.resize(h);

    // uniform derangement of the h chosen slots by rejection (expected < e tries)
    std::vector<std::size_t> d(h);
    while (true) {
        for (std::size_t i = 0; i < h; ++i) d[i] = i;
        for (std::size_t k = 0; k + 1 < h; ++k)
            std::swap(d[k], d[k + rng.below(h - k)]);
        bool fixed_point = false;
        for (std::size_t i = 0; i < h; ++i)
            if (d[i] == i) {
                fixed_point = true;
                break;
            }
        if (!fixed_point) break;
    }
    for (std::size_t i = 0; i < h; ++i) map[pool[i]] = pool[d[i]];
    return Permutation::from_mapping(std::move(map));
}

}  // namespace permrec

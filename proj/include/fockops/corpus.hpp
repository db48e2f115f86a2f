#pragma once

#include <fockops/exp_poly.hpp>

#include <random>
#include <string>
#include <vector>

namespace fockops {

struct CorpusEntry {
    std::string id;
    ExpPolyFunction f;
};

namespace detail {

/// Uniform in [lo, hi) from the raw 64-bit stream; independent of the
/// standard library's distribution implementations.
inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

} // namespace detail

/// Deterministic corpus of exp-poly functions of order at most one:
/// a handful of named members, then random polynomials (degree <= 12)
/// times e^{a0 + a1 z} with |a1| <= 0.6. The first 30 entries do not depend
/// on `size`, so a larger corpus extends a smaller one.
inline std::vector<CorpusEntry> function_corpus(int size = 30, unsigned long long seed = 0x5eedf0c5ULL)
{
    std::vector<CorpusEntry> out;
    out.push_back({"one", ExpPolyFunction::constant(1.0)});
    out.push_back({"z", ExpPolyFunction::monomial(1)});
    out.push_back({"z^3", ExpPolyFunction::monomial(3)});
    out.push_back({"z^8", ExpPolyFunction::monomial(8)});
    out.push_back({"k_(0.5-0.3i)", ExpPolyFunction::normalized_kernel({0.5, -0.3})});
    out.push_back({"e^(z/2)", ExpPolyFunction::exponential(0.0, 0.5)});
    out.push_back({"1+z^2", ExpPolyFunction({1.0, 0.0, 1.0}, {})});
    out.push_back({"(z-1)e^(0.3iz)", ExpPolyFunction({-1.0, 1.0}, {0.0, Complex{0.0, 0.3}, 0.0})});
    std::mt19937_64 rng(seed);
    for (int i = static_cast<int>(out.size()); i < size; ++i) {
        const int deg = static_cast<int>(detail::uniform(rng, 0.0, 13.0));
        poly::Coeffs c(deg + 1);
        for (int k = 0; k <= deg; ++k) {
            // scale by 1/sqrt(k!) so all degrees contribute comparably
            const double s = std::exp(-0.5 * std::lgamma(k + 1.0));
            c[k] = {detail::uniform(rng, -1.0, 1.0) * s, detail::uniform(rng, -1.0, 1.0) * s};
        }
        if (c[deg] == Complex{})
            c[deg] = 1.0;
        const double rad = detail::uniform(rng, 0.0, 0.6);
        const double ang = detail::uniform(rng, 0.0, 2.0 * kPi);
        const Complex a0{detail::uniform(rng, -0.5, 0.5), detail::uniform(rng, -kPi, kPi)};
        out.push_back({"random_" + std::to_string(i), ExpPolyFunction(c, {a0, std::polar(rad, ang), Complex{}})});
    }
    out.resize(std::min<std::size_t>(out.size(), static_cast<std::size_t>(std::max(size, 0))));
    return out;
}

} // namespace fockops

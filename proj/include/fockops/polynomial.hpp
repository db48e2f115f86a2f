#pragma once

#include <fockops/types.hpp>

#include <Eigen/Eigenvalues>

#include <span>
#include <vector>

namespace fockops::poly {

// Coefficient vectors are stored in ascending degree.
using Coeffs = std::vector<Complex>;

inline Complex horner(std::span<const Complex> c, Complex z)
{
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

/// Drops trailing exact zeros, keeping at least one coefficient.
inline Coeffs trimmed(Coeffs c)
{
    while (c.size() > 1 && c.back() == Complex{})
        c.pop_back();
    if (c.empty())
        c.push_back(Complex{});
    return c;
}

inline bool is_zero(std::span<const Complex> c)
{
    for (const auto& x : c)
        if (x != Complex{})
            return false;
    return true;
}

inline int degree(std::span<const Complex> c)
{
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != Complex{})
            return k;
    return 0;
}

inline Coeffs derivative(std::span<const Complex> c)
{
    if (c.size() <= 1)
        return Coeffs{Complex{}};
    Coeffs d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

inline Coeffs add(std::span<const Complex> a, std::span<const Complex> b)
{
    Coeffs r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k)
        r[k] += b[k];
    return r;
}

/// Full product; `max_len` truncates the result when nonzero.
inline Coeffs multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t max_len = 0)
{
    if (a.empty() || b.empty())
        return Coeffs{Complex{}};
    std::size_t len = a.size() + b.size() - 1;
    if (max_len != 0)
        len = std::min(len, max_len);
    Coeffs r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == Complex{})
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Coefficients of c(a z + b), computed by Horner on polynomials.
inline Coeffs compose_affine(std::span<const Complex> c, Complex a, Complex b)
{
    Coeffs r{Complex{}};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Coeffs next(r.size() + 1);
        for (std::size_t k = 0; k < r.size(); ++k) {
            next[k] += b * r[k];
            next[k + 1] += a * r[k];
        }
        next[0] += *it;
        r = std::move(next);
    }
    r.resize(c.empty() ? 1 : c.size());
    return r;
}

/// Nonzero roots by companion-matrix eigenvalues; roots at the origin are
/// factored out first.
inline std::vector<Complex> nonzero_roots(std::span<const Complex> c)
{
    const int deg = degree(c);
    int low = 0;
    while (low < deg && c[low] == Complex{})
        ++low;
    const int n = deg - low;
    if (n <= 0)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -c[low + i] / c[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

} // namespace fockops::poly

#pragma once

#include <fockops/exp_poly.hpp>

namespace fockops {

/// Truncated power series c_0 + c_1 z + ... + c_N z^N.
///
/// The stored polynomial is exact; what it approximates (if anything) is the
/// caller's business, with truncation_error_estimate() as a tail heuristic.
class TaylorFunction {
public:
    static constexpr int kDefaultCap = 256;

    TaylorFunction() : coeffs_{Complex{}} {}
    explicit TaylorFunction(poly::Coeffs c) : coeffs_(std::move(c))
    {
        if (coeffs_.empty())
            coeffs_.push_back(Complex{});
    }
    TaylorFunction(poly::Coeffs c, int truncation_degree) : coeffs_(std::move(c))
    {
        if (truncation_degree < 0)
            throw std::invalid_argument("truncation degree must be nonnegative");
        coeffs_.resize(static_cast<std::size_t>(truncation_degree) + 1);
    }

    static TaylorFunction monomial(int k, Complex c = 1.0)
    {
        poly::Coeffs p(static_cast<std::size_t>(k) + 1);
        p[k] = c;
        return TaylorFunction(std::move(p));
    }

    const poly::Coeffs& coeffs() const { return coeffs_; }
    int truncation_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex coeff(int k) const
    {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
    }

    bool is_zero() const { return poly::is_zero(coeffs_); }
    Complex operator()(Complex z) const { return poly::horner(coeffs_, z); }
    double log_abs(Complex z) const { return fockops::log_abs((*this)(z)); }
    LoggedValue evaluate_logged(Complex z) const
    {
        Complex v = (*this)(z);
        return {v, fockops::log_abs(v)};
    }

    /// Geometric tail estimate of sum_{k>N} |c_k| R^k from the last few
    /// coefficients; +inf when they are not decaying at radius R.
    double truncation_error_estimate(double radius) const
    {
        const int n = truncation_degree();
        if (n < 4)
            return is_zero() ? 0.0 : kInf;
        double ratio = 0.0;
        for (int k = n - 4; k < n; ++k) {
            double lo = std::abs(coeffs_[k]);
            double hi = std::abs(coeffs_[k + 1]);
            if (lo == 0.0) {
                if (hi != 0.0)
                    return kInf;
                continue;
            }
            ratio = std::max(ratio, hi * radius / lo);
        }
        if (ratio >= 1.0)
            return kInf;
        double last = std::abs(coeffs_[n]) * std::pow(radius, n);
        // plus the rounding floor of summing the kept terms
        double mass = 0.0;
        for (int k = 0; k <= n; ++k)
            mass += std::abs(coeffs_[k]) * std::pow(radius, k);
        return last * ratio / (1.0 - ratio) + 4.0 * n * std::numeric_limits<double>::epsilon() * mass;
    }

    bool operator==(const TaylorFunction&) const = default;

private:
    poly::Coeffs coeffs_;
};

inline TaylorFunction differentiate(const TaylorFunction& f, int n = 1)
{
    if (n < 0)
        throw std::invalid_argument("derivative order must be nonnegative");
    poly::Coeffs c = f.coeffs();
    for (int i = 0; i < n; ++i)
        c = poly::derivative(c);
    return TaylorFunction(std::move(c));
}

inline TaylorFunction compose_affine(const TaylorFunction& f, const AffineSymbol& psi)
{
    const Complex a = psi.is_constant ? Complex{} : psi.a;
    return TaylorFunction(poly::compose_affine(f.coeffs(), a, psi.b), f.truncation_degree());
}

/// Product of two truncated series; the full product degree must fit in `cap`.
inline TaylorFunction multiply(const TaylorFunction& f, const TaylorFunction& g,
                               int cap = TaylorFunction::kDefaultCap)
{
    int deg = f.truncation_degree() + g.truncation_degree();
    if (deg > cap)
        throw TruncationOverflow("Taylor product degree " + std::to_string(deg) + " exceeds cap " +
                                 std::to_string(cap));
    return TaylorFunction(poly::multiply(f.coeffs(), g.coeffs()), deg);
}

/// Taylor coefficients c_0..c_N of an exp-poly function.
inline TaylorFunction to_taylor(const ExpPolyFunction& f, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("degree must be nonnegative");
    const auto& e = f.expo();
    const std::size_t len = static_cast<std::size_t>(degree) + 1;
    // exp(Q)' = Q' exp(Q)  =>  (k+1) g_{k+1} = a1 g_k + 2 a2 g_{k-1}
    poly::Coeffs g(len);
    g[0] = std::exp(e[0]);
    for (std::size_t k = 0; k + 1 < len; ++k) {
        Complex next = e[1] * g[k];
        if (k >= 1)
            next += 2.0 * e[2] * g[k - 1];
        g[k + 1] = next / static_cast<double>(k + 1);
    }
    return TaylorFunction(poly::multiply(f.poly(), g, len), degree);
}

/// Taylor x exp-poly keeps the Taylor operand's truncation degree.
inline TaylorFunction multiply(const TaylorFunction& f, const ExpPolyFunction& g)
{
    auto gt = to_taylor(g, f.truncation_degree());
    return TaylorFunction(poly::multiply(f.coeffs(), gt.coeffs(), f.coeffs().size()), f.truncation_degree());
}

inline TaylorFunction multiply(const ExpPolyFunction& g, const TaylorFunction& f) { return multiply(f, g); }

/// Integral from 0 to z: c_k -> c_k / (k+1) at degree k+1.
inline TaylorFunction antiderivative(const TaylorFunction& f, int cap = TaylorFunction::kDefaultCap)
{
    if (f.truncation_degree() >= cap)
        throw TruncationOverflow("antiderivative would exceed truncation cap " + std::to_string(cap));
    poly::Coeffs c(f.coeffs().size() + 1);
    for (std::size_t k = 0; k < f.coeffs().size(); ++k)
        c[k + 1] = f.coeffs()[k] / static_cast<double>(k + 1);
    return TaylorFunction(std::move(c));
}

/// Series quotient q with q * den = num through degree N; den(0) must be nonzero.
inline TaylorFunction divide(const TaylorFunction& num, const TaylorFunction& den, int degree)
{
    if (den.coeff(0) == Complex{})
        throw std::domain_error("series division by a function vanishing at the origin");
    poly::Coeffs q(static_cast<std::size_t>(degree) + 1);
    const Complex d0 = den.coeff(0);
    for (int k = 0; k <= degree; ++k) {
        Complex acc = num.coeff(k);
        for (int j = 1; j <= k && j <= den.truncation_degree(); ++j)
            acc -= den.coeff(j) * q[k - j];
        q[k] = acc / d0;
    }
    return TaylorFunction(std::move(q), degree);
}

} // namespace fockops

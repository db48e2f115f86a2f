#pragma once

#include <fockops/affine.hpp>
#include <fockops/polynomial.hpp>

#include <array>

namespace fockops {

/// Value together with log|f(z)|; the log survives when the value overflows.
struct LoggedValue {
    Complex value;
    double log_modulus;
};

/// P(z) * exp(a0 + a1 z + a2 z^2).
///
/// The family is closed under differentiation, affine composition and
/// products, and it contains every symbol u*psi^n of a bounded weighted
/// composition-differentiation operator as well as the kernels K_w.
class ExpPolyFunction {
public:
    ExpPolyFunction() : poly_{Complex{}}, expo_{} {}
    ExpPolyFunction(poly::Coeffs poly, std::array<Complex, 3> expo)
        : poly_(poly::trimmed(std::move(poly))), expo_(expo)
    {
    }

    static ExpPolyFunction constant(Complex c) { return {{c}, {}}; }
    static ExpPolyFunction monomial(int k, Complex c = 1.0)
    {
        poly::Coeffs p(static_cast<std::size_t>(k) + 1);
        p[k] = c;
        return {std::move(p), {}};
    }
    static ExpPolyFunction exponential(Complex a0, Complex a1, Complex a2 = {})
    {
        return {{Complex{1.0, 0.0}}, {a0, a1, a2}};
    }
    /// K_w(z) = exp(conj(w) z).
    static ExpPolyFunction kernel(Complex w) { return exponential(0.0, std::conj(w)); }
    /// k_w(z) = exp(conj(w) z - |w|^2 / 2), unit norm in every F_p.
    static ExpPolyFunction normalized_kernel(Complex w)
    {
        return exponential(-0.5 * std::norm(w), std::conj(w));
    }

    const poly::Coeffs& poly() const { return poly_; }
    const std::array<Complex, 3>& expo() const { return expo_; }

    bool is_zero() const { return poly::is_zero(poly_); }
    /// True when f is a constant multiple of exp(Q), i.e. zero-free unless zero.
    bool has_constant_poly() const { return poly::degree(poly_) == 0; }
    bool is_polynomial() const { return expo_[1] == Complex{} && expo_[2] == Complex{}; }

    Complex exponent_at(Complex z) const { return expo_[0] + z * (expo_[1] + z * expo_[2]); }
    Complex exponent_derivative_at(Complex z) const { return expo_[1] + 2.0 * expo_[2] * z; }

    double log_abs(Complex z) const
    {
        return fockops::log_abs(poly::horner(poly_, z)) + exponent_at(z).real();
    }

    LoggedValue evaluate_logged(Complex z) const
    {
        Complex p = poly::horner(poly_, z);
        Complex q = exponent_at(z);
        double lm = fockops::log_abs(p) + q.real();
        if (std::abs(q.real()) <= 700.0)
            return {p * std::exp(q), lm};
        if (p == Complex{})
            return {Complex{}, lm};
        double phase = std::arg(p) + q.imag();
        double mag = std::exp(lm);
        auto scaled = [mag](double c) { return c == 0.0 ? 0.0 : mag * c; };
        return {Complex{scaled(std::cos(phase)), scaled(std::sin(phase))}, lm};
    }

    Complex operator()(Complex z) const { return evaluate_logged(z).value; }

    /// Exact order of growth: 2 if a2 != 0, 1 if a2 == 0 != a1, else 0.
    int symbolic_order() const
    {
        if (is_zero())
            return 0;
        if (expo_[2] != Complex{})
            return 2;
        if (expo_[1] != Complex{})
            return 1;
        return 0;
    }

    bool operator==(const ExpPolyFunction&) const = default;

private:
    poly::Coeffs poly_;
    std::array<Complex, 3> expo_;
};

inline ExpPolyFunction differentiate(const ExpPolyFunction& f, int n = 1)
{
    if (n < 0)
        throw std::invalid_argument("derivative order must be nonnegative");
    poly::Coeffs p = f.poly();
    const auto& e = f.expo();
    const poly::Coeffs qprime{e[1], 2.0 * e[2]};
    for (int i = 0; i < n; ++i)
        p = poly::add(poly::derivative(p), poly::multiply(p, qprime));
    return {std::move(p), e};
}

inline ExpPolyFunction compose_affine(const ExpPolyFunction& f, const AffineSymbol& psi)
{
    const Complex a = psi.is_constant ? Complex{} : psi.a;
    const Complex b = psi.b;
    const auto& e = f.expo();
    std::array<Complex, 3> q{e[0] + e[1] * b + e[2] * b * b, e[1] * a + 2.0 * e[2] * a * b, e[2] * a * a};
    return {poly::compose_affine(f.poly(), a, b), q};
}

inline ExpPolyFunction multiply(const ExpPolyFunction& f, const ExpPolyFunction& g)
{
    const auto& e = f.expo();
    const auto& h = g.expo();
    return {poly::multiply(f.poly(), g.poly()), {e[0] + h[0], e[1] + h[1], e[2] + h[2]}};
}

inline ExpPolyFunction scale(const ExpPolyFunction& f, Complex c)
{
    poly::Coeffs p = f.poly();
    for (auto& x : p)
        x *= c;
    return {std::move(p), f.expo()};
}

} // namespace fockops

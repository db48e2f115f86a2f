#pragma once

#include <fockops/operator_spec.hpp>

#include <Eigen/Eigenvalues>

#include <vector>

namespace fockops {

/// Zeros of a polynomial (ascending coefficients) via the companion matrix.
inline std::vector<Complex> polynomial_roots(const poly::Coeffs& c)
{
    const int deg = poly::degree(c);
    if (deg == 0)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    const Complex lead = c[deg];
    for (int i = 1; i < deg; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -c[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);
    return roots;
}

/// Raised when the weight u vanishes where the preimage has to divide by it.
class WeightVanishes : public Error {
public:
    WeightVanishes(Complex where)
        : Error("weight u vanishes at z = (" + std::to_string(where.real()) + ", " + std::to_string(where.imag()) +
                ")"),
          location(where)
    {
    }
    Complex location;
};

struct PreimageResult {
    TaylorFunction f;
    double residual = 0.0;     // sup over the check grid of |T f - h|
    double check_radius = 0.0;
};

struct PreimageOptions {
    int degree = 60;
    double check_radius = 3.0;
    int radial_points = 24;
    int angular_points = 64;
};

/// Solves u * (f^{(n)} o psi) = h for f as a truncated series: the series of
/// (h / u) o psi^{-1} is integrated n times from 0.
inline PreimageResult solve_preimage(const ExpPolyFunction& h, const OperatorSpec& spec,
                                     const PreimageOptions& opt = {})
{
    if (spec.psi.is_constant)
        throw std::domain_error("preimage requires a non-constant symbol psi");
    if (opt.degree + spec.n > TaylorFunction::kDefaultCap)
        throw TruncationOverflow("preimage degree plus n exceeds the truncation cap");
    for (Complex z0 : polynomial_roots(spec.u.poly()))
        if (std::abs(z0) <= opt.check_radius)
            throw WeightVanishes(z0);
    if (spec.u.is_zero())
        throw WeightVanishes(Complex{});

    const AffineSymbol inv = spec.psi.inverse();
    TaylorFunction g;
    if (spec.u.has_constant_poly()) {
        const auto& ue = spec.u.expo();
        const auto& he = h.expo();
        ExpPolyFunction quotient(h.poly(), {he[0] - ue[0], he[1] - ue[1], he[2] - ue[2]});
        quotient = scale(quotient, 1.0 / spec.u.poly()[0]);
        g = to_taylor(compose_affine(quotient, inv), opt.degree);
    } else {
        auto num = to_taylor(compose_affine(h, inv), opt.degree);
        auto den = to_taylor(compose_affine(spec.u, inv), opt.degree);
        g = divide(num, den, opt.degree);
    }
    for (int i = 0; i < spec.n; ++i)
        g = antiderivative(g);

    PreimageResult out{g, 0.0, opt.check_radius};
    const TaylorFunction gn = differentiate(g, spec.n);
    for (int i = 0; i <= opt.radial_points; ++i) {
        double r = opt.check_radius * i / opt.radial_points;
        for (int j = 0; j < opt.angular_points; ++j) {
            Complex z = std::polar(r, 2.0 * kPi * j / opt.angular_points);
            double err = std::abs(spec.apply_at(gn, z) - h(z));
            out.residual = std::max(out.residual, err);
            if (i == 0)
                break;
        }
    }
    return out;
}

} // namespace fockops

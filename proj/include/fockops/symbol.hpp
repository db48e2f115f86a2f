#pragma once

#include <fockops/operator_spec.hpp>
#include <fockops/quadrature.hpp>

#include <optional>
#include <vector>

namespace fockops {

/// Tolerance on the defining real equalities (|a| = 1, |a2| = (1-|a|^2)/2, ...).
inline constexpr double kBoundaryTol = 1e-12;
/// Within this distance of a boundary the report carries a warning.
inline constexpr double kBoundaryWarn = 1e-9;

struct LValue {
    double value;
    double log_value;
};

/// L(z) = |u(z)| |psi(z)|^n exp((|psi(z)|^2 - |z|^2) / 2), in the log domain.
inline LValue L_value(const OperatorSpec& spec, Complex z)
{
    const Complex w = spec.psi(z);
    double lv = spec.u.log_abs(z) + 0.5 * (std::norm(w) - std::norm(z));
    if (spec.n > 0)
        lv += spec.n * log_abs(w);
    if (std::isnan(lv))
        lv = -kInf;
    return {std::exp(lv), lv};
}

/// log L = log|Pi| + k0 + Re(ell z) + Re(a2 z^2) + c |z|^2 with Pi = P psi^n,
/// c = (|a|^2 - 1)/2, ell = a1 + a conj(b), k0 = Re a0 + |b|^2/2. In real
/// coordinates the quadratic part is x^T Q x with Q = [[c+al, -be], [-be, c-al]],
/// a2 = al + i be, and the linear part is g.x with g = (Re ell, -Im ell).
struct SymbolForm {
    poly::Coeffs pi;
    int pi_degree = 0;
    bool zero = false;
    Complex a{}, b{}, a1{}, a2{}, ell{};
    double k0 = 0.0;
    double c = 0.0;
    double lambda_max = 0.0;  // c + |a2|
    double lambda_min = 0.0;  // c - |a2|
    Complex max_direction{1.0, 0.0};  // unit v with a2 v^2 = |a2|
    Complex min_direction{0.0, 1.0};  // unit v with a2 v^2 = -|a2|

    static SymbolForm of(const OperatorSpec& spec)
    {
        SymbolForm s;
        const auto prod = spec.symbol_product();
        s.pi = poly::trimmed(prod.poly());
        s.zero = poly::is_zero(s.pi);
        s.pi_degree = s.zero ? 0 : poly::degree(s.pi);
        const auto& e = spec.u.expo();
        s.a = spec.psi.is_constant ? Complex{} : spec.psi.a;
        s.b = spec.psi.b;
        s.a1 = e[1];
        s.a2 = e[2];
        s.ell = e[1] + s.a * std::conj(s.b);
        s.k0 = e[0].real() + 0.5 * std::norm(s.b);
        s.c = 0.5 * (std::norm(s.a) - 1.0);
        const double m2 = std::abs(s.a2);
        s.lambda_max = s.c + m2;
        s.lambda_min = s.c - m2;
        if (m2 > 0.0) {
            s.max_direction = std::polar(1.0, -0.5 * std::arg(s.a2));
            s.min_direction = s.max_direction * Complex{0.0, 1.0};
        }
        return s;
    }

    double quadratic(Complex z) const { return (a2 * z * z).real() + c * std::norm(z) + (ell * z).real(); }

    /// log L from the decomposition; agrees with L_value.
    double log_L(Complex z) const
    {
        if (zero)
            return -kInf;
        return log_abs(poly::horner(pi, z)) + k0 + quadratic(z);
    }

    bool is_boundary() const { return std::abs(lambda_max) <= kBoundaryTol; }
    bool near_boundary() const { return std::abs(lambda_max) <= kBoundaryWarn; }
};

namespace detail {

/// Extremum of x^T Q x + g.x over R^2 for sign = +1 (sup) or -1 (inf), when the
/// sign-adjusted form is negative semidefinite with g in its range. Returns the
/// extremal value and the minimum-norm extremizer.
inline std::optional<std::pair<double, Complex>> quadratic_extremum(const SymbolForm& s, double sign)
{
    const double g1 = sign * s.ell.real(), g2 = sign * (-s.ell.imag());
    // eigenpairs of sign * Q: (top, v_top) and (bottom, v_top rotated by 90 degrees)
    const double top = sign > 0 ? s.lambda_max : -s.lambda_min;
    const double bottom = sign > 0 ? s.lambda_min : -s.lambda_max;
    if (top > kBoundaryTol)
        return std::nullopt;
    const Complex v_top = sign > 0 ? s.max_direction : s.min_direction;
    const Complex v_bot = v_top * Complex{0.0, 1.0};
    double gt = g1 * v_top.real() + g2 * v_top.imag();
    double gb = g1 * v_bot.real() + g2 * v_bot.imag();
    double value = 0.0;
    double xt = 0.0, xb = 0.0;
    auto solve = [&](double lam, double gg, double& x) {
        if (lam < -kBoundaryTol) {
            x = -gg / (2.0 * lam);
            value += -gg * gg / (4.0 * lam);
            return true;
        }
        // null direction: bounded only without a linear term
        return std::abs(gg) <= kBoundaryTol * std::max(1.0, std::abs(g1) + std::abs(g2));
    };
    if (!solve(top, gt, xt) || !solve(bottom, gb, xb))
        return std::nullopt;
    Complex z = xt * v_top + xb * v_bot;
    return std::make_pair(sign * value, z);
}

/// Max of log_g over the closed disk |z| <= R: polar grid then projected
/// compass search from the best nodes.
template <class LogFn>
std::pair<double, Complex> disk_max(const LogFn& log_g, double R, int radial = 64, int angular = 256)
{
    struct Cand {
        double v;
        Complex z;
    };
    std::vector<Cand> cands;
    cands.push_back({log_g(Complex{}), Complex{}});
    for (int i = 1; i <= radial; ++i) {
        const double r = R * i / radial;
        for (int j = 0; j < angular; ++j) {
            Complex z = std::polar(r, 2.0 * kPi * j / angular);
            cands.push_back({log_g(z), z});
        }
    }
    const std::size_t top = std::min<std::size_t>(4, cands.size());
    std::partial_sort(cands.begin(), cands.begin() + top, cands.end(),
                      [](const Cand& a, const Cand& b) { return a.v > b.v; });
    auto clamp = [R](Complex z) { return std::abs(z) > R ? z * (R / std::abs(z)) : z; };
    auto obj = [&](Complex z) { return std::abs(z) > R ? -kInf : log_g(z); };
    double best = -kInf;
    Complex arg{};
    for (std::size_t i = 0; i < top; ++i) {
        if (cands[i].v == -kInf)
            continue;
        auto [z, v] = pattern_search(obj, clamp(cands[i].z), R / radial);
        if (v > best) {
            best = v;
            arg = z;
        }
    }
    return {best, arg};
}

} // namespace detail

struct SupL {
    double value = 0.0;
    double log_value = -kInf;
    Complex argmax{};
    bool finite = true;
    bool symbolic_finite = true;
    bool numeric_finite = true;
    bool agree = true;
    std::vector<double> numeric_profile;  // log of max L over |z| <= R0 2^j
    double base_radius = 10.0;
    std::vector<std::string> flags;
};

/// Raised when the symbolic and numeric sup decisions disagree away from a boundary.
class SymbolDisagreement : public Error {
public:
    using Error::Error;
};

/// Symbolic decision from the quadratic form of log L (negative semidefinite
/// with the linear part in its range and Pi constant on the null directions),
/// checked against maxima of L on expanding disks R0 2^j, j = 0..levels-1.
inline SupL sup_L(const OperatorSpec& spec, int levels = 4)
{
    SupL out;
    const auto s = SymbolForm::of(spec);
    auto log_L = [&spec](Complex z) { return L_value(spec, z).log_value; };

    if (s.zero) {
        out.flags.push_back("zero_operator");
        out.numeric_profile.assign(levels, -kInf);
        return out;
    }

    std::optional<Complex> centre;
    if (s.lambda_max < -kBoundaryTol) {
        out.symbolic_finite = true;
    } else if (s.is_boundary()) {
        auto ext = detail::quadratic_extremum(s, 1.0);
        out.symbolic_finite = ext.has_value() && s.pi_degree == 0;
        out.flags.push_back("boundary_case");
    } else {
        out.symbolic_finite = false;
    }
    if (s.near_boundary() && !s.is_boundary())
        out.flags.push_back("near_boundary");

    if (out.symbolic_finite && s.pi_degree == 0) {
        auto ext = detail::quadratic_extremum(s, 1.0);
        if (ext) {
            out.log_value = log_abs(s.pi[0]) + s.k0 + ext->first;
            out.argmax = ext->second;
            centre = ext->second;
        }
    }

    // numeric cross-check on expanding disks; with a polynomial factor the
    // maximizer can sit up to sqrt(deg / |lambda_max|) beyond the quadratic one
    double reach = centre ? std::abs(*centre) : 0.0;
    if (!centre && out.symbolic_finite) {
        auto quad = detail::quadratic_extremum(s, 1.0);
        reach = (quad ? std::abs(quad->second) : 0.0) + std::sqrt(s.pi_degree / std::max(-s.lambda_max, 1e-300));
    }
    out.base_radius = std::max(10.0, 2.0 * reach);
    for (int j = 0; j < levels; ++j)
        out.numeric_profile.push_back(detail::disk_max(log_L, out.base_radius * std::ldexp(1.0, j)).first);
    const double last = out.numeric_profile.back();
    const double prev = out.numeric_profile[levels - 2];
    out.numeric_finite = last - prev <= 1e-7 * std::max(1.0, std::abs(prev));

    if (out.symbolic_finite && !centre) {
        // Pi non-constant with a strictly negative form: locate the max numerically
        QuadratureConfig cfg;
        auto res = sup_plane(log_L, cfg);
        out.log_value = std::max(res.log_value, last);
        out.argmax = res.log_value >= last ? res.argmax : Complex{};
        if (res.log_value < last)
            out.argmax = detail::disk_max(log_L, out.base_radius * std::ldexp(1.0, levels - 1)).second;
    }

    out.agree = out.symbolic_finite == out.numeric_finite;
    out.finite = out.symbolic_finite;
    if (!out.finite) {
        out.log_value = kInf;
        out.value = kInf;
    } else {
        out.value = std::exp(out.log_value);
    }
    if (!out.agree) {
        if (s.near_boundary())
            out.flags.push_back("numeric_inconclusive_near_boundary");
        else
            throw SymbolDisagreement("symbolic and numeric sup decisions disagree (symbolic " +
                                     std::string(out.symbolic_finite ? "finite" : "infinite") + ")");
    }
    return out;
}

/// Essential infimum of L over the plane: zero when Pi has zeros or the form
/// is not positive semidefinite (with the linear part in its range).
inline double L_inf_essential(const OperatorSpec& spec)
{
    const auto s = SymbolForm::of(spec);
    if (s.zero || s.pi_degree > 0)
        return 0.0;
    auto ext = detail::quadratic_extremum(s, -1.0);
    if (!ext)
        return 0.0;
    return std::exp(log_abs(s.pi[0]) + s.k0 + ext->first);
}

/// Maximum of L on the circle |z| = r.
inline double circle_max_L(const OperatorSpec& spec, double r, int angular = 1024)
{
    double best = -kInf;
    for (int j = 0; j < angular; ++j)
        best = std::max(best, L_value(spec, std::polar(r, 2.0 * kPi * j / angular)).log_value);
    return std::exp(best);
}

} // namespace fockops

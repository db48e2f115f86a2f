#pragma once

#include <fockops/growth.hpp>
#include <fockops/quadrature.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fockops {

/// FockType: weight exp(-p|z|^m) against plain area measure.
/// ClassicalFock: weight exp(-p|z|^2/2) with the p/(2 pi) normalizing constant.
enum class Family { FockType, ClassicalFock };

inline const char* to_string(Family f) { return f == Family::FockType ? "focktype" : "classical"; }

struct FockTypeParams {
    double m = 2.0;
    double p = 2.0;
    Family family = Family::ClassicalFock;

    static FockTypeParams classical(double p) { return {2.0, p, Family::ClassicalFock}; }
    static FockTypeParams fock_type(double m, double p) { return {m, p, Family::FockType}; }

    void validate() const
    {
        if (!(m > 0.0))
            throw std::invalid_argument("growth exponent m must be positive");
        require_exponent(p, "p");
    }

    /// exponent of the weight per unit p: |z|^m, or |z|^2/2 for the classical family
    double weight_exponent(double r) const
    {
        return family == Family::ClassicalFock ? 0.5 * r * r : std::pow(r, m);
    }
};

struct NormResult {
    double value = 0.0;
    double log_value = 0.0;
    double tail_bound = 0.0;   // absolute bound on the error from the discarded tail
    Family family = Family::ClassicalFock;
    double p = 2.0;
    double m = 2.0;
    bool divergent = false;
    std::vector<std::string> flags;
};

enum class GrowthClass { Converges, Diverges };

namespace detail {

inline bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

/// Boundary case for the sup norm: along the direction of maximal growth the
/// leading term cancels the weight exactly, so the sup is finite only when the
/// linear term is orthogonal to that direction and the polynomial part is constant.
inline GrowthClass boundary_sup_class(const ExpPolyFunction& f, Complex lead, Complex linear)
{
    // direction v with lead * v^k = |lead| (k = 2 for Gaussian growth, 1 for exponential)
    const bool quadratic = f.expo()[2] != Complex{};
    Complex v = std::polar(1.0, -std::arg(lead) / (quadratic ? 2.0 : 1.0));
    bool ok = f.has_constant_poly();
    if (quadratic)
        ok = ok && std::abs((linear * v).real()) <= 1e-12 * std::max(1.0, std::abs(linear));
    return ok ? GrowthClass::Converges : GrowthClass::Diverges;
}

} // namespace detail

/// Symbolic membership test of an exp-poly function in F_(m,p) / F_p.
inline GrowthClass growth_class(const ExpPolyFunction& f, const FockTypeParams& params)
{
    if (f.is_zero())
        return GrowthClass::Converges;
    const auto& e = f.expo();
    const int order = f.symbolic_order();
    const bool sup = is_infinite(params.p);
    if (order == 0)
        return GrowthClass::Converges;

    // effective weight growth: c * r^w
    double w_order, w_coeff;
    if (params.family == Family::ClassicalFock) {
        w_order = 2.0;
        w_coeff = 0.5;
    } else {
        w_order = params.m;
        w_coeff = 1.0;
    }
    if (!detail::near(w_order, order))
        return w_order > order ? GrowthClass::Converges : GrowthClass::Diverges;
    const double lead = std::abs(order == 2 ? e[2] : e[1]);
    if (detail::near(lead, w_coeff)) {
        if (!sup)
            return GrowthClass::Diverges;
        return detail::boundary_sup_class(f, order == 2 ? e[2] : e[1], e[1]);
    }
    return lead < w_coeff ? GrowthClass::Converges : GrowthClass::Diverges;
}

inline GrowthClass growth_class(const TaylorFunction&, const FockTypeParams&) { return GrowthClass::Converges; }

namespace detail {

inline NormResult divergent_result(const FockTypeParams& params)
{
    NormResult r;
    r.value = kInf;
    r.log_value = kInf;
    r.tail_bound = kInf;
    r.family = params.family;
    r.p = params.p;
    r.m = params.m;
    r.divergent = true;
    r.flags.push_back("divergent");
    return r;
}

/// |g|^p is not smooth at zeros of g unless p is an even integer; the
/// quadrature gets their radii as breakpoints.
template <class F>
QuadratureConfig with_kinks(const F& g, double p, const QuadratureConfig& cfg)
{
    QuadratureConfig out = cfg;
    if (is_infinite(p) || (std::fmod(p, 2.0) == 0.0))
        return out;
    if constexpr (requires { g.poly(); }) {
        if (poly::degree(g.poly()) <= 256)
            for (Complex z : poly::nonzero_roots(g.poly()))
                out.breakpoints.push_back(std::abs(z));
    } else if constexpr (requires { g.coeffs(); }) {
        // long series are badly scaled: seed from a short prefix, polish by Newton
        const auto& c = g.coeffs();
        const std::span<const Complex> prefix(c.data(), std::min<std::size_t>(c.size(), 41));
        const auto dg = differentiate(g, 1);
        for (Complex z : poly::nonzero_roots(prefix)) {
            bool converged = false;
            for (int it = 0; it < 50 && std::isfinite(std::abs(z)); ++it) {
                const Complex d = dg(z);
                if (d == Complex{})
                    break;
                const Complex step = g(z) / d;
                z -= step;
                if (std::abs(step) <= 1e-12 * (1.0 + std::abs(z))) {
                    converged = true;
                    break;
                }
            }
            if (converged)
                out.breakpoints.push_back(std::abs(z));
        }
    }
    return out;
}

/// (integral)^{1/p} or sup, with the additive prefix |c|^p inside the p-th root
/// (for p = inf the prefix is added to the sup instead).
template <class LogFn>
NormResult weighted_norm(const LogFn& log_abs_g, double p, double log_prefix, double prefix_sum,
                         const std::function<double(double)>& log_weight, const QuadratureConfig& cfg,
                         const FockTypeParams& params)
{
    NormResult out;
    out.family = params.family;
    out.p = p;
    out.m = params.m;
    if (is_infinite(p)) {
        auto res = sup_plane([&](Complex z) { return log_abs_g(z) + log_weight(std::abs(z)); }, cfg);
        if (res.divergent)
            return divergent_result(params);
        out.log_value = log_add(res.log_value, prefix_sum > 0.0 ? std::log(prefix_sum) : -kInf);
        out.value = std::exp(out.log_value);
        out.tail_bound = 0.0;
        out.flags.push_back("sup");
        return out;
    }
    auto res = integrate_plane([&](Complex z) { return p * (log_abs_g(z) + log_weight(std::abs(z))); }, cfg);
    if (res.divergent)
        return divergent_result(params);
    double log_int = res.log_value + log_prefix;
    log_int = log_add(log_int, prefix_sum > 0.0 ? p * std::log(prefix_sum) : -kInf);
    out.log_value = log_int / p;
    out.value = std::exp(out.log_value);
    out.tail_bound = std::isfinite(res.tail_rel) ? out.value * res.tail_rel / p : kInf;
    if (!std::isfinite(res.tail_rel) || res.tail_rel > 1e-10)
        out.flags.push_back("tail_not_negligible");
    return out;
}

} // namespace detail

/// ||f||_(m,p) or ||f||_p by polar quadrature (p < inf) or adaptive sup (p = inf).
template <class F>
NormResult fock_norm(const F& f, const FockTypeParams& params, const QuadratureConfig& cfg = {})
{
    params.validate();
    if (growth_class(f, params) == GrowthClass::Diverges)
        return detail::divergent_result(params);
    const double p = params.p;
    double log_prefix = 0.0;
    if (params.family == Family::ClassicalFock && !is_infinite(p))
        log_prefix = std::log(p / (2.0 * kPi));
    std::function<double(double)> lw = [&params](double r) { return -params.weight_exponent(r); };
    auto out = detail::weighted_norm([&f](Complex z) { return f.log_abs(z); }, p, log_prefix, 0.0, lw,
                                     detail::with_kinks(f, p, cfg), params);
    out.flags.insert(out.flags.begin(), to_string(params.family));
    return out;
}

/// Derivative-side norm on F_(m,p):
/// (|f(0)|^p + \int |f'|^p e^{-p|z|^m} (1+|z|)^{-p(m-1)} dA)^{1/p},
/// or |f(0)| + sup |f'| e^{-|z|^m} (1+|z|)^{-(m-1)} for p = inf.
template <class F>
NormResult paley_norm(const F& f, double m, double p, const QuadratureConfig& cfg = {})
{
    const auto params = FockTypeParams::fock_type(m, p);
    params.validate();
    if (growth_class(f, params) == GrowthClass::Diverges)
        return detail::divergent_result(params);
    const F df = differentiate(f, 1);
    std::function<double(double)> lw = [m](double r) { return -std::pow(r, m) - (m - 1.0) * std::log1p(r); };
    const double f0 = std::abs(f(Complex{}));
    auto out =
        detail::weighted_norm([&df](Complex z) { return df.log_abs(z); }, p, 0.0, f0, lw, detail::with_kinks(df, p, cfg), params);
    out.flags.insert(out.flags.begin(), "paley");
    return out;
}

/// n-th derivative norm on F_p:
/// sum_{j<n} |f^{(j)}(0)| + (\int |f^{(n)}|^p (1+|z|)^{-np} e^{-p|z|^2/2} dA)^{1/p}
/// (sup form for p = inf). No p/(2 pi) constant.
template <class F>
NormResult hu_norm(const F& f, double p, int n, const QuadratureConfig& cfg = {})
{
    if (n < 0)
        throw std::invalid_argument("derivative order must be nonnegative");
    const auto params = FockTypeParams::classical(p);
    params.validate();
    if (growth_class(f, params) == GrowthClass::Diverges)
        return detail::divergent_result(params);
    double jet = 0.0;
    for (int j = 0; j < n; ++j)
        jet += std::abs(differentiate(f, j)(Complex{}));
    const F dn = differentiate(f, n);
    std::function<double(double)> lw = [n](double r) { return -0.5 * r * r - n * std::log1p(r); };
    NormResult out = detail::weighted_norm([&dn](Complex z) { return dn.log_abs(z); }, p, 0.0, 0.0, lw,
                                           detail::with_kinks(dn, p, cfg), params);
    if (!out.divergent && jet > 0.0) {
        out.value += jet;
        out.log_value = std::log(out.value);
    }
    out.flags.insert(out.flags.begin(), "derivative_norm");
    return out;
}

struct MonomialNorm {
    double value;
    double log_value;
    bool asymptotic;   // true when only the asymptotic equivalent is available
    std::string note;
};

/// Closed-form F_(m,p) norm of z^k:
/// ||z^k||^p = (2 pi / m) p^{-(kp+2)/m} Gamma((kp+2)/m), and
/// ||z^k||_(m,inf) = (k/(m e))^{k/m}.
inline double log_monomial_norm_fock_type(int k, double m, double p)
{
    if (is_infinite(p))
        return k == 0 ? 0.0 : (k / m) * std::log(k / (m * std::exp(1.0)));
    const double x = (k * p + 2.0) / m;
    return (std::log(2.0 * kPi / m) - x * std::log(p) + std::lgamma(x)) / p;
}

/// Closed-form classical F_p norm of z^k: ||z^k||_p^p = (2/p)^{kp/2} Gamma(kp/2 + 1),
/// ||z^k||_inf = (k/e)^{k/2}.
inline double log_monomial_norm_classical(int k, double p)
{
    if (is_infinite(p))
        return k == 0 ? 0.0 : 0.5 * k * (std::log(static_cast<double>(k)) - 1.0);
    const double half = 0.5 * k * p;
    return (half * std::log(2.0 / p) + std::lgamma(half + 1.0)) / p;
}

/// The printed constant (1/p)^{kp/2} Gamma((kp+2)/2) for ||z^k||_p^p. It differs
/// from the classical closed form by the factor 2^{-kp/2}; kept for comparison.
inline double log_monomial_norm_classical_printed(int k, double p)
{
    const double half = 0.5 * k * p;
    return (half * std::log(1.0 / p) + std::lgamma(half + 1.0)) / p;
}

/// Asymptotic equivalent (k/e)^{kp/2} sqrt(k) of ||z^k||_p^p, as a norm.
inline double log_monomial_norm_classical_estimate(int k, double p)
{
    if (k == 0)
        return 0.0;
    return (0.5 * k * p * (std::log(static_cast<double>(k)) - 1.0) + 0.5 * std::log(static_cast<double>(k))) / p;
}

/// Asymptotic equivalent (k/(me))^{k/m + 2/(mp) - 1/(2p)} (p < inf) or
/// (k/(me))^{k/m} (p = inf) of ||z^k||_(m,p).
inline double log_monomial_norm_fock_type_estimate(int k, double m, double p)
{
    if (k == 0)
        return 0.0;
    const double base = std::log(k / (m * std::exp(1.0)));
    if (is_infinite(p))
        return (k / m) * base;
    return (k / m + 2.0 / (m * p) - 1.0 / (2.0 * p)) * base;
}

inline constexpr const char* kClassicalConstantNote =
    "closed form (2/p)^{kp/2} Gamma(kp/2+1); the printed (1/p)^{kp/2} Gamma((kp+2)/2) is smaller by 2^{kp/2}";

/// ClassicalFock: exact. FockType: the asymptotic equivalent, flagged.
inline MonomialNorm monomial_norm_exact(int k, double p, Family family, double m = 1.0)
{
    if (k < 0)
        throw std::invalid_argument("monomial degree must be nonnegative");
    require_exponent(p, "p");
    if (family == Family::ClassicalFock) {
        double lv = log_monomial_norm_classical(k, p);
        return {std::exp(lv), lv, false, kClassicalConstantNote};
    }
    if (!(m > 0.0))
        throw std::invalid_argument("growth exponent m must be positive");
    double lv = log_monomial_norm_fock_type_estimate(k, m, p);
    return {std::exp(lv), lv, true, "asymptotic equivalent; constant factor not determined"};
}

struct PointwiseReport {
    double norm = 0.0;
    double max_ratio_value = 0.0;       // sup |f(z)| e^{-|z|^2/2} / ||f||_p on the grid
    double max_ratio_derivative = 0.0;  // sup |f^{(n)}(z)| / (n! e^{3/2} (1+|z|)^n e^{|z|^2/2} ||f||_p)
    Complex argmax_value{};
    double slack_value = 0.0;           // 1 - max ratio
    double slack_derivative = 0.0;
    bool holds = true;
    std::optional<Complex> counterexample;
};

/// Grid check of |f(z)| <= e^{|z|^2/2} ||f||_p and
/// |f^{(n)}(z)| <= n! e^{3/2} (1+|z|)^n e^{|z|^2/2} ||f||_p on |z| <= radius.
template <class F>
PointwiseReport pointwise_bound_check(const F& f, double p, int n, double radius = 6.0, int radial = 120,
                                      int angular = 128, const QuadratureConfig& cfg = {})
{
    PointwiseReport rep;
    auto nr = fock_norm(f, FockTypeParams::classical(p), cfg);
    if (nr.divergent)
        throw std::domain_error("pointwise bounds need a finite norm");
    rep.norm = nr.value;
    const double log_norm = nr.log_value;
    const F dn = differentiate(f, n);
    const double log_nfact = std::lgamma(n + 1.0) + 1.5;
    double best_v = -kInf, best_d = -kInf;
    for (int i = 0; i <= radial; ++i) {
        const double r = radius * i / radial;
        for (int j = 0; j < (i == 0 ? 1 : angular); ++j) {
            const Complex z = std::polar(r, 2.0 * kPi * j / angular);
            double lv = f.log_abs(z) - 0.5 * r * r - log_norm;
            double ld = dn.log_abs(z) - log_nfact - n * std::log1p(r) - 0.5 * r * r - log_norm;
            if (lv > best_v) {
                best_v = lv;
                rep.argmax_value = z;
            }
            best_d = std::max(best_d, ld);
            if ((lv > 1e-9 || ld > 1e-9) && !rep.counterexample)
                rep.counterexample = z;
        }
    }
    rep.max_ratio_value = std::exp(best_v);
    rep.max_ratio_derivative = std::exp(best_d);
    rep.slack_value = 1.0 - rep.max_ratio_value;
    rep.slack_derivative = 1.0 - rep.max_ratio_derivative;
    rep.holds = !rep.counterexample.has_value();
    return rep;
}

/// <f, g> in F_2: (1/pi) \int f(z) conj(g(z)) e^{-|z|^2} dA(z).
template <class F, class G>
Complex fock_inner_product(const F& f, const G& g, const QuadratureConfig& cfg = {})
{
    auto value = [&](Complex z) { return f(z) * std::conj(g(z)) * std::exp(-std::norm(z)) / kPi; };
    auto log_mod = [&](Complex z) { return f.log_abs(z) + g.log_abs(z) - std::norm(z); };
    return integrate_plane_complex(value, log_mod, cfg);
}

} // namespace fockops

#pragma once

#include <fockops/norms.hpp>
#include <fockops/symbol.hpp>

#include <random>

namespace fockops {

struct Evidence {
    std::string rule;       // which criterion fired
    std::string statement;  // what was checked
    double value = std::numeric_limits<double>::quiet_NaN();
};

struct ClassificationReport {
    std::string kind;  // "weighted_composition_differentiation" or "differentiation_focktype"
    double p = 2.0, q = 2.0;
    double m = std::numeric_limits<double>::quiet_NaN();
    Verdict bounded = Verdict::NotApplicable;
    Verdict compact = Verdict::NotApplicable;
    Verdict order_bounded = Verdict::NotApplicable;
    Verdict closed_range = Verdict::NotApplicable;
    Verdict surjective = Verdict::NotApplicable;
    std::vector<Evidence> evidence;
    double L_sup = std::numeric_limits<double>::quiet_NaN();
    double L_inf_essential = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> flags;
};

/// True when every implication between verdicts holds (NeedsProbe and
/// NotApplicable count as "not yes").
inline bool implications_hold(const ClassificationReport& r)
{
    auto yes = [](Verdict v) { return v == Verdict::Yes; };
    if (yes(r.order_bounded) && !yes(r.compact))
        return false;
    if (yes(r.compact) && !yes(r.bounded))
        return false;
    if (yes(r.surjective) && !yes(r.closed_range))
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// D on Fock-type spaces: parameter arithmetic only.

inline bool approx_equal(double x, double y) { return std::abs(x - y) <= kBoundaryTol * std::max(1.0, std::abs(y)); }

inline ClassificationReport classify_D_focktype(double m, double p, double q)
{
    if (!(m > 0.0))
        throw std::invalid_argument("growth exponent m must be positive");
    require_exponent(p, "p");
    require_exponent(q, "q");
    ClassificationReport r;
    r.kind = "differentiation_focktype";
    r.m = m;
    r.p = p;
    r.q = q;

    double threshold = 0.0;
    bool strict_only = false;  // bounded and compact coincide
    std::string rule;
    if (is_infinite(p) && is_infinite(q)) {
        threshold = 1.0;
        rule = "focktype_sup_to_sup";
        r.flags.push_back("extrapolated_sup_to_sup");
    } else if (is_infinite(q)) {
        threshold = 2.0 - p / (p + 1.0);
        rule = "focktype_into_growth_space";
    } else if (is_infinite(p)) {
        threshold = 1.0 - 2.0 / q;
        strict_only = true;
        rule = "focktype_from_growth_space";
    } else if (p <= q) {
        threshold = 2.0 - p * q / (p * q + q - p);
        rule = "focktype_p_le_q";
    } else {
        threshold = 1.0 - 2.0 * (1.0 / q - 1.0 / p);
        strict_only = true;
        rule = "focktype_p_gt_q";
    }

    const bool on_boundary = approx_equal(m, threshold);
    const bool strict = m < threshold && !on_boundary;
    const bool bounded = strict_only ? strict : (strict || on_boundary);
    r.bounded = verdict_of(bounded);
    r.compact = verdict_of(strict);
    r.order_bounded = Verdict::NotApplicable;
    r.evidence.push_back({rule, strict_only ? "bounded iff compact iff m < threshold"
                                            : "bounded iff m <= threshold, compact iff strict",
                          threshold});
    if (on_boundary)
        r.flags.push_back("boundary_case");
    else if (std::abs(m - threshold) <= kBoundaryWarn)
        r.flags.push_back("near_boundary");

    const bool same = (is_infinite(p) && is_infinite(q)) || (!is_infinite(p) && !is_infinite(q) && approx_equal(p, q));
    const bool closed = bounded && same && approx_equal(m, 1.0);
    if (!bounded) {
        r.closed_range = Verdict::NotApplicable;
        r.surjective = Verdict::NotApplicable;
    } else {
        r.closed_range = verdict_of(closed);
        r.surjective = verdict_of(closed);
    }
    r.evidence.push_back({"focktype_closed_range", "closed range iff surjective iff p = q and m = 1",
                          closed ? 1.0 : 0.0});
    return r;
}

// ---------------------------------------------------------------------------
// Order boundedness.

struct OrderBoundedResult {
    Verdict verdict = Verdict::No;
    double q = 2.0;
    std::optional<double> closed_form;     // \int L^q dA when L is a pure Gaussian
    std::optional<double> numeric;         // polar quadrature of \int L^q dA
    double numeric_tail_rel = 0.0;
    std::vector<Evidence> evidence;
    std::vector<std::string> flags;
};

namespace detail {

/// \int L^s dA for a constant Pi and a negative definite form.
inline std::optional<double> gaussian_L_integral(const SymbolForm& s, double power)
{
    if (s.zero)
        return 0.0;
    if (s.pi_degree != 0 || !(s.lambda_max < -kBoundaryTol))
        return std::nullopt;
    auto ext = quadratic_extremum(s, 1.0);
    if (!ext)
        return std::nullopt;
    const double log_sup = log_abs(s.pi[0]) + s.k0 + ext->first;
    return kPi / (power * std::sqrt(s.lambda_max * s.lambda_min)) * std::exp(power * log_sup);
}

/// u in F_q, decided symbolically.
inline bool weight_in_fock(const ExpPolyFunction& u, double q)
{
    return u.is_zero() || growth_class(u, FockTypeParams::classical(q)) == GrowthClass::Converges;
}

} // namespace detail

inline OrderBoundedResult order_bounded(const OperatorSpec& spec, double q, const QuadratureConfig& cfg = {})
{
    require_exponent(q, "q");
    OrderBoundedResult out;
    out.q = q;
    const auto s = SymbolForm::of(spec);
    if (spec.psi.is_constant) {
        const bool ok = detail::weight_in_fock(spec.u, q);
        out.verdict = verdict_of(ok);
        out.evidence.push_back({"constant_symbol_rank_one", "order bounded iff u in F_q", ok ? 1.0 : 0.0});
        return out;
    }
    if (s.zero) {
        out.verdict = Verdict::Yes;
        out.closed_form = 0.0;
        out.evidence.push_back({"zero_operator", "u vanishes identically", 0.0});
        return out;
    }
    if (is_infinite(q)) {
        auto sup = sup_L(spec);
        out.verdict = verdict_of(sup.finite);
        out.evidence.push_back({"order_bounded_sup", "q = inf: order bounded iff sup L finite", sup.value});
        return out;
    }
    const bool integrable = s.lambda_max < -kBoundaryTol;
    out.verdict = verdict_of(integrable);
    if (std::abs(std::abs(s.a) - 1.0) <= kBoundaryTol)
        out.evidence.push_back({"order_bounded_unimodular", "|a| = 1: L is not in L^q", std::abs(s.a)});
    out.evidence.push_back({"order_bounded_Lq", "order bounded iff L in L^q(dA)", s.lambda_max});
    out.closed_form = detail::gaussian_L_integral(s, q);
    if (out.closed_form)
        out.evidence.push_back({"gaussian_integral", "closed-form integral of L^q", *out.closed_form});
    if (integrable) {
        auto res = integrate_plane([&](Complex z) { return q * L_value(spec, z).log_value; }, cfg);
        if (!res.divergent) {
            out.numeric = std::exp(res.log_value);
            out.numeric_tail_rel = res.tail_rel;
            out.evidence.push_back({"quadrature_integral", "polar quadrature of L^q", *out.numeric});
            if (out.closed_form &&
                std::abs(*out.numeric - *out.closed_form) > 1e-8 * std::max(1.0, *out.closed_form))
                out.flags.push_back("closed_form_quadrature_mismatch");
        } else {
            out.flags.push_back("quadrature_divergent");
        }
    }
    if (s.near_boundary())
        out.flags.push_back(s.is_boundary() ? "boundary_case" : "near_boundary");
    return out;
}

// ---------------------------------------------------------------------------
// Surjectivity.

struct SurjectivityResult {
    Verdict verdict = Verdict::No;
    std::string certificate;  // kernel_form | ray_decay | finite_rank | unbounded | zero_operator
    double L_constant = std::numeric_limits<double>::quiet_NaN();
    double L_spread = std::numeric_limits<double>::quiet_NaN();   // relative spread over sampled points
    double kernel_mismatch = std::numeric_limits<double>::quiet_NaN();
    Complex kernel_point{};        // -conj(a) b
    Complex kernel_coefficient{};  // b^n u(0)
    Complex ray_direction{};
    std::vector<std::pair<double, double>> ray_samples;  // (t, L(t v))
    double L_inf_essential = 0.0;
    std::vector<std::string> flags;
};

/// Relative spread (max - min) / max of L over `count` deterministic random
/// points with |z| <= radius.
inline double L_relative_spread(const OperatorSpec& spec, int count = 10000, double radius = 10.0,
                                unsigned seed = 20240601u)
{
    std::mt19937_64 rng(seed);
    double lo = kInf, hi = -kInf;
    for (int i = 0; i < count; ++i) {
        double x = (static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * radius;
        double y = (static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * radius;
        double lv = L_value(spec, {x, y}).log_value;
        lo = std::min(lo, lv);
        hi = std::max(hi, lv);
    }
    return hi == -kInf ? 0.0 : -std::expm1(lo - hi);
}

inline SurjectivityResult surjectivity(const OperatorSpec& spec, double p)
{
    require_exponent(p, "p");
    SurjectivityResult out;
    const auto s = SymbolForm::of(spec);
    if (spec.psi.is_constant) {
        out.certificate = "finite_rank";
        return out;
    }
    if (s.zero) {
        out.certificate = "zero_operator";
        return out;
    }
    const bool unimodular = std::abs(std::abs(s.a) - 1.0) <= kBoundaryTol;
    if (unimodular) {
        // bounded forces u psi^n = b^n u(0) K_{-conj(a) b}
        const Complex u0 = spec.u(Complex{});
        out.kernel_point = -std::conj(s.a) * s.b;
        out.kernel_coefficient = std::pow(s.b, spec.n) * u0;
        const double scale = std::max(1.0, std::abs(s.pi[0]));
        double mismatch = 0.0;
        for (std::size_t k = 1; k < s.pi.size(); ++k)
            mismatch = std::max(mismatch, std::abs(s.pi[k]) / scale);
        mismatch = std::max(mismatch, std::abs(s.a1 + s.a * std::conj(s.b)));
        mismatch = std::max(mismatch, std::abs(s.a2));
        out.kernel_mismatch = mismatch;
        if (mismatch > 1e-10)
            throw InconsistentSpec("|a| = 1 but u psi^n is not of kernel form (mismatch " + std::to_string(mismatch) +
                                   "); the operator is unbounded");
        out.verdict = Verdict::Yes;
        out.certificate = "kernel_form";
        out.L_constant = std::abs(out.kernel_coefficient) * std::exp(0.5 * std::norm(s.b));
        out.L_spread = L_relative_spread(spec);
        out.L_inf_essential = L_inf_essential(spec);
        return out;
    }
    if (!(s.lambda_max <= kBoundaryTol) || (s.is_boundary() && !sup_L(spec).finite)) {
        out.verdict = Verdict::NotApplicable;
        out.certificate = "unbounded";
        return out;
    }
    // |a| < 1: L decays along the most negative eigendirection (and, being
    // bounded with lambda_min < 0, L is not bounded away from zero)
    out.verdict = Verdict::No;
    out.certificate = "ray_decay";
    out.ray_direction = s.min_direction;
    for (double t : {5.0, 10.0, 20.0, 40.0})
        out.ray_samples.emplace_back(t, L_value(spec, t * out.ray_direction).value);
    out.L_inf_essential = L_inf_essential(spec);
    return out;
}

// ---------------------------------------------------------------------------
// The weighted composition-differentiation operator F_p -> F_q.

inline ClassificationReport classify_WCD(const OperatorSpec& spec, double p, double q, const QuadratureConfig& cfg = {})
{
    require_exponent(p, "p");
    require_exponent(q, "q");
    ClassificationReport r;
    r.kind = "weighted_composition_differentiation";
    r.p = p;
    r.q = q;
    const auto s = SymbolForm::of(spec);

    if (spec.psi.is_constant) {
        // f -> f^{(n)}(b) u: rank one
        const bool in_fq = detail::weight_in_fock(spec.u, q);
        r.bounded = r.compact = r.order_bounded = verdict_of(in_fq);
        r.closed_range = Verdict::Yes;
        r.surjective = Verdict::No;
        r.evidence.push_back({"constant_symbol_rank_one", "bounded iff compact iff u in F_q", in_fq ? 1.0 : 0.0});
        r.evidence.push_back({"constant_symbol_closed_range", "finite rank range is closed", 1.0});
        auto sup = sup_L(spec);
        r.L_sup = sup.value;
        r.L_inf_essential = L_inf_essential(spec);
        r.flags.push_back("constant_symbol");
        return r;
    }

    if (s.zero) {
        r.bounded = r.compact = r.order_bounded = r.closed_range = Verdict::Yes;
        r.surjective = Verdict::No;
        r.L_sup = 0.0;
        r.L_inf_essential = 0.0;
        r.evidence.push_back({"zero_operator", "u psi^n vanishes identically", 0.0});
        return r;
    }

    const auto sup = sup_L(spec);
    r.L_sup = sup.value;
    r.L_inf_essential = L_inf_essential(spec);
    for (const auto& f : sup.flags)
        r.flags.push_back(f);
    const bool decays = s.lambda_max < -kBoundaryTol;
    const bool p_le_q = is_infinite(q) || (!is_infinite(p) && p <= q);

    if (p_le_q) {
        r.bounded = verdict_of(sup.finite);
        r.compact = verdict_of(decays);
        r.evidence.push_back({"wcd_bounded_p_le_q", "bounded iff sup L < inf", sup.value});
        r.evidence.push_back({"wcd_compact_p_le_q", "compact iff L -> 0 at infinity", s.lambda_max});
        if (s.pi_degree == 0)
            r.evidence.push_back({"wcd_compact_kernel_form",
                                  "u psi^n non-vanishing: compact iff |a2| < (1 - |a|^2)/2", std::abs(s.a2)});
        // numeric look at L on expanding circles
        const double R0 = std::max(10.0, 2.0 * std::abs(sup.argmax));
        std::vector<double> circles;
        for (double f : {1.0, 2.0, 4.0})
            circles.push_back(circle_max_L(spec, R0 * f));
        const bool numeric_decay = sup.finite && circles[2] < circles[1] && circles[1] < circles[0] &&
                                   circles[2] < 1e-6 * sup.value;
        r.evidence.push_back({"numeric_circle_decay", "max of L on |z| = 4 R0 relative to sup L",
                              sup.finite && sup.value > 0.0 ? circles[2] / sup.value : kInf});
        if (sup.finite && numeric_decay != decays && !s.near_boundary())
            r.flags.push_back("compactness_numeric_disagreement");
    } else {
        const double power = is_infinite(p) ? q : p * q / (p - q);
        r.bounded = r.compact = verdict_of(decays);
        r.evidence.push_back({"wcd_p_gt_q", "bounded iff compact iff L in L^{pq/(p-q)}", power});
        if (auto cf = detail::gaussian_L_integral(s, power))
            r.evidence.push_back({"gaussian_integral", "closed-form integral of L^{pq/(p-q)}", *cf});
    }

    auto ob = order_bounded(spec, q, cfg);
    r.order_bounded = ob.verdict;
    for (const auto& e : ob.evidence)
        r.evidence.push_back(e);
    for (const auto& f : ob.flags)
        r.flags.push_back(f);

    const bool bounded = r.bounded == Verdict::Yes;
    const bool compact = r.compact == Verdict::Yes;
    const bool same = (is_infinite(p) && is_infinite(q)) || (!is_infinite(p) && !is_infinite(q) && approx_equal(p, q));
    const bool unimodular = std::abs(std::abs(s.a) - 1.0) <= kBoundaryTol;
    if (!bounded) {
        r.closed_range = Verdict::NotApplicable;
        r.surjective = Verdict::NotApplicable;
        r.evidence.push_back({"unbounded", "closed range and surjectivity not applicable", sup.value});
    } else if (!same) {
        r.closed_range = Verdict::No;
        r.surjective = Verdict::No;
        r.evidence.push_back({"closed_range_needs_p_eq_q", "bounded with p != q and psi non-constant", 0.0});
    } else if (compact) {
        r.closed_range = Verdict::No;
        r.surjective = Verdict::No;
        r.evidence.push_back({"compact_not_closed", "compact with infinite-dimensional range", 0.0});
    } else if (unimodular) {
        auto sj = surjectivity(spec, p);
        r.closed_range = Verdict::Yes;
        r.surjective = sj.verdict;
        r.evidence.push_back({"surjective_iff_unimodular", "|a| = 1 and u psi^n = b^n u(0) K_{-conj(a) b}",
                              sj.L_constant});
        r.evidence.push_back({"kernel_form_mismatch", "coefficient-wise distance to kernel form",
                              sj.kernel_mismatch});
    } else {
        r.closed_range = Verdict::NeedsProbe;
        r.surjective = Verdict::No;
        r.evidence.push_back({"closed_range_undecided",
                              "bounded, not compact, |a| < 1: use the sampling and finite-section probes",
                              std::abs(s.a)});
    }
    return r;
}

} // namespace fockops

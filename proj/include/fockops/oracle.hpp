#pragma once

#include <fockops/norms.hpp>
#include <fockops/symbol.hpp>

namespace fockops {

struct OracleConfig {
    int angular = 4096;
    double rel_tol = 1e-12;
    double initial_radius = 8.0;
    int max_doublings = 6;
    double tail_ratio = 1e-12;
};

struct OracleResult {
    double value = 0.0;
    double log_value = -kInf;
    double error_estimate = 0.0;  // radial Richardson + angular halving + rounding floor
    std::string scheme = "adaptive-simpson-radial x trapezoid-angular";
    long evaluations = 0;
    bool divergent = false;
    double radius = 0.0;
};

namespace detail {

/// Ring integral at full and half angular resolution, both as logs.
struct RingValue {
    double full = -kInf;
    double half = -kInf;
};

/// Integrates exp(ring(r) - shift) over r with adaptive Simpson, doubling the
/// outer radius until the newest shell is negligible. The half-resolution
/// ring values ride along on the same nodes and give the angular error.
class OracleIntegrator {
public:
    template <class Ring>
    OracleResult run(const Ring& ring, const OracleConfig& cfg)
    {
        OracleResult out;
        // coarse pass: pick the radius (or give up) without adaptive work
        double R = cfg.initial_radius;
        double shift = scan_peak(ring, 0.0, R, -kInf);
        double coarse_head = coarse(ring, 0.0, R, shift);
        for (int d = 0;; ++d) {
            double new_shift = scan_peak(ring, R, 2.0 * R, shift);
            if (new_shift > shift) {
                coarse_head *= std::exp(shift - new_shift);
                shift = new_shift;
            }
            const double tail = coarse(ring, R, 2.0 * R, shift);
            R *= 2.0;
            coarse_head += tail;
            if (tail <= cfg.tail_ratio * coarse_head || coarse_head == 0.0)
                break;
            if (d + 1 >= cfg.max_doublings) {
                out.divergent = true;
                out.value = kInf;
                out.log_value = kInf;
                out.error_estimate = kInf;
                out.evaluations = evals_;
                out.radius = R;
                return out;
            }
        }
        // adaptive pass over the same shells
        Pair head;
        double err = 0.0;
        for (double lo = 0.0, hi = cfg.initial_radius; lo < R; lo = hi, hi *= 2.0) {
            head = head + integrate(ring, lo, hi, shift, head.full, cfg);
            err += err_;
        }
        const double total = head.full;
        out.log_value = total > 0.0 ? shift + std::log(total) : -kInf;
        out.value = std::exp(out.log_value);
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * total;
        // |f|^p has cusps at zeros, so the angular rule can be only O(h^2) and
        // non-monotone; the halving difference is inflated accordingly
        const double angular = 4.0 * std::abs(head.full - head.half);
        out.error_estimate = total > 0.0 ? std::exp(shift + std::log(err + angular + floor)) : 0.0;
        out.evaluations = evals_;
        out.radius = R;
        return out;
    }

private:
    struct Pair {
        double full = 0.0;
        double half = 0.0;
        Pair operator+(const Pair& o) const { return {full + o.full, half + o.half}; }
        Pair operator-(const Pair& o) const { return {full - o.full, half - o.half}; }
        Pair operator*(double s) const { return {full * s, half * s}; }
    };

    long evals_ = 0;
    double err_ = 0.0;

    template <class Ring>
    double scan_peak(const Ring& ring, double a, double b, double current)
    {
        const int steps = 64;
        double best = current;
        for (int i = 0; i <= steps; ++i) {
            best = std::max(best, ring(a + (b - a) * i / steps).full);
            ++evals_;
        }
        return best == -kInf ? 0.0 : best;
    }

    template <class Ring>
    double coarse(const Ring& ring, double a, double b, double shift)
    {
        const int pieces = 64;
        const double w = (b - a) / pieces;
        auto h = [&](double r) {
            ++evals_;
            const double v = ring(r).full;
            return v == -kInf ? 0.0 : std::exp(v - shift);
        };
        double prev = h(a), sum = 0.0;
        for (int i = 0; i < pieces; ++i) {
            const double next = h(a + (i + 1) * w);
            sum += w / 6.0 * (prev + 4.0 * h(a + (i + 0.5) * w) + next);
            prev = next;
        }
        return sum;
    }

    template <class Ring>
    Pair integrate(const Ring& ring, double a, double b, double shift, double head, const OracleConfig& cfg)
    {
        err_ = 0.0;
        auto h = [&](double r) {
            ++evals_;
            const RingValue v = ring(r);
            return Pair{v.full == -kInf ? 0.0 : std::exp(v.full - shift), v.half == -kInf ? 0.0 : std::exp(v.half - shift)};
        };
        // coarse composite Simpson fixes the absolute tolerance; shells are
        // resolved relative to everything integrated so far
        const int pieces = 64;
        const double w = (b - a) / pieces;
        std::vector<Pair> fa(pieces + 1), fm(pieces);
        double coarse = 0.0;
        for (int i = 0; i <= pieces; ++i)
            fa[i] = h(a + i * w);
        for (int i = 0; i < pieces; ++i) {
            fm[i] = h(a + (i + 0.5) * w);
            coarse += w / 6.0 * (fa[i].full + 4.0 * fm[i].full + fa[i + 1].full);
        }
        const double tol = cfg.rel_tol * std::max({coarse, head, std::numeric_limits<double>::min()}) / pieces;
        Pair total;
        for (int i = 0; i < pieces; ++i) {
            const double lo = a + i * w, hi = lo + w;
            const Pair whole = (fa[i] + fm[i] * 4.0 + fa[i + 1]) * (w / 6.0);
            total = total + simpson(h, lo, hi, fa[i], fm[i], fa[i + 1], whole, tol, 0);
        }
        return total;
    }

    template <class H>
    Pair simpson(const H& h, double a, double b, const Pair& fa, const Pair& fm, const Pair& fb, const Pair& whole,
                 double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const Pair lm = h(0.5 * (a + m)), rm = h(0.5 * (m + b));
        const Pair left = (fa + lm * 4.0 + fm) * ((m - a) / 6.0);
        const Pair right = (fm + rm * 4.0 + fb) * ((b - m) / 6.0);
        const Pair diff = left + right - whole;
        if (depth >= 40 || std::abs(diff.full) <= 15.0 * tol) {
            err_ += std::abs(diff.full) / 15.0;
            return left + right + diff * (1.0 / 15.0);
        }
        return simpson(h, a, m, fa, lm, fm, left, 0.5 * tol, depth + 1) +
               simpson(h, m, b, fm, rm, fb, right, 0.5 * tol, depth + 1);
    }
};

/// log of r * (2 pi / M) * sum_j exp(log_g(r e^{i t_j})), with the same sum
/// over the even nodes alone.
template <class LogFn>
RingValue ring_log(const LogFn& log_g, double r, int angular)
{
    if (r == 0.0)
        return {};
    thread_local std::vector<double> vals;
    vals.resize(angular);
    double top = -kInf;
    for (int j = 0; j < angular; ++j) {
        vals[j] = log_g(std::polar(r, 2.0 * kPi * j / angular));
        top = std::max(top, vals[j]);
    }
    if (top == -kInf)
        return {};
    double s = 0.0, even = 0.0;
    for (int j = 0; j < angular; ++j) {
        const double e = std::exp(vals[j] - top);
        s += e;
        if (j % 2 == 0)
            even += e;
    }
    const double base = top + std::log(2.0 * kPi / angular * r);
    return {base + std::log(s), even > 0.0 ? base + std::log(2.0 * even) : -kInf};
}

} // namespace detail

/// ||f|| by the oracle scheme. p must be finite.
template <class F>
OracleResult brute_force_norm(const F& f, const FockTypeParams& params, const OracleConfig& cfg = {})
{
    params.validate();
    if (is_infinite(params.p))
        throw std::invalid_argument("oracle norms need finite p");
    const double p = params.p;
    auto log_g = [&](Complex z) { return p * (f.log_abs(z) - params.weight_exponent(std::abs(z))); };
    detail::OracleIntegrator integ;
    auto res = integ.run([&](double r) { return detail::ring_log(log_g, r, cfg.angular); }, cfg);
    res.evaluations *= cfg.angular;
    if (res.divergent)
        return res;
    const double log_const = params.family == Family::ClassicalFock ? std::log(p / (2.0 * kPi)) : 0.0;
    const double rel_err = res.value > 0.0 ? res.error_estimate / res.value : 0.0;
    res.log_value = (res.log_value + log_const) / p;
    res.value = std::exp(res.log_value);
    res.error_estimate = res.value * rel_err / p;
    return res;
}

/// \int L^q dA by the oracle scheme. q must be finite.
inline OracleResult brute_force_Lq_integral(const OperatorSpec& spec, double q, const OracleConfig& cfg = {})
{
    require_exponent(q, "q");
    if (is_infinite(q))
        throw std::invalid_argument("oracle L^q integral needs finite q");
    auto log_g = [&](Complex z) { return q * L_value(spec, z).log_value; };
    detail::OracleIntegrator integ;
    auto res = integ.run([&](double r) { return detail::ring_log(log_g, r, cfg.angular); }, cfg);
    res.evaluations *= cfg.angular;
    return res;
}

} // namespace fockops

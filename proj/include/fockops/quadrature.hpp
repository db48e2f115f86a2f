#pragma once

#include <fockops/types.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace fockops {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n from Chebyshev initial guesses; cached per n.
inline const GaussLegendre& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

struct QuadratureConfig {
    int radial_nodes = 24;          // Gauss-Legendre nodes per radial panel
    int angular_nodes = 256;        // trapezoid nodes on each circle
    double panel_width = 0.5;
    double r_cut = 0.0;             // 0 selects the cutoff from the envelope
    double tail_tolerance = 1e-12;  // relative size of the discarded tail
    double r_max = 1.0e6;           // beyond this the integrand is declared non-decaying
    std::vector<double> breakpoints;  // radii where the integrand has kinks
    int kink_angular_factor = 8;      // angular refinement on rings near a breakpoint
    int kink_levels = 10;             // geometric grading steps towards a breakpoint
    int kink_radial_nodes = 6;        // Gauss-Legendre nodes on graded panels
};

/// log of an integral or supremum over the plane, with the discarded tail.
struct PlaneResult {
    double log_value = -kInf;
    double tail_rel = 0.0;  // relative bound on what lies beyond r_cut
    double r_cut = 0.0;
    bool divergent = false;
    Complex argmax{};       // sup only
};

namespace detail {

struct Envelope {
    std::vector<double> radii;
    std::vector<double> values;  // max over the circle of the log integrand, plus log r
    double peak = -kInf;
    double r_cut = 0.0;
    bool decayed = false;
};

/// Radial scan of max_theta log g(r e^{it}) + extra(r) until the profile has
/// dropped `drop` below its running maximum while decreasing.
template <class LogFn>
Envelope scan_envelope(const LogFn& log_g, int angular, double drop, double r_max, bool area_element)
{
    Envelope env;
    double r = 0.0;
    double prev = -kInf;
    while (r <= r_max) {
        double top = -kInf;
        if (r == 0.0) {
            top = log_g(Complex{});
        } else {
            for (int j = 0; j < angular; ++j)
                top = std::max(top, log_g(std::polar(r, 2.0 * kPi * j / angular)));
        }
        double v = area_element ? (r == 0.0 ? -kInf : top + std::log(r)) : top;
        env.radii.push_back(r);
        env.values.push_back(v);
        if (v > env.peak)
            env.peak = v;
        if (r > 1.0 && env.peak > -kInf && v < env.peak - drop && v < prev) {
            env.r_cut = r;
            env.decayed = true;
            return env;
        }
        if (env.peak == -kInf && r > 1.0 && v == -kInf) {
            // identically zero integrand
            env.r_cut = r;
            env.decayed = true;
            return env;
        }
        prev = v;
        r += r < 50.0 ? 0.25 : r / 200.0;
    }
    env.r_cut = r_max;
    return env;
}

/// [0, r_cut] split into panels of width h (widening to r/20 far out), graded
/// geometrically towards 0 and towards each breakpoint.
inline std::vector<std::pair<double, double>> radial_panels(double r_cut, double width,
                                                            const std::vector<double>& breakpoints = {},
                                                            int levels = 10)
{
    std::vector<double> edges{0.0};
    const double h = std::min(width, r_cut);
    for (double lo = h * std::ldexp(1.0, -14); lo < h; lo *= 2.0)
        edges.push_back(lo);
    for (double a = h; a < r_cut - 1e-14;) {
        edges.push_back(a);
        a = std::min(a + std::max(h, 0.05 * a), r_cut);
    }
    edges.push_back(r_cut);
    for (double r0 : breakpoints) {
        if (!(r0 > 0.0 && r0 < r_cut))
            continue;
        const double w = std::max(h, 0.05 * r0);
        edges.push_back(r0);
        for (int j = 0; j <= levels; ++j) {
            const double d = w * std::ldexp(1.0, -j);
            if (r0 - d > 0.0)
                edges.push_back(r0 - d);
            if (r0 + d < r_cut)
                edges.push_back(r0 + d);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(), [](double x, double y) { return y - x <= 1e-15 * y; }),
                edges.end());
    std::vector<std::pair<double, double>> panels;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.emplace_back(edges[i], edges[i + 1]);
    return panels;
}

/// Angular node count for the ring at radius r.
inline int ring_nodes(double r, const QuadratureConfig& cfg, double width)
{
    for (double r0 : cfg.breakpoints)
        if (std::abs(r - r0) < std::max(width, 0.05 * r0))
            return cfg.angular_nodes * cfg.kink_angular_factor;
    return cfg.angular_nodes;
}

} // namespace detail

/// log of \int_C exp(log_g(z)) dA(z) in polar coordinates: composite
/// Gauss-Legendre in r (geometrically graded near 0) times the trapezoid rule
/// in theta. Accumulation is shifted by the envelope peak to stay finite.
template <class LogFn>
PlaneResult integrate_plane(const LogFn& log_g, const QuadratureConfig& cfg)
{
    PlaneResult out;
    const double drop = -std::log(cfg.tail_tolerance) + 20.0;
    auto env = detail::scan_envelope(log_g, cfg.angular_nodes, drop, cfg.r_max, true);
    if (!env.decayed) {
        out.divergent = true;
        out.log_value = kInf;
        out.r_cut = cfg.r_max;
        return out;
    }
    if (env.peak == -kInf) {
        out.r_cut = env.r_cut;
        return out;
    }
    const double r_cut = cfg.r_cut > 0.0 ? cfg.r_cut : env.r_cut;
    const double shift = env.peak;

    const auto panels = detail::radial_panels(r_cut, cfg.panel_width, cfg.breakpoints, cfg.kink_levels);
    const auto& gl_plain = gauss_legendre(cfg.radial_nodes);
    const auto& gl_kink = gauss_legendre(cfg.kink_radial_nodes);
    double sum = 0.0;
    for (auto [a, b] : panels) {
        const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
        const bool near_kink = detail::ring_nodes(mid, cfg, cfg.panel_width) != cfg.angular_nodes;
        const auto& gl = near_kink ? gl_kink : gl_plain;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double r = mid + half * gl.nodes[i];
            const int na = detail::ring_nodes(r, cfg, cfg.panel_width);
            const double dtheta = 2.0 * kPi / na;
            double ring = 0.0;
            for (int j = 0; j < na; ++j) {
                double lg = log_g(std::polar(r, j * dtheta));
                if (lg != -kInf)
                    ring += std::exp(lg - shift);
            }
            sum += gl.weights[i] * half * r * ring * dtheta;
        }
    }
    out.r_cut = r_cut;
    out.log_value = sum > 0.0 ? shift + std::log(sum) : -kInf;

    // Tail: exponential extrapolation of the envelope beyond r_cut, scaled by
    // 2 pi for the circle (the envelope already carries the factor r).
    const std::size_t last = env.values.size() - 1;
    double slope = (env.values[last] - env.values[last - 1]) / (env.radii[last] - env.radii[last - 1]);
    if (cfg.r_cut > 0.0 && cfg.r_cut < env.r_cut) {
        out.tail_rel = kInf;
    } else if (slope < 0.0 && out.log_value > -kInf) {
        out.tail_rel = 2.0 * kPi * std::exp(env.values[last] - out.log_value) / (-slope);
    }
    return out;
}

namespace detail {

/// Compass search maximizing obj from z0 with initial step h.
template <class Obj>
std::pair<Complex, double> pattern_search(const Obj& obj, Complex z0, double h)
{
    Complex z = z0;
    double best = obj(z);
    const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (h > 1e-11 * std::max(1.0, std::abs(z))) {
        bool moved = false;
        for (const auto& d : dirs) {
            Complex c = z + h * d;
            double v = obj(c);
            if (v > best) {
                best = v;
                z = c;
                moved = true;
                break;
            }
        }
        if (!moved)
            h *= 0.5;
    }
    return {z, best};
}

} // namespace detail

/// log of sup_z exp(log_g(z)): polar scan to locate candidates, then local
/// pattern search around the best few grid nodes. A profile that is still
/// rising at r_max is reported as divergent; a flat one is a finite sup.
template <class LogFn>
PlaneResult sup_plane(const LogFn& log_g, const QuadratureConfig& cfg)
{
    PlaneResult out;
    auto env = detail::scan_envelope(log_g, cfg.angular_nodes, 60.0, cfg.r_max, false);
    if (!env.decayed) {
        double early = -kInf, late = -kInf;
        for (std::size_t i = 0; i < env.radii.size(); ++i) {
            double& bucket = env.radii[i] < 0.5 * cfg.r_max ? early : late;
            bucket = std::max(bucket, env.values[i]);
        }
        if (late > early + 1e-9 * std::max(1.0, std::abs(early))) {
            out.divergent = true;
            out.log_value = kInf;
            out.r_cut = cfg.r_max;
            return out;
        }
    }
    out.r_cut = env.r_cut;

    // candidate nodes: best few over the scanned rings
    struct Cand {
        double v;
        Complex z;
    };
    std::vector<Cand> cands;
    const int na = cfg.angular_nodes;
    for (double r : env.radii) {
        if (r == 0.0) {
            cands.push_back({log_g(Complex{}), Complex{}});
            continue;
        }
        for (int j = 0; j < na; ++j) {
            Complex z = std::polar(r, 2.0 * kPi * j / na);
            cands.push_back({log_g(z), z});
        }
    }
    std::partial_sort(cands.begin(), cands.begin() + std::min<std::size_t>(8, cands.size()), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.v > b.v; });
    out.log_value = -kInf;
    for (std::size_t i = 0; i < std::min<std::size_t>(8, cands.size()); ++i) {
        if (cands[i].v == -kInf)
            continue;
        double h = std::max(0.25, std::abs(cands[i].z) * 2.0 * kPi / na);
        auto [z, v] = detail::pattern_search(log_g, cands[i].z, h);
        if (v > out.log_value) {
            out.log_value = v;
            out.argmax = z;
        }
    }
    return out;
}

/// \int_C value(z) dA(z) for a complex integrand whose modulus is exp(log_mod(z)).
/// Cutoff from the envelope of log_mod; no log-domain shift, so the integrand
/// must be representable.
template <class ValueFn, class LogFn>
Complex integrate_plane_complex(const ValueFn& value, const LogFn& log_mod, const QuadratureConfig& cfg)
{
    const double drop = -std::log(cfg.tail_tolerance) + 20.0;
    auto env = detail::scan_envelope(log_mod, cfg.angular_nodes, drop, cfg.r_max, true);
    if (!env.decayed)
        throw std::domain_error("integrand does not decay");
    const double r_cut = cfg.r_cut > 0.0 ? cfg.r_cut : env.r_cut;
    const auto& gl = gauss_legendre(cfg.radial_nodes);
    const int na = cfg.angular_nodes;
    const double dtheta = 2.0 * kPi / na;
    Complex sum{};
    for (auto [a, b] : detail::radial_panels(r_cut, cfg.panel_width)) {
        const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double r = mid + half * gl.nodes[i];
            Complex ring{};
            for (int j = 0; j < na; ++j)
                ring += value(std::polar(r, j * dtheta));
            sum += gl.weights[i] * half * r * dtheta * ring;
        }
    }
    return sum;
}

} // namespace fockops

#pragma once

#include <fockops/exp_poly.hpp>
#include <fockops/taylor.hpp>

#include <optional>
#include <vector>

namespace fockops {

struct MaxModulus {
    double value;      // may be +inf when only the log is representable
    double log_value;
    double theta;      // maximizing angle
};

namespace detail {

/// Golden-section maximization of a unimodal function on [lo, hi].
template <class Fn>
double golden_max(Fn&& fn, double lo, double hi, double tol = 1e-14)
{
    constexpr double g = 0.6180339887498949;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = fn(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = fn(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// M_f(r) = max_{|z|=r} |f(z)| on an angular grid of >= 1024 points, refined
/// around the best node and doubled until the log changes by < 1e-10.
template <class F>
MaxModulus max_modulus(const F& f, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("max_modulus radius must be positive");
    auto logf = [&](double t) { return f.log_abs(std::polar(r, t)); };

    double prev = -kInf;
    MaxModulus best{0.0, -kInf, 0.0};
    for (int n = 1024; n <= (1 << 16); n *= 2) {
        const double h = 2.0 * kPi / n;
        int arg = 0;
        double top = -kInf;
        for (int i = 0; i < n; ++i) {
            double v = logf(i * h);
            if (v > top) {
                top = v;
                arg = i;
            }
        }
        double theta = detail::golden_max(logf, (arg - 1) * h, (arg + 1) * h);
        double refined = std::max(top, logf(theta));
        if (refined > best.log_value)
            best = {0.0, refined, refined == top ? arg * h : theta};
        const double change = std::abs(best.log_value - prev);
        if (n > 1024 && change <= 1e-10 * std::max(1.0, std::abs(best.log_value)))
            break;
        prev = best.log_value;
    }
    best.value = std::exp(best.log_value);
    best.theta = std::remainder(best.theta, 2.0 * kPi);
    return best;
}

struct GrowthOrder {
    double estimate;               // least-squares slope of log log M vs log r
    std::optional<int> symbolic;   // exact order when the representation knows it
    bool degenerate = false;       // polynomial / no usable points
    bool heuristic = true;         // the numeric limsup is never certified
};

/// Numeric order on 40 geometric radii in [10, 1000].
template <class F>
GrowthOrder numeric_order(const F& f)
{
    constexpr int kPoints = 40;
    std::vector<double> xs, ys;
    for (int i = 0; i < kPoints; ++i) {
        double r = 10.0 * std::pow(100.0, static_cast<double>(i) / (kPoints - 1));
        double lm = max_modulus(f, r).log_value;
        if (lm > 0.0 && std::isfinite(lm)) {
            xs.push_back(std::log(r));
            ys.push_back(std::log(lm));
        }
    }
    if (xs.size() < 2)
        return {0.0, std::nullopt, true, true};
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return {sxy / sxx, std::nullopt, false, true};
}

inline GrowthOrder order_of_growth(const ExpPolyFunction& f)
{
    const int sym = f.symbolic_order();
    if (f.is_polynomial())
        return {0.0, 0, true, true};
    GrowthOrder g = numeric_order(f);
    g.symbolic = sym;
    return g;
}

/// A TaylorFunction is a polynomial, so its order is 0 and the fit degenerate.
inline GrowthOrder order_of_growth(const TaylorFunction&) { return {0.0, 0, true, true}; }

} // namespace fockops

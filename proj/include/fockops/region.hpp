#pragma once

#include <fockops/norms.hpp>
#include <fockops/symbol.hpp>

namespace fockops {

/// Polar window |z| < radius sampled at cell midpoints.
struct Window {
    double radius = 8.0;
    int radial = 512;
    int angular = 512;
};

struct RegionNode {
    Complex z;
    double weight;  // area element
};

/// Omega^eps = {L > eps} on a polar grid, or its image G^eps = psi(Omega^eps).
struct Region {
    std::string kind;  // "omega" or "g"
    double epsilon = 0.0;
    Window window;
    std::vector<char> mask;  // radial-major, window.radial x window.angular
    std::vector<RegionNode> nodes;
    bool empty = true;

    double area() const
    {
        double a = 0.0;
        for (const auto& n : nodes)
            a += n.weight;
        return a;
    }

    double max_radius() const
    {
        double r = 0.0;
        for (const auto& n : nodes)
            r = std::max(r, std::abs(n.z));
        return r;
    }
};

inline Region omega_region(const OperatorSpec& spec, double epsilon, const Window& window = {})
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (!(window.radius > 0.0) || window.radial < 1 || window.angular < 1)
        throw std::invalid_argument("window must have positive radius and grid sizes");
    Region reg;
    reg.kind = "omega";
    reg.epsilon = epsilon;
    reg.window = window;
    reg.mask.assign(static_cast<std::size_t>(window.radial) * window.angular, 0);
    const double dr = window.radius / window.radial;
    const double dt = 2.0 * kPi / window.angular;
    const double log_eps = std::log(epsilon);
    for (int i = 0; i < window.radial; ++i) {
        const double r = (i + 0.5) * dr;
        for (int j = 0; j < window.angular; ++j) {
            const Complex z = std::polar(r, (j + 0.5) * dt);
            if (L_value(spec, z).log_value > log_eps) {
                reg.mask[static_cast<std::size_t>(i) * window.angular + j] = 1;
                reg.nodes.push_back({z, r * dr * dt});
            }
        }
    }
    reg.empty = reg.nodes.empty();
    return reg;
}

/// psi(Omega^eps): nodes mapped through psi, area elements scaled by |a|^2.
inline Region g_region(const OperatorSpec& spec, double epsilon, const Window& window = {})
{
    Region reg = omega_region(spec, epsilon, window);
    reg.kind = "g";
    const double jac = spec.psi.is_constant ? 0.0 : std::norm(spec.psi.a);
    for (auto& n : reg.nodes) {
        n.z = spec.psi(n.z);
        n.weight *= jac;
    }
    return reg;
}

/// A test function outside F^0_(p,k): its first k Taylor coefficients are not all zero.
class SamplingPrecondition : public Error {
public:
    SamplingPrecondition(std::size_t idx, int k)
        : Error("test function " + std::to_string(idx) + " has a nonzero Taylor coefficient below degree " +
                std::to_string(k)),
          index(idx)
    {
    }
    std::size_t index;
};

struct SamplingProbeResult {
    double delta_hat = 0.0;
    std::vector<double> ratios;  // per test function
    std::size_t argmin = 0;
    std::string label = "probe";
};

/// delta_hat = min over the test set of
/// (\int_S |f^{(k)}|^p (1+|z|)^{-kp} e^{-p|z|^2/2} dA)^{1/p} / ||f||_p
/// (sup form for p = inf). An upper bound on any sampling constant: small
/// values refute sampling, large ones are evidence only.
inline SamplingProbeResult sampling_probe(const Region& region, double p, int k,
                                          const std::vector<TaylorFunction>& testset,
                                          const QuadratureConfig& cfg = {})
{
    require_exponent(p, "p");
    if (k < 0)
        throw std::invalid_argument("derivative order k must be nonnegative");
    for (std::size_t i = 0; i < testset.size(); ++i) {
        const auto& f = testset[i];
        double scale = 0.0;
        for (const auto& c : f.coeffs())
            scale = std::max(scale, std::abs(c));
        for (int j = 0; j < k; ++j)
            if (std::abs(f.coeff(j)) > 1e-14 * scale)
                throw SamplingPrecondition(i, k);
    }
    SamplingProbeResult out;
    if (testset.empty())
        return out;
    out.delta_hat = kInf;
    for (std::size_t i = 0; i < testset.size(); ++i) {
        const auto& f = testset[i];
        double ratio = 0.0;
        if (!region.empty) {
            const auto fk = differentiate(f, k);
            const double log_norm = fock_norm(f, FockTypeParams::classical(p), cfg).log_value;
            double acc = -kInf;
            for (const auto& n : region.nodes) {
                if (n.weight <= 0.0 && !is_infinite(p))
                    continue;
                const double r = std::abs(n.z);
                const double lg = fk.log_abs(n.z) - k * std::log1p(r) - 0.5 * r * r;
                acc = is_infinite(p) ? std::max(acc, lg) : log_add(acc, p * lg + std::log(n.weight));
            }
            const double log_restricted = is_infinite(p) ? acc : acc / p;
            ratio = std::exp(log_restricted - log_norm);
        }
        out.ratios.push_back(ratio);
        if (ratio < out.delta_hat) {
            out.delta_hat = ratio;
            out.argmin = i;
        }
    }
    return out;
}

} // namespace fockops

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace fockops {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Lebesgue exponent in [1, inf]; infinity is the sup-norm tag.
inline bool is_infinite(double p) { return std::isinf(p); }

inline void require_exponent(double p, const char* name)
{
    if (!(p >= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [1, inf]");
}

inline std::string exponent_string(double p)
{
    if (is_infinite(p))
        return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

/// Three-valued outcome used by every classifier.
enum class Verdict { Yes, No, NeedsProbe, NotApplicable };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::NeedsProbe: return "needs_probe";
    case Verdict::NotApplicable: return "not_applicable";
    }
    return "?";
}

inline Verdict verdict_of(bool b) { return b ? Verdict::Yes : Verdict::No; }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a Taylor product would exceed the truncation cap.
class TruncationOverflow : public Error {
public:
    using Error::Error;
};

/// Raised when an operator spec is internally contradictory (e.g. |a| = 1
/// with a symbol that is not of kernel form).
class InconsistentSpec : public Error {
public:
    using Error::Error;
};

/// log(|z|) that returns -inf at zero without raising.
inline double log_abs(Complex z)
{
    double a = std::abs(z);
    return a == 0.0 ? -kInf : std::log(a);
}

/// log(exp(a) + exp(b)) for a, b possibly -inf.
inline double log_add(double a, double b)
{
    if (a == -kInf)
        return b;
    if (b == -kInf)
        return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

} // namespace fockops

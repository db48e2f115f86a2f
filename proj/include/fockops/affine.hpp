#pragma once

#include <fockops/types.hpp>

namespace fockops {

/// psi(z) = a z + b. A constant symbol (a == 0) is carried explicitly because
/// the classifiers short-circuit on it.
struct AffineSymbol {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    bool is_constant = false;

    AffineSymbol() = default;
    AffineSymbol(Complex a_, Complex b_) : a(a_), b(b_), is_constant(a_ == Complex{}) {}

    static AffineSymbol constant(Complex b_) { return AffineSymbol(Complex{}, b_); }
    static AffineSymbol identity() { return AffineSymbol(Complex{1.0, 0.0}, Complex{}); }

    Complex operator()(Complex z) const { return is_constant ? b : a * z + b; }

    AffineSymbol inverse() const
    {
        if (is_constant)
            throw std::domain_error("constant symbol has no inverse");
        return AffineSymbol(1.0 / a, -b / a);
    }

    bool operator==(const AffineSymbol&) const = default;
};

} // namespace fockops

#include <fockops/growth.hpp>
#include <fockops/norms.hpp>
#include <fockops/preimage.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fockops;

namespace {

const double kE = std::exp(1.0);

Complex random_point(std::mt19937& rng, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

// Central finite difference of order 4: the independent derivative oracle.
template <class F>
Complex fd_derivative(const F& f, Complex z, double h = 1e-3)
{
    return (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
}

} // namespace

TEST(Evaluate, KernelAtOne)
{
    auto k1 = ExpPolyFunction::kernel(1.0);
    EXPECT_NEAR(std::abs(k1(1.0) - kE), 0.0, 1e-15);
}

TEST(Evaluate, SquareAtI)
{
    ExpPolyFunction f({0.0, 0.0, 1.0}, {});
    EXPECT_NEAR(std::abs(f(Complex{0, 1}) - Complex{-1, 0}), 0.0, 1e-15);
}

TEST(Evaluate, GaussianMatchesDirectExp)
{
    auto f = ExpPolyFunction::exponential(0.0, 0.0, 0.25);
    EXPECT_NEAR(f(2.0).real(), std::exp(2.0 * 2.0 / 4.0), 1e-14);
    EXPECT_NEAR(f(2.0).real(), kE, 1e-14);
}

TEST(Evaluate, OverflowKeepsLogModulus)
{
    auto f = ExpPolyFunction::exponential(0.0, 0.0, 1.0);
    auto v = f.evaluate_logged(100.0);
    EXPECT_TRUE(std::isinf(v.value.real()));
    EXPECT_NEAR(v.log_modulus, 1.0e4, 1e-9);
    auto small = ExpPolyFunction::exponential(0.0, 0.0, -1.0).evaluate_logged(100.0);
    EXPECT_EQ(small.value, Complex{});
    EXPECT_NEAR(small.log_modulus, -1.0e4, 1e-9);
}

TEST(Differentiate, KernelEigenRelation)
{
    Complex w{2.0, 0.0};
    auto d = differentiate(ExpPolyFunction::kernel(w), 1);
    ASSERT_EQ(d.poly().size(), 1u);
    EXPECT_EQ(d.poly()[0], std::conj(w));
    EXPECT_EQ(d.expo(), ExpPolyFunction::kernel(w).expo());
}

TEST(Differentiate, CubeTwice)
{
    auto d = differentiate(ExpPolyFunction::monomial(3), 2);
    EXPECT_EQ(d, ExpPolyFunction({0.0, 6.0}, {}));
    auto t = differentiate(TaylorFunction::monomial(3), 2);
    EXPECT_EQ(t.coeff(1), Complex(6.0));
    EXPECT_EQ(t.coeff(0), Complex(0.0));
}

TEST(Differentiate, MatchesFiniteDifferences)
{
    ExpPolyFunction f({0.0, 1.0}, {0.0, 0.0, 1.0});  // z e^{z^2}
    auto d = differentiate(f, 1);
    ExpPolyFunction expected({1.0, 0.0, 2.0}, {0.0, 0.0, 1.0});
    EXPECT_EQ(d, expected);
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        Complex z = random_point(rng, 1.5);
        Complex fd = fd_derivative(f, z);
        EXPECT_LT(std::abs(d(z) - fd), 1e-8 * std::abs(fd)) << z;
    }
    EXPECT_EQ(differentiate(f, 0), f);
}

TEST(ComposeAffine, SquareShift)
{
    auto g = compose_affine(ExpPolyFunction::monomial(2), AffineSymbol(1.0, 1.0));
    EXPECT_EQ(g, ExpPolyFunction({1.0, 2.0, 1.0}, {}));
}

TEST(ComposeAffine, KernelPointwise)
{
    Complex w{0.7, -0.4}, a{0.3, 0.6}, b{-1.1, 0.2};
    AffineSymbol psi(a, b);
    auto g = compose_affine(ExpPolyFunction::kernel(w), psi);
    // e^{conj(w) b} K_{conj(a) w}
    auto expected = scale(ExpPolyFunction::kernel(std::conj(a) * w), std::exp(std::conj(w) * b));
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
            Complex z{0.5 * i, 0.5 * j};
            EXPECT_LT(std::abs(g(z) - expected(z)), 1e-13 * std::abs(expected(z)));
        }
}

TEST(ComposeAffine, ConstantUnchanged)
{
    auto c = ExpPolyFunction::constant({2.0, -3.0});
    auto g = compose_affine(c, AffineSymbol({0.2, 0.1}, {5.0, 1.0}));
    EXPECT_EQ(g(Complex{1.3, 0.4}), Complex(2.0, -3.0));
    EXPECT_EQ(g.poly().size(), 1u);
}

TEST(ComposeAffine, InverseRoundTrip)
{
    std::mt19937 rng(11);
    ExpPolyFunction f({1.0, Complex{0.5, -0.2}, 0.3, Complex{0, 0.1}}, {Complex{0.1, 0.0}, Complex{0.2, 0.3}, Complex{-0.05, 0.02}});
    for (int t = 0; t < 8; ++t) {
        AffineSymbol psi(Complex{0.4 + 0.1 * t, -0.3 + 0.05 * t}, random_point(rng, 1.0));
        auto back = compose_affine(compose_affine(f, psi), psi.inverse());
        for (int i = 0; i < 20; ++i) {
            Complex z = random_point(rng, 3.5);
            if (std::abs(z) > 5.0)
                continue;
            EXPECT_LT(std::abs(back(z) - f(z)), 1e-10 * std::max(1.0, std::abs(f(z))));
        }
    }
}

TEST(Multiply, Identity)
{
    ExpPolyFunction f({1.0, 2.0}, {0.0, Complex{0, 1}, 0.1});
    EXPECT_EQ(multiply(ExpPolyFunction::constant(1.0), f), f);
}

TEST(Multiply, KernelsCancel)
{
    Complex w{1.5, -0.5};
    auto prod = multiply(ExpPolyFunction::kernel(w), ExpPolyFunction::kernel(-w));
    EXPECT_EQ(prod.expo()[1], Complex{});
    EXPECT_EQ(prod(Complex{3.0, 2.0}), Complex(1.0));
}

TEST(Multiply, MatchesSampledProduct)
{
    auto z = ExpPolyFunction::monomial(1);
    auto ez = ExpPolyFunction::exponential(0.0, 1.0);
    auto prod = multiply(z, ez);
    for (int i = -5; i <= 5; ++i) {
        Complex p{0.4 * i, 0.3 * i - 0.2};
        EXPECT_LT(std::abs(prod(p) - z(p) * ez(p)), 1e-12 * std::abs(z(p) * ez(p)) + 1e-300);
    }
}

TEST(Multiply, TaylorTimesExpPolySharesTruncation)
{
    auto t = TaylorFunction::monomial(1);
    TaylorFunction t10(t.coeffs(), 10);
    auto prod = multiply(t10, ExpPolyFunction::exponential(0.0, 1.0));
    EXPECT_EQ(prod.truncation_degree(), 10);
    for (int k = 1; k <= 10; ++k)
        EXPECT_NEAR(prod.coeff(k).real(), std::exp(-std::lgamma(k)), 1e-15);
}

TEST(Multiply, TaylorOverflowReported)
{
    TaylorFunction a(poly::Coeffs(200, 1.0)), b(poly::Coeffs(100, 1.0));
    EXPECT_THROW(multiply(a, b), TruncationOverflow);
    EXPECT_NO_THROW(multiply(a, b, 400));
}

TEST(Antiderivative, Basics)
{
    auto one = TaylorFunction(poly::Coeffs{1.0});
    EXPECT_EQ(antiderivative(one), TaylorFunction(poly::Coeffs{0.0, 1.0}));
    for (int k = 0; k < 8; ++k) {
        auto a = antiderivative(TaylorFunction::monomial(k));
        EXPECT_EQ(a.coeff(k + 1), Complex(1.0 / (k + 1)));
    }
}

TEST(Antiderivative, RoundTripExact)
{
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        poly::Coeffs c(21);
        for (auto& x : c)
            x = {g(rng), g(rng)};
        TaylorFunction f(c);
        auto d = differentiate(antiderivative(f), 1);
        for (int k = 0; k <= 20; ++k)
            EXPECT_NEAR(std::abs(d.coeff(k) - f.coeff(k)), 0.0, 4e-16 * std::abs(f.coeff(k)));
        // antiderivative after differentiation recovers f with zero constant term
        c[0] = 0.0;
        TaylorFunction f0(c);
        auto back = antiderivative(differentiate(f0, 1));
        for (int k = 0; k <= 20; ++k)
            EXPECT_NEAR(std::abs(back.coeff(k) - f0.coeff(k)), 0.0, 1e-15 * std::abs(f0.coeff(k)) + 1e-300);
    }
}

TEST(Antiderivative, CapRespected)
{
    TaylorFunction f(poly::Coeffs(TaylorFunction::kDefaultCap + 1, 1.0));
    EXPECT_THROW(antiderivative(f), TruncationOverflow);
}

TEST(MaxModulus, Monomials)
{
    for (int k = 0; k <= 6; ++k)
        EXPECT_NEAR(max_modulus(ExpPolyFunction::monomial(k), 2.5).value, std::pow(2.5, k), 1e-12 * std::pow(2.5, k));
}

TEST(MaxModulus, Exponential)
{
    auto m = max_modulus(ExpPolyFunction::exponential(0.0, 1.0), 3.0);
    EXPECT_NEAR(m.log_value, 3.0, 1e-12);
    EXPECT_NEAR(m.theta, 0.0, 1e-6);
}

TEST(MaxModulus, GaussianAgainstDenseGrid)
{
    auto f = ExpPolyFunction::exponential(0.0, Complex{0.3, 0.2}, 1.0);
    for (double r : {1.0, 4.0, 20.0}) {
        // dense-grid oracle, independent of the adaptive refinement
        double dense = -kInf;
        const int n = 1 << 20;
        for (int i = 0; i < n; ++i)
            dense = std::max(dense, f.log_abs(std::polar(r, 2.0 * kPi * i / n)));
        double got = max_modulus(f, r).log_value;
        EXPECT_GE(got, dense - 1e-12 * dense);
        EXPECT_LT(std::abs(got - dense), 1e-9 * std::abs(dense));
    }
    EXPECT_NEAR(max_modulus(ExpPolyFunction::exponential(0.0, 0.0, 1.0), 7.0).log_value, 49.0, 1e-9 * 49.0);
}

TEST(MaxModulus, RejectsNonPositiveRadius)
{
    EXPECT_THROW(max_modulus(ExpPolyFunction::monomial(1), 0.0), std::invalid_argument);
}

TEST(OrderOfGrowth, ClassicalExamples)
{
    auto e1 = order_of_growth(ExpPolyFunction::exponential(0.0, 1.0));
    EXPECT_NEAR(e1.estimate, 1.0, 0.05);
    EXPECT_EQ(e1.symbolic, 1);
    auto e2 = order_of_growth(ExpPolyFunction::exponential(0.0, 0.0, 1.0));
    EXPECT_NEAR(e2.estimate, 2.0, 0.05);
    EXPECT_EQ(e2.symbolic, 2);
    auto p = order_of_growth(ExpPolyFunction::monomial(5));
    EXPECT_TRUE(p.degenerate);
    EXPECT_EQ(p.estimate, 0.0);
}

TEST(OrderOfGrowth, BoundedSymbolsHaveOrderAtMostTwo)
{
    // u psi^n for bounded specs: |a| <= 1 and |a2| <= (1-|a|^2)/2
    std::vector<OperatorSpec> specs{
        {ExpPolyFunction::exponential(0.0, -1.0), AffineSymbol(1.0, 1.0), 0},
        {ExpPolyFunction::constant(1.0), AffineSymbol(0.5, 0.0), 1},
        {ExpPolyFunction::exponential(0.2, Complex{0.3, 0.1}, 0.3), AffineSymbol(0.5, 0.25), 2},
        {ExpPolyFunction::exponential(0.0, 0.5, Complex{0.0, 0.375}), AffineSymbol(Complex{0.0, 0.5}, 1.0), 0},
    };
    for (const auto& s : specs) {
        auto g = order_of_growth(s.symbol_product());
        EXPECT_LE(g.estimate, 2.05);
    }
}

TEST(OrderOfGrowth, NumericMatchesSymbolic)
{
    std::vector<ExpPolyFunction> fs{
        ExpPolyFunction::exponential(0.0, 0.5),
        ExpPolyFunction::exponential(1.0, Complex{2.0, -1.0}),
        ExpPolyFunction({1.0, 0.0, 3.0}, {0.0, 0.0, Complex{0.0, 0.7}}),
        ExpPolyFunction({0.0, 1.0}, {0.0, 1.0, -0.5}),
        ExpPolyFunction({2.0}, {0.0, 0.0, 3.0}),
    };
    for (const auto& f : fs) {
        auto g = order_of_growth(f);
        ASSERT_TRUE(g.symbolic.has_value());
        EXPECT_NEAR(g.estimate, *g.symbolic, 0.1);
    }
}

TEST(TaylorConversion, AgreesWithinStatedBound)
{
    std::vector<ExpPolyFunction> fs{
        ExpPolyFunction::exponential(0.0, 1.0),
        ExpPolyFunction({1.0, 2.0}, {0.1, Complex{0.3, -0.4}, 0.2}),
        ExpPolyFunction::normalized_kernel(Complex{1.0, 2.0}),
    };
    const double r_check = 3.0;
    for (const auto& f : fs) {
        for (int n : {40, 80}) {
            auto t = to_taylor(f, n);
            double bound = t.truncation_error_estimate(r_check);
            ASSERT_TRUE(std::isfinite(bound));
            for (int i = 0; i < 64; ++i) {
                Complex z = std::polar(r_check * (i % 4 + 1) / 4.0, 0.37 * i);
                EXPECT_LE(std::abs(t(z) - f(z)), 2.0 * bound + 1e-12 * std::abs(f(z)));
            }
        }
    }
}

TEST(ReproducingKernel, InnerProductRecoversValues)
{
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 3; ++trial) {
        poly::Coeffs c(11);
        for (auto& x : c)
            x = {g(rng), g(rng)};
        ExpPolyFunction f(c, {});
        for (Complex w : {Complex{0.0, 0.0}, Complex{1.0, -0.5}, Complex{-1.5, 2.0}}) {
            Complex ip = fock_inner_product(f, ExpPolyFunction::kernel(w));
            EXPECT_LT(std::abs(ip - f(w)), 1e-8 * std::max(1.0, std::abs(f(w))));
        }
    }
}

TEST(Preimage, IdentityDerivative)
{
    OperatorSpec spec(ExpPolyFunction::constant(1.0), AffineSymbol::identity(), 1);
    auto res = solve_preimage(ExpPolyFunction::constant(1.0), spec);
    EXPECT_EQ(res.f.coeff(1), Complex(1.0));
    EXPECT_EQ(res.f.coeff(0), Complex(0.0));
    for (int k = 2; k <= res.f.truncation_degree(); ++k)
        EXPECT_EQ(res.f.coeff(k), Complex(0.0));
    EXPECT_EQ(res.residual, 0.0);
}

TEST(Preimage, CompositionInverse)
{
    OperatorSpec spec(ExpPolyFunction::constant(1.0), AffineSymbol(0.5, 0.0), 0);
    auto res = solve_preimage(ExpPolyFunction::exponential(0.0, 1.0), spec);
    auto expected = to_taylor(ExpPolyFunction::exponential(0.0, 2.0), res.f.truncation_degree());
    for (int k = 0; k <= res.f.truncation_degree(); ++k)
        EXPECT_NEAR(std::abs(res.f.coeff(k) - expected.coeff(k)), 0.0, 1e-15 * std::abs(expected.coeff(k)) + 1e-300);
}

TEST(Preimage, ShiftedKernelResidual)
{
    OperatorSpec spec(ExpPolyFunction::exponential(0.0, -1.0), AffineSymbol(1.0, 1.0), 0);
    PreimageOptions opt;
    opt.degree = 60;
    opt.check_radius = 3.0;
    auto res = solve_preimage(ExpPolyFunction::normalized_kernel(1.0), spec, opt);
    EXPECT_LT(res.residual, 1e-6);
}

TEST(Preimage, HigherOrderWithPolynomialWeight)
{
    // u = (2 + z) e^{0.1 z}, psi = 0.8 z + 0.3, n = 2: general series-division path
    OperatorSpec spec(ExpPolyFunction({2.0, 1.0}, {0.0, 0.1, 0.0}), AffineSymbol(0.8, 0.3), 2);
    PreimageOptions opt;
    opt.degree = 120;
    opt.check_radius = 1.0;
    auto res = solve_preimage(ExpPolyFunction::normalized_kernel(Complex{0.5, 0.5}), spec, opt);
    EXPECT_LT(res.residual, 1e-9);
}

TEST(Preimage, Refusals)
{
    OperatorSpec constant_psi(ExpPolyFunction::constant(1.0), AffineSymbol::constant(2.0), 0);
    EXPECT_THROW(solve_preimage(ExpPolyFunction::constant(1.0), constant_psi), std::domain_error);
    OperatorSpec vanishing(ExpPolyFunction({-1.0, 1.0}, {}), AffineSymbol::identity(), 0);
    try {
        solve_preimage(ExpPolyFunction::constant(1.0), vanishing);
        FAIL() << "expected WeightVanishes";
    } catch (const WeightVanishes& e) {
        EXPECT_NEAR(std::abs(e.location - Complex(1.0)), 0.0, 1e-12);
    }
}

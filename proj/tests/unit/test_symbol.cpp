#include <fockops/classify.hpp>
#include <fockops/region.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fockops;

namespace {

OperatorSpec identity_spec() { return {ExpPolyFunction::constant(1.0), AffineSymbol::identity(), 0}; }
OperatorSpec half(int n) { return {ExpPolyFunction::constant(1.0), AffineSymbol(0.5, 0.0), n}; }
OperatorSpec shifted_kernel() { return {ExpPolyFunction::exponential(0.0, -1.0), AffineSymbol(1.0, 1.0), 0}; }

// Direct formula, independent of the log-domain path.
double L_direct(const OperatorSpec& s, Complex z)
{
    Complex w = s.psi(z);
    return std::abs(s.u(z)) * std::pow(std::abs(w), s.n) * std::exp((std::norm(w) - std::norm(z)) / 2.0);
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

} // namespace

TEST(LValue, IdentityIsOne)
{
    for (Complex z : {Complex{0, 0}, Complex{3, -2}, Complex{-10, 7}})
        EXPECT_NEAR(L_value(identity_spec(), z).value, 1.0, 1e-14);
}

TEST(LValue, HalfDilation)
{
    EXPECT_NEAR(L_value(half(0), 0.0).value, 1.0, 1e-15);
    EXPECT_NEAR(L_value(half(0), 2.0).value, std::exp(-1.5), 1e-15);
    EXPECT_NEAR(L_value(half(0), 2.0).value, 0.22313016014843, 1e-12);
}

TEST(LValue, KernelFormConstant)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        Complex z{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        EXPECT_NEAR(L_value(shifted_kernel(), z).value, std::exp(0.5), 1e-12);
    }
}

TEST(LValue, MatchesDirectFormulaAndDecomposition)
{
    OperatorSpec s(ExpPolyFunction({1.0, Complex{0.5, 0.2}}, {0.1, Complex{0.3, -0.4}, Complex{0.05, 0.1}}),
                   AffineSymbol({0.6, 0.3}, {0.2, -0.7}), 2);
    auto form = SymbolForm::of(s);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        Complex z{uniform(rng, -4, 4), uniform(rng, -4, 4)};
        double lv = L_value(s, z).log_value;
        EXPECT_NEAR(lv, std::log(L_direct(s, z)), 1e-11);
        EXPECT_NEAR(lv, form.log_L(z), 1e-11);
    }
}

TEST(SupL, GaussianPeakAtOrigin)
{
    for (double t : {0.0, 0.7, 2.0, 4.0}) {
        OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(std::polar(0.6, t), 0.0), 0);
        auto r = sup_L(s);
        EXPECT_TRUE(r.finite);
        EXPECT_TRUE(r.agree);
        EXPECT_NEAR(r.value, 1.0, 1e-14);
        EXPECT_NEAR(std::abs(r.argmax), 0.0, 1e-14);
    }
}

TEST(SupL, ExpandingDilationInfinite)
{
    auto r = sup_L({ExpPolyFunction::constant(1.0), AffineSymbol(2.0, 0.0), 0});
    EXPECT_FALSE(r.finite);
    EXPECT_TRUE(r.agree);
    EXPECT_TRUE(std::isinf(r.value));
}

TEST(SupL, KernelFormConstantSpread)
{
    auto r = sup_L(shifted_kernel());
    EXPECT_TRUE(r.finite);
    EXPECT_TRUE(r.agree);
    EXPECT_NEAR(r.value, std::exp(0.5), 1e-12);
    EXPECT_LT(L_relative_spread(shifted_kernel(), 10000), 1e-12);
}

TEST(SupL, ShiftedMaximizer)
{
    // u = e^{z}, psi = z/2: log L = x - 3|z|^2/8, max at x = 4/3 with value 2/3
    auto r = sup_L({ExpPolyFunction::exponential(0.0, 1.0), AffineSymbol(0.5, 0.0), 0});
    EXPECT_NEAR(r.log_value, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(std::abs(r.argmax - Complex(4.0 / 3.0)), 0.0, 1e-12);
}

TEST(SupL, PolynomialFactorNumericMax)
{
    // L = (|z|/2) e^{-3|z|^2/8}: max at r^2 = 4/3
    auto r = sup_L(half(1));
    EXPECT_TRUE(r.finite);
    const double rs = std::sqrt(4.0 / 3.0);
    EXPECT_NEAR(r.value, rs / 2.0 * std::exp(-3.0 * rs * rs / 8.0), 1e-10);
}

TEST(SupL, BoundaryCases)
{
    // |a2| = (1 - |a|^2)/2 with a = 1/sqrt(2): a2 = 1/4, constant Pi, no linear term -> finite
    const double a = 1.0 / std::sqrt(2.0);
    OperatorSpec fin(ExpPolyFunction::exponential(0.0, 0.0, 0.25), AffineSymbol(a, 0.0), 0);
    auto r1 = sup_L(fin);
    EXPECT_TRUE(r1.finite);
    EXPECT_NEAR(r1.value, 1.0, 1e-12);
    // linear term along the null direction -> infinite
    OperatorSpec lin(ExpPolyFunction::exponential(0.0, 0.5, 0.25), AffineSymbol(a, 0.0), 0);
    EXPECT_FALSE(sup_L(lin).finite);
    // linear term orthogonal to the null direction -> finite
    OperatorSpec orth(ExpPolyFunction::exponential(0.0, Complex{0.0, 0.5}, 0.25), AffineSymbol(a, 0.0), 0);
    EXPECT_TRUE(sup_L(orth).finite);
    // non-constant Pi on the boundary -> infinite
    OperatorSpec deg(ExpPolyFunction({0.0, 1.0}, {0.0, 0.0, 0.25}), AffineSymbol(a, 0.0), 0);
    EXPECT_FALSE(sup_L(deg).finite);
    // |a| = 1 with n = 1 -> psi^n non-constant -> infinite
    EXPECT_FALSE(sup_L({ExpPolyFunction::constant(1.0), AffineSymbol::identity(), 1}).finite);
}

TEST(SupL, SymbolicAgreesWithNumericOnCorpus)
{
    std::mt19937_64 rng(3);
    int finite = 0;
    for (int i = 0; i < 50; ++i) {
        Complex a = std::polar(uniform(rng, 0.1, 1.3), uniform(rng, 0, 2 * kPi));
        Complex b{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        Complex a1{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        Complex a2 = std::polar(uniform(rng, 0.0, 0.4), uniform(rng, 0, 2 * kPi));
        int n = static_cast<int>(uniform(rng, 0, 3));
        OperatorSpec s(ExpPolyFunction({1.0, Complex{uniform(rng, -1, 1), 0.0}}, {0.0, a1, a2}), AffineSymbol(a, b), n);
        auto r = sup_L(s);
        EXPECT_TRUE(r.agree) << i;
        finite += r.finite;
    }
    EXPECT_GT(finite, 5);
    EXPECT_LT(finite, 45);
}

TEST(ClassifyWCD, QuasinilpotentExampleIsCompact)
{
    auto r = classify_WCD(half(1), 2.0, 2.0);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::Yes);
    EXPECT_EQ(r.closed_range, Verdict::No);
    EXPECT_EQ(r.surjective, Verdict::No);
    EXPECT_EQ(r.order_bounded, Verdict::Yes);
    EXPECT_TRUE(implications_hold(r));
}

TEST(ClassifyWCD, KernelFormIsSurjective)
{
    auto r = classify_WCD(shifted_kernel(), 2.0, 2.0);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::No);
    EXPECT_EQ(r.closed_range, Verdict::Yes);
    EXPECT_EQ(r.surjective, Verdict::Yes);
    EXPECT_EQ(r.order_bounded, Verdict::No);
    EXPECT_NEAR(r.L_sup, std::exp(0.5), 1e-12);
    EXPECT_NEAR(r.L_inf_essential, std::exp(0.5), 1e-12);
}

TEST(ClassifyWCD, LargerToSmallerExponent)
{
    auto r = classify_WCD(half(0), 2.0, 1.0);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::Yes);
    EXPECT_EQ(r.closed_range, Verdict::No);
    // \int L^2 dA = 2 pi / (2 (1 - 1/4))
    bool found = false;
    for (const auto& e : r.evidence)
        if (e.rule == "gaussian_integral" && e.statement.find("pq/(p-q)") != std::string::npos) {
            EXPECT_NEAR(e.value, 4.0 * kPi / 3.0, 1e-12);
            found = true;
        }
    EXPECT_TRUE(found);
    // identity from F_2 to F_1 is not bounded
    EXPECT_EQ(classify_WCD(identity_spec(), 2.0, 1.0).bounded, Verdict::No);
}

TEST(ClassifyWCD, ConstantSymbolShortCircuits)
{
    OperatorSpec s(ExpPolyFunction::monomial(2), AffineSymbol::constant({1.0, 1.0}), 1);
    auto r = classify_WCD(s, 2.0, 2.0);
    EXPECT_EQ(r.closed_range, Verdict::Yes);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::Yes);
    EXPECT_EQ(r.surjective, Verdict::No);
    // u = e^{z^2} is outside every F_q: unbounded, still closed range
    OperatorSpec big(ExpPolyFunction::exponential(0.0, 0.0, 1.0), AffineSymbol::constant(0.0), 2);
    auto rb = classify_WCD(big, 2.0, 2.0);
    EXPECT_EQ(rb.bounded, Verdict::No);
    EXPECT_EQ(rb.closed_range, Verdict::Yes);
    // b = 0, n >= 1: L vanishes identically but f -> f''(0) u is not the zero operator
    OperatorSpec zero_b(ExpPolyFunction::constant(1.0), AffineSymbol::constant(0.0), 2);
    auto rz = classify_WCD(zero_b, 2.0, 2.0);
    EXPECT_EQ(rz.bounded, Verdict::Yes);
    EXPECT_EQ(rz.L_sup, 0.0);
}

TEST(ClassifyWCD, BoundedNotCompactNeedsProbe)
{
    const double a = 1.0 / std::sqrt(2.0);
    OperatorSpec s(ExpPolyFunction::exponential(0.0, 0.0, 0.25), AffineSymbol(a, 0.0), 0);
    auto r = classify_WCD(s, 2.0, 2.0);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::No);
    EXPECT_EQ(r.closed_range, Verdict::NeedsProbe);
    EXPECT_EQ(r.surjective, Verdict::No);
    EXPECT_EQ(classify_WCD(s, 2.0, 3.0).closed_range, Verdict::No);
}

TEST(ClassifyWCD, ZeroOperator)
{
    OperatorSpec s(ExpPolyFunction::constant(0.0), AffineSymbol(0.3, 1.0), 1);
    auto r = classify_WCD(s, 2.0, 2.0);
    EXPECT_EQ(r.compact, Verdict::Yes);
    EXPECT_EQ(r.closed_range, Verdict::Yes);
    EXPECT_TRUE(implications_hold(r));
}

TEST(ClassifyWCD, ImplicationsOnRandomSpecs)
{
    std::mt19937_64 rng(4);
    const std::vector<double> exps{1.0, 1.5, 2.0, 3.0, kInf};
    for (int i = 0; i < 300; ++i) {
        Complex a = std::polar(uniform(rng, 0.0, 1.2), uniform(rng, 0, 2 * kPi));
        if (uniform(rng, 0, 1) < 0.1)
            a = 0.0;
        Complex b{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        Complex a1{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        Complex a2 = std::polar(uniform(rng, 0.0, 0.5), uniform(rng, 0, 2 * kPi));
        int n = static_cast<int>(uniform(rng, 0, 3));
        OperatorSpec s(ExpPolyFunction({uniform(rng, 0.5, 1.5)}, {0.0, a1, a2}), AffineSymbol(a, b), n);
        double p = exps[static_cast<std::size_t>(uniform(rng, 0, 5))];
        double q = exps[static_cast<std::size_t>(uniform(rng, 0, 5))];
        auto r = classify_WCD(s, p, q);
        EXPECT_TRUE(implications_hold(r)) << i;
    }
}

TEST(ClassifyWCD, SupToSupIdentityOrderBoundedNotCompact)
{
    // q = inf collapses order boundedness to boundedness; the identity on F_inf
    // is then order bounded without being compact
    auto r = classify_WCD(identity_spec(), kInf, kInf);
    EXPECT_EQ(r.bounded, Verdict::Yes);
    EXPECT_EQ(r.order_bounded, Verdict::Yes);
    EXPECT_EQ(r.compact, Verdict::No);
    EXPECT_FALSE(implications_hold(r));
}

TEST(ClassifyFockType, Examples)
{
    auto r1 = classify_D_focktype(1.0, 2.0, 2.0);
    EXPECT_EQ(r1.bounded, Verdict::Yes);
    EXPECT_EQ(r1.compact, Verdict::No);
    EXPECT_EQ(r1.closed_range, Verdict::Yes);
    EXPECT_EQ(r1.surjective, Verdict::Yes);

    auto r2 = classify_D_focktype(4.0 / 3.0, 1.0, 2.0);
    EXPECT_EQ(r2.bounded, Verdict::Yes);
    EXPECT_EQ(r2.compact, Verdict::No);
    EXPECT_EQ(r2.closed_range, Verdict::No);

    auto r3 = classify_D_focktype(0.5, 3.0, 2.0);
    EXPECT_EQ(r3.bounded, Verdict::Yes);
    EXPECT_EQ(r3.compact, Verdict::Yes);
    EXPECT_EQ(classify_D_focktype(0.7, 3.0, 2.0).bounded, Verdict::No);
}

TEST(ClassifyFockType, BoundaryFlipsForPLeQ)
{
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {2, 3}, {1.5, 4}, {3, 3}}) {
        const double t = 2.0 - p * q / (p * q + q - p);
        auto on = classify_D_focktype(t, p, q);
        EXPECT_EQ(on.bounded, Verdict::Yes);
        EXPECT_EQ(on.compact, Verdict::No);
        EXPECT_EQ(classify_D_focktype(t + 1e-6, p, q).bounded, Verdict::No);
        EXPECT_EQ(classify_D_focktype(t - 1e-6, p, q).compact, Verdict::Yes);
    }
}

TEST(ClassifyFockType, SupSpaces)
{
    EXPECT_EQ(classify_D_focktype(4.0 / 3.0, 2.0, kInf).bounded, Verdict::Yes);
    EXPECT_EQ(classify_D_focktype(4.0 / 3.0, 2.0, kInf).compact, Verdict::No);
    EXPECT_EQ(classify_D_focktype(0.3, kInf, 2.0).compact, Verdict::No);
    EXPECT_EQ(classify_D_focktype(-0.5 + 1.0, kInf, 4.0).compact, Verdict::No);
    EXPECT_EQ(classify_D_focktype(0.4, kInf, 4.0).compact, Verdict::Yes);
    auto r = classify_D_focktype(1.0, kInf, kInf);
    EXPECT_EQ(r.closed_range, Verdict::Yes);
}

TEST(OrderBounded, GaussianIntegral)
{
    auto r = order_bounded(half(0), 2.0);
    EXPECT_EQ(r.verdict, Verdict::Yes);
    ASSERT_TRUE(r.closed_form.has_value());
    ASSERT_TRUE(r.numeric.has_value());
    EXPECT_NEAR(*r.closed_form, 4.0 * kPi / 3.0, 1e-12);
    EXPECT_NEAR(*r.numeric, 4.0 * kPi / 3.0, 1e-9);
}

TEST(OrderBounded, ClosedFormMatchesQuadratureGeneral)
{
    OperatorSpec s(ExpPolyFunction::exponential(Complex{0.2, 0.1}, Complex{0.4, -0.3}, Complex{0.05, 0.1}),
                   AffineSymbol({0.3, 0.4}, {0.5, -0.2}), 0);
    for (double q : {1.0, 2.0, 3.5}) {
        auto r = order_bounded(s, q);
        ASSERT_TRUE(r.closed_form && r.numeric);
        EXPECT_NEAR(*r.numeric, *r.closed_form, 1e-9 * *r.closed_form) << q;
    }
}

TEST(OrderBounded, KernelFormFails)
{
    EXPECT_EQ(order_bounded(shifted_kernel(), 2.0).verdict, Verdict::No);
    for (double t : {0.0, 1.0, 2.5}) {
        OperatorSpec rot(ExpPolyFunction::constant(2.0), AffineSymbol(std::polar(1.0, t), 0.0), 0);
        for (double q : {1.0, 2.0, 5.0})
            EXPECT_EQ(order_bounded(rot, q).verdict, Verdict::No);
    }
}

TEST(OrderBounded, SupExponentMatchesBoundedness)
{
    for (double a : {0.3, 0.9, 1.0, 1.1}) {
        OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(a, 0.0), 0);
        EXPECT_EQ(order_bounded(s, kInf).verdict, classify_WCD(s, 2.0, kInf).bounded);
    }
}

TEST(OrderBounded, FamilyMatchesUnitDisk)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        Complex a = std::polar(uniform(rng, 0.0, 1.5), uniform(rng, 0, 2 * kPi));
        Complex b{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(a, b), 0);
        EXPECT_EQ(order_bounded(s, 2.0).verdict, verdict_of(std::abs(a) < 1.0));
    }
}

TEST(Surjectivity, KernelForm)
{
    auto r = surjectivity(shifted_kernel(), 2.0);
    EXPECT_EQ(r.verdict, Verdict::Yes);
    EXPECT_EQ(r.certificate, "kernel_form");
    EXPECT_NEAR(r.L_constant, std::exp(0.5), 1e-14);
    EXPECT_LT(r.L_spread, 1e-10);
    EXPECT_NEAR(std::abs(r.kernel_point - Complex(-1.0)), 0.0, 1e-15);
}

TEST(Surjectivity, RotationIsSurjective)
{
    OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(std::polar(1.0, kPi / 4.0), 0.0), 0);
    auto r = surjectivity(s, 2.0);
    EXPECT_EQ(r.verdict, Verdict::Yes);
    EXPECT_NEAR(r.L_constant, 1.0, 1e-15);
    EXPECT_LT(r.L_spread, 1e-10);
}

TEST(Surjectivity, ContractionDecaysAlongRay)
{
    auto r = surjectivity(half(0), 2.0);
    EXPECT_EQ(r.verdict, Verdict::No);
    EXPECT_EQ(r.certificate, "ray_decay");
    ASSERT_EQ(r.ray_samples.size(), 4u);
    for (std::size_t i = 1; i < r.ray_samples.size(); ++i)
        EXPECT_LT(r.ray_samples[i].second, r.ray_samples[i - 1].second);
    EXPECT_LT(r.ray_samples.back().second, 1e-100);
    EXPECT_EQ(r.L_inf_essential, 0.0);
}

TEST(Surjectivity, InconsistentUnimodular)
{
    OperatorSpec s(ExpPolyFunction::exponential(0.0, 1.0), AffineSymbol(1.0, 1.0), 0);
    EXPECT_THROW(surjectivity(s, 2.0), InconsistentSpec);
    // the classifier does not throw: the spec is simply unbounded
    EXPECT_EQ(classify_WCD(s, 2.0, 2.0).bounded, Verdict::No);
}

TEST(UnimodularConstancy, RandomKernelForms)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 5; ++i) {
        Complex a = std::polar(1.0, uniform(rng, 0, 2 * kPi));
        Complex b{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
        Complex c{uniform(rng, 0.5, 2), uniform(rng, -1, 1)};
        OperatorSpec s(ExpPolyFunction({c}, {0.0, -a * std::conj(b), 0.0}), AffineSymbol(a, b), 0);
        EXPECT_LT(L_relative_spread(s, 10000), 1e-10);
        auto r = surjectivity(s, 2.0);
        EXPECT_NEAR(r.L_constant, std::abs(c) * std::exp(0.5 * std::norm(b)), 1e-12 * r.L_constant);
        EXPECT_NEAR(L_value(s, Complex{0.3, 0.2}).value, r.L_constant, 1e-10 * r.L_constant);
    }
}

TEST(Region, IdentityCoversWindow)
{
    Window w{4.0, 64, 64};
    auto reg = omega_region(identity_spec(), 0.5, w);
    EXPECT_FALSE(reg.empty);
    EXPECT_EQ(reg.nodes.size(), 64u * 64u);
    EXPECT_NEAR(reg.area(), kPi * 16.0, 1e-9);
}

TEST(Region, HalfDilationDisk)
{
    Window w{3.0, 512, 512};
    auto reg = omega_region(half(0), 0.5, w);
    const double radius = std::sqrt(8.0 * std::log(2.0) / 3.0);
    EXPECT_NEAR(radius, 1.359, 1e-3);
    EXPECT_NEAR(reg.max_radius(), radius, w.radius / w.radial);
    EXPECT_NEAR(reg.area(), kPi * radius * radius, 2.0 * kPi * radius * w.radius / w.radial);
    for (const auto& n : reg.nodes)
        EXPECT_GT(L_value(half(0), n.z).value, 0.5);
    auto g = g_region(half(0), 0.5, w);
    EXPECT_NEAR(g.max_radius(), radius / 2.0, w.radius / w.radial);
    EXPECT_NEAR(g.area(), reg.area() / 4.0, 1e-12);
}

TEST(Region, EmptyAboveSup)
{
    auto reg = omega_region(half(0), 1.5, Window{4.0, 64, 64});
    EXPECT_TRUE(reg.empty);
    auto probe = sampling_probe(reg, 2.0, 1, {TaylorFunction::monomial(1)});
    EXPECT_EQ(probe.delta_hat, 0.0);
}

TEST(SamplingProbe, WholePlaneSamples)
{
    auto reg = omega_region(identity_spec(), 0.5, Window{14.0, 512, 512});
    std::vector<TaylorFunction> tests;
    for (int k = 1; k <= 40; ++k)
        tests.push_back(TaylorFunction::monomial(k));
    auto res = sampling_probe(reg, 2.0, 0, tests);
    EXPECT_GE(res.delta_hat, 0.9);
    // restricted quantity over the plane without the normalizing constant: sqrt(pi)
    EXPECT_NEAR(res.delta_hat, std::sqrt(kPi), 1e-4);
    auto res1 = sampling_probe(reg, 2.0, 1, tests);
    EXPECT_GE(res1.delta_hat, 0.9);
}

TEST(SamplingProbe, CompactSymbolRefutesSampling)
{
    std::vector<double> deltas;
    for (int kmax : {5, 10, 20, 40}) {
        auto reg = g_region(half(1), 0.05, Window{6.0, 256, 256});
        std::vector<TaylorFunction> tests;
        for (int k = 1; k <= kmax; ++k)
            tests.push_back(TaylorFunction::monomial(k));
        deltas.push_back(sampling_probe(reg, 2.0, 1, tests).delta_hat);
    }
    for (std::size_t i = 1; i < deltas.size(); ++i)
        EXPECT_LT(deltas[i], deltas[i - 1]);
    EXPECT_LT(deltas.back(), 1e-6);
}

TEST(SamplingProbe, RejectsPreconditionViolations)
{
    auto reg = omega_region(identity_spec(), 0.5, Window{4.0, 32, 32});
    std::vector<TaylorFunction> tests{TaylorFunction::monomial(2), TaylorFunction(poly::Coeffs{0.0, 1.0, 1.0})};
    try {
        sampling_probe(reg, 2.0, 2, tests);
        FAIL() << "expected rejection";
    } catch (const SamplingPrecondition& e) {
        EXPECT_EQ(e.index, 1u);
    }
}

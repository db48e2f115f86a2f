#include <fockops/corpus.hpp>
#include <fockops/oracle.hpp>

#include <gtest/gtest.h>

using namespace fockops;

namespace {
OracleConfig coarse_cfg() { return {}; }
} // namespace

TEST(Oracle, ConstantNormalized)
{
    auto r = brute_force_norm(ExpPolyFunction::constant(1.0), FockTypeParams::classical(2.0));
    EXPECT_FALSE(r.divergent);
    EXPECT_NEAR(r.value, 1.0, 1e-10);
    EXPECT_GT(r.evaluations, 0);
}

TEST(Oracle, CubeAgainstGammaClosedForm)
{
    auto r = brute_force_norm(ExpPolyFunction::monomial(3), FockTypeParams::classical(2.0));
    EXPECT_NEAR(r.value, std::sqrt(6.0), 1e-8);
    EXPECT_NEAR(r.log_value, log_monomial_norm_classical(3, 2.0), 1e-10);
}

TEST(Oracle, FockTypeTwoSchemesAgree)
{
    auto params = FockTypeParams::fock_type(1.0, 1.0);
    auto f = ExpPolyFunction::monomial(10);
    auto o = brute_force_norm(f, params);
    auto n = fock_norm(f, params);
    EXPECT_LE(std::abs(o.value - n.value), o.error_estimate + n.tail_bound + 1e-12 * o.value);
    EXPECT_NEAR(o.log_value, log_monomial_norm_fock_type(10, 1.0, 1.0), 1e-10);
}

TEST(Oracle, RefinementWithinErrorEstimate)
{
    auto f = ExpPolyFunction({1.0, Complex{0.5, 0.5}, 0.2}, {0.0, Complex{0.3, -0.1}, 0.0});
    auto params = FockTypeParams::classical(1.0);
    auto coarse = brute_force_norm(f, params);
    OracleConfig fine;
    fine.angular = 2 * coarse_cfg().angular;
    fine.rel_tol = coarse_cfg().rel_tol / 16.0;
    auto refined = brute_force_norm(f, params, fine);
    EXPECT_LE(std::abs(refined.value - coarse.value), coarse.error_estimate);
}

TEST(Oracle, Deterministic)
{
    auto f = function_corpus(12).back().f;
    auto a = brute_force_norm(f, FockTypeParams::classical(2.0));
    auto b = brute_force_norm(f, FockTypeParams::classical(2.0));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_estimate, b.error_estimate);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Oracle, DivergenceVerdicts)
{
    EXPECT_TRUE(brute_force_norm(ExpPolyFunction::exponential(0.0, 0.0, 1.0), FockTypeParams::classical(2.0)).divergent);
    EXPECT_THROW(brute_force_norm(ExpPolyFunction::monomial(1), FockTypeParams::classical(kInf)),
                 std::invalid_argument);
    OperatorSpec kernel(ExpPolyFunction::exponential(0.0, -1.0), AffineSymbol(1.0, 1.0), 0);
    EXPECT_TRUE(brute_force_Lq_integral(kernel, 1.0).divergent);
}

TEST(Oracle, GaussianLqIntegral)
{
    OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(0.5, 0.0), 0);
    auto r = brute_force_Lq_integral(s, 2.0);
    EXPECT_NEAR(r.value, 4.0 * kPi / 3.0, 1e-6);
    EXPECT_NEAR(r.value, 2.0 * kPi / (2.0 * (1.0 - 0.25)), 1e-10);
}

TEST(Oracle, RadialGammaReduction)
{
    // L^2 = (r/2)^2 e^{-3 r^2 / 4}: 2 pi \int r^3 / 4 e^{-3r^2/4} dr = pi / 4 * (4/3)^2
    OperatorSpec s(ExpPolyFunction::constant(1.0), AffineSymbol(0.5, 0.0), 1);
    auto r = brute_force_Lq_integral(s, 2.0);
    const double exact = kPi / 4.0 * (16.0 / 9.0);
    EXPECT_NEAR(r.value, exact, 1e-6);
    EXPECT_NEAR(exact, 4.0 * kPi / 9.0, 1e-15);
}

TEST(Corpus, DeterministicAndNested)
{
    auto a = function_corpus(30), b = function_corpus(60);
    ASSERT_EQ(a.size(), 30u);
    ASSERT_EQ(b.size(), 60u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        EXPECT_EQ(a[i].f, b[i].f);
    }
    for (const auto& e : b) {
        EXPECT_EQ(e.f.expo()[2], Complex{});
        EXPECT_LE(std::abs(e.f.expo()[1]), 0.6 + 1e-15);
        EXPECT_LE(poly::degree(e.f.poly()), 12);
    }
}

TEST(Oracle, AgreesWithNormsOnCorpusSample)
{
    auto corpus = function_corpus(30);
    for (std::size_t i = 0; i < corpus.size(); i += 5) {
        for (auto params : {FockTypeParams::classical(2.0), FockTypeParams::fock_type(1.0, 1.0)}) {
            auto o = brute_force_norm(corpus[i].f, params);
            auto n = fock_norm(corpus[i].f, params);
            ASSERT_FALSE(o.divergent);
            EXPECT_LE(std::abs(o.value - n.value), std::max(1e-8 * o.value, o.error_estimate + n.tail_bound))
                << corpus[i].id;
        }
    }
}

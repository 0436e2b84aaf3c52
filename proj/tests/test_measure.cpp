#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "measure.hpp"
#include "oracle.hpp"

using namespace zxh;

TEST(Measure, ResidueExamples) {
    EXPECT_EQ(Context(5).residue(7), 2);
    EXPECT_EQ(Context(4).residue(3), -1);
    EXPECT_EQ(Context(2).residue(-1), 1);
}

TEST(Measure, NegateExamples) {
    EXPECT_EQ(Context(5).negate(2), -2);
    EXPECT_EQ(Context(4).negate(2), -1);
    EXPECT_EQ(Context(2).negate(0), 1);
}

TEST(Measure, IntegrateExamples) {
    EXPECT_NEAR(std::abs(Context(4).integrate([](int64_t) { return cd(1.0); }) - cd(2.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Context(3, 1.0).integrate([](int64_t) { return cd(1.0); }) - cd(3.0)), 0.0, 1e-12);
    Context c3(3);
    EXPECT_NEAR(std::abs(c3.integrate([&](int64_t x) { return c3.omega_pow(x); })), 0.0, 1e-12);
}

TEST(Measure, ExpIntegralExamples) {
    EXPECT_NEAR(std::abs(Context(5).exp_integral(0) - cd(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Context(5).exp_integral(3)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Context(4, 1.0).exp_integral(4) - cd(4.0)), 0.0, 1e-12);
}

TEST(Measure, PhaseExamples) {
    EXPECT_NEAR(std::abs(Context(3).omega_pow(3) - cd(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Context(2).tau_pow(1) - cd(0.0, 1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(Context(3).tau_pow(6) - cd(1.0)), 0.0, 1e-12);
}

TEST(Measure, ContextInvariants) {
    for (int64_t d = 2; d <= 12; ++d) {
        Context c(d);
        EXPECT_LE(c.lo(), 0);
        EXPECT_GT(c.hi(), 0);
        EXPECT_EQ(c.hi() - c.lo() + 1, d);
        EXPECT_EQ(c.sigma(), d % 2 == 0 ? 1 : 0);
        EXPECT_NEAR(std::abs(c.tau() * c.tau() - c.omega()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(c.tau_pow(2 * d) - cd(1.0)), 0.0, 1e-12);
        EXPECT_NEAR(c.total_measure(), std::sqrt(static_cast<double>(d)), 1e-12);
        EXPECT_NEAR(c.nu() * c.nu(), 1.0 / std::sqrt(static_cast<double>(d)), 1e-12);
        EXPECT_TRUE(c.well_tempered());
        EXPECT_NEAR(c.dnu4(), 1.0, 1e-12);
    }
    EXPECT_FALSE(Context(3, 1.0).well_tempered());
}

TEST(Measure, ResidueProperties) {
    for (int64_t d = 2; d <= 9; ++d) {
        Context c(d);
        for (int64_t t = -3 * d; t <= 3 * d; ++t) {
            EXPECT_EQ(c.residue(t + d), c.residue(t));
            EXPECT_EQ(c.residue(t), oracle::reduce(t, d));
            EXPECT_TRUE(c.contains(c.residue(t)));
        }
        for (int64_t x = c.lo(); x <= c.hi(); ++x) {
            EXPECT_EQ(c.residue(x), x);
            EXPECT_EQ(c.negate(c.negate(x)), x);
        }
    }
}

TEST(Measure, IntegrateIsLinear) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int64_t d = 2; d <= 7; ++d) {
        Context c(d, 0.8);
        std::vector<cd> f(d), h(d);
        for (auto& v : f) v = {g(rng), g(rng)};
        for (auto& v : h) v = {g(rng), g(rng)};
        cd a(g(rng), g(rng)), b(g(rng), g(rng));
        auto F = [&](int64_t x) { return f[c.index(x)]; };
        auto H = [&](int64_t x) { return h[c.index(x)]; };
        cd lhs = c.integrate([&](int64_t x) { return a * F(x) + b * H(x); });
        EXPECT_NEAR(std::abs(lhs - (a * c.integrate(F) + b * c.integrate(H))), 0.0, 1e-12);
    }
}

TEST(Measure, ExpIntegralMatchesBruteForce) {
    for (int64_t d = 2; d <= 9; ++d)
        for (double nu : {1.0, 0.7, Context::default_nu(d)}) {
            Context c(d, nu);
            for (int64_t e = -2 * d; e <= 2 * d; ++e) {
                cd brute = 0.0;
                for (int64_t k = c.lo(); k <= c.hi(); ++k) brute += nu * nu * nu * nu * oracle::omega(e * k, d);
                EXPECT_NEAR(std::abs(c.exp_integral(e) - brute), 0.0, 1e-12);
            }
        }
}

TEST(Measure, TauSquaresToOmega) {
    for (int64_t d = 2; d <= 9; ++d) {
        Context c(d);
        for (int64_t e = -2 * d; e <= 2 * d; ++e) {
            EXPECT_NEAR(std::abs(c.tau_pow(2 * e) - c.omega_pow(e)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(c.tau_pow(e) - oracle::tau(e, d)), 0.0, 1e-12);
        }
    }
}

TEST(Measure, LargeExponentsStayExact) {
    Context c(7);
    EXPECT_NEAR(std::abs(c.omega_pow(int64_t{7} * 1000000007) - cd(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c.tau_pow(int64_t{14} * 999999937) - cd(1.0)), 0.0, 1e-12);
}

TEST(Measure, CheckedArithmetic) {
    EXPECT_THROW(checked_mul(int64_t{1} << 40, int64_t{1} << 40), Error);
    EXPECT_THROW(checked_add(INT64_MAX, 1), Error);
    EXPECT_THROW(checked_pow(3, 50), Error);
    EXPECT_EQ(checked_pow(3, 4), 81);
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_THROW(inverse_mod(2, 4), Error);
}

TEST(Measure, RejectsBadContexts) {
    EXPECT_THROW(Context(1), Error);
    EXPECT_THROW(Context(3, 0.0), Error);
    EXPECT_THROW(Context(3, -1.0), Error);
}

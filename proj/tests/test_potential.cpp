#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpdyn/acceptance.hpp"
#include "cpdyn/errors.hpp"
#include "cpdyn/potential.hpp"

using namespace cpdyn;

namespace {

SystemParams constant_alpha() {
    SystemParams p;
    p.units = Units::natural();
    p.k0 = 1.0;
    p.mu_A = Vec3(0.3, 0.4, std::sqrt(0.75));
    p.pol_B = StaticConstantB{1.0};
    return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

// frozen from an independent evaluation of the closed form at x = 1, tau = 1.5
TEST(Total, FrozenReferenceValue) {
    const auto b = potential_total(constant_alpha(), Vec3(0, 0, 1), 1.5);
    EXPECT_NEAR(b.total, -6.1543860711, 2e-9);
    EXPECT_NEAR(b.reduced.total, b.total, 1e-14);
    EXPECT_NEAR(b.energy_unit, 1.0, 1e-15);
}

TEST(Total, SumIsExact) {
    const auto sys = acceptance_detail::reference_system();
    for (double t : {1.2, 3.0, 17.0}) {
        const auto b = potential_total(sys, Vec3(0.2, -0.4, 0.9), t);
        EXPECT_EQ(b.total, b.resonant + b.cp_dispersion + b.dynamic);
        EXPECT_EQ(b.reduced.total, b.reduced.resonant + b.reduced.cp_dispersion + b.reduced.dynamic);
    }
}

TEST(Total, CausalityGate) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 R(0, 0.6, 0.8);
    for (double t : {0.0, 0.3, 0.999, 1.0}) {
        const auto b = potential_total(sys, R, t);
        EXPECT_EQ(b.resonant, 0.0);
        EXPECT_EQ(b.cp_dispersion, 0.0);
        EXPECT_EQ(b.dynamic, 0.0);
        EXPECT_EQ(b.total, 0.0);
        EXPECT_EQ(term_dynamic(sys, R, t), 0.0);
    }
}

TEST(Total, LightConeGuard) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 R(0, 0, 2);
    EXPECT_THROW(potential_total(sys, R, 2.0 * (1.0 + 5e-4)), LightConeError);
    EXPECT_THROW(potential_total(sys, R, 2.0 * (1.0 + 1e-3)), LightConeError);
    EXPECT_NO_THROW(potential_total(sys, R, 2.0 * (1.0 + 2e-3)));
    EvalOptions loose;
    loose.light_cone_eps = 1e-4;
    EXPECT_NO_THROW(potential_total(sys, R, 2.0 * (1.0 + 5e-4), loose));
}

TEST(Total, RejectsBadInput) {
    const auto sys = acceptance_detail::reference_system();
    EXPECT_THROW(potential_total(sys, Vec3::Zero(), 1.0), DomainError);
    EXPECT_THROW(potential_total(sys, Vec3::UnitX(), -1.0), DomainError);
}

TEST(Total, RotationInvariance) {
    const auto p = acceptance_detail::reference_system();
    const Vec3 R(0.3, -0.7, 1.1);
    const double t = 2.4;
    const auto a = potential_total(p, R, t);
    const Mat3 Q = Eigen::AngleAxisd(1.1, Vec3(-1, 2, 0.5).normalized()).toRotationMatrix();
    auto q = p;
    q.mu_A = Q * p.mu_A;
    const auto b = potential_total(q, Q * R, t);
    EXPECT_LT(rel(b.resonant, a.resonant), 1e-10);
    EXPECT_LT(rel(b.cp_dispersion, a.cp_dispersion), 1e-10);
    EXPECT_LT(rel(b.dynamic, a.dynamic), 1e-10);
}

TEST(Total, ReducedUnitInvariance) {
    auto p = acceptance_detail::reference_system();
    auto q = p;
    q.k0 = 2.0;
    q.mu_A = 0.5 * p.mu_A;
    const auto& tl = std::get<TwoLevelB>(p.pol_B);
    // keeps alpha(i u k0) k0^3 fixed
    q.pol_B = TwoLevelB{tl.mu_B / 2.0, 2.0 * tl.k_B};
    const Vec3 R(0.1, 0.9, -0.6);
    const double t = 2.2;
    const auto a = potential_total(p, R, t);
    const auto b = potential_total(q, R / 2.0, t / 2.0);
    EXPECT_LT(rel(b.reduced.resonant, a.reduced.resonant), 1e-9);
    EXPECT_LT(rel(b.reduced.cp_dispersion, a.reduced.cp_dispersion), 1e-9);
    EXPECT_LT(rel(b.reduced.dynamic, a.reduced.dynamic), 1e-9);
    EXPECT_NEAR(b.energy_unit, a.energy_unit * 0.25 * 8.0, 1e-15);
}

TEST(Static, LateTimeLimit) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 R(0, 0.6, 0.8);
    const double st = potential_static(sys, R);
    EXPECT_EQ(st, term_resonant(sys, R) + term_cp_dispersion(sys, R));
    EXPECT_LT(rel(potential_total(sys, R, 1.0 + 200.0).total, st), 0.02);
    EXPECT_LT(rel(potential_total(sys, R, 1.0 + 100.0).total, st), 0.05);
}

TEST(Continuity, SecondOrderDifferenceQuotients) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 n(0, 0.6, 0.8);
    const double r0 = 1.3, t0 = 2.9;
    auto in_R = [&](double r) { return potential_total(sys, n * r, t0).total; };
    auto in_t = [&](double t) { return potential_total(sys, n * r0, t).total; };
    auto ratio = [](auto f, double z, double h) {
        auto d = [&](double s) { return (f(z + s) - f(z - s)) / (2.0 * s); };
        return (d(h) - d(h / 2.0)) / (d(h / 2.0) - d(h / 4.0));
    };
    const double rR = ratio(in_R, r0, 0.02);
    const double rt = ratio(in_t, t0, 0.02);
    EXPECT_NEAR(rR, 4.0, 1.0);
    EXPECT_NEAR(rt, 4.0, 1.0);
}

TEST(Isotropic, OrientationAverage) {
    auto p = acceptance_detail::reference_system();
    const Vec3 R(0.2, -0.3, 1.4);
    const double t = 2.7;
    double sum = 0.0;
    int n = 0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                p.mu_A = Vec3(i, j, k).normalized();
                sum += potential_total(p, R, t).total;
                ++n;
            }
    ASSERT_EQ(n, 26);
    p.mu_A = Vec3::UnitZ();
    p.isotropic_A = true;
    const double iso = potential_total(p, R, t).total;
    EXPECT_LT(rel(sum / n, iso), 0.01);
}

TEST(Dynamic, IntegrandDecaysAtLightConeGapRate) {
    const ReducedSystem sys(acceptance_detail::reference_system());
    ReducedPoint pt;
    pt.x = 1.0;
    pt.tau = 1.5;
    pt.mu_hat_A = Vec3(0.3, 0.4, std::sqrt(0.75));
    for (double u : {40.0, 80.0}) {
        const auto f1 = reduced::dynamic_integrand(sys, pt, u);
        const auto f2 = reduced::dynamic_integrand(sys, pt, u + 2.0);
        // algebraic prefactors aside, the log-slope tends to -(tau - x)
        for (int c = 0; c < 2; ++c) {
            const double slope = std::log(std::abs(f2(c) / f1(c))) / 2.0;
            EXPECT_NEAR(slope, -(pt.tau - pt.x), 0.1) << u << " " << c;
        }
    }
}

TEST(Resonant, ZoneSlopes) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 n = Vec3(0, 0.6, 0.8);
    std::vector<double> xs, ys;
    for (double x : {1e-3, 2e-3, 4e-3}) {
        xs.push_back(x);
        ys.push_back(std::abs(term_resonant(sys, n * x)));
    }
    EXPECT_NEAR(acceptance_detail::loglog_slope(xs, ys), -6.0, 0.1);
}

TEST(CpDispersion, ZoneSlopes) {
    const auto sys = acceptance_detail::reference_system();
    const Vec3 n = Vec3(0, 0.6, 0.8);
    std::vector<double> xs, near, far;
    for (double x : {1e-3, 2e-3, 4e-3}) {
        xs.push_back(x);
        near.push_back(std::abs(term_cp_dispersion(sys, n * x)));
    }
    EXPECT_NEAR(acceptance_detail::loglog_slope(xs, near), -6.0, 0.1);
    xs.clear();
    for (double x : {200.0, 400.0, 800.0}) {
        xs.push_back(x);
        far.push_back(std::abs(term_cp_dispersion(sys, n * x)));
    }
    EXPECT_NEAR(acceptance_detail::loglog_slope(xs, far), -7.0, 0.1);
}

TEST(CpDispersion, DualRule) {
    const ReducedSystem sys(acceptance_detail::reference_system());
    EvalOptions o;
    o.tol = 1e-11;
    for (double x : {0.01, 1.0, 30.0}) {
        ReducedPoint pt;
        pt.x = x;
        pt.tau = 2.0 * x;
        const double a = reduced::cp_dispersion(sys, pt, o).value;
        const double b = reduced::cp_dispersion_de(sys, pt, o).value;
        EXPECT_LT(rel(a, b), 1e-8) << x;
    }
}

TEST(Conventions, DynamicNormalization) {
    auto p = acceptance_detail::reference_system();
    const Vec3 R(0, 0, 1);
    const double d = term_dynamic(p, R, 1.7);
    p.dynamic_norm = DynamicNormalization::as_printed;
    EXPECT_NEAR(term_dynamic(p, R, 1.7), 2.0 * d, 1e-14 * std::abs(d));
}

TEST(Conventions, ExcitedSignFlipsCp) {
    auto p = acceptance_detail::reference_system();
    const Vec3 R(0, 0, 1);
    const double cp = term_cp_dispersion(p, R);
    const double res = term_resonant(p, R);
    p.excited_sign = ExcitedSign::sign_flipped;
    EXPECT_NEAR(term_cp_dispersion(p, R), -cp, 1e-13 * std::abs(cp));
    EXPECT_EQ(term_resonant(p, R), res);
}

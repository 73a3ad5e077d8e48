#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpdyn/acceptance.hpp"
#include "cpdyn/params.hpp"
#include "cpdyn/potential.hpp"
#include "cpdyn/quad.hpp"

using namespace cpdyn;
using std::numbers::pi;

TEST(Semiinf, Exponential) {
    const auto r = integrate_semiinf([](double u) { return std::exp(-u); }, 1.0);
    EXPECT_NEAR(r.value, 1.0, 1e-10);
    EXPECT_GE(r.err_est, 0.0);
    EXPECT_GT(r.n_evals, 0u);
}

TEST(Semiinf, ZeroIntegrand) {
    const auto r = integrate_semiinf([](double) { return 0.0; }, 1.0);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.err_est, 0.0);
}

TEST(Semiinf, BadHintThrows) {
    auto f = [](double u) { return std::exp(-u); };
    EXPECT_THROW(integrate_semiinf(f, 0.0), DomainError);
    EXPECT_THROW(integrate_semiinf(f, -1.0), DomainError);
}

TEST(Semiinf, DualRuleAgreement) {
    for (double lam : {0.05, 1.0, 20.0}) {
        auto f = [lam](double u) { return std::exp(-lam * u) * u / (1.0 + u * u); };
        QuadOptions o;
        o.rel_tol = 1e-11;
        const auto a = integrate_semiinf(f, lam, o);
        const auto b = integrate_semiinf_de(f, lam, o);
        EXPECT_NEAR(a.value, b.value, 1e-8 * std::abs(a.value)) << lam;
    }
}

TEST(Semiinf, SlowDecayRejected) {
    EXPECT_THROW(integrate_semiinf([](double u) { return 1.0 / (1.0 + u); }, 1.0), AccuracyError);
}

TEST(Interval, Examples) {
    EXPECT_NEAR(integrate_interval([](double u) { return std::sin(u); }, 0.0, pi).value, 2.0, 1e-10);
    EXPECT_NEAR(integrate_interval([](double) { return 1.0; }, 0.0, 1.0).value, 1.0, 1e-15);
    EXPECT_THROW(integrate_interval([](double) { return 1.0; }, 1.0, 1.0), DomainError);
}

TEST(Interval, DualRuleOscillatory) {
    auto f = [](double u) { return std::sin(40.0 * u) / (1.0 + u); };
    QuadOptions o;
    o.rel_tol = 1e-12;
    const auto a = integrate_interval(f, 0.0, 1.0, o);
    const auto b = integrate_interval_de(f, 0.0, 1.0, o);
    EXPECT_NEAR(a.value, b.value, 1e-8);
}

TEST(Interval, SubdivisionLimitCarriesBestEstimate) {
    QuadOptions o;
    o.rel_tol = 1e-15;
    o.max_subdivisions = 3;
    try {
        integrate_interval([](double u) { return std::sin(200.0 * u); }, 0.0, 1.0, o);
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError<double>& e) {
        EXPECT_GT(e.best().n_evals, 0u);
        EXPECT_GT(e.best().err_est, 0.0);
    }
}

TEST(Interval, ComplexAndMatrixValued) {
    const auto c = integrate_interval([](double u) { return std::exp(cplx(0.0, u)); }, 0.0, pi);
    EXPECT_NEAR(c.value.real(), 0.0, 1e-12);
    EXPECT_NEAR(c.value.imag(), 2.0, 1e-12);
    const auto m = integrate_interval([](double u) { return Mat3(Mat3::Identity() * u); }, 0.0, 2.0);
    EXPECT_TRUE(m.value.isApprox(2.0 * Mat3::Identity(), 1e-14));
}

TEST(Interval, Linearity) {
    auto f = [](double u) { return std::exp(-u) * std::cos(3.0 * u); };
    auto g = [](double u) { return std::sqrt(u) * std::sin(u); };
    const double a = 2.5, b = -0.7;
    QuadOptions o;
    o.rel_tol = 1e-6;
    const auto rf = integrate_interval(f, 0.0, 4.0, o);
    const auto rg = integrate_interval(g, 0.0, 4.0, o);
    const auto rh = integrate_interval([&](double u) { return a * f(u) + b * g(u); }, 0.0, 4.0, o);
    const double bound = 2.0 * (rh.err_est + std::abs(a) * rf.err_est + std::abs(b) * rg.err_est);
    EXPECT_LE(std::abs(rh.value - (a * rf.value + b * rg.value)), bound + 1e-15);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    const auto& gl = gauss_legendre(8);
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        s += gl.w[i] * std::pow(gl.x[i], 14);
        w += gl.w[i];
    }
    EXPECT_NEAR(w, 2.0, 1e-14);
    EXPECT_NEAR(s, 2.0 / 15.0, 1e-14);
}

TEST(CompositeNodes, PrincipalValueSymmetric) {
    const auto n = composite_nodes(0.0, 3.0, 0.5, 16, {}, {1.0}, 0.25);
    double pv = 0.0, len = 0.0;
    for (std::size_t i = 0; i < n.x.size(); ++i) {
        pv += n.w[i] / (n.x[i] - 1.0);
        len += n.w[i];
    }
    EXPECT_NEAR(len, 3.0, 1e-13);
    EXPECT_NEAR(pv, std::log(2.0), 1e-10);
}

TEST(Extrapolation, RecoversPolynomial) {
    const std::vector<double> eta{0.4, 0.2, 0.1};
    std::vector<double> v;
    for (double e : eta) v.push_back(1.5 - 2.0 * e + 0.7 * e * e);
    const auto ex = extrapolate_to_zero(eta, v);
    EXPECT_NEAR(ex.value, 1.5, 1e-13);
}

TEST(OscCutoff, Dirichlet) {
    const auto r = integrate_osc_cutoff([](double k) { return k == 0.0 ? 1.0 : std::sin(k) / k; }, 100.0,
                                        Regulator::exp_damping);
    EXPECT_NEAR(r.value, pi / 2.0, 1e-4);
}

// the quadratic fit leaves eta1 eta2 eta3 = 8 / k_max^3 of 1/(1 + eta)
TEST(OscCutoff, NoOpOnDecayingIntegrand) {
    auto f = [](double k) { return std::exp(-k); };
    const auto plain = integrate_semiinf(f, 1.0);
    for (auto reg : {Regulator::exp_damping, Regulator::cutoff_averaging}) {
        const auto r = integrate_osc_cutoff(f, 2000.0, reg);
        EXPECT_NEAR(r.value, plain.value, 1e-8);
    }
}

TEST(OscCutoff, RegulatorsAgreeOnDampedOscillation) {
    auto f = [](double k) { return std::cos(3.0 * k) / (1.0 + k * k); };
    OscOptions o;
    o.period = 2.0 * pi / 3.0;
    o.rel_tol = 1e-4;
    const auto a = integrate_osc_cutoff(f, 200.0, Regulator::exp_damping, o);
    const auto b = integrate_osc_cutoff(f, 200.0, Regulator::cutoff_averaging, o);
    EXPECT_LE(std::abs(a.value - b.value), a.err_est + b.err_est);
    EXPECT_NEAR(a.value, 0.5 * pi * std::exp(-3.0), 1e-4);
}

TEST(OscCutoff, Preconditions) {
    auto f = [](double k) { return std::exp(-k); };
    EXPECT_THROW(integrate_osc_cutoff(f, 0.0, Regulator::exp_damping), DomainError);
    OscOptions o;
    o.period = 0.0;
    EXPECT_THROW(integrate_osc_cutoff(f, 10.0, Regulator::exp_damping, o), DomainError);
}

TEST(Honesty, AnalyticLibrary) {
    const auto cases = acceptance_detail::quadrature_honesty_library();
    ASSERT_EQ(cases.size(), 10u);
    int honest = 0;
    for (const auto& c : cases) {
        honest += c.honest ? 1 : 0;
        EXPECT_GE(c.err_est, 0.0) << c.name;
    }
    EXPECT_GE(honest, 9);
}

// cost of the dynamic-term u-integral as the light cone is approached
TEST(LightConeCost, GrowsNoFasterThanInverseGap) {
    SystemParams params;
    params.units = Units::natural();
    params.pol_B = StaticConstantB{1.0};
    const ReducedSystem sys(params);
    EvalOptions opts;
    opts.light_cone_eps = 1e-4;
    std::vector<double> evals;
    for (double gap : {1.0, 0.1, 0.01}) {
        ReducedPoint p;
        p.x = 1.0;
        p.tau = 1.0 + gap;
        p.orientation = Vec3::UnitZ();
        p.mu_hat_A = Vec3(0.6, 0.0, 0.8);
        evals.push_back(static_cast<double>(reduced::dynamic(sys, p, opts).n_evals));
    }
    EXPECT_LE(evals[1], 10.0 * evals[0] * 1.5);
    EXPECT_LE(evals[2], 100.0 * evals[0] * 1.5);
    EXPECT_LE(evals[2], 10.0 * evals[1] * 1.5);
}

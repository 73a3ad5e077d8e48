#include <gtest/gtest.h>

#include <cmath>

#include "cpdyn/errors.hpp"
#include "cpdyn/params.hpp"

using namespace cpdyn;

namespace {

SystemParams two_level(double mu_B = 1.0, double k_B = 2.0) {
    SystemParams p;
    p.units = Units::natural();
    p.pol_B = TwoLevelB{mu_B, k_B};
    return p;
}

}  // namespace

TEST(Reduce, Definition) {
    SystemParams p;
    p.k0 = 1.0;
    const double c = p.units.c;
    const auto r = reduce(p, Vec3(0, 0, 2), 3.0 / c);
    EXPECT_DOUBLE_EQ(r.x, 2.0);
    EXPECT_NEAR(r.tau, 3.0, 1e-15);
    EXPECT_EQ(r.orientation, Vec3::UnitZ());

    p.k0 = 2.0;
    const auto r2 = reduce(p, Vec3(0, 0, 1), 0.0);
    EXPECT_DOUBLE_EQ(r2.x, 2.0);
    EXPECT_DOUBLE_EQ(r2.tau, 0.0);
}

TEST(Reduce, RescaleIdentity) {
    SystemParams p;
    p.k0 = 3.0e4;
    const Vec3 R(1e-4, -2e-4, 5e-5);
    const double t = 7e-15;
    const auto a = reduce(p, R, t);
    SystemParams q = p;
    q.k0 = 2.0 * p.k0;
    const auto b = reduce(q, R / 2.0, t / 2.0);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.tau, b.tau);
    EXPECT_EQ(a.orientation, b.orientation);
}

TEST(Reduce, ZeroSeparationThrows) {
    SystemParams p;
    EXPECT_THROW(reduce(p, Vec3::Zero(), 1.0), DomainError);
    EXPECT_THROW(reduce(p, Vec3::UnitX(), -1.0), DomainError);
}

TEST(Reduce, UnitVectorsNormalized) {
    SystemParams p;
    p.mu_A = Vec3(3, 4, 12);
    const auto r = reduce(p, Vec3(1, 2, 2), 0.0);
    EXPECT_NEAR(r.orientation.norm(), 1.0, 1e-12);
    EXPECT_NEAR(r.mu_hat_A.norm(), 1.0, 1e-12);
}

TEST(EnergyScale, Examples) {
    SystemParams p;
    p.mu_A = Vec3(0, 0, 1);
    p.k0 = 1.0;
    EXPECT_DOUBLE_EQ(energy_scale(p), 1.0);
    p.mu_A = Vec3(0, 2, 0);
    EXPECT_DOUBLE_EQ(energy_scale(p), 4.0);
    p.mu_A = Vec3(1, 0, 0);
    p.k0 = 2.0;
    EXPECT_DOUBLE_EQ(energy_scale(p), 8.0);
}

TEST(AlphaB, TwoLevelImaginaryAxis) {
    const auto p = two_level(1.5, 2.0);
    EXPECT_DOUBLE_EQ(alpha_B_imag(p, 0.0), 2.0 * 1.5 * 1.5 / 2.0);
    double prev = alpha_B_imag(p, 0.0);
    for (double u = 0.25; u < 50.0; u *= 1.7) {
        const double a = alpha_B_imag(p, u);
        EXPECT_GT(a, 0.0);
        EXPECT_LT(a, prev);
        prev = a;
    }
    const double u = 1e3 * 2.0;
    EXPECT_NEAR(alpha_B_imag(p, u) * u * u / (2.0 * 2.0 * 1.5 * 1.5), 1.0, 1e-4);
}

TEST(AlphaB, TwoLevelRealAxis) {
    const auto p = two_level(1.0, 2.0);
    EXPECT_DOUBLE_EQ(alpha_B_real(p, 1.0), 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(alpha_B_real(p, 0.0), alpha_B_imag(p, 0.0));
    EXPECT_THROW(alpha_B_real(p, 2.0), ResonanceError);
}

TEST(AlphaB, GaussianUnitsCarryHbarC) {
    SystemParams p;
    p.pol_B = TwoLevelB{2e-18, 1e5};
    EXPECT_DOUBLE_EQ(alpha_B_imag(p, 0.0), 2.0 * 2e-18 * 2e-18 / (p.units.hbar_c() * 1e5));
}

TEST(AlphaB, TabulatedInterpolationAndTail) {
    SystemParams p;
    p.units = Units::natural();
    TabulatedB t;
    t.u = {0.0, 1.0, 2.0};
    t.alpha = {4.0, 2.0, 1.0};
    p.pol_B = t;
    EXPECT_DOUBLE_EQ(alpha_B_imag(p, 0.5), 3.0);
    EXPECT_THROW(alpha_B_imag(p, 3.0), ExtrapolationError);
    EXPECT_THROW(alpha_B_real(p, 1.0), DomainError);

    t.tail = TailRule::inverse_square;
    t.interpolation = Interpolation::log_linear;
    p.pol_B = t;
    EXPECT_DOUBLE_EQ(alpha_B_imag(p, 4.0), 0.25);
    EXPECT_NEAR(alpha_B_imag(p, 1.5), std::sqrt(2.0), 1e-14);
}

TEST(AlphaB, TabulatedValidation) {
    SystemParams p;
    TabulatedB t;
    t.u = {0.0, 1.0, 1.0};
    t.alpha = {1.0, 1.0, 1.0};
    p.pol_B = t;
    EXPECT_THROW(validate(p), DomainError);
}

TEST(AlphaA, ExcitedPolarizability) {
    SystemParams p;
    p.units = Units::natural();
    p.k0 = 2.0;
    p.mu_A = Vec3(1.0, 2.0, -0.5);
    const Mat3 a0 = alpha_A_excited(p, 0.0);
    EXPECT_TRUE(a0.isApprox(2.0 * p.mu_A * p.mu_A.transpose() / 2.0, 1e-15));

    const double u = 0.7;
    const Mat3 a = alpha_A_excited(p, u);
    EXPECT_TRUE(a.isApprox(a.transpose()));
    Eigen::JacobiSVD<Mat3> svd(a);
    EXPECT_LT(svd.singularValues()(1), 1e-14 * svd.singularValues()(0));
    EXPECT_NEAR(a.trace(), 2.0 * p.k0 * p.mu_A.squaredNorm() / (p.k0 * p.k0 + u * u), 1e-13);

    p.excited_sign = ExcitedSign::sign_flipped;
    EXPECT_TRUE(alpha_A_excited(p, u).isApprox(-a, 1e-15));
}

TEST(Validate, ResonantPairRejected) {
    auto p = two_level(1.0, 1.0);
    try {
        validate(p);
        FAIL() << "expected ResonanceError";
    } catch (const ResonanceError& e) {
        EXPECT_NE(std::string(e.what()).find("k_B != k0"), std::string::npos);
    }
    p.mu_A = Vec3::Zero();
    p.pol_B = StaticConstantB{1.0};
    EXPECT_THROW(validate(p), DomainError);
}

TEST(ValidityCheck, GammaThreshold) {
    SystemParams p;
    EXPECT_TRUE(validity_check(p, 1.0).empty());
    p.gamma = 1.0;
    EXPECT_EQ(validity_check(p, 1.0).size(), 1u);
    EXPECT_TRUE(validity_check(p, 0.01).empty());
}

TEST(ReducedSystem, ResonantAlphaChoice) {
    auto p = two_level(1.0, 2.0);
    const ReducedSystem a(p);
    EXPECT_DOUBLE_EQ(a.alpha_resonant(), 4.0 / 3.0);
    p.resonant_alpha_choice = ResonantAlpha::alpha_at_iu_equals_k0ImAxis;
    const ReducedSystem b(p);
    EXPECT_DOUBLE_EQ(b.alpha_resonant(), 4.0 / 5.0);
    EXPECT_DOUBLE_EQ(b.alpha_at_k0(), 4.0 / 3.0);
}

TEST(ReducedSystem, ReducedPolarizabilityIsScaleFree) {
    auto p = two_level(1.0, 2.0);
    auto q = two_level(0.5, 4.0);
    q.k0 = 2.0;
    const ReducedSystem a(p), b(q);
    for (double u : {0.0, 0.3, 1.0, 7.0}) EXPECT_NEAR(a.alpha_imag(u), b.alpha_imag(u), 1e-15);
    EXPECT_NEAR(a.alpha_real(1.0), b.alpha_real(1.0), 1e-15);
}

TEST(ReducedSystem, DipoleWeight) {
    SystemParams p;
    p.mu_A = Vec3(0, 3, 4);
    const ReducedSystem s(p);
    const auto pt = reduce(p, Vec3::UnitX(), 0.0);
    EXPECT_NEAR(s.dipole_weight(pt).trace(), 1.0, 1e-15);
    p.isotropic_A = true;
    const ReducedSystem iso(p);
    EXPECT_TRUE(iso.dipole_weight(pt).isApprox(Mat3::Identity() / 3.0));
}

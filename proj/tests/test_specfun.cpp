#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpdyn/quad.hpp"
#include "cpdyn/specfun.hpp"

using namespace cpdyn;
using std::numbers::pi;

TEST(Ft, HalfPeriod) {
    const cplx v = f_t(1.0, pi);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 2.0, 1e-15);
}

TEST(Ft, MatchesDirectIntegral) {
    for (double x : {-3.0, -0.2, 1e-7, 0.5, 4.0}) {
        for (double t : {0.0, 1e-3, 0.7, 5.0}) {
            const double z = x * t;
            const cplx exact = z == 0.0 ? cplx(t, 0.0)
                                        : t * cplx(std::sin(z) / z, 2.0 * std::pow(std::sin(z / 2.0), 2) / z);
            const cplx v = f_t(x, t);
            EXPECT_NEAR(std::abs(v - exact), 0.0, 1e-13 * std::max(1.0, t)) << x << " " << t;
        }
    }
}

TEST(Ft, SeriesBranchContinuity) {
    const double t = 2.0;
    for (double z : {0.99e-4, 1.01e-4}) {
        const double x = z / t;
        const cplx exact = t * cplx(std::sin(z) / z, 2.0 * std::pow(std::sin(z / 2.0), 2) / z);
        EXPECT_NEAR(std::abs(f_t(x, t) - exact), 0.0, 1e-15);
    }
}

TEST(Theta, ZeroAtOrigin) {
    EXPECT_EQ(theta(0.0), 0);
    EXPECT_EQ(theta(1e-300), 1);
    EXPECT_EQ(theta(-1e-300), 0);
}

TEST(Sinc, SeriesAndDirect) {
    EXPECT_DOUBLE_EQ(sinc(0.0), 1.0);
    for (double x : {1e-9, 1e-3, 0.099, 0.101, 2.0, 30.0}) EXPECT_NEAR(sinc(x), std::sin(x) / x, 1e-15);
}

TEST(J1OverX, AgreesWithBessel) {
    EXPECT_NEAR(j1_over_x(0.0), 1.0 / 3.0, 1e-16);
    for (double x : {1e-4, 0.05, 0.0999, 0.1001, 1.0, 7.5, 40.0})
        EXPECT_NEAR(j1_over_x(x), std::sph_bessel(1, x) / x, 1e-13) << x;
}

// (1/4pi) int dOmega (delta - k k) exp(i x k.n) by product Gauss-Legendre in cos(theta) and phi
TEST(AngularKernel, MatchesSphericalQuadrature) {
    const auto& gl = gauss_legendre(48);
    for (double x : {0.0, 0.3, 2.0, 9.0}) {
        const Vec3 n = Vec3(0.2, -0.6, 0.77).normalized();
        CMat3 acc = CMat3::Zero();
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double ct = gl.x[i], st = std::sqrt(1.0 - ct * ct);
            for (std::size_t j = 0; j < gl.x.size(); ++j) {
                const double phi = pi * (gl.x[j] + 1.0);
                const Vec3 k(st * std::cos(phi), st * std::sin(phi), ct);
                const Mat3 proj = Mat3::Identity() - k * k.transpose();
                acc += gl.w[i] * pi * gl.w[j] * proj.cast<cplx>() * std::exp(cplx(0.0, x * k.dot(n)));
            }
        }
        acc /= 4.0 * pi;
        const Mat3 K = transverse_angular_kernel(x, n);
        EXPECT_LT(acc.imag().norm(), 1e-12) << x;
        EXPECT_LT((acc.real() - K).norm(), 1e-12) << x;
    }
}

TEST(AngularKernel, ChannelsAtOrigin) {
    const auto c = angular_channels(0.0);
    EXPECT_NEAR(c.transverse, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.longitudinal, 2.0 / 3.0, 1e-15);
}

TEST(Ft, ConjugateSymmetry) {
    for (double x : {0.3, 2.0, 1e-6})
        for (double t : {0.1, 3.0}) EXPECT_EQ(f_t(-x, t), std::conj(f_t(x, t)));
}

TEST(AngularKernel, AxialComponents) {
    for (double x : {0.1, 1.0, 10.0, 50.0}) {
        const Mat3 K = transverse_angular_kernel(x, Vec3::UnitZ());
        const double s = std::sin(x), c = std::cos(x);
        EXPECT_NEAR(K(2, 2), 2.0 * (s / (x * x * x) - c / (x * x)), 1e-8) << x;
        EXPECT_NEAR(K(0, 0), s / x - s / (x * x * x) + c / (x * x), 1e-8) << x;
        EXPECT_NEAR(K(1, 1), K(0, 0), 1e-15);
        EXPECT_NEAR(K(0, 2), 0.0, 1e-15);
    }
}

TEST(AngularKernel, TraceRule) {
    for (double x : {0.5, 2.0, 7.0}) {
        const Mat3 K = transverse_angular_kernel(x, Vec3(1, 2, -2).normalized());
        EXPECT_NEAR(K.trace(), 2.0 * std::sin(x) / x, 1e-10) << x;
    }
}

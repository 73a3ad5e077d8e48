#include "cpdyn/tensors.hpp"

#include <atomic>
#include <cmath>

#include "cpdyn/errors.hpp"

namespace cpdyn {

namespace {

std::atomic<double> g_perturbation{0.0};

// y cosh y - sinh y
double ycosh_minus_sinh_series(double y) {
    const double y2 = y * y;
    double term = y * y2 / 3.0;
    double sum = term;
    for (int n = 2; n <= 8; ++n) {
        // ratio of consecutive coefficients 2n/(2n+1)! over 2(n-1)/(2n-1)!
        term *= y2 * static_cast<double>(n) / (static_cast<double>(n - 1) * (2.0 * n) * (2.0 * n + 1.0));
        sum += term;
    }
    return sum;
}

void require_separation(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("field tensor singular at R = 0");
}

}  // namespace

namespace testing {
void set_tensor_perturbation(double eps) { g_perturbation.store(eps); }
double tensor_perturbation() { return g_perturbation.load(); }
}  // namespace testing

RadialChannels radial_channels(cplx s, double r) {
    require_separation(r);
    const cplx e = std::exp(s * r);
    const double r2 = r * r, r3 = r2 * r;
    const cplx near = s / r2 * (1.0 + g_perturbation.load(std::memory_order_relaxed)) - 1.0 / r3;
    return {e * (-s * s / r + near), e * (-2.0 * near)};
}

FieldTensor apply_F_exp(cplx s, const Vec3& R) {
    const double r = R.norm();
    const auto ch = radial_channels(s, r);
    const Vec3 n = R / r;
    const Mat3 P = n * n.transpose();
    FieldTensor out;
    out.value = ch.transverse * (Mat3::Identity() - P).cast<cplx>() + ch.longitudinal * P.cast<cplx>();
    out.s = s;
    out.R = R;
    return out;
}

SinhChannels sinh_channels_damped(double u, double r, double damp) {
    require_separation(r);
    const double y = u * r;
    const double r3 = r * r * r;
    const double ep = std::exp(-u * (damp - r));
    const double em = std::exp(-u * (damp + r));
    const double sh = 0.5 * (ep - em);
    double g;
    if (y < 0.5) {
        g = ycosh_minus_sinh_series(y) * std::exp(-u * damp);
    } else {
        g = 0.5 * (y * (ep + em) - (ep - em));
    }
    return {-u * u * sh / r + g / r3, -2.0 * g / r3};
}

Mat3 sinh_tensor_damped(double u, const Vec3& R, double damp) {
    const double r = R.norm();
    const auto ch = sinh_channels_damped(u, r, damp);
    const Vec3 n = R / r;
    const Mat3 P = n * n.transpose();
    return ch.transverse * (Mat3::Identity() - P) + ch.longitudinal * P;
}

FieldTensor apply_F_sinh(double u, const Vec3& R) {
    if (!(u >= 0.0)) throw DomainError("apply_F_sinh needs u >= 0");
    FieldTensor out;
    out.value = sinh_tensor_damped(u, R, 0.0).cast<cplx>();
    out.s = u;
    out.R = R;
    return out;
}

FieldTensor apply_F_numeric(const ScalarField& field, const Vec3& R, double h) {
    const double r = R.norm();
    require_separation(r);
    if (!(h > 0.0) || !(h < r / 10.0)) throw DomainError("finite-difference step must satisfy 0 < h < |R|/10");

    auto sample = [&](const Vec3& p) {
        const cplx v = field(p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("non-finite field sample in finite-difference stencil");
        return v;
    };

    const cplx f0 = sample(R);
    CMat3 H;
    for (int i = 0; i < 3; ++i) {
        const Vec3 ei = Vec3::Unit(i) * h;
        H(i, i) = (sample(R + ei) - 2.0 * f0 + sample(R - ei)) / (h * h);
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 ej = Vec3::Unit(j) * h;
            const cplx v = (sample(R + ei + ej) - sample(R + ei - ej) - sample(R - ei + ej) +
                            sample(R - ei - ej)) /
                           (4.0 * h * h);
            H(i, j) = v;
            H(j, i) = v;
        }
    }
    FieldTensor out;
    out.value = H - H.trace() * CMat3::Identity();
    out.R = R;
    return out;
}

}  // namespace cpdyn

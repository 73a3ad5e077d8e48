#include "cpdyn/specfun.hpp"

#include <cmath>

#include "cpdyn/errors.hpp"

namespace cpdyn {

cplx f_t(double x, double t) {
    if (!(t >= 0.0)) throw DomainError("f_t needs t >= 0");
    const double z = x * t;
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return t * cplx(1.0 - z2 / 6.0, z / 2.0 - z * z2 / 24.0);
    }
    // (exp(iz) - 1)/(iz) = sin z / z + i (1 - cos z)/z
    const double s = std::sin(0.5 * z);
    return t * cplx(std::sin(z) / z, 2.0 * s * s / z);
}

int theta(double arg) { return arg > 0.0 ? 1 : 0; }

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double j1_over_x(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return 1.0 / 3.0 -
               x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 * (1.0 / 45360.0 - x2 / 3991680.0)));
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

AngularChannels angular_channels(double x) {
    const double j1x = j1_over_x(x);
    return {sinc(x) - j1x, 2.0 * j1x};
}

Mat3 transverse_angular_kernel(double x, const Vec3& R_hat) {
    if (!(x >= 0.0)) throw DomainError("angular kernel needs x >= 0");
    const auto c = angular_channels(x);
    const Mat3 P = R_hat * R_hat.transpose();
    return c.transverse * (Mat3::Identity() - P) + c.longitudinal * P;
}

}  // namespace cpdyn

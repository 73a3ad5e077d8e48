#pragma once

#include <functional>

#include "cpdyn/params.hpp"

namespace cpdyn {

// F_{lm} = (-delta_{lm} nabla^2 + nabla_l nabla_m) applied to a scalar field at R
struct FieldTensor {
    CMat3 value = CMat3::Zero();
    cplx s{0.0, 0.0};
    Vec3 R = Vec3::Zero();
};

// T = t_perp (delta - n n) + t_par n n
struct RadialChannels {
    cplx transverse;
    cplx longitudinal;
};

// channels of F applied to exp(s r)/r
RadialChannels radial_channels(cplx s, double r);

FieldTensor apply_F_exp(cplx s, const Vec3& R);

// F applied to sinh(u r)/r
FieldTensor apply_F_sinh(double u, const Vec3& R);

struct SinhChannels {
    double transverse;
    double longitudinal;
};

// channels of F[sinh(u r)/r] * exp(-u damp); finite for any u >= 0 when damp >= r
SinhChannels sinh_channels_damped(double u, double r, double damp);

Mat3 sinh_tensor_damped(double u, const Vec3& R, double damp);

using ScalarField = std::function<cplx(const Vec3&)>;

// central finite differences, second order in h
FieldTensor apply_F_numeric(const ScalarField& field, const Vec3& R, double h);

namespace testing {
// relative perturbation of the s/R^2 coefficient in apply_F_exp
void set_tensor_perturbation(double eps);
double tensor_perturbation();
}  // namespace testing

}  // namespace cpdyn

#pragma once

#include "cpdyn/params.hpp"

namespace cpdyn {

// F_t(x) = int_0^t dt' exp(i x t')
cplx f_t(double x, double t);

// step function with theta(0) = 0
int theta(double arg);

// sin(x)/x and j1(x)/x with series branches near the origin
double sinc(double x);
double j1_over_x(double x);

// K(x) = A(x) (delta - n n) + B(x) n n
struct AngularChannels {
    double transverse;
    double longitudinal;
};

AngularChannels angular_channels(double x);

// (1/4pi) int dOmega_k (delta - k k) exp(i k.R), with x = |k| |R|
Mat3 transverse_angular_kernel(double x, const Vec3& R_hat);

}  // namespace cpdyn

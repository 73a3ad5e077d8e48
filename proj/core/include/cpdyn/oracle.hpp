#pragma once

#include <string>
#include <vector>

#include "cpdyn/params.hpp"
#include "cpdyn/quad.hpp"

namespace cpdyn {

// k_max and pv_offset are in units of k0
struct OracleCtrl {
    double k_max = 60.0;
    double tol = 1e-4;
    Regulator regulator = Regulator::exp_damping;
    double pv_offset = 1e-6;
};

void validate(const OracleCtrl& ctrl);

// Mode-sum evaluation: double radial integral over (k, k') after analytic angular
// reduction, no causality step inserted. Energy in the units of potential_total.
QuadResult<double> oracle_mode_sum(const SystemParams& params, const Vec3& R, double t,
                              const OracleCtrl& ctrl = {});

// Compact single-sum form with the explicit causality step; requires ct > R.
QuadResult<double> oracle_single_sum(const SystemParams& params, const Vec3& R, double t,
                               const OracleCtrl& ctrl = {});

struct PvCase {
    std::string label;
    double x = 0.0;
    cplx numeric;
    cplx expected;
    double rel_error = 0.0;
    bool required = true;
    bool passed = false;
};

struct PvReport {
    std::vector<PvCase> cases;
    double tolerance = 1e-3;
    bool passed = false;
};

// P int dk exp(ikx) alpha(k)/(k+k0) = i pi (2 Theta(x) - 1) exp(-i k0 x) alpha(k0)
PvReport pv_identity_selftest(const OracleCtrl& ctrl = {}, double R = 1.0);

namespace oracle_detail {

// Reduced energy (units of |mu_A|^2 k0^3) with exponential damping exp(-eta k).
// scale is the size of the largest contribution summed into value.
struct Regulated {
    double value = 0.0;
    double scale = 0.0;
    double quad_err = 0.0;
};

Regulated mode_sum_regulated(const ReducedSystem& sys, const ReducedPoint& p, double eta);
Regulated single_sum_regulated(const ReducedSystem& sys, const ReducedPoint& p, double eta, double pv_offset);

// integrand of the compact form at wavenumber k (units of k0), including 1/pi;
// the removable point k = 1 is filled by averaging k = 1 +- pv_offset
double single_sum_integrand(const ReducedSystem& sys, const ReducedPoint& p, double k, double pv_offset);

// B(k, q): time-integrated field-correlation kernel of one (k, q) mode pair,
// evaluated directly (unfactorised); real and symmetric
cplx mode_pair_kernel(double k, double q, double tau);

QuadResult<double> mode_sum_reduced(const ReducedSystem& sys, const ReducedPoint& p, const OracleCtrl& ctrl);
QuadResult<double> single_sum_reduced(const ReducedSystem& sys, const ReducedPoint& p, const OracleCtrl& ctrl);

}  // namespace oracle_detail

}  // namespace cpdyn

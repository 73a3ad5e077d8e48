#pragma once

#include <string>
#include <vector>

#include "cpdyn/params.hpp"

namespace cpdyn {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// ids of the acceptance criteria, 1..10
std::vector<int> acceptance_ids();
std::string acceptance_name(int id);

CheckResult run_check(int id);

// runs the selected criteria in ascending id order (all when only is empty)
std::vector<CheckResult> run_acceptance(const std::vector<int>& only = {});

namespace acceptance_detail {

// natural units, k0 = 1, tilted mu_A; two-level B (k_B = 2, mu_B = 1)
SystemParams reference_system();
// same atom A with a constant B polarizability, the model the oracles are compared on
SystemParams oracle_system();

// least-squares slope of log|y| against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct HonestyCase {
    std::string name;
    double value = 0.0;
    double err_est = 0.0;
    double exact = 0.0;
    bool honest = false;
};

// ten integrals with closed forms, run through the engines at rel_tol 1e-6;
// honest means |value - exact| <= 5 err_est (up to the rounding of exact)
std::vector<HonestyCase> quadrature_honesty_library();

}  // namespace acceptance_detail

}  // namespace cpdyn

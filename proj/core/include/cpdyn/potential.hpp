#pragma once

#include <Eigen/Core>

#include "cpdyn/params.hpp"
#include "cpdyn/quad.hpp"

namespace cpdyn {

struct EvalOptions {
    double tol = 1e-9;
    double light_cone_eps = 1e-3;
};

// energies in units of E0 = |mu_A|^2 k0^3
struct ReducedBreakdown {
    double resonant = 0.0;
    double cp_dispersion = 0.0;
    double dynamic = 0.0;
    double total = 0.0;
};

struct PotentialBreakdown {
    double resonant = 0.0;
    double cp_dispersion = 0.0;
    double dynamic = 0.0;
    double total = 0.0;
    ReducedBreakdown reduced;
    ReducedPoint at;
    double energy_unit = 0.0;
};

double term_resonant(const SystemParams& params, const Vec3& R);
double term_cp_dispersion(const SystemParams& params, const Vec3& R, const EvalOptions& opts = {});
double term_dynamic(const SystemParams& params, const Vec3& R, double t, const EvalOptions& opts = {});
PotentialBreakdown potential_total(const SystemParams& params, const Vec3& R, double t,
                                   const EvalOptions& opts = {});
double potential_static(const SystemParams& params, const Vec3& R, const EvalOptions& opts = {});

namespace reduced {

double resonant(const ReducedSystem& sys, const ReducedPoint& p);

double cp_integrand(const ReducedSystem& sys, const ReducedPoint& p, double u);
QuadResult<double> cp_dispersion(const ReducedSystem& sys, const ReducedPoint& p,
                                 const EvalOptions& opts = {});
// second rule (exp-sinh) for cross-validation
QuadResult<double> cp_dispersion_de(const ReducedSystem& sys, const ReducedPoint& p,
                                    const EvalOptions& opts = {});

// contributions of the C and S integrals to the dynamic term, per unit u
Eigen::Vector2d dynamic_integrand(const ReducedSystem& sys, const ReducedPoint& p, double u);
QuadResult<double> dynamic(const ReducedSystem& sys, const ReducedPoint& p,
                           const EvalOptions& opts = {});

ReducedBreakdown total(const ReducedSystem& sys, const ReducedPoint& p, const EvalOptions& opts = {});
double static_limit(const ReducedSystem& sys, const ReducedPoint& p, const EvalOptions& opts = {});

}  // namespace reduced

}  // namespace cpdyn

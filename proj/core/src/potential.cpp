#include "cpdyn/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cpdyn/errors.hpp"
#include "cpdyn/specfun.hpp"
#include "cpdyn/tensors.hpp"

namespace cpdyn {

namespace reduced {

namespace {

Vec3 separation(const ReducedPoint& p) { return p.x * p.orientation; }

struct DynamicKernel {
    Mat3 cos_part;  // D Re[e^{i tau} T(-i)]^T
    Mat3 sin_part;  // D Im[e^{i tau} T(-i)]^T
    double alpha_shift;
    double prefactor;
};

DynamicKernel dynamic_kernel(const ReducedSystem& sys, const ReducedPoint& p) {
    const Mat3 D = sys.dipole_weight(p);
    const CMat3 T = std::polar(1.0, p.tau) * apply_F_exp(cplx(0.0, -1.0), separation(p)).value;
    return {D * T.real().transpose(), D * T.imag().transpose(), sys.alpha_resonant(),
            sys.dynamic_prefactor()};
}

Eigen::Vector2d dynamic_integrand_impl(const ReducedSystem& sys, const ReducedPoint& p,
                                       const DynamicKernel& k, double u) {
    const Mat3 W = sinh_tensor_damped(u, separation(p), p.tau);
    const double a = sys.alpha_imag(u) + k.alpha_shift;
    const double den = 1.0 + u * u;
    return {k.prefactor * a * (2.0 / den) * (k.cos_part * W).trace(),
            k.prefactor * a * (2.0 * u / den) * (k.sin_part * W).trace()};
}

void check_light_cone(const ReducedPoint& p, const EvalOptions& opts) {
    if (p.tau <= p.x * (1.0 + opts.light_cone_eps)) {
        std::ostringstream os;
        os << "evaluation point too close to the light cone (x = " << p.x << ", tau = " << p.tau
           << "); the dynamic integrals diverge as ct -> R+, guard eps_lc = " << opts.light_cone_eps;
        throw LightConeError(os.str());
    }
}

}  // namespace

double resonant(const ReducedSystem& sys, const ReducedPoint& p) {
    const Mat3 D = sys.dipole_weight(p);
    const CMat3 T = apply_F_exp(cplx(0.0, 1.0), separation(p)).value;
    const cplx tr = (D.cast<cplx>() * T * T.conjugate()).trace();
    if (std::abs(tr.imag()) > 1e-10 * std::abs(tr.real()) + 1e-300)
        throw EvaluationError("resonant contraction has a non-negligible imaginary part");
    return -sys.alpha_resonant() * tr.real();
}

double cp_integrand(const ReducedSystem& sys, const ReducedPoint& p, double u) {
    const Mat3 D = sys.dipole_weight(p);
    const Mat3 T = apply_F_exp(cplx(-u, 0.0), separation(p)).value.real();
    const double aA = sys.sigma() * 2.0 / (1.0 + u * u);
    return (D * T.transpose() * T).trace() * aA * sys.alpha_imag(u) / (2.0 * std::numbers::pi);
}

QuadResult<double> cp_dispersion(const ReducedSystem& sys, const ReducedPoint& p,
                                 const EvalOptions& opts) {
    QuadOptions q;
    q.rel_tol = opts.tol;
    return integrate_semiinf([&](double u) { return cp_integrand(sys, p, u); }, 2.0 * p.x, q);
}

QuadResult<double> cp_dispersion_de(const ReducedSystem& sys, const ReducedPoint& p,
                                    const EvalOptions& opts) {
    QuadOptions q;
    q.rel_tol = opts.tol;
    return integrate_semiinf_de([&](double u) { return cp_integrand(sys, p, u); }, 2.0 * p.x, q);
}

Eigen::Vector2d dynamic_integrand(const ReducedSystem& sys, const ReducedPoint& p, double u) {
    return dynamic_integrand_impl(sys, p, dynamic_kernel(sys, p), u);
}

QuadResult<double> dynamic(const ReducedSystem& sys, const ReducedPoint& p, const EvalOptions& opts) {
    if (theta(p.tau - p.x) == 0) return {0.0, 0.0, 0};
    check_light_cone(p, opts);
    const auto k = dynamic_kernel(sys, p);
    QuadOptions q;
    q.rel_tol = opts.tol;
    auto r = integrate_semiinf([&](double u) { return dynamic_integrand_impl(sys, p, k, u); },
                               p.tau - p.x, q);
    return {r.value.sum(), r.err_est, r.n_evals};
}

ReducedBreakdown total(const ReducedSystem& sys, const ReducedPoint& p, const EvalOptions& opts) {
    ReducedBreakdown b;
    if (theta(p.tau - p.x) == 0) return b;
    check_light_cone(p, opts);
    b.resonant = resonant(sys, p);
    b.cp_dispersion = cp_dispersion(sys, p, opts).value;
    b.dynamic = dynamic(sys, p, opts).value;
    b.total = b.resonant + b.cp_dispersion + b.dynamic;
    return b;
}

double static_limit(const ReducedSystem& sys, const ReducedPoint& p, const EvalOptions& opts) {
    return resonant(sys, p) + cp_dispersion(sys, p, opts).value;
}

}  // namespace reduced

double term_resonant(const SystemParams& params, const Vec3& R) {
    const ReducedSystem sys(params);
    return energy_scale(params) * reduced::resonant(sys, reduce(params, R, 0.0));
}

double term_cp_dispersion(const SystemParams& params, const Vec3& R, const EvalOptions& opts) {
    const ReducedSystem sys(params);
    return energy_scale(params) * reduced::cp_dispersion(sys, reduce(params, R, 0.0), opts).value;
}

double term_dynamic(const SystemParams& params, const Vec3& R, double t, const EvalOptions& opts) {
    const ReducedSystem sys(params);
    return energy_scale(params) * reduced::dynamic(sys, reduce(params, R, t), opts).value;
}

PotentialBreakdown potential_total(const SystemParams& params, const Vec3& R, double t,
                                   const EvalOptions& opts) {
    const ReducedSystem sys(params);
    PotentialBreakdown out;
    out.at = reduce(params, R, t);
    out.energy_unit = energy_scale(params);
    out.reduced = reduced::total(sys, out.at, opts);
    out.resonant = out.energy_unit * out.reduced.resonant;
    out.cp_dispersion = out.energy_unit * out.reduced.cp_dispersion;
    out.dynamic = out.energy_unit * out.reduced.dynamic;
    out.total = out.resonant + out.cp_dispersion + out.dynamic;
    return out;
}

double potential_static(const SystemParams& params, const Vec3& R, const EvalOptions& opts) {
    const ReducedSystem sys(params);
    return energy_scale(params) * reduced::static_limit(sys, reduce(params, R, 0.0), opts);
}

}  // namespace cpdyn

#include "cpdyn/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cpdyn/errors.hpp"
#include "cpdyn/parallel.hpp"
#include "cpdyn/specfun.hpp"
#include "cpdyn/tensors.hpp"

namespace cpdyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelOrder = 16;
constexpr double kDampingRange = 36.0;

// Each mode sum carries V/(2pi)^3 from the continuum limit and each coupling
// (and field amplitude) a 1/V, two of each in the energy.
constexpr int kModeSums = 2;
constexpr int kInverseVolumeFactors = 2;
static_assert(kModeSums - kInverseVolumeFactors == 0, "quantization volume must cancel");

struct ChannelWeights {
    std::array<double, 2> w;  // transverse, longitudinal
};

ChannelWeights channel_weights(const ReducedSystem& sys, const ReducedPoint& p) {
    const Mat3 D = sys.dipole_weight(p);
    const double par = p.orientation.dot(D * p.orientation);
    return {{D.trace() - par, par}};
}

NodeSet mode_grid(const ReducedSystem& sys, const ReducedPoint& p, double eta) {
    const double k_end = kDampingRange / eta;
    const double width = std::min(1.0, 8.0 / (p.tau + p.x + 1e-300));
    return composite_nodes(0.0, k_end, width, kPanelOrder, {1.0}, sys.real_poles(), 0.25);
}

void check_ctrl_regulator(const OracleCtrl& ctrl) {
    if (ctrl.regulator != Regulator::exp_damping)
        throw DomainError("the mode-sum oracles support only the exp_damping regulator");
}

std::vector<double> damping_etas(const OracleCtrl& ctrl) {
    return {8.0 / ctrl.k_max, 4.0 / ctrl.k_max, 2.0 / ctrl.k_max, 1.0 / ctrl.k_max};
}

// quadratic through the three smallest etas; the cubic through all four is the
// consistency probe. err also looks at the linear extrapolant, scaled by
// eta_min/eta_max, which is the safer of the two close to the light cone.
struct EtaFit {
    double value;
    double spread;
    double err;
};

EtaFit fit_to_zero(const std::vector<double>& etas, const std::vector<double>& vals) {
    const std::vector<double> e3(etas.end() - 3, etas.end()), v3(vals.end() - 3, vals.end());
    const auto quad = extrapolate_to_zero(e3, v3);
    const double spread = std::abs(extrapolate_to_zero(etas, vals).value - quad.value);
    return {quad.value, spread, std::max(spread, quad.spread * e3.back() / e3.front())};
}

QuadResult<double> finish_extrapolation(const std::vector<double>& etas,
                                        const std::vector<oracle_detail::Regulated>& regs,
                                        std::size_t n_evals, const OracleCtrl& ctrl) {
    std::vector<double> vals;
    double quad_err = 0.0, scale = 0.0;
    for (const auto& r : regs) {
        vals.push_back(r.value);
        quad_err = std::max(quad_err, r.quad_err);
        scale = std::max(scale, r.scale);
    }
    const auto [value, spread, err] = fit_to_zero(etas, vals);
    QuadResult<double> out{value, err + quad_err, n_evals};
    scale = std::max(scale, std::abs(value));
    if (spread > 10.0 * ctrl.tol * scale) {
        std::ostringstream os;
        os << "cutoff extrapolants inconsistent: spread " << spread << " exceeds 10 x tol x scale ("
           << 10.0 * ctrl.tol * scale << ")";
        throw QuadratureError<double>(os.str(), out, std::abs(out.value));
    }
    return out;
}

}  // namespace

void validate(const OracleCtrl& ctrl) {
    if (!(ctrl.k_max >= 20.0)) throw DomainError("oracle k_max must be at least 20 k0");
    if (!(ctrl.tol >= 1e-6)) throw DomainError("oracle tol must be at least 1e-6");
    if (!(ctrl.pv_offset > 0.0) || !(ctrl.pv_offset < 1e-2))
        throw DomainError("oracle pv_offset must lie in (0, 1e-2) k0");
}

namespace oracle_detail {

cplx mode_pair_kernel(double k, double q, double tau) {
    const double t = tau;
    const cplx I(0.0, 1.0);
    auto P = [&](double kk) {
        return std::polar(1.0, -kk * t) * f_t(1.0 + kk, t) - std::polar(1.0, kk * t) * f_t(1.0 - kk, t);
    };
    auto g1 = [&](double kk, double s) {
        return (std::polar(1.0, -kk * s) - std::polar(1.0, s)) / (1.0 + kk) +
               I * std::polar(1.0, -s) * f_t(1.0 - kk, s);
    };
    const cplx first = P(k) * (-std::conj(P(q)));
    if (!(t > 0.0)) return first;
    auto integrand = [&](double s) {
        return 2.0 * (std::polar(1.0, q * t) * g1(q, s) * std::sin(k * (t - s)) +
                      std::polar(1.0, -k * t) * std::conj(g1(k, s)) * std::sin(q * (t - s)));
    };
    QuadOptions o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-12;
    return first + integrate_interval(integrand, 0.0, t, o).value;
}

Regulated mode_sum_regulated(const ReducedSystem& sys, const ReducedPoint& p, double eta) {
    const double t = p.tau, x = p.x;
    const auto cw = channel_weights(sys, p);
    const NodeSet grid = mode_grid(sys, p, eta);
    const std::size_t n = grid.x.size();
    const cplx I(0.0, 1.0);

    std::vector<double> k(n), al(n);
    std::array<std::vector<double>, 2> wc{std::vector<double>(n), std::vector<double>(n)};
    std::vector<cplx> eikt(n);
    cplx term1 = 0.0;
    std::array<cplx, 2> sum_aP{}, sum_M{};
    for (std::size_t i = 0; i < n; ++i) {
        const double kk = grid.x[i];
        k[i] = kk;
        al[i] = sys.alpha_real(kk);
        const double base = grid.w[i] * kk * kk * kk * std::exp(-eta * kk);
        const auto ch = angular_channels(kk * x);
        wc[0][i] = base * ch.transverse;
        wc[1][i] = base * ch.longitudinal;
        eikt[i] = std::polar(1.0, kk * t);
        const cplx P = std::conj(eikt[i]) * f_t(1.0 + kk, t) - eikt[i] * f_t(1.0 - kk, t);
        for (int c = 0; c < 2; ++c) {
            sum_aP[c] += wc[c][i] * al[i] * P;
            sum_M[c] += wc[c][i] * (-std::conj(P));
        }
    }
    for (int c = 0; c < 2; ++c) term1 += cw.w[c] * sum_aP[c] * sum_M[c];

    auto coupled = [&](double s) -> cplx {
        const cplx eis = std::polar(1.0, s);
        const cplx emis = std::conj(eis);
        std::array<double, 2> Sa{0.0, 0.0}, S1{0.0, 0.0};
        std::array<cplx, 2> Hq{}, Hk{};
        for (std::size_t i = 0; i < n; ++i) {
            const double kk = k[i];
            const cplx es = std::polar(1.0, -kk * s);
            const double sn = (eikt[i] * es).imag();
            const double y = 1.0 - kk;
            const cplx F = std::abs(y * s) < 0.5 ? f_t(y, s) : (eis * es - 1.0) / (I * y);
            const cplx g1 = (es - eis) / (1.0 + kk) + I * emis * F;
            const cplx hq = eikt[i] * g1;
            const cplx hk = al[i] * std::conj(hq);
            for (int c = 0; c < 2; ++c) {
                const double w = wc[c][i];
                Sa[c] += w * al[i] * sn;
                S1[c] += w * sn;
                Hq[c] += w * hq;
                Hk[c] += w * hk;
            }
        }
        cplx out = 0.0;
        for (int c = 0; c < 2; ++c)
            if (cw.w[c] != 0.0) out += cw.w[c] * 2.0 * (Sa[c] * Hq[c] + Hk[c] * S1[c]);
        return out;
    };

    cplx coupled_int = 0.0;
    double err = 0.0;
    if (t > 0.0) {
        QuadOptions o;
        o.rel_tol = 1e-9;
        o.abs_tol = 1e-10 * (1.0 + std::abs(term1));
        std::vector<double> bps;
        if (t - x > 0.0 && t - x < t) bps.push_back(t - x);
        auto r = integrate_interval(coupled, 0.0, t, o, bps);
        coupled_int = r.value;
        err = r.err_est;
    }
    const double norm = 1.0 / (2.0 * kPi * kPi);
    return {(term1 + coupled_int).real() * norm, (std::abs(term1) + std::abs(coupled_int)) * norm, err * norm};
}

namespace {

double single_sum_integrand_at(const ReducedSystem& sys, const ReducedPoint& p, double k) {
    const auto cw = channel_weights(sys, p);
    const auto ang = angular_channels(k * p.x);
    const auto tk = radial_channels(cplx(0.0, -k), p.x);
    const auto t1 = radial_channels(cplx(0.0, -1.0), p.x);
    const double al = sys.alpha_real(k);
    const double a1 = sys.alpha_at_k0();
    const cplx ph = std::polar(1.0, (1.0 - k) * p.tau);
    const cplx br_t = 2.0 * al * tk.transverse - (al + a1) * ph * t1.transverse;
    const cplx br_l = 2.0 * al * tk.longitudinal - (al + a1) * ph * t1.longitudinal;
    const double v = (cw.w[0] * ang.transverse * br_t + cw.w[1] * ang.longitudinal * br_l).real();
    return v * k * k * k / (1.0 - k) / kPi;
}

}  // namespace

double single_sum_integrand(const ReducedSystem& sys, const ReducedPoint& p, double k, double pv_offset) {
    if (std::abs(k - 1.0) < pv_offset)
        return 0.5 * (single_sum_integrand_at(sys, p, 1.0 - pv_offset) +
                      single_sum_integrand_at(sys, p, 1.0 + pv_offset));
    return single_sum_integrand_at(sys, p, k);
}

Regulated single_sum_regulated(const ReducedSystem& sys, const ReducedPoint& p, double eta, double pv_offset) {
    const NodeSet grid = mode_grid(sys, p, eta);
    Regulated out;
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        const double v = grid.w[i] * single_sum_integrand(sys, p, grid.x[i], pv_offset) * std::exp(-eta * grid.x[i]);
        out.value += v;
        out.scale = std::max(out.scale, std::abs(out.value));
    }
    return out;
}

QuadResult<double> mode_sum_reduced(const ReducedSystem& sys, const ReducedPoint& p, const OracleCtrl& ctrl) {
    validate(ctrl);
    check_ctrl_regulator(ctrl);
    const auto etas = damping_etas(ctrl);
    std::vector<Regulated> regs(etas.size());
    parallel_for(etas.size(), [&](std::size_t i) { regs[i] = mode_sum_regulated(sys, p, etas[i]); });
    std::size_t evals = 0;
    for (double eta : etas) evals += mode_grid(sys, p, eta).x.size();
    return finish_extrapolation(etas, regs, evals, ctrl);
}

QuadResult<double> single_sum_reduced(const ReducedSystem& sys, const ReducedPoint& p, const OracleCtrl& ctrl) {
    validate(ctrl);
    check_ctrl_regulator(ctrl);
    if (!(p.tau > p.x)) throw DomainError("the single-sum form requires ct > R");
    const auto etas = damping_etas(ctrl);
    std::vector<Regulated> regs(etas.size());
    parallel_for(etas.size(),
                 [&](std::size_t i) { regs[i] = single_sum_regulated(sys, p, etas[i], ctrl.pv_offset); });
    std::size_t evals = 0;
    for (double eta : etas) evals += mode_grid(sys, p, eta).x.size();
    return finish_extrapolation(etas, regs, evals, ctrl);
}

}  // namespace oracle_detail

QuadResult<double> oracle_mode_sum(const SystemParams& params, const Vec3& R, double t, const OracleCtrl& ctrl) {
    validate(ctrl);
    if (params.mu_A.norm() == 0.0) return {0.0, 0.0, 1};
    const ReducedSystem sys(params);
    const ReducedPoint p = reduce(params, R, t);
    auto r = oracle_detail::mode_sum_reduced(sys, p, ctrl);
    const double e0 = energy_scale(params);
    return {e0 * r.value, e0 * r.err_est, r.n_evals};
}

QuadResult<double> oracle_single_sum(const SystemParams& params, const Vec3& R, double t,
                                     const OracleCtrl& ctrl) {
    validate(ctrl);
    if (params.mu_A.norm() == 0.0) return {0.0, 0.0, 1};
    const ReducedSystem sys(params);
    const ReducedPoint p = reduce(params, R, t);
    auto r = oracle_detail::single_sum_reduced(sys, p, ctrl);
    const double e0 = energy_scale(params);
    return {e0 * r.value, e0 * r.err_est, r.n_evals};
}

namespace {

// P int_{-inf}^{inf} dk e^{ikx} alpha(k)/(k+1), folded onto k >= 0 and Abel damped
template <class Alpha>
cplx pv_numeric(const Alpha& alpha, const std::vector<double>& poles, double x, const OracleCtrl& ctrl) {
    const auto etas = damping_etas(ctrl);
    std::vector<double> re, im;
    for (double eta : etas) {
        const NodeSet g = composite_nodes(0.0, 40.0 / eta, std::min(1.0, 8.0 / std::abs(x)), kPanelOrder, {},
                                          poles, 0.25);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double k = g.x[i];
            const double a = alpha(k);
            const cplx v = std::polar(1.0, k * x) * a / (k + 1.0) + std::polar(1.0, -k * x) * a / (1.0 - k);
            sum += g.w[i] * v * std::exp(-eta * k);
        }
        re.push_back(sum.real());
        im.push_back(sum.imag());
    }
    return {fit_to_zero(etas, re).value, fit_to_zero(etas, im).value};
}

PvCase make_case(std::string label, double x, cplx numeric, cplx expected, double tol, bool required) {
    PvCase c;
    c.label = std::move(label);
    c.x = x;
    c.numeric = numeric;
    c.expected = expected;
    c.rel_error = std::abs(numeric - expected) / std::abs(expected);
    c.required = required;
    c.passed = c.rel_error <= tol;
    return c;
}

}  // namespace

PvReport pv_identity_selftest(const OracleCtrl& ctrl, double R) {
    validate(ctrl);
    PvReport rep;
    const cplx I(0.0, 1.0);
    const double kB = 2.0, a = 1.0;
    auto two_level = [&](double k) { return a * 2.0 * kB / (kB * kB - k * k); };
    auto constant = [](double) { return 1.0; };
    for (double x : {R, -R}) {
        const double sgn = x > 0.0 ? 1.0 : -1.0;
        const cplx main = I * kPi * sgn * std::polar(1.0, -x);
        const cplx tl = pv_numeric(two_level, {1.0, kB}, x, ctrl);
        rep.cases.push_back(make_case(x > 0 ? "two-level alpha, x = +R" : "two-level alpha, x = -R", x, tl,
                                      main * two_level(1.0), rep.tolerance, true));
        const cplx cn = pv_numeric(constant, {1.0}, x, ctrl);
        rep.cases.push_back(make_case(x > 0 ? "constant alpha, x = +R" : "constant alpha, x = -R", x, cn, main,
                                      rep.tolerance, true));
        // the same integral including the residues of alpha's own poles at k = +-k_B
        const cplx poles = I * kPi * sgn *
                           (-a * std::polar(1.0, kB * x) / (kB + 1.0) + a * std::polar(1.0, -kB * x) / (1.0 - kB));
        rep.cases.push_back(make_case(x > 0 ? "two-level alpha with k_B pole residues, x = +R"
                                            : "two-level alpha with k_B pole residues, x = -R",
                                      x, tl, main * two_level(1.0) + poles, rep.tolerance, false));
    }
    rep.passed = true;
    for (const auto& c : rep.cases)
        if (c.required && !c.passed) rep.passed = false;
    return rep;
}

}  // namespace cpdyn

#include "cpdyn/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cpdyn/errors.hpp"

namespace cpdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_table(const std::vector<double>& xs, const std::vector<double>& ys,
                    const char* what, bool positive) {
    if (xs.size() != ys.size())
        throw DomainError(std::string(what) + ": grid and value columns differ in length");
    if (xs.size() < 2) throw DomainError(std::string(what) + ": at least two samples required");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw DomainError(std::string(what) + ": non-finite entry");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw DomainError(std::string(what) + ": grid must be strictly increasing");
        if (positive && !(ys[i] > 0.0))
            throw DomainError(std::string(what) + ": log interpolation needs positive values");
    }
    if (xs.front() < 0.0) throw DomainError(std::string(what) + ": negative grid point");
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x,
                   Interpolation rule) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.end() ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
    if (i == 0) i = 1;
    const double x0 = xs[i - 1], x1 = xs[i];
    const double w = (x - x0) / (x1 - x0);
    if (rule == Interpolation::log_linear)
        return std::exp((1.0 - w) * std::log(ys[i - 1]) + w * std::log(ys[i]));
    return (1.0 - w) * ys[i - 1] + w * ys[i];
}

double tabulated_imag(const TabulatedB& tab, double u) {
    if (u < tab.u.front()) {
        std::ostringstream os;
        os << "alpha_B(iu) requested at u = " << u << " below the tabulated grid start "
           << tab.u.front();
        throw ExtrapolationError(os.str());
    }
    if (u > tab.u.back()) {
        if (tab.tail == TailRule::inverse_square) {
            const double r = tab.u.back() / u;
            return tab.alpha.back() * r * r;
        }
        std::ostringstream os;
        os << "alpha_B(iu) requested at u = " << u << " beyond the tabulated grid end "
           << tab.u.back();
        throw ExtrapolationError(os.str());
    }
    return interpolate(tab.u, tab.alpha, u, tab.interpolation);
}

double tabulated_real(const TabulatedB& tab, double k) {
    if (tab.k_real.empty())
        throw DomainError("tabulated alpha_B has no real-axis table; alpha_B(k) is unavailable");
    if (k < tab.k_real.front() || k > tab.k_real.back()) {
        std::ostringstream os;
        os << "alpha_B(k) requested at k = " << k << " outside the real-axis table ["
           << tab.k_real.front() << ", " << tab.k_real.back() << "]";
        throw ExtrapolationError(os.str());
    }
    return interpolate(tab.k_real, tab.alpha_real, k, tab.interpolation);
}

}  // namespace

void validate(const SystemParams& p) {
    if (!(p.k0 > 0.0) || !std::isfinite(p.k0)) throw DomainError("k0 must be positive and finite");
    if (!p.mu_A.allFinite() || !(p.mu_A.norm() > 0.0))
        throw DomainError("mu_A must be a finite nonzero vector");
    if (p.gamma && !(*p.gamma >= 0.0)) throw DomainError("gamma must be non-negative");
    if (!(p.units.hbar > 0.0) || !(p.units.c > 0.0))
        throw DomainError("hbar and c must be positive");
    std::visit(overloaded{
                   [&](const TwoLevelB& b) {
                       if (!(b.k_B > 0.0) || !std::isfinite(b.k_B))
                           throw DomainError("two-level B needs k_B > 0");
                       if (!std::isfinite(b.mu_B)) throw DomainError("two-level B needs finite mu_B");
                       if (std::abs(b.k_B - p.k0) <= 1e-12 * p.k0) {
                           std::ostringstream os;
                           os << "two-level B is resonant with A (k_B = k0 = " << p.k0
                              << "); alpha_B(k0) diverges, a non-degenerate pair k_B != k0 is "
                                 "required";
                           throw ResonanceError(os.str());
                       }
                   },
                   [&](const StaticConstantB& b) {
                       if (!std::isfinite(b.alpha0)) throw DomainError("alpha0 must be finite");
                   },
                   [&](const TabulatedB& b) {
                       const bool log_rule = b.interpolation == Interpolation::log_linear;
                       validate_table(b.u, b.alpha, "alpha_B(iu) table", log_rule);
                       if (!b.k_real.empty())
                           validate_table(b.k_real, b.alpha_real, "alpha_B(k) table", log_rule);
                   },
               },
               p.pol_B);
}

ReducedPoint reduce(const SystemParams& params, const Vec3& R, double t) {
    const double r = R.norm();
    if (!(r > 0.0)) throw DomainError("zero separation between the atoms");
    if (!(t >= 0.0)) throw DomainError("time must be non-negative");
    ReducedPoint p;
    p.x = params.k0 * r;
    p.tau = params.units.c * params.k0 * t;
    p.orientation = R / r;
    const double m = params.mu_A.norm();
    p.mu_hat_A = m > 0.0 ? Vec3(params.mu_A / m) : Vec3::UnitZ();
    return p;
}

double energy_scale(const SystemParams& params) {
    return params.mu_A.squaredNorm() * params.k0 * params.k0 * params.k0;
}

double alpha_B_imag(const SystemParams& params, double u) {
    if (!(u >= 0.0)) throw DomainError("alpha_B_imag needs u >= 0");
    const double hc = params.units.hbar_c();
    return std::visit(overloaded{
                          [&](const TwoLevelB& b) {
                              return 2.0 * b.k_B * b.mu_B * b.mu_B / (hc * (b.k_B * b.k_B + u * u));
                          },
                          [&](const StaticConstantB& b) { return b.alpha0; },
                          [&](const TabulatedB& b) { return tabulated_imag(b, u); },
                      },
                      params.pol_B);
}

double alpha_B_real(const SystemParams& params, double k) {
    if (!(k >= 0.0)) throw DomainError("alpha_B_real needs k >= 0");
    const double hc = params.units.hbar_c();
    return std::visit(overloaded{
                          [&](const TwoLevelB& b) {
                              const double d = b.k_B * b.k_B - k * k;
                              if (std::abs(b.k_B - k) <= 1e-12 * b.k_B) {
                                  std::ostringstream os;
                                  os << "alpha_B(k) has a pole at k = k_B = " << b.k_B
                                     << "; two-level B must not be evaluated on resonance";
                                  throw ResonanceError(os.str());
                              }
                              return 2.0 * b.k_B * b.mu_B * b.mu_B / (hc * d);
                          },
                          [&](const StaticConstantB& b) { return b.alpha0; },
                          [&](const TabulatedB& b) { return tabulated_real(b, k); },
                      },
                      params.pol_B);
}

Mat3 alpha_A_excited(const SystemParams& params, double u) {
    if (!(u >= 0.0)) throw DomainError("alpha_A_excited needs u >= 0");
    const double sigma = params.excited_sign == ExcitedSign::as_printed ? 1.0 : -1.0;
    const double k0 = params.k0;
    const double scale = sigma * 2.0 * k0 / (params.units.hbar_c() * (k0 * k0 + u * u));
    if (params.isotropic_A) return scale * params.mu_A.squaredNorm() / 3.0 * Mat3::Identity();
    return scale * params.mu_A * params.mu_A.transpose();
}

std::vector<std::string> validity_check(const SystemParams& params, double t) {
    std::vector<std::string> out;
    if (params.gamma && t * *params.gamma > 0.1) {
        std::ostringstream os;
        os << "t*gamma = " << t * *params.gamma
           << " exceeds 0.1; the bare-state perturbative result is only valid for t << 1/gamma";
        out.push_back(os.str());
    }
    return out;
}

ReducedSystem::ReducedSystem(const SystemParams& params) : params_(params) {
    validate(params_);
    sigma_ = params_.excited_sign == ExcitedSign::as_printed ? 1.0 : -1.0;
    alpha_k0_ = alpha_real(1.0);
    alpha_res_ = params_.resonant_alpha_choice == ResonantAlpha::alpha_at_k0 ? alpha_k0_
                                                                            : alpha_imag(1.0);
}

double ReducedSystem::alpha_imag(double u) const {
    const double k0 = params_.k0;
    return k0 * k0 * k0 * alpha_B_imag(params_, u * k0);
}

double ReducedSystem::alpha_real(double k) const {
    const double k0 = params_.k0;
    return k0 * k0 * k0 * alpha_B_real(params_, k * k0);
}

double ReducedSystem::dynamic_prefactor() const {
    return params_.dynamic_norm == DynamicNormalization::mode_sum ? 0.5 / std::numbers::pi
                                                                  : 1.0 / std::numbers::pi;
}

Mat3 ReducedSystem::dipole_weight(const ReducedPoint& p) const {
    if (params_.isotropic_A) return Mat3::Identity() / 3.0;
    return p.mu_hat_A * p.mu_hat_A.transpose();
}

std::vector<double> ReducedSystem::real_poles() const {
    if (const auto* b = std::get_if<TwoLevelB>(&params_.pol_B)) return {b->k_B / params_.k0};
    return {};
}

}  // namespace cpdyn

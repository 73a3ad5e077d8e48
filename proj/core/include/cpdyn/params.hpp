#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace cpdyn {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using cplx = std::complex<double>;

// hbar and c; Gaussian (erg s, cm/s) unless stated otherwise
struct Units {
    double hbar = 1.054571817e-27;
    double c = 2.99792458e10;

    static Units gaussian() { return {}; }
    static Units natural() { return {1.0, 1.0}; }
    double hbar_c() const { return hbar * c; }
};

struct TwoLevelB {
    double mu_B = 0.0;
    double k_B = 0.0;
};

struct StaticConstantB {
    double alpha0 = 0.0;
};

enum class Interpolation { linear, log_linear };
enum class TailRule { none, inverse_square };

// Imaginary-axis samples alpha(iu) plus an optional real-axis table alpha(k)
struct TabulatedB {
    std::vector<double> u;
    std::vector<double> alpha;
    Interpolation interpolation = Interpolation::linear;
    TailRule tail = TailRule::none;
    std::vector<double> k_real;
    std::vector<double> alpha_real;
};

using PolarizabilityB = std::variant<TwoLevelB, StaticConstantB, TabulatedB>;

enum class ExcitedSign { as_printed, sign_flipped };
enum class ResonantAlpha { alpha_at_k0, alpha_at_iu_equals_k0ImAxis };
enum class DynamicNormalization { mode_sum, as_printed };

struct SystemParams {
    Vec3 mu_A = Vec3::UnitZ();
    double k0 = 1.0;
    PolarizabilityB pol_B = StaticConstantB{1.0};
    std::optional<double> gamma;
    ExcitedSign excited_sign = ExcitedSign::as_printed;
    ResonantAlpha resonant_alpha_choice = ResonantAlpha::alpha_at_k0;
    DynamicNormalization dynamic_norm = DynamicNormalization::mode_sum;
    bool isotropic_A = false;
    Units units = Units::gaussian();
};

// throws DomainError or ResonanceError
void validate(const SystemParams& params);

struct ReducedPoint {
    double x = 0.0;
    double tau = 0.0;
    Vec3 orientation = Vec3::UnitZ();
    Vec3 mu_hat_A = Vec3::UnitZ();
};

ReducedPoint reduce(const SystemParams& params, const Vec3& R, double t);

double energy_scale(const SystemParams& params);

double alpha_B_imag(const SystemParams& params, double u);
double alpha_B_real(const SystemParams& params, double k);
Mat3 alpha_A_excited(const SystemParams& params, double u);

std::vector<std::string> validity_check(const SystemParams& params, double t);

// Dimensionless view of SystemParams: wavenumbers in units of k0,
// polarizabilities multiplied by k0^3.
class ReducedSystem {
public:
    explicit ReducedSystem(const SystemParams& params);

    double alpha_imag(double u) const;
    double alpha_real(double k) const;

    // alpha_B entering the resonant and dynamic terms
    double alpha_resonant() const { return alpha_res_; }
    // real-axis alpha_B(k0), used by the mode-sum oracles
    double alpha_at_k0() const { return alpha_k0_; }

    double sigma() const { return sigma_; }
    double dynamic_prefactor() const;

    // D such that mu_A^m mu_A^n -> |mu_A|^2 D_mn
    Mat3 dipole_weight(const ReducedPoint& p) const;

    // real-axis poles of alpha_B (in units of k0)
    std::vector<double> real_poles() const;

    const SystemParams& params() const { return params_; }

private:
    SystemParams params_;
    double alpha_res_ = 0.0;
    double alpha_k0_ = 0.0;
    double sigma_ = 1.0;
};

}  // namespace cpdyn

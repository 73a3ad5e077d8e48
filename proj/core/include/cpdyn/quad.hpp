#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "cpdyn/errors.hpp"

namespace cpdyn {

template <class T>
struct QuadResult {
    T value{};
    double err_est = 0.0;
    std::size_t n_evals = 0;
};

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 5000;
};

// Carries the best estimate of a failed integration with its value type.
template <class T>
class QuadratureError : public AccuracyError {
public:
    QuadratureError(const std::string& what, QuadResult<T> best, double best_norm)
        : AccuracyError(what, best_norm, best.err_est), best_(std::move(best)) {}
    const QuadResult<T>& best() const noexcept { return best_; }

private:
    QuadResult<T> best_;
};

enum class Regulator { exp_damping, cutoff_averaging };

struct OscOptions {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    // oscillation period of the tail in k
    double period = 2.0 * std::numbers::pi;
};

struct NodeSet {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1]
const NodeSet& gauss_legendre(int n);

// Composite Gauss-Legendre nodes on [a, b] with panels no wider than max_width.
// Each pole p in (a, b) is surrounded by two mirror-image segments of half-width
// pole_halfwidth so that odd parts about p cancel (principal value).
NodeSet composite_nodes(double a, double b, double max_width, int order,
                        const std::vector<double>& breakpoints = {},
                        const std::vector<double>& poles = {}, double pole_halfwidth = 0.25);

struct Extrapolation {
    double value;
    double lower_order;
    double spread;
};

// Polynomial extrapolation to eta = 0 through all samples; lower_order uses the
// two samples closest to zero.
Extrapolation extrapolate_to_zero(const std::vector<double>& eta, const std::vector<double>& values);

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
    return m.norm();
}

template <class T>
T zero_like(const T& sample) {
    if constexpr (std::is_arithmetic_v<T>) {
        return T(0);
    } else if constexpr (std::is_same_v<T, std::complex<double>>) {
        return T(0.0, 0.0);
    } else {
        T z = sample;
        z.setZero();
        return z;
    }
}

struct GK21 {
    static constexpr std::array<double, 11> xgk{
        0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
        0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
        0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
        0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
        0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
        0.000000000000000000000000000000000};
    static constexpr std::array<double, 11> wgk{
        0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
        0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
        0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
        0.123491976262065851077208980246181, 0.134709217311473325928054001771707,
        0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
        0.149445554002916905664936468389821};
    static constexpr std::array<double, 5> wg{
        0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
        0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
        0.295524224714752870173892994651338};
};

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double err;
};

template <class T, class F>
Segment<T> gk21(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * GK21::wgk[10];
    T gauss = zero_like(fc);
    double resabs = GK21::wgk[10] * magnitude(fc);
    for (int j = 0; j < 10; ++j) {
        const double dx = h * GK21::xgk[j];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        kron += (f1 + f2) * GK21::wgk[j];
        resabs += GK21::wgk[j] * (magnitude(f1) + magnitude(f2));
        if (j % 2 == 1) gauss += (f1 + f2) * GK21::wg[j / 2];
    }
    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);
    double err = magnitude(T(kron - gauss));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
    return {a, b, kron, err};
}

template <class T>
struct SegmentOrder {
    bool operator()(const Segment<T>& l, const Segment<T>& r) const { return l.err < r.err; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod (10/21) integration over [a, b], splitting first
// at the given interior breakpoints. T may be double, complex or an Eigen matrix.
template <class F>
auto integrate_interval(F&& f, double a, double b, const QuadOptions& opts = {},
                        const std::vector<double>& breakpoints = {}) {
    using T = std::decay_t<decltype(f(a))>;
    if (!(a < b)) throw DomainError("integrate_interval needs a < b");
    std::vector<double> edges{a};
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::Segment<T>, std::vector<detail::Segment<T>>, detail::SegmentOrder<T>> heap;
    std::size_t n_evals = 0;
    T total{};
    double err_total = 0.0;
    bool first = true;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) continue;
        auto seg = detail::gk21<T>(f, edges[i], edges[i + 1]);
        n_evals += 21;
        if (first) {
            total = seg.value;
            first = false;
        } else {
            total += seg.value;
        }
        err_total += seg.err;
        heap.push(std::move(seg));
    }

    std::size_t splits = 0;
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total)); };
    while (err_total > target()) {
        if (splits >= opts.max_subdivisions) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge after " << splits
               << " subdivisions (err_est " << err_total << ")";
            throw QuadratureError<T>(os.str(), QuadResult<T>{total, err_total, n_evals},
                                     detail::magnitude(total));
        }
        auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        auto left = detail::gk21<T>(f, worst.a, mid);
        auto right = detail::gk21<T>(f, mid, worst.b);
        n_evals += 42;
        total += T(left.value + right.value - worst.value);
        err_total += left.err + right.err - worst.err;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++splits;
        if (splits % 64 == 0) {
            // resum to limit drift of the running totals
            auto copy = heap;
            T t = copy.top().value;
            double e = copy.top().err;
            copy.pop();
            while (!copy.empty()) {
                t += copy.top().value;
                e += copy.top().err;
                copy.pop();
            }
            total = t;
            err_total = e;
        }
    }
    return QuadResult<T>{total, err_total, n_evals};
}

// Tanh-sinh rule on [a, b], refined by step halving; independent second rule.
template <class F>
auto integrate_interval_de(F&& f, double a, double b, const QuadOptions& opts = {}) {
    using T = std::decay_t<decltype(f(0.5 * (a + b)))>;
    if (!(a < b)) throw DomainError("integrate_interval_de needs a < b");
    const double c = 0.5 * (a + b), h2 = 0.5 * (b - a);
    const double half_pi = 0.5 * std::numbers::pi;
    const double t_max = 3.2;
    std::size_t n_evals = 0;
    auto node = [&](double t, T& acc) {
        const double sh = half_pi * std::sinh(t);
        const double ch = half_pi * std::cosh(t);
        const double th = std::tanh(sh);
        const double sech = 1.0 / std::cosh(sh);
        const double w = ch * sech * sech;
        // distance from the nearest endpoint, kept exact near the ends
        const double d = 1.0 / (std::exp(2.0 * std::abs(sh)) + 1.0) * 2.0;
        const double xl = th >= 0.0 ? b - h2 * d : a + h2 * d;
        if (!(xl > a && xl < b)) return;
        acc += f(xl) * w;
        ++n_evals;
    };
    double h = 0.5;
    T sum = f(c) * half_pi;
    ++n_evals;
    for (double t = h; t <= t_max; t += h) {
        node(t, sum);
        node(-t, sum);
    }
    T prev = sum * (h * h2);
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            node(t, sum);
            node(-t, sum);
        }
        T cur = sum * (h * h2);
        const double diff = detail::magnitude(T(cur - prev));
        if (level >= 3 && diff <= std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(cur)))
            return QuadResult<T>{cur, diff, n_evals};
        prev = cur;
    }
    std::ostringstream os;
    os << "tanh-sinh quadrature did not converge";
    throw QuadratureError<T>(os.str(), QuadResult<T>{prev, 0.0, n_evals}, detail::magnitude(prev));
}

// int_0^inf f(u) du for integrands decaying at least like exp(-decay_hint u / 2).
// Substitutes u = v / decay_hint and integrates adaptively on [0, V_max] with
// exp(-V_max/2) < rel_tol/10, then checks the tail.
template <class F>
auto integrate_semiinf(F&& f, double decay_hint, const QuadOptions& opts = {}) {
    using T = std::decay_t<decltype(f(1.0))>;
    if (!(decay_hint > 0.0) || !std::isfinite(decay_hint))
        throw DomainError("integrate_semiinf needs a positive decay hint");
    const double lam = decay_hint;
    auto g = [&](double v) -> T { return f(v / lam) * (1.0 / lam); };
    const double v_max = 2.0 * std::log(10.0 / std::max(opts.rel_tol, 1e-15));
    std::vector<double> bps;
    for (int j = 1; j <= 12; ++j) bps.push_back(v_max * std::pow(0.25, j));
    auto res = integrate_interval(g, 0.0, v_max, opts, bps);
    double lo = v_max;
    for (int ext = 0; ext < 12; ++ext) {
        auto tail = integrate_interval(g, lo, 2.0 * lo, opts);
        res.value += tail.value;
        res.err_est += tail.err_est;
        res.n_evals += tail.n_evals;
        const double scale = std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(res.value));
        if (detail::magnitude(tail.value) <= 0.1 * scale) return res;
        lo *= 2.0;
    }
    throw QuadratureError<T>("semi-infinite integrand does not decay at the hinted rate", res,
                             detail::magnitude(res.value));
}

// Exp-sinh double exponential rule on [0, inf) after the same decay-hint scaling.
template <class F>
auto integrate_semiinf_de(F&& f, double decay_hint, const QuadOptions& opts = {}) {
    using T = std::decay_t<decltype(f(1.0))>;
    if (!(decay_hint > 0.0) || !std::isfinite(decay_hint))
        throw DomainError("integrate_semiinf_de needs a positive decay hint");
    const double lam = decay_hint;
    const double half_pi = 0.5 * std::numbers::pi;
    const double t_lo = -4.0, t_hi = 4.0;
    std::size_t n_evals = 0;
    auto node = [&](double t, T& acc) {
        const double e = std::exp(half_pi * std::sinh(t));
        const double w = half_pi * std::cosh(t) * e;
        const T v = f(e / lam);
        ++n_evals;
        const double m = detail::magnitude(v);
        if (std::isfinite(m) && m != 0.0) acc += v * (w / lam);
    };
    double h = 0.5;
    T sum = detail::zero_like(f(1.0 / lam));
    ++n_evals;
    for (double t = t_lo; t <= t_hi + 1e-12; t += h) node(t, sum);
    T prev = sum * h;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        for (double t = t_lo + h; t < t_hi; t += 2.0 * h) node(t, sum);
        T cur = sum * h;
        const double diff = detail::magnitude(T(cur - prev));
        if (level >= 3 && diff <= std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(cur)))
            return QuadResult<T>{cur, diff, n_evals};
        prev = cur;
    }
    throw QuadratureError<T>("exp-sinh quadrature did not converge", QuadResult<T>{prev, 0.0, n_evals},
                             detail::magnitude(prev));
}

namespace detail {

// int_{lo}^{hi} f in chunks of a few oscillation periods
template <class F>
QuadResult<double> integrate_chunked(F& f, double lo, double hi, double chunk, double abs_tol,
                                     double rel_tol) {
    QuadResult<double> out{0.0, 0.0, 0};
    QuadOptions o;
    o.rel_tol = rel_tol;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / chunk));
    o.abs_tol = abs_tol / static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t i = 0; i < n; ++i) {
        const double a = lo + static_cast<double>(i) * chunk;
        const double b = std::min(hi, a + chunk);
        if (!(b > a)) break;
        auto r = integrate_interval(f, a, b, o);
        out.value += r.value;
        out.err_est += r.err_est;
        out.n_evals += r.n_evals;
    }
    return out;
}

}  // namespace detail

// int_0^inf f(k) dk for integrands whose tail is oscillatory and at most slowly
// decaying. exp_damping: weight exp(-eta k), eta in {4,2,1}/k_max, extrapolated
// to eta = 0. cutoff_averaging: mean of the partial integrals int_0^K f over
// K in [k_max, k_max + period].
template <class F>
QuadResult<double> integrate_osc_cutoff(F&& f, double k_max, Regulator regulator,
                                        const OscOptions& opts = {}) {
    if (!(k_max > 0.0)) throw DomainError("integrate_osc_cutoff needs k_max > 0");
    if (!(opts.period > 0.0)) throw DomainError("integrate_osc_cutoff needs a positive period");
    const double chunk = 4.0 * opts.period;
    const double inner_rel = std::min(1e-10, 0.01 * opts.rel_tol);
    const double inner_abs = 0.01 * opts.abs_tol;

    if (regulator == Regulator::exp_damping) {
        const std::vector<double> etas{4.0 / k_max, 2.0 / k_max, 1.0 / k_max};
        std::vector<double> vals;
        double quad_err = 0.0;
        std::size_t n_evals = 0;
        for (double eta : etas) {
            auto g = [&](double k) { return f(k) * std::exp(-eta * k); };
            auto r = detail::integrate_chunked(g, 0.0, 40.0 / eta, chunk, inner_abs, inner_rel);
            vals.push_back(r.value);
            quad_err = std::max(quad_err, r.err_est);
            n_evals += r.n_evals;
        }
        const auto ex = extrapolate_to_zero(etas, vals);
        QuadResult<double> out{ex.value, ex.spread + quad_err, n_evals};
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(ex.value));
        if (ex.spread > 10.0 * target) {
            std::ostringstream os;
            os << "damping extrapolants inconsistent: spread " << ex.spread << " vs target " << target;
            throw QuadratureError<double>(os.str(), out, std::abs(out.value));
        }
        return out;
    }

    auto averaged = [&](double K, std::size_t& evals, double& err) {
        auto head = detail::integrate_chunked(f, 0.0, K, chunk, inner_abs, inner_rel);
        const double P = opts.period;
        auto ramp = [&](double k) { return f(k) * ((K + P - k) / P); };
        QuadOptions o;
        o.rel_tol = inner_rel;
        o.abs_tol = inner_abs;
        auto tail = integrate_interval(ramp, K, K + P, o);
        evals += head.n_evals + tail.n_evals;
        err += head.err_est + tail.err_est;
        return head.value + tail.value;
    };
    std::size_t n_evals = 0;
    double quad_err = 0.0;
    const double a1 = averaged(k_max, n_evals, quad_err);
    const double a0 = averaged(0.5 * k_max, n_evals, quad_err);
    return QuadResult<double>{a1, std::abs(a1 - a0) + quad_err, n_evals};
}

}  // namespace cpdyn

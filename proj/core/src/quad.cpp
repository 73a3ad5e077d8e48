#include "cpdyn/quad.hpp"

#include <map>
#include <mutex>

namespace cpdyn {

namespace {

NodeSet build_gauss_legendre(int n) {
    NodeSet out;
    out.x.resize(static_cast<std::size_t>(n));
    out.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        out.x[lo] = -z;
        out.x[hi] = z;
        out.w[lo] = w;
        out.w[hi] = w;
    }
    if (n % 2 == 1) out.x[static_cast<std::size_t>(n / 2)] = 0.0;
    return out;
}

}  // namespace

const NodeSet& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw DomainError("Gauss-Legendre order must be in [1, 256]");
    static std::mutex mu;
    static std::map<int, NodeSet> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

NodeSet composite_nodes(double a, double b, double max_width, int order,
                        const std::vector<double>& breakpoints, const std::vector<double>& poles,
                        double pole_halfwidth) {
    if (!(a < b)) throw DomainError("composite_nodes needs a < b");
    if (!(max_width > 0.0)) throw DomainError("composite_nodes needs a positive panel width");

    struct Window {
        double lo, p, hi;
    };
    std::vector<Window> windows;
    std::vector<double> inner_poles;
    for (double p : poles)
        if (p > a && p < b) inner_poles.push_back(p);
    std::sort(inner_poles.begin(), inner_poles.end());
    for (std::size_t i = 0; i < inner_poles.size(); ++i) {
        const double p = inner_poles[i];
        double d = std::min({pole_halfwidth, p - a, b - p});
        if (i > 0) d = std::min(d, 0.5 * (p - inner_poles[i - 1]));
        if (i + 1 < inner_poles.size()) d = std::min(d, 0.5 * (inner_poles[i + 1] - p));
        windows.push_back({p - d, p, p + d});
    }

    std::vector<double> edges{a, b};
    for (double q : breakpoints) {
        if (!(q > a && q < b)) continue;
        bool inside = false;
        for (const auto& w : windows)
            if (q > w.lo && q < w.hi) inside = true;
        if (!inside) edges.push_back(q);
    }
    for (const auto& w : windows) {
        edges.push_back(w.lo);
        edges.push_back(w.p);
        edges.push_back(w.hi);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const NodeSet& gl = gauss_legendre(order);
    NodeSet out;
    auto fill = [&](double lo, double hi, std::size_t n) {
        const double width = (hi - lo) / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double pa = lo + static_cast<double>(j) * width;
            const double c = pa + 0.5 * width, h = 0.5 * width;
            for (std::size_t q = 0; q < gl.x.size(); ++q) {
                out.x.push_back(c + h * gl.x[q]);
                out.w.push_back(h * gl.w[q]);
            }
        }
    };
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (!(hi > lo)) continue;
        // pole halves get identical panel counts so their nodes mirror each other
        double len = hi - lo;
        for (const auto& w : windows)
            if ((lo == w.lo && hi == w.p) || (lo == w.p && hi == w.hi)) len = w.p - w.lo;
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_width)));
        fill(lo, hi, n);
    }
    return out;
}

Extrapolation extrapolate_to_zero(const std::vector<double>& eta, const std::vector<double>& values) {
    if (eta.size() != values.size() || eta.size() < 2)
        throw DomainError("extrapolation needs at least two (eta, value) samples");
    const std::size_t n = eta.size();
    std::vector<double> p(values);
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (eta[i + m] * p[i] - eta[i] * p[i + 1]) / (eta[i + m] - eta[i]);

    std::size_t i0 = 0, i1 = 1;
    if (std::abs(eta[i1]) < std::abs(eta[i0])) std::swap(i0, i1);
    for (std::size_t i = 2; i < n; ++i) {
        if (std::abs(eta[i]) < std::abs(eta[i0])) {
            i1 = i0;
            i0 = i;
        } else if (std::abs(eta[i]) < std::abs(eta[i1])) {
            i1 = i;
        }
    }
    const double lower =
        (eta[i1] * values[i0] - eta[i0] * values[i1]) / (eta[i1] - eta[i0]);
    return {p[0], lower, std::abs(p[0] - lower)};
}

}  // namespace cpdyn

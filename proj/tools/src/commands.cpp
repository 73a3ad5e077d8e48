#include "cpdyn_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "cpdyn/acceptance.hpp"
#include "cpdyn/errors.hpp"
#include "cpdyn/parallel.hpp"
#include "cpdyn/tensors.hpp"

namespace cpdyn::cli {

namespace {

int emit(const Table& t, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json)
            write_json(t, os);
        else
            write_csv(t, os);
    };
    if (cfg.out_path.empty() || cfg.out_path == "-") {
        write(out);
        return exit_code::ok;
    }
    std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open '" << cfg.out_path << "' for writing\n";
        return exit_code::io;
    }
    write(f);
    f.flush();
    if (!f) {
        err << "error: failed writing '" << cfg.out_path << "'\n";
        return exit_code::io;
    }
    return exit_code::ok;
}

void warn_validity(const RunConfig& cfg, double t, std::ostream& err) {
    for (const auto& w : validity_check(cfg.params, t)) err << "warning: " << w << '\n';
}

const char* route_name(OracleRoute r) { return r == OracleRoute::mode_sum ? "mode_sum" : "single_sum"; }

}  // namespace

Table point_table(const RunConfig& cfg) {
    const auto b = potential_total(cfg.params, cfg.point_R, cfg.point_t, cfg.eval);
    Table t;
    t.columns = {"R_x", "R_y", "R_z", "t", "x", "tau", "term_resonant", "term_cp_dispersion", "term_dynamic",
                 "total", "reduced_resonant", "reduced_cp_dispersion", "reduced_dynamic", "reduced_total",
                 "energy_unit"};
    t.rows.push_back({cfg.point_R.x(), cfg.point_R.y(), cfg.point_R.z(), cfg.point_t, b.at.x, b.at.tau, b.resonant,
                      b.cp_dispersion, b.dynamic, b.total, b.reduced.resonant, b.reduced.cp_dispersion,
                      b.reduced.dynamic, b.reduced.total, b.energy_unit});
    return t;
}

Table sweep_table(const RunConfig& cfg) {
    Table t;
    t.columns = {"R", "t", "x", "tau", "term_resonant", "term_cp_dispersion", "term_dynamic", "total",
                 "reduced_total", "err_flag"};
    const std::size_t nt = cfg.t_grid.size();
    const std::size_t n = cfg.R_grid.size() * nt;
    t.rows.resize(n);
    parallel_for(n, [&](std::size_t i) {
        const double R = cfg.R_grid[i / nt];
        const double time = cfg.t_grid[i % nt];
        const Vec3 Rv = cfg.sweep_direction * R;
        const ReducedPoint p = reduce(cfg.params, Rv, time);
        std::vector<Cell> row{R, time, p.x, p.tau};
        try {
            const auto b = potential_total(cfg.params, Rv, time, cfg.eval);
            row.insert(row.end(), {b.resonant, b.cp_dispersion, b.dynamic, b.total, b.reduced.total, "ok"});
        } catch (const LightConeError&) {
            row.insert(row.end(), {{}, {}, {}, {}, {}, "light_cone"});
        } catch (const AccuracyError&) {
            row.insert(row.end(), {{}, {}, {}, {}, {}, "accuracy"});
        }
        t.rows[i] = std::move(row);
    });
    return t;
}

int cmd_point(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Table t;
    try {
        warn_validity(cfg, cfg.point_t, err);
        t = point_table(cfg);
    } catch (const LightConeError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    } catch (const AccuracyError& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_estimate() << ", error estimate " << e.err_est()
            << ")\n";
        return exit_code::failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    }
    return emit(t, cfg, out, err);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Table t;
    try {
        warn_validity(cfg, cfg.t_grid.back(), err);
        t = sweep_table(cfg);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    }
    return emit(t, cfg, out, err);
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.oracle_points.size() > kMaxOraclePoints) {
        err << "error: " << cfg.oracle_points.size() << " oracle points requested, at most " << kMaxOraclePoints
            << " allowed\n";
        return exit_code::config;
    }
    if (cfg.oracle.regulator != Regulator::exp_damping) {
        err << "error: the oracles support only oracle.regulator = exp_damping\n";
        return exit_code::config;
    }
    std::vector<OracleRoute> routes;
    if (cfg.oracle_route != OracleRoute::single_sum) routes.push_back(OracleRoute::mode_sum);
    if (cfg.oracle_route != OracleRoute::mode_sum) routes.push_back(OracleRoute::single_sum);

    Table t;
    t.columns = {"x", "tau", "route", "closed_form", "oracle", "deviation", "err_est", "err_flag"};
    bool within = true;
    const double k0 = cfg.params.k0, c = cfg.params.units.c;
    try {
        for (const auto& [x, tau] : cfg.oracle_points) {
            const Vec3 R = cfg.sweep_direction * (x / k0);
            const double time = tau / (c * k0);
            const double cf = potential_total(cfg.params, R, time, cfg.eval).total;
            // acausal points are compared against 0 on the scale of the tau = 2x value
            const bool causal = tau > x;
            const double scale = causal ? std::abs(cf)
                                        : std::abs(potential_total(cfg.params, R, 2.0 * x / (c * k0), cfg.eval).total);
            for (OracleRoute route : routes) {
                std::vector<Cell> row{x, tau, route_name(route), cf};
                if (route == OracleRoute::single_sum && !causal) {
                    row.insert(row.end(), {{}, {}, {}, "not_applicable"});
                    t.rows.push_back(std::move(row));
                    continue;
                }
                QuadResult<double> r;
                std::string flag = "ok";
                try {
                    r = route == OracleRoute::mode_sum ? oracle_mode_sum(cfg.params, R, time, cfg.oracle)
                                                       : oracle_single_sum(cfg.params, R, time, cfg.oracle);
                } catch (const QuadratureError<double>& e) {
                    r = e.best();
                    flag = "accuracy";
                }
                const double dev = std::abs(r.value - (causal ? cf : 0.0)) / scale;
                if (!(dev < cfg.oracle_bound)) within = false;
                row.insert(row.end(), {r.value, dev, r.err_est, flag});
                t.rows.push_back(std::move(row));
            }
        }
    } catch (const LightConeError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config;
    }
    if (const int rc = emit(t, cfg, out, err); rc != exit_code::ok) return rc;
    if (!within) {
        err << "oracle deviation exceeds bound " << cfg.oracle_bound << '\n';
        return exit_code::oracle_deviation;
    }
    return exit_code::ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const double saved = testing::tensor_perturbation();
    testing::set_tensor_perturbation(cfg.check_perturb_tensor);
    const auto results = run_acceptance(cfg.check_only);
    testing::set_tensor_perturbation(saved);

    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << std::setw(2) << r.id << "  " << std::left << std::setw(30) << r.name
            << std::right << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << " s  " << r.detail
            << '\n';
        out.unsetf(std::ios::fixed);
    }
    const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
    out << passed << "/" << results.size() << " criteria passed\n";
    return all ? exit_code::ok : exit_code::failure;
}

}  // namespace cpdyn::cli

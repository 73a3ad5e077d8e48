#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpdyn_cli/commands.hpp"

using namespace cpdyn::cli;

namespace {

struct Common {
    std::string config_path;
    std::string out;
    std::string format;
    std::string only;
    std::string perturb;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "key = value configuration file");
    sub->add_option("--out", c.out, "output path (standard output by default)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->allow_extras();
}

// --section.key value or --section.key=value
void apply_overrides(const std::vector<std::string>& extras, KeyValues& kv) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.find('.') == std::string::npos)
            throw ConfigError("unexpected argument '" + tok + "'");
        std::string key = tok.substr(2), value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key.erase(eq);
        } else {
            if (i + 1 >= extras.size()) throw ConfigError("missing value for '" + tok + "'");
            value = extras[++i];
        }
        kv[key] = value;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-dependent Casimir-Polder potential between an excited and a ground-state atom"};
    app.require_subcommand(1);
    Common common;
    auto* point = app.add_subcommand("point", "evaluate the potential at point.R, point.t");
    auto* sweep = app.add_subcommand("sweep", "evaluate over the sweep.R x sweep.t grid");
    auto* oracle = app.add_subcommand("oracle", "compare the closed form with the mode-sum oracles");
    auto* check = app.add_subcommand("check", "run the acceptance criteria");
    for (auto* sub : {point, sweep, oracle, check}) add_common(sub, common);
    check->add_option("--only", common.only, "comma-separated criterion ids");
    check->add_option("--perturb-tensor", common.perturb, "relative perturbation injected into the tensor formula");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::config;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    try {
        KeyValues kv;
        if (!common.config_path.empty()) kv = read_config_file(common.config_path);
        apply_overrides(sub->remaining(), kv);
        if (!common.out.empty()) kv["output.path"] = common.out;
        if (!common.format.empty()) kv["output.format"] = common.format;
        if (!common.only.empty()) kv["check.only"] = common.only;
        if (!common.perturb.empty()) kv["check.perturb_tensor"] = common.perturb;
        cfg = build_config(kv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config;
    }

    if (sub == point) return cmd_point(cfg, std::cout, std::cerr);
    if (sub == sweep) return cmd_sweep(cfg, std::cout, std::cerr);
    if (sub == oracle) return cmd_oracle(cfg, std::cout, std::cerr);
    return cmd_check(cfg, std::cout, std::cerr);
}

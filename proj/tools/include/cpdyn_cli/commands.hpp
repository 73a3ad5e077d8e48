#pragma once

#include <iosfwd>

#include "cpdyn_cli/config.hpp"
#include "cpdyn_cli/table.hpp"

namespace cpdyn::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int io = 3;
inline constexpr int oracle_deviation = 4;
}  // namespace exit_code

inline constexpr std::size_t kMaxOraclePoints = 16;

// Each command writes its table to cfg.out_path (standard output when empty or
// "-") and diagnostics to err.
int cmd_point(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// plain-text report, always on out
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// the tables behind point and sweep; exceptions from the evaluator propagate
// from point_table, sweep_table flags them per row
Table point_table(const RunConfig& cfg);
Table sweep_table(const RunConfig& cfg);

}  // namespace cpdyn::cli

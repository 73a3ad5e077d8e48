#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace cpdyn::cli {

// empty cell, number or text
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 17 significant digits, scientific, independent of the global locale
std::string format_number(double v);

void write_csv(const Table& t, std::ostream& os);
// array of flat objects keyed by column name; empty cells become null
void write_json(const Table& t, std::ostream& os);

}  // namespace cpdyn::cli

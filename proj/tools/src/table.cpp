#include "cpdyn_cli/table.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace cpdyn::cli {

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::string csv_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos) return *s;
        std::string quoted = "\"";
        for (char ch : *s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + '"';
    }
    return {};
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_text(row[i]);
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
            const Cell& c = row[i];
            if (const auto* d = std::get_if<double>(&c))
                obj[t.columns[i]] = *d;
            else if (const auto* s = std::get_if<std::string>(&c))
                obj[t.columns[i]] = *s;
            else
                obj[t.columns[i]] = nullptr;
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

}  // namespace cpdyn::cli

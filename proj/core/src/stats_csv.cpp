#include "unmac/stats_csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace unmac {
namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <class T>
T parse_field(const std::string& text, std::size_t line, const char* name) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw CsvError(line, std::string("malformed ") + name + " '" + text + "'");
    }
    return value;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_stats_csv(std::ostream& out, const std::vector<sim::ConflictStats>& stats) {
    out << kStatsHeader << '\n';
    for (const auto& s : stats) {
        out << format_number(s.density) << ',' << to_string(s.format) << ',' << format_number(s.dt) << ','
            << s.conflicts << ',' << s.macs << ',' << format_number(s.flight_hours) << ',' << format_number(s.rate())
            << '\n';
    }
}

std::vector<sim::ConflictStats> read_stats_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) {
        throw CsvError(lineno, "missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kStatsHeader) {
        throw CsvError(lineno, "unexpected header '" + line + "'");
    }
    std::vector<sim::ConflictStats> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 7) {
            throw CsvError(lineno, "expected 7 fields, got " + std::to_string(f.size()));
        }
        sim::ConflictStats s;
        s.density = parse_field<double>(f[0], lineno, "lambda");
        const auto format = parse_format(f[1]);
        if (!format) {
            throw CsvError(lineno, "unknown format '" + f[1] + "'");
        }
        s.format = *format;
        s.dt = parse_field<double>(f[2], lineno, "dt");
        s.conflicts = parse_field<std::uint64_t>(f[3], lineno, "conflicts");
        s.macs = parse_field<std::uint64_t>(f[4], lineno, "macs");
        s.flight_hours = parse_field<double>(f[5], lineno, "flight_hours");
        parse_field<double>(f[6], lineno, "rate");
        if (s.flight_hours < 0.0) {
            throw CsvError(lineno, "negative flight hours");
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace unmac

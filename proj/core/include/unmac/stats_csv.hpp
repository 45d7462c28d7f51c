#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "unmac/flightsim.hpp"

namespace unmac {

inline constexpr const char* kStatsHeader = "lambda,format,dt,conflicts,macs,flight_hours,rate";

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Shortest round-trip decimal form of a double.
std::string format_number(double value);

void write_stats_csv(std::ostream& out, const std::vector<sim::ConflictStats>& stats);
// Throws CsvError naming the offending line.
std::vector<sim::ConflictStats> read_stats_csv(std::istream& in);

}  // namespace unmac

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "unmac/distributions.hpp"

namespace unmac {

inline constexpr double kLocalizationUpperBound = 40.0;  // m per UAV when no error is broadcast

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const;
};

// Ground truth for one aircraft.
struct UavProfile {
    double airframe = 1.0;   // d_AF, m, in (0, 7.5]
    double gps_sigma = 1.0;  // m
    int category = 1;        // 1..4
    double speed = 0.0;      // m/s
    double heading = 0.0;    // rad, course over ground

    Vec2 velocity() const;
};

// Throws std::invalid_argument on violated profile invariants.
void validate(const UavProfile& profile);

enum class MessageFormat { StandardRemoteId, Candidate1, Candidate2, Candidate3, PerfectKnowledge };

inline constexpr std::array<MessageFormat, 5> kAllFormats{
    MessageFormat::StandardRemoteId, MessageFormat::Candidate1, MessageFormat::Candidate2,
    MessageFormat::Candidate3,       MessageFormat::PerfectKnowledge,
};

enum class AfPolicy { Max, Actual };
enum class LocPolicy { UpperBound, Reported, None };
enum class MobilityPolicy { SpeedOnly, SpeedAndDirection, None };

struct FormatPolicy {
    AfPolicy af;
    LocPolicy loc;
    MobilityPolicy mobility;
};

constexpr FormatPolicy policy(MessageFormat format) {
    switch (format) {
        case MessageFormat::StandardRemoteId:
            return {AfPolicy::Max, LocPolicy::UpperBound, MobilityPolicy::SpeedOnly};
        case MessageFormat::Candidate1:
            return {AfPolicy::Max, LocPolicy::Reported, MobilityPolicy::SpeedOnly};
        case MessageFormat::Candidate2:
            return {AfPolicy::Actual, LocPolicy::Reported, MobilityPolicy::SpeedOnly};
        case MessageFormat::Candidate3:
            return {AfPolicy::Actual, LocPolicy::Reported, MobilityPolicy::SpeedAndDirection};
        case MessageFormat::PerfectKnowledge:
            break;
    }
    return {AfPolicy::Actual, LocPolicy::None, MobilityPolicy::None};
}

// Stable names used on the command line and in CSV files:
// standard, candidate1, candidate2, candidate3, perfect.
std::string_view to_string(MessageFormat format);
std::optional<MessageFormat> parse_format(std::string_view name);

// Localization errors broadcast by the two aircraft for one encounter. Only
// consulted by formats whose loc policy is Reported.
struct ReportedErrors {
    double first = 0.0;
    double second = 0.0;
};

// Effective terms of the pairwise uNMAC diameter.
struct UncertaintyBudget {
    double eps_i = 0.0;
    double eps_j = 0.0;
    double af_i = 0.0;
    double af_j = 0.0;
    double mobility_term = 0.0;
    double dt = 0.0;

    double diameter() const { return af_i + af_j + 2.0 * (eps_i + eps_j) + mobility_term; }
};

UncertaintyBudget uncertainty_budget(const UavProfile& first, const UavProfile& second, ReportedErrors reported,
                                     double dt, MessageFormat format);

// Per-aircraft uncertainty diameter. eps is whatever localization bound the
// caller's policy yields.
double uncertainty_diameter(const UavProfile& profile, double eps, double dt, bool direction_known);

double unmac_diameter(const UavProfile& first, const UavProfile& second, ReportedErrors reported, double dt,
                      MessageFormat format);

constexpr double r_unmac(double d_unmac) { return d_unmac / 2.0; }
constexpr double r_mac(double af_i, double af_j) { return (af_i + af_j) / 2.0; }

// Range of the direction-known separation radius: [a, a + dt (V_1 + V_2)]
// with a = r_mac + eps_1 + eps_2.
std::pair<double, double> direction_known_bounds(const UavProfile& first, const UavProfile& second,
                                                 ReportedErrors reported, double dt);

}  // namespace unmac

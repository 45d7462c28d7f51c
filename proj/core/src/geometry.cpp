#include "unmac/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace unmac {

double Vec2::norm() const { return std::hypot(x, y); }

Vec2 UavProfile::velocity() const { return {speed * std::cos(heading), speed * std::sin(heading)}; }

void validate(const UavProfile& profile) {
    if (!(profile.airframe > 0.0 && profile.airframe <= kMaxAirframe)) {
        throw std::invalid_argument("airframe diameter must lie in (0, 7.5] m");
    }
    if (!(profile.gps_sigma > 0.0)) {
        throw std::invalid_argument("gps sigma must be positive");
    }
    if (profile.category < 1 || profile.category > 4) {
        throw std::invalid_argument("category must lie in 1..4");
    }
    if (!(profile.speed >= 0.0) || !std::isfinite(profile.speed)) {
        throw std::invalid_argument("speed must be non-negative and finite");
    }
}

std::string_view to_string(MessageFormat format) {
    switch (format) {
        case MessageFormat::StandardRemoteId:
            return "standard";
        case MessageFormat::Candidate1:
            return "candidate1";
        case MessageFormat::Candidate2:
            return "candidate2";
        case MessageFormat::Candidate3:
            return "candidate3";
        case MessageFormat::PerfectKnowledge:
            return "perfect";
    }
    return "unknown";
}

std::optional<MessageFormat> parse_format(std::string_view name) {
    for (auto f : kAllFormats) {
        if (to_string(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

UncertaintyBudget uncertainty_budget(const UavProfile& first, const UavProfile& second, ReportedErrors reported,
                                     double dt, MessageFormat format) {
    if (!(dt >= 0.0)) {
        throw std::invalid_argument("dt must be non-negative");
    }
    const FormatPolicy p = policy(format);
    UncertaintyBudget b;
    b.dt = dt;

    if (p.af == AfPolicy::Max) {
        b.af_i = b.af_j = kMaxAirframe;
    } else {
        b.af_i = first.airframe;
        b.af_j = second.airframe;
    }

    switch (p.loc) {
        case LocPolicy::UpperBound:
            b.eps_i = b.eps_j = kLocalizationUpperBound;
            break;
        case LocPolicy::Reported:
            b.eps_i = reported.first;
            b.eps_j = reported.second;
            break;
        case LocPolicy::None:
            break;
    }

    switch (p.mobility) {
        case MobilityPolicy::SpeedOnly:
            b.mobility_term = 2.0 * (first.speed + second.speed) * dt;
            break;
        case MobilityPolicy::SpeedAndDirection:
            b.mobility_term = (first.velocity() - second.velocity()).norm() * dt;
            break;
        case MobilityPolicy::None:
            break;
    }
    return b;
}

double uncertainty_diameter(const UavProfile& profile, double eps, double dt, bool direction_known) {
    if (!(dt >= 0.0)) {
        throw std::invalid_argument("dt must be non-negative");
    }
    if (direction_known) {
        return profile.airframe + 2.0 * eps + profile.speed * dt;
    }
    return profile.airframe + 2.0 * (eps + profile.speed * dt);
}

double unmac_diameter(const UavProfile& first, const UavProfile& second, ReportedErrors reported, double dt,
                      MessageFormat format) {
    return uncertainty_budget(first, second, reported, dt, format).diameter();
}

std::pair<double, double> direction_known_bounds(const UavProfile& first, const UavProfile& second,
                                                 ReportedErrors reported, double dt) {
    if (!(dt >= 0.0)) {
        throw std::invalid_argument("dt must be non-negative");
    }
    const double a = r_mac(first.airframe, second.airframe) + reported.first + reported.second;
    return {a, a + dt * (first.speed + second.speed)};
}

}  // namespace unmac

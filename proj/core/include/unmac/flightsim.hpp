#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "unmac/geometry.hpp"
#include "unmac/rng.hpp"

namespace unmac::sim {

inline constexpr double kDefaultAreaKm2 = 10.0;

// Constant-velocity leg departing at t = 0.
struct Trajectory {
    Vec2 start;
    Vec2 end;
    double speed = 0.0;  // m/s

    double length() const { return (end - start).norm(); }
    double duration() const { return length() / speed; }
    double heading() const;
    Vec2 velocity() const;
    Vec2 position(double t) const { return start + t * velocity(); }
};

struct SimUav {
    UavProfile profile;
    Trajectory trajectory;
};

struct Scenario {
    double area_side = 0.0;  // m
    double density = 0.0;    // UAV per km^2
    std::size_t n_uav = 0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;  // draw number within a batch
    std::vector<SimUav> uavs;

    double flight_hours() const;
};

// n_uav = round(density * area_km2). Each UAV draws from its own stream keyed
// by (seed, density, index, k). Throws std::invalid_argument if fewer than two
// UAVs result or density <= 0.
Scenario generate_scenario(double density, double area_km2, std::uint64_t seed, double gps_sigma,
                           std::uint64_t index = 0);

struct Cpa {
    double t = 0.0;     // s
    double miss = 0.0;  // m
};

// Closest approach over [0, min(T_i, T_j)].
Cpa cpa(const Trajectory& first, const Trajectory& second);

struct CandidatePair {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    Cpa closest;
};

// Worst-case budget with d_AF,max, eps_max per UAV, v_max per UAV and dt.
UncertaintyBudget worst_case_budget(double v_max, double dt, double eps_max = kLocalizationUpperBound);
// Category-4 maximum airspeed at dt = 1 s: separation radius 190.5 m.
UncertaintyBudget reference_worst_case();
inline double prefilter_threshold(const UncertaintyBudget& worst) { return r_unmac(worst.diameter()); }

// Pairs (i < j) whose CPA miss distance is within the worst-case radius,
// ordered by (i, j).
std::vector<CandidatePair> prefilter(const Scenario& scenario, const UncertaintyBudget& worst, unsigned workers = 1);
// Every pair, unfiltered; the brute-force reference.
std::vector<CandidatePair> all_pairs(const Scenario& scenario);

enum class EpsMode { Sampled, Fixed3Sigma };

// Reported localization errors for pair (i, j) of a scenario, drawn from the
// pair's own stream.
ReportedErrors reported_errors(const Scenario& scenario, const CandidatePair& pair, EpsMode mode);

struct PairEvaluation {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double t_cpa = 0.0;
    double miss = 0.0;
    bool mac = false;
    // conflict[f * dts.size() + d] for formats[f], dts[d].
    std::vector<std::uint8_t> conflict;
};

PairEvaluation evaluate_pair(const Scenario& scenario, const CandidatePair& pair,
                             const std::vector<MessageFormat>& formats, const std::vector<double>& dts,
                             EpsMode mode);

struct SimulationConfig {
    double area_km2 = kDefaultAreaKm2;
    std::vector<double> densities{1.0};
    std::uint64_t trajectory_budget = 100000;
    std::vector<MessageFormat> formats{kAllFormats.begin(), kAllFormats.end()};
    std::vector<double> dts{1.0, 0.02};
    double gps_sigma = 1.9;
    EpsMode eps_mode = EpsMode::Sampled;
    unsigned workers = 1;
    std::uint64_t seed = 1;
    // Keep up to this many r_uNMAC samples per (format, dt) from evaluated pairs.
    std::size_t sample_limit = 0;
    // Polled between scenario draws; results so far are returned as partial.
    const std::atomic<bool>* cancel = nullptr;
};

// Throws std::invalid_argument on an inconsistent configuration.
void validate(const SimulationConfig& config);

struct ConflictStats {
    double density = 0.0;
    MessageFormat format = MessageFormat::StandardRemoteId;
    double dt = 0.0;
    std::uint64_t conflicts = 0;
    std::uint64_t macs = 0;
    double flight_hours = 0.0;

    double rate() const { return flight_hours > 0.0 ? static_cast<double>(conflicts) / flight_hours : 0.0; }
    double mac_rate() const { return flight_hours > 0.0 ? static_cast<double>(macs) / flight_hours : 0.0; }
};

struct DensitySummary {
    double density = 0.0;
    std::uint64_t scenarios = 0;
    std::uint64_t trajectories = 0;
    std::uint64_t pairs_evaluated = 0;
    std::uint64_t macs = 0;
    double flight_hours = 0.0;
};

struct RadiusSample {
    MessageFormat format;
    double dt;
    double r_unmac;
};

struct SimulationResult {
    std::vector<ConflictStats> stats;  // density-major, then format, then dt
    std::vector<DensitySummary> densities;
    std::vector<RadiusSample> samples;
    bool partial = false;
};

SimulationResult run(const SimulationConfig& config);

// Random encounter used by the distribution sampler: categories, speeds,
// airframes, headings and reported errors drawn independently.
struct Encounter {
    UavProfile first;
    UavProfile second;
    ReportedErrors reported;
};

Encounter draw_encounter(StreamRng& rng, double gps_sigma, EpsMode mode);

}  // namespace unmac::sim

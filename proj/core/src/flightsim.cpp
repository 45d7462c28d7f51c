#include "unmac/flightsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "unmac/distributions.hpp"

namespace unmac::sim {
namespace {

constexpr std::uint64_t kUavStream = 1;
constexpr std::uint64_t kPairStream = 2;
// Half-normal tail beyond 8 sigma has probability ~1e-15.
constexpr double kSampledEpsSigmas = 8.0;

std::uint64_t density_bits(double density) { return std::bit_cast<std::uint64_t>(density); }

// Runs fn(begin, end) over [0, n) in chunks pulled from a shared counter.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, std::size_t chunk, Fn&& fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || n <= chunk) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                const std::size_t begin = next.fetch_add(chunk);
                if (begin >= n) break;
                fn(begin, std::min(n, begin + chunk), w);
            }
        });
    }
    for (auto& t : pool) t.join();
}

double eps_bound(const SimulationConfig& config) {
    const double per_uav = config.eps_mode == EpsMode::Sampled ? kSampledEpsSigmas * config.gps_sigma
                                                               : 3.0 * config.gps_sigma;
    return std::max(kLocalizationUpperBound, per_uav);
}

}  // namespace

double Trajectory::heading() const {
    const Vec2 d = end - start;
    return std::atan2(d.y, d.x);
}

Vec2 Trajectory::velocity() const {
    const Vec2 d = end - start;
    return (speed / d.norm()) * d;
}

double Scenario::flight_hours() const {
    double seconds = 0.0;
    for (const auto& u : uavs) seconds += u.trajectory.duration();
    return seconds / 3600.0;
}

Scenario generate_scenario(double density, double area_km2, std::uint64_t seed, double gps_sigma,
                           std::uint64_t index) {
    if (!(density > 0.0)) {
        throw std::invalid_argument("density must be positive");
    }
    if (!(area_km2 > 0.0)) {
        throw std::invalid_argument("area must be positive");
    }
    if (!(gps_sigma > 0.0)) {
        throw std::invalid_argument("gps sigma must be positive");
    }
    const double expected = std::round(density * area_km2);
    if (expected < 2.0) {
        throw std::invalid_argument("density * area yields fewer than two UAVs");
    }

    Scenario s;
    s.area_side = std::sqrt(area_km2) * 1000.0;
    s.density = density;
    s.n_uav = static_cast<std::size_t>(expected);
    s.seed = seed;
    s.index = index;
    s.uavs.reserve(s.n_uav);

    const auto dbits = density_bits(density);
    for (std::size_t k = 0; k < s.n_uav; ++k) {
        StreamRng rng(seed, {kUavStream, dbits, index, k});
        SimUav u;
        u.trajectory.start = {s.area_side * rng.uniform(), s.area_side * rng.uniform()};
        do {
            u.trajectory.end = {s.area_side * rng.uniform(), s.area_side * rng.uniform()};
        } while (u.trajectory.end == u.trajectory.start);
        u.profile.category = sample_category(rng);
        u.profile.speed = sample_speed(SpeedModel::from_category(uav_category(u.profile.category)), rng);
        u.profile.airframe = sample_airframe(rng);
        u.profile.gps_sigma = gps_sigma;
        u.trajectory.speed = u.profile.speed;
        u.profile.heading = u.trajectory.heading();
        s.uavs.push_back(u);
    }
    return s;
}

Cpa cpa(const Trajectory& first, const Trajectory& second) {
    const double window = std::min(first.duration(), second.duration());
    const Vec2 dp = second.start - first.start;
    const Vec2 dv = second.velocity() - first.velocity();
    const double vv = dv.dot(dv);
    double t = 0.0;
    if (vv > 0.0) {
        t = std::clamp(-dp.dot(dv) / vv, 0.0, window);
    }
    return {t, (dp + t * dv).norm()};
}

UncertaintyBudget worst_case_budget(double v_max, double dt, double eps_max) {
    UncertaintyBudget b;
    b.af_i = b.af_j = kMaxAirframe;
    b.eps_i = b.eps_j = eps_max;
    b.mobility_term = 2.0 * (v_max + v_max) * dt;
    b.dt = dt;
    return b;
}

UncertaintyBudget reference_worst_case() { return worst_case_budget(uav_category(4).v_max, 1.0); }

std::vector<CandidatePair> prefilter(const Scenario& scenario, const UncertaintyBudget& worst, unsigned workers) {
    const double threshold = prefilter_threshold(worst);
    const std::size_t n = scenario.uavs.size();
    std::vector<std::vector<CandidatePair>> rows(n);
    parallel_chunks(n, workers, 8, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& ti = scenario.uavs[i].trajectory;
            for (std::size_t j = i + 1; j < n; ++j) {
                const Cpa c = cpa(ti, scenario.uavs[j].trajectory);
                if (c.miss <= threshold) {
                    rows[i].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), c});
                }
            }
        }
    });
    std::vector<CandidatePair> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::vector<CandidatePair> all_pairs(const Scenario& scenario) {
    const std::size_t n = scenario.uavs.size();
    std::vector<CandidatePair> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           cpa(scenario.uavs[i].trajectory, scenario.uavs[j].trajectory)});
        }
    }
    return out;
}

ReportedErrors reported_errors(const Scenario& scenario, const CandidatePair& pair, EpsMode mode) {
    const auto& a = scenario.uavs[pair.i].profile;
    const auto& b = scenario.uavs[pair.j].profile;
    if (mode == EpsMode::Fixed3Sigma) {
        return {3.0 * a.gps_sigma, 3.0 * b.gps_sigma};
    }
    StreamRng rng(scenario.seed, {kPairStream, density_bits(scenario.density), scenario.index, pair.i, pair.j});
    const double first = sample_half_normal(a.gps_sigma, rng);
    const double second = sample_half_normal(b.gps_sigma, rng);
    return {first, second};
}

PairEvaluation evaluate_pair(const Scenario& scenario, const CandidatePair& pair,
                             const std::vector<MessageFormat>& formats, const std::vector<double>& dts,
                             EpsMode mode) {
    const auto& a = scenario.uavs[pair.i].profile;
    const auto& b = scenario.uavs[pair.j].profile;
    PairEvaluation e;
    e.i = pair.i;
    e.j = pair.j;
    e.t_cpa = pair.closest.t;
    e.miss = pair.closest.miss;
    e.mac = e.miss < r_mac(a.airframe, b.airframe);
    e.conflict.resize(formats.size() * dts.size());

    const ReportedErrors reported = reported_errors(scenario, pair, mode);
    for (std::size_t f = 0; f < formats.size(); ++f) {
        for (std::size_t d = 0; d < dts.size(); ++d) {
            const double r = r_unmac(unmac_diameter(a, b, reported, dts[d], formats[f]));
            e.conflict[f * dts.size() + d] = e.miss < r ? 1 : 0;
        }
    }
    return e;
}

void validate(const SimulationConfig& config) {
    if (config.densities.empty() || config.formats.empty() || config.dts.empty()) {
        throw std::invalid_argument("densities, formats and dt list must be non-empty");
    }
    if (!(config.area_km2 > 0.0)) {
        throw std::invalid_argument("area must be positive");
    }
    for (double d : config.densities) {
        if (!(d > 0.0)) throw std::invalid_argument("densities must be positive");
    }
    for (double dt : config.dts) {
        if (!(dt > 0.0)) throw std::invalid_argument("dt values must be positive");
    }
    if (config.trajectory_budget < 1) {
        throw std::invalid_argument("trajectory budget must be positive");
    }
    if (!(config.gps_sigma > 0.0)) {
        throw std::invalid_argument("gps sigma must be positive");
    }
}

SimulationResult run(const SimulationConfig& config) {
    validate(config);
    const std::size_t nf = config.formats.size();
    const std::size_t nd = config.dts.size();
    const double dt_max = std::max(1.0, *std::max_element(config.dts.begin(), config.dts.end()));
    const double eps_max = eps_bound(config);
    const unsigned workers = std::max(1u, config.workers);

    SimulationResult result;
    std::vector<std::size_t> sample_counts(nf * nd, 0);

    for (double density : config.densities) {
        DensitySummary summary;
        summary.density = density;
        std::vector<std::uint64_t> conflicts(nf * nd, 0);

        while (summary.trajectories < config.trajectory_budget) {
            if (config.cancel && config.cancel->load()) {
                result.partial = true;
                break;
            }
            const Scenario scenario =
                generate_scenario(density, config.area_km2, config.seed, config.gps_sigma, summary.scenarios);
            double v_max = uav_category(4).v_max;
            for (const auto& u : scenario.uavs) v_max = std::max(v_max, u.profile.speed);

            const auto pairs = prefilter(scenario, worst_case_budget(v_max, dt_max, eps_max), workers);

            struct Partial {
                std::vector<std::uint64_t> conflicts;
                std::uint64_t macs = 0;
            };
            std::vector<Partial> partials(workers, Partial{std::vector<std::uint64_t>(nf * nd, 0), 0});
            parallel_chunks(pairs.size(), workers, 256, [&](std::size_t begin, std::size_t end, unsigned w) {
                auto& acc = partials[w];
                for (std::size_t k = begin; k < end; ++k) {
                    const auto e = evaluate_pair(scenario, pairs[k], config.formats, config.dts, config.eps_mode);
                    acc.macs += e.mac ? 1 : 0;
                    for (std::size_t c = 0; c < e.conflict.size(); ++c) acc.conflicts[c] += e.conflict[c];
                }
            });
            for (const auto& p : partials) {
                summary.macs += p.macs;
                for (std::size_t c = 0; c < p.conflicts.size(); ++c) conflicts[c] += p.conflicts[c];
            }

            if (config.sample_limit > 0) {
                for (const auto& pair : pairs) {
                    const auto& a = scenario.uavs[pair.i].profile;
                    const auto& b = scenario.uavs[pair.j].profile;
                    const auto reported = reported_errors(scenario, pair, config.eps_mode);
                    bool any = false;
                    for (std::size_t f = 0; f < nf; ++f) {
                        for (std::size_t d = 0; d < nd; ++d) {
                            auto& count = sample_counts[f * nd + d];
                            if (count >= config.sample_limit) continue;
                            ++count;
                            any = true;
                            result.samples.push_back(
                                {config.formats[f], config.dts[d],
                                 r_unmac(unmac_diameter(a, b, reported, config.dts[d], config.formats[f]))});
                        }
                    }
                    if (!any) break;
                }
            }

            summary.flight_hours += scenario.flight_hours();
            summary.trajectories += scenario.uavs.size();
            summary.pairs_evaluated += pairs.size();
            ++summary.scenarios;
        }

        for (std::size_t f = 0; f < nf; ++f) {
            for (std::size_t d = 0; d < nd; ++d) {
                result.stats.push_back({density, config.formats[f], config.dts[d], conflicts[f * nd + d], summary.macs,
                                        summary.flight_hours});
            }
        }
        result.densities.push_back(summary);
        if (result.partial) break;
    }
    return result;
}

Encounter draw_encounter(StreamRng& rng, double gps_sigma, EpsMode mode) {
    Encounter e;
    for (UavProfile* p : {&e.first, &e.second}) {
        p->category = sample_category(rng);
        p->speed = sample_speed(SpeedModel::from_category(uav_category(p->category)), rng);
        p->airframe = sample_airframe(rng);
        p->gps_sigma = gps_sigma;
        p->heading = 2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi;
    }
    if (mode == EpsMode::Fixed3Sigma) {
        e.reported = {3.0 * gps_sigma, 3.0 * gps_sigma};
    } else {
        e.reported.first = sample_half_normal(gps_sigma, rng);
        e.reported.second = sample_half_normal(gps_sigma, rng);
    }
    return e;
}

}  // namespace unmac::sim

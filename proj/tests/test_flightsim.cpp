#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "unmac/flightsim.hpp"

using namespace unmac;
using namespace unmac::sim;

namespace {

Trajectory leg(Vec2 start, Vec2 velocity, double duration) {
    const double speed = velocity.norm();
    return {start, start + duration * velocity, speed};
}

SimUav uav(Trajectory t, double airframe) {
    SimUav u;
    u.trajectory = t;
    u.profile.airframe = airframe;
    u.profile.gps_sigma = 1.9;
    u.profile.category = 1;
    u.profile.speed = t.speed;
    u.profile.heading = t.heading();
    return u;
}

Scenario two_uav_scenario(SimUav a, SimUav b) {
    Scenario s;
    s.area_side = 1000.0;
    s.density = 1.0;
    s.n_uav = 2;
    s.seed = 99;
    s.uavs = {a, b};
    return s;
}

const std::vector<MessageFormat> kFormats{kAllFormats.begin(), kAllFormats.end()};

std::size_t index_of(MessageFormat f) {
    return static_cast<std::size_t>(std::find(kFormats.begin(), kFormats.end(), f) - kFormats.begin());
}

}  // namespace

TEST(Scenario, DeterministicAndSized) {
    const auto a = generate_scenario(1.0, 10.0, 42, 1.9);
    const auto b = generate_scenario(1.0, 10.0, 42, 1.9);
    ASSERT_EQ(a.n_uav, 10u);
    ASSERT_EQ(a.uavs.size(), 10u);
    for (std::size_t k = 0; k < a.uavs.size(); ++k) {
        EXPECT_EQ(a.uavs[k].trajectory.start, b.uavs[k].trajectory.start);
        EXPECT_EQ(a.uavs[k].trajectory.end, b.uavs[k].trajectory.end);
        EXPECT_EQ(a.uavs[k].profile.speed, b.uavs[k].profile.speed);
        EXPECT_EQ(a.uavs[k].profile.airframe, b.uavs[k].profile.airframe);
    }
    const auto c = generate_scenario(1.0, 10.0, 43, 1.9);
    EXPECT_NE(a.uavs[0].trajectory.start, c.uavs[0].trajectory.start);
    EXPECT_NEAR(a.area_side, std::sqrt(10.0) * 1000.0, 1e-9);
}

TEST(Scenario, ProfilesRespectContracts) {
    const auto s = generate_scenario(50.0, 10.0, 7, 1.9);
    ASSERT_EQ(s.uavs.size(), 500u);
    for (const auto& u : s.uavs) {
        EXPECT_NO_THROW(validate(u.profile));
        EXPECT_GT(u.profile.airframe, 0.0);
        EXPECT_LE(u.profile.airframe, 7.5);
        EXPECT_GT(u.profile.speed, 0.0);
        EXPECT_LE(u.profile.speed, SpeedModel::from_category(uav_category(u.profile.category)).upper_cap());
        for (Vec2 p : {u.trajectory.start, u.trajectory.end}) {
            EXPECT_GE(p.x, 0.0);
            EXPECT_LT(p.x, s.area_side);
            EXPECT_GE(p.y, 0.0);
            EXPECT_LT(p.y, s.area_side);
        }
        EXPECT_NEAR(u.trajectory.velocity().norm(), u.profile.speed, 1e-9);
        EXPECT_DOUBLE_EQ(u.trajectory.heading(), u.profile.heading);
    }
    double seconds = 0.0;
    for (const auto& u : s.uavs) seconds += u.trajectory.duration();
    EXPECT_NEAR(s.flight_hours(), seconds / 3600.0, 1e-12);
}

TEST(Scenario, Errors) {
    EXPECT_THROW(generate_scenario(0.1, 10.0, 1, 1.9), std::invalid_argument);
    EXPECT_THROW(generate_scenario(0.0, 10.0, 1, 1.9), std::invalid_argument);
    EXPECT_THROW(generate_scenario(1.0, 10.0, 1, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(generate_scenario(0.2, 10.0, 1, 1.9));
}

TEST(Cpa, ParallelOffset) {
    const auto c = cpa(leg({0, 0}, {10, 0}, 100), leg({0, 50}, {10, 0}, 100));
    EXPECT_DOUBLE_EQ(c.t, 0.0);
    EXPECT_NEAR(c.miss, 50.0, 1e-12);
}

TEST(Cpa, HeadOn) {
    const auto c = cpa(leg({0, 0}, {10, 0}, 20), leg({100, 0}, {-10, 0}, 20));
    EXPECT_NEAR(c.t, 5.0, 1e-12);
    EXPECT_NEAR(c.miss, 0.0, 1e-9);
}

TEST(Cpa, Crossing) {
    const auto c = cpa(leg({0, 0}, {10, 0}, 20), leg({50, -50}, {0, 10}, 20));
    EXPECT_NEAR(c.t, 5.0, 1e-12);
    EXPECT_NEAR(c.miss, 0.0, 1e-9);
}

TEST(Cpa, ClampedToShorterLeg) {
    // The second UAV lands at t = 2 before the tracks would meet at t = 5.
    const auto c = cpa(leg({0, 0}, {10, 0}, 20), leg({100, 0}, {-10, 0}, 2));
    EXPECT_DOUBLE_EQ(c.t, 2.0);
    EXPECT_NEAR(c.miss, 60.0, 1e-9);
}

TEST(Cpa, DivergingTracksMeetAtStart) {
    const auto c = cpa(leg({0, 0}, {-10, 0}, 20), leg({30, 40}, {10, 0}, 20));
    EXPECT_DOUBLE_EQ(c.t, 0.0);
    EXPECT_NEAR(c.miss, 50.0, 1e-12);
}

TEST(Cpa, MatchesDenseGrid) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> pos(0.0, 500.0), vel(-30.0, 30.0), dur(1.0, 20.0);
    for (int k = 0; k < 500; ++k) {
        const Vec2 pa{pos(rng), pos(rng)}, pb{pos(rng), pos(rng)};
        const Vec2 va{vel(rng), vel(rng)}, vb{vel(rng), vel(rng)};
        const double ta = dur(rng), tb = dur(rng);
        const auto c = cpa(leg(pa, va, ta), leg(pb, vb, tb));
        const double grid = oracle::grid_min_distance({pa.x, pa.y, va.x, va.y, ta}, {pb.x, pb.y, vb.x, vb.y, tb}, 1e-3);
        ASSERT_LE(c.miss, grid + 1e-9);
        ASSERT_NEAR(c.miss, grid, 0.05);
    }
}

TEST(Prefilter, ReferenceThreshold) {
    EXPECT_DOUBLE_EQ(prefilter_threshold(reference_worst_case()), 190.5);
    EXPECT_DOUBLE_EQ(prefilter_threshold(worst_case_budget(51.5, 1.0, 40.0)), 190.5);
}

TEST(Prefilter, FarPairExcluded) {
    auto s = two_uav_scenario(uav(leg({0, 0}, {10, 0}, 100), 1.0), uav(leg({0, 500}, {10, 0}, 100), 1.0));
    EXPECT_TRUE(prefilter(s, reference_worst_case()).empty());
    s.uavs[1].trajectory = leg({0, 150}, {10, 0}, 100);
    EXPECT_EQ(prefilter(s, reference_worst_case()).size(), 1u);
}

TEST(Prefilter, RecallAgainstAllPairs) {
    const std::vector<double> dts{1.0, 0.1, 0.02};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = generate_scenario(100.0, 10.0, seed, 1.9);
        double v_max = 51.5;
        for (const auto& u : s.uavs) v_max = std::max(v_max, u.profile.speed);
        const auto filtered = prefilter(s, worst_case_budget(v_max, 1.0, 40.0), 2);
        std::size_t next = 0;
        for (const auto& p : all_pairs(s)) {
            const auto e = evaluate_pair(s, p, kFormats, dts, EpsMode::Sampled);
            const bool flagged = e.mac || std::any_of(e.conflict.begin(), e.conflict.end(), [](auto c) { return c; });
            const bool kept = next < filtered.size() && filtered[next].i == p.i && filtered[next].j == p.j;
            if (kept) {
                const auto f = evaluate_pair(s, filtered[next], kFormats, dts, EpsMode::Sampled);
                ASSERT_EQ(f.conflict, e.conflict);
                ASSERT_EQ(f.mac, e.mac);
                ++next;
            } else {
                ASSERT_FALSE(flagged) << "seed " << seed << " pair " << p.i << "," << p.j;
            }
        }
        EXPECT_EQ(next, filtered.size());
    }
}

TEST(Prefilter, WorkerCountDoesNotChangeOutput) {
    const auto s = generate_scenario(60.0, 10.0, 3, 1.9);
    const auto a = prefilter(s, reference_worst_case(), 1);
    const auto b = prefilter(s, reference_worst_case(), 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].i, b[k].i);
        EXPECT_EQ(a[k].j, b[k].j);
        EXPECT_EQ(a[k].closest.miss, b[k].closest.miss);
    }
}

TEST(EvaluatePair, CollisionFlagsEveryFormat) {
    const auto s = two_uav_scenario(uav(leg({0, 0}, {10, 0}, 20), 2.0), uav(leg({100, 0}, {-10, 0}, 20), 2.0));
    const auto pairs = all_pairs(s);
    const auto e = evaluate_pair(s, pairs[0], kFormats, {1.0, 0.02}, EpsMode::Sampled);
    EXPECT_TRUE(e.mac);
    for (auto c : e.conflict) EXPECT_EQ(c, 1);
    EXPECT_NEAR(e.t_cpa, 5.0, 1e-12);
}

TEST(EvaluatePair, HundredMetreMiss) {
    const auto s = two_uav_scenario(uav(leg({0, 0}, {0.01, 0}, 1000), 7.5), uav(leg({0, 100}, {0.01, 0}, 1000), 7.5));
    const auto pairs = all_pairs(s);
    ASSERT_NEAR(pairs[0].closest.miss, 100.0, 1e-9);
    const std::vector<double> dts{1.0};
    const auto e = evaluate_pair(s, pairs[0], kFormats, dts, EpsMode::Fixed3Sigma);
    EXPECT_FALSE(e.mac);
    EXPECT_EQ(e.conflict[index_of(MessageFormat::PerfectKnowledge)], 0);
    // r = 87.5 + 0.02 m: still short of 100 m without mobility.
    EXPECT_EQ(e.conflict[index_of(MessageFormat::StandardRemoteId)], 0);

    auto fast = s;
    for (auto& u : fast.uavs) {
        u.trajectory = leg(u.trajectory.start, {12.9, 0}, 100);
        u.profile.speed = 12.9;
    }
    const auto fp = all_pairs(fast);
    const auto ef = evaluate_pair(fast, fp[0], kFormats, dts, EpsMode::Fixed3Sigma);
    EXPECT_EQ(ef.conflict[index_of(MessageFormat::StandardRemoteId)], 1);
    EXPECT_EQ(ef.conflict[index_of(MessageFormat::PerfectKnowledge)], 0);
}

TEST(EvaluatePair, ReportedErrorsArePairKeyed) {
    const auto s = generate_scenario(20.0, 10.0, 5, 1.9);
    const CandidatePair p{3, 17, {}};
    const auto a = reported_errors(s, p, EpsMode::Sampled);
    const auto b = reported_errors(s, p, EpsMode::Sampled);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
    const auto c = reported_errors(s, {3, 18, {}}, EpsMode::Sampled);
    EXPECT_NE(a.first, c.first);
    const auto fixed = reported_errors(s, p, EpsMode::Fixed3Sigma);
    EXPECT_NEAR(fixed.first, 5.7, 1e-12);
    EXPECT_NEAR(fixed.second, 5.7, 1e-12);
}

TEST(Run, ZeroDensityGuard) {
    SimulationConfig c;
    c.area_km2 = 1e6;
    c.densities = {2e-6};
    c.trajectory_budget = 1000;
    const auto r = run(c);
    for (const auto& s : r.stats) {
        EXPECT_GT(s.flight_hours, 0.0);
        EXPECT_LT(s.rate(), 1e-3);
    }
}

TEST(Run, InvariantsOnSmallSweep) {
    SimulationConfig c;
    c.densities = {20.0, 50.0};
    c.trajectory_budget = 5000;
    c.dts = {1.0, 0.1, 0.02};
    c.workers = 2;
    const auto r = run(c);
    ASSERT_EQ(r.stats.size(), 2u * kFormats.size() * 3u);
    ASSERT_FALSE(r.partial);
    const std::size_t nd = c.dts.size();
    for (std::size_t di = 0; di < 2; ++di) {
        const auto* block = &r.stats[di * kFormats.size() * nd];
        auto at = [&](MessageFormat f, std::size_t d) { return block[index_of(f) * nd + d]; };
        const auto macs = block[0].macs;
        for (std::size_t k = 0; k < kFormats.size() * nd; ++k) {
            EXPECT_EQ(block[k].macs, macs);
            EXPECT_EQ(block[k].flight_hours, block[0].flight_hours);
        }
        for (std::size_t d = 0; d < nd; ++d) {
            EXPECT_EQ(at(MessageFormat::PerfectKnowledge, d).conflicts, macs);
            EXPECT_LE(at(MessageFormat::PerfectKnowledge, d).conflicts, at(MessageFormat::Candidate3, d).conflicts);
            EXPECT_LE(at(MessageFormat::Candidate3, d).conflicts, at(MessageFormat::Candidate2, d).conflicts);
            EXPECT_LE(at(MessageFormat::Candidate2, d).conflicts, at(MessageFormat::Candidate1, d).conflicts);
            EXPECT_LE(at(MessageFormat::Candidate1, d).conflicts, at(MessageFormat::StandardRemoteId, d).conflicts);
        }
        for (auto f : kFormats) {
            for (std::size_t d = 1; d < nd; ++d) EXPECT_LE(at(f, d).conflicts, at(f, d - 1).conflicts);
        }
        EXPECT_GT(at(MessageFormat::StandardRemoteId, 0).conflicts, 0u);
    }
    EXPECT_GE(r.densities[0].trajectories, 5000u);
}

TEST(Run, DeterministicAcrossWorkerCounts) {
    SimulationConfig c;
    c.densities = {30.0};
    c.trajectory_budget = 3000;
    c.workers = 1;
    const auto a = run(c);
    c.workers = 3;
    const auto b = run(c);
    ASSERT_EQ(a.stats.size(), b.stats.size());
    for (std::size_t k = 0; k < a.stats.size(); ++k) {
        EXPECT_EQ(a.stats[k].conflicts, b.stats[k].conflicts);
        EXPECT_EQ(a.stats[k].macs, b.stats[k].macs);
        EXPECT_EQ(a.stats[k].flight_hours, b.stats[k].flight_hours);
    }
}

TEST(Run, SampleDumpAndCancel) {
    SimulationConfig c;
    c.densities = {20.0};
    c.trajectory_budget = 1000;
    c.sample_limit = 50;
    const auto r = run(c);
    EXPECT_EQ(r.samples.size(), 50u * kFormats.size() * c.dts.size());

    std::atomic<bool> stop{true};
    c.cancel = &stop;
    const auto partial = run(c);
    EXPECT_TRUE(partial.partial);
}

TEST(Run, ConfigValidation) {
    SimulationConfig c;
    c.dts = {};
    EXPECT_THROW(run(c), std::invalid_argument);
    c = SimulationConfig{};
    c.densities = {-1.0};
    EXPECT_THROW(run(c), std::invalid_argument);
    c = SimulationConfig{};
    c.dts = {0.0};
    EXPECT_THROW(run(c), std::invalid_argument);
}

TEST(Encounter, DrawsAreValid) {
    StreamRng rng(stream_key(1, {3, 0}));
    for (int k = 0; k < 10000; ++k) {
        const auto e = draw_encounter(rng, 1.9, EpsMode::Sampled);
        ASSERT_NO_THROW(validate(e.first));
        ASSERT_NO_THROW(validate(e.second));
        ASSERT_GE(e.reported.first, 0.0);
        ASSERT_GE(e.first.heading, -std::numbers::pi);
        ASSERT_LT(e.first.heading, std::numbers::pi);
    }
    const auto f = draw_encounter(rng, 2.0, EpsMode::Fixed3Sigma);
    EXPECT_DOUBLE_EQ(f.reported.first, 6.0);
}

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "unmac/distributions.hpp"
#include "unmac/stats_csv.hpp"

namespace unmac::cli {

void validate(const RunConfig& config) {
    if (config.lambdas.empty()) throw std::invalid_argument("lambda list must be non-empty");
    if (config.formats.empty()) throw std::invalid_argument("format list must be non-empty");
    if (config.dts.empty()) throw std::invalid_argument("dt list must be non-empty");
    if (config.trajectory_budget < 1000) throw std::invalid_argument("trajectory budget must be at least 1000");
    if (!(config.area_km2 > 0.0)) throw std::invalid_argument("area must be positive");
    if (!(config.gps.three_sigma > 0.0)) throw std::invalid_argument("gps 3-sigma must be positive");
    for (double l : config.lambdas) {
        if (!(l > 0.0)) throw std::invalid_argument("lambda values must be positive");
    }
    for (double dt : config.dts) {
        if (!(dt > 0.0)) throw std::invalid_argument("dt values must be positive");
    }
    if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");
}

sim::SimulationConfig to_simulation_config(const RunConfig& config) {
    validate(config);
    sim::SimulationConfig s;
    s.area_km2 = config.area_km2;
    s.densities = config.lambdas;
    s.trajectory_budget = config.trajectory_budget;
    s.formats = config.formats;
    s.dts = config.dts;
    s.gps_sigma = config.gps.sigma();
    s.eps_mode = config.eps_mode;
    s.workers = config.workers;
    s.seed = config.seed;
    return s;
}

std::string to_ini(const RunConfig& config) {
    auto list = [](const auto& values, auto&& fmt) {
        std::string out = "[";
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k > 0) out += ',';
            out += fmt(values[k]);
        }
        return out + "]";
    };
    const auto num = [](double v) { return format_number(v); };
    const auto fmt_name = [](MessageFormat f) { return std::string(to_string(f)); };
    std::string gps = config.gps.name;
    if (gps.rfind("sigma=", 0) == 0) gps = gps.substr(6);

    std::ostringstream os;
    os << "# resolved run configuration\n"
       << "seed=" << config.seed << '\n'
       << "area_km2=" << format_number(config.area_km2) << '\n'
       << "lambda_list=" << list(config.lambdas, num) << '\n'
       << "trajectory_budget=" << config.trajectory_budget << '\n'
       << "formats=" << list(config.formats, fmt_name) << '\n'
       << "dt_list=" << list(config.dts, num) << '\n'
       << "gps_standard=" << gps << '\n'
       << "eps_mode=" << to_string(config.eps_mode) << '\n'
       << "workers=" << config.workers << '\n'
       << "output_dir=\"" << config.out_dir << "\"\n";
    return os.str();
}

std::optional<sim::EpsMode> parse_eps_mode(const std::string& text) {
    if (text == "sampled") return sim::EpsMode::Sampled;
    if (text == "fixed-3sigma" || text == "fixed_3sigma") return sim::EpsMode::Fixed3Sigma;
    return std::nullopt;
}

std::string to_string(sim::EpsMode mode) { return mode == sim::EpsMode::Sampled ? "sampled" : "fixed-3sigma"; }

GpsAccuracyStandard parse_gps_standard(const std::string& text) {
    if (auto named = find_gps_standard(text)) {
        return *named;
    }
    std::size_t used = 0;
    double sigma = 0.0;
    try {
        sigma = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || used == 0) {
        throw std::invalid_argument("unknown GPS standard '" + text +
                                    "' (expected zero-aod, all-aod, any-aod, worst-case or a sigma in m)");
    }
    return make_gps_standard("sigma=" + text, 3.0 * sigma);
}

std::optional<PdfComponent> parse_component(const std::string& text) {
    if (text == "airframe") return PdfComponent::Airframe;
    if (text == "localization") return PdfComponent::Localization;
    if (text == "mobility") return PdfComponent::Mobility;
    if (text == "direction") return PdfComponent::Direction;
    return std::nullopt;
}

double Grid::at(std::size_t k) const {
    if (count == 1) return from;
    return from + (to - from) * static_cast<double>(k) / static_cast<double>(count - 1);
}

Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) {
        throw std::invalid_argument("grid must be from:to:count, got '" + text + "'");
    }
    Grid g;
    try {
        std::size_t u0 = 0, u1 = 0, u2 = 0;
        g.from = std::stod(parts[0], &u0);
        g.to = std::stod(parts[1], &u1);
        const long long count = std::stoll(parts[2], &u2);
        if (u0 != parts[0].size() || u1 != parts[1].size() || u2 != parts[2].size() || count < 2) {
            throw std::invalid_argument("bad");
        }
        g.count = static_cast<std::size_t>(count);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must be from:to:count with count >= 2, got '" + text + "'");
    }
    if (!(g.to > g.from)) {
        throw std::invalid_argument("grid requires to > from");
    }
    return g;
}

namespace {

MobilityExpansion make_mobility(const PdfRequest& r) {
    return MobilityExpansion(r.dt, SpeedModel::from_category(uav_category(r.category_i)),
                             SpeedModel::from_category(uav_category(r.category_j)), r.direction_known);
}

}  // namespace

Grid default_grid(const PdfRequest& r) {
    switch (r.component) {
        case PdfComponent::Airframe:
            return {0.0, r.af_max, 151};
        case PdfComponent::Localization:
            return {0.0, sum_half_normal_upper(r.sigma_i, r.sigma_j), 1201};
        case PdfComponent::Mobility: {
            const auto m = make_mobility(r);
            const double reach = m.gaussian_mean() + 6.0 * m.gaussian_sd();
            if (r.direction_known) return {reach / 1000.0, reach, 1000};
            return {m.gaussian_mean() - 6.0 * m.gaussian_sd(), reach, 1201};
        }
        case PdfComponent::Direction:
            return {-0.999, 0.999, 1001};
    }
    return {};
}

std::vector<std::pair<double, double>> pdf_rows(const PdfRequest& r) {
    const Grid g = r.grid.value_or(default_grid(r));
    if (r.component == PdfComponent::Direction && (g.from <= -1.0 || g.to >= 1.0)) {
        throw std::invalid_argument("direction grid must lie strictly inside (-1, 1)");
    }
    if (r.component == PdfComponent::Mobility && r.direction_known && g.from <= 0.0) {
        throw std::invalid_argument("direction-known mobility grid must start above 0 (density is singular at 0)");
    }

    std::function<double(double)> f;
    std::optional<MobilityExpansion> mobility;
    switch (r.component) {
        case PdfComponent::Airframe:
            f = [&](double x) { return triangle_af_pdf(x, r.af_max); };
            break;
        case PdfComponent::Localization:
            f = [&](double x) { return sum_half_normal_pdf(x, r.sigma_i, r.sigma_j); };
            break;
        case PdfComponent::Mobility:
            mobility.emplace(make_mobility(r));
            f = [&](double x) { return mobility->pdf(x); };
            break;
        case PdfComponent::Direction:
            f = [](double x) { return direction_factor_pdf(x); };
            break;
    }

    std::vector<std::pair<double, double>> rows;
    rows.reserve(g.count);
    for (std::size_t k = 0; k < g.count; ++k) {
        const double x = g.at(k);
        rows.emplace_back(x, f(x));
    }
    return rows;
}

void write_xy_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows) {
    out << "x,f\n";
    for (const auto& [x, f] : rows) out << format_number(x) << ',' << format_number(f) << '\n';
}

std::vector<RadiusDraw> unmac_samples(const RunConfig& config, std::size_t n) {
    validate(config);
    std::vector<RadiusDraw> out;
    out.reserve(n * config.formats.size() * config.dts.size());
    std::vector<sim::Encounter> encounters;
    encounters.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        StreamRng rng(config.seed, {3, k});
        encounters.push_back(sim::draw_encounter(rng, config.gps.sigma(), config.eps_mode));
    }
    for (auto format : config.formats) {
        for (double dt : config.dts) {
            for (const auto& e : encounters) {
                out.push_back({format, dt, r_unmac(unmac_diameter(e.first, e.second, e.reported, dt, format))});
            }
        }
    }
    return out;
}

void write_unmac_csv(std::ostream& out, const std::vector<RadiusDraw>& draws) {
    out << "format,dt,sample\n";
    for (const auto& d : draws) {
        out << to_string(d.format) << ',' << format_number(d.dt) << ',' << format_number(d.r_unmac) << '\n';
    }
}

std::string summarize(const sim::SimulationResult& result) {
    std::ostringstream os;
    os << std::fixed;
    if (result.partial) {
        os << "NOTE: run interrupted; results below cover completed scenarios only\n\n";
    }
    for (const auto& d : result.densities) {
        os << "lambda=" << format_number(d.density) << " UAV/km^2: " << d.scenarios << " scenarios, "
           << d.trajectories << " trajectories, " << std::setprecision(2) << d.flight_hours << " flight hours, "
           << d.pairs_evaluated << " pairs within the prefilter radius, " << d.macs << " MACs\n";
        const double mac_rate = d.flight_hours > 0.0 ? static_cast<double>(d.macs) / d.flight_hours : 0.0;
        os << "  MAC rate " << std::setprecision(6) << mac_rate << " /h\n";
        os << "  " << std::left << std::setw(12) << "format" << std::right << std::setw(10) << "dt" << std::setw(14)
           << "conflicts" << std::setw(16) << "rate /h" << std::setw(12) << "vs MAC" << '\n';
        for (const auto& s : result.stats) {
            if (s.density != d.density) continue;
            os << "  " << std::left << std::setw(12) << to_string(s.format) << std::right << std::setw(10)
               << format_number(s.dt) << std::setw(14) << s.conflicts << std::setw(16) << std::setprecision(6)
               << s.rate() << std::setw(12) << std::setprecision(3)
               << (s.macs > 0 ? static_cast<double>(s.conflicts) / static_cast<double>(s.macs) : 0.0) << '\n';
        }
        for (const auto& s : result.stats) {
            if (s.density == d.density && s.format == MessageFormat::StandardRemoteId && s.macs > 0) {
                os << "  standard/MAC ratio at dt=" << format_number(s.dt) << ": " << std::setprecision(3)
                   << static_cast<double>(s.conflicts) / static_cast<double>(s.macs) << '\n';
            }
        }
        os << '\n';
    }
    return os.str();
}

CompareReport compare(const std::vector<sim::ConflictStats>& stats, double noise_sigmas) {
    // Nominal order, most to least informed.
    static constexpr std::array<MessageFormat, 5> kOrder{
        MessageFormat::PerfectKnowledge, MessageFormat::Candidate3, MessageFormat::Candidate2,
        MessageFormat::Candidate1,       MessageFormat::StandardRemoteId,
    };
    auto rank_of = [](MessageFormat f) {
        return static_cast<std::size_t>(std::find(kOrder.begin(), kOrder.end(), f) - kOrder.begin());
    };

    std::map<std::pair<double, double>, std::vector<sim::ConflictStats>> groups;
    for (const auto& s : stats) groups[{s.density, s.dt}].push_back(s);

    CompareReport report;
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed;
    for (auto& [key, rows] : groups) {
        const auto [density, dt] = key;
        os << "lambda=" << format_number(density) << " dt=" << format_number(dt) << '\n';

        for (const auto& r : rows) {
            if (r.macs != rows.front().macs || r.flight_hours != rows.front().flight_hours) {
                report.violations.push_back("lambda=" + format_number(density) + " dt=" + format_number(dt) +
                                            ": MAC count or flight hours differ between formats");
                break;
            }
        }

        auto nominal = rows;
        std::sort(nominal.begin(), nominal.end(),
                  [&](const auto& a, const auto& b) { return rank_of(a.format) < rank_of(b.format); });
        for (std::size_t k = 1; k < nominal.size(); ++k) {
            if (nominal[k].conflicts < nominal[k - 1].conflicts) {
                report.violations.push_back("lambda=" + format_number(density) + " dt=" + format_number(dt) + ": " +
                                            std::string(to_string(nominal[k - 1].format)) + " has more conflicts than " +
                                            std::string(to_string(nominal[k].format)));
            }
        }
        for (const auto& r : rows) {
            if (r.format == MessageFormat::PerfectKnowledge && r.conflicts != r.macs) {
                report.violations.push_back("lambda=" + format_number(density) + " dt=" + format_number(dt) +
                                            ": perfect-knowledge conflicts differ from MAC count");
            }
        }

        auto ranked = rows;
        std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
            if (a.conflicts != b.conflicts) return a.conflicts < b.conflicts;
            return rank_of(a.format) < rank_of(b.format);
        });
        std::size_t place = 1;
        for (std::size_t k = 0; k < ranked.size(); ++k) {
            bool tied = false;
            if (k > 0) {
                const double na = static_cast<double>(ranked[k - 1].conflicts);
                const double nb = static_cast<double>(ranked[k].conflicts);
                tied = std::abs(nb - na) <= noise_sigmas * std::sqrt(na + nb);
                if (!tied) place = k + 1;
            }
            os << "  " << place << (tied ? "=" : " ") << ' ' << std::left << std::setw(12)
               << to_string(ranked[k].format) << std::right << " rate " << ranked[k].rate() << " /h ("
               << ranked[k].conflicts << " conflicts)" << (tied ? "  tied within noise band" : "") << '\n';
        }
    }
    for (const auto& v : report.violations) os << "ORDERING VIOLATION: " << v << '\n';
    report.text = os.str();
    return report;
}

}  // namespace unmac::cli

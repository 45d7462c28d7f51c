#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "unmac/remoteid.hpp"
#include "unmac/stats_csv.hpp"

namespace unmac::cli {
namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RawFlags {
    std::uint64_t seed = 1;
    double area_km2 = sim::kDefaultAreaKm2;
    std::vector<double> lambdas{1.0, 5.0, 10.0, 20.0, 50.0};
    std::uint64_t budget = 100000;
    std::vector<std::string> formats{"standard", "candidate1", "candidate2", "candidate3", "perfect"};
    std::vector<double> dts{1.0, 0.02};
    std::string tech;
    double loc_dt = 0.0;
    std::string gps_standard = "zero-aod";
    std::string eps_mode = "sampled";
    unsigned workers = 1;
    std::string out;
};

RunConfig resolve(const RawFlags& raw, bool dt_given) {
    RunConfig c;
    c.seed = raw.seed;
    c.area_km2 = raw.area_km2;
    c.lambdas = raw.lambdas;
    c.trajectory_budget = raw.budget;
    c.formats.clear();
    for (const auto& name : raw.formats) {
        const auto f = parse_format(name);
        if (!f) throw CLI::ValidationError("--formats", "unknown format '" + name + "'");
        c.formats.push_back(*f);
    }
    c.dts = raw.dts;
    if (!raw.tech.empty()) {
        const auto profile = remoteid::find_broadcast_profile(raw.tech);
        if (!profile) throw CLI::ValidationError("--tech", "unknown technology '" + raw.tech + "'");
        if (!dt_given) {
            const double com = profile->dt_com;
            c.dts = {raw.loc_dt > 0.0 ? remoteid::effective_interval(raw.loc_dt, com) : com};
        }
    } else if (raw.loc_dt > 0.0 && !dt_given) {
        c.dts = {raw.loc_dt};
    }
    try {
        c.gps = parse_gps_standard(raw.gps_standard);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--gps-standard", e.what());
    }
    const auto mode = parse_eps_mode(raw.eps_mode);
    if (!mode) throw CLI::ValidationError("--eps-mode", "expected sampled or fixed-3sigma");
    c.eps_mode = *mode;
    c.workers = raw.workers;
    c.out_dir = raw.out.empty() ? "." : raw.out;
    try {
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("config", e.what());
    }
    return c;
}

std::filesystem::path prepare_out(const RunConfig& c) {
    std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "config.ini") << to_ini(c);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"uNMAC separation volumes and Remote ID candidate simulator", "unmac"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML config file; flags override file values");

    RawFlags raw;
    app.add_option("--seed", raw.seed, "Root RNG seed")->capture_default_str();
    app.add_option("--area-km2,--area_km2", raw.area_km2, "Square simulation area in km^2")->capture_default_str();
    app.add_option("--lambda,--lambda_list", raw.lambdas, "UAV densities per km^2")->capture_default_str();
    app.add_option("--budget,--trajectory_budget", raw.budget, "Trajectories per density")->capture_default_str();
    app.add_option("--formats", raw.formats, "standard candidate1 candidate2 candidate3 perfect")
        ->capture_default_str();
    auto* dt_opt = app.add_option("--dt,--dt_list", raw.dts, "Update intervals in s")->capture_default_str();
    app.add_option("--tech", raw.tech,
                   "Broadcast technology: bluetooth-le bluetooth lora flarm wifi-ssid 5g-nr-sidelink");
    app.add_option("--loc-dt,--loc_dt", raw.loc_dt, "Localization update interval in s (combined with --tech)");
    app.add_option("--gps-standard,--gps_standard", raw.gps_standard,
                   "zero-aod all-aod any-aod worst-case, or sigma in m")
        ->capture_default_str();
    app.add_option("--eps-mode,--eps_mode", raw.eps_mode, "sampled or fixed-3sigma")->capture_default_str();
    app.add_option("--workers", raw.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out,--output_dir", raw.out, "Output directory");

    auto* pdf = app.add_subcommand("pdf", "Dump a component density as x,f CSV");
    std::string component;
    std::string grid;
    PdfRequest pdf_req;
    std::optional<double> sigma_i, sigma_j;
    std::vector<int> categories{1, 1};
    pdf->add_option("component", component, "airframe localization mobility direction")->required();
    pdf->add_option("--grid", grid, "from:to:count");
    pdf->add_option("--af-max", pdf_req.af_max, "Largest airframe in m")->capture_default_str();
    pdf->add_option("--sigma-i", sigma_i, "GPS sigma of the first UAV (default from --gps-standard)");
    pdf->add_option("--sigma-j", sigma_j, "GPS sigma of the second UAV (default from --gps-standard)");
    pdf->add_option("--categories", categories, "Speed categories of the pair")->expected(2)->capture_default_str();
    pdf->add_flag("--direction-known", pdf_req.direction_known, "Mobility with broadcast direction");

    auto* dist = app.add_subcommand("unmac-dist", "Monte Carlo r_uNMAC samples per format and dt");
    std::size_t samples = 10000;
    dist->add_option("--samples", samples, "Encounters to draw")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Run the density sweep and write stats.csv");
    std::size_t dump_samples = 0;
    simulate->add_option("--dump-samples", dump_samples, "Also write up to N r_uNMAC samples per format/dt");

    auto* cmp = app.add_subcommand("compare", "Rank formats from a stats CSV");
    std::string csv_path;
    double noise = 2.0;
    cmp->add_option("csv", csv_path, "stats.csv from simulate")->required()->check(CLI::ExistingFile);
    cmp->add_option("--noise-sigmas", noise, "Tie band in Poisson standard deviations")->capture_default_str();

    RunConfig config;
    try {
        app.parse(argc, argv);
        config = resolve(raw, dt_opt->count() > 0);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*pdf) {
            const auto comp = parse_component(component);
            if (!comp) {
                std::cerr << "unknown component '" << component << "'\n";
                return kExitUsage;
            }
            pdf_req.component = *comp;
            if (!grid.empty()) {
                try {
                    pdf_req.grid = parse_grid(grid);
                } catch (const std::invalid_argument& e) {
                    std::cerr << e.what() << '\n';
                    return kExitUsage;
                }
            }
            pdf_req.sigma_i = sigma_i.value_or(config.gps.sigma());
            pdf_req.sigma_j = sigma_j.value_or(config.gps.sigma());
            pdf_req.category_i = categories.at(0);
            pdf_req.category_j = categories.at(1);
            pdf_req.dt = config.dts.front();
            std::vector<std::pair<double, double>> rows;
            try {
                rows = pdf_rows(pdf_req);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << '\n';
                return kExitUsage;
            } catch (const std::out_of_range& e) {
                std::cerr << e.what() << '\n';
                return kExitUsage;
            }
            const auto dir = prepare_out(config);
            std::ofstream out(dir / ("pdf_" + component + ".csv"), std::ios::binary);
            write_xy_csv(out, rows);
            std::cout << "wrote " << (dir / ("pdf_" + component + ".csv")).string() << '\n';
            return 0;
        }

        if (*dist) {
            const auto draws = unmac_samples(config, samples);
            const auto dir = prepare_out(config);
            std::ofstream out(dir / "unmac_dist.csv", std::ios::binary);
            write_unmac_csv(out, draws);
            std::cout << "wrote " << (dir / "unmac_dist.csv").string() << '\n';
            return 0;
        }

        if (*simulate) {
            auto sc = to_simulation_config(config);
            sc.sample_limit = dump_samples;
            sc.cancel = &g_interrupted;
            const auto previous = std::signal(SIGINT, on_interrupt);
            const auto result = sim::run(sc);
            std::signal(SIGINT, previous);

            const auto dir = prepare_out(config);
            {
                std::ofstream out(dir / "stats.csv", std::ios::binary);
                write_stats_csv(out, result.stats);
            }
            if (dump_samples > 0) {
                std::ofstream out(dir / "unmac_samples.csv", std::ios::binary);
                out << "format,dt,r_unmac\n";
                for (const auto& s : result.samples) {
                    out << to_string(s.format) << ',' << format_number(s.dt) << ',' << format_number(s.r_unmac)
                        << '\n';
                }
            }
            const auto text = summarize(result);
            write_file(dir / "summary.txt", text);
            std::cout << text;
            return result.partial ? kExitRuntime : 0;
        }

        if (*cmp) {
            std::ifstream in(csv_path);
            const auto stats = read_stats_csv(in);
            const auto report = compare(stats, noise);
            std::cout << report.text;
            if (!raw.out.empty()) {
                std::filesystem::create_directories(raw.out);
                write_file(std::filesystem::path(raw.out) / "compare.txt", report.text);
            }
            return report.violations.empty() ? 0 : kExitRuntime;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace unmac::cli

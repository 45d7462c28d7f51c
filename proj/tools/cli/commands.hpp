#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unmac/flightsim.hpp"

namespace unmac::cli {

// Everything a subcommand needs; filled from flags and the config file.
struct RunConfig {
    std::uint64_t seed = 1;
    double area_km2 = sim::kDefaultAreaKm2;
    std::vector<double> lambdas{1.0, 5.0, 10.0, 20.0, 50.0};
    std::uint64_t trajectory_budget = 100000;
    std::vector<MessageFormat> formats{kAllFormats.begin(), kAllFormats.end()};
    std::vector<double> dts{1.0, 0.02};
    GpsAccuracyStandard gps{"zero-aod", 5.7};
    sim::EpsMode eps_mode = sim::EpsMode::Sampled;
    unsigned workers = 1;
    std::string out_dir = ".";
};

// Throws std::invalid_argument naming the offending field.
void validate(const RunConfig& config);
sim::SimulationConfig to_simulation_config(const RunConfig& config);

// Resolved configuration as an INI file that --config accepts back.
std::string to_ini(const RunConfig& config);

std::optional<sim::EpsMode> parse_eps_mode(const std::string& text);
std::string to_string(sim::EpsMode mode);
// Named accuracy class (zero-aod, ...) or a bare number taken as sigma in m.
GpsAccuracyStandard parse_gps_standard(const std::string& text);

// ---- pdf ------------------------------------------------------------------

enum class PdfComponent { Airframe, Localization, Mobility, Direction };
std::optional<PdfComponent> parse_component(const std::string& text);

struct Grid {
    double from = 0.0;
    double to = 1.0;
    std::size_t count = 101;

    double at(std::size_t k) const;
};

// "from:to:count"; throws std::invalid_argument on a malformed grid.
Grid parse_grid(const std::string& text);

struct PdfRequest {
    PdfComponent component = PdfComponent::Airframe;
    std::optional<Grid> grid;
    double af_max = kMaxAirframe;
    double sigma_i = 1.9;
    double sigma_j = 1.9;
    int category_i = 1;
    int category_j = 1;
    double dt = 1.0;
    bool direction_known = false;
};

Grid default_grid(const PdfRequest& request);
// (x, f) rows; throws std::invalid_argument if the grid leaves the support
// where the density is singular or undefined.
std::vector<std::pair<double, double>> pdf_rows(const PdfRequest& request);
void write_xy_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows);

// ---- unmac-dist -----------------------------------------------------------

struct RadiusDraw {
    MessageFormat format;
    double dt;
    double r_unmac;
};

// n encounters; each encounter is evaluated under every (format, dt) so the
// columns share common random numbers.
std::vector<RadiusDraw> unmac_samples(const RunConfig& config, std::size_t n);
void write_unmac_csv(std::ostream& out, const std::vector<RadiusDraw>& draws);

// ---- simulate -------------------------------------------------------------

std::string summarize(const sim::SimulationResult& result);

// ---- compare --------------------------------------------------------------

struct CompareReport {
    std::string text;
    std::vector<std::string> violations;
};

// Ranks formats per (lambda, dt); adjacent formats whose counts differ by no
// more than noise_sigmas * sqrt(n_a + n_b) are reported as tied.
CompareReport compare(const std::vector<sim::ConflictStats>& stats, double noise_sigmas = 2.0);

// Entry point used by main(); returns the process exit code
// (0 success, 1 usage, 2 runtime).
int run_cli(int argc, char** argv);

}  // namespace unmac::cli

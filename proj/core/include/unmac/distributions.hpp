#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "unmac/rng.hpp"

namespace unmac {

inline constexpr double kMaxAirframe = 7.5;  // m, largest small-UAV airframe

// GPS horizontal accuracy class, stated as a 3-sigma bound.
struct GpsAccuracyStandard {
    std::string name;
    double three_sigma = 0.0;  // m

    double sigma() const { return three_sigma / 3.0; }
};

// Validates three_sigma > 0.
GpsAccuracyStandard make_gps_standard(std::string name, double three_sigma);
const std::array<GpsAccuracyStandard, 4>& gps_standards();
// Keys: zero-aod, all-aod, any-aod, worst-case.
std::optional<GpsAccuracyStandard> find_gps_standard(std::string_view key);

struct UavCategory {
    int index = 0;
    double v_cruise = 0.0;  // m/s
    double v_max = 0.0;     // m/s
    double mgtow_min = 0.0; // kg, informational
    double mgtow_max = 0.0;
};

const std::array<UavCategory, 4>& uav_categories();
// index in 1..4, throws std::out_of_range otherwise.
const UavCategory& uav_category(int index);

// sigma_v = (v_max - v_cruise) / 3. Throws std::invalid_argument unless
// v_max > v_cruise >= 0.
double speed_sigma(double v_cruise, double v_max);

struct SpeedModel {
    double mu_v = 0.0;
    double sigma_v = 0.0;

    static SpeedModel from_category(const UavCategory& category);
    // Truncation cap used by sample_speed.
    double upper_cap() const { return 1.1 * (mu_v + 3.0 * sigma_v); }
};

// Validates sigma_v > 0 and mu_v > 0.
SpeedModel make_speed_model(double mu_v, double sigma_v);

// ---- densities -----------------------------------------------------------

double half_normal_pdf(double x, double sigma);

// Density of eps_i + eps_j with eps ~ HalfNormal(sigma).
double sum_half_normal_pdf(double x, double sigma_i, double sigma_j);
// CDF by adaptive quadrature of the density on [0, x].
double sum_half_normal_cdf(double x, double sigma_i, double sigma_j);
// Mean by quadrature of x*f(x); equals (sigma_i + sigma_j) * sqrt(2/pi).
double sum_half_normal_mean(double sigma_i, double sigma_j);
// Upper end of the integration window: mean + 12 * sqrt(sigma_i^2 + sigma_j^2).
double sum_half_normal_upper(double sigma_i, double sigma_j);
// Inverts the CDF by bisection to 1e-4 m. Throws std::invalid_argument for
// p outside (0, 1), ConvergenceError if the bisection does not settle.
double sum_half_normal_quantile(double p, double sigma_i, double sigma_j);

// Density of (AF_i + AF_j) / 2 for AF ~ Uniform(0, af_max].
double triangle_af_pdf(double x, double af_max);

// Density of cos(Y), Y ~ Uniform(-pi, pi). Throws for |x| >= 1.
double direction_factor_pdf(double x);

// Distribution of the mobility-induced expansion V * dt for a pair.
//
// Direction unknown: V = V_1 + V_2, so the expansion is Normal with mean
// dt (mu_1 + mu_2) and variance dt^2 (sigma_1^2 + sigma_2^2).
//
// Direction known: the expansion is W cos(Y) with W the direction-unknown
// Gaussian and Y ~ Uniform(-pi, pi), restricted to z >= 0. Since cos(Y) is
// symmetric and independent of W, P(W cos Y >= 0) = 1/2 exactly, so the
// conditioned density is 2 f(z). It has a logarithmic singularity at z = 0.
class MobilityExpansion {
public:
    MobilityExpansion(double dt, const SpeedModel& first, const SpeedModel& second, bool direction_known);

    double pdf(double z) const;
    double mean() const;
    // Gaussian parameters of the direction-unknown expansion.
    double gaussian_mean() const { return mean_; }
    double gaussian_sd() const { return sd_; }
    bool direction_known() const { return direction_known_; }
    // Probability mass of the unconditioned product on z >= 0 (always 1/2).
    static constexpr double kPositiveMass = 0.5;

private:
    double product_pdf(double z) const;

    double mean_ = 0.0;
    double sd_ = 0.0;
    bool direction_known_ = false;
};

double mobility_expansion_pdf(double z, double dt, const SpeedModel& first, const SpeedModel& second,
                              bool direction_known);

// ---- samplers ------------------------------------------------------------

class RetryExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSpeedRetryCap = 100;

// Normal(mu_v, sigma_v^2) resampled until inside (0, 1.1 (mu_v + 3 sigma_v)].
double sample_speed(const SpeedModel& model, StreamRng& rng);
double sample_half_normal(double sigma, StreamRng& rng);
// Uniform on (0, af_max].
double sample_airframe(StreamRng& rng, double af_max = kMaxAirframe);
// Uniform over {1, 2, 3, 4}.
int sample_category(StreamRng& rng);

}  // namespace unmac

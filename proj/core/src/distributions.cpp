#include "unmac/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "unmac/quadrature.hpp"

namespace unmac {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi)
constexpr double kQuantileTolerance = 1e-4;              // m
constexpr int kBisectionCap = 200;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

double normal_pdf(double x, double mean, double sd) {
    const double u = (x - mean) / sd;
    return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

GpsAccuracyStandard make_gps_standard(std::string name, double three_sigma) {
    require_positive(three_sigma, "GPS 3-sigma bound");
    return GpsAccuracyStandard{std::move(name), three_sigma};
}

const std::array<GpsAccuracyStandard, 4>& gps_standards() {
    static const std::array<GpsAccuracyStandard, 4> table{{
        {"zero-aod", 5.7},
        {"all-aod", 10.5},
        {"any-aod", 13.85},
        {"worst-case", 30.0},
    }};
    return table;
}

std::optional<GpsAccuracyStandard> find_gps_standard(std::string_view key) {
    for (const auto& s : gps_standards()) {
        if (s.name == key) {
            return s;
        }
    }
    return std::nullopt;
}

const std::array<UavCategory, 4>& uav_categories() {
    static const std::array<UavCategory, 4> table{{
        {1, 12.9, 20.6, 0.0, 1.8},
        {2, 10.3, 15.4, 0.0, 9.0},
        {3, 15.4, 30.7, 0.0, 9.0},
        {4, 30.7, 51.5, 9.0, 25.0},
    }};
    return table;
}

const UavCategory& uav_category(int index) {
    if (index < 1 || index > 4) {
        throw std::out_of_range("UAV category must be in 1..4, got " + std::to_string(index));
    }
    return uav_categories()[static_cast<std::size_t>(index - 1)];
}

double speed_sigma(double v_cruise, double v_max) {
    if (!(v_cruise >= 0.0) || !(v_max > v_cruise)) {
        throw std::invalid_argument("speed_sigma requires v_max > v_cruise >= 0");
    }
    return (v_max - v_cruise) / 3.0;
}

SpeedModel SpeedModel::from_category(const UavCategory& category) {
    return SpeedModel{category.v_cruise, speed_sigma(category.v_cruise, category.v_max)};
}

SpeedModel make_speed_model(double mu_v, double sigma_v) {
    require_positive(mu_v, "mu_v");
    require_positive(sigma_v, "sigma_v");
    return SpeedModel{mu_v, sigma_v};
}

double half_normal_pdf(double x, double sigma) {
    require_positive(sigma, "sigma");
    if (x < 0.0) {
        return 0.0;
    }
    return kSqrt2OverPi / sigma * std::exp(-x * x / (2.0 * sigma * sigma));
}

double sum_half_normal_pdf(double x, double sigma_i, double sigma_j) {
    require_positive(sigma_i, "sigma_i");
    require_positive(sigma_j, "sigma_j");
    if (x < 0.0) {
        return 0.0;
    }
    const double var = sigma_i * sigma_i + sigma_j * sigma_j;
    const double s = std::sqrt(var);
    const double bracket = std::erf(sigma_i * x / (kSqrt2 * sigma_j * s)) + std::erf(sigma_j * x / (kSqrt2 * sigma_i * s));
    return kSqrt2OverPi / s * std::exp(-x * x / (2.0 * var)) * bracket;
}

double sum_half_normal_upper(double sigma_i, double sigma_j) {
    return (sigma_i + sigma_j) * kSqrt2OverPi + 12.0 * std::hypot(sigma_i, sigma_j);
}

double sum_half_normal_cdf(double x, double sigma_i, double sigma_j) {
    require_positive(sigma_i, "sigma_i");
    require_positive(sigma_j, "sigma_j");
    if (x <= 0.0) {
        return 0.0;
    }
    const double hi = std::min(x, sum_half_normal_upper(sigma_i, sigma_j));
    const double mass = integrate([&](double t) { return sum_half_normal_pdf(t, sigma_i, sigma_j); }, 0.0, hi);
    return std::clamp(mass, 0.0, 1.0);
}

double sum_half_normal_mean(double sigma_i, double sigma_j) {
    require_positive(sigma_i, "sigma_i");
    require_positive(sigma_j, "sigma_j");
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    return integrate([&](double t) { return t * sum_half_normal_pdf(t, sigma_i, sigma_j); }, 0.0,
                     sum_half_normal_upper(sigma_i, sigma_j), opts);
}

double sum_half_normal_quantile(double p, double sigma_i, double sigma_j) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("quantile probability must lie in (0, 1)");
    }
    require_positive(sigma_i, "sigma_i");
    require_positive(sigma_j, "sigma_j");
    double lo = 0.0;
    double hi = sum_half_normal_upper(sigma_i, sigma_j);
    if (sum_half_normal_cdf(hi, sigma_i, sigma_j) < p) {
        throw ConvergenceError("quantile lies beyond the integration window");
    }
    for (int iter = 0; iter < kBisectionCap; ++iter) {
        if (hi - lo <= kQuantileTolerance) {
            return 0.5 * (lo + hi);
        }
        const double mid = 0.5 * (lo + hi);
        if (sum_half_normal_cdf(mid, sigma_i, sigma_j) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError("quantile bisection did not converge");
}

double triangle_af_pdf(double x, double af_max) {
    require_positive(af_max, "af_max");
    const double peak_norm = af_max * af_max / 4.0;
    if (x <= 0.0 || x >= af_max) {
        return 0.0;
    }
    if (x < af_max / 2.0) {
        return x / peak_norm;
    }
    return (af_max - x) / peak_norm;
}

double direction_factor_pdf(double x) {
    if (!(std::abs(x) < 1.0)) {
        throw std::domain_error("direction factor density is defined on (-1, 1) only");
    }
    return 1.0 / (std::numbers::pi * std::sqrt(1.0 - x * x));
}

MobilityExpansion::MobilityExpansion(double dt, const SpeedModel& first, const SpeedModel& second, bool direction_known)
    : direction_known_(direction_known) {
    require_positive(dt, "dt");
    mean_ = dt * (first.mu_v + second.mu_v);
    sd_ = dt * std::hypot(first.sigma_v, second.sigma_v);
    require_positive(sd_, "mobility standard deviation");
}

// Density of W cos(Y) at z > 0. Writing w = z cosh(u) for |w| > z turns
// (1/pi) * integral phi(w) / sqrt(w^2 - z^2) dw into a smooth integral over u.
double MobilityExpansion::product_pdf(double z) const {
    const double reach = std::abs(mean_) + 12.0 * sd_;
    if (z >= reach) {
        return 0.0;
    }
    const double u_max = std::acosh(reach / z);
    const auto integrand = [&](double u) {
        const double w = z * std::cosh(u);
        return normal_pdf(w, mean_, sd_) + normal_pdf(-w, mean_, sd_);
    };
    return integrate(integrand, 0.0, u_max) / std::numbers::pi;
}

double MobilityExpansion::pdf(double z) const {
    if (!direction_known_) {
        return normal_pdf(z, mean_, sd_);
    }
    if (z < 0.0) {
        return 0.0;
    }
    if (z == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return product_pdf(z) / kPositiveMass;
}

double MobilityExpansion::mean() const {
    if (!direction_known_) {
        return mean_;
    }
    const double reach = std::abs(mean_) + 12.0 * sd_;
    QuadratureOptions opts;
    opts.rel_tol = 1e-7;
    return integrate([&](double z) { return z > 0.0 ? z * pdf(z) : 0.0; }, 0.0, reach, opts);
}

double mobility_expansion_pdf(double z, double dt, const SpeedModel& first, const SpeedModel& second,
                              bool direction_known) {
    return MobilityExpansion(dt, first, second, direction_known).pdf(z);
}

double sample_speed(const SpeedModel& model, StreamRng& rng) {
    const double cap = model.upper_cap();
    for (int attempt = 0; attempt < kSpeedRetryCap; ++attempt) {
        std::normal_distribution<double> normal(model.mu_v, model.sigma_v);
        const double v = normal(rng);
        if (v > 0.0 && v <= cap) {
            return v;
        }
    }
    throw RetryExhausted("sample_speed: retry cap exhausted for mu_v=" + std::to_string(model.mu_v));
}

double sample_half_normal(double sigma, StreamRng& rng) {
    std::normal_distribution<double> normal(0.0, sigma);
    return std::abs(normal(rng));
}

double sample_airframe(StreamRng& rng, double af_max) { return af_max * (1.0 - rng.uniform()); }

int sample_category(StreamRng& rng) { return 1 + static_cast<int>(rng() % 4); }

}  // namespace unmac

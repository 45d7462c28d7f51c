#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace unmac {

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_floor = 1e-300;  // lower bound on the absolute tolerance
    int max_depth = 48;
    int initial_panels = 16;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Simpson over [a, b]. The absolute tolerance is rel_tol times a
// coarse estimate of |integral|, split across the initial panels and then
// halved at every bisection. Throws ConvergenceError when a panel is still
// unresolved at max_depth or the integrand produces a non-finite value.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {}) {
    return adaptive_simpson(f, a, b, options).value;
}

}  // namespace unmac

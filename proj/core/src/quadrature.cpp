#include "unmac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace unmac {
namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
    double tol;
    int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

double checked(const std::function<double(double)>& f, double x, int& evaluations) {
    ++evaluations;
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw ConvergenceError("integrand is not finite at x=" + std::to_string(x));
    }
    return y;
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
    QuadratureResult result;
    if (a == b) {
        return result;
    }
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw std::invalid_argument("adaptive_simpson: bounds must be finite");
    }
    const double sign = b < a ? -1.0 : 1.0;
    if (b < a) {
        std::swap(a, b);
    }

    const int n = std::max(1, options.initial_panels);
    const double h = (b - a) / n;
    std::vector<Panel> stack;
    stack.reserve(2 * options.max_depth + n);

    double coarse = 0.0;
    std::vector<Panel> initial;
    initial.reserve(n);
    double x0 = a;
    double f0 = checked(f, x0, result.evaluations);
    for (int k = 0; k < n; ++k) {
        const double x2 = (k + 1 == n) ? b : a + (k + 1) * h;
        const double x1 = 0.5 * (x0 + x2);
        const double f1 = checked(f, x1, result.evaluations);
        const double f2 = checked(f, x2, result.evaluations);
        const double s = simpson(x0, x2, f0, f1, f2);
        coarse += std::abs(s);
        initial.push_back({x0, x1, x2, f0, f1, f2, s, 0.0, 0});
        x0 = x2;
        f0 = f2;
    }

    const double total_tol = std::max(options.rel_tol * coarse, options.abs_floor);
    for (auto it = initial.rbegin(); it != initial.rend(); ++it) {
        it->tol = total_tol / n;
        stack.push_back(*it);
    }

    double sum = 0.0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = checked(f, lm, result.evaluations);
        const double frm = checked(f, rm, result.evaluations);
        const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
        const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
        const double delta = left + right - p.whole;
        if (std::abs(delta) <= 15.0 * p.tol || p.b - p.a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(p.m)) {
            sum += left + right + delta / 15.0;
            result.error_estimate += std::abs(delta) / 15.0;
            continue;
        }
        if (p.depth >= options.max_depth) {
            throw ConvergenceError("adaptive_simpson: depth limit reached on [" + std::to_string(p.a) + ", " +
                                   std::to_string(p.b) + "]");
        }
        stack.push_back({p.m, rm, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
        stack.push_back({p.a, lm, p.m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
    }

    result.value = sign * sum;
    return result;
}

}  // namespace unmac

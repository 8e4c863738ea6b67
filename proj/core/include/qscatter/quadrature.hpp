#pragma once

#include <functional>
#include <vector>

namespace qscatter {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;      ///< accumulated error estimate (absolute)
    long evaluations = 0;
    bool converged = false;  ///< error <= requested tolerance
};

/// 15-point Gauss-Kronrod rule with the embedded 7-point Gauss estimate and
/// QUADPACK-style error scaling.
QuadratureResult gk15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive bisection seeded with the given panel edges (sorted,
/// deduplicated internally). Refines the interval with the largest error
/// estimate until the summed estimate drops below abs_tol or the interval
/// budget runs out. Deterministic: ties break on interval position and the
/// final sums run left to right.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::vector<double> panel_edges,
                                    double abs_tol,
                                    int max_intervals = 20000);

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol,
                                    int max_intervals = 20000);

}  // namespace qscatter

#pragma once

#include <utility>
#include <vector>

#include "qscatter/potential.hpp"
#include "qscatter/scattering_result.hpp"
#include "qscatter/spectral_density.hpp"

// Scattering probabilities for finite-width packets as spectral integrals
//   R = integral P(k) R_k dk,   T = integral P(k) T_k dk
// with R_k, T_k the fixed-k probabilities. These are exact for any
// normalized P(k) and any asymptotically constant potential; the plane-wave
// values are their infinite-width limit.

namespace qscatter {

/// Adaptive quadrature of P(k) * R_k over the support of P. R_k comes from
/// transfer_matrix_solve; k below the right-tail threshold contributes
/// R_k = 1. Panels are pre-split at tabulation knots, region thresholds and
/// interior resonance nodes kappa_j(k) d_j = n pi, then refined to an
/// absolute tolerance of 1e-10.
ScatteringResult exact_R(const SpectralDensity& P, const PiecewisePotential& pot);

/// Companion integral of P(k) * T_k (T_k carries the kappa/k weight).
ScatteringResult exact_T(const SpectralDensity& P, const PiecewisePotential& pot);

/// Truncated expansion of a step-potential probability in powers of
/// 1/sigma^2. terms() holds (power, coefficient); the zeroth term is the
/// plane-wave value at k0.
class SeriesExpansion {
public:
    SeriesExpansion(std::vector<std::pair<int, double>> terms, double k0, double kappa0);

    const std::vector<std::pair<int, double>>& terms() const { return terms_; }
    double center() const { return k0_; }
    double kappa0() const { return kappa0_; }

    double evaluate(double sigma) const;

    /// Heuristic truncation bound: |first-order term| * (10/(sigma k0))^2.
    /// A regime warning, not a rigorous bound.
    double err_estimate(double sigma) const;

private:
    std::vector<std::pair<int, double>> terms_;
    double k0_, kappa0_;
};

/// R series for the step through order 1/sigma^2:
///   R(sigma) = R0 + C/sigma^2,  R0 = ((k0-kappa0)/(k0+kappa0))^2,
///   C = (k0/kappa0^3 + 4/kappa0^2) R0.
/// C is R_k''(k0)/4, the second spectral moment of P(k) being 1/(2 sigma^2).
/// Requires kappa0 real; warns when sigma k0 is too small for the correction
/// to be small. The T series is the complement (see step_series_T).
SeriesExpansion step_series(double k0, double v0, double sigma);

/// T series: zeroth term 4 k0 kappa0/(k0+kappa0)^2, first-order coefficient
/// the negative of the R series'.
SeriesExpansion step_series_T(double k0, double v0, double sigma);

/// Geometric sum of non-interfering bounce probabilities inside a wide
/// barrier: 2 R_step / (1 + R_step). Requires 0 <= R_step < 1.
double kinematic_barrier_R(double r_step);

/// Spectral average of the closed-form barrier reflection (exact_R
/// specialized to the above-threshold barrier; independent of the transfer
/// matrix route). Requires the support of P entirely above the barrier
/// threshold; warns when Delta_k * a is too small for averaging.
ScatteringResult averaged_barrier_R(const SpectralDensity& P, double v0, double a);

/// Predicted transmitted/incident width ratio kappa0/k0 (the group-velocity
/// ratio). Requires kappa0 real.
double width_ratio_prediction(double k0, double v0);

}  // namespace qscatter

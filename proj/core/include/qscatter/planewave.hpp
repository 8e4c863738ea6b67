#pragma once

#include <complex>

#include "qscatter/potential.hpp"
#include "qscatter/scattering_result.hpp"

// Stationary scattering at fixed wave number k, natural units hbar = m = 1.
// Energies enter only through 2*V (= 2mV/hbar^2).

namespace qscatter {

using complexd = std::complex<double>;

/// Wave number in a region at potential v: sqrt(k^2 - 2v), taken on the
/// positive-imaginary branch below threshold (evanescent).
complexd region_wavenumber(double k, double v);

struct PlaneWaveSolution {
    double k = 0.0;          ///< incident wave number (left region)
    complexd kappa;          ///< wave number in the right asymptotic region
    complexd r;              ///< reflection amplitude B/A
    complexd t;              ///< transmission amplitude C/A
    double R = 0.0;          ///< |r|^2
    double T = 0.0;          ///< (Re kappa / k) |t|^2; 0 when kappa imaginary
    bool total_reflection = false;  ///< kappa imaginary: E below the right tail
};

/// 2x2 complex matrix relating (rightward, leftward) amplitude pairs.
/// interface() has |det| = k_left/k_right; propagation() has det = 1.
struct TransferMatrix {
    complexd m11{1.0, 0.0}, m12{0.0, 0.0}, m21{0.0, 0.0}, m22{1.0, 0.0};

    static TransferMatrix interface(complexd k_left, complexd k_right);
    static TransferMatrix propagation(complexd k, double width);

    TransferMatrix operator*(const TransferMatrix& rhs) const;
    complexd det() const { return m11 * m22 - m12 * m21; }
    double max_abs() const;
    void scale(double factor);
};

/// Amplitudes r = (k - kappa)/(k + kappa), t = 2k/(k + kappa) for a step of
/// height v0 at the origin. Below threshold the solution is flagged
/// total-reflection with R = 1, T = 0.
PlaneWaveSolution step_amplitudes(double k, double v0);

/// Closed-form probabilities for the step: R = ((k-kappa)/(k+kappa))^2,
/// T = 4 k kappa/(k+kappa)^2 when kappa is real; R = 1, T = 0 otherwise.
ScatteringResult step_coefficients(double k, double v0);

/// Probability current (hbar k/m)|amplitude|^2 of a plane-wave component.
double plane_wave_current(complexd amplitude, double k);

/// R = |j_R|/j_I, T = j_T/j_I from the solution's amplitudes.
ScatteringResult current_ratios(const PlaneWaveSolution& sol);

/// Group velocity hbar k / m.
double group_velocity(double k);

/// Above-barrier closed form for a rectangular barrier of height v0, width a:
/// R = (k^2-kappa^2)^2 sin^2(kappa a) / [4 k^2 kappa^2 + (k^2-kappa^2)^2 sin^2(kappa a)].
/// Rejects k at or below the barrier threshold; sub-barrier k goes through
/// transfer_matrix_solve.
ScatteringResult barrier_reflection(double k, double v0, double a);

/// General piecewise-constant potential: composes interface and propagation
/// matrices left to right with no incoming wave from the right. Evanescent
/// regions are handled in scaled form, so arbitrarily opaque barriers do not
/// overflow. Amplitudes use the global phase convention (r, t relative to
/// e^{+-ikx} on the left and e^{i kappa x} on the right).
PlaneWaveSolution transfer_matrix_solve(const PiecewisePotential& pot, double k);

}  // namespace qscatter

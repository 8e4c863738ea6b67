#pragma once

#include <complex>

#include "qscatter/potential.hpp"

namespace qscatter {

/// Incident Gaussian packet, centered at x = -a with central wave number k0
/// and spatial width sigma:
///   psi(x,0) = (pi sigma^2)^{-1/4} exp(i k0 (x+a)) exp(-(x+a)^2 / 2 sigma^2)
///
/// Construction requires k0 > 0, sigma > 0 and a >= 3 sigma (warns below
/// 5 sigma): the packet must effectively vanish for x > 0.
class GaussianPacket {
public:
    GaussianPacket(double k0, double sigma, double a);

    double k0() const { return k0_; }
    double sigma() const { return sigma_; }
    double a() const { return a_; }
    double center() const { return -a_; }

    /// Truncated spectral support [k0 - 8/sigma, k0 + 8/sigma], clamped to
    /// k > 0; tail mass beyond it is < 1e-27 of the norm.
    double support_lo() const;
    double support_hi() const { return k0_ + 8.0 / sigma_; }

private:
    double k0_, sigma_, a_;
};

std::complex<double> position_amplitude(const GaussianPacket& p, double x);

/// Fourier transform of psi(x,0):
///   phi(k,0) = (sigma^2/pi)^{1/4} exp(-(k-k0)^2 sigma^2 / 2) exp(i k a)
std::complex<double> spectral_amplitude(const GaussianPacket& p, double k);

/// P(k) = |phi(k,0)|^2 = (sigma^2/pi)^{1/2} exp(-(k-k0)^2 sigma^2)
double spectral_density(const GaussianPacket& p, double k);

enum class ScatteringRegime { plane_wave_valid, barrier_averaging, mixed };

std::string to_string(ScatteringRegime r);

struct ValidityReport {
    double packet_over_wavelength = 0.0;   ///< sigma * k0
    double packet_over_scatterer = 0.0;    ///< sigma / scatterer width; +inf for point scatterers
    double subthreshold_fraction = 0.0;    ///< P(k) mass below the right-tail transmission threshold
    double velocity_effect_scale = 0.0;    ///< 1/|dT_k/dk| at k0; +inf when T_k is flat
    ScatteringRegime regime = ScatteringRegime::mixed;
};

/// Dimensionless regime diagnostics. Cutoffs: plane-wave-valid needs
/// sigma*k0 >= 100 and (point scatterer or sigma >= 10*width);
/// barrier-averaging needs width >= 10*sigma and sigma*k0 >= 10.
ValidityReport validity_report(const GaussianPacket& p, const PiecewisePotential& pot);

}  // namespace qscatter

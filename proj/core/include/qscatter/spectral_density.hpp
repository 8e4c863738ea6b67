#pragma once

#include <functional>
#include <vector>

#include "qscatter/wavepacket.hpp"

namespace qscatter {

/// Probability density over wave number with finite support, either a
/// closed-form callable or a tabulated (linearly interpolated) profile.
/// Densities are expected to integrate to 1 over [lo, hi] within 1e-8;
/// the spectral integrals validate this before use.
class SpectralDensity {
public:
    static SpectralDensity from_packet(const GaussianPacket& p);

    /// Tabulated density; k strictly increasing, p >= 0. No renormalization
    /// is applied. The knots become quadrature breakpoints.
    static SpectralDensity from_samples(const std::vector<double>& k,
                                        const std::vector<double>& p);

    static SpectralDensity from_function(std::function<double(double)> pdf,
                                         double lo, double hi,
                                         std::vector<double> breakpoints = {});

    double operator()(double k) const { return pdf_(k); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    /// Points the adaptive quadrature must honor as panel edges (tabulation
    /// knots); empty for smooth closed forms.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

private:
    SpectralDensity(std::function<double(double)> pdf, double lo, double hi,
                    std::vector<double> breakpoints);

    std::function<double(double)> pdf_;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> breakpoints_;
};

}  // namespace qscatter

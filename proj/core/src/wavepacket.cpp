#include "qscatter/wavepacket.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "qscatter/planewave.hpp"

namespace qscatter {

GaussianPacket::GaussianPacket(double k0, double sigma, double a)
    : k0_(k0), sigma_(sigma), a_(a) {
    if (!(k0 > 0.0)) throw std::invalid_argument("GaussianPacket: k0 must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("GaussianPacket: sigma must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("GaussianPacket: a must be positive");
    if (a < 3.0 * sigma) {
        throw std::invalid_argument(
            "GaussianPacket: a < 3 sigma, the packet does not vanish for x > 0");
    }
    if (a < 5.0 * sigma) {
        std::cerr << "GaussianPacket: warning: a = " << a / sigma
                  << " sigma < 5 sigma, tail mass at x > 0 may not be negligible\n";
    }
}

double GaussianPacket::support_lo() const {
    return std::fmax(k0_ - 8.0 / sigma_, 1e-12);
}

std::complex<double> position_amplitude(const GaussianPacket& p, double x) {
    const double y = x + p.a();
    const double env = std::pow(M_PI * p.sigma() * p.sigma(), -0.25) *
                       std::exp(-y * y / (2.0 * p.sigma() * p.sigma()));
    return std::polar(env, p.k0() * y);
}

std::complex<double> spectral_amplitude(const GaussianPacket& p, double k) {
    const double dk = k - p.k0();
    const double env = std::pow(p.sigma() * p.sigma() / M_PI, 0.25) *
                       std::exp(-dk * dk * p.sigma() * p.sigma() / 2.0);
    return std::polar(env, k * p.a());
}

double spectral_density(const GaussianPacket& p, double k) {
    const double dk = k - p.k0();
    return (p.sigma() / std::sqrt(M_PI)) * std::exp(-dk * dk * p.sigma() * p.sigma());
}

std::string to_string(ScatteringRegime r) {
    switch (r) {
        case ScatteringRegime::plane_wave_valid: return "plane-wave-valid";
        case ScatteringRegime::barrier_averaging: return "barrier-averaging";
        case ScatteringRegime::mixed: return "mixed";
    }
    return "unknown";
}

ValidityReport validity_report(const GaussianPacket& p, const PiecewisePotential& pot) {
    constexpr double inf = std::numeric_limits<double>::infinity();

    ValidityReport rep;
    rep.packet_over_wavelength = p.sigma() * p.k0();

    const double width = pot.scatterer_width();
    rep.packet_over_scatterer = width > 0.0 ? p.sigma() / width : inf;

    // Mass of P(k) below the right-tail transmission threshold.
    const double k_threshold = std::sqrt(std::fmax(2.0 * pot.right_value(), 0.0));
    rep.subthreshold_fraction = 0.5 * std::erfc((p.k0() - k_threshold) * p.sigma());

    // Length scale of the velocity effect, 1/|dT_k/dk| at k0.
    const double h = 1e-5 * p.k0();
    double dTdk = 0.0;
    if (p.k0() - h > 0.0) {
        const double t_hi = transfer_matrix_solve(pot, p.k0() + h).T;
        const double t_lo = transfer_matrix_solve(pot, p.k0() - h).T;
        dTdk = (t_hi - t_lo) / (2.0 * h);
    }
    rep.velocity_effect_scale = dTdk != 0.0 ? 1.0 / std::abs(dTdk) : inf;

    const bool wide_vs_wavelength = rep.packet_over_wavelength >= 100.0;
    const bool wide_vs_scatterer = width <= 0.0 || p.sigma() >= 10.0 * width;
    const bool narrow_vs_scatterer = width > 0.0 && width >= 10.0 * p.sigma();

    if (wide_vs_wavelength && wide_vs_scatterer) {
        rep.regime = ScatteringRegime::plane_wave_valid;
    } else if (narrow_vs_scatterer && rep.packet_over_wavelength >= 10.0) {
        rep.regime = ScatteringRegime::barrier_averaging;
    } else {
        rep.regime = ScatteringRegime::mixed;
    }
    return rep;
}

}  // namespace qscatter

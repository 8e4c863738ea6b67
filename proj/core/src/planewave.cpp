#include "qscatter/planewave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qscatter {

complexd region_wavenumber(double k, double v) {
    const double disc = k * k - 2.0 * v;
    if (disc >= 0.0) return complexd(std::sqrt(disc), 0.0);
    return complexd(0.0, std::sqrt(-disc));
}

TransferMatrix TransferMatrix::interface(complexd k_left, complexd k_right) {
    // Continuity of psi and psi' at a shared reference point.
    const complexd u = k_left / k_right;
    const complexd half(0.5, 0.0);
    TransferMatrix m;
    m.m11 = half * (1.0 + u);
    m.m12 = half * (1.0 - u);
    m.m21 = half * (1.0 - u);
    m.m22 = half * (1.0 + u);
    return m;
}

TransferMatrix TransferMatrix::propagation(complexd k, double width) {
    // Re-references (a, b) from the left edge of a region to its right edge.
    const complexd phase = std::exp(complexd(0.0, 1.0) * k * width);
    TransferMatrix m;
    m.m11 = phase;
    m.m22 = 1.0 / phase;
    return m;
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
    TransferMatrix out;
    out.m11 = m11 * rhs.m11 + m12 * rhs.m21;
    out.m12 = m11 * rhs.m12 + m12 * rhs.m22;
    out.m21 = m21 * rhs.m11 + m22 * rhs.m21;
    out.m22 = m21 * rhs.m12 + m22 * rhs.m22;
    return out;
}

double TransferMatrix::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

void TransferMatrix::scale(double factor) {
    m11 *= factor;
    m12 *= factor;
    m21 *= factor;
    m22 *= factor;
}

PlaneWaveSolution step_amplitudes(double k, double v0) {
    if (!(k > 0.0)) throw std::invalid_argument("step_amplitudes: k must be positive");
    const complexd kappa = region_wavenumber(k, v0);

    PlaneWaveSolution sol;
    sol.k = k;
    sol.kappa = kappa;
    sol.r = (k - kappa) / (k + kappa);
    sol.t = 2.0 * k / (k + kappa);
    sol.total_reflection = kappa.imag() != 0.0;
    if (sol.total_reflection) {
        sol.R = 1.0;
        sol.T = 0.0;
    } else {
        sol.R = std::norm(sol.r);
        sol.T = (kappa.real() / k) * std::norm(sol.t);
    }
    return sol;
}

ScatteringResult step_coefficients(double k, double v0) {
    if (!(k > 0.0)) throw std::invalid_argument("step_coefficients: k must be positive");
    const complexd kappa = region_wavenumber(k, v0);
    if (kappa.imag() != 0.0) {
        return make_result(1.0, 0.0, Method::plane_wave, 0.0);
    }
    const double kr = kappa.real();
    const double ratio = (k - kr) / (k + kr);
    const double R = ratio * ratio;
    const double T = 4.0 * k * kr / ((k + kr) * (k + kr));
    return make_result(R, T, Method::plane_wave, 0.0);
}

double plane_wave_current(complexd amplitude, double k) {
    return k * std::norm(amplitude);
}

ScatteringResult current_ratios(const PlaneWaveSolution& sol) {
    const double j_inc = plane_wave_current(complexd(1.0, 0.0), sol.k);
    const double j_ref = plane_wave_current(sol.r, -sol.k);
    const double j_tra = sol.total_reflection
                             ? 0.0
                             : plane_wave_current(sol.t, sol.kappa.real());
    return make_result(std::abs(j_ref) / j_inc, j_tra / j_inc, Method::plane_wave, 0.0);
}

double group_velocity(double k) {
    return k;
}

ScatteringResult barrier_reflection(double k, double v0, double a) {
    if (!(k > 0.0)) throw std::invalid_argument("barrier_reflection: k must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("barrier_reflection: width a must be positive");
    if (!(k * k > 2.0 * v0)) {
        throw std::invalid_argument(
            "barrier_reflection: k at or below the barrier threshold; use transfer_matrix_solve");
    }
    const double kappa = std::sqrt(k * k - 2.0 * v0);
    const double dd = 2.0 * v0;  // k^2 - kappa^2
    const double s = std::sin(kappa * a);
    const double num = dd * dd * s * s;
    const double R = num / (4.0 * k * k * kappa * kappa + num);
    return make_result(R, 1.0 - R, Method::plane_wave, 0.0);
}

PlaneWaveSolution transfer_matrix_solve(const PiecewisePotential& pot, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("transfer_matrix_solve: k must be positive");

    const auto& xb = pot.boundaries();
    const auto& v = pot.values();
    const std::size_t nreg = v.size();

    std::vector<complexd> kr(nreg);
    for (std::size_t j = 0; j < nreg; ++j) kr[j] = region_wavenumber(k, v[j]);

    // Amplitudes in region j are referenced at its left boundary (region 0 at
    // the first boundary). Growing exponentials in evanescent regions are
    // factored out into log_scale so opaque barriers cannot overflow.
    TransferMatrix m;
    double log_scale = 0.0;
    for (std::size_t j = 0; j + 1 < nreg; ++j) {
        if (j > 0) {
            // Propagation with the growing exponential factored into
            // log_scale: entries stay bounded however opaque the region.
            const complexd kj = kr[j];
            const double d = xb[j] - xb[j - 1];
            TransferMatrix p;
            p.m11 = std::polar(std::exp(-2.0 * kj.imag() * d), kj.real() * d);
            p.m22 = std::polar(1.0, -kj.real() * d);
            m = p * m;
            log_scale += kj.imag() * d;
        }
        m = TransferMatrix::interface(kr[j], kr[j + 1]) * m;
        const double s = m.max_abs();
        if (s > 1e150) {
            m.scale(1.0 / s);
            log_scale += std::log(s);
        }
    }

    const double x1 = pot.left_edge();
    const double xn = pot.right_edge();
    const complexd kn = kr[nreg - 1];

    PlaneWaveSolution sol;
    sol.k = k;
    sol.kappa = kn;
    sol.total_reflection = kn.imag() != 0.0;

    // No incoming wave from the right: b_n = 0 fixes b_0/a_0 = -m21/m22.
    const complexd r_local = -m.m21 / m.m22;
    sol.r = r_local * std::exp(complexd(0.0, 2.0 * k * x1));

    // t = det(M)/m22 with det telescoping to k/kappa_n; evaluated through
    // logs so deep tunneling underflows to 0 instead of overflowing.
    const complexd ratio = complexd(k, 0.0) / kn;
    double log_t = std::log(std::abs(ratio)) - std::log(std::abs(m.m22)) - log_scale;
    double arg_t = std::arg(ratio) - std::arg(m.m22) + k * x1 - kn.real() * xn;
    log_t += kn.imag() * xn;  // global e^{-i kappa x_n} factor, real growth when evanescent
    sol.t = std::polar(std::exp(log_t), arg_t);

    if (sol.total_reflection) {
        sol.R = 1.0;
        sol.T = 0.0;
    } else {
        sol.R = std::norm(sol.r);
        const double log_T =
            std::log(k / kn.real()) - 2.0 * (std::log(std::abs(m.m22)) + log_scale);
        sol.T = std::exp(log_T);
    }
    return sol;
}

}  // namespace qscatter

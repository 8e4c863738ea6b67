#include "qscatter/exact.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qscatter/planewave.hpp"
#include "qscatter/quadrature.hpp"

namespace qscatter {

namespace {

constexpr double kQuadTol = 1e-10;

// Panel edges the adaptive quadrature must honor: tabulation knots, region
// thresholds sqrt(2 v_j) (square-root cusps of R_k) and resonance nodes
// kappa_j(k) d_j = n pi of every interior region.
std::vector<double> panel_nodes(const SpectralDensity& P, const PiecewisePotential& pot) {
    const double lo = P.lo();
    const double hi = P.hi();
    std::vector<double> nodes{lo, hi};
    for (double b : P.breakpoints()) {
        if (lo < b && b < hi) nodes.push_back(b);
    }
    for (double v : pot.values()) {
        if (v > 0.0) {
            const double kth = std::sqrt(2.0 * v);
            if (lo < kth && kth < hi) nodes.push_back(kth);
        }
    }
    const auto& xb = pot.boundaries();
    const auto& vals = pot.values();
    for (std::size_t j = 1; j + 1 < vals.size(); ++j) {
        const double d = xb[j] - xb[j - 1];
        const double vj = vals[j];
        const double kap_lo = std::sqrt(std::fmax(lo * lo - 2.0 * vj, 0.0));
        const double kap_hi = std::sqrt(std::fmax(hi * hi - 2.0 * vj, 0.0));
        const long n0 = std::max(1L, static_cast<long>(std::ceil(kap_lo * d / M_PI)));
        const long n1 = static_cast<long>(std::floor(kap_hi * d / M_PI));
        if (n1 - n0 > 1000000L) {
            throw std::runtime_error("exact integral: implausible resonance node count");
        }
        for (long n = n0; n <= n1; ++n) {
            const double kap = static_cast<double>(n) * M_PI / d;
            const double kk = std::sqrt(kap * kap + 2.0 * vj);
            if (lo < kk && kk < hi) nodes.push_back(kk);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

double check_normalization(const SpectralDensity& P) {
    std::vector<double> edges{P.lo(), P.hi()};
    edges.insert(edges.end(), P.breakpoints().begin(), P.breakpoints().end());
    const QuadratureResult norm =
        integrate_adaptive([&P](double k) { return P(k); }, edges, kQuadTol);
    if (std::abs(norm.value - 1.0) > 1e-8) {
        throw std::invalid_argument(
            "spectral density integrates to " + std::to_string(norm.value) +
            " over its support; must be 1 within 1e-8");
    }
    return std::abs(norm.value - 1.0);
}

ScatteringResult spectral_integral(const SpectralDensity& P, const PiecewisePotential& pot,
                                   bool transmitted) {
    const double norm_defect = check_normalization(P);
    auto integrand = [&](double k) {
        const PlaneWaveSolution sol = transfer_matrix_solve(pot, k);
        return P(k) * (transmitted ? sol.T : sol.R);
    };
    const QuadratureResult q = integrate_adaptive(integrand, panel_nodes(P, pot), kQuadTol);
    const double err = q.error + norm_defect;
    if (transmitted) {
        return make_result(1.0 - q.value, q.value, Method::exact_integral, err);
    }
    return make_result(q.value, 1.0 - q.value, Method::exact_integral, err);
}

}  // namespace

ScatteringResult exact_R(const SpectralDensity& P, const PiecewisePotential& pot) {
    return spectral_integral(P, pot, false);
}

ScatteringResult exact_T(const SpectralDensity& P, const PiecewisePotential& pot) {
    return spectral_integral(P, pot, true);
}

SeriesExpansion::SeriesExpansion(std::vector<std::pair<int, double>> terms,
                                 double k0, double kappa0)
    : terms_(std::move(terms)), k0_(k0), kappa0_(kappa0) {}

double SeriesExpansion::evaluate(double sigma) const {
    double out = 0.0;
    for (const auto& [power, coeff] : terms_) {
        out += coeff * std::pow(sigma, -2.0 * power);
    }
    return out;
}

double SeriesExpansion::err_estimate(double sigma) const {
    double first = 0.0;
    for (const auto& [power, coeff] : terms_) {
        if (power == 1) first = coeff;
    }
    const double reg = 10.0 / (sigma * k0_);
    return std::abs(first / (sigma * sigma)) * reg * reg;
}

namespace {

// Zeroth and first-order R coefficients; the first-order one is
// R_k''(k0)/4 since the second moment of P(k) is 1/(2 sigma^2).
std::pair<double, double> series_coefficients(double k0, double kappa0) {
    const double ratio = (k0 - kappa0) / (k0 + kappa0);
    const double c0 = ratio * ratio;
    const double c1 = (k0 / (kappa0 * kappa0 * kappa0) + 4.0 / (kappa0 * kappa0)) * c0;
    return {c0, c1};
}

double require_kappa0(double k0, double v0, const char* who) {
    if (!(k0 > 0.0)) throw std::invalid_argument(std::string(who) + ": k0 must be positive");
    const double disc = k0 * k0 - 2.0 * v0;
    if (!(disc > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": kappa0 imaginary (k0 below threshold)");
    }
    return std::sqrt(disc);
}

void warn_if_narrow(double k0, double sigma, const char* who) {
    if (sigma * k0 < 10.0) {
        std::cerr << who << ": warning: sigma*k0 = " << sigma * k0
                  << " is small, the 1/sigma^2 term is not a small correction\n";
    }
}

}  // namespace

SeriesExpansion step_series(double k0, double v0, double sigma) {
    const double kappa0 = require_kappa0(k0, v0, "step_series");
    warn_if_narrow(k0, sigma, "step_series");
    const auto [c0, c1] = series_coefficients(k0, kappa0);
    return SeriesExpansion({{0, c0}, {1, c1}}, k0, kappa0);
}

SeriesExpansion step_series_T(double k0, double v0, double sigma) {
    const double kappa0 = require_kappa0(k0, v0, "step_series_T");
    warn_if_narrow(k0, sigma, "step_series_T");
    const auto [c0, c1] = series_coefficients(k0, kappa0);
    (void)c0;
    const double t0 = 4.0 * k0 * kappa0 / ((k0 + kappa0) * (k0 + kappa0));
    return SeriesExpansion({{0, t0}, {1, -c1}}, k0, kappa0);
}

double kinematic_barrier_R(double r_step) {
    if (!(r_step >= 0.0) || !(r_step < 1.0)) {
        throw std::invalid_argument("kinematic_barrier_R: R_step must lie in [0, 1)");
    }
    return 2.0 * r_step / (1.0 + r_step);
}

ScatteringResult averaged_barrier_R(const SpectralDensity& P, double v0, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("averaged_barrier_R: width a must be positive");
    if (!(P.lo() * P.lo() > 2.0 * v0)) {
        throw std::invalid_argument(
            "averaged_barrier_R: spectral support must lie entirely above the barrier threshold");
    }
    const double delta_k = (P.hi() - P.lo()) / 16.0;
    if (delta_k * a < 10.0) {
        std::cerr << "averaged_barrier_R: warning: Delta_k * a = " << delta_k * a
                  << " is small, the plane-wave oscillation is not averaged out\n";
    }
    const double norm_defect = check_normalization(P);
    const PiecewisePotential barrier = make_barrier(v0, a);
    auto integrand = [&](double k) { return P(k) * barrier_reflection(k, v0, a).R; };
    const QuadratureResult q = integrate_adaptive(integrand, panel_nodes(P, barrier), kQuadTol);
    return make_result(q.value, 1.0 - q.value, Method::exact_integral, q.error + norm_defect);
}

double width_ratio_prediction(double k0, double v0) {
    if (!(k0 > 0.0)) throw std::invalid_argument("width_ratio_prediction: k0 must be positive");
    const double disc = k0 * k0 - 2.0 * v0;
    if (disc < 0.0) {
        throw std::invalid_argument("width_ratio_prediction: kappa0 imaginary (no transmitted packet)");
    }
    return std::sqrt(disc) / k0;
}

}  // namespace qscatter

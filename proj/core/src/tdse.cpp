#include "qscatter/tdse.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qscatter::tdse {

namespace {

constexpr double kEdgeMassLimit = 1e-8;
constexpr double kFluxLimit = 1e-8;
constexpr double kEmptyLobe = 1e-12;
constexpr double kInteriorMassLimit = 1e-8;

// Process-lifetime plan cache, one forward/backward pair per grid size.
// Plans carry FFTW_UNALIGNED and are executed through the new-array
// interface, so any buffer of the right length works and concurrent
// simulations can share them.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair plans_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> tmp(n);
    auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!pp.fwd || !pp.bwd) throw std::runtime_error("tdse: FFT plan creation failed");
    cache.emplace(n, pp);
    return pp;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double edge_zone_mass(const SimGrid& s) {
    const std::size_t zone = std::max<std::size_t>(2, s.n() / 50);
    double mass = 0.0;
    for (std::size_t i = 0; i < zone; ++i) {
        mass += std::norm(s.psi[i]) + std::norm(s.psi[s.n() - 1 - i]);
    }
    return mass * s.dx();
}

void check_edges(const SimGrid& s, double t_offset = 0.0) {
    if (edge_zone_mass(s) > kEdgeMassLimit) {
        throw std::runtime_error(
            "tdse: probability mass reached the grid edge (t = " +
            std::to_string(s.t + t_offset) + "); enlarge the grid");
    }
}

// Probability current Im(psi* dpsi/dx) by central difference.
double current_at(const SimGrid& s, std::size_t i) {
    const std::complex<double> grad =
        (s.psi[i + 1] - s.psi[i - 1]) / (2.0 * s.dx());
    return std::imag(std::conj(s.psi[i]) * grad);
}

std::size_t index_near(const SimGrid& s, double x) {
    const double raw = (x - s.x_min) / s.dx();
    const auto i = static_cast<long>(std::lround(raw));
    return static_cast<std::size_t>(std::clamp(i, 1L, static_cast<long>(s.n()) - 2));
}

struct Lobe {
    double mass = 0.0;
    double centroid = 0.0;
    double width = 0.0;    // sqrt(2 var): sigma-equivalent of a Gaussian |psi|^2
    double current = 0.0;  // integrated probability current
};

Lobe measure_lobe(const SimGrid& s, double lo, double hi) {
    Lobe lobe;
    double m1 = 0.0, m2 = 0.0;
    const double dx = s.dx();
    for (std::size_t i = 1; i + 1 < s.n(); ++i) {
        const double x = s.x(i);
        if (x <= lo || x >= hi) continue;
        const double w = std::norm(s.psi[i]) * dx;
        lobe.mass += w;
        m1 += w * x;
        m2 += w * x * x;
        lobe.current += current_at(s, i) * dx;
    }
    if (lobe.mass > 0.0) {
        lobe.centroid = m1 / lobe.mass;
        const double var = std::fmax(m2 / lobe.mass - lobe.centroid * lobe.centroid, 0.0);
        lobe.width = std::sqrt(2.0 * var);
    }
    return lobe;
}

}  // namespace

double SimGrid::norm() const {
    double sum = 0.0;
    for (const auto& c : psi) sum += std::norm(c);
    return sum * dx();
}

SimGrid initialize(const GaussianPacket& p, const GridSpec& spec) {
    if (!is_power_of_two(spec.n) || spec.n < 16) {
        throw std::invalid_argument("tdse: grid size must be a power of two, at least 16");
    }
    if (!(spec.x_min < spec.x_max)) {
        throw std::invalid_argument("tdse: x_min must be below x_max");
    }

    SimGrid s;
    s.x_min = spec.x_min;
    s.x_max = spec.x_max;
    s.psi.resize(spec.n);

    const double dx = s.dx();
    const double k_fast = p.k0() + 8.0 / p.sigma();
    const double lambda_min = 2.0 * M_PI / k_fast;
    if (dx > lambda_min / 10.0) {
        throw std::invalid_argument(
            "tdse: grid under-resolved: dx = " + std::to_string(dx) +
            " exceeds lambda_min/10 = " + std::to_string(lambda_min / 10.0));
    }

    // Packet tails must be negligible at the edges (relative amplitude 1e-12).
    const double centre = p.center();
    for (const double edge : {spec.x_min, spec.x_max}) {
        const double d = std::abs(edge - centre);
        if (std::exp(-d * d / (2.0 * p.sigma() * p.sigma())) > 1e-12) {
            throw std::invalid_argument("tdse: packet clipped by the grid edges");
        }
    }

    if (spec.dt > 0.0) {
        s.dt = spec.dt;
    } else {
        s.dt = 0.2 * dx * dx * 2.0;
        const double k_max = M_PI / dx;
        while (0.5 * k_max * k_max * s.dt >= M_PI / 4.0) s.dt *= 0.5;
    }

    for (std::size_t i = 0; i < s.n(); ++i) s.psi[i] = position_amplitude(p, s.x(i));
    const double root = std::sqrt(s.norm());
    for (auto& c : s.psi) c /= root;

    plans_for(s.n());  // plan eagerly so propagate never pays for it
    return s;
}

void propagate(SimGrid& s, const PiecewisePotential& pot, long n_steps) {
    if (n_steps <= 0) return;
    if (!(s.dt > 0.0) || s.psi.empty()) throw std::invalid_argument("tdse: uninitialized grid");

    const std::size_t n = s.n();
    const double dx = s.dx();
    const double dk = 2.0 * M_PI / (s.x_max - s.x_min);

    std::vector<std::complex<double>> v_half(n), v_full(n), kinetic(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = pot.evaluate(s.x(i));
        v_half[i] = std::polar(1.0, -0.5 * v * s.dt);
        v_full[i] = v_half[i] * v_half[i];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = dk * (j < n / 2 ? static_cast<double>(j)
                                         : static_cast<double>(j) - static_cast<double>(n));
        kinetic[j] = std::polar(inv_n, -0.5 * k * k * s.dt);
    }

    const PlanPair plans = plans_for(n);
    auto* buf = reinterpret_cast<fftw_complex*>(s.psi.data());

    // Fused symmetric splitting: half V, (K, V)^{n-1}, K, half V.
    for (std::size_t i = 0; i < n; ++i) s.psi[i] *= v_half[i];
    for (long step = 0; step < n_steps; ++step) {
        fftw_execute_dft(plans.fwd, buf, buf);
        for (std::size_t j = 0; j < n; ++j) s.psi[j] *= kinetic[j];
        fftw_execute_dft(plans.bwd, buf, buf);
        if (step + 1 < n_steps) {
            for (std::size_t i = 0; i < n; ++i) s.psi[i] *= v_full[i];
            if ((step & 255L) == 255L) {
                check_edges(s, static_cast<double>(step + 1) * s.dt);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) s.psi[i] *= v_half[i];

    s.t += static_cast<double>(n_steps) * s.dt;
    check_edges(s);
}

bool interaction_complete(const SimGrid& s, const PiecewisePotential& pot) {
    const double x1 = pot.left_edge();
    const double xn = pot.right_edge();

    const double flux_left = std::abs(current_at(s, index_near(s, x1)));
    const double flux_right = std::abs(current_at(s, index_near(s, xn)));
    if (flux_left >= kFluxLimit || flux_right >= kFluxLimit) return false;

    // A packet mid-transit inside a wide scatterer leaves both edges quiet;
    // the interior mass itself must have drained (bounce train died down).
    double interior = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double x = s.x(i);
        if (x >= x1 && x <= xn) interior += std::norm(s.psi[i]);
    }
    if (interior * s.dx() > kInteriorMassLimit) return false;

    const Lobe left = measure_lobe(s, s.x_min - 1.0, x1);
    const Lobe right = measure_lobe(s, xn, s.x_max + 1.0);

    const bool left_ok = left.mass < kEmptyLobe ||
                         (x1 - left.centroid >= 5.0 * left.width && left.current <= 0.0);
    const bool right_ok = right.mass < kEmptyLobe ||
                          (right.centroid - xn >= 5.0 * right.width && right.current >= 0.0);
    return left_ok && right_ok;
}

ScatteringResult measure_rt(const SimGrid& s, const PiecewisePotential& pot) {
    if (!interaction_complete(s, pot)) {
        throw std::runtime_error(
            "tdse: interaction not complete; propagate longer or enlarge the grid");
    }
    const double x1 = pot.left_edge();
    const double xn = pot.right_edge();
    const double dx = s.dx();

    double R = 0.0, T = 0.0, mid = 0.0, total = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double w = std::norm(s.psi[i]) * dx;
        const double x = s.x(i);
        total += w;
        if (x < x1) {
            R += w;
        } else if (x > xn) {
            T += w;
        } else {
            mid += w;
        }
    }

    double err = mid + std::abs(1.0 - total);
    const double v_right = pot.right_value();
    if (v_right > 0.0) {
        // Evanescent remnant clinging to the right edge of the scatterer:
        // reported as uncertainty, not reassigned between R and T.
        const double depth = 8.0 / std::sqrt(2.0 * v_right);
        double remnant = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            const double x = s.x(i);
            if (x > xn && x <= xn + depth) remnant += std::norm(s.psi[i]) * dx;
        }
        err += remnant;
    }
    return make_result(R, T, Method::tdse, err);
}

Snapshot snapshot(const SimGrid& s) {
    Snapshot snap;
    snap.t = s.t;
    snap.x.resize(s.n());
    snap.abs_psi.resize(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
        snap.x[i] = s.x(i);
        snap.abs_psi[i] = std::abs(s.psi[i]);
    }
    return snap;
}

void run_to_completion(SimGrid& s, const PiecewisePotential& pot, double t_max,
                       long check_interval) {
    if (check_interval <= 0) throw std::invalid_argument("tdse: check_interval must be positive");
    while (s.t < t_max) {
        if (interaction_complete(s, pot)) return;
        const long remaining = static_cast<long>(std::ceil((t_max - s.t) / s.dt));
        propagate(s, pot, std::min(check_interval, std::max(remaining, 1L)));
    }
    if (!interaction_complete(s, pot)) {
        throw std::runtime_error("tdse: interaction not complete by t_max = " +
                                 std::to_string(t_max));
    }
}

}  // namespace qscatter::tdse

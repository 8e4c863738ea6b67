// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with the
// measured quantities and its fixed tolerances. Exit status is the number of
// failed criteria. Individual criteria are selectable by id (1..8, 5t); no
// arguments runs all of them.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qscatter/exact.hpp"
#include "qscatter/planewave.hpp"
#include "qscatter/potential.hpp"
#include "qscatter/quadrature.hpp"
#include "qscatter/spectral_density.hpp"
#include "qscatter/tdse.hpp"
#include "qscatter/wavepacket.hpp"

using namespace qscatter;
namespace td = qscatter::tdse;

namespace {

bool report(bool ok, const std::string& line) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", line.c_str());
    std::fflush(stdout);
    return ok;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// -------------------------------------------------------------------------
// 1. Plane-wave unitarity: R + T = 1 for 1000 random propagating steps,
//    within 1e-12 closed form and 1e-10 through the transfer matrix.
bool criterion_1() {
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> ks(0.1, 10.0), unit(0.0, 1.0);
    double worst_closed = 0.0, worst_tm = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double k = ks(rng);
        const double v0 = -5.0 + unit(rng) * (0.95 * 0.5 * k * k + 5.0);
        const auto c = step_coefficients(k, v0);
        worst_closed = std::fmax(worst_closed, std::abs(c.R + c.T - 1.0));
        const auto tm = transfer_matrix_solve(make_step(v0), k);
        worst_tm = std::fmax(worst_tm, std::abs(tm.R + tm.T - 1.0));
    }
    return report(worst_closed <= 1e-12 && worst_tm <= 1e-10,
                  "1. plane-wave unitarity over 1000 random steps: max|R+T-1| closed=" +
                      num(worst_closed) + " (limit 1e-12), transfer-matrix=" + num(worst_tm) +
                      " (limit 1e-10)");
}

// -------------------------------------------------------------------------
// 2. The transfer matrix reproduces the closed forms: step amplitudes and
//    probabilities, and the above-threshold barrier reflection, on 200-point
//    k grids within 1e-10.
bool criterion_2() {
    const double v0 = 1.3;
    double worst = 0.0;
    const auto step = make_step(v0);
    for (int i = 0; i < 200; ++i) {
        const double k = 0.05 + (10.0 - 0.05) * i / 199.0;
        const auto tm = transfer_matrix_solve(step, k);
        const auto cf = step_amplitudes(k, v0);
        worst = std::fmax(worst, std::abs(tm.r - cf.r));
        worst = std::fmax(worst, std::abs(tm.t - cf.t));
        worst = std::fmax(worst, std::abs(tm.R - cf.R));
        worst = std::fmax(worst, std::abs(tm.T - cf.T));
    }

    const double a = 2.3;
    const auto barrier = make_barrier(v0, a);
    const double k_lo = std::sqrt(2.0 * v0) * 1.001;
    double worst_bar = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double k = k_lo + 8.0 * i / 199.0;
        const auto tm = transfer_matrix_solve(barrier, k);
        const auto cf = barrier_reflection(k, v0, a);
        worst_bar = std::fmax(worst_bar, std::abs(tm.R - cf.R));
        worst_bar = std::fmax(worst_bar, std::abs(tm.T - cf.T));
    }
    return report(worst <= 1e-10 && worst_bar <= 1e-10,
                  "2. closed-form equivalence on 200-point k grids: step max dev=" + num(worst) +
                      ", barrier max dev=" + num(worst_bar) + " (limit 1e-10)");
}

// -------------------------------------------------------------------------
// 3. The 1/sigma^2 series against the exact integral: fit
//    exact_R(sigma) - R0 to C/sigma^2 over sigma in {50,100,200,400}; the
//    fitted C must sit within 5% of the analytic series coefficient.
bool criterion_3() {
    const auto pot = make_step(1.5);  // k0 = 2, kappa0 = 1
    const double r0 = 1.0 / 9.0;
    double sxy = 0.0, sxx = 0.0;
    for (const double sigma : {50.0, 100.0, 200.0, 400.0}) {
        const GaussianPacket p(2.0, sigma, 8.0 * sigma);
        const double x = 1.0 / (sigma * sigma);
        const double y = exact_R(SpectralDensity::from_packet(p), pot).R - r0;
        sxy += x * y;
        sxx += x * x;
    }
    const double fitted = sxy / sxx;
    const double analytic = step_series(2.0, 1.5, 400.0).terms()[1].second;
    const double rel = std::abs(fitted - analytic) / analytic;
    return report(rel <= 0.05,
                  "3. series coefficient from the sigma fit: fitted=" + num(fitted) +
                      " vs analytic=" + num(analytic) + ", rel dev=" + num(rel) + " (limit 0.05)");
}

// -------------------------------------------------------------------------
// 4. Cross-oracle agreement on the step at (k0=2, kappa0=1, sigma=50, a=400):
//    split-step R vs quadrature R within 1e-3 on a convergence-verified grid
//    (dt halving < 1e-6; Richardson-bounded spatial error < 5e-4).
bool criterion_4() {
    const GaussianPacket p(2.0, 50.0, 400.0);
    const auto pot = make_step(1.5);
    const double r_exact = exact_R(SpectralDensity::from_packet(p), pot).R;

    auto measure = [&](std::size_t n, double dt) {
        auto s = td::initialize(p, {-780.0, 300.0, n, dt});
        td::run_to_completion(s, pot, 700.0);
        return td::measure_rt(s, pot).R;
    };
    const double r_a = measure(8192, 3.2e-3);
    const double r_b = measure(8192, 1.6e-3);
    const double r_c = measure(16384, 1.6e-3);

    const double dt_dev = std::abs(r_b - r_a);
    const double richardson = std::abs(r_c - r_b) / 3.0;
    const double dev = std::abs(r_c - r_exact);
    return report(dt_dev < 1e-6 && richardson < 5e-4 && dev <= 1e-3,
                  "4. step cross-oracle: |R_tdse - R_exact|=" + num(dev) +
                      " (limit 1e-3); dt-halving shift=" + num(dt_dev) +
                      " (limit 1e-6); Richardson grid bound=" + num(richardson) +
                      " (limit 5e-4)");
}

// -------------------------------------------------------------------------
// 5. Averaging-regime disagreement at k0=10, V0=1, a=100, sigma=1:
//    (a) exact_R within 10% of 2 R_step; (b) the plane-wave value sweeps
//    essentially 0..4 R_step over one period; (c) exact_R is insensitive to
//    k0 over that period (< 10% variation).
bool criterion_5() {
    const double v0 = 1.0, a = 100.0, sigma = 1.0, k0 = 10.0;
    const double r_step = step_coefficients(k0, v0).R;
    const double kappa0 = std::sqrt(k0 * k0 - 2.0 * v0);

    const GaussianPacket p(k0, sigma, 8.0 * sigma);
    const double r_exact = exact_R(SpectralDensity::from_packet(p), make_barrier(v0, a)).R;
    const double rel_a = std::abs(r_exact - 2.0 * r_step) / (2.0 * r_step);
    const bool ok_a = rel_a <= 0.10;

    const double period = M_PI * kappa0 / (a * k0);
    double pw_min = 1.0, pw_max = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double k = k0 + period * i / 400.0;
        const double r = barrier_reflection(k, v0, a).R;
        pw_min = std::fmin(pw_min, r);
        pw_max = std::fmax(pw_max, r);
    }
    const double four_r = 4.0 * r_step;
    const bool ok_b = pw_min < 0.05 * four_r && pw_max > 0.95 * four_r;

    double ex_min = 1.0, ex_max = 0.0;
    for (int i = 0; i <= 6; ++i) {
        const double k = k0 + period * i / 6.0;
        const GaussianPacket pk(k, sigma, 8.0 * sigma);
        const double r = exact_R(SpectralDensity::from_packet(pk), make_barrier(v0, a)).R;
        ex_min = std::fmin(ex_min, r);
        ex_max = std::fmax(ex_max, r);
    }
    const double spread_c = (ex_max - ex_min) / ex_min;
    const bool ok_c = spread_c < 0.10;

    return report(ok_a && ok_b && ok_c,
                  "5. averaging regime: (a) exact/2R_step dev=" + num(rel_a) +
                      " (limit 0.10); (b) plane-wave min/4R=" + num(pw_min / four_r) +
                      " max/4R=" + num(pw_max / four_r) +
                      " (limits <0.05, >0.95); (c) exact k0-scan spread=" + num(spread_c) +
                      " (limit 0.10)");
}

// Optional split-step confirmation of the same regime, 15% tolerance. The
// interaction is scored by the left-of-barrier mass once the bounce train
// has stabilized (t = 32, two bounce periods past the main transit): the
// formal completion gates sit at this regime's grid-radiation floor.
bool criterion_5t() {
    const double v0 = 1.0, a = 100.0, k0 = 10.0;
    const double target = 2.0 * step_coefficients(k0, v0).R;

    const GaussianPacket p(k0, 1.0, 10.0);
    const auto pot = make_barrier(v0, a);
    auto s = td::initialize(p, {-540.0, 520.0, 32768, 4e-4});
    td::propagate(s, pot, std::lround(32.0 / s.dt));

    double left = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        if (s.x(i) < 0.0) left += std::norm(s.psi[i]);
    }
    left *= s.dx();

    const double rel = std::abs(left - target) / target;
    return report(rel <= 0.15, "5t. averaging regime via split-step: R=" + num(left) +
                                   " vs 2R_step=" + num(target) + ", rel dev=" + num(rel) +
                                   " (limit 0.15)");
}

// -------------------------------------------------------------------------
// 6. Kinematic identity 2R/(1+R): equals the independently summed bounce
//    series at 100 points; the small-R limit matches 2R with an O(R^2)
//    discrepancy.
bool criterion_6() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = std::pow(10.0, -8.0 + 7.9 * i / 99.0);  // 1e-8 .. ~0.8
        const double t = 1.0 - r;
        double sum = r, term = t * t * r;
        for (int m = 0; m < 400; ++m) {
            sum += term;
            term *= r * r;
        }
        worst = std::fmax(worst, std::abs(kinematic_barrier_R(r) - sum));
    }

    double worst_small = 0.0;  // |f(R) - 2R| measured against R^2
    for (const double r : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2}) {
        worst_small = std::fmax(worst_small,
                                std::abs(kinematic_barrier_R(r) - 2.0 * r) / (r * r));
    }
    return report(worst <= 1e-14 && worst_small <= 2.0 + 1e-9,
                  "6. kinematic identity: max|f - bounce sum|=" + num(worst) +
                      " (limit 1e-14); small-R |f-2R|/R^2=" + num(worst_small) +
                      " (limit 2)");
}

// -------------------------------------------------------------------------
// 7. Oracle physics: free-particle centroid velocity within 0.1%, spreading
//    law within 0.5%, norm conserved to 1e-10 over 1e5 steps.
bool criterion_7() {
    const GaussianPacket p(1.0, 3.0, 15.0);
    auto s = td::initialize(p, {-40.0, 100.0, 1024, 0.0});
    const PiecewisePotential free_pot;

    auto moments = [&](double* c, double* w) {
        double m = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            const double x = s.x(i);
            const double q = std::norm(s.psi[i]);
            m += q;
            m1 += q * x;
            m2 += q * x * x;
        }
        *c = m1 / m;
        *w = std::sqrt(m2 / m - (*c) * (*c));
    };

    double c0, w0;
    moments(&c0, &w0);
    td::propagate(s, free_pot, std::lround(30.0 / s.dt));
    double c1, w1;
    moments(&c1, &w1);

    const double v_dev = std::abs((c1 - c0) / s.t - 1.0);
    const double rms_expect = std::sqrt(9.0 + (s.t / 3.0) * (s.t / 3.0)) / std::sqrt(2.0);
    const double w_dev = std::abs(w1 - rms_expect) / rms_expect;

    const GaussianPacket pn(1.0, 1.5, 6.0);
    auto sn = td::initialize(pn, {-20.0, 20.0, 4096, 0.0});
    td::propagate(sn, make_step(0.4), 100000);
    const double norm_dev = std::abs(sn.norm() - 1.0);

    return report(v_dev < 1e-3 && w_dev < 5e-3 && norm_dev < 1e-10,
                  "7. oracle physics: velocity dev=" + num(v_dev) +
                      " (limit 1e-3); spreading dev=" + num(w_dev) +
                      " (limit 5e-3); norm drift over 1e5 steps=" + num(norm_dev) +
                      " (limit 1e-10)");
}

// -------------------------------------------------------------------------
// 8. Width-ratio prediction: transmitted/incident RMS width from the oracle
//    within 5% of kappa0/k0 at sigma k0 = 200.
bool criterion_8() {
    const GaussianPacket p(2.0, 100.0, 500.0);
    const auto pot = make_step(1.5);
    const double predicted = width_ratio_prediction(2.0, 1.5);

    auto s = td::initialize(p, {-1260.0, 500.0, 8192, 0.0});
    auto rms = [&](double lo, double hi) {
        double m = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            const double x = s.x(i);
            if (x <= lo || x >= hi) continue;
            const double q = std::norm(s.psi[i]);
            m += q;
            m1 += q * x;
            m2 += q * x * x;
        }
        const double c = m1 / m;
        return std::sqrt(m2 / m - c * c);
    };
    const double w_inc = rms(-1260.0, 500.0);
    td::run_to_completion(s, pot, 900.0);
    const double ratio = rms(0.0, 500.0) / w_inc;

    const double rel = std::abs(ratio - predicted) / predicted;
    return report(rel <= 0.05, "8. width ratio: measured=" + num(ratio) + " vs kappa0/k0=" +
                                   num(predicted) + ", rel dev=" + num(rel) + " (limit 0.05)");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<std::string> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(argv[i]);
    const bool all = wanted.empty();
    auto selected = [&](const char* id) { return all || wanted.count(id) > 0; };

    int failures = 0;
    if (selected("1")) failures += !criterion_1();
    if (selected("2")) failures += !criterion_2();
    if (selected("3")) failures += !criterion_3();
    if (selected("4")) failures += !criterion_4();
    if (selected("5")) failures += !criterion_5();
    if (selected("5t")) failures += !criterion_5t();
    if (selected("6")) failures += !criterion_6();
    if (selected("7")) failures += !criterion_7();
    if (selected("8")) failures += !criterion_8();

    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

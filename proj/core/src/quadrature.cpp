#include "qscatter/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace qscatter {

namespace {

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss
// rule on the odd-indexed points. QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double error;
};

struct WorstFirst {
    bool operator()(const Interval& lhs, const Interval& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a;  // deterministic tie break
    }
};

}  // namespace

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();

    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);

    double fv[14];  // pairs f(centr - x), f(centr + x) for kXgk[0..6]
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv[2 * j] = f(centr - absc);
        fv[2 * j + 1] = f(centr + absc);
        const double fsum = fv[2 * j] + fv[2 * j + 1];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
    }

    QuadratureResult out;
    out.value = resk * hlgth;
    out.evaluations = 15;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::fmin(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > uflow / (50.0 * eps)) {
        err = std::fmax(50.0 * eps * resabs, err);
    }
    out.error = err;
    return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::vector<double> panel_edges,
                                    double abs_tol,
                                    int max_intervals) {
    std::sort(panel_edges.begin(), panel_edges.end());
    panel_edges.erase(std::unique(panel_edges.begin(), panel_edges.end(),
                                  [](double x, double y) {
                                      return std::abs(y - x) <=
                                             1e-15 * std::fmax(1.0, std::fmax(std::abs(x), std::abs(y)));
                                  }),
                      panel_edges.end());

    QuadratureResult out;
    if (panel_edges.size() < 2) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Interval, std::vector<Interval>, WorstFirst> heap;
    double total_err = 0.0;
    long evals = 0;
    int count = 0;

    auto push_panel = [&](double a, double b) {
        QuadratureResult q = gk15(f, a, b);
        evals += q.evaluations;
        heap.push(Interval{a, b, q.value, q.error});
        total_err += q.error;
        ++count;
    };

    for (std::size_t i = 0; i + 1 < panel_edges.size(); ++i) {
        push_panel(panel_edges[i], panel_edges[i + 1]);
    }

    while (total_err > abs_tol && count < max_intervals) {
        const Interval worst = heap.top();
        if (!(worst.error > 0.0)) break;  // nothing left to gain
        heap.pop();
        total_err -= worst.error;
        --count;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at roundoff limit
            heap.push(worst);
            total_err += worst.error;
            ++count;
            break;
        }
        push_panel(worst.a, mid);
        push_panel(mid, worst.b);
    }

    // Deterministic reduction: sum left to right with compensation.
    std::vector<Interval> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& lhs, const Interval& rhs) { return lhs.a < rhs.a; });

    double sum = 0.0, comp = 0.0, err_sum = 0.0;
    for (const Interval& p : parts) {
        const double y = p.value - comp;
        const double tmp = sum + y;
        comp = (tmp - sum) - y;
        sum = tmp;
        err_sum += p.error;
    }

    out.value = sum;
    out.error = err_sum;
    out.evaluations = evals;
    out.converged = err_sum <= abs_tol;
    return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol,
                                    int max_intervals) {
    return integrate_adaptive(f, std::vector<double>{a, b}, abs_tol, max_intervals);
}

}  // namespace qscatter

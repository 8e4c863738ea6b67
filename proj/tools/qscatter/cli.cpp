#include "qscatter/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qscatter/exact.hpp"
#include "qscatter/planewave.hpp"
#include "qscatter/potential.hpp"
#include "qscatter/spectral_density.hpp"
#include "qscatter/tdse.hpp"
#include "qscatter/wavepacket.hpp"

namespace qscatter::cli {

namespace {

std::string fmt_prob(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_grid(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    bool log = false;
};

Range parse_range(const std::string& text, bool allow_scale) {
    Range r;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() < 3 || parts.size() > (allow_scale ? 4u : 3u)) {
        throw CLI::ValidationError("range", "expected lo:hi:count" +
                                                std::string(allow_scale ? "[:lin|log]" : "") +
                                                ", got '" + text + "'");
    }
    try {
        std::size_t pos = 0;
        r.lo = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw std::invalid_argument(parts[0]);
        r.hi = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
        r.count = std::stoi(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "bad numeric field in '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            r.log = true;
        } else if (parts[3] != "lin") {
            throw CLI::ValidationError("range", "scale must be lin or log, got '" + parts[3] + "'");
        }
    }
    if (r.count < 2 || !(r.hi > r.lo)) {
        throw CLI::ValidationError("range", "need hi > lo and count >= 2 in '" + text + "'");
    }
    if (r.log && !(r.lo > 0.0)) {
        throw CLI::ValidationError("range", "log scale needs lo > 0 in '" + text + "'");
    }
    return r;
}

std::vector<double> expand(const Range& r) {
    std::vector<double> out(static_cast<std::size_t>(r.count));
    for (int i = 0; i < r.count; ++i) {
        const double w = static_cast<double>(i) / (r.count - 1);
        out[static_cast<std::size_t>(i)] =
            r.log ? r.lo * std::pow(r.hi / r.lo, w) : r.lo + w * (r.hi - r.lo);
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

// path foo.csv + tag "psi" -> foo_psi.csv
std::string tagged_path(const std::string& path, const std::string& tag) {
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_" + tag;
    }
    return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

// Evaluates rows concurrently, emits them in index order.
std::string parallel_rows(std::size_t count, const std::function<std::string(std::size_t)>& row) {
    std::vector<std::string> rows(count);
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(std::min<std::size_t>(count, 8)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr fail;
        std::mutex fail_mu;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        rows[i] = row(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(fail_mu);
                        if (!fail) fail = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (fail) std::rethrow_exception(fail);
    }
    std::string out;
    for (const auto& r : rows) out += r;
    return out;
}

struct PotentialFlags {
    double step_v0 = 0.0;
    std::vector<double> barrier;  // V0, a
    std::string record;
    bool has_step = false;

    void attach(CLI::App* cmd) {
        auto* s = cmd->add_option("--step", step_v0, "Step potential of height V0 at x = 0");
        auto* b = cmd->add_option("--barrier", barrier,
                                  "Rectangular barrier: height V0 and width a")
                      ->expected(2);
        auto* p = cmd->add_option("--potential", record,
                                  "Piecewise potential record: 'v0 x1:v1 x2:v2 ...'");
        s->excludes(b)->excludes(p);
        b->excludes(p);
        cmd->callback([this, s] { has_step = s->count() > 0; });
    }

    PiecewisePotential build() const {
        if (has_step) return make_step(step_v0);
        if (!barrier.empty()) return make_barrier(barrier[0], barrier[1]);
        if (!record.empty()) return PiecewisePotential::from_record(record);
        throw CLI::ValidationError("potential", "none given: use --step, --barrier or --potential");
    }
};

struct PacketFlags {
    double k0 = 0.0, sigma = 0.0, a = 0.0;

    void attach(CLI::App* cmd, const std::string& a_flag = "--a") {
        cmd->add_option("--k0", k0, "Central wave number")->required();
        cmd->add_option("--sigma", sigma, "Spatial width")->required();
        cmd->add_option(a_flag, a,
                        "Initial distance of the packet center left of the origin (default 8 sigma)");
    }

    GaussianPacket build() const {
        return GaussianPacket(k0, sigma, a > 0.0 ? a : 8.0 * sigma);
    }
};

std::string result_record(const ScatteringResult& res) {
    std::string out;
    out += "R=" + fmt_prob(res.R) + "\n";
    out += "T=" + fmt_prob(res.T) + "\n";
    out += "method=" + to_string(res.method) + "\n";
    out += "err_estimate=" + fmt_prob(res.err_estimate) + "\n";
    return out;
}

std::string result_csv(const ScatteringResult& res) {
    return "R,T,method,err_estimate\n" + fmt_prob(res.R) + "," + fmt_prob(res.T) + "," +
           to_string(res.method) + "," + fmt_prob(res.err_estimate) + "\n";
}

int run_planewave(const PotentialFlags& pf, const std::string& k_range,
                  const std::string& out, const std::string&) {
    const PiecewisePotential pot = pf.build();
    const auto ks = expand(parse_range(k_range, false));
    std::string body = parallel_rows(ks.size(), [&](std::size_t i) {
        const auto sol = transfer_matrix_solve(pot, ks[i]);
        return fmt_grid(ks[i]) + "," + fmt_prob(sol.R) + "," + fmt_prob(sol.T) + "," +
               fmt_prob(sol.r.real()) + "," + fmt_prob(sol.r.imag()) + "," +
               fmt_prob(sol.t.real()) + "," + fmt_prob(sol.t.imag()) + "\n";
    });
    write_output(out, "k,R,T,re_r,im_r,re_t,im_t\n" + body);
    return 0;
}

int run_packet(const PacketFlags& pkf, int nx, int nk, const std::string& out) {
    const GaussianPacket p = pkf.build();

    std::string psi = "x,re_psi,im_psi\n";
    const double x_lo = p.center() - 6.0 * p.sigma();
    const double x_hi = p.center() + 6.0 * p.sigma();
    for (int i = 0; i < nx; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (nx - 1);
        const auto amp = position_amplitude(p, x);
        psi += fmt_grid(x) + "," + fmt_prob(amp.real()) + "," + fmt_prob(amp.imag()) + "\n";
    }

    std::string pk = "k,P\n";
    for (int i = 0; i < nk; ++i) {
        const double k = p.support_lo() + (p.support_hi() - p.support_lo()) * i / (nk - 1);
        pk += fmt_grid(k) + "," + fmt_prob(spectral_density(p, k)) + "\n";
    }

    if (out == "-") {
        std::cout << psi << "\n" << pk;
    } else {
        write_output(tagged_path(out, "psi"), psi);
        write_output(tagged_path(out, "pk"), pk);
    }
    return 0;
}

ScatteringResult exact_point(const PiecewisePotential& pot, double k0, double sigma, double a,
                             const std::string& method) {
    if (method == "exact") {
        const GaussianPacket p(k0, sigma, a > 0.0 ? a : 8.0 * sigma);
        const auto P = SpectralDensity::from_packet(p);
        const auto r = exact_R(P, pot);
        const auto t = exact_T(P, pot);
        return make_result(r.R, t.T, Method::exact_integral, r.err_estimate + t.err_estimate);
    }
    if (method == "series") {
        if (pot.boundaries().size() != 1) {
            throw CLI::ValidationError("method", "'series' needs a step potential");
        }
        const double v0 = pot.right_value();
        const auto sr = step_series(k0, v0, sigma);
        const auto st = step_series_T(k0, v0, sigma);
        return make_result(sr.evaluate(sigma), st.evaluate(sigma), Method::series,
                           sr.err_estimate(sigma));
    }
    if (method == "planewave") {
        const auto sol = transfer_matrix_solve(pot, k0);
        return make_result(sol.R, sol.T, Method::plane_wave, 0.0);
    }
    if (method == "kinematic") {
        if (pot.boundaries().size() != 2) {
            throw CLI::ValidationError("method", "'kinematic' needs a barrier potential");
        }
        const double r_step = step_coefficients(k0, pot.values()[1]).R;
        const double r = kinematic_barrier_R(r_step);
        return make_result(r, 1.0 - r, Method::kinematic, 0.0);
    }
    throw CLI::ValidationError("method", "unknown method '" + method + "'");
}

int run_exact(const PotentialFlags& pf, const PacketFlags& pkf, const std::string& method,
              const std::string& sweep_name, const std::string& sweep_range,
              const std::string& out, const std::string& format) {
    const PiecewisePotential pot = pf.build();

    if (sweep_name.empty()) {
        const auto res = exact_point(pot, pkf.k0, pkf.sigma, pkf.a, method);
        write_output(out, format == "record" ? result_record(res) : result_csv(res));
        return 0;
    }

    if (sweep_name != "sigma" && sweep_name != "k0") {
        throw CLI::ValidationError("sweep", "axis must be sigma or k0, got '" + sweep_name + "'");
    }
    if (format == "record") {
        throw CLI::ValidationError("format", "sweeps emit CSV; use --format csv");
    }
    const auto values = expand(parse_range(sweep_range, true));
    std::string body = parallel_rows(values.size(), [&](std::size_t i) {
        const double k0 = sweep_name == "k0" ? values[i] : pkf.k0;
        const double sigma = sweep_name == "sigma" ? values[i] : pkf.sigma;
        const auto res = exact_point(pot, k0, sigma, pkf.a, method);
        return fmt_grid(values[i]) + "," + fmt_prob(res.R) + "," + fmt_prob(res.T) + "," +
               fmt_prob(res.err_estimate) + "\n";
    });
    write_output(out, sweep_name + ",R,T,err_estimate\n" + body);
    return 0;
}

int run_barrier_study(double v0, double a, const PacketFlags& pkf,
                      const std::string& sweep_name, const std::string& sweep_range,
                      const std::string& out, const std::string&) {
    if (!sweep_name.empty() && sweep_name != "k0") {
        throw CLI::ValidationError("sweep", "barrier-study sweeps over k0 only");
    }
    const std::vector<double> k0s =
        sweep_name.empty() ? std::vector<double>{pkf.k0} : expand(parse_range(sweep_range, true));

    std::string body = parallel_rows(k0s.size(), [&](std::size_t i) {
        const double k0 = k0s[i];
        const GaussianPacket p(k0, pkf.sigma, pkf.a > 0.0 ? pkf.a : 8.0 * pkf.sigma);
        const double r_pw = barrier_reflection(k0, v0, a).R;
        const double r_exact = averaged_barrier_R(SpectralDensity::from_packet(p), v0, a).R;
        const double r_kin = kinematic_barrier_R(step_coefficients(k0, v0).R);
        return fmt_grid(k0) + "," + fmt_prob(r_pw) + "," + fmt_prob(r_exact) + "," +
               fmt_prob(r_kin) + "\n";
    });
    write_output(out, "k0,R_planewave,R_exact,R_kinematic\n" + body);
    return 0;
}

std::string snapshot_csv(const tdse::Snapshot& snap) {
    std::string out = "t,x,abs_psi\n";
    const std::string t = fmt_grid(snap.t);
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
        out += t + "," + fmt_grid(snap.x[i]) + "," + fmt_prob(snap.abs_psi[i]) + "\n";
    }
    return out;
}

int run_tdse(const PotentialFlags& pf, const PacketFlags& pkf, double x_min, double x_max,
             std::size_t n, double dt, double t_max, int frames, const std::string& out,
             const std::string& format) {
    const PiecewisePotential pot = pf.build();
    const GaussianPacket p = pkf.build();
    auto s = tdse::initialize(p, {x_min, x_max, n, dt});

    if (frames > 0) {
        char tag[16];
        std::snprintf(tag, sizeof tag, "frame%03d", 0);
        write_output(out == "-" ? out : tagged_path(out, tag), snapshot_csv(tdse::snapshot(s)));
        for (int f = 1; f < frames; ++f) {
            const double target = t_max * f / (frames - 1);
            const long steps = std::lround((target - s.t) / s.dt);
            if (steps > 0) tdse::propagate(s, pot, steps);
            std::snprintf(tag, sizeof tag, "frame%03d", f);
            write_output(out == "-" ? out : tagged_path(out, tag),
                         snapshot_csv(tdse::snapshot(s)));
        }
    } else {
        tdse::run_to_completion(s, pot, t_max);
    }

    const auto res = tdse::measure_rt(s, pot);
    write_output(out, format == "record" ? result_record(res) : result_csv(res));
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"1-D quantum scattering of wave packets on piecewise-constant potentials"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value config file with one section per subcommand");

    std::string out = "-";
    std::string format = "csv";
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "Output path ('-' for stdout)")->capture_default_str();
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "record"}))
            ->capture_default_str();
    };

    // planewave
    auto* pw = app.add_subcommand("planewave", "Fixed-k scattering table over a k grid");
    PotentialFlags pw_pot;
    pw_pot.attach(pw);
    std::string pw_k;
    pw->add_option("--k", pw_k, "Wave number grid lo:hi:count")->required();
    add_common(pw);

    // packet
    auto* pk = app.add_subcommand("packet", "Dump psi(x,0) and P(k) of a Gaussian packet");
    PacketFlags pk_packet;
    pk_packet.attach(pk);
    int nx = 1001, nk = 1001;
    pk->add_option("--nx", nx, "Position samples")->capture_default_str();
    pk->add_option("--nk", nk, "Wave-number samples")->capture_default_str();
    add_common(pk);

    // exact
    auto* ex = app.add_subcommand("exact", "Spectral-integral R and T for a packet");
    PotentialFlags ex_pot;
    ex_pot.attach(ex);
    PacketFlags ex_packet;
    ex_packet.attach(ex);
    std::string method = "exact";
    ex->add_option("--method", method, "exact | series | planewave | kinematic")
        ->check(CLI::IsMember({"exact", "series", "planewave", "kinematic"}))
        ->capture_default_str();
    std::string ex_sweep_name, ex_sweep_range;
    ex->add_option("--sweep", ex_sweep_name, "Sweep axis: sigma or k0")
        ->needs(ex->add_option("--sweep-range", ex_sweep_range, "lo:hi:count[:lin|log]"));
    add_common(ex);

    // barrier-study
    auto* bs = app.add_subcommand("barrier-study",
                                  "Plane-wave vs exact vs kinematic barrier reflection");
    double bs_v0 = 0.0, bs_a = 0.0;
    bs->add_option("--V0", bs_v0, "Barrier height")->required();
    bs->add_option("--a", bs_a, "Barrier width")->required();
    PacketFlags bs_packet;
    bs_packet.attach(bs, "--packet-a");
    std::string bs_sweep_name, bs_sweep_range;
    bs->add_option("--sweep", bs_sweep_name, "Sweep axis: k0")
        ->needs(bs->add_option("--sweep-range", bs_sweep_range, "lo:hi:count[:lin|log]"));
    add_common(bs);

    // tdse
    auto* td = app.add_subcommand("tdse", "Direct split-step propagation oracle");
    PotentialFlags td_pot;
    td_pot.attach(td);
    PacketFlags td_packet;
    td_packet.attach(td);
    double x_min = 0.0, x_max = 0.0, dt = 0.0, t_max = 0.0;
    std::size_t grid_n = 0;
    td->add_option("--xmin", x_min, "Grid lower edge")->required();
    td->add_option("--xmax", x_max, "Grid upper edge")->required();
    td->add_option("--n", grid_n, "Grid samples (power of two)")->required();
    td->add_option("--dt", dt, "Time step (default: stability rule)");
    td->add_option("--tmax", t_max, "Time budget")->required();
    int frames = 0;
    td->add_option("--frames", frames, "Emit this many equally spaced |psi| snapshots");
    add_common(td);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pw->parsed()) return run_planewave(pw_pot, pw_k, out, format);
        if (pk->parsed()) return run_packet(pk_packet, nx, nk, out);
        if (ex->parsed())
            return run_exact(ex_pot, ex_packet, method, ex_sweep_name, ex_sweep_range, out, format);
        if (bs->parsed())
            return run_barrier_study(bs_v0, bs_a, bs_packet, bs_sweep_name, bs_sweep_range, out, format);
        if (td->parsed())
            return run_tdse(td_pot, td_packet, x_min, x_max, grid_n, dt, t_max, frames, out, format);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qscatter::cli

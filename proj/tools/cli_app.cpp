#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dunkl/csv_io.hpp"
#include "dunkl/decay_analysis.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/pde_solver.hpp"
#include "dunkl/profiles.hpp"
#include "dunkl/selftest.hpp"

namespace fs = std::filesystem;

namespace dunkl::cli {

namespace {

struct Common {
    double N = 3.0;
    int n = 0;
    double gamma = 0.0;
    unsigned threads = 0;
    std::string out = ".";
    unsigned seed = 1;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--N", c.N, "effective dimension N = 2 gamma + n (must be > 1)");
    sub->add_option("--n", c.n, "ambient dimension (use with --gamma instead of --N)");
    sub->add_option("--gamma", c.gamma, "sum of multiplicities");
    sub->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    sub->add_option("--out", c.out, "output directory")->envname("DUNKL_OUTPUT_DIR");
    sub->add_option("--seed", c.seed, "seed for generated profile suites");
}

EffectiveDimension resolve_dim(const Common& c) {
    EffectiveDimension d = c.n > 0 ? EffectiveDimension(c.n, c.gamma) : EffectiveDimension::from_N(c.N);
    if (!(d.N > 1.0)) throw_domain("effective dimension must satisfy N > 1, got ", d.N);
    return d;
}

std::string out_path(const Common& c, const std::string& file) {
    fs::create_directories(c.out);
    return (fs::path(c.out) / file).string();
}

std::string tag_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> parse_s_grid(const std::string& spec) {
    std::vector<double> s;
    if (spec == "auto" || spec.empty()) return s;
    auto split = [](const std::string& x, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(x);
        std::string p;
        while (std::getline(ss, p, sep)) parts.push_back(p);
        return parts;
    };
    try {
        if (spec.rfind("log:", 0) == 0) {
            auto p = split(spec.substr(4), ':');
            if (p.size() != 3) throw_domain("log grid needs log:a:b:n");
            return log_space(std::stod(p[0]), std::stod(p[1]), std::stoi(p[2]));
        }
        if (spec.find(':') != std::string::npos) {
            auto p = split(spec, ':');
            if (p.size() != 3) throw_domain("linear grid needs a:b:n");
            const double a = std::stod(p[0]), b = std::stod(p[1]);
            const int n = std::stoi(p[2]);
            for (int i = 0; i < n; ++i) s.push_back(a + (b - a) * i / std::max(1, n - 1));
            return s;
        }
        for (const auto& x : split(spec, ',')) s.push_back(std::stod(x));
    } catch (const std::invalid_argument&) {
        throw_domain("cannot parse s grid '", spec, "'");
    }
    for (double v : s)
        if (!(v >= 0.0)) throw_domain("s grid values must be >= 0");
    return s;
}

// ---------------------------------------------------------------------------

struct KernelCmd {
    Common c;
    std::string phase = "wave";
    double mu = 1.5;
    int j = 0;
    bool low = false;
    std::vector<double> t{10.0};
    std::string s_grid = "auto";
    double tol = 1e-8;
};

int cmd_kernel(const KernelCmd& k, std::ostream& out) {
    const auto dim = resolve_dim(k.c);
    const PhaseSpec p = PhaseSpec::parse(k.phase, k.mu);
    KernelOptions ko;
    ko.tol = k.tol;
    const Band band = k.low ? Band::S0() : Band::delta(k.j);
    const auto sw = sweep_kernel(p, dim, k.t, band, parse_s_grid(k.s_grid), ko);
    const std::string file = out_path(k.c, "kernel_" + p.name() + "_N" + tag_num(dim.N) + "_" +
                                               (k.low ? std::string("S0") : "j" + std::to_string(k.j)) + ".csv");
    std::ofstream os(file);
    write_kernel_sweep(os, sw);
    double worst = 0.0;
    for (const auto& s : sw.samples) worst = std::max(worst, s.err_est);
    out << "wrote " << sw.samples.size() << " rows to " << file << " (max err_est " << worst << ")\n";
    return worst <= k.tol ? kPass : kVerdictFail;
}

struct DecayCmd {
    Common c;
    std::string phase = "wave";
    double mu = 1.5;
    std::string regime = "high";
    int j = 0;
    double t_min = std::pow(10.0, 1.5), t_max = std::pow(10.0, 3.5);
    int t_count = 9;
    double tol = 0.15;
    double p = std::numeric_limits<double>::infinity();
    std::optional<double> s;
};

int cmd_decay(const DecayCmd& d, std::ostream& out) {
    const auto dim = resolve_dim(d.c);
    const PhaseSpec p = PhaseSpec::parse(d.phase, d.mu);
    std::vector<ReportRow> rows;
    bool pass = true;
    std::ostringstream summary;
    summary << std::fixed << std::setprecision(4);
    if (d.regime == "proposition") {
        VerifyOptions vo;
        vo.p = d.p;
        vo.s = d.s;
        const auto rep = verify_proposition(p, dim, proposition_for(p), d.tol, vo);
        for (const auto& r : rep.regimes) {
            rows.push_back({p.name(), dim.N, r.regime, r.theta_pred, r.fit.theta_hat, r.fit.residual_rms, r.fit.pass});
            summary << p.name() << " N=" << dim.N << " " << r.regime << ": predicted " << r.theta_pred << ", fitted "
                    << r.fit.theta_hat << (r.fit.pass ? "  PASS" : "  FAIL") << (r.partial ? "  (partial)" : "")
                    << "\n";
            if (r.partial) summary << "  note: " << r.note << "\n";
        }
        pass = rep.pass();
    } else {
        DecayRunOptions o;
        o.t_values = log_space(d.t_min, d.t_max, d.t_count);
        o.j = d.j;
        const Regime rg = parse_regime(d.regime);
        const auto run = run_decay(p, dim, rg, o, d.tol);
        rows.push_back({p.name(), dim.N, regime_name(rg), run.fit.theta_pred, run.fit.theta_hat, run.fit.residual_rms,
                        run.fit.pass});
        summary << p.name() << " N=" << dim.N << " " << regime_name(rg) << ": predicted " << run.fit.theta_pred
                << ", fitted " << run.fit.theta_hat << " over t in [" << run.fit.t_min << ", " << run.fit.t_max
                << "]" << (run.fit.pass ? "  PASS" : "  FAIL") << "\n";
        const std::string sfile =
            out_path(d.c, "decay_" + p.name() + "_N" + tag_num(dim.N) + "_" + regime_name(rg) + "_samples.csv");
        std::ofstream ss(sfile);
        ss << "# schema=1\nt,sup,s_at,err_est\n";
        for (std::size_t i = 0; i < run.t.size(); ++i)
            ss << fmt_double(run.t[i]) << ',' << fmt_double(run.sup[i]) << ',' << fmt_double(run.s_at[i]) << ','
               << fmt_double(run.err[i]) << '\n';
        pass = run.fit.pass;
    }
    const std::string file = out_path(d.c, "decay_" + p.name() + "_N" + tag_num(dim.N) + "_" + d.regime + ".csv");
    std::ofstream os(file);
    write_report(os, rows);
    out << summary.str() << "report: " << file << "\n";
    return pass ? kPass : kVerdictFail;
}

struct EvolveCmd {
    Common c;
    std::string phase = "schrodinger";
    double mu = 1.5;
    std::vector<double> t{1.0};
    std::string data = "gaussian";
    double r_max = 0.0, s_max = 12.0;
};

int cmd_evolve(const EvolveCmd& e, std::ostream& out) {
    const auto dim = resolve_dim(e.c);
    const PhaseSpec p = PhaseSpec::parse(e.phase, e.mu);
    double tmax = 0.0;
    for (double t : e.t) tmax = std::max(tmax, std::abs(t));
    // room for the data (~15) plus group-velocity transport
    const double r_max = e.r_max > 0 ? e.r_max : 15.0 + tmax * max_group_speed(p, e.s_max);
    const auto tr = RadialTransform::make(dim, r_max, e.s_max);
    const auto u0 = sample(tr.physical(), named_profile(e.data));
    const double m0 = mass(u0);
    auto energy = [&](const RadialProfile& u) {
        const auto uh = tr.forward(u);
        double acc = 0.0;
        for (std::size_t i = 0; i < uh.size(); ++i)
            acc += uh.grid->weights[i] * phase_value(p, uh.grid->nodes[i]) * std::norm(uh.values[i]);
        return acc;
    };
    const double en0 = energy(u0);
    std::vector<IndexRow> idx;
    double drift = 0.0;
    for (std::size_t k = 0; k < e.t.size(); ++k) {
        const auto u = evolve(tr, p, e.t[k], u0);
        const std::string name = "evolve_" + p.name() + "_" + std::to_string(k) + ".csv";
        write_profile(out_path(e.c, name), u);
        const double m = mass(u);
        drift = std::max(drift, std::abs(m - m0) / m0);
        idx.push_back({e.t[k], name, m, energy(u)});
        if (u.warning) out << "warning at t=" << e.t[k] << ": " << *u.warning << "\n";
    }
    const std::string file = out_path(e.c, "evolve_" + p.name() + "_index.csv");
    std::ofstream os(file);
    write_trajectory_index(os, idx);
    out << "mass drift " << drift << (drift < 1e-6 ? " (< 1e-6)" : " (exceeds 1e-6)") << "; initial energy " << en0
        << "\nindex: " << file << "\n";
    return drift < 1e-6 ? kPass : kVerdictFail;
}

struct SolveCmd {
    Common c;
    std::string eq = "kg";
    double alpha = 1.8, lambda = 1.0, delta = 1e-3;
    double T = 20.0, dt = 0.05, eps = 1e-8;
    int max_iter = 50;
    int every = 20;
    std::string data = "gaussian";
    double r_max = 0.0, s_max = 12.0;
};

int cmd_solve(const SolveCmd& s, std::ostream& out) {
    if (s.every < 1) throw_domain("--snapshot-every must be >= 1");
    const auto dim = resolve_dim(s.c);
    const Equation eq = parse_equation(s.eq);
    if (!is_second_order(eq)) throw_domain("solve handles wave, kg and beam");
    double speed = 1.0;
    if (eq == Equation::Beam) speed = max_group_speed(PhaseSpec::beam(), s.s_max);
    const double r_max = s.r_max > 0 ? s.r_max : 15.0 + s.T * speed;
    const auto tr = RadialTransform::make(dim, r_max, s.s_max);
    CauchyData data;
    data.eq = eq;
    const auto f = named_profile(s.data);
    data.u0 = sample(tr.physical(), [&](double r) { return s.delta * f(r); });
    data.u1 = sample(tr.physical(), [](double) { return cplx(0.0); });
    SolverConfig cfg;
    cfg.T = s.T;
    cfg.dt = s.dt;
    cfg.eps = s.eps;
    cfg.max_iter = s.max_iter;
    const NonlinearitySpec nl(s.alpha, s.lambda);
    const auto res = solve_nonlinear(tr, data, nl, cfg);

    // energy with u_t from central differences of the stored frames
    const auto& tj = res.traj;
    const std::size_t K = tj.u.size();
    const double h = K > 1 ? tj.t[1] - tj.t[0] : 1.0;
    std::vector<IndexRow> idx;
    const std::string stem = "solve_" + equation_name(eq);
    for (std::size_t k = 0; k < K; k += s.every) {
        const std::size_t a = k == 0 ? 0 : k - 1, b = std::min(k + 1, K - 1);
        RadialProfile ut = tj.u[b];
        for (std::size_t i = 0; i < ut.size(); ++i) ut.values[i] = (tj.u[b].values[i] - tj.u[a].values[i]) / ((b - a) * h);
        double pot = 0.0;
        for (std::size_t i = 0; i < ut.size(); ++i)
            pot += tr.physical()->weights[i] * std::pow(std::abs(tj.u[k].values[i]), s.alpha + 2.0);
        const double en = linear_energy(tr, eq, tj.u[k], ut) + s.lambda / (s.alpha + 2.0) * pot;
        const std::string name = stem + "_" + std::to_string(k) + ".csv";
        write_profile(out_path(s.c, name), tj.u[k]);
        idx.push_back({tj.t[k], name, mass(tj.u[k]), en});
    }
    {
        std::ofstream os(out_path(s.c, stem + "_index.csv"));
        write_trajectory_index(os, idx);
    }
    const bool ok = res.converged && res.residual < 10.0 * s.eps && res.CM_alpha < 0.5;
    std::ostringstream rep;
    rep << "equation " << equation_name(eq) << ", N=" << dim.N << ", alpha=" << s.alpha << ", lambda=" << s.lambda
        << ", delta=" << s.delta << ", T=" << s.T << ", dt=" << s.dt << ", eps=" << s.eps << "\n";
    rep << "critical index: ";
    if (eq == Equation::KleinGordon)
        rep << critical_index(CriticalEq::KG, dim.N);
    else if (eq == Equation::Beam)
        rep << critical_index(CriticalEq::Beam, dim.N);
    else
        rep << "n/a";
    rep << "\n" << res.report() << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
    {
        std::ofstream os(out_path(s.c, stem + "_report.txt"));
        os << rep.str();
    }
    out << rep.str();
    return ok ? kPass : kVerdictFail;
}

int cmd_selftest(std::ostream& out) {
    const auto results = run_selftest();
    bool all = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.module << ": " << r.name << " [" << r.detail << "]\n";
        all = all && r.pass;
    }
    out << (all ? "selftest passed\n" : "selftest FAILED\n");
    return all ? kPass : kVerdictFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial Dunkl spectral calculus: kernels, decay fits, evolution and Duhamel solver"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; [kernel], [decay], ... sections per command");
    app.allow_config_extras(CLI::config_extras_mode::error);

    KernelCmd kc;
    auto* k = app.add_subcommand("kernel", "sweep II_j(s) or the S0 kernel and write a KernelSweep CSV");
    add_common(k, kc.c);
    k->add_option("--phase", kc.phase, "wave|schrodinger|frac|fourth|kg|beam");
    k->add_option("--mu", kc.mu, "fractional order");
    k->add_option("--j", kc.j, "dyadic band index");
    k->add_flag("--low", kc.low, "S0 kernel instead of a band");
    k->add_option("--t", kc.t, "time value(s)");
    k->add_option("--s-grid", kc.s_grid, "auto | a:b:n | log:a:b:n | comma list");
    k->add_option("--tol", kc.tol, "absolute quadrature tolerance");

    DecayCmd dc;
    auto* d = app.add_subcommand("decay", "fit decay exponents and compare with the predicted ones");
    add_common(d, dc.c);
    d->add_option("--phase", dc.phase);
    d->add_option("--mu", dc.mu);
    d->add_option("--regime", dc.regime, "high | low | low-band | proposition");
    d->add_option("--j", dc.j);
    d->add_option("--t-min", dc.t_min);
    d->add_option("--t-max", dc.t_max);
    d->add_option("--t-count", dc.t_count);
    d->add_option("--tol", dc.tol, "tolerance on the fitted exponent");
    d->add_option("--p", dc.p, "Lebesgue exponent for --regime proposition");
    d->add_option("--s", dc.s, "Besov regularity for --regime proposition");

    EvolveCmd ec;
    auto* e = app.add_subcommand("evolve", "apply U_t to a named profile and write snapshots");
    add_common(e, ec.c);
    e->add_option("--phase", ec.phase);
    e->add_option("--mu", ec.mu);
    e->add_option("--t", ec.t);
    e->add_option("--data", ec.data, "gaussian | gaussian-wide | r2gauss | ring | chirp");
    e->add_option("--r-max", ec.r_max);
    e->add_option("--s-max", ec.s_max);

    SolveCmd sc;
    auto* s = app.add_subcommand("solve", "Picard/Duhamel solver for the nonlinear wave/KG/beam equations");
    add_common(s, sc.c);
    s->add_option("--eq", sc.eq, "kg | beam | wave");
    s->add_option("--alpha", sc.alpha);
    s->add_option("--lambda", sc.lambda);
    s->add_option("--delta", sc.delta, "amplitude of the initial data");
    s->add_option("--T", sc.T);
    s->add_option("--dt", sc.dt);
    s->add_option("--eps", sc.eps, "Picard tolerance (relative)");
    s->add_option("--max-iter", sc.max_iter);
    s->add_option("--snapshot-every", sc.every);
    s->add_option("--data", sc.data);
    s->add_option("--r-max", sc.r_max);
    s->add_option("--s-max", sc.s_max);

    Common tc;
    auto* t = app.add_subcommand("selftest", "run the quick property suite");
    t->add_option("--threads", tc.threads);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& ex) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp& ex) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    }

    try {
        if (k->parsed()) {
            set_num_threads(kc.c.threads);
            return cmd_kernel(kc, out);
        }
        if (d->parsed()) {
            set_num_threads(dc.c.threads);
            return cmd_decay(dc, out);
        }
        if (e->parsed()) {
            set_num_threads(ec.c.threads);
            return cmd_evolve(ec, out);
        }
        if (s->parsed()) {
            set_num_threads(sc.c.threads);
            return cmd_solve(sc, out);
        }
        if (t->parsed()) {
            set_num_threads(tc.threads);
            return cmd_selftest(out);
        }
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const AccuracyError& ex) {
        err << "accuracy budget exceeded: " << ex.what() << "\n";
        return kAccuracy;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kVerdictFail;
    }
    return kUsage;
}

}  // namespace dunkl::cli

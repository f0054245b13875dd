// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "dunkl/decay_analysis.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/littlewood_paley.hpp"
#include "dunkl/pde_solver.hpp"
#include "dunkl/profiles.hpp"
#include "dunkl/propagator.hpp"
#include "dunkl/special_functions.hpp"

using namespace dunkl;

namespace {

double rel_l2(const RadialProfile& a, const RadialProfile& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += a.grid->weights[i] * std::norm(a.values[i] - b.values[i]);
        den += a.grid->weights[i] * std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s -- %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), sec);
    std::fflush(stdout);
}

Outcome fit_in(const PhaseSpec& p, Regime rg, double lo, double hi) {
    const auto run = run_decay(p, EffectiveDimension::from_N(3.0), rg);
    std::ostringstream os;
    os << "theta_hat=" << run.fit.theta_hat << " predicted=" << run.fit.theta_pred << " over t in [" << run.fit.t_min
       << ", " << run.fit.t_max << "], window [" << lo << ", " << hi << "]";
    return {run.fit.theta_hat >= lo && run.fit.theta_hat <= hi, os.str()};
}

}  // namespace

int main() {
    criterion(1, "transform fixed point, round trip, Plancherel", [] {
        double fix = 0.0, trip = 0.0, plan = 0.0;
        for (double N : {2.0, 3.0, 3.5, 5.0}) {
            const auto tr = RadialTransform::make_default(EffectiveDimension::from_N(N));
            const auto g = sample(tr.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
            const auto G = tr.forward(g);
            const auto ref = sample(tr.frequency(), [](double s) { return cplx(std::exp(-0.5 * s * s)); }, Space::Frequency);
            fix = std::max(fix, rel_l2(G, ref));
            trip = std::max(trip, rel_l2(tr.inverse(G), g));
        }
        const auto tr = RadialTransform::make_default(EffectiveDimension::from_N(3.0));
        for (const auto& np : schwartz_suite(2024, 10)) {
            const auto f = sample(tr.physical(), np.f);
            const double a = weighted_lp_norm(f, 2.0), b = weighted_lp_norm(tr.forward(f), 2.0);
            plan = std::max(plan, std::abs(a - b) / a);
        }
        std::ostringstream os;
        os << "fixed point " << fix << ", round trip " << trip << ", Plancherel " << plan;
        return Outcome{fix < 1e-7 && trip < 1e-7 && plan < 1e-7, os.str()};
    });

    criterion(2, "Littlewood-Paley partition of unity and band support", [] {
        const auto b = make_bump();
        double unity = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double r = 1000.0 * i / 999.0;
            double sum = b.R(r);
            const int J = r > 1.0 ? static_cast<int>(std::ceil(std::log2(r))) + 1 : 1;
            for (int j = 0; j <= J; ++j) sum += b.psi(j, r);
            unity = std::max(unity, std::abs(sum - 1.0));
        }
        double support = 0.0;
        const auto dim = EffectiveDimension::from_N(3.0);
        for (int j = 0; j <= 2; ++j) {
            const double w = std::ldexp(1.0, j);
            const auto tr = RadialTransform::make(dim, 800.0 / w, 6.0 * w);
            const auto g = sample(tr.physical(), [&](double r) { return cplx(std::exp(-0.125 * r * r * w * w)); });
            const auto F = tr.forward(project(tr, g, Band::delta(j), b));
            double peak = 0.0, outside = 0.0;
            for (std::size_t i = 0; i < F.size(); ++i) {
                const double s = F.grid->nodes[i], a = std::abs(F.values[i]);
                peak = std::max(peak, a);
                if (s < 0.5 * w || s > 2.0 * w) outside = std::max(outside, a);
            }
            support = std::max(support, outside / peak);
        }
        std::ostringstream os;
        os << "partition " << unity << ", outside-band/peak " << support;
        return Outcome{unity < 1e-12 && support < 1e-10, os.str()};
    });

    criterion(3, "Bessel recurrence, envelope, decomposition", [] {
        double rec = 0.0;
        for (double nu : {0.0, 0.5, 0.75, 1.5, 2.5}) {
            const BesselKernel k(nu), k1(nu + 1.0);
            const double h = 1e-5;
            for (int i = 0; i < 100; ++i) {
                const double x = 0.1 + i * (19.9 / 99.0);
                const double fd = (k.kernel(x + h) - k.kernel(x - h)) / (2 * h);
                const double rhs = -std::pow(x, -nu) * k1.j(x);
                rec = std::max(rec, std::abs(fd - rhs) / std::max(std::abs(rhs), 1e-3));
            }
        }
        double env = 0.0;
        for (double nu : {0.0, 0.5, 1.5, 2.2}) {
            const BesselKernel bk(nu);
            auto decade_max = [&](double a, double b) {
                double m = 0.0;
                for (double x = a; x <= b; x += 0.05) m = std::max(m, std::abs(bk.j(x)) * std::sqrt(x));
                return m;
            };
            const double m2 = decade_max(100.0, 1000.0), m3 = decade_max(1000.0, 10000.0);
            env = std::max(env, std::abs(m2 - m3) / m3);
        }
        double dec = 0.0;
        for (double N : {3.0, 5.0}) {
            const HAux h(N);
            const double C = h.decomposition_constant();
            const BesselKernel bk(0.5 * (N - 2.0));
            for (int i = 0; i <= 98; ++i) {
                const double x = 1.0 + i * 0.5;
                const auto hx = h(x);
                const std::complex<double> e(std::cos(x), std::sin(x));
                const double got = C * (e * hx + std::conj(e) * std::conj(hx)).real();
                const double ref = bk.kernel(x);
                dec = std::max(dec, std::abs(got - ref) /
                                        std::max(std::abs(ref), 1e-3 * bk.at_zero() * std::pow(x, -0.5 * (N - 1.0))));
            }
        }
        std::ostringstream os;
        os << "recurrence " << rec << ", envelope drift " << env << ", decomposition " << dec;
        return Outcome{rec < 1e-6 && env < 0.05 && dec < 1e-6, os.str()};
    });

    criterion(4, "wave high-frequency decay, N=3, j=0",
              [] { return fit_in(PhaseSpec::wave(), Regime::HighFreqBand, 0.85, 1.15); });
    criterion(5, "Schrodinger high-frequency decay, N=3",
              [] { return fit_in(PhaseSpec::schrodinger(), Regime::HighFreqBand, 1.35, 1.65); });
    criterion(6, "Klein-Gordon low-frequency sum decay, N=3",
              [] { return fit_in(PhaseSpec::klein_gordon(), Regime::LowFreqSum, 1.35, 1.65); });
    criterion(7, "beam low-frequency sum decay, N=3",
              [] { return fit_in(PhaseSpec::beam(), Regime::LowFreqSum, 0.60, 0.90); });

    criterion(8, "Schrodinger band kernels are j-uniform at t=100", [] {
        const auto dim = EffectiveDimension::from_N(3.0);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::ostringstream os;
        os << "log2 sup:";
        for (int j = 0; j <= 4; ++j) {
            const double y = std::log2(kernel_sup(PhaseSpec::schrodinger(), dim, 100.0, Band::delta(j)).sup);
            os << ' ' << y;
            sx += j;
            sy += y;
            sxx += j * j;
            sxy += j * y;
        }
        const double slope = (5 * sxy - sx * sy) / (5 * sxx - sx * sx);
        os << "; slope " << slope << " (expected 0 +- 0.3)";
        return Outcome{std::abs(slope) <= 0.3, os.str()};
    });

    criterion(9, "propagator unitarity and group law, all catalog phases", [] {
        double unit = 0.0, group = 0.0;
        for (const auto& p : catalog_phases()) {
            // wide data; multipliers that are not smooth at s = 0 need room for algebraic tails
            const auto tr =
                RadialTransform::make(EffectiveDimension::from_N(3.0), 600.0 + 10.0 * max_group_speed(p, 1.6), 2.2);
            const auto u = sample(tr.physical(), [](double r) { return cplx(std::exp(-r * r / 32.0)); });
            const double n0 = weighted_lp_norm(u, 2.0);
            for (double t : {0.1, 1.0, 10.0})
                unit = std::max(unit, std::abs(weighted_lp_norm(evolve(tr, p, t, u), 2.0) - n0) / n0);
            group = std::max(group, rel_l2(evolve(tr, p, 2.5, evolve(tr, p, 4.0, u)), evolve(tr, p, 6.5, u)));
        }
        std::ostringstream os;
        os << "unitarity " << unit << ", group law " << group;
        return Outcome{unit < 1e-6 && group < 1e-6, os.str()};
    });

    criterion(10, "linear conservation on [0, 10]", [] {
        const auto dim = EffectiveDimension::from_N(3.0);
        std::vector<double> ts;
        for (int k = 0; k <= 20; ++k) ts.push_back(0.5 * k);
        std::ostringstream os;
        bool ok = true;
        {
            const auto tr = RadialTransform::make(dim, 15.0 + 10.0 * 20.0, 10.0);
            CauchyData d;
            d.eq = Equation::SchrodingerLike;
            d.phase = PhaseSpec::schrodinger();
            d.u0 = sample(tr.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
            const auto tj = solve_linear(tr, d, ts);
            const double m0 = mass(d.u0);
            double drift = 0.0;
            for (const auto& u : tj.u) drift = std::max(drift, std::abs(mass(u) - m0) / m0);
            os << "schrodinger mass " << drift;
            ok = ok && drift < 1e-6;
        }
        for (auto eq : {Equation::KleinGordon, Equation::Beam, Equation::Wave}) {
            const double speed = eq == Equation::Beam ? 16.0 : 1.0;
            const auto tr = RadialTransform::make(dim, 15.0 + 10.0 * speed, 8.0);
            CauchyData d;
            d.eq = eq;
            d.u0 = sample(tr.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
            d.u1 = sample(tr.physical(), [](double r) { return cplx(r * r * std::exp(-0.5 * r * r)); });
            const auto tj = solve_linear(tr, d, ts);
            const double e0 = linear_energy(tr, eq, tj.u[0], tj.ut[0]);
            double drift = 0.0;
            for (std::size_t k = 0; k < ts.size(); ++k)
                drift = std::max(drift, std::abs(linear_energy(tr, eq, tj.u[k], tj.ut[k]) - e0) / e0);
            os << ", " << equation_name(eq) << " energy " << drift;
            ok = ok && drift < 1e-6;
        }
        return Outcome{ok, os.str()};
    });

    criterion(11, "nonlinear Klein-Gordon small data, N=2, alpha=1.8", [] {
        const auto dim = EffectiveDimension::from_N(2.0);
        const NonlinearitySpec F(1.8, 1.0);
        auto run = [&](double T) {
            const auto tr = RadialTransform::make(dim, 15.0 + T, 8.0);
            CauchyData d;
            d.eq = Equation::KleinGordon;
            d.u0 = sample(tr.physical(), [](double r) { return cplx(1e-3 * std::exp(-0.5 * r * r)); });
            d.u1 = sample(tr.physical(), [](double) { return cplx(0.0); });
            SolverConfig cfg;
            cfg.T = T;
            cfg.dt = 0.1;
            return std::pair{solve_nonlinear(tr, d, F, cfg), cfg.eps};
        };
        const auto [a, eps] = run(20.0);
        const auto [b, eps2] = run(40.0);
        double worst_ratio = 0.0;
        for (std::size_t k = 1; k < a.increments.size(); ++k)
            if (a.increments[k] < a.increments[0] && a.increments[k] > 1e-15)
                worst_ratio = std::max(worst_ratio, a.increments[k] / a.increments[k - 1]);
        const double growth = std::abs(b.x_norm - a.x_norm) / a.x_norm;
        std::ostringstream os;
        os << "iterations " << a.iterations << ", worst ratio " << worst_ratio << ", residual " << a.residual
           << ", sup/sup_lin " << a.sup_u / a.sup_linear << ", CM^a " << a.CM_alpha << ", X norm T=20 " << a.x_norm
           << " T=40 " << b.x_norm << " (change " << growth << ")";
        const bool ok = a.converged && b.converged && worst_ratio <= 0.5 && a.residual < 10.0 * eps &&
                        b.residual < 10.0 * eps2 && a.sup_u <= 2.0 * a.sup_linear && b.sup_u <= 2.0 * b.sup_linear &&
                        growth <= 0.1;
        return Outcome{ok, os.str()};
    });

    criterion(12, "critical indices", [] {
        const double k3 = critical_index(CriticalEq::KG, 3.0);
        const double b3 = critical_index(CriticalEq::Beam, 3.0);
        const double err = std::abs(b3 - (1.0 + std::sqrt(97.0)) / 6.0);
        std::ostringstream os;
        os.precision(17);
        os << "alpha_K(3) = " << k3 << ", alpha_B(3) = " << b3 << " (error " << err << ")";
        return Outcome{k3 == 1.0 && err < 1e-12, os.str()};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "dunkl/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "dunkl/decay_analysis.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/pde_solver.hpp"
#include "dunkl/profiles.hpp"

namespace dunkl {

namespace {

double rel_l2(const RadialProfile& a, const RadialProfile& b) {
    double e = 0, n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e += a.grid->weights[i] * std::norm(a.values[i] - b.values[i]);
        n += a.grid->weights[i] * std::norm(b.values[i]);
    }
    return std::sqrt(e / n);
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    std::vector<CheckResult> out;
    auto check = [&](const char* mod, const char* name, const std::function<std::pair<bool, double>()>& fn) {
        try {
            auto [ok, v] = fn();
            std::ostringstream os;
            os << v;
            out.push_back({mod, name, ok, os.str()});
        } catch (const std::exception& e) {
            out.push_back({mod, name, false, std::string("exception: ") + e.what()});
        }
    };

    check("special_functions", "J_1/2 closed form", [] {
        BesselKernel b(0.5);
        double worst = 0;
        for (int i = 1; i <= 200; ++i) {
            const double x = 0.37 * i;
            worst = std::max(worst, std::abs(b.j(x) - std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x)));
        }
        return std::pair{worst < 1e-10, worst};
    });
    check("special_functions", "kernel derivative recurrence", [] {
        BesselKernel k(0.75), k1(1.75);
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const double x = 0.1 + 19.9 * i / 49.0, h = 1e-4;
            const double fd = (k(x + h) - k(x - h)) / (2 * h);
            const double ex = -std::pow(x, -0.75) * k1.j(x);
            worst = std::max(worst, std::abs(fd - ex) / std::max(std::abs(ex), 1e-3));
        }
        return std::pair{worst < 1e-6, worst};
    });
    check("special_functions", "Bessel-Fourier decomposition N=5", [] {
        HAux h(5.0);
        BesselKernel k(1.5);
        double worst = 0;
        for (double x : {1.0, 3.0, 10.0, 37.0}) {
            const cplx hx = h(x);
            const double v = h.decomposition_constant() * 2.0 * std::real(std::polar(1.0, x) * hx);
            worst = std::max(worst, std::abs(v - k(x)) / std::max(std::abs(k(x)), 1e-12));
        }
        return std::pair{worst < 1e-6, worst};
    });
    check("dunkl_spectral", "Gaussian fixed point + round trip (N=3.5)", [] {
        auto tr = RadialTransform::make_default(EffectiveDimension::from_N(3.5));
        auto f = sample(tr.physical(), named_profile("gaussian"));
        auto g = tr.forward(f);
        RadialProfile gf(tr.physical(), g.values, Space::Physical);
        const double e = std::max(rel_l2(gf, f), rel_l2(tr.inverse(g), f));
        return std::pair{e < 1e-7, e};
    });
    check("dunkl_spectral", "Plancherel on seeded suite", [] {
        auto tr = RadialTransform::make_default(EffectiveDimension::from_N(3.0));
        double worst = 0;
        for (const auto& p : schwartz_suite(7, 10)) {
            auto f = sample(tr.physical(), p.f);
            const double a = weighted_lp_norm(f, 2), b = weighted_lp_norm(tr.forward(f), 2);
            worst = std::max(worst, std::abs(a - b) / a);
        }
        return std::pair{worst < 1e-7, worst};
    });
    check("littlewood_paley", "partition of unity", [] {
        BumpProfile b;
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const double r = 1000.0 * i / 999.0;
            double s = b.R(r);
            const int J = r > 1 ? static_cast<int>(std::ceil(std::log2(r))) + 1 : 1;
            for (int j = 0; j <= J; ++j) s += b.psi(j, r);
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return std::pair{worst < 1e-12, worst};
    });
    check("propagator", "unitarity of all catalog phases at t=1", [] {
        auto dim = EffectiveDimension::from_N(3.0);
        double worst = 0;
        for (const auto& p : catalog_phases()) {
            const double sm = 3.0;
            auto tr = RadialTransform::make(dim, 30.0 + max_group_speed(p, 1.2), sm);
            auto f = sample(tr.physical(), named_profile("gaussian-wide"));
            const double a = weighted_lp_norm(f, 2), b = weighted_lp_norm(evolve(tr, p, 1.0, f), 2);
            worst = std::max(worst, std::abs(a - b) / a);
        }
        return std::pair{worst < 1e-6, worst};
    });
    check("propagator", "t=0 band kernel is phase independent", [] {
        auto dim = EffectiveDimension::from_N(3.0);
        const cplx a = kernel_band(PhaseSpec::wave(), dim, 0.0, 0, 1.3).value;
        const cplx b = kernel_band(PhaseSpec::schrodinger(), dim, 0.0, 0, 1.3).value;
        return std::pair{std::abs(a - b) < 1e-14, std::abs(a - b)};
    });
    check("decay_analysis", "exact power-law fit", [] {
        std::vector<std::pair<double, double>> s;
        for (double t : log_space(10, 1000, 9)) s.emplace_back(t, 5.0 * std::pow(t, -1.5));
        const auto f = fit_decay(s);
        return std::pair{std::abs(f.theta_hat - 1.5) < 1e-12, f.theta_hat};
    });
    check("decay_analysis", "wave band decay exponent (N=3, j=0)", [] {
        DecayRunOptions o;
        o.t_values = log_space(std::pow(10.0, 1.5), std::pow(10.0, 3.0), 5);
        auto r = run_decay(PhaseSpec::wave(), EffectiveDimension::from_N(3.0), Regime::HighFreqBand, o);
        return std::pair{r.fit.pass, r.fit.theta_hat};
    });
    check("pde_solver", "KG linear energy conservation", [] {
        auto dim = EffectiveDimension::from_N(3.0);
        auto tr = RadialTransform::make(dim, 25.0, 10.0);
        CauchyData d;
        d.eq = Equation::KleinGordon;
        d.u0 = sample(tr.physical(), named_profile("gaussian"));
        d.u1 = sample(tr.physical(), [](double) { return cplx(0.0); });
        auto tj = solve_linear(tr, d, {0.0, 5.0, 10.0});
        const double e0 = linear_energy(tr, d.eq, tj.u[0], tj.ut[0]);
        double worst = 0;
        for (std::size_t k = 1; k < tj.t.size(); ++k)
            worst = std::max(worst, std::abs(linear_energy(tr, d.eq, tj.u[k], tj.ut[k]) - e0) / e0);
        return std::pair{worst < 1e-6, worst};
    });
    check("pde_solver", "critical indices", [] {
        const double a = critical_index(CriticalEq::KG, 3.0), b = critical_index(CriticalEq::Beam, 3.0);
        const double e = std::max(std::abs(a - 1.0), std::abs(b - (1.0 + std::sqrt(97.0)) / 6.0));
        return std::pair{e < 1e-12, e};
    });
    return out;
}

}  // namespace dunkl

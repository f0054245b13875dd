#include "dunkl/pde_solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

bool is_second_order(Equation eq) {
    return eq == Equation::Wave || eq == Equation::KleinGordon || eq == Equation::Beam;
}

std::string equation_name(Equation eq) {
    switch (eq) {
        case Equation::SchrodingerLike: return "schrodinger";
        case Equation::FourthOrder: return "fourth";
        case Equation::Wave: return "wave";
        case Equation::KleinGordon: return "kg";
        case Equation::Beam: return "beam";
    }
    return "?";
}

Equation parse_equation(const std::string& raw) {
    std::string s = raw;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "schrodinger" || s == "schroedinger" || s == "frac" || s == "fractional") return Equation::SchrodingerLike;
    if (s == "fourth") return Equation::FourthOrder;
    if (s == "wave") return Equation::Wave;
    if (s == "kg" || s == "klein-gordon") return Equation::KleinGordon;
    if (s == "beam") return Equation::Beam;
    throw_domain("unknown equation '", raw, "'");
}

void CauchyData::check() const {
    u0.check();
    if (u0.space != Space::Physical) throw_domain("Cauchy data must be in physical space");
    if (is_second_order(eq) && !u1) throw_domain(equation_name(eq), " is second order: u1 is required");
    if (!is_second_order(eq) && u1) throw_domain(equation_name(eq), " is first order: u1 must be absent");
    if (u1) {
        u1->check();
        if (u1->grid->nodes != u0.grid->nodes) throw_domain("u0 and u1 must share a grid");
    }
}

PhaseSpec CauchyData::first_order_phase() const {
    return eq == Equation::FourthOrder ? PhaseSpec::fourth_order() : phase;
}

NonlinearitySpec::NonlinearitySpec(double a, double l) : alpha(a), lambda(l) {
    if (!(a > 0.0) || !std::isfinite(a)) throw_domain("nonlinearity power must be > 0, got ", a);
    if (!std::isfinite(l)) throw_domain("nonlinearity coefficient must be finite");
}

void SolverConfig::check() const {
    if (!(T > 0.0)) throw_domain("solver horizon T must be > 0");
    if (!(dt > 0.0) || dt > T) throw_domain("solver dt must lie in (0, T]");
    if (!(eps > 0.0)) throw_domain("Picard tolerance must be > 0");
    if (max_iter < 1) throw_domain("max_iter must be >= 1");
    if (rule != "trapezoid") throw_domain("only the trapezoid Duhamel rule is implemented, got '", rule, "'");
}

double omega(Equation eq, double s) {
    switch (eq) {
        case Equation::Wave: return s;
        case Equation::KleinGordon: return std::sqrt(1.0 + s * s);
        case Equation::Beam: return std::sqrt(1.0 + s * s * s * s);
        default: break;
    }
    throw_domain("omega is only defined for second-order equations, not ", equation_name(eq));
}

LinearMultipliers linear_propagators(Equation eq, double t) {
    if (!is_second_order(eq)) throw_domain("linear_propagators needs a second-order equation, got ", equation_name(eq));
    LinearMultipliers m;
    m.m_cos = [eq, t](double s) { return std::cos(t * omega(eq, s)); };
    m.m_sinc = [eq, t](double s) {
        const double w = omega(eq, s);
        if (w * std::abs(t) < 1e-8) return t;  // sinc limit
        return std::sin(t * w) / w;
    };
    return m;
}

double mass(const RadialProfile& u) { return weighted_lp_norm(u, 2.0); }

double linear_energy(const RadialTransform& tr, Equation eq, const RadialProfile& u, const RadialProfile& ut) {
    const RadialProfile uh = tr.forward(u), vh = tr.forward(ut);
    double e = 0.0;
    const auto& g = *tr.frequency();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = omega(eq, g.nodes[i]);
        e += g.weights[i] * (std::norm(vh.values[i]) + w * w * std::norm(uh.values[i]));
    }
    return 0.5 * e;
}

Trajectory solve_linear(const RadialTransform& tr, const CauchyData& data, const std::vector<double>& t_grid) {
    data.check();
    Trajectory out;
    const RadialProfile a = tr.forward(data.u0);
    std::optional<RadialProfile> b;
    if (data.u1) b = tr.forward(*data.u1);
    const auto& s = tr.frequency()->nodes;
    for (double t : t_grid) {
        RadialProfile uh = a;
        if (!is_second_order(data.eq)) {
            const PhaseSpec ph = data.first_order_phase();
            for (std::size_t i = 0; i < s.size(); ++i) uh.values[i] *= std::polar(1.0, t * phase_value(ph, s[i]));
            out.t.push_back(t);
            out.u.push_back(tr.inverse(uh));
            continue;
        }
        RadialProfile vh = a;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double w = omega(data.eq, s[i]);
            const double c = std::cos(t * w), sn = std::sin(t * w);
            const double sinc = (w * std::abs(t) < 1e-8) ? t : sn / w;
            uh.values[i] = c * a.values[i] + sinc * b->values[i];
            vh.values[i] = -w * sn * a.values[i] + c * b->values[i];
        }
        out.t.push_back(t);
        out.u.push_back(tr.inverse(uh));
        out.ut.push_back(tr.inverse(vh));
    }
    return out;
}

double x_norm(const RadialGrid& g, const std::vector<cplx>& block, std::size_t times, double dt, double alpha) {
    const std::size_t n = g.size();
    const double px = alpha + 2.0, pt = alpha + 1.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < times; ++k) {
        double sx = 0.0;
        for (std::size_t i = 0; i < n; ++i) sx += g.weights[i] * std::pow(std::abs(block[k * n + i]), px);
        acc += dt * std::pow(sx, pt / px);
    }
    return std::pow(acc, 1.0 / pt);
}

namespace {

// D_k = int_0^{t_k} sin((t_k - tau) w)/w Fh(tau) dtau by the trapezoid rule,
// using sin(a - b) = sin a cos b - cos a sin b so each frequency is one pass.
void duhamel(const std::vector<double>& w, const std::vector<cplx>& Fh, std::size_t times, double dt,
             std::vector<cplx>& D) {
    const std::size_t ns = w.size();
    D.assign(ns * times, cplx(0.0));
    parallel_for(ns, [&](std::size_t i) {
        cplx C = 0.0, S = 0.0;
        cplx c0 = 0.0, s0 = 0.0;
        for (std::size_t k = 0; k < times; ++k) {
            const double tau = k * dt;
            const double cw = std::cos(tau * w[i]), sw = std::sin(tau * w[i]);
            const cplx f = Fh[k * ns + i];
            if (k == 0) {
                c0 = cw * f;
                s0 = sw * f;
                D[i] = 0.0;
                continue;
            }
            C += cw * f;
            S += sw * f;
            // trapezoid: dt * (sum_{m<=k} - (f_0 + f_k)/2)
            const cplx Ck = dt * (c0 + C - 0.5 * (c0 + cw * f));
            const cplx Sk = dt * (s0 + S - 0.5 * (s0 + sw * f));
            const double st = std::sin(tau * w[i]), ct = std::cos(tau * w[i]);
            if (w[i] * tau < 1e-8) {
                D[k * ns + i] = 0.0;
            } else {
                D[k * ns + i] = (st * Ck - ct * Sk) / w[i];
            }
        }
    });
}

struct Stage {
    const RadialTransform& tr;
    Equation eq;
    NonlinearitySpec nl;
    std::vector<double> w;

    // physical block -> frequency Duhamel block
    void apply(const std::vector<cplx>& U, std::size_t times, double dt, std::vector<cplx>& D) const {
        std::vector<cplx> F(U.size());
        for (std::size_t k = 0; k < U.size(); ++k) F[k] = nl(U[k]);
        std::vector<cplx> Fh;
        tr.forward_many(F, times, Fh);
        duhamel(w, Fh, times, dt, D);
    }
};

std::vector<cplx> linear_block(const RadialTransform& tr, Equation eq, const RadialProfile& a,
                               const RadialProfile& b, std::size_t times, double dt) {
    const auto& s = tr.frequency()->nodes;
    const std::size_t ns = s.size();
    std::vector<cplx> L(ns * times);
    for (std::size_t k = 0; k < times; ++k) {
        const double t = k * dt;
        for (std::size_t i = 0; i < ns; ++i) {
            const double w = omega(eq, s[i]);
            const double sinc = (w * t < 1e-8) ? t : std::sin(t * w) / w;
            L[k * ns + i] = std::cos(t * w) * a.values[i] + sinc * b.values[i];
        }
    }
    return L;
}

}  // namespace

NonlinearResult solve_nonlinear(const RadialTransform& tr, const CauchyData& data, const NonlinearitySpec& nl,
                                const SolverConfig& cfg) {
    data.check();
    cfg.check();
    if (!is_second_order(data.eq))
        throw_domain("solve_nonlinear handles the second-order equations (wave, kg, beam), not ",
                     equation_name(data.eq));
    const auto& pg = *tr.physical();
    const std::size_t nr = pg.size(), ns = tr.frequency()->size();
    const std::size_t K = static_cast<std::size_t>(std::llround(cfg.T / cfg.dt));
    const double dt = cfg.T / K;
    const std::size_t times = K + 1;

    Stage st{tr, data.eq, nl, {}};
    for (double s : tr.frequency()->nodes) st.w.push_back(omega(data.eq, s));

    const RadialProfile a = tr.forward(data.u0), b = tr.forward(*data.u1);
    const std::vector<cplx> Lh = linear_block(tr, data.eq, a, b, times, dt);
    std::vector<cplx> Ulin;
    tr.inverse_many(Lh, times, Ulin);

    NonlinearResult res;
    res.alpha = nl.alpha;
    res.x_norm_linear = x_norm(pg, Ulin, times, dt, nl.alpha);
    const double scale = res.x_norm_linear > 0.0 ? res.x_norm_linear : 1.0;

    std::vector<cplx> U = Ulin, D, Uh(ns * times), Unew;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        st.apply(U, times, dt, D);
        for (std::size_t k = 0; k < Uh.size(); ++k) Uh[k] = Lh[k] - D[k];
        tr.inverse_many(Uh, times, Unew);
        std::vector<cplx> diff(U.size());
        for (std::size_t k = 0; k < U.size(); ++k) diff[k] = Unew[k] - U[k];
        const double inc = x_norm(pg, diff, times, dt, nl.alpha) / scale;
        res.increments.push_back(inc);
        if (res.increments.size() >= 2) {
            const double prev = res.increments[res.increments.size() - 2];
            res.ratios.push_back(prev > 0.0 ? inc / prev : 0.0);
        }
        U.swap(Unew);
        res.iterations = it;
        if (inc < cfg.eps) {
            res.converged = true;
            break;
        }
    }

    // Residual at doubled tau resolution: midpoints by cubic Lagrange in time.
    {
        const std::size_t K2 = 2 * K, times2 = K2 + 1;
        std::vector<cplx> U2(nr * times2);
        for (std::size_t k = 0; k < times; ++k)
            std::copy_n(U.begin() + k * nr, nr, U2.begin() + 2 * k * nr);
        for (std::size_t k = 0; k < K; ++k) {
            // stencil of 4 coarse nodes around the midpoint k + 1/2
            long m0 = static_cast<long>(k) - 1;
            m0 = std::clamp<long>(m0, 0, static_cast<long>(K) - 3 < 0 ? 0 : static_cast<long>(K) - 3);
            const int pts = std::min<std::size_t>(4, times);
            const double x = (k + 0.5) - m0;
            double lw[4];
            for (int p = 0; p < pts; ++p) {
                double v = 1.0;
                for (int q = 0; q < pts; ++q)
                    if (q != p) v *= (x - q) / static_cast<double>(p - q);
                lw[p] = v;
            }
            cplx* dst = &U2[(2 * k + 1) * nr];
            for (std::size_t i = 0; i < nr; ++i) {
                cplx v = 0.0;
                for (int p = 0; p < pts; ++p) v += lw[p] * U[(m0 + p) * nr + i];
                dst[i] = v;
            }
        }
        std::vector<cplx> D2;
        st.apply(U2, times2, 0.5 * dt, D2);
        std::vector<cplx> Rh(ns * times);
        for (std::size_t k = 0; k < times; ++k)
            for (std::size_t i = 0; i < ns; ++i) Rh[k * ns + i] = Lh[k * ns + i] - D2[2 * k * ns + i];
        std::vector<cplx> R;
        tr.inverse_many(Rh, times, R);
        for (std::size_t k = 0; k < R.size(); ++k) R[k] = U[k] - R[k];
        res.residual = x_norm(pg, R, times, dt, nl.alpha) / scale;
    }

    // contraction certificate C M^alpha with C measured from this run
    st.apply(U, times, dt, D);
    std::vector<cplx> Dphys;
    tr.inverse_many(D, times, Dphys);
    res.x_norm = x_norm(pg, U, times, dt, nl.alpha);
    res.M = res.x_norm;
    const double dn = x_norm(pg, Dphys, times, dt, nl.alpha);
    res.C = res.M > 0.0 ? dn / std::pow(res.M, nl.alpha + 1.0) : 0.0;
    res.CM_alpha = res.C * std::pow(res.M, nl.alpha);

    auto grid = tr.physical();
    for (std::size_t k = 0; k < times; ++k) {
        std::vector<cplx> u(U.begin() + k * nr, U.begin() + (k + 1) * nr);
        std::vector<cplx> l(Ulin.begin() + k * nr, Ulin.begin() + (k + 1) * nr);
        for (std::size_t i = 0; i < nr; ++i) {
            res.sup_u = std::max(res.sup_u, std::abs(u[i]));
            res.sup_linear = std::max(res.sup_linear, std::abs(l[i]));
        }
        res.traj.t.push_back(k * dt);
        res.traj.u.emplace_back(grid, std::move(u), Space::Physical);
        res.linear.t.push_back(k * dt);
        res.linear.u.emplace_back(grid, std::move(l), Space::Physical);
    }
    return res;
}

std::string NonlinearResult::report() const {
    std::ostringstream os;
    os.precision(6);
    os << "converged: " << (converged ? "yes" : "no") << " after " << iterations << " iteration(s)\n";
    os << "increments:";
    for (double v : increments) os << ' ' << v;
    os << "\nratios:";
    for (double v : ratios) os << ' ' << v;
    os << "\nresidual (doubled tau resolution): " << residual << "\n";
    os << "X norm: " << x_norm << " (linear " << x_norm_linear << ")\n";
    os << "C = " << C << ", M = " << M << ", C*M^alpha = " << CM_alpha << (CM_alpha < 0.5 ? " < 1/2" : " >= 1/2")
       << "\n";
    os << "sup |u| = " << sup_u << ", sup |u_lin| = " << sup_linear << ", ratio "
       << (sup_linear > 0 ? sup_u / sup_linear : 0.0) << "\n";
    if (!converged && increments.size() >= 2)
        os << "diverged/stalled: last increments " << increments[increments.size() - 2] << ", " << increments.back()
           << "\n";
    return os.str();
}

double critical_index(CriticalEq eq, double N) {
    if (!(N > 0.0)) throw_domain("critical_index needs N > 0, got ", N);
    if (eq == CriticalEq::KG) return (2.0 - N + std::sqrt(N * N + 12.0 * N + 4.0)) / (2.0 * N);
    return (4.0 - N + std::sqrt(N * N + 24.0 * N + 16.0)) / (2.0 * N);
}

}  // namespace dunkl

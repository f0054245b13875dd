#include "dunkl/decay_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "dunkl/errors.hpp"

namespace dunkl {

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw_domain("fit_decay needs at least 4 samples, got ", samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0)) throw_domain("fit_decay: t must be > 0");
        if (!(samples[i].second > 0.0) || !std::isfinite(samples[i].second))
            throw_domain("fit_decay: M must be finite and > 0 (sample ", i, " has ", samples[i].second, ")");
        if (i > 0 && !(samples[i].first > samples[i - 1].first)) throw_domain("fit_decay: t must be strictly increasing");
    }
    const double n = static_cast<double>(samples.size());
    double mx = 0, my = 0;
    for (auto [t, m] : samples) mx += std::log(t), my += std::log(m);
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (auto [t, m] : samples) {
        const double dx = std::log(t) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(m) - my);
    }
    const double slope = sxy / sxx;
    DecayFit f;
    f.theta_hat = -slope;
    f.intercept = my - slope * mx;
    double rss = 0;
    for (auto [t, m] : samples) {
        const double r = std::log(m) - (f.intercept + slope * std::log(t));
        rss += r * r;
    }
    f.residual_rms = std::sqrt(rss / n);
    f.t_min = samples.front().first;
    f.t_max = samples.back().first;
    f.n = samples.size();
    return f;
}

DecayFit judge(DecayFit fit, double theta_pred, double tolerance) {
    fit.theta_pred = theta_pred;
    fit.tolerance = tolerance;
    fit.pass = std::abs(fit.theta_hat - theta_pred) <= tolerance;
    return fit;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::HighFreqBand: return "high";
        case Regime::LowFreqBand: return "low-band";
        case Regime::LowFreqSum: return "low";
    }
    return "?";
}

Regime parse_regime(const std::string& raw) {
    std::string s = raw;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "high" || s == "highfreqband") return Regime::HighFreqBand;
    if (s == "low-band" || s == "lowband" || s == "lowfreqband") return Regime::LowFreqBand;
    if (s == "low" || s == "low-sum" || s == "lowfreqsum") return Regime::LowFreqSum;
    throw_domain("unknown regime '", raw, "'");
}

double predicted_exponent(const PhaseSpec& p, const EffectiveDimension& dim, Regime regime) {
    const double N = dim.N;
    if (!(N > 1.0)) throw_domain("predicted_exponent needs N > 1, got ", N);
    auto band = [&](double m, double alpha) {
        if (!(m > 0.0)) throw_domain("phase '", p.name(), "' lacks a positive growth constant for this regime");
        if (alpha != alpha) return 0.5 * (N - 1.0);  // growth condition only
        // curvature condition present: (N - 1 + theta)/2 at the ceiling theta = 1
        return 0.5 * (N - 1.0 + 1.0);
    };
    switch (regime) {
        case Regime::HighFreqBand: return band(p.m1, p.alpha1);
        case Regime::LowFreqBand: return band(p.m2, p.alpha2);
        case Regime::LowFreqSum: {
            if (!(p.m2 > 0.0)) throw_domain("phase '", p.name(), "' lacks a positive low-frequency constant m2");
            if (p.low_curvature() && p.alpha2 != p.m2)
                throw_domain("low-frequency sum prediction needs alpha2 = m2 or no curvature condition");
            const double cap = p.low_curvature() ? 0.5 * N : 0.5 * (N - 1.0);
            return std::min(N / p.m2, cap);
        }
    }
    return 0.0;
}

std::vector<double> log_space(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / std::max(1, n - 1));
    return v;
}

std::vector<double> default_large_times() { return log_space(std::pow(10.0, 1.5), std::pow(10.0, 3.5), 9); }
std::vector<double> default_small_times() { return log_space(1e-3, 0.3, 9); }

DecayRun run_decay(const PhaseSpec& p, const EffectiveDimension& dim, Regime regime, DecayRunOptions opt,
                   double tolerance) {
    DecayRun run;
    run.regime = regime;
    Band band = Band::S0();
    if (regime == Regime::HighFreqBand) {
        if (opt.j < 0) throw_domain("high-frequency band needs j >= 0");
        band = Band::delta(opt.j);
    } else if (regime == Regime::LowFreqBand) {
        band = Band::delta(opt.j < 0 ? opt.j : -2);
    }
    std::vector<std::pair<double, double>> samples;
    for (double t : opt.t_values) {
        auto S = kernel_sup(p, dim, t, band, opt.kopt, opt.sopt);
        run.t.push_back(t);
        run.sup.push_back(S.sup);
        run.s_at.push_back(S.s_at);
        run.err.push_back(S.err_est);
        samples.emplace_back(t, S.sup);
    }
    run.fit = judge(fit_decay(samples), predicted_exponent(p, dim, regime), tolerance);
    return run;
}

BesovParams::BesovParams(double s_, double p_, double q_, int J) : s(s_), p(p_), q(q_), J_max(J) {
    if (!std::isfinite(s_)) throw_domain("Besov regularity must be finite");
    if (!(p_ >= 2.0)) throw_domain("Besov p must lie in [2, inf], got ", p_);
    if (!(q_ >= 1.0)) throw_domain("Besov q must lie in [1, inf], got ", q_);
    if (J < 0) throw_domain("Besov J_max must be >= 0");
}

BesovResult besov_norm(const RadialTransform& tr, const RadialProfile& u, const BesovParams& bp,
                       const BumpProfile& bump) {
    BesovParams chk(bp.s, bp.p, bp.q, bp.J_max);  // validates
    (void)chk;
    BesovResult res;
    const RadialProfile uh = tr.forward(u);
    if (uh.warning) res.warning = uh.warning;
    auto band_norm = [&](Band b) {
        RadialProfile g = uh;
        bool any = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double m = b.multiplier(bump, g.grid->nodes[i]);
            g.values[i] *= m;
            any = any || m != 0.0;
        }
        if (!any) return 0.0;
        return weighted_lp_norm(tr.inverse(g), bp.p);
    };
    res.low = band_norm(Band::S0());
    double acc = 0.0;
    for (int j = 0; j <= bp.J_max; ++j) {
        const double nj = band_norm(Band::delta(j));
        res.bands.push_back(nj);
        const double wj = std::pow(2.0, j * bp.s) * nj;
        if (std::isinf(bp.q))
            acc = std::max(acc, wj);
        else
            acc += std::pow(wj, bp.q);
    }
    res.value = res.low + (std::isinf(bp.q) ? acc : std::pow(acc, 1.0 / bp.q));

    // spectral L2 mass beyond the last retained band
    double tail = 0.0, total = 0.0;
    const double cut = std::ldexp(1.0, bp.J_max + 1);
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const double m = uh.grid->weights[i] * std::norm(uh.values[i]);
        total += m;
        if (uh.grid->nodes[i] > cut) tail += m;
    }
    if (total > 0.0 && std::sqrt(tail / total) > 1e-8)
        res.warning = detail::concat("truncation: spectral mass beyond 2^", bp.J_max + 1, " is ",
                                     std::sqrt(tail / total), " of total");
    return res;
}

SpatialNorm lebesgue_norm(double p, double sigma_N) {
    if (std::isnan(p) || p < 1.0) throw_domain("Lebesgue exponent must be >= 1");
    return [p, sigma_N](const RadialProfile& f) { return weighted_lp_norm(f, p, sigma_N); };
}

SpatialNorm besov_spatial_norm(const RadialTransform& tr, BesovParams bp) {
    return [&tr, bp](const RadialProfile& f) { return besov_norm(tr, f, bp).value; };
}

double strichartz_norm(const std::vector<RadialProfile>& traj, double dt, double r_t, const SpatialNorm& norm) {
    if (std::isnan(r_t) || r_t < 1.0) throw_domain("time exponent must be >= 1, got ", r_t);
    if (!(dt > 0.0)) throw_domain("time step must be positive");
    if (std::isinf(r_t)) {
        double m = 0.0;
        for (const auto& u : traj) m = std::max(m, norm(u));
        return m;
    }
    double acc = 0.0;
    for (const auto& u : traj) acc += dt * std::pow(norm(u), r_t);
    return std::pow(acc, 1.0 / r_t);
}

bool strichartz_admissible(double r_t, double p, double N) { return 2.0 / r_t + N / p <= 0.5 * N + 1e-12; }

// ---------------------------------------------------------------------------

Proposition proposition_for(const PhaseSpec& p) {
    switch (p.kind) {
        case PhaseKind::Wave: return Proposition::WaveDecay;
        case PhaseKind::Schrodinger:
        case PhaseKind::FractionalSchrodinger: return Proposition::FractionalDecay;
        case PhaseKind::FourthOrder: return Proposition::FourthOrderDecay;
        case PhaseKind::KleinGordon: return Proposition::KGDecay;
        case PhaseKind::Beam: return Proposition::BeamDecay;
        case PhaseKind::Custom: break;
    }
    throw_domain("no decay proposition for phase '", p.name(), "'");
}

std::string proposition_name(Proposition pr) {
    switch (pr) {
        case Proposition::WaveDecay: return "wave";
        case Proposition::FractionalDecay: return "fractional";
        case Proposition::FourthOrderDecay: return "fourth";
        case Proposition::KGDecay: return "kg";
        case Proposition::BeamDecay: return "beam";
    }
    return "?";
}

double proposition_default_s(Proposition pr, const EffectiveDimension& dim, double delta, double mu, double theta) {
    const double N = dim.N;
    switch (pr) {
        case Proposition::WaveDecay: return -0.5 * (N + 1.0) * delta;
        case Proposition::FractionalDecay: return -N * (1.0 - 0.5 * mu) * delta;
        case Proposition::FourthOrderDecay: return N * delta;
        case Proposition::KGDecay: return -0.5 * (N + 1.0 + theta) * delta;
        case Proposition::BeamDecay: return 0.0;
    }
    return 0.0;
}

double proposition_exponent(Proposition pr, const EffectiveDimension& dim, double delta, double s, bool small_t,
                            double mu, double theta) {
    const double N = dim.N;
    const double lift = std::max(s + N * delta, 0.0);
    switch (pr) {
        case Proposition::WaveDecay: return small_t ? 2.0 * lift : (N - 1.0) * delta;
        case Proposition::FractionalDecay: return small_t ? (2.0 / mu) * lift : N * delta;
        case Proposition::FourthOrderDecay: return small_t ? 0.5 * lift : N * delta;
        case Proposition::KGDecay: return small_t ? 2.0 * lift : (N - 1.0 + theta) * delta;
        case Proposition::BeamDecay: return small_t ? lift : 0.5 * N * delta;
    }
    return 0.0;
}

bool PropositionReport::pass() const {
    if (regimes.empty()) return false;
    for (const auto& r : regimes)
        if (!r.fit.pass) return false;
    return true;
}

PropositionReport verify_proposition(const PhaseSpec& p, const EffectiveDimension& dim, Proposition pr, double tol,
                                     VerifyOptions opt) {
    if (!(dim.N > 1.0)) throw_domain("verify_proposition needs N > 1, got ", dim.N);
    if (proposition_for(p) != pr)
        throw_domain("phase '", p.name(), "' does not belong to the ", proposition_name(pr), " proposition");
    if (!(opt.p >= 2.0)) throw_domain("proposition exponent p must be >= 2");
    PropositionReport rep{p, dim, pr, 0.5 - 1.0 / opt.p, 0.0, {}};
    const double mu = p.kind == PhaseKind::KleinGordon ? 2.0 : p.mu;
    rep.s = opt.s ? *opt.s : proposition_default_s(pr, dim, rep.delta, mu, opt.theta);
    if (pr == Proposition::KGDecay && !(opt.theta >= 0.0 && opt.theta <= 1.0))
        throw_domain("Klein-Gordon theta must lie in [0,1]");

    auto run = [&](bool small) {
        RegimeReport rr;
        rr.regime = small ? "small-t" : "large-t";
        rr.theta_pred = proposition_exponent(pr, dim, rep.delta, rep.s, small, mu, opt.theta);
        const auto& times = small ? opt.small_times : opt.large_times;
        std::vector<std::pair<double, double>> samples;
        for (double t : times) {
            int jmax = opt.j_max_large;
            if (small) {
                const double reach = std::max(1.0, std::pow(t, -1.0 / p.m1));
                jmax = static_cast<int>(std::ceil(std::log2(reach))) + opt.j_extra_small;
            }
            double k = 0.0;
            try {
                k = std::pow(kernel_sup(p, dim, t, Band::S0(), opt.kopt, opt.sopt).sup, 2.0 * rep.delta);
            } catch (const AccuracyError& e) {
                rr.partial = true;
                rr.note += detail::concat("t=", t, " S0 skipped; ");
            }
            for (int j = 0; j <= jmax; ++j) {
                try {
                    const double m = kernel_sup(p, dim, t, Band::delta(j), opt.kopt, opt.sopt).sup;
                    k = std::max(k, std::pow(2.0, 2.0 * j * rep.s) * std::pow(m, 2.0 * rep.delta));
                } catch (const AccuracyError& e) {
                    // higher bands only get more oscillatory at this t
                    rr.partial = true;
                    rr.note += detail::concat("t=", t, " j>=", j, " refused (oscillation budget); ");
                    break;
                }
            }
            rr.t.push_back(t);
            rr.k.push_back(k);
            if (k > 0.0) samples.emplace_back(t, k);
        }
        if (samples.size() >= 4) {
            rr.fit = judge(fit_decay(samples), rr.theta_pred, tol);
        } else {
            rr.partial = true;
            rr.note += "too few samples to fit; ";
            rr.fit.theta_pred = rr.theta_pred;
            rr.fit.pass = false;
        }
        rep.regimes.push_back(rr);
    };
    if (opt.run_small) run(true);
    if (opt.run_large) run(false);
    return rep;
}

}  // namespace dunkl

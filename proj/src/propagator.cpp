#include "dunkl/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

namespace {

double dphase(const PhaseSpec& p, double r) {
    if (p.kind == PhaseKind::Custom && !p.custom[1]) {
        const double h = 1e-6 * std::max(1.0, r);
        return (p.custom[0](r + h) - p.custom[0](std::max(r - h, 0.0))) / (r + h - std::max(r - h, 0.0));
    }
    return phase_value(p, r, 1);
}

}  // namespace

OscillatoryKernel::OscillatoryKernel(const PhaseSpec& phase, const EffectiveDimension& dim, double t, Band band,
                                     double s_max, KernelOptions opt, std::function<cplx(double)> extra)
    : phase_(phase),
      dim_(dim),
      t_(t),
      band_(band),
      s_max_(s_max),
      opt_(opt),
      extra_(std::move(extra)),
      kern_(dim.nu()) {
    if (!(dim.N > 1.0)) throw_domain("propagator kernels need N > 1, got ", dim.N);
    if (!(opt.tol > 0.0)) throw_domain("kernel tolerance must be positive");
    if (!std::isfinite(t)) throw_domain("kernel time must be finite");
    if (!(s_max >= 0.0)) throw_domain("kernel s_max must be >= 0");
    if (!band.low && (band.j < -40 || band.j > 40)) throw_domain("band index out of range: ", band.j);
    const double lg = std::lgamma(0.5 * dim.N);
    pref_ = band.low ? std::exp(-lg) : std::exp(band.j * dim.N * std::log(2.0) - lg);
    a_ = band.low ? 0.0 : 0.5;
    b_ = band.low ? 1.0 : 2.0;
    coarse_ = build(s_max_, opt_.budget, false);
    fine_ = build(s_max_, opt_.budget, true);
    coarse_panels_ = coarse_.panels;
}

OscillatoryKernel::Nodes OscillatoryKernel::build(double s_max, double budget, bool halve) const {
    const double scale = band_.low ? 1.0 : std::ldexp(1.0, band_.j);
    const double at = std::abs(t_);
    auto rate = [&](double x) { return at * scale * std::abs(dphase(phase_, scale * x)) + s_max; };

    std::vector<double> base;
    if (band_.low) {
        base.push_back(0.0);
        for (int k = 20; k >= 1; --k) base.push_back(std::ldexp(1.0, -k));
        for (int k = 1; k <= 8; ++k) base.push_back(0.5 + k / 16.0);
    } else {
        for (int k = 0; k <= 8; ++k) base.push_back(0.5 + k / 16.0);
        for (int k = 1; k <= 8; ++k) base.push_back(1.0 + k / 8.0);
    }

    // breakpoints after the first (weighted) panel [0, base[1]] for S0
    std::vector<double> br{band_.low ? base[1] : base[0]};
    for (std::size_t i = band_.low ? 1 : 0; i + 1 < base.size(); ++i) {
        const double u = base[i], v = base[i + 1];
        double x = u;
        while (x < v) {
            const double w = rate(x);
            double h = budget / w;
            if (x + h < v) h = budget / std::max(w, rate(x + h));
            double xe = x + h;
            if (xe >= v - 1e-13 * (v - u)) xe = v;
            br.push_back(xe);
            x = xe;
            if (br.size() > opt_.max_panels)
                throw AccuracyError(detail::concat("oscillation budget exceeded: more than ", opt_.max_panels,
                                                   " panels (t=", t_, ", s_max=", s_max, ")"),
                                    std::numeric_limits<double>::infinity());
        }
    }
    if (halve) {
        std::vector<double> hb;
        hb.reserve(2 * br.size());
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            hb.push_back(br[i]);
            hb.push_back(0.5 * (br[i] + br[i + 1]));
        }
        hb.push_back(br.back());
        br.swap(hb);
    }

    Nodes nd;
    nd.panels = br.size() - 1;
    const double p = dim_.N - 1.0;
    auto push = [&](double r, double w, bool weighted) {
        const double amp = band_.low ? bump_.R(r) : bump_.psi(r);
        if (amp == 0.0) return;
        cplx c = w * amp * std::polar(1.0, t_ * phase_value(phase_, scale * r, 0));
        if (!weighted) c *= std::pow(r, p);
        if (extra_) c *= extra_(r);
        nd.r.push_back(r);
        nd.c.push_back(c);
    };
    if (band_.low) {
        double h0 = base[1];
        std::vector<double> head;
        if (halve) {
            h0 *= 0.5;
            head = {h0, base[1]};
        }
        QuadRule first = left_weighted_rule(opt_.order, p, h0);
        for (int k = 0; k < opt_.order; ++k) push(first.x[k], first.w[k], true);
        if (halve) {
            QuadRule q = composite_gauss_legendre(head, opt_.order);
            for (std::size_t k = 0; k < q.x.size(); ++k) push(q.x[k], q.w[k], false);
            ++nd.panels;
        }
        ++nd.panels;
    }
    QuadRule q = composite_gauss_legendre(br, opt_.order);
    for (std::size_t k = 0; k < q.x.size(); ++k) push(q.x[k], q.w[k], false);
    return nd;
}

cplx OscillatoryKernel::sum(const Nodes& nd, double s) const {
    double re = 0.0, im = 0.0;
    const std::size_t n = nd.r.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double kv = kern_(nd.r[k] * s);
        re += nd.c[k].real() * kv;
        im += nd.c[k].imag() * kv;
    }
    return pref_ * cplx(re, im);
}

KernelValue OscillatoryKernel::operator()(double s) const {
    if (!(s >= 0.0) || !std::isfinite(s)) throw_domain("kernel argument s must be finite and >= 0, got ", s);
    cplx c, f;
    if (s <= s_max_) {
        c = sum(coarse_, s);
        f = sum(fine_, s);
    } else {
        c = sum(build(s, opt_.budget, false), s);
        f = sum(build(s, opt_.budget, true), s);
    }
    double err = std::abs(f - c);
    double budget = opt_.budget;
    while (err > opt_.tol) {
        budget *= 0.5;
        if (budget < 1e-3)
            throw AccuracyError(detail::concat("kernel quadrature stalled at s=", s, " (estimate ", err, ")"), err);
        // build() throws AccuracyError itself once the panel cap is hit
        c = f;
        f = sum(build(std::max(s, s_max_), budget, true), s);
        err = std::abs(f - c);
    }
    return {f, err};
}

std::pair<double, double> OscillatoryKernel::stationary_window() const {
    const double scale = band_.low ? 1.0 : std::ldexp(1.0, band_.j);
    const double lo = band_.low ? 1e-3 : a_;
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (int k = 0; k <= 64; ++k) {
        const double r = lo + (b_ - lo) * k / 64.0;
        const double d = std::abs(dphase(phase_, scale * r));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    const double at = std::abs(t_);
    return {0.5 * at * scale * dmin, 2.0 * at * scale * dmax};
}

KernelValue kernel_band(const PhaseSpec& p, const EffectiveDimension& dim, double t, int j, double s, double tol) {
    KernelOptions o;
    o.tol = tol;
    return OscillatoryKernel(p, dim, t, Band::delta(j), s, o)(s);
}

KernelValue kernel_low(const PhaseSpec& p, const EffectiveDimension& dim, double t, double s, double tol) {
    KernelOptions o;
    o.tol = tol;
    return OscillatoryKernel(p, dim, t, Band::S0(), s, o)(s);
}

namespace {

std::vector<double> make_grid_s(std::pair<double, double> win, const SupOptions& so) {
    std::vector<double> s;
    for (int i = 0; i < so.near_points; ++i) s.push_back(so.near_max * i / std::max(1, so.near_points - 1));
    const double lo = std::max(win.first, 1e-3);
    if (win.second > lo && so.log_points > 1) {
        const double l0 = std::log(lo), l1 = std::log(win.second);
        for (int i = 0; i < so.log_points; ++i) s.push_back(std::exp(l0 + (l1 - l0) * i / (so.log_points - 1)));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

std::vector<double> auto_s_grid(const OscillatoryKernel& k, const SupOptions& sopt) {
    return make_grid_s(k.stationary_window(), sopt);
}

SupResult kernel_sup(const PhaseSpec& p, const EffectiveDimension& dim, double t, Band band, KernelOptions kopt,
                     SupOptions sopt) {
    // window first (needs only the phase), then the kernel sized to it
    OscillatoryKernel probe(p, dim, t, band, 0.0, kopt);
    const auto grid = make_grid_s(probe.stationary_window(), sopt);
    OscillatoryKernel K(p, dim, t, band, grid.back() * 1.001, kopt);

    std::vector<double> val(grid.size()), err(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        auto kv = K(grid[i]);
        val[i] = std::abs(kv.value);
        err[i] = kv.err_est;
    });
    SupResult res;
    res.evaluations = grid.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool l = i == 0 || val[i] >= val[i - 1];
        const bool r = i + 1 == grid.size() || val[i] >= val[i + 1];
        if (l && r) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return val[a] > val[b]; });
    if (peaks.size() > static_cast<std::size_t>(sopt.refine_candidates)) peaks.resize(sopt.refine_candidates);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (val[i] > res.sup) res.sup = val[i], res.s_at = grid[i], res.err_est = err[i];

    struct Local {
        double v = 0, s = 0, e = 0;
        std::size_t n = 0;
    };
    std::vector<Local> loc(peaks.size());
    parallel_for(peaks.size(), [&](std::size_t c) {
        const std::size_t i = peaks[c];
        double lo = grid[i == 0 ? 0 : i - 1];
        double hi = grid[std::min(i + 1, grid.size() - 1)];
        Local L{val[i], grid[i], err[i], 0};
        auto f = [&](double s) {
            auto kv = K(s);
            ++L.n;
            const double v = std::abs(kv.value);
            if (v > L.v) L.v = v, L.s = s, L.e = kv.err_est;
            return v;
        };
        if (!(hi > lo)) {
            loc[c] = L;
            return;
        }
        const int m = 16;
        double best = -1;
        int bi = 0;
        for (int k = 0; k <= m; ++k) {
            const double v = f(lo + (hi - lo) * k / m);
            if (v > best) best = v, bi = k;
        }
        double a = lo + (hi - lo) * std::max(0, bi - 1) / m;
        double b = lo + (hi - lo) * std::min(m, bi + 1) / m;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60 && (b - a) > 1e-10 * (1.0 + std::abs(b)); ++it) {
            if (f1 > f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f(x2);
            }
        }
        loc[c] = L;
    });
    for (const auto& L : loc) {
        res.evaluations += L.n;
        if (L.v > res.sup) res.sup = L.v, res.s_at = L.s, res.err_est = L.e;
    }
    return res;
}

KernelSweep sweep_kernel(const PhaseSpec& p, const EffectiveDimension& dim, const std::vector<double>& t_values,
                         Band band, const std::vector<double>& s_values, KernelOptions kopt, SupOptions sopt) {
    KernelSweep sw{p, dim, {}};
    for (double t : t_values) {
        std::vector<double> s = s_values;
        if (s.empty()) {
            OscillatoryKernel probe(p, dim, t, band, 0.0, kopt);
            s = make_grid_s(probe.stationary_window(), sopt);
        }
        const double smax = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
        OscillatoryKernel K(p, dim, t, band, smax, kopt);
        std::vector<KernelSample> out(s.size());
        parallel_for(s.size(), [&](std::size_t i) {
            auto kv = K(s[i]);
            out[i] = {t, band.low ? -1 : band.j, s[i], kv.value, kv.err_est};
        });
        sw.samples.insert(sw.samples.end(), out.begin(), out.end());
    }
    return sw;
}

RadialProfile evolve(const RadialTransform& tr, const PhaseSpec& p, double t, const RadialProfile& u0) {
    if (u0.space != Space::Physical) throw_domain("evolve expects physical-space data");
    return tr.apply_multiplier(u0, [&](double s) { return std::polar(1.0, t * phase_value(p, s, 0)); });
}

RadialProfile evolve_band(const RadialTransform& tr, const PhaseSpec& p, double t, int j, const RadialProfile& u0,
                          const BumpProfile& bump) {
    if (u0.space != Space::Physical) throw_domain("evolve_band expects physical-space data");
    return tr.apply_multiplier(
        u0, [&](double s) { return bump.psi(j, s) * std::polar(1.0, t * phase_value(p, s, 0)); });
}

std::vector<KernelValue> synthesize_band(const PhaseSpec& p, const EffectiveDimension& dim, double t, int j,
                                         const std::function<cplx(double)>& u0_hat, const std::vector<double>& radii,
                                         KernelOptions kopt) {
    const double scale = std::ldexp(1.0, j);
    double rmax = 0.0;
    for (double r : radii) rmax = std::max(rmax, r);
    const double g = std::tgamma(0.5 * dim.N);
    OscillatoryKernel K(p, dim, t, Band::delta(j), scale * rmax, kopt,
                        [&, scale](double r) { return u0_hat(scale * r); });
    std::vector<KernelValue> out(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) {
        auto kv = K(scale * radii[i]);
        out[i] = {g * kv.value, g * kv.err_est};
    });
    return out;
}

double max_group_speed(const PhaseSpec& p, double s_max) {
    double m = 0.0;
    for (int k = 1; k <= 2000; ++k) m = std::max(m, std::abs(dphase(p, s_max * k / 2000.0)));
    return m;
}

}  // namespace dunkl

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dunkl/littlewood_paley.hpp"
#include "dunkl/phase.hpp"
#include "dunkl/radial_transform.hpp"

namespace dunkl {

struct KernelOptions {
    double tol = 1e-8;              // absolute error target per sample
    double budget = 8.0;            // radians of phase (t phi + r s) per panel
    std::size_t max_panels = 200000;
    int order = 16;                 // Gauss-Legendre points per panel
};

struct KernelValue {
    cplx value;
    double err_est;
};

// Frequency-localized propagator kernel for a fixed (phase, N, t, band):
//   band j: II_j(s) = 2^{jN}/Gamma(N/2) int_{1/2}^{2} e^{i t phi(2^j r)} psi(r) k_nu(r s) r^{N-1} dr
//   S0:     K(s)    = 1/Gamma(N/2)      int_0^1      e^{i t phi(r)}     R(r)   k_nu(r s) r^{N-1} dr
// The panel partition is built once for s <= s_max; all per-node factors
// except the Bessel kernel are cached, so a sweep over s is cheap.
class OscillatoryKernel {
public:
    OscillatoryKernel(const PhaseSpec& phase, const EffectiveDimension& dim, double t, Band band, double s_max,
                      KernelOptions opt = {},
                      std::function<cplx(double)> extra_amplitude = nullptr);

    // Throws AccuracyError if the estimate stays above tol within the panel cap.
    KernelValue operator()(double s) const;

    std::size_t panels() const { return coarse_panels_; }
    double s_max() const { return s_max_; }
    double t() const { return t_; }
    Band band() const { return band_; }

    // Interval where t d/dr phi(2^j r) can balance r s (the stationary set),
    // padded by 1/2 and 2 as in the dyadic argument.
    std::pair<double, double> stationary_window() const;

private:
    struct Nodes {
        std::vector<double> r;
        std::vector<cplx> c;  // weight * amplitude * e^{i theta} (* r^{N-1})
        std::size_t panels = 0;
    };
    Nodes build(double s_max, double budget, bool halve) const;
    cplx sum(const Nodes& nd, double s) const;

    PhaseSpec phase_;
    EffectiveDimension dim_;
    double t_;
    Band band_;
    double s_max_;
    KernelOptions opt_;
    std::function<cplx(double)> extra_;
    BesselKernel kern_;
    BumpProfile bump_;
    double pref_;
    double a_, b_;
    Nodes coarse_, fine_;
    std::size_t coarse_panels_ = 0;
};

KernelValue kernel_band(const PhaseSpec& p, const EffectiveDimension& dim, double t, int j, double s,
                        double tol = 1e-8);
KernelValue kernel_low(const PhaseSpec& p, const EffectiveDimension& dim, double t, double s, double tol = 1e-8);

struct SupResult {
    double sup = 0.0;
    double s_at = 0.0;
    double err_est = 0.0;
    std::size_t evaluations = 0;
};

struct SupOptions {
    int log_points = 400;
    int near_points = 101;   // uniform on [0, near_max]
    double near_max = 10.0;
    int refine_candidates = 5;
};

// sup_s |K(s)| over the stationary window union [0, near_max]: coarse scan,
// then local scan + golden-section around the best candidates.
SupResult kernel_sup(const PhaseSpec& p, const EffectiveDimension& dim, double t, Band band, KernelOptions kopt = {},
                     SupOptions sopt = {});

struct KernelSample {
    double t;
    int j;  // -1 marks S0
    double s;
    cplx value;
    double err_est;
};

struct KernelSweep {
    PhaseSpec phase;
    EffectiveDimension dim;
    std::vector<KernelSample> samples;
};

// Evaluates the kernel on an explicit s list, or on the auto grid
// (stationary window log-spaced + [0,10]) when s_values is empty.
KernelSweep sweep_kernel(const PhaseSpec& p, const EffectiveDimension& dim, const std::vector<double>& t_values,
                         Band band, const std::vector<double>& s_values, KernelOptions kopt = {},
                         SupOptions sopt = {});

std::vector<double> auto_s_grid(const OscillatoryKernel& k, const SupOptions& sopt);

// U_t = e^{i t phi(sqrt(-Delta))} applied through the transform pair.
RadialProfile evolve(const RadialTransform& tr, const PhaseSpec& p, double t, const RadialProfile& u0);
RadialProfile evolve_band(const RadialTransform& tr, const PhaseSpec& p, double t, int j, const RadialProfile& u0,
                          const BumpProfile& bump = BumpProfile{});

// Direct synthesis of U_t Delta_j u0 at the given radii from the analytic
// spectrum u0_hat: int e^{i t phi(s)} psi(2^{-j} s) u0_hat(s) k_nu(r s) s^{N-1} ds,
// evaluated with the same oscillatory engine as II_j.
std::vector<KernelValue> synthesize_band(const PhaseSpec& p, const EffectiveDimension& dim, double t, int j,
                                         const std::function<cplx(double)>& u0_hat, const std::vector<double>& radii,
                                         KernelOptions kopt = {});

// Group speed bound max |phi'(s)| on (0, s_max], sampled.
double max_group_speed(const PhaseSpec& p, double s_max);

}  // namespace dunkl

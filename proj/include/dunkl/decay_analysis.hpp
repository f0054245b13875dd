#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/propagator.hpp"

namespace dunkl {

struct DecayFit {
    double theta_hat = 0.0;  // -slope of log M against log t
    double intercept = 0.0;
    double residual_rms = 0.0;  // in natural-log units
    double t_min = 0.0, t_max = 0.0;
    std::size_t n = 0;
    double theta_pred = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.15;
    bool pass = false;
};

// Least squares in log-log. Needs >= 4 samples, t strictly increasing, M > 0.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);
// Attaches prediction and verdict.
DecayFit judge(DecayFit fit, double theta_pred, double tolerance = 0.15);

enum class Regime { HighFreqBand, LowFreqBand, LowFreqSum };
std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

double predicted_exponent(const PhaseSpec& p, const EffectiveDimension& dim, Regime regime);

// Default large-t fit times: 9 points log-spaced on [10^1.5, 10^3.5].
std::vector<double> default_large_times();
// Default small-t fit times: 9 points log-spaced on [1e-3, 0.3].
std::vector<double> default_small_times();
std::vector<double> log_space(double a, double b, int n);

struct DecayRunOptions {
    std::vector<double> t_values = default_large_times();
    int j = 0;  // band index for HighFreqBand (>= 0) / LowFreqBand (< 0)
    KernelOptions kopt{};
    SupOptions sopt{};
};

struct DecayRun {
    Regime regime;
    std::vector<double> t, sup, s_at, err;
    DecayFit fit;
};

// M(t) = sup_s |kernel| for the regime's kernel (II_j for bands, the S0
// kernel for LowFreqSum); fitted and judged against predicted_exponent.
DecayRun run_decay(const PhaseSpec& p, const EffectiveDimension& dim, Regime regime, DecayRunOptions opt = {},
                   double tolerance = 0.15);

struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    int J_max = 12;
    BesovParams() = default;
    BesovParams(double s_, double p_, double q_, int J = 12);
};

struct BesovResult {
    double value = 0.0;
    double low = 0.0;               // ||S0 u||_p
    std::vector<double> bands;      // ||Delta_j u||_p, j = 0..J_max
    std::optional<std::string> warning;
};

BesovResult besov_norm(const RadialTransform& tr, const RadialProfile& u, const BesovParams& bp,
                       const BumpProfile& bump = BumpProfile{});

using SpatialNorm = std::function<double(const RadialProfile&)>;
SpatialNorm lebesgue_norm(double p, double sigma_N = 1.0);
SpatialNorm besov_spatial_norm(const RadialTransform& tr, BesovParams bp);

// (sum_k dt ||u(t_k)||^{r_t})^{1/r_t}; r_t = inf gives the max.
double strichartz_norm(const std::vector<RadialProfile>& traj, double dt, double r_t, const SpatialNorm& norm);

// Whether 2/r + N/p <= N/2 (advisory only).
bool strichartz_admissible(double r_t, double p, double N);

enum class Proposition { WaveDecay, FractionalDecay, FourthOrderDecay, KGDecay, BeamDecay };
Proposition proposition_for(const PhaseSpec& p);
std::string proposition_name(Proposition pr);

struct VerifyOptions {
    double p = std::numeric_limits<double>::infinity();  // delta = 1/2 - 1/p
    std::optional<double> s;  // Besov regularity; defaults to the admissible boundary
    double theta = 1.0;       // Klein-Gordon interpolation parameter
    std::vector<double> small_times = default_small_times();
    std::vector<double> large_times = default_large_times();
    int j_max_large = 3;
    int j_extra_small = 3;
    bool run_small = true, run_large = true;
    KernelOptions kopt = [] {
        KernelOptions k;
        k.max_panels = 20000;
        return k;
    }();
    SupOptions sopt{};
};

struct RegimeReport {
    std::string regime;  // "small-t" or "large-t"
    double theta_pred = 0.0;
    DecayFit fit;
    bool partial = false;
    std::string note;
    std::vector<double> t, k;
};

struct PropositionReport {
    PhaseSpec phase;
    EffectiveDimension dim;
    Proposition proposition;
    double delta = 0.5, s = 0.0;
    std::vector<RegimeReport> regimes;
    bool pass() const;
};

// Proxy for the operator norm in the proposition: by interpolation between
// L2 (norm 1) and L1 -> Linf (the kernel sup),
//   k(t) ~ max( sup|K_S0|^{2 delta}, max_j 2^{2 j s} sup|II_j|^{2 delta} ).
double proposition_exponent(Proposition pr, const EffectiveDimension& dim, double delta, double s, bool small_t,
                            double mu = 2.0, double theta = 1.0);
double proposition_default_s(Proposition pr, const EffectiveDimension& dim, double delta, double mu = 2.0,
                             double theta = 1.0);

PropositionReport verify_proposition(const PhaseSpec& p, const EffectiveDimension& dim, Proposition pr,
                                     double tol = 0.15, VerifyOptions opt = {});

}  // namespace dunkl

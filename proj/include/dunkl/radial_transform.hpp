#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/special_functions.hpp"

namespace dunkl {

using cplx = std::complex<double>;

struct EffectiveDimension {
    int n = 1;
    double gamma = 0.0;
    double N = 1.0;

    EffectiveDimension() = default;
    EffectiveDimension(int n_, double gamma_);
    // Picks the smallest admissible ambient n (floor of N, at least 1) and
    // assigns the rest to gamma.
    static EffectiveDimension from_N(double N);

    double nu() const { return 0.5 * (N - 2.0); }
};

// Composite rule for int_0^{r_max} f(r) r^{N-1} dr. The weights already carry
// r^{N-1}; the first panel uses a Gauss-Jacobi rule so the power is exact
// for non-integer N.
struct RadialGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double r_max = 0.0;
    EffectiveDimension dim;

    std::size_t size() const { return nodes.size(); }
};

std::shared_ptr<const RadialGrid> make_grid(const EffectiveDimension& dim, double r_max, int panels,
                                            int order = 16);

// Chooses a panel count so the kernel phase across one panel stays under
// `budget` radians for partner-space extent `partner_max`.
std::shared_ptr<const RadialGrid> make_grid_for(const EffectiveDimension& dim, double r_max,
                                                double partner_max, double budget = 8.0);

enum class Space { Physical, Frequency };

struct RadialProfile {
    std::shared_ptr<const RadialGrid> grid;
    std::vector<cplx> values;
    Space space = Space::Physical;
    std::optional<std::string> warning;

    RadialProfile() = default;
    RadialProfile(std::shared_ptr<const RadialGrid> g, std::vector<cplx> v, Space sp);

    std::size_t size() const { return values.size(); }
    const std::vector<double>& nodes() const { return grid->nodes; }

    // validates length and finiteness
    void check() const;
};

RadialProfile sample(std::shared_ptr<const RadialGrid> grid, const std::function<cplx(double)>& f,
                     Space space = Space::Physical);

// Pair of grids (physical r, frequency s) with the kernel matrix
// K(i,k) = k_nu(s_i r_k) cached. Forward and inverse share the kernel:
//   (F f)(s) = int_0^inf f(r) k_nu(r s) r^{N-1} dr.
class RadialTransform {
public:
    RadialTransform(std::shared_ptr<const RadialGrid> physical, std::shared_ptr<const RadialGrid> frequency);

    // Grids sized for data essentially supported in [0, r_max] with spectrum
    // essentially in [0, s_max].
    static RadialTransform make(const EffectiveDimension& dim, double r_max, double s_max, double budget = 8.0);
    // Default [0,30] with 48 x 16 nodes on both sides.
    static RadialTransform make_default(const EffectiveDimension& dim);

    const std::shared_ptr<const RadialGrid>& physical() const { return phys_; }
    const std::shared_ptr<const RadialGrid>& frequency() const { return freq_; }
    const EffectiveDimension& dim() const { return phys_->dim; }

    RadialProfile forward(const RadialProfile& f) const;
    RadialProfile inverse(const RadialProfile& g) const;

    // Batched versions on column-major blocks: columns are profiles.
    // in: rows = source grid size; out: rows = target grid size.
    void forward_many(const std::vector<cplx>& in, std::size_t cols, std::vector<cplx>& out) const;
    void inverse_many(const std::vector<cplx>& in, std::size_t cols, std::vector<cplx>& out) const;

    RadialProfile apply_multiplier(const RadialProfile& f, const std::function<cplx(double)>& m) const;

private:
    std::shared_ptr<const RadialGrid> phys_, freq_;
    std::vector<double> K_;  // row-major, freq x phys
};

// Direct transform to arbitrary output nodes (no caching).
std::vector<cplx> forward_transform(const RadialProfile& f, const std::vector<double>& out_nodes);
std::vector<cplx> inverse_transform(const RadialProfile& g, const std::vector<double>& out_nodes);

// (sigma_N int |f|^p r^{N-1} dr)^{1/p}; p = inf gives the max over nodes.
double weighted_lp_norm(const RadialProfile& f, double p, double sigma_N = 1.0);

// Fraction of the L^1(r^{N-1}dr) mass sitting in the last decade of the grid
// (r > 0.9 r_max). Used as the truncation heuristic.
double tail_mass_fraction(const RadialProfile& f);

constexpr double kTailMassLimit = 1e-10;

}  // namespace dunkl

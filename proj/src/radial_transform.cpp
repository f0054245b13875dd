#include "dunkl/radial_transform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EffectiveDimension::EffectiveDimension(int n_, double gamma_) : n(n_), gamma(gamma_), N(2.0 * gamma_ + n_) {
    if (n_ < 1) throw_domain("ambient dimension n must be >= 1, got ", n_);
    if (!std::isfinite(gamma_) || gamma_ < 0.0) throw_domain("gamma must be finite and >= 0, got ", gamma_);
}

EffectiveDimension EffectiveDimension::from_N(double N) {
    if (!std::isfinite(N) || N < 1.0) throw_domain("effective dimension N must be >= 1, got ", N);
    int n = std::max(1, static_cast<int>(std::floor(N)));
    EffectiveDimension d(n, 0.5 * (N - n));
    d.N = N;  // keep the caller's value bit-exact
    return d;
}

std::shared_ptr<const RadialGrid> make_grid(const EffectiveDimension& dim, double r_max, int panels, int order) {
    if (!(r_max > 0.0)) throw_domain("grid r_max must be positive, got ", r_max);
    if (panels < 1 || order < 2) throw_domain("grid needs >= 1 panel and order >= 2");
    auto g = std::make_shared<RadialGrid>();
    g->r_max = r_max;
    g->dim = dim;
    const double h = r_max / panels;
    const double p = dim.N - 1.0;
    QuadRule first = left_weighted_rule(order, p, h);
    g->nodes = first.x;
    g->weights = first.w;
    std::vector<double> br(panels);
    for (int i = 0; i < panels; ++i) br[i] = (i + 1) * h;
    br.back() = r_max;
    QuadRule rest = composite_gauss_legendre(br, order);
    for (std::size_t k = 0; k < rest.x.size(); ++k) {
        g->nodes.push_back(rest.x[k]);
        g->weights.push_back(rest.w[k] * std::pow(rest.x[k], p));
    }
    return g;
}

std::shared_ptr<const RadialGrid> make_grid_for(const EffectiveDimension& dim, double r_max, double partner_max,
                                                double budget) {
    const int panels = std::max(8, static_cast<int>(std::ceil(r_max * partner_max / budget)));
    return make_grid(dim, r_max, panels);
}

RadialProfile::RadialProfile(std::shared_ptr<const RadialGrid> g, std::vector<cplx> v, Space sp)
    : grid(std::move(g)), values(std::move(v)), space(sp) {
    check();
}

void RadialProfile::check() const {
    if (!grid) throw_domain("profile has no grid");
    if (values.size() != grid->size())
        throw_domain("profile has ", values.size(), " values for ", grid->size(), " nodes");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_domain("profile contains non-finite values");
}

RadialProfile sample(std::shared_ptr<const RadialGrid> grid, const std::function<cplx(double)>& f, Space space) {
    std::vector<cplx> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->nodes[i]);
    return RadialProfile(std::move(grid), std::move(v), space);
}

RadialTransform::RadialTransform(std::shared_ptr<const RadialGrid> physical,
                                 std::shared_ptr<const RadialGrid> frequency)
    : phys_(std::move(physical)), freq_(std::move(frequency)) {
    if (!phys_ || !freq_) throw_domain("transform needs two grids");
    if (phys_->dim.N != freq_->dim.N) throw_domain("transform grids disagree on N");
    const std::size_t ns = freq_->size(), nr = phys_->size();
    K_.resize(ns * nr);
    const BesselKernel kern(phys_->dim.nu());
    parallel_for(ns, [&](std::size_t i) {
        const double s = freq_->nodes[i];
        for (std::size_t k = 0; k < nr; ++k) K_[i * nr + k] = kern(s * phys_->nodes[k]);
    });
}

RadialTransform RadialTransform::make(const EffectiveDimension& dim, double r_max, double s_max, double budget) {
    return RadialTransform(make_grid_for(dim, r_max, s_max, budget), make_grid_for(dim, s_max, r_max, budget));
}

RadialTransform RadialTransform::make_default(const EffectiveDimension& dim) {
    auto g = make_grid(dim, 30.0, 48);
    return RadialTransform(g, g);
}

namespace {

void weighted_matmul(const std::vector<double>& K, std::size_t rows, std::size_t cols_k, bool transpose,
                     const std::vector<double>& w, const std::vector<cplx>& in, std::size_t cols,
                     std::vector<cplx>& out) {
    // out = op(K) * diag(w) * in, op(K) is (rows_out x len_in)
    Eigen::Map<const RowMat> Km(K.data(), rows, cols_k);
    const std::size_t len_in = transpose ? rows : cols_k;
    const std::size_t len_out = transpose ? cols_k : rows;
    if (in.size() != len_in * cols) throw_domain("transform input has wrong size");
    Eigen::MatrixXd re(len_in, cols), im(len_in, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t k = 0; k < len_in; ++k) {
            const cplx v = in[c * len_in + k] * w[k];
            re(k, c) = v.real();
            im(k, c) = v.imag();
        }
    Eigen::MatrixXd ore, oim;
    if (transpose) {
        ore.noalias() = Km.transpose() * re;
        oim.noalias() = Km.transpose() * im;
    } else {
        ore.noalias() = Km * re;
        oim.noalias() = Km * im;
    }
    out.resize(len_out * cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t k = 0; k < len_out; ++k) out[c * len_out + k] = cplx(ore(k, c), oim(k, c));
}

}  // namespace

void RadialTransform::forward_many(const std::vector<cplx>& in, std::size_t cols, std::vector<cplx>& out) const {
    weighted_matmul(K_, freq_->size(), phys_->size(), false, phys_->weights, in, cols, out);
}

void RadialTransform::inverse_many(const std::vector<cplx>& in, std::size_t cols, std::vector<cplx>& out) const {
    weighted_matmul(K_, freq_->size(), phys_->size(), true, freq_->weights, in, cols, out);
}

RadialProfile RadialTransform::forward(const RadialProfile& f) const {
    f.check();
    if (f.grid.get() != phys_.get() && f.grid->nodes != phys_->nodes)
        throw_domain("forward transform: profile is not on this transform's physical grid");
    std::vector<cplx> out;
    forward_many(f.values, 1, out);
    RadialProfile g(freq_, std::move(out), Space::Frequency);
    const double tail = tail_mass_fraction(f);
    if (tail > kTailMassLimit)
        g.warning = detail::concat("truncation: last-decade mass fraction ", tail, " exceeds ", kTailMassLimit);
    return g;
}

RadialProfile RadialTransform::inverse(const RadialProfile& g) const {
    g.check();
    if (g.grid.get() != freq_.get() && g.grid->nodes != freq_->nodes)
        throw_domain("inverse transform: profile is not on this transform's frequency grid");
    std::vector<cplx> out;
    inverse_many(g.values, 1, out);
    RadialProfile f(phys_, std::move(out), Space::Physical);
    const double tail = tail_mass_fraction(g);
    if (tail > kTailMassLimit)
        f.warning = detail::concat("truncation: last-decade spectral mass fraction ", tail, " exceeds ", kTailMassLimit);
    return f;
}

RadialProfile RadialTransform::apply_multiplier(const RadialProfile& f, const std::function<cplx(double)>& m) const {
    RadialProfile g = forward(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx mi = m(g.grid->nodes[i]);
        if (!std::isfinite(mi.real()) || !std::isfinite(mi.imag()))
            throw_domain("multiplier is not finite at s=", g.grid->nodes[i]);
        g.values[i] *= mi;
    }
    RadialProfile out = inverse(g);
    if (!out.warning && g.warning) out.warning = g.warning;
    return out;
}

namespace {
std::vector<cplx> direct(const RadialProfile& f, const std::vector<double>& out_nodes) {
    f.check();
    const BesselKernel kern(f.grid->dim.nu());
    std::vector<cplx> out(out_nodes.size());
    parallel_for(out_nodes.size(), [&](std::size_t i) {
        if (!(out_nodes[i] >= 0.0)) throw_domain("output nodes must be >= 0");
        cplx acc = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
            acc += f.grid->weights[k] * kern(out_nodes[i] * f.grid->nodes[k]) * f.values[k];
        out[i] = acc;
    });
    return out;
}
}  // namespace

std::vector<cplx> forward_transform(const RadialProfile& f, const std::vector<double>& out_nodes) {
    return direct(f, out_nodes);
}

std::vector<cplx> inverse_transform(const RadialProfile& g, const std::vector<double>& out_nodes) {
    return direct(g, out_nodes);
}

double weighted_lp_norm(const RadialProfile& f, double p, double sigma_N) {
    if (std::isnan(p) || p < 1.0) throw_domain("weighted_lp_norm needs p >= 1, got ", p);
    f.check();
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f.grid->weights[k] * std::pow(std::abs(f.values[k]), p);
    return std::pow(sigma_N * s, 1.0 / p);
}

double tail_mass_fraction(const RadialProfile& f) {
    double total = 0.0, tail = 0.0;
    const double cut = 0.9 * f.grid->r_max;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double m = f.grid->weights[k] * std::abs(f.values[k]);
        total += m;
        if (f.grid->nodes[k] > cut) tail += m;
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace dunkl

#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

QuadRule compute_gauss_legendre(int n) {
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // final derivative at converged x
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.x[i] = -x;
        q.x[n - 1 - i] = x;
        q.w[i] = w;
        q.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.x[n / 2] = 0.0;
    return q;
}

std::mutex g_cache_mu;

}  // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1) throw_domain("gauss_legendre: n must be >= 1, got ", n);
    static std::map<int, std::unique_ptr<QuadRule>> cache;
    std::lock_guard<std::mutex> lk(g_cache_mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadRule>(compute_gauss_legendre(n));
    return *slot;
}

QuadRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw_domain("gauss_jacobi: n must be >= 1, got ", n);
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw_domain("gauss_jacobi: need alpha, beta > -1 (got ", alpha, ", ", beta, ")");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), off(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag(k) = (den == 0.0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / den;
    }
    for (int k = 1; k < n; ++k) {
        double kk = k;
        double s = 2.0 * kk + ab;
        double v;
        if (k == 1)  // (k + ab) cancels (s - 1); keeps ab = -1 finite
            v = 4.0 * (1.0 + alpha) * (1.0 + beta) / (s * s * (s + 1.0));
        else
            v = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
        off(k - 1) = std::sqrt(v);
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) J(k, k) = diag(k);
    for (int k = 0; k + 1 < n; ++k) J(k, k + 1) = J(k + 1, k) = off(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigensolver failed");

    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    for (int k = 0; k < n; ++k) {
        q.x[k] = es.eigenvalues()(k);
        double v = es.eigenvectors()(0, k);
        q.w[k] = mu0 * v * v;
    }
    return q;
}

QuadRule left_weighted_rule(int n, double p, double h) {
    if (!(p > -1.0)) throw_domain("left_weighted_rule: need p > -1, got ", p);
    static std::map<std::pair<int, double>, std::unique_ptr<QuadRule>> cache;
    const QuadRule* base;
    {
        std::lock_guard<std::mutex> lk(g_cache_mu);
        auto& slot = cache[{n, p}];
        if (!slot) {
            // x in [-1,1] -> r = (1+x)/2 on [0,1]; (1+x)^p = 2^p r^p, dx = 2 dr
            QuadRule gj = gauss_jacobi(n, 0.0, p);
            auto q = std::make_unique<QuadRule>();
            q->x.resize(n);
            q->w.resize(n);
            const double scale = std::pow(2.0, -(p + 1.0));
            for (int k = 0; k < n; ++k) {
                q->x[k] = 0.5 * (1.0 + gj.x[k]);
                q->w[k] = gj.w[k] * scale;
            }
            slot = std::move(q);
        }
        base = slot.get();
    }
    QuadRule out = *base;
    const double ws = std::pow(h, p + 1.0);
    for (int k = 0; k < n; ++k) {
        out.x[k] *= h;
        out.w[k] *= ws;
    }
    return out;
}

QuadRule composite_gauss_legendre(const std::vector<double>& breaks, int n) {
    const QuadRule& g = gauss_legendre(n);
    QuadRule q;
    if (breaks.size() < 2) return q;
    q.x.reserve((breaks.size() - 1) * n);
    q.w.reserve((breaks.size() - 1) * n);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int k = 0; k < n; ++k) {
            q.x.push_back(c + h * g.x[k]);
            q.w.push_back(h * g.w[k]);
        }
    }
    return q;
}

}  // namespace dunkl

#pragma once

#include <vector>

namespace dunkl {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre on [-1, 1]. Cached per n; thread-safe.
const QuadRule& gauss_legendre(int n);

// Gauss-Jacobi on [-1, 1] for the weight (1-x)^alpha (1+x)^beta, via
// Golub-Welsch. Not cached.
QuadRule gauss_jacobi(int n, double alpha, double beta);

// Rule on [0, h] for the weight r^p (p > -1): nodes and weights such that
// sum w_i f(r_i) ~ int_0^h f(r) r^p dr. Cached per (n, p) for h = 1.
QuadRule left_weighted_rule(int n, double p, double h);

// Composite Gauss-Legendre over the given breakpoints (plain weight).
QuadRule composite_gauss_legendre(const std::vector<double>& breaks, int n);

}  // namespace dunkl

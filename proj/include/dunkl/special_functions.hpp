#pragma once

#include <complex>
#include <vector>

namespace dunkl {

struct BesselOrder {
    double nu;
    explicit BesselOrder(double nu);  // throws DomainError unless nu > -1/2 and finite
};

// Evaluator for J_nu and the normalized kernel k_nu(x) = J_nu(x) / x^nu at
// one fixed order. Construction precomputes the per-order tables, so keep one
// around when evaluating many points.
//   x <= max(20, nu)   ascending series (long double); Miller backward
//                      recurrence instead once 12 < x and x > nu
//   x >= max(20, nu^2) Hankel asymptotic expansion
//   otherwise          asymptotic at orders nu-floor(nu), +1, then forward
//                      recurrence (stable since x > nu there)
class BesselKernel {
public:
    explicit BesselKernel(double nu);

    double nu() const { return nu_; }
    double kernel(double x) const;   // J_nu(x)/x^nu, continuous at 0
    double j(double x) const;        // J_nu(x)
    double at_zero() const { return k0_; }  // 1 / (2^nu Gamma(nu+1))

    double operator()(double x) const { return kernel(x); }

    // Gauss-Gegenbauer quadrature of the Poisson integral; independent path
    // used only for cross-checks (loses relative accuracy once x^nu is large).
    double kernel_poisson(double x) const;

private:
    double series(double x) const;
    double recurrence_j(double x) const;
    double miller_j(double x) const;

    double nu_;
    double k0_;
    double x_series_, x_asym_;
    long double lg_nu1_;
    double poisson_pref_;
};

double bessel_j(BesselOrder order, double x);
double bessel_kernel(BesselOrder order, double x);

// h(r) = -i int_0^inf e^{-r t} (t^2 - 2 i t)^{(N-3)/2} dt and its r-derivatives.
class HAux {
public:
    explicit HAux(double N, double tol = 1e-11);

    double N() const { return N_; }
    // d^beta h / dr^beta, beta in {0,1,2}. Throws AccuracyError if the
    // coarse/fine panel estimate exceeds tol (relative).
    std::complex<double> operator()(double r, int beta = 0) const;
    std::complex<double> eval(double r, int beta, double* err_est) const;

    // C_N in k_nu(x) = C_N (e^{ix} h(x) + e^{-ix} conj h(x)).
    double decomposition_constant() const;

private:
    std::complex<double> integrate(double r, int beta, int refine) const;
    double N_, a_, tol_, umax_;
};

}  // namespace dunkl

#include "dunkl/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

namespace {
constexpr double kSeriesMax = 20.0;
constexpr double kMillerMin = 12.0;
}

BesselOrder::BesselOrder(double v) : nu(v) {
    if (!std::isfinite(v) || !(v > -0.5)) throw_domain("Bessel order must be finite and > -1/2, got ", v);
}

BesselKernel::BesselKernel(double nu) : nu_(BesselOrder(nu).nu) {
    lg_nu1_ = std::lgamma(static_cast<long double>(nu_) + 1.0L);
    k0_ = std::exp(-nu_ * std::log(2.0) - static_cast<double>(lg_nu1_));
    x_series_ = std::max(kSeriesMax, nu_);
    x_asym_ = std::max(kSeriesMax, nu_ * nu_);
    // k_nu(x) = 2^-nu / (Gamma(nu+1/2) sqrt(pi)) int_{-1}^{1} (1-t^2)^{nu-1/2} cos(xt) dt
    poisson_pref_ = std::exp(-nu_ * std::log(2.0) - std::lgamma(nu_ + 0.5)) / std::sqrt(std::numbers::pi);
}

double BesselKernel::series(double x) const {
    // 2^-nu sum_k (-x^2/4)^k / (k! Gamma(k+nu+1))
    const long double z = -0.25L * static_cast<long double>(x) * x;
    long double term = std::exp(-lg_nu1_);
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= z / (static_cast<long double>(k) * (k + nu_));
        sum += term;
        if (std::fabs(term) < 1e-21L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum) * std::pow(2.0, -nu_);
}

namespace {

// Hankel expansion; caller guarantees x large relative to nu^2.
double hankel_j(double nu_, double x) {
    // J = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - (nu/2 + 1/4) pi
    const double mu = 4.0 * nu_ * nu_;
    double P = 1.0, Q = 0.0;
    double term = 1.0;
    double last = 1e300;
    for (int k = 1; k < 120; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double a = std::abs(term);
        if (a > last) break;  // asymptotic series started diverging
        last = a;
        if (k % 2 == 1)
            Q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        else
            P += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        if (a < 1e-17 * std::max(std::abs(P), std::abs(Q))) break;
    }
    // cos(x - c) expanded so the reduction of x is done once by libm
    const double c = (0.5 * nu_ + 0.25) * std::numbers::pi;
    const double cx = std::cos(x), sx = std::sin(x), cc = std::cos(c), sc = std::sin(c);
    const double cos_chi = cx * cc + sx * sc;
    const double sin_chi = sx * cc - cx * sc;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * cos_chi - Q * sin_chi);
}

}  // namespace

double BesselKernel::recurrence_j(double x) const {
    const int steps = static_cast<int>(std::floor(nu_));
    double v = nu_ - steps;
    double jm = hankel_j(v, x), j0 = hankel_j(v + 1.0, x);
    if (steps == 0) return jm;
    for (int k = 1; k < steps; ++k) {
        const double jp = 2.0 * (v + 1.0) / x * j0 - jm;
        jm = j0;
        j0 = jp;
        v += 1.0;
    }
    return j0;
}

// Backward recurrence from far above the target order, normalized with
//   (x/2)^a = sum_k (a+2k) Gamma(a+k)/k! J_{a+2k}(x),  a = nu - floor(nu).
// Keeps relative accuracy where the ascending series starts cancelling.
double BesselKernel::miller_j(double x) const {
    using ld = long double;
    const int m = static_cast<int>(std::floor(nu_));  // may be -1
    const ld a = nu_ - m;
    const ld xl = x;
    const int K = 2 * ((std::max(m, 0) + static_cast<int>(x) + 40) / 2);  // even start
    // c[i] = (a + 2i) Gamma(a+i)/i!, with the i = 0 term read as Gamma(a+1)
    std::vector<ld> c(K / 2 + 1);
    ld g = std::tgamma(a + 1.0L);  // Gamma(a+i)/i! at i = 1
    c[0] = g;
    for (int i = 1; i <= K / 2; ++i) {
        if (i > 1) g *= (a + i - 1) / i;
        c[i] = (a + 2 * i) * g;
    }
    ld fp = 0.0L, f = 1e-300L, target = 0.0L, norm = 0.0L;
    for (int k = K; k >= std::min(m, 0); --k) {
        if (k == m) target = f;
        if (k >= 0 && k % 2 == 0) norm += c[k / 2] * f;
        if (k == std::min(m, 0)) break;
        const ld fm = 2.0L * (a + k) / xl * f - fp;
        fp = f;
        f = fm;
        if (std::fabs(f) > 1e300L) {  // rescale
            f *= 1e-300L;
            fp *= 1e-300L;
            target *= 1e-300L;
            norm *= 1e-300L;
        }
    }
    return static_cast<double>(target * std::pow(0.5L * xl, a) / norm);
}

double BesselKernel::kernel_poisson(double x) const {
    const int n = 2 * (static_cast<int>(std::ceil(0.5 * std::max(x, 20.0))) + 40);
    QuadRule g = gauss_jacobi(n, nu_ - 0.5, nu_ - 0.5);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += g.w[k] * std::cos(x * g.x[k]);
    return poisson_pref_ * s;
}

double BesselKernel::kernel(double x) const {
    if (!(x >= 0.0)) throw_domain("bessel kernel needs x >= 0, got ", x);
    if (x == 0.0) return k0_;
    if (x <= x_series_) {
        if (x > kMillerMin && x > nu_) return miller_j(x) * std::pow(x, -nu_);
        return series(x);
    }
    if (x >= x_asym_) return hankel_j(nu_, x) * std::pow(x, -nu_);
    return recurrence_j(x) * std::pow(x, -nu_);
}

double BesselKernel::j(double x) const {
    if (!(x >= 0.0)) throw_domain("bessel_j needs x >= 0, got ", x);
    if (x == 0.0) return nu_ == 0.0 ? 1.0 : 0.0;
    if (x >= x_asym_) return hankel_j(nu_, x);
    if (x > x_series_) return recurrence_j(x);
    if (x > kMillerMin && x > nu_) return miller_j(x);
    return kernel(x) * std::pow(x, nu_);
}

double bessel_j(BesselOrder order, double x) { return BesselKernel(order.nu).j(x); }
double bessel_kernel(BesselOrder order, double x) { return BesselKernel(order.nu).kernel(x); }

// ---------------------------------------------------------------------------

HAux::HAux(double N, double tol) : N_(N), tol_(tol) {
    if (!std::isfinite(N) || !(N > 1.0)) throw_domain("HAux: effective dimension must be > 1, got ", N);
    if (!(tol > 0.0)) throw_domain("HAux: tolerance must be positive");
    a_ = 0.5 * (N - 3.0);
    umax_ = 40.0 + 10.0 * N;
}

double HAux::decomposition_constant() const {
    const double nu = 0.5 * (N_ - 2.0);
    return std::exp(-nu * std::log(2.0) - std::lgamma(nu + 0.5)) / std::sqrt(std::numbers::pi);
}

// -i (-1)^beta r^{-1-beta-a} int_0^U e^{-u} u^{beta+a} (u/r - 2i)^a du
std::complex<double> HAux::integrate(double r, int beta, int refine) const {
    using cd = std::complex<double>;
    const double p = beta + a_;
    const int n = 16;
    const double h0 = 0.5 / refine;
    cd sum = 0.0;
    // first panel carries u^p exactly (p may be non-integer, even negative)
    QuadRule first = left_weighted_rule(n, p, h0);
    for (int k = 0; k < n; ++k) {
        const double u = first.x[k];
        sum += first.w[k] * std::exp(-u) * std::pow(cd(u / r, -2.0), a_);
    }
    std::vector<double> br{h0};
    const double step = 1.0 / refine;
    while (br.back() < umax_) br.push_back(std::min(umax_, br.back() + step));
    QuadRule rest = composite_gauss_legendre(br, n);
    for (std::size_t k = 0; k < rest.x.size(); ++k) {
        const double u = rest.x[k];
        sum += rest.w[k] * std::exp(-u) * std::pow(u, p) * std::pow(cd(u / r, -2.0), a_);
    }
    const double sgn = (beta % 2 == 0) ? 1.0 : -1.0;
    return cd(0.0, -1.0) * sgn * std::pow(r, -1.0 - beta - a_) * sum;
}

std::complex<double> HAux::eval(double r, int beta, double* err_est) const {
    if (!(r > 0.0) || !std::isfinite(r)) throw_domain("h_aux needs r > 0, got ", r);
    if (beta < 0 || beta > 2) throw_domain("h_aux derivative order must be 0, 1 or 2, got ", beta);
    const auto coarse = integrate(r, beta, 1);
    const auto fine = integrate(r, beta, 2);
    const double err = std::abs(fine - coarse);
    if (err_est) *err_est = err;
    if (err > tol_ * std::max(std::abs(fine), 1e-300)) {
        throw AccuracyError(detail::concat("h_aux quadrature did not converge at r=", r, " beta=", beta,
                                           " (estimate ", err, ")"),
                            err);
    }
    return fine;
}

std::complex<double> HAux::operator()(double r, int beta) const { return eval(r, beta, nullptr); }

}  // namespace dunkl

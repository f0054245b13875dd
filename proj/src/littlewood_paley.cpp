#include "dunkl/littlewood_paley.hpp"

#include <cmath>

namespace dunkl {

namespace {
inline double g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}  // namespace

double BumpProfile::R(double r) const {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double a = g(1.0 - r), b = g(r - 0.5);
    return a / (a + b);
}

BumpProfile make_bump() { return BumpProfile{}; }

RadialProfile project(const RadialTransform& tr, const RadialProfile& f, Band which, const BumpProfile& bump) {
    return tr.apply_multiplier(f, [&](double s) { return cplx(which.multiplier(bump, s), 0.0); });
}

}  // namespace dunkl

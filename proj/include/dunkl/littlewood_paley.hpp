#pragma once

#include <cmath>

#include "dunkl/radial_transform.hpp"

namespace dunkl {

// Smooth cutoff built from g(x) = exp(-1/x): R = 1 on [0,1/2], 0 on [1,inf),
// R(r) = g(1-r) / (g(1-r) + g(r-1/2)) in between; psi(r) = R(r/2) - R(r).
class BumpProfile {
public:
    double R(double r) const;
    double psi(double r) const { return R(0.5 * r) - R(r); }
    // psi(2^{-j} r)
    double psi(int j, double r) const { return psi(std::ldexp(r, -j)); }
};

BumpProfile make_bump();

struct Band {
    bool low = true;  // S_0 when true, otherwise Delta_j
    int j = 0;

    static Band S0() { return {true, 0}; }
    static Band delta(int j) { return {false, j}; }

    double multiplier(const BumpProfile& b, double s) const { return low ? b.R(s) : b.psi(j, s); }
};

RadialProfile project(const RadialTransform& tr, const RadialProfile& f, Band which,
                      const BumpProfile& bump = BumpProfile{});

}  // namespace dunkl

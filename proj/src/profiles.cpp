#include "dunkl/profiles.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

RadialFn named_profile(const std::string& name) {
    if (name == "gaussian") return [](double r) { return cplx(std::exp(-0.5 * r * r), 0.0); };
    if (name == "gaussian-wide") return [](double r) { return cplx(std::exp(-r * r / 18.0), 0.0); };
    if (name == "r2gauss") return [](double r) { return cplx(r * r * std::exp(-0.5 * r * r), 0.0); };
    // a function of r^2 so it stays smooth at the origin
    if (name == "ring") return [](double r) { return cplx(std::exp(-0.125 * (r * r - 4.0) * (r * r - 4.0)), 0.0); };
    if (name == "chirp") return [](double r) { return std::exp(cplx(-0.5 * r * r, 0.25 * r * r)); };
    throw_domain("unknown profile '", name, "'");
}

std::vector<std::string> profile_names() { return {"gaussian", "gaussian-wide", "r2gauss", "ring", "chirp"}; }

std::vector<NamedProfile> schwartz_suite(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> width(0.7, 1.6), shift(0.0, 3.0), chirp(-0.3, 0.3), amp(0.5, 2.0);
    std::vector<NamedProfile> out;
    for (int k = 0; k < count; ++k) {
        const double a = amp(rng), sg = width(rng), r0 = (k % 3 == 2) ? shift(rng) : 0.0, c = chirp(rng);
        const int m = k % 3 == 1 ? 1 + (k / 3) % 2 : 0;  // r^{2m} factor
        std::ostringstream nm;
        nm << "suite" << k << "(a=" << a << ",sigma=" << sg << ",r0=" << r0 << ",m=" << m << ",chirp=" << c << ")";
        out.push_back({nm.str(), [=](double r) {
                           // shifted bumps are mirrored so the profile is even in r (smooth radially)
                           const double dm = r - r0, dp = r + r0, q = -0.5 / (sg * sg);
                           const double env = std::exp(q * dm * dm) + (r0 > 0.0 ? std::exp(q * dp * dp) : 0.0);
                           return a * std::pow(r, 2 * m) * env * std::exp(cplx(0.0, c * r * r));
                       }});
    }
    return out;
}

}  // namespace dunkl

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dunkl/radial_transform.hpp"

namespace dunkl {

using RadialFn = std::function<cplx(double)>;

struct NamedProfile {
    std::string name;
    RadialFn f;
};

// "gaussian" e^{-r^2/2}, "gaussian-wide" e^{-r^2/18}, "r2gauss" r^2 e^{-r^2/2},
// "ring" e^{-(r^2-4)^2/8}, "chirp" e^{-r^2/2 + i r^2/4}.
RadialFn named_profile(const std::string& name);
std::vector<std::string> profile_names();

// Deterministic Schwartz-class suite (Gaussian widths, shifts, even
// polynomial factors and chirps drawn from a seeded mt19937).
std::vector<NamedProfile> schwartz_suite(unsigned seed, int count = 10);

}  // namespace dunkl

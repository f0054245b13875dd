#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace dunkl {

enum class PhaseKind { Wave, Schrodinger, FractionalSchrodinger, FourthOrder, KleinGordon, Beam, Custom };

// A dispersion relation phi with its high/low frequency classification
// constants. Absent constants (no curvature condition) are NaN.
struct PhaseSpec {
    PhaseKind kind = PhaseKind::Wave;
    double mu = 2.0;  // fractional order, FractionalSchrodinger only
    double m1 = 1.0, m2 = 1.0;
    double alpha1 = std::numeric_limits<double>::quiet_NaN();
    double alpha2 = std::numeric_limits<double>::quiet_NaN();
    std::function<double(double)> custom[3];  // phi, phi', phi'' (Custom only)
    std::string custom_name = "custom";

    static PhaseSpec wave();
    static PhaseSpec schrodinger();
    static PhaseSpec fractional(double mu);
    static PhaseSpec fourth_order();
    static PhaseSpec klein_gordon();
    static PhaseSpec beam();
    static PhaseSpec make_custom(std::function<double(double)> f, std::function<double(double)> f1,
                                 std::function<double(double)> f2, double m1, double m2, double alpha1,
                                 double alpha2, std::string name = "custom");

    // "wave", "schrodinger", "frac"/"fractional", "fourth", "kg", "beam".
    static PhaseSpec parse(const std::string& name, double mu = 1.5);

    std::string name() const;
    bool high_curvature() const { return alpha1 == alpha1; }  // (C3) present
    bool low_curvature() const { return alpha2 == alpha2; }   // (C4) present
};

// phi^{(d)}(r), d in {0,1,2}. r > 0 for the public entry point.
double phase_eval(const PhaseSpec& p, double r, int derivative);

// Same, but also accepts r = 0 where the catalog formula is finite.
double phase_value(const PhaseSpec& p, double r, int derivative = 0);

// All six catalog phases (fractional at the given mu).
std::vector<PhaseSpec> catalog_phases(double mu = 1.5);

}  // namespace dunkl

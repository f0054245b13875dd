#include "dunkl/phase.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

PhaseSpec PhaseSpec::wave() {
    PhaseSpec p;
    p.kind = PhaseKind::Wave;
    p.m1 = p.m2 = 1.0;
    return p;
}

PhaseSpec PhaseSpec::schrodinger() {
    PhaseSpec p = fractional(2.0);
    p.kind = PhaseKind::Schrodinger;
    return p;
}

PhaseSpec PhaseSpec::fractional(double mu) {
    if (!(mu > 0.0 && mu <= 2.0) || mu == 1.0) throw_domain("fractional order must lie in (0,2] minus {1}, got ", mu);
    PhaseSpec p;
    p.kind = PhaseKind::FractionalSchrodinger;
    p.mu = mu;
    p.m1 = p.alpha1 = p.m2 = p.alpha2 = mu;
    return p;
}

PhaseSpec PhaseSpec::fourth_order() {
    PhaseSpec p;
    p.kind = PhaseKind::FourthOrder;
    p.m1 = p.alpha1 = 4.0;
    p.m2 = p.alpha2 = 2.0;
    return p;
}

PhaseSpec PhaseSpec::klein_gordon() {
    PhaseSpec p;
    p.kind = PhaseKind::KleinGordon;
    p.m1 = 1.0;
    p.alpha1 = -1.0;
    p.m2 = p.alpha2 = 2.0;
    return p;
}

PhaseSpec PhaseSpec::beam() {
    PhaseSpec p;
    p.kind = PhaseKind::Beam;
    p.m1 = p.alpha1 = 2.0;
    p.m2 = p.alpha2 = 4.0;
    return p;
}

PhaseSpec PhaseSpec::make_custom(std::function<double(double)> f, std::function<double(double)> f1,
                                 std::function<double(double)> f2, double m1, double m2, double alpha1,
                                 double alpha2, std::string name) {
    if (!f) throw_domain("custom phase needs at least phi");
    PhaseSpec p;
    p.kind = PhaseKind::Custom;
    p.custom[0] = std::move(f);
    p.custom[1] = std::move(f1);
    p.custom[2] = std::move(f2);
    p.m1 = m1;
    p.m2 = m2;
    p.alpha1 = alpha1;
    p.alpha2 = alpha2;
    p.custom_name = std::move(name);
    return p;
}

PhaseSpec PhaseSpec::parse(const std::string& raw, double mu) {
    std::string s = raw;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "wave") return wave();
    if (s == "schrodinger" || s == "schroedinger") return schrodinger();
    if (s == "frac" || s == "fractional") return fractional(mu);
    if (s == "fourth" || s == "fourth-order" || s == "fourthorder") return fourth_order();
    if (s == "kg" || s == "klein-gordon" || s == "kleingordon") return klein_gordon();
    if (s == "beam") return beam();
    throw_domain("unknown phase '", raw, "'");
}

std::string PhaseSpec::name() const {
    switch (kind) {
        case PhaseKind::Wave: return "wave";
        case PhaseKind::Schrodinger: return "schrodinger";
        case PhaseKind::FractionalSchrodinger: {
            std::ostringstream os;
            os << "frac" << mu;
            return os.str();
        }
        case PhaseKind::FourthOrder: return "fourth";
        case PhaseKind::KleinGordon: return "kg";
        case PhaseKind::Beam: return "beam";
        case PhaseKind::Custom: return custom_name;
    }
    return "?";
}

double phase_value(const PhaseSpec& p, double r, int d) {
    if (d < 0 || d > 2) throw_domain("phase derivative must be 0, 1 or 2, got ", d);
    switch (p.kind) {
        case PhaseKind::Wave: return d == 0 ? r : (d == 1 ? 1.0 : 0.0);
        case PhaseKind::Schrodinger:
        case PhaseKind::FractionalSchrodinger: {
            const double mu = p.mu;
            if (d == 0) return std::pow(r, mu);
            if (d == 1) return mu * std::pow(r, mu - 1.0);
            return mu * (mu - 1.0) * std::pow(r, mu - 2.0);
        }
        case PhaseKind::FourthOrder: {
            const double r2 = r * r;
            if (d == 0) return r2 * r2 + r2;
            if (d == 1) return 4.0 * r2 * r + 2.0 * r;
            return 12.0 * r2 + 2.0;
        }
        case PhaseKind::KleinGordon: {
            const double q = 1.0 + r * r;
            if (d == 0) return std::sqrt(q);
            if (d == 1) return r / std::sqrt(q);
            return 1.0 / (q * std::sqrt(q));
        }
        case PhaseKind::Beam: {
            const double r2 = r * r, q = 1.0 + r2 * r2;
            if (d == 0) return std::sqrt(q);
            if (d == 1) return 2.0 * r2 * r / std::sqrt(q);
            return (6.0 * r2 + 2.0 * r2 * r2 * r2) / (q * std::sqrt(q));
        }
        case PhaseKind::Custom:
            if (!p.custom[d]) throw_domain("custom phase '", p.custom_name, "' has no derivative of order ", d);
            return p.custom[d](r);
    }
    return 0.0;
}

double phase_eval(const PhaseSpec& p, double r, int d) {
    if (!(r > 0.0)) throw_domain("phase_eval needs r > 0, got ", r);
    return phase_value(p, r, d);
}

std::vector<PhaseSpec> catalog_phases(double mu) {
    return {PhaseSpec::wave(),         PhaseSpec::schrodinger(),  PhaseSpec::fractional(mu),
            PhaseSpec::fourth_order(), PhaseSpec::klein_gordon(), PhaseSpec::beam()};
}

}  // namespace dunkl

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/phase.hpp"
#include "dunkl/radial_transform.hpp"

namespace dunkl {

enum class Equation { SchrodingerLike, FourthOrder, Wave, KleinGordon, Beam };

bool is_second_order(Equation eq);
std::string equation_name(Equation eq);
Equation parse_equation(const std::string& s);

struct CauchyData {
    Equation eq = Equation::KleinGordon;
    PhaseSpec phase = PhaseSpec::schrodinger();  // SchrodingerLike only
    RadialProfile u0;
    std::optional<RadialProfile> u1;

    void check() const;  // second-order tags need u1, first-order forbid it
    PhaseSpec first_order_phase() const;
};

struct NonlinearitySpec {
    double alpha = 2.0;
    double lambda = 1.0;
    NonlinearitySpec() = default;
    NonlinearitySpec(double alpha_, double lambda_);
    cplx operator()(cplx u) const { return lambda * std::pow(std::abs(u), alpha) * u; }
};

struct SolverConfig {
    double T = 5.0;
    double dt = 0.05;
    double eps = 1e-8;  // relative to ||u_lin||_X
    int max_iter = 50;
    std::string rule = "trapezoid";
    void check() const;
};

// omega(s) for the second-order tags: s, sqrt(1+s^2), sqrt(1+s^4).
double omega(Equation eq, double s);

struct LinearMultipliers {
    std::function<double(double)> m_cos;   // cos(t omega)
    std::function<double(double)> m_sinc;  // sin(t omega)/omega
};
LinearMultipliers linear_propagators(Equation eq, double t);

struct Trajectory {
    std::vector<double> t;
    std::vector<RadialProfile> u;
    std::vector<RadialProfile> ut;  // second-order only
};

Trajectory solve_linear(const RadialTransform& tr, const CauchyData& data, const std::vector<double>& t_grid);

double mass(const RadialProfile& u);
// 1/2 (||u_t||^2 + ||omega F u||^2), computed through the transform.
double linear_energy(const RadialTransform& tr, Equation eq, const RadialProfile& u, const RadialProfile& ut);

struct NonlinearResult {
    Trajectory traj;
    Trajectory linear;
    std::vector<double> increments;  // ||u^{k+1}-u^k||_X / ||u_lin||_X
    std::vector<double> ratios;      // successive increment ratios
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;  // relative, re-evaluated at doubled tau resolution
    double x_norm = 0.0, x_norm_linear = 0.0;
    double C = 0.0, M = 0.0, CM_alpha = 0.0;
    double sup_u = 0.0, sup_linear = 0.0;
    double alpha = 0.0;

    std::string report() const;
};

// Picard iteration on u = u_lin - int_0^t K_{t-tau} F(u(tau)) dtau over [0,T].
NonlinearResult solve_nonlinear(const RadialTransform& tr, const CauchyData& data, const NonlinearitySpec& nl,
                                const SolverConfig& cfg);

// Discrete L^{a+1}_t L^{a+2}_x norm of a column-major block (nodes x times).
double x_norm(const RadialGrid& g, const std::vector<cplx>& block, std::size_t times, double dt, double alpha);

enum class CriticalEq { KG, Beam };
double critical_index(CriticalEq eq, double N);

}  // namespace dunkl

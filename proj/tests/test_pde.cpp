#include <doctest.h>

#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/pde_solver.hpp"
#include "dunkl/propagator.hpp"

using namespace dunkl;

namespace {

double rel_l2(const RadialProfile& a, const RadialProfile& b) {
    auto d = a;
    for (std::size_t i = 0; i < d.size(); ++i) d.values[i] -= b.values[i];
    return weighted_lp_norm(d, 2.0) / weighted_lp_norm(b, 2.0);
}

CauchyData second_order(Equation eq, const RadialTransform& tr, double amp, double width = 1.0) {
    CauchyData d;
    d.eq = eq;
    d.u0 = sample(tr.physical(), [=](double r) { return cplx(amp * std::exp(-0.5 * r * r / (width * width))); });
    d.u1 = sample(tr.physical(), [](double) { return cplx(0.0); });
    return d;
}

double slowest_tail_ratio(const NonlinearResult& res) {
    // ratio of successive increments once below the first iterate
    double worst = 0.0;
    for (std::size_t k = 1; k < res.increments.size(); ++k)
        if (res.increments[k] < res.increments[0] && res.increments[k] > 1e-15)
            worst = std::max(worst, res.increments[k] / res.increments[k - 1]);
    return worst;
}

}  // namespace

TEST_SUITE("pde_solver") {

TEST_CASE("linear propagator multipliers") {
    for (auto eq : {Equation::Wave, Equation::KleinGordon, Equation::Beam}) {
        const auto m = linear_propagators(eq, 0.0);
        for (double s : {0.0, 0.3, 1.0, 7.0}) {
            CHECK(m.m_cos(s) == 1.0);
            CHECK(m.m_sinc(s) == 0.0);
        }
    }
    const auto kg = linear_propagators(Equation::KleinGordon, M_PI);
    CHECK(kg.m_cos(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(kg.m_sinc(0.0)) < 1e-15);
    const auto w = linear_propagators(Equation::Wave, 2.0);
    CHECK(w.m_sinc(0.0) == 2.0);
    CHECK(w.m_sinc(1e-9) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.m_sinc(1.0) == doctest::Approx(std::sin(2.0)).epsilon(1e-15));
    CHECK(omega(Equation::Beam, 2.0) == doctest::Approx(std::sqrt(17.0)));
    CHECK(omega(Equation::KleinGordon, 0.0) == 1.0);
    CHECK_THROWS_AS(linear_propagators(Equation::SchrodingerLike, 1.0), DomainError);
    CHECK_THROWS_AS(omega(Equation::FourthOrder, 1.0), DomainError);
    CHECK(parse_equation("kg") == Equation::KleinGordon);
    CHECK(is_second_order(Equation::Beam));
    CHECK_FALSE(is_second_order(Equation::FourthOrder));
}

TEST_CASE("Cauchy data and nonlinearity checks") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make_default(dim);
    auto d = second_order(Equation::KleinGordon, tr, 1.0);
    CHECK_NOTHROW(d.check());
    d.u1.reset();
    CHECK_THROWS_AS(d.check(), DomainError);
    d.eq = Equation::SchrodingerLike;
    CHECK_NOTHROW(d.check());
    d.u1 = d.u0;
    CHECK_THROWS_AS(d.check(), DomainError);

    CHECK_THROWS_AS(NonlinearitySpec(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(NonlinearitySpec(-1.0, 1.0), DomainError);
    SolverConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.check(), DomainError);
    bad.dt = 0.1;
    bad.eps = -1.0;
    CHECK_THROWS_AS(bad.check(), DomainError);

    // F(0) = 0 and |F(u)-F(v)| <= |lambda|(1+alpha)(|u|^a+|v|^a)|u-v|
    for (double a : {0.5, 1.0, 1.8, 2.0, 3.5}) {
        const NonlinearitySpec F(a, -1.7);
        CHECK(F(cplx(0.0)) == cplx(0.0));
        const double C = 1.7 * (1.0 + a);
        for (int i = 0; i < 400; ++i) {
            const cplx u(std::sin(1.3 * i), std::cos(0.7 * i) * 2.0), v(std::cos(2.1 * i) * 0.5, std::sin(0.3 * i));
            const double lhs = std::abs(F(u) - F(v));
            const double rhs = C * (std::pow(std::abs(u), a) + std::pow(std::abs(v), a)) * std::abs(u - v);
            CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("linear conservation laws on [0, 10]") {
    const auto dim = EffectiveDimension::from_N(3.0);
    std::vector<double> ts;
    for (int k = 0; k <= 20; ++k) ts.push_back(0.5 * k);
    {
        const auto tr = RadialTransform::make(dim, 15.0 + 10.0 * 2.0 * 10.0, 10.0);
        CauchyData d;
        d.eq = Equation::SchrodingerLike;
        d.phase = PhaseSpec::schrodinger();
        d.u0 = sample(tr.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
        const auto tj = solve_linear(tr, d, ts);
        const double m0 = mass(d.u0);
        for (const auto& u : tj.u) CHECK(std::abs(mass(u) - m0) / m0 < 1e-6);
    }
    for (auto eq : {Equation::Wave, Equation::KleinGordon, Equation::Beam}) {
        const double speed = eq == Equation::Beam ? 2.0 * 8.0 : 1.0;
        const auto tr = RadialTransform::make(dim, 15.0 + 10.0 * speed, 8.0);
        auto d = second_order(eq, tr, 1.0);
        d.u1 = sample(tr.physical(), [](double r) { return cplx(r * r * std::exp(-0.5 * r * r)); });
        const auto tj = solve_linear(tr, d, ts);
        const double e0 = linear_energy(tr, eq, tj.u[0], tj.ut[0]);
        INFO(equation_name(eq));
        for (std::size_t k = 0; k < ts.size(); ++k)
            CHECK(std::abs(linear_energy(tr, eq, tj.u[k], tj.ut[k]) - e0) / e0 < 1e-6);
    }
}

TEST_CASE("KG energy matches its explicit form") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make(dim, 30.0, 8.0);
    const auto d = second_order(Equation::KleinGordon, tr, 1.0);
    // u0 = e^{-r^2/2}, u1 = 0: ||grad u||^2 = 3/2 * ||u||^2 and ||u||_2^2 = Gamma(3/2)/... computed directly
    const double u2 = std::sqrt(M_PI) / 4.0;  // int_0^inf e^{-r^2} r^2 dr
    const double g2 = 1.5 * u2;               // int s^2 e^{-s^2} s^2 ds = 3 sqrt(pi)/8
    const auto tj = solve_linear(tr, d, {0.0, 1.0});
    CHECK(linear_energy(tr, Equation::KleinGordon, tj.u[0], tj.ut[0]) == doctest::Approx(0.5 * (u2 + g2)).epsilon(1e-9));
    CHECK(linear_energy(tr, Equation::KleinGordon, tj.u[1], tj.ut[1]) == doctest::Approx(0.5 * (u2 + g2)).epsilon(1e-9));
}

TEST_CASE("time reversal and evenness") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make(dim, 40.0, 8.0);
    for (auto eq : {Equation::Wave, Equation::KleinGordon, Equation::Beam}) {
        const auto tr2 = eq == Equation::Beam ? RadialTransform::make(dim, 15.0 + 3.0 * 16.0, 8.0) : tr;
        auto d = second_order(eq, tr2, 1.0);
        const auto tj = solve_linear(tr2, d, {-3.0, 3.0});
        INFO(equation_name(eq));
        CHECK(rel_l2(tj.u[0], tj.u[1]) < 1e-10);
        // run to t=3, then use (u, -u_t) as data and run 3 more
        CauchyData back;
        back.eq = eq;
        back.u0 = tj.u[1];
        back.u1 = tj.ut[1];
        for (auto& v : back.u1->values) v = -v;
        const auto home = solve_linear(tr2, back, {3.0});
        CHECK(rel_l2(home.u[0], d.u0) < 1e-6);
    }
    {
        const auto trs = RadialTransform::make(dim, 15.0 + 3.0 * 16.0, 8.0);
        CauchyData d;
        d.eq = Equation::SchrodingerLike;
        d.u0 = sample(trs.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
        auto fwd = solve_linear(trs, d, {3.0});
        d.u0 = fwd.u[0];
        const auto home = solve_linear(trs, d, {-3.0});
        const auto orig = sample(trs.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); });
        CHECK(rel_l2(home.u[0], orig) < 1e-6);
    }
}

TEST_CASE("wave at N=3 against d'Alembert") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make(dim, 30.0, 12.0);
    CauchyData d;
    d.eq = Equation::Wave;
    d.u0 = sample(tr.physical(), [](double r) { return cplx(std::exp(-r * r)); });
    d.u1 = sample(tr.physical(), [](double) { return cplx(0.0); });
    const std::vector<double> ts{0.5, 2.0, 5.0};
    const auto tj = solve_linear(tr, d, ts);
    // r u solves the 1-D wave equation with the odd extension of r u0
    const auto phi = [](double x) { return x * std::exp(-x * x); };
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts[k];
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.physical()->nodes.size(); ++i) {
            const double r = tr.physical()->nodes[i];
            const double ref = r > 1e-3 ? 0.5 * (phi(r + t) + phi(r - t)) / r
                                        : (1.0 - 2.0 * t * t) * std::exp(-t * t);
            worst = std::max(worst, std::abs(tj.u[k].values[i] - ref));
        }
        INFO("t = " << t);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("nonlinear: lambda = 0 reproduces the linear flow") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make(dim, 20.0, 8.0);
    const auto d = second_order(Equation::KleinGordon, tr, 1e-3);
    SolverConfig cfg;
    cfg.T = 2.0;
    cfg.dt = 0.1;
    const auto res = solve_nonlinear(tr, d, NonlinearitySpec(2.0, 0.0), cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    const auto lin = solve_linear(tr, d, res.traj.t);
    for (std::size_t k = 0; k < lin.u.size(); ++k) CHECK(rel_l2(res.traj.u[k], lin.u[k]) < 1e-14);
}

TEST_CASE("cubic Klein-Gordon, N=3") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto tr = RadialTransform::make(dim, 20.0, 8.0);
    const auto d = second_order(Equation::KleinGordon, tr, 1e-3);
    SolverConfig cfg;
    cfg.T = 5.0;
    cfg.dt = 0.1;
    const auto res = solve_nonlinear(tr, d, NonlinearitySpec(2.0, 1.0), cfg);
    MESSAGE(res.report());
    CHECK(res.converged);
    CHECK(slowest_tail_ratio(res) <= 0.5);
    CHECK(res.residual < 10.0 * cfg.eps);
    CHECK(res.CM_alpha < 0.5);
    // trapezoidal in tau: the gap between the tau rule and its refinement is second order
    auto cfg2 = cfg;
    cfg2.dt = 0.05;
    const auto half = solve_nonlinear(tr, d, NonlinearitySpec(2.0, 1.0), cfg2);
    CHECK(half.converged);
    MESSAGE("residual " << res.residual << " -> " << half.residual);
    CHECK(res.residual >= 3.0 * half.residual);
}

TEST_CASE("small-data windows") {
    SUBCASE("N=2, alpha=1.8") {
        CHECK(critical_index(CriticalEq::KG, 2.0) == doctest::Approx(std::sqrt(32.0) / 4.0).epsilon(1e-15));
        CHECK(1.8 > critical_index(CriticalEq::KG, 2.0));
        CHECK(1.8 < 4.0 / 2.0);
    }
    SUBCASE("N=3, alpha=1.2") {
        CHECK(1.2 > critical_index(CriticalEq::KG, 3.0));
        CHECK(1.2 < 4.0 / 3.0);
        const auto dim = EffectiveDimension::from_N(3.0);
        const auto tr = RadialTransform::make(dim, 25.0, 8.0);
        const auto d = second_order(Equation::KleinGordon, tr, 1e-3);
        SolverConfig cfg;
        cfg.T = 10.0;
        cfg.dt = 0.1;
        const auto res = solve_nonlinear(tr, d, NonlinearitySpec(1.2, 1.0), cfg);
        CHECK(res.converged);
        CHECK(res.sup_u <= 2.0 * res.sup_linear);
        CHECK(res.CM_alpha < 0.5);
    }
}

TEST_CASE("critical indices") {
    CHECK(critical_index(CriticalEq::KG, 3.0) == 1.0);
    CHECK(std::abs(critical_index(CriticalEq::Beam, 3.0) - (1.0 + std::sqrt(97.0)) / 6.0) < 1e-12);
    CHECK(critical_index(CriticalEq::Beam, 3.0) == doctest::Approx(1.8081430).epsilon(1e-7));
    CHECK(critical_index(CriticalEq::KG, 1.0) == doctest::Approx((1.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-15));
    CHECK(critical_index(CriticalEq::KG, 1.0) == doctest::Approx(2.561553).epsilon(1e-6));
    CHECK_THROWS_AS(critical_index(CriticalEq::KG, 0.0), DomainError);
    CHECK_THROWS_AS(critical_index(CriticalEq::Beam, -1.0), DomainError);
}

TEST_CASE("x_norm of a constant block") {
    const auto dim = EffectiveDimension::from_N(3.0);
    const auto g = make_grid(dim, 1.0, 4);
    std::vector<cplx> block;
    const std::size_t times = 10;
    for (std::size_t k = 0; k < times; ++k)
        for (std::size_t i = 0; i < g->nodes.size(); ++i) block.emplace_back(1.0);
    // ||1||_{L^4(B_1)} = (1/3)^{1/4}; L^3 in time over 10 steps of 0.1 -> factor 1
    CHECK(x_norm(*g, block, times, 0.1, 2.0) == doctest::Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));
}

}

#include <doctest.h>

#include <huvf/error.hpp>
#include <huvf/pendulum.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace huvf;
namespace pen = huvf::pendulum;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("closed-form profile values") {
    // v_1(2) = 2 arctan(1) = pi/2.
    CHECK(pen::closed_form(1.0, 2.0).first == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(pen::closed_form(1.0, 2.0).second == doctest::Approx(0.5).epsilon(1e-15));
    // q = 0 is the zero solution.
    CHECK(pen::closed_form(0.0, 3.0).first == 0.0);
    CHECK(pen::closed_form(0.0, 3.0).second == 0.0);
    CHECK_THROWS_AS((void)pen::closed_form(1.0, 0.0), DomainError);

    // Branch-free sin/cos agree with the angle.
    for (double r : {0.1, 0.7, 2.0, 9.0}) {
        for (double q : {0.5, 1.0, -1.3}) {
            const auto [sv, cv] = pen::closed_form_sincos(q, r);
            const double v = pen::closed_form(q, r).first;
            CHECK(sv == doctest::Approx(std::sin(v)).epsilon(1e-14));
            CHECK(cv == doctest::Approx(std::cos(v)).epsilon(1e-14));
        }
    }
    CHECK(pen::closed_form_sincos(2.0, 0.0).second == 1.0);
}

TEST_CASE("closed form satisfies the ODE") {
    const pen::PendulumSolution sol = pen::tabulate_closed_form(1.0, 1e-3, 10.0, 800);
    CHECK(sol.max_ode_residual < 1e-9);
    CHECK(sol.samples.size() == 800);
    CHECK(sol.samples.front().r == doctest::Approx(1e-3));
    CHECK(sol.samples.back().r == doctest::Approx(10.0));
}

TEST_CASE("scaling relation v_q(r) = v_1(q r) for the family") {
    // v_{q}(r) = 2 atan(q r / 2) depends on q r only.
    for (double r : {0.3, 1.0, 4.0, 25.0}) {
        CHECK(pen::closed_form(0.5, r).first == doctest::Approx(pen::closed_form(1.0, 0.5 * r).first)
                                                    .epsilon(1e-15));
        CHECK(pen::closed_form(2.0, r).first == doctest::Approx(pen::closed_form(1.0, 2.0 * r).first)
                                                    .epsilon(1e-15));
    }
}

TEST_CASE("shooting integration reproduces the closed form") {
    for (double q : {0.5, 1.0, 2.0}) {
        const pen::PendulumSolution sol = pen::solve_shooting(q, 10.0);
        REQUIRE(sol.samples.size() == 800);
        CHECK(sol.method == pen::Method::Shooting);
        double sup = 0.0;
        for (const auto& s : sol.samples)
            sup = std::max(sup, std::abs(s.v - pen::closed_form(q, s.r).first));
        CHECK(sup < 1e-8);
        CHECK(sol.max_ode_residual < 1e-8);
        CHECK(pen::separatrix_residual(sol) < 1e-8);
    }
}

TEST_CASE("shooting with q = 0 returns the equilibrium") {
    const pen::PendulumSolution sol = pen::solve_shooting(0.0, 10.0);
    for (const auto& s : sol.samples) {
        CHECK(s.v == 0.0);
        CHECK(s.vp == 0.0);
    }
    CHECK_THROWS_AS((void)pen::separatrix_residual(sol), DomainError);
}

TEST_CASE("closed-form trajectory lies on the separatrix") {
    for (double q : {0.5, 1.0, 2.0, -1.1}) {
        const pen::PendulumSolution sol = pen::tabulate_closed_form(q, 1e-3, 50.0, 400);
        CHECK(pen::separatrix_residual(sol) < 1e-12);
    }
}

TEST_CASE("phase-plane view") {
    const pen::PendulumSolution sol = pen::tabulate_closed_form(1.0, 0.01, 10.0, 100);
    const auto pts = pen::phase_points(sol);
    REQUIRE(pts.size() == sol.samples.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].t == doctest::Approx(std::log(sol.samples[i].r)).epsilon(1e-13));
        CHECK(pts[i].x == doctest::Approx(kPi - 2.0 * sol.samples[i].v).epsilon(1e-13));
        // On the separatrix y = -2 cos(x/2).
        CHECK(std::abs(pts[i].y + 2.0 * std::cos(0.5 * pts[i].x)) < 1e-12);
    }
    // The trajectory runs from the saddle at x = pi toward the saddle at -pi.
    CHECK(std::abs(pts.front().x - kPi) < 0.03);
    CHECK(pts.back().x < 0.0);
}

TEST_CASE("crossing radius") {
    for (double q : {0.5, 1.0, 2.0, -1.3}) {
        CHECK(pen::crossing_radius(q) == doctest::Approx(2.0 / std::abs(q)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)pen::crossing_radius(0.0), DomainError);
}

TEST_CASE("bending profile: bounded density, 2 q^2 limit") {
    for (double q : {0.5, 1.0, 2.0}) {
        std::vector<double> grid;
        for (int i = 0; i <= 200; ++i) grid.push_back(1e-3 + i * 0.05);
        const pen::EnergyProfile profile = pen::energy_density_profile(q, grid);
        CHECK(std::abs(profile.limit_at_zero - 2.0 * q * q) < 1e-6);
        double peak = 0.0;
        for (const auto& e : profile.samples) {
            CHECK(e.bending <= 2.0 * q * q + 1e-12);
            peak = std::max(peak, e.bending);
        }
        CHECK(peak > 1.9 * q * q);  // the bound is attained near the axis
        // Density decays like r^{-4}: far samples are small.
        CHECK(profile.samples.back().bending < 0.05 * q * q);
    }
}

TEST_CASE("total bending over the growing region diverges linearly") {
    const double q = 1.0;
    // Cross-check the closed-form antiderivative with direct quadrature.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (double R : {2.0, 8.0, 32.0}) {
        const double direct =
            2.0 * R * 2.0 * kPi *
            GK::integrate([q](double r) { return pen::bending_closed(q, r) * r; }, 1.0, R, 10,
                          1e-13);
        const double closed = pen::total_bending_cylinder(q, R);
        CHECK(std::abs(closed - direct) <= 1e-10 * std::abs(direct));
    }
    // Strictly increasing, asymptotically linear in R.
    double prev = pen::total_bending_cylinder(q, 2.0);
    for (double R : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        const double cur = pen::total_bending_cylinder(q, R);
        CHECK(cur > prev);
        prev = cur;
    }
    const double ratio =
        pen::total_bending_cylinder(q, 64.0) / pen::total_bending_cylinder(q, 32.0);
    CHECK(ratio > 1.9);
    CHECK(ratio < 2.1);
    CHECK_THROWS_AS((void)pen::total_bending_cylinder(q, 0.5), DomainError);
}

TEST_CASE("shooting rejects an unreachable tolerance") {
    CHECK_THROWS_AS((void)pen::solve_shooting(1.0, 10.0, 800, 1e-18), NumericalError);
}

#include <doctest.h>

#include <huvf/error.hpp>
#include <huvf/fieldlab.hpp>
#include <huvf/residuals.hpp>

#include <cmath>

using namespace huvf;
namespace res = huvf::residuals;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid construction") {
    res::GridSpec grid;
    grid.chart = ChartId::EuclideanCartesian;
    grid.axes = {res::AxisSpec{0.0, 1.0, 3}, res::AxisSpec{0.0, 1.0, 4},
                 res::AxisSpec{-1.0, 1.0, 5}};
    CHECK(grid.points().size() == 60);
    CHECK(grid.describe().find("euclidean-cartesian") != std::string::npos);

    grid.keep = [](const ChartPoint& p) { return p.c1 > 0.4; };
    CHECK(grid.points().size() == 40);  // c1 in {0.5, 1.0} survives

    res::GridSpec bad;
    bad.chart = ChartId::HyperbolicHalfspace;
    bad.axes = {res::AxisSpec{0.0, 1.0, 2}, res::AxisSpec{0.0, 1.0, 2},
                res::AxisSpec{-0.5, 1.0, 2}};  // z = -0.5 invalid
    CHECK_THROWS_AS((void)bad.points(), DomainError);

    res::GridSpec degenerate;
    degenerate.axes = {res::AxisSpec{0.0, 1.0, 1}, res::AxisSpec{0.0, 1.0, 2},
                       res::AxisSpec{0.0, 1.0, 2}};
    CHECK_THROWS_AS((void)degenerate.points(), DomainError);
}

TEST_CASE("default grids avoid the singular loci") {
    for (const auto& spec :
         {FieldSpec::radial_line(0.0), FieldSpec::radial_point(0.5), FieldSpec::pendulum(0.1, 1.0),
          FieldSpec::frame(1, Space::Euclidean), FieldSpec::frame(2, Space::Hyperbolic),
          FieldSpec::horo_theta(+1), FieldSpec::horo_pq(0.5, 0.1), FieldSpec::h_parallel()}) {
        const res::GridSpec grid = res::default_grid(spec);
        CHECK(space_of(grid.chart) == spec.space());
        for (const ChartPoint& p : grid.points()) (void)evaluate(spec, p);  // must not throw
    }
}

TEST_CASE("harmonic families pass the generic residual test") {
    for (const auto& spec :
         {FieldSpec::radial_line(0.0), FieldSpec::radial_point(1.2), FieldSpec::pendulum(0.3, 1.0),
          FieldSpec::frame(2, Space::Euclidean), FieldSpec::frame(1, Space::Hyperbolic),
          FieldSpec::frame(3, Space::Hyperbolic), FieldSpec::horo_invariant(0.6),
          FieldSpec::horo_theta(-1), FieldSpec::horo_pq(0.4, 0.2), FieldSpec::h_parallel()}) {
        const res::ResidualReport report =
            res::harmonic_section_residual(spec, res::default_grid(spec));
        CHECK(report.pass());
        CHECK(report.worst() < 1e-6);
        REQUIRE(report.channels.size() == 1);
        CHECK(report.channels[0].name == "harmonic-section");
    }
}

TEST_CASE("constant-frame families have an exactly-zero residual (no order)") {
    for (const auto& spec : {FieldSpec::frame(1, Space::Euclidean),
                             FieldSpec::frame(3, Space::Hyperbolic), FieldSpec::h_parallel(),
                             FieldSpec::horo_invariant(0.25)}) {
        const res::ResidualReport report =
            res::harmonic_section_residual(spec, res::default_grid(spec));
        CHECK(report.pass());
        CHECK(report.worst() < 1e-12);
        CHECK_FALSE(report.channels[0].order.has_value());
    }
}

TEST_CASE("genuinely-truncated families show second-order convergence") {
    for (const auto& spec : {FieldSpec::pendulum(0.3, 1.0), FieldSpec::radial_line(0.0),
                             FieldSpec::horo_theta(+1)}) {
        const res::ResidualReport report =
            res::harmonic_section_residual(spec, res::default_grid(spec));
        REQUIRE(report.channels[0].order.has_value());
        CHECK(*report.channels[0].order > 1.8);
        CHECK(*report.channels[0].order < 2.6);
    }
}

TEST_CASE("the radial horizontal field on H^3 is not harmonic") {
    ScalarFn theta = [](const ChartPoint& p) { return std::atan2(p.c2, p.c1); };
    const FieldSpec hat_r = FieldSpec::custom_planar(theta, Space::Hyperbolic);
    const res::GridSpec grid = res::default_grid(FieldSpec::horo_theta(+1));
    const res::ResidualReport coarse = res::harmonic_section_residual(hat_r, grid);
    CHECK_FALSE(coarse.pass());
    CHECK(coarse.worst() > 0.1);
    // The defect is genuine: it does not shrink with the step.
    const res::ResidualReport fine = res::harmonic_section_residual(hat_r, grid, 5e-5, 1e-6, false);
    CHECK(fine.worst() > 0.5 * coarse.worst());
}

TEST_CASE("euclidean reduced system") {
    const FieldSpec spec = FieldSpec::pendulum(0.3, 1.0);
    const res::GridSpec grid = res::default_grid(spec);
    const res::ResidualReport good = res::euclidean_reduced_residual(
        res::family_u_fn(spec), res::family_v_fn(spec), grid);
    CHECK(good.pass());
    REQUIRE(good.channels.size() == 2);
    CHECK(good.channels[0].name == "polar-u");
    CHECK(good.channels[1].name == "polar-v");

    // u = theta^2 is not harmonic in the reduced sense.
    ScalarFn u_sq = [](const ChartPoint& p) {
        const double t = std::atan2(p.c2, p.c1);
        return t * t;
    };
    ScalarFn v_eq = [](const ChartPoint&) { return 0.5 * kPi; };
    const res::ResidualReport bad = res::euclidean_reduced_residual(u_sq, v_eq, grid);
    CHECK_FALSE(bad.pass());
    CHECK(bad.worst() > 0.1);

    // v identically 0 makes cot v undefined.
    ScalarFn v_zero = [](const ChartPoint&) { return 0.0; };
    CHECK_THROWS_AS((void)res::euclidean_reduced_residual(u_sq, v_zero, grid), DomainError);

    // The reduced polar system is a statement about Euclidean space.
    CHECK_THROWS_AS((void)res::euclidean_reduced_residual(
                        u_sq, v_eq, res::default_grid(FieldSpec::h_parallel())),
                    DomainError);
}

TEST_CASE("horospherical system") {
    const res::GridSpec grid = res::default_grid(FieldSpec::horo_theta(+1));
    const res::ResidualReport good =
        res::horospherical_residual(res::family_u_fn(FieldSpec::horo_theta(+1)), grid);
    CHECK(good.pass());
    REQUIRE(good.channels.size() == 2);
    CHECK(good.channels[0].name == "hyperbolic-laplacian");
    CHECK(good.channels[1].name == "constraint");

    const res::ResidualReport holo = res::horospherical_residual(
        res::family_u_fn(FieldSpec::horo_holomorphic(1.0, 0.3, 0.2)), grid);
    CHECK(holo.pass());

    // The radial angle u = theta satisfies the Laplace equation but violates
    // the constraint (by exactly 1/r), so it fails.
    ScalarFn theta = [](const ChartPoint& p) { return std::atan2(p.c2, p.c1); };
    const res::ResidualReport bad = res::horospherical_residual(theta, grid);
    CHECK_FALSE(bad.pass());
    CHECK(bad.channels[0].max_abs < 1e-6);   // laplacian channel is fine
    CHECK(bad.channels[1].max_abs > 0.99);   // constraint is order one

    // Wrong chart for the standard form.
    res::GridSpec ball = grid;
    ball.chart = ChartId::HyperbolicBallPolar;
    ball.axes = {res::AxisSpec{0.5, 1.0, 3}, res::AxisSpec{0.1, 1.0, 3},
                 res::AxisSpec{0.5, 2.5, 3}};
    CHECK_THROWS_AS((void)res::horospherical_residual(theta, ball), DomainError);
}

TEST_CASE("harmonic-map characterization on H^3") {
    // The parallel vertical field is geodesic but not solenoidal: div = -2.
    const FieldSpec vert = FieldSpec::h_parallel();
    const res::ResidualReport rv = res::harmonic_map_test(vert, res::default_grid(vert));
    CHECK_FALSE(rv.pass());
    REQUIRE(rv.channels.size() == 2);
    CHECK(rv.channels[0].name == "geodesic-defect");
    CHECK(rv.channels[1].name == "solenoidal-defect");
    CHECK(rv.channels[0].max_abs < 1e-6);
    CHECK(rv.channels[1].max_abs > 1.9);
    CHECK(rv.channels[1].max_abs < 2.1);

    // The rotational field is solenoidal but not geodesic.
    const FieldSpec rot = FieldSpec::horo_theta(+1);
    const res::ResidualReport rr = res::harmonic_map_test(rot, res::default_grid(rot));
    CHECK_FALSE(rr.pass());
    CHECK(rr.channels[0].max_abs > 0.99);
    CHECK(rr.channels[1].max_abs < 1e-6);

    // The horizontal frame field is solenoidal but curves upward.
    const FieldSpec fr = FieldSpec::frame(1, Space::Hyperbolic);
    const res::ResidualReport rf = res::harmonic_map_test(fr, res::default_grid(fr));
    CHECK(rf.channels[0].max_abs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rf.channels[1].max_abs < 1e-6);

    // The characterization is not for flat space.
    CHECK_THROWS_AS((void)res::harmonic_map_test(FieldSpec::radial_line(0.0),
                                                 res::default_grid(FieldSpec::radial_line(0.0))),
                    DomainError);
}

TEST_CASE("angle accessors") {
    CHECK_THROWS_AS((void)res::family_u_fn(FieldSpec::h_parallel()), DomainError);
    CHECK_THROWS_AS((void)res::family_u_fn(FieldSpec::frame(3, Space::Hyperbolic)), DomainError);
    CHECK_THROWS_AS((void)res::family_v_fn(FieldSpec::h_parallel()), DomainError);

    const ChartPoint p{ChartId::EuclideanCartesian, 1.0, 1.0, 0.3};
    CHECK(res::family_u_fn(FieldSpec::radial_line(0.2))(p) ==
          doctest::Approx(kPi / 4 + 0.2).epsilon(1e-13));
    CHECK(res::family_v_fn(FieldSpec::radial_line(0.2))(p) == doctest::Approx(kPi / 2));
    const ChartPoint ph{ChartId::HyperbolicHalfspace, 0.0, 0.0, 1.5};
    CHECK(res::family_u_fn(FieldSpec::horo_pq(2.0, 0.5))(ph) ==
          doctest::Approx(2.0 * 2.25 + 0.5).epsilon(1e-13));
}

TEST_CASE("report bookkeeping") {
    const FieldSpec spec = FieldSpec::radial_line(0.0);
    const res::ResidualReport report =
        res::harmonic_section_residual(spec, res::default_grid(spec), 1e-4, 1e-6, false);
    CHECK(report.h == 1e-4);
    CHECK(report.tol == 1e-6);
    CHECK(report.field.find("euclid-radial-line") != std::string::npos);
    CHECK(report.grid.find("euclidean-cartesian") != std::string::npos);
    CHECK_FALSE(report.channels[0].order.has_value());  // suppressed by with_order = false
    CHECK(report.worst() == report.channels[0].max_abs);
}

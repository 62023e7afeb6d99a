#include <doctest.h>

#include <huvf/error.hpp>
#include <huvf/stability.hpp>

#include <cmath>
#include <vector>

using namespace huvf;
namespace st = huvf::stability;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Frozen reference values, produced by independent high-precision evaluation
// of the defining expressions and root equations.
constexpr double kBallVolume1 = 5.110932705708289;
constexpr double kHessian11 = 51.083524132209924;
constexpr double kDeltaS = 1.4710078068796718;
constexpr double kDeltaU = 1.6121942872755812;
constexpr double kR0 = 8.1982057799300891;
}  // namespace

TEST_CASE("ball volume") {
    CHECK(st::ball_volume(1.0) == doctest::Approx(kBallVolume1).epsilon(1e-14));
    CHECK(st::ball_volume(0.0) == doctest::Approx(0.0));
    // Small-rho growth is the flat-space (4/3) pi rho^3.
    CHECK(st::ball_volume(1e-3) == doctest::Approx(4.0 / 3.0 * kPi * 1e-9).epsilon(1e-4));
    for (double rho : {0.2, 1.0, 2.5, 5.0}) {
        CHECK(st::ball_volume_quadrature(rho) ==
              doctest::Approx(st::ball_volume(rho)).epsilon(1e-12));
    }
}

TEST_CASE("shell volume and its product identity") {
    for (double R : {0.1, 0.7, 2.0, 4.5}) {
        for (double delta : {0.1, 0.9, 2.2, 4.0}) {
            const double direct = st::shell_volume(R, delta);
            const double identity = st::shell_volume_identity(R, delta);
            CHECK(std::abs(direct - identity) <= 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("shell first and second moment integrals") {
    for (double R : {0.2, 1.0, 3.0}) {
        for (double delta : {0.3, 1.1, 2.0}) {
            const st::ShellIntegrals s = st::shell_integrals(R, delta);
            CHECK(std::abs(s.I1 - s.I1_quadrature) <= 1e-12 * std::max(1.0, std::abs(s.I1)));
            CHECK(std::abs(s.I2 - s.I2_quadrature) <= 1e-12 * std::max(1.0, std::abs(s.I2)));
            CHECK(st::shell_I1_volume_form(R, delta) ==
                  doctest::Approx(s.I1).epsilon(1e-10));
            CHECK(s.I1 > 0.0);
            CHECK(s.I2 > 0.0);
        }
    }
}

TEST_CASE("Hessian at R = delta = 1, where the two closed forms coincide") {
    const double closed = st::hessian_closed_form(1.0, 1.0);
    const double truth = st::hessian_true_closed_form(1.0, 1.0);
    const double quad = st::hessian_quadrature(1.0, 1.0);
    CHECK(closed == doctest::Approx(kHessian11).epsilon(1e-13));
    CHECK(truth == doctest::Approx(kHessian11).epsilon(1e-13));
    CHECK(quad == doctest::Approx(kHessian11).epsilon(1e-10));
    // Direct formula check: H(1,1) = pi (sinh 1 cosh 3 + cosh 2 + 2/3).
    CHECK(kHessian11 ==
          doctest::Approx(kPi * (std::sinh(1.0) * std::cosh(3.0) + std::cosh(2.0) + 2.0 / 3.0))
              .epsilon(1e-14));
}

TEST_CASE("the two closed forms differ by the structural shell-volume term") {
    for (double R : {0.3, 1.0, 2.0, 4.0}) {
        for (double delta : {0.4, 0.9, 1.3, 2.5}) {
            const double printed = st::hessian_closed_form(R, delta);
            const double truth = st::hessian_true_closed_form(R, delta);
            const double quad = st::hessian_quadrature(R, delta);
            // The corrected form is the integral.
            CHECK(std::abs(truth - quad) <= 1e-9 * std::max(1.0, std::abs(quad)));
            // quadrature - printed = ((delta^2 - 1) / (2 delta^2)) * shell volume.
            const double structural =
                (delta * delta - 1.0) / (2.0 * delta * delta) * st::shell_volume(R, delta);
            CHECK(std::abs(quad - printed - structural) <=
                  1e-9 * std::max(1.0, std::abs(quad)));
            // At delta = 1 the structural term vanishes; elsewhere it does not.
            if (delta != 1.0) CHECK(std::abs(printed - truth) > 1e-3);
        }
    }
}

TEST_CASE("evaluate_hessian bundles the three evaluations") {
    const st::HessianEvaluation e = st::evaluate_hessian(2.0, 1.6122);
    CHECK(e.R == 2.0);
    CHECK(e.delta == 1.6122);
    // The printed expression and the integral even disagree in sign here.
    CHECK(e.closed_form < -100.0);
    CHECK(e.quadrature > 100.0);
    CHECK(e.true_closed_form == doctest::Approx(e.quadrature).epsilon(1e-9));
    CHECK(e.true_rel_diff < 1e-9);
    CHECK(e.rel_diff > 1.0);
    CHECK(e.abs_diff == doctest::Approx(std::abs(e.closed_form - e.quadrature)).epsilon(1e-12));
}

TEST_CASE("instability thresholds of the printed expression") {
    const st::StabilityThresholds th = st::find_thresholds(1e-7);
    CHECK(std::abs(th.delta_s - kDeltaS) < 1e-11);
    CHECK(std::abs(th.delta_u - kDeltaU) < 1e-11);
    CHECK(std::abs(th.delta_s - 1.471007) < 5e-6);
    CHECK(std::abs(th.delta_u - 1.612195) < 5e-6);
    CHECK(th.delta_s < th.delta_u);
    // The threshold equations hold at the frozen roots.
    CHECK(std::abs(st::largeR_coefficient(kDeltaS)) < 1e-12);
    CHECK(std::abs(st::smallR_limit_coefficient(kDeltaU)) < 1e-12);
    // Sign structure around the thresholds.
    CHECK(st::largeR_coefficient(1.4) > 0.0);
    CHECK(st::largeR_coefficient(1.5) < 0.0);
    CHECK(st::smallR_limit_coefficient(1.6) > 0.0);
    CHECK(st::smallR_limit_coefficient(1.62) < 0.0);
}

TEST_CASE("onset radius R0 in the transitional band") {
    const double r0 = st::find_R0(1.471008);
    CHECK(std::abs(r0 - kR0) < 1e-5);
    CHECK(r0 <= 8.198206);
    // Beyond R0 the printed Hessian is negative; below it is positive.
    CHECK(st::hessian_closed_form(r0 * 1.01, 1.471008) < 0.0);
    CHECK(st::hessian_closed_form(r0 * 0.99, 1.471008) > 0.0);
    // Farther inside the band the onset happens much earlier.
    const double r0_mid = st::find_R0(1.55);
    CHECK(r0_mid < r0);
    CHECK(st::hessian_closed_form(r0_mid * 1.01, 1.55) < 0.0);
    // Outside the open band there is no such radius.
    CHECK_THROWS_AS((void)st::find_R0(1.0), DomainError);
    CHECK_THROWS_AS((void)st::find_R0(1.7), DomainError);
}

TEST_CASE("crude volume bound never certifies instability") {
    // (1/delta^2) V_shell - V_ball > 0 throughout the sampled range, so the
    // naive |phi'| <= 1/delta estimate cannot make the Hessian negative.
    for (double R : {0.1, 0.5, 1.5, 3.0, 5.0}) {
        for (double delta : {0.1, 0.6, 1.5, 3.0, 4.0}) {
            CHECK(st::shell_volume(R, delta) / (delta * delta) - st::ball_volume(R) > 0.0);
        }
    }
}

TEST_CASE("smoothstep transition polynomial") {
    CHECK(std::abs(st::smoothstep_P(-1.0)) < 1e-12);
    CHECK(std::abs(st::smoothstep_P(1.0) - 1.0) < 1e-12);
    CHECK(std::abs(st::smoothstep_Pp(-1.0)) < 1e-12);
    CHECK(std::abs(st::smoothstep_Pp(1.0) - 1.0) < 1e-12);
    CHECK(st::smoothstep_P(-1.5) == 0.0);
    CHECK(st::smoothstep_P(2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(st::smoothstep_Pp(-1.5) == 0.0);
    CHECK(st::smoothstep_Pp(2.0) == 1.0);
    // P' really is the derivative of P.
    for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        const double h = 1e-6;
        const double fd = (st::smoothstep_P(x + h) - st::smoothstep_P(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(st::smoothstep_Pp(x)).epsilon(1e-7));
    }
    // C^2 joins: the one-sided second derivatives vanish at both ends.
    for (double x : {-1.0, 1.0}) {
        const double h = 1e-4;
        const double fd2 =
            (st::smoothstep_P(x + h) - 2.0 * st::smoothstep_P(x) + st::smoothstep_P(x - h)) /
            (h * h);
        CHECK(std::abs(fd2) < 1e-2);
    }
}

TEST_CASE("smoothed bump profile") {
    const double R = 1.0, delta = 1.0, w = 0.01;
    const st::RadialProfile prof = st::smoothed_bump(R, delta, w);
    CHECK(prof.support_end == doctest::Approx(R + delta + w));
    REQUIRE(prof.breakpoints.size() == 4);
    CHECK(prof.breakpoints[0] == doctest::Approx(R - w));
    CHECK(prof.breakpoints[3] == doctest::Approx(R + delta + w));
    // Plateau, linear ramp, and tail away from the transition windows.
    CHECK(prof.f(0.2) == 1.0);
    CHECK(prof.f(R - 2.0 * w) == 1.0);
    CHECK(prof.f(1.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(prof.f(1.25) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(prof.f(R + delta + 2.0 * w) == 0.0);
    CHECK(prof.f(5.0) == 0.0);
    // Continuity across each breakpoint.
    for (double b : prof.breakpoints) {
        CHECK(std::abs(prof.f(b + 1e-9) - prof.f(b - 1e-9)) < 1e-7);
    }
    CHECK_THROWS_AS((void)st::smoothed_bump(1.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS((void)st::smoothed_bump(0.005, 1.0, 0.01), DomainError);
}

TEST_CASE("pointwise Jacobi identity for a smooth radial profile") {
    auto f = [](double rho) { return std::exp(-(rho - 2.0) * (rho - 2.0)); };
    auto fp = [&f](double rho) { return -2.0 * (rho - 2.0) * f(rho); };
    auto fpp = [&f](double rho) {
        return (4.0 * (rho - 2.0) * (rho - 2.0) - 2.0) * f(rho);
    };
    for (double rho : {0.5, 1.2, 2.0, 3.1}) {
        CHECK(std::abs(st::jacobi_pointwise_gap(f, fp, fpp, rho)) < 1e-5);
    }
}

TEST_CASE("Jacobi quadratic form agrees with the integral, not the printed form") {
    const double R = 1.0, delta = 1.3, w = 0.01;
    const double H = st::jacobi_quadratic_form(st::smoothed_bump(R, delta, w));
    const double truth = st::hessian_true_closed_form(R, delta);
    const double printed = st::hessian_closed_form(R, delta);
    CHECK(std::abs(H - truth) < 5e-3 * std::abs(truth));
    CHECK(std::abs(H - printed) > 10.0);
}

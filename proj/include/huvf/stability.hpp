#pragma once

/// Second-variation analysis of the H-parallel field xi_3 on H^3 under the
/// compactly supported variation alpha = f xi_1 with radial bump profile
///
///   phi(rho) = 1 on [0,R],  1 + (R - rho)/delta on [R, R+delta],  0 beyond.
///
/// The Hessian reduces by Stokes' theorem to
///
///   H(R, delta) = Integral (|nabla f|^2 - f^2) dV
///               = 4 pi Integral (phi'^2 - phi^2) sinh^2 rho d rho,
///
/// evaluated three ways: the printed closed-form expression (the one whose
/// sign structure defines the thresholds delta_s, delta_u and the radius
/// R_0), a corrected closed form that matches direct quadrature exactly, and
/// adaptive quadrature itself.  The printed expression and the quadrature
/// differ by exactly ((delta^2 - 1) / (2 delta^2)) * shell volume; see the
/// repository README for the full characterization.

#include <huvf/error.hpp>

#include <functional>
#include <vector>

namespace huvf::stability {

/// Volume of a hyperbolic geodesic ball: V(rho) = pi sinh(2 rho) - 2 pi rho.
[[nodiscard]] double ball_volume(double rho);

/// Independent check: adaptive quadrature of 4 pi Integral_0^rho sinh^2 s ds.
[[nodiscard]] double ball_volume_quadrature(double rho);

/// Shell volume V(R + delta) - V(R), from the ball closed form.
[[nodiscard]] double shell_volume(double R, double delta);

/// The same shell volume via the identity
/// 2 pi cosh(2R + delta) sinh(delta) - 2 pi delta.
[[nodiscard]] double shell_volume_identity(double R, double delta);

/// The printed closed-form Hessian
///   H = (pi/delta^2)(2 - delta^2) sinh(delta) cosh(2R + delta)
///     + (pi/delta) cosh(2R) + (pi/delta)(2 R delta + 5 delta^2 / 3 - 3).
/// Its sign structure carries the thresholds delta_s and delta_u.
[[nodiscard]] double hessian_closed_form(double R, double delta);

/// Closed form of the direct integral (agrees with hessian_quadrature to
/// roundoff):
///   H = (pi/delta^2) sinh(delta) cosh(2R + delta)
///     + (pi/delta) cosh(2R) + (pi/delta)(2 R delta + 2 delta^2 / 3 - 2).
[[nodiscard]] double hessian_true_closed_form(double R, double delta);

/// Adaptive quadrature of 4 pi Integral (phi'^2 - phi^2) sinh^2 rho d rho
/// with the exact piecewise-linear phi.
[[nodiscard]] double hessian_quadrature(double R, double delta, double tol = 1e-12);

struct HessianEvaluation {
    double R = 0;
    double delta = 0;
    double closed_form = 0;       ///< printed expression
    double true_closed_form = 0;  ///< corrected expression
    double quadrature = 0;
    double abs_diff = 0;      ///< |closed_form - quadrature|
    double rel_diff = 0;      ///< abs_diff / max(1, |quadrature|)
    double true_abs_diff = 0;  ///< |true_closed_form - quadrature|
    double true_rel_diff = 0;
};

[[nodiscard]] HessianEvaluation evaluate_hessian(double R, double delta, double tol = 1e-12);

/// Shell integrals over [R, R+delta]:
///   I1 = Integral rho dV   = pi [rho sinh 2rho - cosh(2rho)/2 - rho^2],
///   I2 = Integral rho^2 dV = pi [(rho^2 + 1/2) sinh 2rho - rho cosh 2rho - 2 rho^3/3],
/// each bracket evaluated between R and R+delta, with quadrature cross-checks.
struct ShellIntegrals {
    double I1 = 0;
    double I2 = 0;
    double I1_quadrature = 0;
    double I2_quadrature = 0;
};

[[nodiscard]] ShellIntegrals shell_integrals(double R, double delta);

/// Alternative display of I1 in terms of ball volumes:
///   (R+delta) V(R+delta) - R V(R) + (pi/2) cosh 2R - (pi/2) cosh(2R + 2 delta)
///   + pi delta (2R + delta).
[[nodiscard]] double shell_I1_volume_form(double R, double delta);

/// Coefficient of the leading e^{2R} growth of the printed Hessian:
///   A(delta) = (2 - delta^2) sinh(delta) e^{delta} + delta.
/// H(R, delta) < 0 for large R iff A(delta) < 0.
[[nodiscard]] double largeR_coefficient(double delta);

/// R -> 0 limit: H(0+, delta) = (pi / delta^2) B(delta) with
///   B(delta) = (2 - delta^2) sinh(delta) cosh(delta) + delta (5 delta^2 / 3 - 2).
[[nodiscard]] double smallR_limit_coefficient(double delta);

struct StabilityThresholds {
    double delta_s = 0;  ///< sup of delta with H > 0 for all R > 0
    double delta_u = 0;  ///< inf of delta with H < 0 for all R > 0
    double tol = 0;
};

/// Bisection for delta_s (root of A) and delta_u (root of B), each confirmed
/// by a sign scan of H over R in (0, 50] on a log grid plus the analytic
/// large-R coefficient.  Throws NumericalError on scan inconsistency.
[[nodiscard]] StabilityThresholds find_thresholds(double tol = 1e-7);

/// For delta0 strictly between the thresholds: the smallest R beyond which
/// H(R, delta0) < 0 for all larger R (largest zero of R -> H, confirmed by
/// sign sampling beyond it).  Throws DomainError if delta0 is outside the
/// open interval (delta_s, delta_u).
[[nodiscard]] double find_R0(double delta0, double tol = 1e-7);

/// A compactly supported radial profile with known smoothness breakpoints
/// (quadrature split points).
struct RadialProfile {
    std::function<double(double)> f;  ///< f(rho), defined for rho >= 0
    double support_end = 0;           ///< f vanishes for rho >= support_end
    std::vector<double> breakpoints;  ///< interior smoothness breakpoints
};

/// C^2 transition polynomial for the smoothed bump.  P on [-1, 1] satisfies
/// P(-1) = P'(-1) = P''(-1) = 0 and P(1) = 1, P'(1) = 1, P''(1) = 0, so that
///   s_w(t) = 0 for t <= -w,  w P(t/w) for |t| < w,  t for t >= w
/// is a C^2 smoothing of max(t, 0).  P additionally satisfies the moment
/// conditions that make the smoothed Hessian agree with the piecewise-linear
/// one to o(w^2).
[[nodiscard]] double smoothstep_P(double x);
[[nodiscard]] double smoothstep_Pp(double x);  ///< P'

/// C^2 smoothing of the bump profile with transition half-width w around the
/// two kinks:  phi_s(rho) = 1 - (s_w(rho - R) - s_w(rho - R - delta)) / delta.
[[nodiscard]] RadialProfile smoothed_bump(double R, double delta, double w);

/// Direct evaluation of the Hessian from the Jacobi operator:
///   Integral < J(f xi_1), f xi_1 > dV,
///   J(alpha) = nabla*nabla alpha - |nabla sigma|^2 alpha
///              - 2 < nabla sigma, nabla alpha > sigma,   sigma = xi_3,
/// with finite-difference covariant derivatives on the half-space model and
/// radial quadrature split at the profile's breakpoints.  Agrees with
/// hessian_quadrature of the matching profile after integration by parts.
[[nodiscard]] double jacobi_quadratic_form(const RadialProfile& profile, double h = 1e-4);

/// Pointwise check quantity < J(f xi_1), f xi_1 > - (f Delta f - f^2) at
/// geodesic distance rho from the base point; Delta f is the radial
/// Laplacian -(f'' + 2 coth(rho) f') from the supplied derivatives.
[[nodiscard]] double jacobi_pointwise_gap(const std::function<double(double)>& f,
                                          const std::function<double(double)>& fp,
                                          const std::function<double(double)>& fpp, double rho,
                                          double h = 1e-4);

}  // namespace huvf::stability

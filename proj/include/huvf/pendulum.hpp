#pragma once

/// Radial profile v_q(r) behind the axially symmetric harmonic families on
/// R^3: the unique solution of the singular radial reduction
///
///     r^2 V'' + r V' = sin V,   V = 2 v,
///
/// with v(0+) = 0, v'(0+) = q, v''(0+) = 0.  In t = log r the equation is the
/// classical pendulum equation V'' = sin V, and the boundary-matching
/// solutions run along the separatrix y = -2 cos(x/2) (x = pi - V, y = x').
///
/// The closed form used throughout is v_q(r) = 2 arctan(q r / 2); it is
/// validated by substitution into the ODE and against an independent
/// adaptive shooting integration.

#include <huvf/error.hpp>

#include <utility>
#include <vector>

namespace huvf::pendulum {

/// One sample of a radial profile: radius, angle v, derivative dv/dr.
struct Sample {
    double r = 0;
    double v = 0;
    double vp = 0;
};

enum class Method { ClosedForm, Shooting };

struct PendulumSolution {
    double q = 0;                 ///< initial slope v'(0+)
    double c = 0;                 ///< separatrix integration constant |q|/2
    Method method = Method::ClosedForm;
    std::vector<Sample> samples;  ///< ordered by r, log-spaced
    double max_ode_residual = 0;  ///< verified residual of r^2 V'' + r V' - sin V
};

/// Phase-plane coordinates of a sample: t = log r, x = pi - 2v, y = dx/dt.
struct PhasePoint {
    double t = 0;
    double x = 0;
    double y = 0;
};

/// Exact profile: v_q(r) = 2 arctan(q r / 2), v'_q(r) = q / (1 + (q r / 2)^2).
/// Returns (v, v').  q = 0 gives the zero solution.
[[nodiscard]] std::pair<double, double> closed_form(double q, double r);

/// (sin v_q(r), cos v_q(r)) in branch-free rational form:
///   sin v = q r / (1 + q^2 r^2 / 4),  cos v = (1 - q^2 r^2 / 4) / (1 + q^2 r^2 / 4).
/// Well defined for all r >= 0 (continuous through the axis).
[[nodiscard]] std::pair<double, double> closed_form_sincos(double q, double r);

/// Tabulates the closed form on a log-spaced grid of n radii in [r_min, r_max]
/// and records the finite-difference ODE residual over the samples.
[[nodiscard]] PendulumSolution tabulate_closed_form(double q, double r_min, double r_max, int n);

/// Integrates the ODE in t = log r with an adaptive embedded Runge-Kutta pair,
/// starting from the singular-point expansion v = q r0 + O(r0^3) at
/// r0 = min(1e-6 * max(1, 1/|q|), r_min / 2).  Samples are returned on a
/// log-spaced grid of n radii in [r_min, r_max].  The ODE residual is checked
/// on an internal refinement of that grid with at least 800 intervals (the
/// 7-point stencil's truncation floor is O(dt^6), so verification must not
/// depend on how coarsely the caller wants the output sampled); throws
/// NumericalError if the verified residual exceeds tol.
[[nodiscard]] PendulumSolution solve_shooting(double q, double r_max, int n = 800,
                                              double tol = 1e-8, double r_min = 1e-3);

/// Max over samples of |y + 2 cos(x/2)| in phase variables; near zero
/// certifies the trajectory lies on the separatrix.  Throws DomainError for
/// q = 0 (degenerate equilibrium) or an empty solution.
[[nodiscard]] double separatrix_residual(const PendulumSolution& sol);

/// Phase-plane view of the samples.
[[nodiscard]] std::vector<PhasePoint> phase_points(const PendulumSolution& sol);

/// Bending of the axially symmetric family at radius r:
///   v'^2 + sin^2(v)/r^2  =  2 q^2 / (1 + q^2 r^2 / 4)^2.
[[nodiscard]] double bending_closed(double q, double r);

struct EnergyEntry {
    double r = 0;
    double bending = 0;
};

struct EnergyProfile {
    std::vector<EnergyEntry> samples;
    double limit_at_zero = 0;  ///< Richardson-extrapolated limit as r -> 0
};

/// Bending profile over the given radii plus the extrapolated axis limit
/// (which equals 2 q^2).
[[nodiscard]] EnergyProfile energy_density_profile(double q, const std::vector<double>& r_grid);

/// Radius where v_q crosses pi/2 (the profile turns horizontal), located by
/// bisection on cos v_q.  Throws DomainError for q = 0.
[[nodiscard]] double crossing_radius(double q);

/// Total bending over the growing solid region {1 <= r <= R, |z| <= R}:
///   2R * 2*pi * Integral_1^R bending(r) r dr
/// Grows without bound as R -> infinity even though the density is bounded.
[[nodiscard]] double total_bending_cylinder(double q, double R);

}  // namespace huvf::pendulum

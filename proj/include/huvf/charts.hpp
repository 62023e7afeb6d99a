#pragma once

#include <huvf/error.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace huvf {

/// The two ambient spaces: flat 3-space and hyperbolic 3-space of curvature -1.
enum class Space { Euclidean, Hyperbolic };

/// Coordinate charts.  Each chart carries a fixed metric:
///   - the three Euclidean charts carry the flat metric,
///   - the half-space chart {z > 0} carries ds^2 = (dx^2 + dy^2 + dz^2)/z^2,
///   - the ball-polar chart uses geodesic spherical coordinates (rho, theta, phi)
///     about the ball centre, with volume element sinh^2(rho) sin(phi).
enum class ChartId {
    EuclideanCartesian,   // (x, y, z)
    EuclideanCylindrical, // (r, theta, z), r >= 0
    EuclideanSpherical,   // (R, theta, phi), R >= 0, phi measured from the +z axis
    HyperbolicHalfspace,  // (x, y, z), z > 0
    HyperbolicBallPolar,  // (rho, theta, phi), rho >= 0, 0 <= phi <= pi
};

Space space_of(ChartId chart) noexcept;

/// The chart in which each space's global orthonormal frame is most naturally
/// expressed: Cartesian for Euclidean space, half-space for hyperbolic space.
/// All cross-chart computations route through it.
ChartId hub_chart(Space space) noexcept;

std::string chart_name(ChartId chart);

/// A point of one of the ambient spaces, expressed in a chart.
struct ChartPoint {
    ChartId chart = ChartId::EuclideanCartesian;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Throws DomainError if the coordinates violate the chart's domain
/// (half-space z <= 0, negative radial coordinate, phi outside [0, pi], or
/// non-finite values).
void validate(const ChartPoint& p);

/// A tangent vector by components against the global orthonormal frame
/// (xi1, xi2, xi3) of the ambient space:
///   - Euclidean: the fixed right-handed Cartesian basis;
///   - hyperbolic half-space: xi1 = z d/dx, xi2 = z d/dy, xi3 = z d/dz.
/// The frame is orthonormal, so |v|^2 = a1^2 + a2^2 + a3^2 in either space.
struct FrameVector {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    double norm2() const noexcept { return a1 * a1 + a2 * a2 + a3 * a3; }
    double norm() const noexcept { return std::sqrt(norm2()); }
    double dot(const FrameVector& o) const noexcept { return a1 * o.a1 + a2 * o.a2 + a3 * o.a3; }

    FrameVector operator+(const FrameVector& o) const noexcept { return {a1 + o.a1, a2 + o.a2, a3 + o.a3}; }
    FrameVector operator-(const FrameVector& o) const noexcept { return {a1 - o.a1, a2 - o.a2, a3 - o.a3}; }
    FrameVector operator*(double s) const noexcept { return {s * a1, s * a2, s * a3}; }
    FrameVector operator-() const noexcept { return {-a1, -a2, -a3}; }
};

inline FrameVector operator*(double s, const FrameVector& v) noexcept { return v * s; }

/// Converts a point to another chart of the same ambient space.  Round trips
/// are identities to ~1e-12.  Conversion across ambient spaces throws
/// DomainError.  Points on a chart-singular locus of the target use the
/// convention theta := 0 (cylindrical axis, spherical/ball poles).
ChartPoint to_chart(const ChartPoint& p, ChartId target);

/// Scalar and vector functions are evaluated through std::function so that
/// catalog fields, closed forms and ad-hoc test functions share one calculus.
using ScalarFn = std::function<double(const ChartPoint&)>;
using FieldFn = std::function<FrameVector(const ChartPoint&)>;

namespace fd {
/// Default finite-difference step, in chart coordinates.  In the half-space
/// chart every step is scaled by z (and angular steps by the relevant radius in
/// the curvilinear charts) so that steps are metrically uniform; truncation
/// error is then comparable across the domain.
inline constexpr double kDefaultStep = 1e-4;
} // namespace fd

/// Gradient of a scalar function, returned in frame components.  `f` receives
/// points in the same chart as `p`.  In the half-space chart the component
/// along xi_i is z * (df/dx_i).  Chart-singular loci (cylindrical axis,
/// spherical/ball poles and centres) throw DomainError.
FrameVector scalar_gradient(const ScalarFn& f, const ChartPoint& p, double h = fd::kDefaultStep);

/// Laplacian with the geometer's sign convention Delta = -div grad
/// (so Delta f = -f'' for a 1-d function).  In the half-space chart
/// -Delta u = z^2 (u_xx + u_yy + u_zz) - z u_z.
double scalar_laplacian(const ScalarFn& f, const ChartPoint& p, double h = fd::kDefaultStep);

/// The connection table of the global frame: nabla_{xi_i} xi_j.
/// Euclidean: all entries zero.  Hyperbolic half-space:
///   nabla_{xi1} xi1 = xi3,  nabla_{xi2} xi2 = xi3,
///   nabla_{xi1} xi3 = -xi1, nabla_{xi2} xi3 = -xi2,  all others zero.
FrameVector connection(Space space, int i, int j);

/// Covariant derivative nabla_{xi_i} sigma by the Leibniz rule: directional
/// derivative of the frame components (central differences of step h, z-scaled
/// in the half-space) plus the connection-table correction.  `field` receives
/// points in the hub chart of the ambient space; `p` may be in any chart of
/// that space.
FrameVector frame_covariant_derivative(int i, const FieldFn& field, const ChartPoint& p,
                                       double h = fd::kDefaultStep);

/// Rough (connection) Laplacian nabla*nabla = -Tr nabla^2, i.e.
/// -sum_i (nabla_{xi_i} nabla_{xi_i} sigma - nabla_{nabla_{xi_i} xi_i} sigma),
/// evaluated with second-order central finite differences of step h.  The sum
/// is expanded analytically against the frame connection, leaving pure
/// coordinate-derivative stencils of the components:
///   Euclidean:  (nabla*nabla sigma)^j = -sum_i d^2 sigma^j / dx_i^2;
///   half-space: with sigma = a xi1 + b xi2 + c xi3 and
///               D f := -z^2 (f_xx + f_yy + f_zz) + z f_z (the scalar Laplacian),
///     (nabla*nabla sigma)^1 = D a + 2 z c_x + a,
///     (nabla*nabla sigma)^2 = D b + 2 z c_y + b,
///     (nabla*nabla sigma)^3 = D c - 2 z a_x - 2 z b_y + 2 c.
/// Error is O(h^2).  Non-finite stencil values (field singularities) throw
/// NumericalError.
FrameVector rough_laplacian(const FieldFn& field, const ChartPoint& p, double h = fd::kDefaultStep);

/// Hyperbolic distance between two points of H^3 (any hyperbolic charts).
/// In half-space coordinates cosh d = 1 + |p - q|_euc^2 / (2 z_p z_q),
/// evaluated in a cancellation-safe form.
double hyperbolic_distance(const ChartPoint& a, const ChartPoint& b);

} // namespace huvf

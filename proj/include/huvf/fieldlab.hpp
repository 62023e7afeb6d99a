#pragma once

/// Catalog of unit vector field families on R^3 and H^3, polar-form
/// representation, and bending evaluation (closed form where available,
/// frame-derivative based otherwise).
///
/// Every unit field avoiding +/- xi_3 can be written in polar form
///     sigma = cos u sin v xi_1 + sin u sin v xi_2 + cos v xi_3,
/// with bending |nabla sigma|^2 = |nabla v|^2 + sin^2 v |nabla u|^2.
/// Horizontal fields on H^3 (tangent to the horosphere foliation) use the
/// standard form sigma = cos u xi_1 + sin u xi_2 with bending 1 + |nabla u|^2.
///
/// The angle u is only locally defined; all evaluation goes through
/// (cos u, sin u) pairs so no branch cut ever enters a computation.

#include <huvf/charts.hpp>
#include <huvf/error.hpp>

#include <string>

namespace huvf {

enum class FamilyTag {
    EuclidRadialLine,   ///< unit radial field about the z-axis, phase t:  u = theta + t, v = pi/2
    EuclidRadialPoint,  ///< unit radial field about the origin, phase t:  u = theta + t, v = phi
    EuclidPendulum,     ///< axially symmetric family:  u = theta + p, v = v_q(r)
    Frame,              ///< coordinate frame field xi_i of either space
    HoroInvariant,      ///< horizontal field with constant angle u0 on H^3
    HoroTheta,          ///< the rotational Killing direction +/- hat-theta on H^3
    HoroHolomorphic,    ///< horizontal family u = arg(i k zeta + alpha), zeta = x + i y
    HoroPq,             ///< horizontal family u = p z^2 + q
    HParallel,          ///< xi_3 on H^3 (integral curves are parallel geodesics)
    CustomPolar,        ///< user-supplied polar angle functions
};

struct PolarAngles {
    double u = 0;  ///< azimuthal angle, reported in [0, 2*pi)
    double v = 0;  ///< polar angle in (0, pi)
};

/// Tagged description of a unit-field family.  Parameter meaning by tag:
///   EuclidRadialLine / EuclidRadialPoint : phase = t
///   EuclidPendulum                       : phase = p, q = initial slope
///   Frame                                : frame_index in {1,2,3}, space_
///   HoroInvariant                        : phase = u0
///   HoroTheta                            : sign in {-1,+1}, phase = extra rotation
///   HoroHolomorphic                      : k, a_re, a_im
///   HoroPq                               : phase = p, q
///   CustomPolar                          : u_fn, v_fn on the hub chart, space_,
///                                          planar => v is identically pi/2
struct FieldSpec {
    FamilyTag tag = FamilyTag::HParallel;
    double phase = 0;
    double q = 0;
    double k = 0;
    double a_re = 0;
    double a_im = 0;
    int frame_index = 3;
    int sign = 1;
    Space space_ = Space::Hyperbolic;
    bool planar = false;
    ScalarFn u_fn;
    ScalarFn v_fn;

    [[nodiscard]] static FieldSpec radial_line(double t);
    [[nodiscard]] static FieldSpec radial_point(double t);
    [[nodiscard]] static FieldSpec pendulum(double p, double q);
    [[nodiscard]] static FieldSpec frame(int i, Space space);
    [[nodiscard]] static FieldSpec horo_invariant(double u0);
    [[nodiscard]] static FieldSpec horo_theta(int sign);
    [[nodiscard]] static FieldSpec horo_holomorphic(double k, double a_re, double a_im);
    [[nodiscard]] static FieldSpec horo_pq(double p, double q);
    [[nodiscard]] static FieldSpec h_parallel();
    /// Full polar form from angle functions evaluated on the hub chart.
    [[nodiscard]] static FieldSpec custom_polar(ScalarFn u_fn, ScalarFn v_fn, Space space);
    /// Planar/horizontal field (v identically pi/2) from its u angle function.
    [[nodiscard]] static FieldSpec custom_planar(ScalarFn u_fn, Space space);

    [[nodiscard]] Space space() const;
    [[nodiscard]] std::string name() const;
    /// name plus parameter values, e.g. "euclid-pendulum(p=0, q=1)".
    [[nodiscard]] std::string describe() const;
    /// The field as a hub-chart FieldFn closure (components against xi_i).
    [[nodiscard]] FieldFn as_field() const;
};

/// Evaluates the family at p (any chart of the family's space).  Components
/// are against the global orthonormal frame.  Throws DomainError outside the
/// family's domain; EuclidPendulum extends continuously to xi_3 on the axis.
[[nodiscard]] FrameVector evaluate(const FieldSpec& spec, const ChartPoint& p);

/// Polar angles of a unit vector w != +/- xi_3.  Throws DomainError for
/// non-unit input or vanishing equatorial part.
[[nodiscard]] PolarAngles polar_decompose(const FrameVector& w);

/// Bending |nabla sigma|^2 at p, by the family's closed form where one
/// exists, otherwise by finite differences of the polar angles.
[[nodiscard]] double bending(const FieldSpec& spec, const ChartPoint& p);

/// Independent bending computation: the frame-derivative sum
/// sum_i |nabla_{xi_i} sigma|^2 with finite-difference covariant derivatives.
[[nodiscard]] double bending_frame_sum(const FieldSpec& spec, const ChartPoint& p,
                                       double h = fd::kDefaultStep);

/// The circle action u -> u + t on the equatorial part.  Catalog-valued for
/// the Euclidean polar families; throws DomainError for fields without an
/// equatorial part (HParallel, Frame with i = 3).
[[nodiscard]] FieldSpec circle_action(const FieldSpec& spec, double t);

}  // namespace huvf

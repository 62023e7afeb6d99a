#include <huvf/charts.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace huvf {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail_domain(const std::string& msg) { throw DomainError(msg); }

bool finite3(double a, double b, double c) {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

struct Vec3 {
    double x = 0, y = 0, z = 0;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {s * x, s * y, s * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
};

/// Sphere inversion that exchanges the upper half-space {z > 0} and the open
/// unit ball, as hyperbolic isometry.  With c = (0, 0, -1),
///   S(p) = c + 2 (p - c) / |p - c|^2.
/// S is an involution and maps (0,0,1) to the ball centre.
Vec3 ball_halfspace_inversion(const Vec3& p) {
    const Vec3 c{0.0, 0.0, -1.0};
    const Vec3 u = p - c;
    const double n2 = u.norm2();
    if (n2 <= 0.0) fail_domain("ball/half-space inversion undefined at the inversion centre");
    return c + u * (2.0 / n2);
}

/// Differential of the inversion at p applied to v:
///   dS_p(v) = (2/|u|^2) (v - 2 (u.v/|u|^2) u),  u = p - c.
Vec3 ball_halfspace_inversion_differential(const Vec3& p, const Vec3& v) {
    const Vec3 c{0.0, 0.0, -1.0};
    const Vec3 u = p - c;
    const double n2 = u.norm2();
    return (v - u * (2.0 * u.dot(v) / n2)) * (2.0 / n2);
}

Vec3 ball_polar_to_ball_cartesian(double rho, double theta, double phi) {
    const double t = std::tanh(0.5 * rho); // Euclidean radius in the ball model
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double st = std::sin(theta), ct = std::cos(theta);
    return {t * sp * ct, t * sp * st, t * cp};
}

} // namespace

Space space_of(ChartId chart) noexcept {
    switch (chart) {
        case ChartId::EuclideanCartesian:
        case ChartId::EuclideanCylindrical:
        case ChartId::EuclideanSpherical:
            return Space::Euclidean;
        case ChartId::HyperbolicHalfspace:
        case ChartId::HyperbolicBallPolar:
            return Space::Hyperbolic;
    }
    return Space::Euclidean; // unreachable
}

ChartId hub_chart(Space space) noexcept {
    return space == Space::Euclidean ? ChartId::EuclideanCartesian : ChartId::HyperbolicHalfspace;
}

std::string chart_name(ChartId chart) {
    switch (chart) {
        case ChartId::EuclideanCartesian: return "euclidean-cartesian";
        case ChartId::EuclideanCylindrical: return "euclidean-cylindrical";
        case ChartId::EuclideanSpherical: return "euclidean-spherical";
        case ChartId::HyperbolicHalfspace: return "hyperbolic-halfspace";
        case ChartId::HyperbolicBallPolar: return "hyperbolic-ball-polar";
    }
    return "?";
}

void validate(const ChartPoint& p) {
    if (!finite3(p.c1, p.c2, p.c3)) fail_domain("non-finite coordinates");
    switch (p.chart) {
        case ChartId::EuclideanCartesian:
            break;
        case ChartId::EuclideanCylindrical:
            if (p.c1 < 0.0) fail_domain("cylindrical radius must be >= 0");
            break;
        case ChartId::EuclideanSpherical:
            if (p.c1 < 0.0) fail_domain("spherical radius must be >= 0");
            if (p.c3 < 0.0 || p.c3 > kPi) fail_domain("spherical polar angle must lie in [0, pi]");
            break;
        case ChartId::HyperbolicHalfspace:
            if (!(p.c3 > 0.0)) fail_domain("half-space chart requires z > 0");
            break;
        case ChartId::HyperbolicBallPolar:
            if (p.c1 < 0.0) fail_domain("geodesic radius must be >= 0");
            if (p.c3 < 0.0 || p.c3 > kPi) fail_domain("ball polar angle must lie in [0, pi]");
            break;
    }
}

namespace {

ChartPoint to_hub(const ChartPoint& p) {
    switch (p.chart) {
        case ChartId::EuclideanCartesian:
        case ChartId::HyperbolicHalfspace:
            return p;
        case ChartId::EuclideanCylindrical: {
            const double r = p.c1, th = p.c2;
            return {ChartId::EuclideanCartesian, r * std::cos(th), r * std::sin(th), p.c3};
        }
        case ChartId::EuclideanSpherical: {
            const double R = p.c1, th = p.c2, ph = p.c3;
            const double sp = std::sin(ph);
            return {ChartId::EuclideanCartesian, R * sp * std::cos(th), R * sp * std::sin(th),
                    R * std::cos(ph)};
        }
        case ChartId::HyperbolicBallPolar: {
            const Vec3 b = ball_polar_to_ball_cartesian(p.c1, p.c2, p.c3);
            const Vec3 h = ball_halfspace_inversion(b);
            return {ChartId::HyperbolicHalfspace, h.x, h.y, h.z};
        }
    }
    return p; // unreachable
}

ChartPoint from_hub(const ChartPoint& hub, ChartId target) {
    switch (target) {
        case ChartId::EuclideanCartesian:
        case ChartId::HyperbolicHalfspace:
            return hub;
        case ChartId::EuclideanCylindrical: {
            const double x = hub.c1, y = hub.c2;
            const double r = std::hypot(x, y);
            const double th = (r == 0.0) ? 0.0 : std::atan2(y, x);
            return {target, r, th, hub.c3};
        }
        case ChartId::EuclideanSpherical: {
            const double x = hub.c1, y = hub.c2, z = hub.c3;
            const double rc = std::hypot(x, y);
            const double R = std::hypot(rc, z);
            const double th = (rc == 0.0) ? 0.0 : std::atan2(y, x);
            const double ph = (R == 0.0) ? 0.0 : std::atan2(rc, z);
            return {target, R, th, ph};
        }
        case ChartId::HyperbolicBallPolar: {
            const Vec3 h{hub.c1, hub.c2, hub.c3};
            const Vec3 b = ball_halfspace_inversion(h); // involution: same map both ways
            const double t = std::sqrt(b.norm2());
            if (t >= 1.0) fail_domain("point maps outside the open unit ball");
            const double rho = 2.0 * std::atanh(t);
            const double rc = std::hypot(b.x, b.y);
            const double th = (rc == 0.0) ? 0.0 : std::atan2(b.y, b.x);
            const double ph = (t == 0.0) ? 0.0 : std::atan2(rc, b.z);
            return {target, rho, th, ph};
        }
    }
    return hub; // unreachable
}

} // namespace

ChartPoint to_chart(const ChartPoint& p, ChartId target) {
    validate(p);
    if (space_of(p.chart) != space_of(target))
        fail_domain("cannot convert between charts of different ambient spaces");
    if (p.chart == target) return p;
    ChartPoint out = from_hub(to_hub(p), target);
    validate(out);
    return out;
}

namespace {

/// Partial derivatives of f along a single chart coordinate at p.
struct Partial {
    double d1 = 0; // first derivative
    double d2 = 0; // second derivative
};

Partial partials(const ScalarFn& f, const ChartPoint& p, int axis, double step) {
    auto g = [&](double s) {
        ChartPoint q = p;
        (axis == 0 ? q.c1 : axis == 1 ? q.c2 : q.c3) += s;
        return f(q);
    };
    Partial out;
    const double fp = g(step), fm = g(-step), f0 = g(0.0);
    out.d1 = (fp - fm) / (2.0 * step);
    out.d2 = (fp - 2.0 * f0 + fm) / (step * step);
    return out;
}

double first_partial(const ScalarFn& f, const ChartPoint& p, int axis, double step) {
    auto g = [&](double s) {
        ChartPoint q = p;
        (axis == 0 ? q.c1 : axis == 1 ? q.c2 : q.c3) += s;
        return f(q);
    };
    return (g(step) - g(-step)) / (2.0 * step);
}

void require_away_from(double value, double floor, const char* what) {
    if (std::abs(value) < floor) fail_domain(std::string("chart-singular locus: ") + what);
}

} // namespace

FrameVector scalar_gradient(const ScalarFn& f, const ChartPoint& p, double h) {
    validate(p);
    if (!(h > 0.0)) fail_domain("finite-difference step must be positive");
    switch (p.chart) {
        case ChartId::EuclideanCartesian: {
            return {first_partial(f, p, 0, h), first_partial(f, p, 1, h), first_partial(f, p, 2, h)};
        }
        case ChartId::EuclideanCylindrical: {
            const double r = p.c1;
            require_away_from(r, 1e-14, "cylindrical axis r = 0");
            const double fr = first_partial(f, p, 0, h);
            const double fth = first_partial(f, p, 1, h / r); // arc-length-uniform step
            const double fz = first_partial(f, p, 2, h);
            const double ct = std::cos(p.c2), st = std::sin(p.c2);
            const double gth = fth / r;
            // (hat-r, hat-theta, hat-z) components rotated to the fixed basis.
            return {fr * ct - gth * st, fr * st + gth * ct, fz};
        }
        case ChartId::EuclideanSpherical: {
            const double R = p.c1, th = p.c2, ph = p.c3;
            require_away_from(R, 1e-14, "spherical centre R = 0");
            require_away_from(std::sin(ph), 1e-12, "spherical pole sin(phi) = 0");
            const double sp = std::sin(ph), cp = std::cos(ph);
            const double fR = first_partial(f, p, 0, h);
            const double fth = first_partial(f, p, 1, h / (R * sp));
            const double fph = first_partial(f, p, 2, h / R);
            const double gth = fth / (R * sp), gph = fph / R;
            const double ct = std::cos(th), st = std::sin(th);
            // hat-R, hat-theta, hat-phi in the fixed basis.
            return {fR * sp * ct - gth * st + gph * cp * ct,
                    fR * sp * st + gth * ct + gph * cp * st,
                    fR * cp - gph * sp};
        }
        case ChartId::HyperbolicHalfspace: {
            const double z = p.c3;
            const double step = h * z; // metrically uniform
            return {z * first_partial(f, p, 0, step), z * first_partial(f, p, 1, step),
                    z * first_partial(f, p, 2, step)};
        }
        case ChartId::HyperbolicBallPolar: {
            const double rho = p.c1, th = p.c2, ph = p.c3;
            require_away_from(std::sinh(rho), 1e-14, "ball centre rho = 0");
            require_away_from(std::sin(ph), 1e-12, "ball pole sin(phi) = 0");
            const double sh = std::sinh(rho);
            const double frho = first_partial(f, p, 0, h);
            const double fth = first_partial(f, p, 1, h / (sh * std::sin(ph)));
            const double fph = first_partial(f, p, 2, h / sh);
            // Components against the metric-orthonormal polar frame.
            const double grho = frho, gth = fth / (sh * std::sin(ph)), gph = fph / sh;
            // Express that frame in ball-Cartesian coordinates.  A hyperbolic
            // unit vector has Euclidean length 1/lambda, lambda = 2/(1-|b|^2).
            const Vec3 b = ball_polar_to_ball_cartesian(rho, th, ph);
            const double lambda = 2.0 / (1.0 - b.norm2());
            const double sp = std::sin(ph), cp = std::cos(ph);
            const double ct = std::cos(th), st = std::sin(th);
            const Vec3 e_rho{sp * ct, sp * st, cp};
            const Vec3 e_phi{cp * ct, cp * st, -sp};
            const Vec3 e_th{-st, ct, 0.0};
            Vec3 v = (e_rho * grho + e_th * gth + e_phi * gph) * (1.0 / lambda);
            // Push forward to the half-space and read off frame components
            // (xi_i = z d/dx_i, so components are coordinate components / z).
            const Vec3 hpt = ball_halfspace_inversion(b);
            const Vec3 w = ball_halfspace_inversion_differential(b, v);
            return {w.x / hpt.z, w.y / hpt.z, w.z / hpt.z};
        }
    }
    return {}; // unreachable
}

double scalar_laplacian(const ScalarFn& f, const ChartPoint& p, double h) {
    validate(p);
    if (!(h > 0.0)) fail_domain("finite-difference step must be positive");
    switch (p.chart) {
        case ChartId::EuclideanCartesian: {
            const Partial px = partials(f, p, 0, h), py = partials(f, p, 1, h), pz = partials(f, p, 2, h);
            return -(px.d2 + py.d2 + pz.d2);
        }
        case ChartId::EuclideanCylindrical: {
            const double r = p.c1;
            require_away_from(r, 1e-14, "cylindrical axis r = 0");
            const Partial pr = partials(f, p, 0, h);
            const Partial pt = partials(f, p, 1, h / r);
            const Partial pz = partials(f, p, 2, h);
            return -(pr.d2 + pr.d1 / r + pt.d2 / (r * r) + pz.d2);
        }
        case ChartId::EuclideanSpherical: {
            const double R = p.c1, ph = p.c3;
            require_away_from(R, 1e-14, "spherical centre R = 0");
            require_away_from(std::sin(ph), 1e-12, "spherical pole sin(phi) = 0");
            const double sp = std::sin(ph), cp = std::cos(ph);
            const Partial pR = partials(f, p, 0, h);
            const Partial pt = partials(f, p, 1, h / (R * sp));
            const Partial pp = partials(f, p, 2, h / R);
            return -(pR.d2 + 2.0 * pR.d1 / R + (pp.d2 + (cp / sp) * pp.d1) / (R * R) +
                     pt.d2 / (R * R * sp * sp));
        }
        case ChartId::HyperbolicHalfspace: {
            const double z = p.c3;
            const double step = h * z;
            const Partial px = partials(f, p, 0, step), py = partials(f, p, 1, step),
                          pz = partials(f, p, 2, step);
            return -(z * z * (px.d2 + py.d2 + pz.d2) - z * pz.d1);
        }
        case ChartId::HyperbolicBallPolar: {
            const double rho = p.c1, ph = p.c3;
            require_away_from(std::sinh(rho), 1e-14, "ball centre rho = 0");
            require_away_from(std::sin(ph), 1e-12, "ball pole sin(phi) = 0");
            const double sh = std::sinh(rho), ch = std::cosh(rho);
            const double sp = std::sin(ph), cp = std::cos(ph);
            const Partial pr = partials(f, p, 0, h);
            const Partial pt = partials(f, p, 1, h / (sh * sp));
            const Partial pp = partials(f, p, 2, h / sh);
            return -(pr.d2 + 2.0 * (ch / sh) * pr.d1 + (pp.d2 + (cp / sp) * pp.d1) / (sh * sh) +
                     pt.d2 / (sh * sh * sp * sp));
        }
    }
    return 0.0; // unreachable
}

FrameVector connection(Space space, int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) fail_domain("frame indices must lie in {1,2,3}");
    if (space == Space::Euclidean) return {};
    // Hyperbolic half-space frame connection.
    if (i == 1 && j == 1) return {0, 0, 1};
    if (i == 2 && j == 2) return {0, 0, 1};
    if (i == 1 && j == 3) return {-1, 0, 0};
    if (i == 2 && j == 3) return {0, -1, 0};
    return {};
}

namespace {

struct Stencil {
    // field values at p, p +/- step along each coordinate axis (hub chart).
    FrameVector f0;
    FrameVector fxp, fxm, fyp, fym, fzp, fzm;
    double step = 0; // coordinate step actually used
};

Stencil sample_stencil(const FieldFn& field, const ChartPoint& hub, double h) {
    const bool hyp = hub.chart == ChartId::HyperbolicHalfspace;
    const double step = hyp ? h * hub.c3 : h;
    auto at = [&](double dx, double dy, double dz) {
        ChartPoint q = hub;
        q.c1 += dx;
        q.c2 += dy;
        q.c3 += dz;
        FrameVector v = field(q);
        if (!finite3(v.a1, v.a2, v.a3))
            throw NumericalError("field produced non-finite values near a singularity");
        return v;
    };
    Stencil s;
    s.step = step;
    s.f0 = at(0, 0, 0);
    s.fxp = at(step, 0, 0);
    s.fxm = at(-step, 0, 0);
    s.fyp = at(0, step, 0);
    s.fym = at(0, -step, 0);
    s.fzp = at(0, 0, step);
    s.fzm = at(0, 0, -step);
    return s;
}

} // namespace

FrameVector frame_covariant_derivative(int i, const FieldFn& field, const ChartPoint& p, double h) {
    validate(p);
    if (i < 1 || i > 3) fail_domain("frame index must lie in {1,2,3}");
    if (!(h > 0.0)) fail_domain("finite-difference step must be positive");
    const Space space = space_of(p.chart);
    const ChartPoint hub = to_chart(p, hub_chart(space));
    const bool hyp = space == Space::Hyperbolic;
    const double step = hyp ? h * hub.c3 : h;

    auto at = [&](double s) {
        ChartPoint q = hub;
        (i == 1 ? q.c1 : i == 2 ? q.c2 : q.c3) += s;
        return field(q);
    };
    const FrameVector fp = at(step), fm = at(-step);
    // xi_i acts as z d/dx_i in the half-space, d/dx_i in Euclidean space.
    const double scale = hyp ? hub.c3 : 1.0;
    FrameVector deriv = (fp - fm) * (scale / (2.0 * step));

    const FrameVector sigma = field(hub);
    deriv = deriv + sigma.a1 * connection(space, i, 1) + sigma.a2 * connection(space, i, 2) +
            sigma.a3 * connection(space, i, 3);
    return deriv;
}

FrameVector rough_laplacian(const FieldFn& field, const ChartPoint& p, double h) {
    validate(p);
    if (!(h > 0.0)) fail_domain("finite-difference step must be positive");
    const Space space = space_of(p.chart);
    const ChartPoint hub = to_chart(p, hub_chart(space));
    const Stencil s = sample_stencil(field, hub, h);
    const double d = s.step;

    auto second = [&](const FrameVector& plus, const FrameVector& minus) {
        return (plus + minus - 2.0 * s.f0) * (1.0 / (d * d));
    };
    const FrameVector sxx = second(s.fxp, s.fxm);
    const FrameVector syy = second(s.fyp, s.fym);
    const FrameVector szz = second(s.fzp, s.fzm);

    if (space == Space::Euclidean) {
        return -(sxx + syy + szz);
    }

    const double z = hub.c3;
    const FrameVector dx = (s.fxp - s.fxm) * (1.0 / (2.0 * d));
    const FrameVector dy = (s.fyp - s.fym) * (1.0 / (2.0 * d));
    const FrameVector dz = (s.fzp - s.fzm) * (1.0 / (2.0 * d));

    auto scalar_lap = [&](double d2x, double d2y, double d2z, double d1z) {
        return -(z * z * (d2x + d2y + d2z) - z * d1z);
    };
    const double La = scalar_lap(sxx.a1, syy.a1, szz.a1, dz.a1);
    const double Lb = scalar_lap(sxx.a2, syy.a2, szz.a2, dz.a2);
    const double Lc = scalar_lap(sxx.a3, syy.a3, szz.a3, dz.a3);

    const double a = s.f0.a1, b = s.f0.a2, c = s.f0.a3;
    return {La + 2.0 * z * dx.a3 + a, Lb + 2.0 * z * dy.a3 + b,
            Lc - 2.0 * z * dx.a1 - 2.0 * z * dy.a2 + 2.0 * c};
}

double hyperbolic_distance(const ChartPoint& a, const ChartPoint& b) {
    if (space_of(a.chart) != Space::Hyperbolic || space_of(b.chart) != Space::Hyperbolic)
        fail_domain("hyperbolic_distance requires hyperbolic points");
    const ChartPoint pa = to_chart(a, ChartId::HyperbolicHalfspace);
    const ChartPoint pb = to_chart(b, ChartId::HyperbolicHalfspace);
    const double dx = pa.c1 - pb.c1, dy = pa.c2 - pb.c2, dz = pa.c3 - pb.c3;
    const double u = (dx * dx + dy * dy + dz * dz) / (2.0 * pa.c3 * pb.c3);
    // d = arccosh(1 + u), computed as log1p for stability near u = 0.
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

} // namespace huvf

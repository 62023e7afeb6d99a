#include <huvf/flowtrace.hpp>

#include <huvf/error.hpp>
#include <huvf/pendulum.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace huvf::flowtrace {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Vec = std::array<double, 3>;

/// Coordinate velocity of the unit field at hub coordinates x.  In the
/// half-space chart the frame is z times the coordinate basis, so coordinate
/// speed picks up a factor z.
Vec coordinate_velocity(const FieldSpec& spec, ChartId hub, const Vec& x) {
    const ChartPoint p{hub, x[0], x[1], x[2]};
    const FrameVector s = evaluate(spec, p);
    const double scale = (hub == ChartId::HyperbolicHalfspace) ? x[2] : 1.0;
    return {scale * s.a1, scale * s.a2, scale * s.a3};
}

Vec axpy(const Vec& x, double a, const Vec& d) {
    return {x[0] + a * d[0], x[1] + a * d[1], x[2] + a * d[2]};
}

Vec rk4_step(const FieldSpec& spec, ChartId hub, const Vec& x, double h) {
    const Vec k1 = coordinate_velocity(spec, hub, x);
    const Vec k2 = coordinate_velocity(spec, hub, axpy(x, 0.5 * h, k1));
    const Vec k3 = coordinate_velocity(spec, hub, axpy(x, 0.5 * h, k2));
    const Vec k4 = coordinate_velocity(spec, hub, axpy(x, h, k3));
    Vec out;
    for (int i = 0; i < 3; ++i)
        out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

void require_finite(const Vec& x) {
    for (double c : x)
        if (!std::isfinite(c)) throw NumericalError("streamline left the finite domain");
}

int signum(double x, double eps = 1e-15) { return x > eps ? 1 : (x < -eps ? -1 : 0); }

Chirality chirality_from(double angular, double vertical) {
    const int s = signum(angular) * signum(vertical);
    return s > 0 ? Chirality::Right : (s < 0 ? Chirality::Left : Chirality::None);
}

}  // namespace

Streamline trace(const FieldSpec& spec, const ChartPoint& start, double step, int n) {
    if (!(step > 0.0)) throw DomainError("step must be positive");
    if (n < 1) throw DomainError("need at least one step");
    if (spec.space() == Space::Hyperbolic) {
        switch (spec.tag) {
            case FamilyTag::Frame:
            case FamilyTag::HoroInvariant:
            case FamilyTag::HParallel:
                break;
            default:
                throw DomainError(
                    "hyperbolic streamline tracing covers the constant-frame catalog fields only");
        }
    }
    const ChartId hub = hub_chart(spec.space());
    const ChartPoint p0 = to_chart(start, hub);

    Streamline line;
    line.field = spec;
    line.start = start;
    line.step = step;
    line.points.reserve(static_cast<size_t>(n) + 1);
    line.points.push_back(p0);

    Vec x{p0.c1, p0.c2, p0.c3};
    for (int i = 0; i < n; ++i) {
        x = rk4_step(spec, hub, x, step);
        require_finite(x);
        const ChartPoint p{hub, x[0], x[1], x[2]};
        validate(p);
        line.points.push_back(p);
    }
    return line;
}

FlowDiagnostics helix_diagnostics(const FieldSpec& spec, const std::vector<double>& radii,
                                  double step) {
    if (spec.tag != FamilyTag::EuclidPendulum)
        throw DomainError("helix diagnostics applies to the euclid-pendulum family");
    if (std::abs(std::cos(spec.phase)) > 1e-12)
        throw DomainError("helix diagnostics requires phase p = +-pi/2 (mod pi)");
    if (spec.q == 0.0) throw DomainError("helix diagnostics requires q != 0");
    if (radii.empty()) throw DomainError("need at least one radius");
    for (double r : radii)
        if (!(r > 0.0)) throw DomainError("radii must be positive");
    if (!(step > 0.0)) throw DomainError("step must be positive");

    const ChartId hub = hub_chart(Space::Euclidean);
    auto at_radius = [&](double r) { return evaluate(spec, ChartPoint{hub, r, 0.0, 0.0}); };

    FlowDiagnostics diag;
    for (double r : radii) {
        const FrameVector s = at_radius(r);
        SlopeEntry entry;
        entry.r = r;
        const double horizontal = std::hypot(s.a1, s.a2);
        entry.slope = std::abs(s.a3) / horizontal;
        // At (r, 0, 0) the angular direction is the y axis.
        entry.angular_sign = signum(s.a2);
        entry.vertical_sign = signum(s.a3, 1e-12);
        entry.chirality = entry.vertical_sign == 0 ? Chirality::None
                                                   : chirality_from(s.a2, s.a3);
        diag.slope_profile.push_back(entry);
    }

    const double rstar = pendulum::crossing_radius(spec.q);
    diag.crossing_radius = rstar;
    const auto [sv, cv] = pendulum::closed_form_sincos(spec.q, rstar);
    (void)sv;
    diag.crossing_vertical_component = std::abs(cv);
    {
        const FrameVector inner = at_radius(0.5 * rstar);
        diag.chirality = chirality_from(inner.a2, inner.a3);
    }

    // Integrate one revolution on the first cylinder and record the maximal
    // radial drift; the cylinder is invariant, so the drift is pure
    // integration error.
    const double r0 = radii.front();
    const FrameVector s0 = at_radius(r0);
    const double horizontal0 = std::hypot(s0.a1, s0.a2);
    const double length = 2.0 * kPi * r0 / horizontal0;
    const int n = std::max(8, static_cast<int>(std::ceil(length / step)));
    const double h = length / n;
    Vec x{r0, 0.0, 0.0};
    double max_drift = 0.0;
    for (int i = 0; i < n; ++i) {
        x = rk4_step(spec, hub, x, h);
        require_finite(x);
        max_drift = std::max(max_drift, std::abs(std::hypot(x[0], x[1]) - r0));
    }
    diag.invariant_surface_error = max_drift;
    return diag;
}

FlowDiagnostics fountain_diagnostics(const FieldSpec& spec, const std::vector<ChartPoint>& starts,
                                     double step, int max_steps) {
    if (spec.tag != FamilyTag::EuclidPendulum)
        throw DomainError("fountain diagnostics applies to the euclid-pendulum family");
    if (std::abs(std::sin(spec.phase)) > 1e-12)
        throw DomainError("fountain diagnostics requires phase p = 0 (mod pi)");
    if (spec.q == 0.0) throw DomainError("fountain diagnostics requires q != 0");
    if (starts.empty()) throw DomainError("need at least one start point");
    if (!(step > 0.0)) throw DomainError("step must be positive");
    if (max_steps < 1) throw DomainError("max_steps must be positive");

    const ChartId hub = hub_chart(Space::Euclidean);
    FlowDiagnostics diag;
    diag.chirality = Chirality::None;

    for (const ChartPoint& start : starts) {
        const ChartPoint p0 = to_chart(start, hub);
        const double rc0 = std::hypot(p0.c1, p0.c2);
        if (rc0 < 1e-12) throw DomainError("fountain start must lie off the axis");
        const double theta0 = std::atan2(p0.c2, p0.c1);
        // Unit normal of the start's vertical half-plane.
        const double nx = -std::sin(theta0), ny = std::cos(theta0);

        Vec x{p0.c1, p0.c2, p0.c3};
        double a3 = evaluate(spec, ChartPoint{hub, x[0], x[1], x[2]}).a3;
        bool crossed = std::abs(a3) < 1e-15;
        if (crossed && !diag.crossing_radius) {
            diag.crossing_radius = rc0;
            diag.crossing_vertical_component =
                std::max(diag.crossing_vertical_component, std::abs(a3));
        }
        for (int i = 0; i < max_steps && !crossed; ++i) {
            const Vec xn = rk4_step(spec, hub, x, step);
            require_finite(xn);
            diag.invariant_surface_error = std::max(
                diag.invariant_surface_error, std::abs(nx * xn[0] + ny * xn[1]));
            const double theta = std::atan2(xn[1], xn[0]);
            diag.theta_drift = std::max(diag.theta_drift,
                                        std::abs(std::remainder(theta - theta0, 2.0 * kPi)));
            const double a3n = evaluate(spec, ChartPoint{hub, xn[0], xn[1], xn[2]}).a3;
            if (a3 * a3n < 0.0 || a3n == 0.0) {
                // Linear interpolation of the vertical component's zero.
                const double t = a3 / (a3 - a3n);
                const Vec xc = {x[0] + t * (xn[0] - x[0]), x[1] + t * (xn[1] - x[1]),
                                x[2] + t * (xn[2] - x[2])};
                const double rc = std::hypot(xc[0], xc[1]);
                const double vc =
                    std::abs(evaluate(spec, ChartPoint{hub, xc[0], xc[1], xc[2]}).a3);
                if (!diag.crossing_radius) diag.crossing_radius = rc;
                diag.crossing_vertical_component =
                    std::max(diag.crossing_vertical_component, vc);
                crossed = true;
            }
            x = xn;
            a3 = a3n;
        }
    }
    return diag;
}

}  // namespace huvf::flowtrace

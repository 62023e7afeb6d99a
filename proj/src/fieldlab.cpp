#include <huvf/fieldlab.hpp>

#include <huvf/pendulum.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <utility>

namespace huvf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAxisEps = 1e-14;

double axis_distance(const ChartPoint& hub) { return std::hypot(hub.c1, hub.c2); }

}  // namespace

FieldSpec FieldSpec::radial_line(double t) {
    FieldSpec s;
    s.tag = FamilyTag::EuclidRadialLine;
    s.phase = t;
    s.space_ = Space::Euclidean;
    return s;
}

FieldSpec FieldSpec::radial_point(double t) {
    FieldSpec s;
    s.tag = FamilyTag::EuclidRadialPoint;
    s.phase = t;
    s.space_ = Space::Euclidean;
    return s;
}

FieldSpec FieldSpec::pendulum(double p, double q) {
    FieldSpec s;
    s.tag = FamilyTag::EuclidPendulum;
    s.phase = p;
    s.q = q;
    s.space_ = Space::Euclidean;
    return s;
}

FieldSpec FieldSpec::frame(int i, Space space) {
    if (i < 1 || i > 3) throw DomainError("frame index must lie in {1,2,3}");
    FieldSpec s;
    s.tag = FamilyTag::Frame;
    s.frame_index = i;
    s.space_ = space;
    return s;
}

FieldSpec FieldSpec::horo_invariant(double u0) {
    FieldSpec s;
    s.tag = FamilyTag::HoroInvariant;
    s.phase = u0;
    s.space_ = Space::Hyperbolic;
    return s;
}

FieldSpec FieldSpec::horo_theta(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("horo-theta sign must be +1 or -1");
    FieldSpec s;
    s.tag = FamilyTag::HoroTheta;
    s.sign = sign;
    s.space_ = Space::Hyperbolic;
    return s;
}

FieldSpec FieldSpec::horo_holomorphic(double k, double a_re, double a_im) {
    if (k == 0.0 && a_re == 0.0 && a_im == 0.0)
        throw DomainError("horo-holomorphic requires (k, alpha) != (0, 0)");
    FieldSpec s;
    s.tag = FamilyTag::HoroHolomorphic;
    s.k = k;
    s.a_re = a_re;
    s.a_im = a_im;
    s.space_ = Space::Hyperbolic;
    return s;
}

FieldSpec FieldSpec::horo_pq(double p, double q) {
    FieldSpec s;
    s.tag = FamilyTag::HoroPq;
    s.phase = p;
    s.q = q;
    s.space_ = Space::Hyperbolic;
    return s;
}

FieldSpec FieldSpec::h_parallel() {
    FieldSpec s;
    s.tag = FamilyTag::HParallel;
    s.space_ = Space::Hyperbolic;
    return s;
}

FieldSpec FieldSpec::custom_polar(ScalarFn u_fn, ScalarFn v_fn, Space space) {
    if (!u_fn || !v_fn) throw DomainError("custom-polar requires both angle functions");
    FieldSpec s;
    s.tag = FamilyTag::CustomPolar;
    s.space_ = space;
    s.u_fn = std::move(u_fn);
    s.v_fn = std::move(v_fn);
    return s;
}

FieldSpec FieldSpec::custom_planar(ScalarFn u_fn, Space space) {
    if (!u_fn) throw DomainError("custom-planar requires the angle function");
    FieldSpec s;
    s.tag = FamilyTag::CustomPolar;
    s.space_ = space;
    s.planar = true;
    s.u_fn = std::move(u_fn);
    s.v_fn = [](const ChartPoint&) { return 0.5 * kPi; };
    return s;
}

Space FieldSpec::space() const { return space_; }

std::string FieldSpec::name() const {
    switch (tag) {
        case FamilyTag::EuclidRadialLine: return "euclid-radial-line";
        case FamilyTag::EuclidRadialPoint: return "euclid-radial-point";
        case FamilyTag::EuclidPendulum: return "euclid-pendulum";
        case FamilyTag::Frame: return "frame";
        case FamilyTag::HoroInvariant: return "horo-invariant";
        case FamilyTag::HoroTheta: return "horo-theta";
        case FamilyTag::HoroHolomorphic: return "horo-holomorphic";
        case FamilyTag::HoroPq: return "horo-pq";
        case FamilyTag::HParallel: return "h-parallel";
        case FamilyTag::CustomPolar: return "custom-polar";
    }
    return "?";
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << std::setprecision(12) << name();
    switch (tag) {
        case FamilyTag::EuclidRadialLine:
        case FamilyTag::EuclidRadialPoint:
            os << "(t=" << phase << ")";
            break;
        case FamilyTag::EuclidPendulum:
            os << "(p=" << phase << ", q=" << q << ")";
            break;
        case FamilyTag::Frame:
            os << "(i=" << frame_index
               << ", space=" << (space_ == Space::Euclidean ? "euclidean" : "hyperbolic") << ")";
            break;
        case FamilyTag::HoroInvariant:
            os << "(u0=" << phase << ")";
            break;
        case FamilyTag::HoroTheta:
            os << "(sign=" << (sign > 0 ? "+1" : "-1");
            if (phase != 0.0) os << ", rot=" << phase;
            os << ")";
            break;
        case FamilyTag::HoroHolomorphic:
            os << "(k=" << k << ", alpha=" << a_re << (a_im < 0 ? "-" : "+") << std::abs(a_im)
               << "i)";
            break;
        case FamilyTag::HoroPq:
            os << "(p=" << phase << ", q=" << q << ")";
            break;
        case FamilyTag::HParallel:
            break;
        case FamilyTag::CustomPolar:
            os << "(space=" << (space_ == Space::Euclidean ? "euclidean" : "hyperbolic")
               << (planar ? ", planar" : "") << ")";
            break;
    }
    return os.str();
}

namespace {

FrameVector evaluate_hub(const FieldSpec& spec, const ChartPoint& hub) {
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine: {
            const double rc = axis_distance(hub);
            if (rc < kAxisEps) throw DomainError("euclid-radial-line is singular on the axis");
            const double ct = std::cos(spec.phase), st = std::sin(spec.phase);
            return {(hub.c1 * ct - hub.c2 * st) / rc, (hub.c1 * st + hub.c2 * ct) / rc, 0.0};
        }
        case FamilyTag::EuclidRadialPoint: {
            const double R = std::sqrt(hub.c1 * hub.c1 + hub.c2 * hub.c2 + hub.c3 * hub.c3);
            if (R < kAxisEps) throw DomainError("euclid-radial-point is singular at the origin");
            const double ct = std::cos(spec.phase), st = std::sin(spec.phase);
            return {(hub.c1 * ct - hub.c2 * st) / R, (hub.c1 * st + hub.c2 * ct) / R,
                    hub.c3 / R};
        }
        case FamilyTag::EuclidPendulum: {
            const double rc = axis_distance(hub);
            const double cp = std::cos(spec.phase), sp = std::sin(spec.phase);
            const double den = 1.0 + 0.25 * spec.q * spec.q * rc * rc;
            const double cv = pendulum::closed_form_sincos(spec.q, rc).second;
            // cos(theta+p) sin v = q (x cos p - y sin p) / den, branch-free and
            // smooth through the axis, where the field extends as xi_3.
            return {spec.q * (hub.c1 * cp - hub.c2 * sp) / den,
                    spec.q * (hub.c1 * sp + hub.c2 * cp) / den, cv};
        }
        case FamilyTag::Frame:
            return {spec.frame_index == 1 ? 1.0 : 0.0, spec.frame_index == 2 ? 1.0 : 0.0,
                    spec.frame_index == 3 ? 1.0 : 0.0};
        case FamilyTag::HoroInvariant:
            return {std::cos(spec.phase), std::sin(spec.phase), 0.0};
        case FamilyTag::HoroTheta: {
            const double rc = axis_distance(hub);
            if (rc < kAxisEps) throw DomainError("horo-theta is singular on the z-axis");
            // u = theta + pi/2 (+ pi for the opposite sign) + rotation.
            const double psi = 0.5 * kPi + (spec.sign < 0 ? kPi : 0.0) + spec.phase;
            const double c = std::cos(psi), s = std::sin(psi);
            return {(hub.c1 * c - hub.c2 * s) / rc, (hub.c1 * s + hub.c2 * c) / rc, 0.0};
        }
        case FamilyTag::HoroHolomorphic: {
            // u = arg(i k zeta + alpha), zeta = x + i y.
            const double wr = spec.a_re - spec.k * hub.c2;
            const double wi = spec.k * hub.c1 + spec.a_im;
            const double n = std::hypot(wr, wi);
            if (n < kAxisEps)
                throw DomainError("horo-holomorphic is singular where i k zeta + alpha = 0");
            return {wr / n, wi / n, 0.0};
        }
        case FamilyTag::HoroPq: {
            const double u = spec.phase * hub.c3 * hub.c3 + spec.q;
            return {std::cos(u), std::sin(u), 0.0};
        }
        case FamilyTag::HParallel:
            return {0.0, 0.0, 1.0};
        case FamilyTag::CustomPolar: {
            const double u = spec.u_fn(hub);
            if (spec.planar) return {std::cos(u), std::sin(u), 0.0};
            const double v = spec.v_fn(hub);
            return {std::cos(u) * std::sin(v), std::sin(u) * std::sin(v), std::cos(v)};
        }
    }
    throw DomainError("unknown family tag");
}

}  // namespace

FieldFn FieldSpec::as_field() const {
    FieldSpec copy = *this;
    return [copy](const ChartPoint& hub) { return evaluate_hub(copy, hub); };
}

FrameVector evaluate(const FieldSpec& spec, const ChartPoint& p) {
    if (space_of(p.chart) != spec.space())
        throw DomainError("point chart does not belong to the family's ambient space");
    const ChartPoint hub = to_chart(p, hub_chart(spec.space()));
    return evaluate_hub(spec, hub);
}

PolarAngles polar_decompose(const FrameVector& w) {
    const double n = w.norm();
    if (std::abs(n - 1.0) > 1e-9) throw DomainError("polar decomposition requires a unit vector");
    const double e = std::hypot(w.a1, w.a2);
    if (e < 1e-12)
        throw DomainError("polar decomposition undefined at +-xi_3 (equatorial part vanishes)");
    double u = std::atan2(w.a2, w.a1);
    if (u < 0.0) u += 2.0 * kPi;
    return {u, std::atan2(e, w.a3)};
}

namespace {

/// |grad u|^2 via branch-safe angle calculus: |grad sin u|^2 + |grad cos u|^2.
double grad_u_norm2(const FieldSpec& spec, const ChartPoint& hub, double h) {
    ScalarFn sin_u = [&spec](const ChartPoint& x) { return std::sin(spec.u_fn(x)); };
    ScalarFn cos_u = [&spec](const ChartPoint& x) { return std::cos(spec.u_fn(x)); };
    return scalar_gradient(sin_u, hub, h).norm2() + scalar_gradient(cos_u, hub, h).norm2();
}

}  // namespace

double bending(const FieldSpec& spec, const ChartPoint& p) {
    const ChartPoint hub = to_chart(p, hub_chart(spec.space()));
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine: {
            const double rc = axis_distance(hub);
            if (rc < kAxisEps) throw DomainError("bending singular on the axis");
            return 1.0 / (rc * rc);
        }
        case FamilyTag::EuclidRadialPoint: {
            const double R2 = hub.c1 * hub.c1 + hub.c2 * hub.c2 + hub.c3 * hub.c3;
            if (R2 < kAxisEps) throw DomainError("bending singular at the origin");
            return 2.0 / R2;
        }
        case FamilyTag::EuclidPendulum:
            return pendulum::bending_closed(spec.q, axis_distance(hub));
        case FamilyTag::Frame:
            if (spec.space_ == Space::Euclidean) return 0.0;
            return spec.frame_index == 3 ? 2.0 : 1.0;
        case FamilyTag::HoroInvariant:
            return 1.0;
        case FamilyTag::HoroTheta: {
            const double rc = axis_distance(hub);
            if (rc < kAxisEps) throw DomainError("bending singular on the z-axis");
            return 1.0 + hub.c3 * hub.c3 / (rc * rc);
        }
        case FamilyTag::HoroHolomorphic: {
            if (spec.k == 0.0) return 1.0;
            const double wr = spec.a_re - spec.k * hub.c2;
            const double wi = spec.k * hub.c1 + spec.a_im;
            const double n2 = wr * wr + wi * wi;
            if (n2 < kAxisEps * kAxisEps) throw DomainError("bending singular where u degenerates");
            return 1.0 + hub.c3 * hub.c3 * spec.k * spec.k / n2;
        }
        case FamilyTag::HoroPq: {
            const double z2 = hub.c3 * hub.c3;
            return 1.0 + 4.0 * spec.phase * spec.phase * z2 * z2;
        }
        case FamilyTag::HParallel:
            return 2.0;
        case FamilyTag::CustomPolar: {
            const double h = fd::kDefaultStep;
            if (spec.planar) {
                const double gu2 = grad_u_norm2(spec, hub, h);
                return spec.space_ == Space::Euclidean ? gu2 : 1.0 + gu2;
            }
            if (spec.space_ == Space::Euclidean) {
                const double gu2 = grad_u_norm2(spec, hub, h);
                const double v = spec.v_fn(hub);
                const double gv2 = scalar_gradient(spec.v_fn, hub, h).norm2();
                const double sv = std::sin(v);
                return gv2 + sv * sv * gu2;
            }
            // No closed polar-form bending on H^3 for varying v: use the
            // frame-derivative sum.
            return bending_frame_sum(spec, hub, h);
        }
    }
    throw DomainError("unknown family tag");
}

double bending_frame_sum(const FieldSpec& spec, const ChartPoint& p, double h) {
    const ChartPoint hub = to_chart(p, hub_chart(spec.space()));
    const FieldFn field = spec.as_field();
    double sum = 0.0;
    for (int i = 1; i <= 3; ++i) sum += frame_covariant_derivative(i, field, hub, h).norm2();
    return sum;
}

FieldSpec circle_action(const FieldSpec& spec, double t) {
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine:
            return FieldSpec::radial_line(spec.phase + t);
        case FamilyTag::EuclidRadialPoint:
            return FieldSpec::radial_point(spec.phase + t);
        case FamilyTag::EuclidPendulum:
            return FieldSpec::pendulum(spec.phase + t, spec.q);
        case FamilyTag::Frame: {
            if (spec.frame_index == 3)
                throw DomainError("circle action undefined: xi_3 has no equatorial part");
            const double base = spec.frame_index == 1 ? 0.0 : 0.5 * kPi;
            if (spec.space_ == Space::Hyperbolic) return FieldSpec::horo_invariant(base + t);
            const double u = base + t;
            return FieldSpec::custom_planar([u](const ChartPoint&) { return u; },
                                            Space::Euclidean);
        }
        case FamilyTag::HoroInvariant:
            return FieldSpec::horo_invariant(spec.phase + t);
        case FamilyTag::HoroTheta: {
            FieldSpec out = spec;
            out.phase += t;
            return out;
        }
        case FamilyTag::HoroHolomorphic: {
            if (t == 0.0) return spec;
            const FieldSpec base = spec;
            ScalarFn u_fn = [base, t](const ChartPoint& hub) {
                const double wr = base.a_re - base.k * hub.c2;
                const double wi = base.k * hub.c1 + base.a_im;
                return std::atan2(wi, wr) + t;
            };
            return FieldSpec::custom_planar(std::move(u_fn), Space::Hyperbolic);
        }
        case FamilyTag::HoroPq:
            return FieldSpec::horo_pq(spec.phase, spec.q + t);
        case FamilyTag::HParallel:
            throw DomainError("circle action undefined: h-parallel has no equatorial part");
        case FamilyTag::CustomPolar: {
            if (t == 0.0) return spec;
            FieldSpec out = spec;
            const ScalarFn base = spec.u_fn;
            out.u_fn = [base, t](const ChartPoint& x) { return base(x) + t; };
            return out;
        }
    }
    throw DomainError("unknown family tag");
}

}  // namespace huvf

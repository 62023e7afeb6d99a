#include <huvf/residuals.hpp>

#include <huvf/pendulum.hpp>

#include <cmath>
#include <sstream>

namespace huvf::residuals {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Truncation coefficient of the PASS tolerance max(tol, C h^2), calibrated
/// so that the default grids' worst observed truncation stays below it.
constexpr double kTruncCoeff = 50.0;

std::vector<double> linspace(const AxisSpec& a) {
    if (a.count < 2) throw DomainError("grid axis needs count >= 2");
    if (!(a.min < a.max)) throw DomainError("grid axis needs min < max");
    std::vector<double> out(static_cast<size_t>(a.count));
    for (int i = 0; i < a.count; ++i)
        out[static_cast<size_t>(i)] = a.min + (a.max - a.min) * i / (a.count - 1);
    return out;
}

/// Pointwise evaluator: absolute residual per channel at one grid point for
/// one finite-difference step.
using PointEval = std::function<std::vector<double>(const ChartPoint&, double)>;

ResidualReport assemble(std::string field_name, const GridSpec& grid,
                        const std::vector<std::string>& channel_names, const PointEval& eval,
                        double h, double tol, bool with_order) {
    if (!(h > 0.0) || !(tol > 0.0)) throw DomainError("need h > 0 and tol > 0");
    const std::vector<ChartPoint> pts = grid.points();
    if (pts.empty()) throw DomainError("empty grid");
    const size_t nc = channel_names.size();

    auto sweep = [&](double step) {
        std::vector<double> max_abs(nc, 0.0), sum_abs(nc, 0.0);
        for (const ChartPoint& pt : pts) {
            const std::vector<double> vals = eval(pt, step);
            for (size_t c = 0; c < nc; ++c) {
                max_abs[c] = std::max(max_abs[c], vals[c]);
                sum_abs[c] += vals[c];
            }
        }
        for (double& s : sum_abs) s /= static_cast<double>(pts.size());
        return std::pair{max_abs, sum_abs};
    };

    ResidualReport report;
    report.field = std::move(field_name);
    report.grid = grid.describe();
    report.h = h;
    report.tol = tol;

    const auto [max_h, mean_h] = sweep(h);
    std::vector<std::optional<double>> orders(nc);
    if (with_order) {
        // Order is measured at steps where truncation dominates roundoff; at
        // the verdict step a harmonic family's truncation is already near
        // the noise floor of the second differences.
        const auto [max_hi, mean_hi] = sweep(kOrderStepHi);
        const auto [max_lo, mean_lo] = sweep(kOrderStepLo);
        for (size_t c = 0; c < nc; ++c) {
            if (max_hi[c] < 1e-13 && max_lo[c] < 1e-13) continue;  // identically zero residual
            if (max_lo[c] <= 0.0) continue;
            orders[c] = std::log2(max_hi[c] / max_lo[c]);
        }
    }

    const double effective_tol = std::max(tol, kTruncCoeff * h * h);
    bool pass = true;
    for (size_t c = 0; c < nc; ++c) {
        report.channels.push_back({channel_names[c], max_h[c], mean_h[c], orders[c]});
        pass = pass && max_h[c] < effective_tol;
    }
    report.verdict = pass ? Verdict::Pass : Verdict::Fail;
    return report;
}

/// sin/cos of a (possibly branch-cut) angle function, as smooth scalars.
struct AngleCalculus {
    ScalarFn sin_u;
    ScalarFn cos_u;

    explicit AngleCalculus(const ScalarFn& u_fn)
        : sin_u([u_fn](const ChartPoint& p) { return std::sin(u_fn(p)); }),
          cos_u([u_fn](const ChartPoint& p) { return std::cos(u_fn(p)); }) {}

    /// Delta u = cos u * Delta(sin u) - sin u * Delta(cos u).
    [[nodiscard]] double laplacian(const ChartPoint& p, double h) const {
        const double su = sin_u(p), cu = cos_u(p);
        return cu * scalar_laplacian(sin_u, p, h) - su * scalar_laplacian(cos_u, p, h);
    }

    /// grad u = cos u * grad(sin u) - sin u * grad(cos u).
    [[nodiscard]] FrameVector gradient(const ChartPoint& p, double h) const {
        const double su = sin_u(p), cu = cos_u(p);
        return cu * scalar_gradient(sin_u, p, h) + (-su) * scalar_gradient(cos_u, p, h);
    }

    /// |grad u|^2 = |grad sin u|^2 + |grad cos u|^2.
    [[nodiscard]] double gradient_norm2(const ChartPoint& p, double h) const {
        return scalar_gradient(sin_u, p, h).norm2() + scalar_gradient(cos_u, p, h).norm2();
    }
};

}  // namespace

std::vector<ChartPoint> GridSpec::points() const {
    std::vector<ChartPoint> out;
    for (double a : linspace(axes[0]))
        for (double b : linspace(axes[1]))
            for (double c : linspace(axes[2])) {
                ChartPoint pt{chart, a, b, c};
                if (keep && !keep(pt)) continue;
                validate(pt);
                out.push_back(pt);
            }
    return out;
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << chart_name(chart);
    for (int i = 0; i < 3; ++i)
        os << (i == 0 ? " [" : " x [") << axes[static_cast<size_t>(i)].min << ","
           << axes[static_cast<size_t>(i)].max << ";" << axes[static_cast<size_t>(i)].count << "]";
    return os.str();
}

double ResidualReport::worst() const {
    double w = 0.0;
    for (const Channel& c : channels) w = std::max(w, c.max_abs);
    return w;
}

ResidualReport harmonic_section_residual(const FieldSpec& spec, const GridSpec& grid, double h,
                                         double tol, bool with_order) {
    if (space_of(grid.chart) != spec.space())
        throw DomainError("grid chart does not belong to the family's ambient space");
    const FieldFn field = spec.as_field();
    const ChartId hub = hub_chart(spec.space());
    PointEval eval = [field, hub](const ChartPoint& pt, double step) {
        const ChartPoint x = to_chart(pt, hub);
        const FrameVector lap = rough_laplacian(field, x, step);
        double bend = 0.0;
        for (int i = 1; i <= 3; ++i) bend += frame_covariant_derivative(i, field, x, step).norm2();
        const FrameVector sigma = field(x);
        return std::vector<double>{(lap + (-bend) * sigma).norm()};
    };
    return assemble(spec.describe(), grid, {"harmonic-section"}, eval, h, tol, with_order);
}

ResidualReport euclidean_reduced_residual(const ScalarFn& u_fn, const ScalarFn& v_fn,
                                          const GridSpec& grid, double h, double tol,
                                          bool with_order) {
    if (space_of(grid.chart) != Space::Euclidean)
        throw DomainError("the reduced polar system lives on Euclidean space");
    const AngleCalculus u(u_fn);
    PointEval eval = [&u, &v_fn](const ChartPoint& pt, double step) {
        const double v = v_fn(pt);
        const double sv = std::sin(v), cv = std::cos(v);
        if (std::abs(sv) < 1e-8)
            throw DomainError("grid touches v in {0, pi}: cot v undefined");
        const double lap_u = u.laplacian(pt, step);
        const FrameVector grad_u = u.gradient(pt, step);
        const double grad_u2 = u.gradient_norm2(pt, step);
        const FrameVector grad_v = scalar_gradient(v_fn, pt, step);
        const double lap_v = scalar_laplacian(v_fn, pt, step);
        const double res_u = lap_u - 2.0 * grad_u.dot(grad_v) * (cv / sv);
        const double res_v = lap_v + grad_u2 * cv * sv;
        return std::vector<double>{std::abs(res_u), std::abs(res_v)};
    };
    return assemble("custom polar angles", grid, {"polar-u", "polar-v"}, eval, h, tol, with_order);
}

ResidualReport horospherical_residual(const ScalarFn& u_fn, const GridSpec& grid, double h,
                                      double tol, bool with_order) {
    if (grid.chart != ChartId::HyperbolicHalfspace)
        throw DomainError("the horospherical system lives on the half-space chart");
    const AngleCalculus u(u_fn);
    PointEval eval = [&u](const ChartPoint& pt, double step) {
        const double su = u.sin_u(pt), cu = u.cos_u(pt);
        const double lap_u = u.laplacian(pt, step);
        // Coordinate partials (not frame components), branch-safe, with the
        // metrically uniform step h z.
        const double dz = step * pt.c3;
        auto partial = [&](const ScalarFn& f, int axis) {
            ChartPoint a = pt, b = pt;
            (axis == 0 ? a.c1 : a.c2) += dz;
            (axis == 0 ? b.c1 : b.c2) -= dz;
            return (f(a) - f(b)) / (2.0 * dz);
        };
        const double ux = cu * partial(u.sin_u, 0) - su * partial(u.cos_u, 0);
        const double uy = cu * partial(u.sin_u, 1) - su * partial(u.cos_u, 1);
        return std::vector<double>{std::abs(lap_u), std::abs(ux * su - uy * cu)};
    };
    return assemble("standard-form angle", grid, {"hyperbolic-laplacian", "constraint"}, eval, h,
                    tol, with_order);
}

ResidualReport harmonic_map_test(const FieldSpec& spec, const GridSpec& grid, double h,
                                 double tol) {
    if (spec.space() != Space::Hyperbolic)
        throw DomainError(
            "harmonic-map test implements the geodesic+solenoidal characterization, which is for "
            "the non-flat space form");
    if (space_of(grid.chart) != Space::Hyperbolic)
        throw DomainError("grid chart does not belong to the family's ambient space");
    const FieldFn field = spec.as_field();
    const ChartId hub = hub_chart(spec.space());
    PointEval eval = [field, hub](const ChartPoint& pt, double step) {
        const ChartPoint x = to_chart(pt, hub);
        const FrameVector sigma = field(x);
        FrameVector geodesic{0, 0, 0};
        double divergence = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const FrameVector di = frame_covariant_derivative(i, field, x, step);
            const double si = i == 1 ? sigma.a1 : i == 2 ? sigma.a2 : sigma.a3;
            geodesic = geodesic + si * di;
            divergence += i == 1 ? di.a1 : i == 2 ? di.a2 : di.a3;
        }
        return std::vector<double>{geodesic.norm(), std::abs(divergence)};
    };
    return assemble(spec.describe(), grid, {"geodesic-defect", "solenoidal-defect"}, eval, h, tol,
                    false);
}

ScalarFn family_u_fn(const FieldSpec& spec) {
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine:
        case FamilyTag::EuclidRadialPoint: {
            const double t = spec.phase;
            return [t](const ChartPoint& p) { return std::atan2(p.c2, p.c1) + t; };
        }
        case FamilyTag::EuclidPendulum: {
            const double t = spec.phase;
            return [t](const ChartPoint& p) { return std::atan2(p.c2, p.c1) + t; };
        }
        case FamilyTag::Frame: {
            if (spec.frame_index == 3) throw DomainError("xi_3 has no angle u");
            const double u0 = spec.frame_index == 1 ? 0.0 : 0.5 * kPi;
            return [u0](const ChartPoint&) { return u0; };
        }
        case FamilyTag::HoroInvariant: {
            const double u0 = spec.phase;
            return [u0](const ChartPoint&) { return u0; };
        }
        case FamilyTag::HoroTheta: {
            const double psi = 0.5 * kPi + (spec.sign < 0 ? kPi : 0.0) + spec.phase;
            return [psi](const ChartPoint& p) { return std::atan2(p.c2, p.c1) + psi; };
        }
        case FamilyTag::HoroHolomorphic: {
            const double k = spec.k, ar = spec.a_re, ai = spec.a_im;
            return [k, ar, ai](const ChartPoint& p) {
                return std::atan2(k * p.c1 + ai, ar - k * p.c2);
            };
        }
        case FamilyTag::HoroPq: {
            const double pp = spec.phase, qq = spec.q;
            return [pp, qq](const ChartPoint& p) { return pp * p.c3 * p.c3 + qq; };
        }
        case FamilyTag::HParallel:
            throw DomainError("h-parallel has no angle u");
        case FamilyTag::CustomPolar:
            return spec.u_fn;
    }
    throw DomainError("unknown family tag");
}

ScalarFn family_v_fn(const FieldSpec& spec) {
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine:
            return [](const ChartPoint&) { return 0.5 * kPi; };
        case FamilyTag::EuclidRadialPoint:
            return [](const ChartPoint& p) {
                return std::atan2(std::hypot(p.c1, p.c2), p.c3);
            };
        case FamilyTag::EuclidPendulum: {
            const double q = spec.q;
            return [q](const ChartPoint& p) {
                return 2.0 * std::atan(0.5 * q * std::hypot(p.c1, p.c2));
            };
        }
        case FamilyTag::Frame:
            if (spec.frame_index == 3) throw DomainError("xi_3 has no polar form");
            return [](const ChartPoint&) { return 0.5 * kPi; };
        case FamilyTag::HoroInvariant:
        case FamilyTag::HoroTheta:
        case FamilyTag::HoroHolomorphic:
        case FamilyTag::HoroPq:
            return [](const ChartPoint&) { return 0.5 * kPi; };
        case FamilyTag::HParallel:
            throw DomainError("h-parallel has no polar form");
        case FamilyTag::CustomPolar:
            return spec.v_fn;
    }
    throw DomainError("unknown family tag");
}

GridSpec default_grid(const FieldSpec& spec) {
    GridSpec g;
    switch (spec.tag) {
        case FamilyTag::EuclidRadialLine:
        case FamilyTag::EuclidPendulum:
            g.chart = ChartId::EuclideanCartesian;
            g.axes = {{{0.5, 1.5, 5}, {-0.5, 0.5, 5}, {-0.5, 0.5, 5}}};
            break;
        case FamilyTag::EuclidRadialPoint:
            g.chart = ChartId::EuclideanCartesian;
            g.axes = {{{0.5, 1.5, 5}, {0.5, 1.5, 5}, {0.5, 1.5, 5}}};
            break;
        case FamilyTag::Frame:
            if (spec.space() == Space::Euclidean) {
                g.chart = ChartId::EuclideanCartesian;
                g.axes = {{{0.5, 1.5, 5}, {-0.5, 0.5, 5}, {-0.5, 0.5, 5}}};
            } else {
                g.chart = ChartId::HyperbolicHalfspace;
                g.axes = {{{-0.5, 0.5, 5}, {-0.5, 0.5, 5}, {0.5, 1.5, 5}}};
            }
            break;
        case FamilyTag::HoroTheta:
        case FamilyTag::HoroHolomorphic:
            g.chart = ChartId::HyperbolicHalfspace;
            g.axes = {{{0.5, 1.5, 5}, {-0.5, 0.5, 5}, {0.5, 1.5, 5}}};
            break;
        case FamilyTag::HoroPq:
            g.chart = ChartId::HyperbolicHalfspace;
            g.axes = {{{-0.5, 0.5, 5}, {-0.5, 0.5, 5}, {0.2, 1.5, 5}}};
            break;
        case FamilyTag::HoroInvariant:
        case FamilyTag::HParallel:
            g.chart = ChartId::HyperbolicHalfspace;
            g.axes = {{{-0.5, 0.5, 5}, {-0.5, 0.5, 5}, {0.5, 1.5, 5}}};
            break;
        case FamilyTag::CustomPolar:
            if (spec.space() == Space::Euclidean) {
                g.chart = ChartId::EuclideanCartesian;
                g.axes = {{{0.5, 1.5, 5}, {-0.5, 0.5, 5}, {-0.5, 0.5, 5}}};
            } else {
                g.chart = ChartId::HyperbolicHalfspace;
                g.axes = {{{0.5, 1.5, 5}, {-0.5, 0.5, 5}, {0.5, 1.5, 5}}};
            }
            break;
    }
    return g;
}

}  // namespace huvf::residuals

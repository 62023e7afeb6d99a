#include <huvf/stability.hpp>

#include <huvf/charts.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace huvf::stability {

namespace {

constexpr double kPi = 3.14159265358979323846;

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    return GK::integrate(f, a, b, 10, tol);
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

/// R values for "all R > 0" sign scans: log-spaced over (0, 50].  The large-R
/// side beyond the scan is settled analytically by largeR_coefficient.
std::vector<double> scan_radii(int n = 400) {
    std::vector<double> out(static_cast<size_t>(n));
    const double t0 = std::log(1e-3), t1 = std::log(50.0);
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = std::exp(t0 + (t1 - t0) * i / (n - 1));
    return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw NumericalError(std::string("bisection bracket lost for ") + what);
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double ball_volume(double rho) {
    if (!(rho >= 0.0)) throw DomainError("ball volume requires rho >= 0");
    return kPi * std::sinh(2.0 * rho) - 2.0 * kPi * rho;
}

double ball_volume_quadrature(double rho) {
    if (!(rho >= 0.0)) throw DomainError("ball volume requires rho >= 0");
    return integrate([](double s) { const double sh = std::sinh(s); return 4.0 * kPi * sh * sh; },
                     0.0, rho, 1e-14);
}

double shell_volume(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    return ball_volume(R + delta) - ball_volume(R);
}

double shell_volume_identity(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    return 2.0 * kPi * std::cosh(2.0 * R + delta) * std::sinh(delta) - 2.0 * kPi * delta;
}

double hessian_closed_form(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    const double d = delta;
    return kPi / (d * d) * (2.0 - d * d) * std::sinh(d) * std::cosh(2.0 * R + d) +
           kPi / d * std::cosh(2.0 * R) + kPi / d * (2.0 * R * d + 5.0 * d * d / 3.0 - 3.0);
}

double hessian_true_closed_form(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    const double d = delta;
    return kPi / (d * d) * std::sinh(d) * std::cosh(2.0 * R + d) + kPi / d * std::cosh(2.0 * R) +
           kPi / d * (2.0 * R * d + 2.0 * d * d / 3.0 - 2.0);
}

double hessian_quadrature(double R, double delta, double tol) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    require_positive(tol, "tol");
    // Inside the ball: phi = 1, phi' = 0.
    const double inner = integrate(
        [](double rho) {
            const double sh = std::sinh(rho);
            return -4.0 * kPi * sh * sh;
        },
        0.0, R, tol);
    // On the shell: phi = (R + delta - rho)/delta, phi' = -1/delta.
    const double shell = integrate(
        [R, delta](double rho) {
            const double phi = (R + delta - rho) / delta;
            const double sh = std::sinh(rho);
            return 4.0 * kPi * (1.0 / (delta * delta) - phi * phi) * sh * sh;
        },
        R, R + delta, tol);
    return inner + shell;
}

HessianEvaluation evaluate_hessian(double R, double delta, double tol) {
    HessianEvaluation ev;
    ev.R = R;
    ev.delta = delta;
    ev.closed_form = hessian_closed_form(R, delta);
    ev.true_closed_form = hessian_true_closed_form(R, delta);
    ev.quadrature = hessian_quadrature(R, delta, tol);
    const double scale = std::max(1.0, std::abs(ev.quadrature));
    ev.abs_diff = std::abs(ev.closed_form - ev.quadrature);
    ev.rel_diff = ev.abs_diff / scale;
    ev.true_abs_diff = std::abs(ev.true_closed_form - ev.quadrature);
    ev.true_rel_diff = ev.true_abs_diff / scale;
    return ev;
}

namespace {

double bracket_I1(double rho) {
    return rho * std::sinh(2.0 * rho) - 0.5 * std::cosh(2.0 * rho) - rho * rho;
}

double bracket_I2(double rho) {
    return (rho * rho + 0.5) * std::sinh(2.0 * rho) - rho * std::cosh(2.0 * rho) -
           2.0 * rho * rho * rho / 3.0;
}

}  // namespace

ShellIntegrals shell_integrals(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    ShellIntegrals out;
    out.I1 = kPi * (bracket_I1(R + delta) - bracket_I1(R));
    out.I2 = kPi * (bracket_I2(R + delta) - bracket_I2(R));
    auto weight = [](double rho) {
        const double sh = std::sinh(rho);
        return 4.0 * kPi * sh * sh;
    };
    out.I1_quadrature =
        integrate([&](double rho) { return rho * weight(rho); }, R, R + delta, 1e-14);
    out.I2_quadrature =
        integrate([&](double rho) { return rho * rho * weight(rho); }, R, R + delta, 1e-14);
    return out;
}

double shell_I1_volume_form(double R, double delta) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    return (R + delta) * ball_volume(R + delta) - R * ball_volume(R) +
           0.5 * kPi * std::cosh(2.0 * R) - 0.5 * kPi * std::cosh(2.0 * R + 2.0 * delta) +
           kPi * delta * (2.0 * R + delta);
}

double largeR_coefficient(double delta) {
    require_positive(delta, "delta");
    return (2.0 - delta * delta) * std::sinh(delta) * std::exp(delta) + delta;
}

double smallR_limit_coefficient(double delta) {
    require_positive(delta, "delta");
    return (2.0 - delta * delta) * std::sinh(delta) * std::cosh(delta) +
           delta * (5.0 * delta * delta / 3.0 - 2.0);
}

StabilityThresholds find_thresholds(double tol) {
    require_positive(tol, "tol");
    StabilityThresholds th;
    th.tol = tol;
    th.delta_s = bisect(largeR_coefficient, 1.0, 2.0, "delta_s (large-R coefficient)");
    th.delta_u = bisect(smallR_limit_coefficient, 1.0, 2.0, "delta_u (small-R limit)");
    if (!(th.delta_s < th.delta_u))
        throw NumericalError("scan inconsistency: delta_s not below delta_u");

    const double margin = std::max(10.0 * tol, 1e-5);
    const std::vector<double> radii = scan_radii();

    // Just below delta_s the Hessian must be positive for every R.
    const double below_s = th.delta_s - margin;
    for (double R : radii)
        if (!(hessian_closed_form(R, below_s) > 0.0))
            throw NumericalError("scan inconsistency: H <= 0 below delta_s");
    if (!(largeR_coefficient(below_s) > 0.0))
        throw NumericalError("scan inconsistency: large-R coefficient below delta_s");
    // Just above delta_s the large-R regime must flip sign.
    if (!(largeR_coefficient(th.delta_s + margin) < 0.0))
        throw NumericalError("scan inconsistency: large-R coefficient above delta_s");

    // Just above delta_u the Hessian must be negative for every R.
    const double above_u = th.delta_u + margin;
    for (double R : radii)
        if (!(hessian_closed_form(R, above_u) < 0.0))
            throw NumericalError("scan inconsistency: H >= 0 above delta_u");
    if (!(largeR_coefficient(above_u) < 0.0))
        throw NumericalError("scan inconsistency: large-R coefficient above delta_u");
    // Just below delta_u the small-R regime must still be positive.
    if (!(hessian_closed_form(1e-6, th.delta_u - margin) > 0.0))
        throw NumericalError("scan inconsistency: small-R Hessian below delta_u");
    return th;
}

double find_R0(double delta0, double tol) {
    require_positive(tol, "tol");
    const StabilityThresholds th = find_thresholds(std::min(tol, 1e-7));
    if (!(delta0 > th.delta_s && delta0 < th.delta_u)) {
        std::ostringstream msg;
        msg << "delta0 = " << delta0 << " lies outside the open interval (" << th.delta_s << ", "
            << th.delta_u << ")";
        throw DomainError(msg.str());
    }
    if (!(largeR_coefficient(delta0) < 0.0))
        throw NumericalError("scan inconsistency: large-R coefficient not negative in interval");

    auto H = [delta0](double R) { return hessian_closed_form(R, delta0); };
    const std::vector<double> radii = scan_radii(2000);
    if (!(H(radii.front()) > 0.0))
        throw NumericalError("scan inconsistency: H not positive at the smallest scanned R");
    int crossings = 0;
    double lo = radii.front(), hi = radii.back();
    for (size_t i = 1; i < radii.size(); ++i) {
        const bool was_pos = H(radii[i - 1]) > 0.0;
        const bool is_pos = H(radii[i]) > 0.0;
        if (was_pos != is_pos) {
            ++crossings;
            lo = radii[i - 1];
            hi = radii[i];
            if (is_pos)
                throw NumericalError("scan inconsistency: H returns positive after a crossing");
        }
    }
    if (crossings != 1)
        throw NumericalError("scan inconsistency: expected exactly one sign change of H(R)");
    for (int i = 0; i < 200 && (hi - lo) > 0.01 * tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((H(mid) > 0.0) ? lo : hi) = mid;
    }
    const double r0 = 0.5 * (lo + hi);
    for (double factor : {1.0 + 1e-6, 1.5, 2.0, 4.0, 8.0})
        if (!(H(r0 * factor) < 0.0))
            throw NumericalError("verification failed: H not negative beyond the located R0");
    return r0;
}

double smoothstep_P(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return x;  // P(1) = 1 with slope 1, so P continues as the identity
    const double x2 = x * x;
    // Frozen C^2 transition polynomial; see smoothstep_Pp for the derivative.
    return 0.01986620998897178377827 + 0.5 * x +
           x2 * (1.535991225165423243326 +
                 x2 * (-3.030127000551410811088 +
                       x2 * (3.613271550771975135522 +
                             x2 * (-2.129458050496269729978 + x2 * 0.4904560651213103784391))));
}

double smoothstep_Pp(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double x2 = x * x;
    return 0.5 + x * (3.071982450330846486652 +
                      x2 * (-12.12050800220564324435 +
                            x2 * (21.67962930463185081313 +
                                  x2 * (-17.03566440397015783982 + x2 * 4.904560651213103784391))));
}

RadialProfile smoothed_bump(double R, double delta, double w) {
    require_positive(R, "R");
    require_positive(delta, "delta");
    require_positive(w, "w");
    if (!(w < 0.5 * delta && w < R))
        throw DomainError("smoothing width must satisfy w < delta/2 and w < R");
    auto s_w = [w](double t) {
        if (t <= -w) return 0.0;
        if (t >= w) return t;
        return w * smoothstep_P(t / w);
    };
    RadialProfile profile;
    profile.f = [R, delta, s_w](double rho) {
        return 1.0 - (s_w(rho - R) - s_w(rho - R - delta)) / delta;
    };
    profile.support_end = R + delta + w;
    profile.breakpoints = {R - w, R + w, R + delta - w, R + delta + w};
    return profile;
}

namespace {

/// The variation field alpha = f(rho) xi_1 around the base point that the
/// half-space chart places at (0, 0, 1).
FieldFn profile_field(const std::function<double(double)>& f) {
    const ChartPoint base{ChartId::HyperbolicHalfspace, 0.0, 0.0, 1.0};
    return [f, base](const ChartPoint& p) {
        const double rho = hyperbolic_distance(p, base);
        return FrameVector{f(rho), 0.0, 0.0};
    };
}

/// <J(alpha), alpha> at the point at geodesic distance rho straight above the
/// base point, sigma = xi_3, with finite-difference covariant derivatives.
double jacobi_density(const FieldFn& alpha, double rho, double h) {
    const ChartPoint pt{ChartId::HyperbolicHalfspace, 0.0, 0.0, std::exp(rho)};
    const FrameVector a = alpha(pt);
    const FrameVector lap = rough_laplacian(alpha, pt, h);
    // J(alpha) = nabla*nabla alpha - |nabla sigma|^2 alpha - 2 <nabla sigma, nabla alpha> sigma
    // with |nabla xi_3|^2 = 2.  Pairing with alpha = f xi_1 keeps only the
    // xi_1 component, and the sigma-directed term has none.
    const double j1 = lap.a1 - 2.0 * a.a1;
    return j1 * a.a1;
}

}  // namespace

double jacobi_quadratic_form(const RadialProfile& profile, double h) {
    if (!profile.f) throw DomainError("profile has no function");
    require_positive(h, "h");
    if (!(profile.support_end > 0.0)) throw DomainError("profile support must be positive");

    const FieldFn alpha = profile_field(profile.f);
    const double window = 2e-3;

    // Breakpoints come in pairs bracketing each transition zone; points inside
    // a zone (padded by `window`) use a reduced FD step because the profile's
    // higher derivatives are large there.
    auto step_at = [&](double rho) {
        for (size_t i = 0; i + 1 < profile.breakpoints.size(); i += 2) {
            const double lo = profile.breakpoints[i], hi = profile.breakpoints[i + 1];
            if (rho >= lo - window && rho <= hi + window) return 2e-6;
        }
        return h;
    };

    auto integrand = [&](double rho) {
        const double sh = std::sinh(rho);
        return 4.0 * kPi * sh * sh * jacobi_density(alpha, rho, step_at(rho));
    };

    std::vector<double> splits{0.0};
    for (double b : profile.breakpoints) {
        for (double s : {b - window, b, b + window})
            if (s > 0.0 && s < profile.support_end) splits.push_back(s);
    }
    splits.push_back(profile.support_end);
    std::sort(splits.begin(), splits.end());

    double total = 0.0;
    for (size_t i = 0; i + 1 < splits.size(); ++i) {
        if (splits[i + 1] - splits[i] < 1e-14) continue;
        total += GK::integrate(integrand, splits[i], splits[i + 1], 4, 1e-7);
    }
    return total;
}

double jacobi_pointwise_gap(const std::function<double(double)>& f,
                            const std::function<double(double)>& fp,
                            const std::function<double(double)>& fpp, double rho, double h) {
    if (!(rho > 0.0)) throw DomainError("need rho > 0");
    require_positive(h, "h");
    const FieldFn alpha = profile_field(f);
    const double lhs = jacobi_density(alpha, rho, h);
    const double lap_f = -(fpp(rho) + 2.0 * (std::cosh(rho) / std::sinh(rho)) * fp(rho));
    const double rhs = f(rho) * lap_f - f(rho) * f(rho);
    return lhs - rhs;
}

}  // namespace huvf::stability

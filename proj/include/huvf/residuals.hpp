#pragma once

/// Independent numerical verification of harmonicity.  A unit field is a
/// harmonic section of the unit tangent bundle iff
///
///     nabla*nabla sigma = |nabla sigma|^2 sigma.                  (generic)
///
/// Reduced forms checked against the same tolerance:
///   Euclidean polar form:   Delta u = 2 (nabla u . nabla v) cot v,
///                           Delta v = -|nabla u|^2 cos v sin v;
///   horospherical standard: Delta u = 0 (hyperbolic Laplacian) and
///                           u_x sin u = u_y cos u (coordinate partials).
///
/// All residuals are finite-difference based and reported with max/mean over
/// a grid plus an observed convergence order from a pair of larger steps
/// (where truncation still dominates roundoff).

#include <huvf/charts.hpp>
#include <huvf/fieldlab.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace huvf::residuals {

struct AxisSpec {
    double min = 0;
    double max = 1;
    int count = 2;
};

/// Rectangular evaluation grid in one chart with an optional keep-predicate
/// (e.g. distance-to-axis >= margin).  All produced points are valid in the
/// chart; invalid corners must be excluded by construction or predicate.
struct GridSpec {
    ChartId chart = ChartId::EuclideanCartesian;
    std::array<AxisSpec, 3> axes;
    std::function<bool(const ChartPoint&)> keep;  ///< optional

    [[nodiscard]] std::vector<ChartPoint> points() const;
    [[nodiscard]] std::string describe() const;
};

/// Default exclusion margin that grids keep from singular loci.
inline constexpr double kExclusionMargin = 0.05;

struct Channel {
    std::string name;
    double max_abs = 0;
    double mean_abs = 0;
    std::optional<double> order;  ///< observed convergence order, if measured
};

enum class Verdict { Pass, Fail };

struct ResidualReport {
    std::string field;  ///< family description
    std::string grid;
    double h = 0;
    double tol = 0;
    std::vector<Channel> channels;
    Verdict verdict = Verdict::Fail;

    [[nodiscard]] double worst() const;
    [[nodiscard]] bool pass() const { return verdict == Verdict::Pass; }
};

/// Steps at which the convergence order is measured.  They are deliberately
/// much larger than the verdict step: at the verdict step the truncation
/// error of a harmonic family sits near roundoff and a halving study would
/// measure noise.
inline constexpr double kOrderStepHi = 4e-3;
inline constexpr double kOrderStepLo = 2e-3;

/// Generic harmonic-section residual |nabla*nabla sigma - |nabla sigma|^2 sigma|
/// with the rough Laplacian and the bending both from finite differences of
/// the field alone.  One channel ("harmonic-section").
[[nodiscard]] ResidualReport harmonic_section_residual(const FieldSpec& spec, const GridSpec& grid,
                                                       double h = 1e-4, double tol = 1e-6,
                                                       bool with_order = true);

/// Euclidean reduced system for polar angle functions (u_fn, v_fn) given on
/// the grid's chart.  Channels "polar-u" and "polar-v".  The angle calculus
/// is branch-safe: derivatives of u enter through cos u and sin u only.
[[nodiscard]] ResidualReport euclidean_reduced_residual(const ScalarFn& u_fn, const ScalarFn& v_fn,
                                                        const GridSpec& grid, double h = 1e-4,
                                                        double tol = 1e-6, bool with_order = true);

/// Horospherical system for the standard-form angle u on the half-space.
/// Channels "hyperbolic-laplacian" and "constraint".
[[nodiscard]] ResidualReport horospherical_residual(const ScalarFn& u_fn, const GridSpec& grid,
                                                    double h = 1e-4, double tol = 1e-6,
                                                    bool with_order = true);

/// Harmonic-map side condition for hyperbolic fields via the geodesic +
/// solenoidal characterization: channels "geodesic-defect" (max |nabla_sigma
/// sigma|) and "solenoidal-defect" (max |div sigma|).  Throws DomainError for
/// Euclidean specs (the characterization is for the non-flat space form).
[[nodiscard]] ResidualReport harmonic_map_test(const FieldSpec& spec, const GridSpec& grid,
                                               double h = 1e-4, double tol = 1e-6);

/// Hub-chart polar angle functions of a catalog family (for the reduced
/// checkers).  The returned u function may have branch jumps of 2*pi; it is
/// only ever consumed through cos/sin.  Throws DomainError if the family has
/// no u angle (or, for v, no polar form).
[[nodiscard]] ScalarFn family_u_fn(const FieldSpec& spec);
[[nodiscard]] ScalarFn family_v_fn(const FieldSpec& spec);

/// The default verification grid for a family: a box kept well away from the
/// family's singular locus so that FD truncation sits below tolerance.
[[nodiscard]] GridSpec default_grid(const FieldSpec& spec);

}  // namespace huvf::residuals

#pragma once

/// Streamline integration of catalog fields and quantitative diagnostics of
/// the qualitative flow pictures of the axially symmetric Euclidean family:
///
///   p = 0     : every trajectory stays in its vertical half-plane; inner
///               trajectories rise, cut the critical cylinder orthogonally,
///               then descend (a fountain);
///   p = pi/2  : every cylinder r = const is invariant; trajectories are
///               helices whose slope |cot v_q(r)| diverges as r -> 0 and
///               vanishes at the crossing cylinder, where the flow is a
///               horizontal circle.

#include <huvf/charts.hpp>
#include <huvf/fieldlab.hpp>

#include <optional>
#include <vector>

namespace huvf::flowtrace {

struct Streamline {
    FieldSpec field;
    ChartPoint start;       ///< as given
    double step = 0;        ///< arc-length step (the field is unit)
    std::vector<ChartPoint> points;  ///< hub-chart points, start included
};

enum class Chirality { Left, Right, None };

struct SlopeEntry {
    double r = 0;
    double slope = 0;           ///< |cot v_q(r)|: vertical over horizontal speed
    Chirality chirality = Chirality::None;
    int vertical_sign = 0;      ///< sign of dz/ds on the cylinder
    int angular_sign = 0;       ///< sign of d theta/ds on the cylinder
};

struct FlowDiagnostics {
    std::optional<double> crossing_radius;  ///< where the vertical component vanishes
    std::vector<SlopeEntry> slope_profile;
    Chirality chirality = Chirality::None;  ///< chirality inside the crossing cylinder
    double invariant_surface_error = 0;  ///< max drift off the invariant surface
    double theta_drift = 0;              ///< fountain: max |theta(s) - theta(0)|
    double crossing_vertical_component = 0;  ///< |<sigma, xi_3>| at the detected crossing
};

/// Classical 4th-order integration of dx/ds = sigma(x) in hub-chart
/// coordinates; arc-length parametrized since |sigma| = 1.  Hyperbolic
/// tracing is offered for the frame fields and HParallel (closed-form
/// validated flows); the flow taxonomy above is Euclidean.  Throws
/// DomainError if the trajectory approaches the field's singular set.
[[nodiscard]] Streamline trace(const FieldSpec& spec, const ChartPoint& start, double step, int n);

/// Helix diagnostics of EuclidPendulum with p = +-pi/2: slope, chirality and
/// signs per radius (from the profile), the crossing radius, and the maximal
/// radial drift over one integrated revolution on the first radius.
[[nodiscard]] FlowDiagnostics helix_diagnostics(const FieldSpec& spec,
                                                const std::vector<double>& radii,
                                                double step = 1e-3);

/// Fountain diagnostics of EuclidPendulum with p = 0: per-start verification
/// that the trajectory stays in its vertical half-plane (theta drift), plus
/// location of the orthogonal crossing of the critical cylinder (where the
/// tangent turns purely radial).
[[nodiscard]] FlowDiagnostics fountain_diagnostics(const FieldSpec& spec,
                                                   const std::vector<ChartPoint>& starts,
                                                   double step = 1e-3, int max_steps = 200000);

}  // namespace huvf::flowtrace

#include <huvf/cli.hpp>

#include <huvf/charts.hpp>
#include <huvf/error.hpp>
#include <huvf/fieldlab.hpp>
#include <huvf/flowtrace.hpp>
#include <huvf/pendulum.hpp>
#include <huvf/repro.hpp>
#include <huvf/residuals.hpp>
#include <huvf/stability.hpp>
#include <huvf/version.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace huvf::cli {

namespace {

// ------------------------------------------------------------------ parsing

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "' in '" + text + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size())
            throw UsageError("trailing characters in number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty number list");
    return out;
}

std::array<double, 3> parse_triple(const std::string& text) {
    const auto v = parse_numbers(text);
    if (v.size() != 3)
        throw UsageError("expected three comma-separated numbers, got '" + text + "'");
    return {v[0], v[1], v[2]};
}

ChartId parse_chart(const std::string& name) {
    for (ChartId id : {ChartId::EuclideanCartesian, ChartId::EuclideanCylindrical,
                       ChartId::EuclideanSpherical, ChartId::HyperbolicHalfspace,
                       ChartId::HyperbolicBallPolar}) {
        if (chart_name(id) == name) return id;
    }
    throw UsageError("unknown chart '" + name +
                     "' (known: euclidean-cartesian, euclidean-cylindrical, euclidean-spherical, "
                     "hyperbolic-halfspace, hyperbolic-ball-polar)");
}

Space parse_space(const std::string& name) {
    if (name == "euclidean") return Space::Euclidean;
    if (name == "hyperbolic") return Space::Hyperbolic;
    throw UsageError("unknown space '" + name + "' (known: euclidean, hyperbolic)");
}

// ------------------------------------------------------------- shared state

constexpr const char* kFamilyHelp =
    "Family name: euclid-radial-line (--t), euclid-radial-point (--t), "
    "euclid-pendulum (--p --q), frame (--frame-index --space), horo-invariant (--u0), "
    "horo-theta (--sign), horo-holomorphic (--k --a-re --a-im), horo-pq (--p --q), h-parallel";

struct FamilyOpts {
    std::string family;
    double t = 0, p = 0, q = 0, u0 = 0, k = 1, a_re = 0, a_im = 0, rotate = 0;
    int frame_index = 1, sign = 1;
    std::string space = "hyperbolic";
    // One --rotate option per subcommand sharing this state; only the parsed
    // subcommand's option has a nonzero count.
    std::vector<CLI::Option*> rotate_opts;
};

void add_family_opts(CLI::App* cmd, FamilyOpts& f) {
    cmd->add_option("--family", f.family, kFamilyHelp)->required();
    cmd->add_option("--t", f.t, "Circle-action phase t of the radial-line/point families");
    cmd->add_option("--p", f.p, "Parameter p (euclid-pendulum phase, horo-pq coefficient)");
    cmd->add_option("--q", f.q, "Parameter q (euclid-pendulum boundary slope, horo-pq offset)");
    cmd->add_option("--frame-index", f.frame_index, "Frame index 1..3 for family 'frame'")
        ->check(CLI::Range(1, 3));
    cmd->add_option("--space", f.space, "Ambient space for family 'frame': euclidean|hyperbolic");
    cmd->add_option("--u0", f.u0, "Constant angle of horo-invariant");
    cmd->add_option("--k", f.k, "Slope k of horo-holomorphic");
    cmd->add_option("--a-re", f.a_re, "Re(alpha) of horo-holomorphic");
    cmd->add_option("--a-im", f.a_im, "Im(alpha) of horo-holomorphic");
    cmd->add_option("--sign", f.sign, "Orientation sign of horo-theta: 1 or -1");
    f.rotate_opts.push_back(
        cmd->add_option("--rotate", f.rotate, "Apply the circle action u -> u + ROTATE"));
}

FieldSpec build_spec(const FamilyOpts& f) {
    FieldSpec spec = [&f]() -> FieldSpec {
        if (f.family == "euclid-radial-line") return FieldSpec::radial_line(f.t);
        if (f.family == "euclid-radial-point") return FieldSpec::radial_point(f.t);
        if (f.family == "euclid-pendulum") return FieldSpec::pendulum(f.p, f.q);
        if (f.family == "frame") return FieldSpec::frame(f.frame_index, parse_space(f.space));
        if (f.family == "horo-invariant") return FieldSpec::horo_invariant(f.u0);
        if (f.family == "horo-theta") return FieldSpec::horo_theta(f.sign);
        if (f.family == "horo-holomorphic")
            return FieldSpec::horo_holomorphic(f.k, f.a_re, f.a_im);
        if (f.family == "horo-pq") return FieldSpec::horo_pq(f.p, f.q);
        if (f.family == "h-parallel") return FieldSpec::h_parallel();
        throw UsageError("unknown family '" + f.family + "'. " + kFamilyHelp);
    }();
    const bool rotated = std::any_of(f.rotate_opts.begin(), f.rotate_opts.end(),
                                     [](const CLI::Option* o) { return o->count() > 0; });
    if (rotated) spec = circle_action(spec, f.rotate);
    return spec;
}

struct OutputOpts {
    std::string format = "json";
    std::string output;
    bool no_timestamp = false;
};

void add_output_opts(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--format", o.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output,
                    "Output file (default stdout; bare names land in $HUVF_OUTPUT_DIR)");
    cmd->add_flag("--no-timestamp", o.no_timestamp,
                  "Omit the timestamp so identical requests give byte-identical output");
}

void emit(const OutputOpts& o, const std::string& echo, const report::json& payload,
          const report::Csv* csv, std::ostream& out) {
    std::string content;
    if (o.format == "json") {
        report::json doc = report::document(echo, !o.no_timestamp);
        doc["payload"] = payload;
        content = doc.dump(2) + "\n";
    } else {
        if (csv == nullptr) throw UsageError("csv output is not available for this command");
        content = csv->str();
    }
    if (o.output.empty())
        out << content;
    else
        report::write_text(o.output, content);
}

report::json residual_json(const residuals::ResidualReport& rep) {
    report::json channels = report::json::array();
    for (const auto& ch : rep.channels) {
        report::json c;
        c["name"] = ch.name;
        c["max_abs"] = ch.max_abs;
        c["mean_abs"] = ch.mean_abs;
        if (ch.order)
            c["order"] = *ch.order;
        else
            c["order"] = nullptr;
        channels.push_back(c);
    }
    report::json j;
    j["field"] = rep.field;
    j["grid"] = rep.grid;
    j["h"] = rep.h;
    j["tol"] = rep.tol;
    j["channels"] = channels;
    j["verdict"] = rep.pass() ? "PASS" : "FAIL";
    return j;
}

report::Csv residual_csv(const residuals::ResidualReport& rep) {
    report::Csv csv;
    csv.header = {"channel", "max_abs", "mean_abs", "order", "verdict"};
    for (const auto& ch : rep.channels) {
        csv.add_row({ch.name, report::csv_cell(ch.max_abs), report::csv_cell(ch.mean_abs),
                     ch.order ? report::csv_cell(*ch.order) : std::string(),
                     rep.pass() ? "PASS" : "FAIL"});
    }
    return csv;
}

residuals::GridSpec parse_grid(const std::string& text, ChartId chart) {
    residuals::GridSpec grid;
    grid.chart = chart;
    std::stringstream ss(text);
    std::string axis_text;
    int axis = 0;
    while (std::getline(ss, axis_text, ';')) {
        if (axis >= 3) throw UsageError("grid has more than three axes: " + text);
        const auto v = parse_numbers(axis_text);
        if (v.size() != 3)
            throw UsageError("grid axis needs min,max,count - got '" + axis_text + "'");
        const int count = static_cast<int>(std::lround(v[2]));
        grid.axes[static_cast<size_t>(axis)] = residuals::AxisSpec{v[0], v[1], count};
        ++axis;
    }
    if (axis != 3) throw UsageError("grid needs three ';'-separated axes: min,max,count each");
    return grid;
}

std::string chirality_name(flowtrace::Chirality ch) {
    switch (ch) {
        case flowtrace::Chirality::Left: return "left";
        case flowtrace::Chirality::Right: return "right";
        case flowtrace::Chirality::None: return "none";
    }
    return "?";
}

// ----------------------------------------------------------------- handlers

struct CliState {
    FamilyOpts fam;
    OutputOpts outopt;
    std::string echo;

    std::vector<std::string> points;
    std::string chart;
    bool frame_sum = false;

    std::string grid_text;
    double h = fd::kDefaultStep;
    double tol = 1e-6;
    bool no_order = false;

    double q = 1.0, r_min = 1e-3, r_max = 10.0, ptol = 1e-8;
    int n = 800;
    std::string method = "shooting";

    double R = 1.0, delta = 1.0, quad_tol = 1e-12;
    double th_tol = 1e-7;
    double delta0 = 1.5, r0_tol = 1e-7;

    std::string start_text = "0.5,0,-0.3";
    std::vector<std::string> start_list;
    double step = 1e-3;
    int trace_steps = 1000;
    std::string mode;
    std::string radii_text;
    int max_steps = 200000;

    std::string repro_format = "table";
    int criterion = 0;
};

int do_field_eval(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    const ChartId chart = st.chart.empty() ? hub_chart(spec.space()) : parse_chart(st.chart);
    report::json results = report::json::array();
    report::Csv csv;
    csv.header = {"c1", "c2", "c3", "a1", "a2", "a3"};
    for (const auto& text : st.points) {
        const auto t = parse_triple(text);
        const ChartPoint p{chart, t[0], t[1], t[2]};
        const FrameVector v = evaluate(spec, p);
        report::json r;
        r["point"] = {t[0], t[1], t[2]};
        r["components"] = {v.a1, v.a2, v.a3};
        try {
            const PolarAngles ang = polar_decompose(v);
            r["u"] = ang.u;
            r["v"] = ang.v;
        } catch (const DomainError&) {
            // vertical or otherwise without polar angles; omit them
        }
        results.push_back(r);
        csv.add_row({report::csv_cell(t[0]), report::csv_cell(t[1]), report::csv_cell(t[2]),
                     report::csv_cell(v.a1), report::csv_cell(v.a2), report::csv_cell(v.a3)});
    }
    report::json payload;
    payload["family"] = spec.describe();
    payload["chart"] = chart_name(chart);
    payload["results"] = results;
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_field_bending(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    const ChartId chart = st.chart.empty() ? hub_chart(spec.space()) : parse_chart(st.chart);
    report::json results = report::json::array();
    report::Csv csv;
    csv.header = {"c1", "c2", "c3", "bending"};
    if (st.frame_sum) csv.header.push_back("frame_sum");
    for (const auto& text : st.points) {
        const auto t = parse_triple(text);
        const ChartPoint p{chart, t[0], t[1], t[2]};
        const double b = bending(spec, p);
        report::json r;
        r["point"] = {t[0], t[1], t[2]};
        r["bending"] = b;
        std::vector<std::string> row{report::csv_cell(t[0]), report::csv_cell(t[1]),
                                     report::csv_cell(t[2]), report::csv_cell(b)};
        if (st.frame_sum) {
            const double fs = bending_frame_sum(spec, p, st.h);
            r["frame_sum"] = fs;
            row.push_back(report::csv_cell(fs));
        }
        results.push_back(r);
        csv.add_row(row);
    }
    report::json payload;
    payload["family"] = spec.describe();
    payload["chart"] = chart_name(chart);
    payload["results"] = results;
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_check_harmonic(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    residuals::GridSpec grid = residuals::default_grid(spec);
    if (!st.grid_text.empty()) grid = parse_grid(st.grid_text, grid.chart);
    const auto rep = residuals::harmonic_section_residual(spec, grid, st.h, st.tol, !st.no_order);
    const report::Csv csv = residual_csv(rep);
    emit(st.outopt, st.echo, residual_json(rep), &csv, out);
    return rep.pass() ? kExitOk : kExitNumerical;
}

int do_check_reduced(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    residuals::GridSpec grid = residuals::default_grid(spec);
    if (!st.grid_text.empty()) grid = parse_grid(st.grid_text, grid.chart);
    const auto rep =
        spec.space() == Space::Euclidean
            ? residuals::euclidean_reduced_residual(residuals::family_u_fn(spec),
                                                    residuals::family_v_fn(spec), grid, st.h,
                                                    st.tol, !st.no_order)
            : residuals::horospherical_residual(residuals::family_u_fn(spec), grid, st.h, st.tol,
                                                !st.no_order);
    const report::Csv csv = residual_csv(rep);
    emit(st.outopt, st.echo, residual_json(rep), &csv, out);
    return rep.pass() ? kExitOk : kExitNumerical;
}

int do_check_map(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    residuals::GridSpec grid = residuals::default_grid(spec);
    if (!st.grid_text.empty()) grid = parse_grid(st.grid_text, grid.chart);
    const auto rep = residuals::harmonic_map_test(spec, grid, st.h, st.tol);
    const report::Csv csv = residual_csv(rep);
    emit(st.outopt, st.echo, residual_json(rep), &csv, out);
    return rep.pass() ? kExitOk : kExitNumerical;
}

int do_pendulum_solve(CliState& st, std::ostream& out) {
    const bool shooting = st.method == "shooting";
    const pendulum::PendulumSolution sol =
        shooting ? pendulum::solve_shooting(st.q, st.r_max, st.n, st.ptol, st.r_min)
                 : pendulum::tabulate_closed_form(st.q, st.r_min, st.r_max, st.n);
    double sup = 0;
    report::json samples = report::json::array();
    report::Csv csv;
    csv.header = {"r", "v", "vp", "v_closed", "abs_diff"};
    for (const auto& s : sol.samples) {
        const double v_closed = pendulum::closed_form(st.q, s.r).first;
        const double diff = std::abs(s.v - v_closed);
        sup = std::max(sup, diff);
        report::json j;
        j["r"] = s.r;
        j["v"] = s.v;
        j["vp"] = s.vp;
        samples.push_back(j);
        csv.add_row({report::csv_cell(s.r), report::csv_cell(s.v), report::csv_cell(s.vp),
                     report::csv_cell(v_closed), report::csv_cell(diff)});
    }
    report::json payload;
    payload["q"] = st.q;
    payload["method"] = shooting ? "shooting" : "closed-form";
    payload["r_min"] = st.r_min;
    payload["r_max"] = st.r_max;
    payload["n"] = st.n;
    payload["max_ode_residual"] = sol.max_ode_residual;
    if (st.q != 0.0) payload["separatrix_residual"] = pendulum::separatrix_residual(sol);
    payload["sup_diff_vs_closed_form"] = sup;
    payload["samples"] = samples;
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_stability_hessian(CliState& st, std::ostream& out) {
    const auto ev = stability::evaluate_hessian(st.R, st.delta, st.quad_tol);
    report::json payload;
    payload["R"] = ev.R;
    payload["delta"] = ev.delta;
    payload["closed_form"] = ev.closed_form;
    payload["corrected_closed_form"] = ev.true_closed_form;
    payload["quadrature"] = ev.quadrature;
    payload["abs_diff"] = ev.abs_diff;
    payload["rel_diff"] = ev.rel_diff;
    payload["corrected_abs_diff"] = ev.true_abs_diff;
    payload["corrected_rel_diff"] = ev.true_rel_diff;
    report::Csv csv;
    csv.header = {"R",        "delta",    "closed_form", "corrected_closed_form",
                  "quadrature", "abs_diff", "rel_diff"};
    csv.add_row({report::csv_cell(ev.R), report::csv_cell(ev.delta),
                 report::csv_cell(ev.closed_form), report::csv_cell(ev.true_closed_form),
                 report::csv_cell(ev.quadrature), report::csv_cell(ev.abs_diff),
                 report::csv_cell(ev.rel_diff)});
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_stability_thresholds(CliState& st, std::ostream& out) {
    const auto th = stability::find_thresholds(st.th_tol);
    report::json payload;
    payload["delta_s"] = th.delta_s;
    payload["delta_u"] = th.delta_u;
    payload["tol"] = th.tol;
    report::Csv csv;
    csv.header = {"delta_s", "delta_u", "tol"};
    csv.add_row({report::csv_cell(th.delta_s), report::csv_cell(th.delta_u),
                 report::csv_cell(th.tol)});
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_stability_r0(CliState& st, std::ostream& out) {
    const double r0 = stability::find_R0(st.delta0, st.r0_tol);
    report::json payload;
    payload["delta0"] = st.delta0;
    payload["r0"] = r0;
    report::Csv csv;
    csv.header = {"delta0", "r0"};
    csv.add_row({report::csv_cell(st.delta0), report::csv_cell(r0)});
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_flow_trace(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    const ChartId chart = st.chart.empty() ? hub_chart(spec.space()) : parse_chart(st.chart);
    const auto t = parse_triple(st.start_text);
    const auto line = flowtrace::trace(spec, ChartPoint{chart, t[0], t[1], t[2]}, st.step,
                                       st.trace_steps);
    report::json pts = report::json::array();
    report::Csv csv;
    csv.header = {"index", "c1", "c2", "c3"};
    for (size_t i = 0; i < line.points.size(); ++i) {
        const ChartPoint& p = line.points[i];
        pts.push_back({p.c1, p.c2, p.c3});
        csv.add_row({std::to_string(i), report::csv_cell(p.c1), report::csv_cell(p.c2),
                     report::csv_cell(p.c3)});
    }
    report::json payload;
    payload["family"] = spec.describe();
    payload["chart"] = chart_name(hub_chart(spec.space()));
    payload["step"] = st.step;
    payload["n"] = st.trace_steps;
    payload["points"] = pts;
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_flow_diagnose(CliState& st, std::ostream& out) {
    const FieldSpec spec = build_spec(st.fam);
    report::json payload;
    payload["family"] = spec.describe();
    payload["mode"] = st.mode;
    report::Csv csv;
    if (st.mode == "helix") {
        std::vector<double> radii;
        if (st.radii_text.empty()) {
            const double rstar = pendulum::crossing_radius(spec.q);
            radii = {1.0, 0.01, 0.05, 0.2, 0.5, rstar, 2.0 * rstar};
        } else {
            radii = parse_numbers(st.radii_text);
        }
        const auto d = flowtrace::helix_diagnostics(spec, radii, st.step);
        payload["crossing_radius"] = d.crossing_radius ? report::json(*d.crossing_radius)
                                                       : report::json(nullptr);
        payload["crossing_vertical_component"] = d.crossing_vertical_component;
        payload["radial_drift_per_revolution"] = d.invariant_surface_error;
        payload["chirality_inner"] = chirality_name(d.chirality);
        report::json profile = report::json::array();
        csv.header = {"r", "slope", "chirality", "vertical_sign", "angular_sign"};
        for (const auto& e : d.slope_profile) {
            report::json j;
            j["r"] = e.r;
            j["slope"] = e.slope;
            j["chirality"] = chirality_name(e.chirality);
            j["vertical_sign"] = e.vertical_sign;
            j["angular_sign"] = e.angular_sign;
            profile.push_back(j);
            csv.add_row({report::csv_cell(e.r), report::csv_cell(e.slope),
                         chirality_name(e.chirality), std::to_string(e.vertical_sign),
                         std::to_string(e.angular_sign)});
        }
        payload["profile"] = profile;
    } else {
        std::vector<ChartPoint> starts;
        std::vector<std::string> texts =
            st.start_list.empty() ? std::vector<std::string>{st.start_text} : st.start_list;
        for (const auto& text : texts) {
            const auto t = parse_triple(text);
            starts.push_back(ChartPoint{ChartId::EuclideanCartesian, t[0], t[1], t[2]});
        }
        const auto d = flowtrace::fountain_diagnostics(spec, starts, st.step, st.max_steps);
        payload["theta_drift"] = d.theta_drift;
        payload["plane_drift"] = d.invariant_surface_error;
        payload["crossing_radius"] = d.crossing_radius ? report::json(*d.crossing_radius)
                                                       : report::json(nullptr);
        payload["crossing_vertical_component"] = d.crossing_vertical_component;
        csv.header = {"theta_drift", "plane_drift", "crossing_radius",
                      "crossing_vertical_component"};
        csv.add_row({report::csv_cell(d.theta_drift), report::csv_cell(d.invariant_surface_error),
                     d.crossing_radius ? report::csv_cell(*d.crossing_radius) : std::string(),
                     report::csv_cell(d.crossing_vertical_component)});
    }
    emit(st.outopt, st.echo, payload, &csv, out);
    return kExitOk;
}

int do_repro(CliState& st, std::ostream& out) {
    repro::Table table;
    if (st.criterion > 0)
        table.lines.push_back(repro::run_criterion(st.criterion));
    else
        table = repro::run_all();
    std::string content;
    if (st.repro_format == "table") {
        content = repro::format_text(table);
    } else if (st.repro_format == "csv") {
        report::Csv csv;
        csv.header = {"id", "title", "pass", "seconds", "detail"};
        for (const auto& line : table.lines)
            csv.add_row({std::to_string(line.id), line.title, line.pass ? "PASS" : "FAIL",
                         report::csv_cell(line.seconds), line.detail});
        content = csv.str();
    } else {
        report::json doc = report::document(st.echo, !st.outopt.no_timestamp);
        doc["payload"] = repro::to_json(table);
        content = doc.dump(2) + "\n";
    }
    if (st.outopt.output.empty())
        out << content;
    else
        report::write_text(st.outopt.output, content);
    return table.all_pass() ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliState st;
    {
        std::ostringstream echo;
        echo << kToolName;
        for (const auto& a : args) echo << ' ' << a;
        st.echo = echo.str();
    }

    int code = kExitOk;
    CLI::App app{"Harmonic unit vector fields on Euclidean and hyperbolic 3-space: "
                 "catalog evaluation, residual verification, pendulum profiles, "
                 "stability analysis, flow diagnostics.",
                 std::string(kToolName)};
    app.require_subcommand(1);

    // field ----------------------------------------------------------------
    auto* field = app.add_subcommand("field", "Evaluate catalog fields and their bending");
    field->require_subcommand(1);
    auto* eval = field->add_subcommand("eval", "Evaluate a field at points");
    add_family_opts(eval, st.fam);
    add_output_opts(eval, st.outopt);
    eval->add_option("--point", st.points, "Evaluation point c1,c2,c3 (repeatable)")->required();
    eval->add_option("--chart", st.chart, "Chart the points are given in (default: hub chart)");
    eval->callback([&] { code = do_field_eval(st, out); });

    auto* bend = field->add_subcommand("bending", "Bending (energy density) of a field");
    add_family_opts(bend, st.fam);
    add_output_opts(bend, st.outopt);
    bend->add_option("--point", st.points, "Evaluation point c1,c2,c3 (repeatable)")->required();
    bend->add_option("--chart", st.chart, "Chart the points are given in (default: hub chart)");
    bend->add_flag("--frame-sum", st.frame_sum,
                   "Also emit the finite-difference frame-derivative cross-check");
    bend->add_option("--fd-step", st.h, "Finite-difference step for --frame-sum");
    bend->callback([&] { code = do_field_bending(st, out); });

    // check ----------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Residual verdicts (exit 2 on FAIL)");
    check->require_subcommand(1);
    auto add_check_opts = [&st](CLI::App* cmd) {
        add_family_opts(cmd, st.fam);
        add_output_opts(cmd, st.outopt);
        cmd->add_option("--grid", st.grid_text,
                        "Grid 'min,max,count;min,max,count;min,max,count' in the family's hub "
                        "chart (default: a family-appropriate box away from singular loci)");
        cmd->add_option("--fd-step", st.h, "Finite-difference step (default 1e-4)");
        cmd->add_option("--tol", st.tol, "Residual tolerance (default 1e-6)");
        cmd->add_flag("--no-order", st.no_order, "Skip the convergence-order sweeps");
    };
    auto* harmonic = check->add_subcommand(
        "harmonic", "Generic harmonic-section residual |rough Laplacian - bending x field|");
    add_check_opts(harmonic);
    harmonic->callback([&] { code = do_check_harmonic(st, out); });

    auto* reduced = check->add_subcommand(
        "reduced", "Reduced-system residual (Euclidean polar angles or horospherical angle)");
    add_check_opts(reduced);
    reduced->callback([&] { code = do_check_reduced(st, out); });

    auto* map = check->add_subcommand(
        "map", "Harmonic-map side condition via the geodesic + solenoidal characterization "
               "(hyperbolic families only)");
    add_check_opts(map);
    map->callback([&] { code = do_check_map(st, out); });

    // pendulum -------------------------------------------------------------
    auto* pend = app.add_subcommand("pendulum", "Boundary-matching pendulum profiles");
    pend->require_subcommand(1);
    auto* solve = pend->add_subcommand("solve", "Tabulate v_q on a log grid");
    add_output_opts(solve, st.outopt);
    solve->add_option("--q", st.q, "Boundary slope q")->required();
    solve->add_option("--r-min", st.r_min, "Smallest radius (default 1e-3)");
    solve->add_option("--r-max", st.r_max, "Largest radius (default 10)");
    solve->add_option("--n", st.n, "Number of samples (default 800)")->check(CLI::Range(7, 2000000));
    solve->add_option("--tol", st.ptol, "Interior-equation residual tolerance (default 1e-8)");
    solve->add_option("--method", st.method, "shooting|closed (default shooting)")
        ->check(CLI::IsMember({"shooting", "closed"}));
    solve->callback([&] { code = do_pendulum_solve(st, out); });

    // stability ------------------------------------------------------------
    auto* stab = app.add_subcommand("stability", "Second-variation analysis of the vertical field");
    stab->require_subcommand(1);
    auto* hess = stab->add_subcommand("hessian",
                                      "Hessian of the normalized radial variation: closed form, "
                                      "corrected closed form, quadrature");
    add_output_opts(hess, st.outopt);
    hess->add_option("--R", st.R, "Inner radius R")->required();
    hess->add_option("--delta", st.delta, "Shell width delta")->required();
    hess->add_option("--tol", st.quad_tol, "Quadrature tolerance (default 1e-12)");
    hess->callback([&] { code = do_stability_hessian(st, out); });

    auto* thresholds = stab->add_subcommand("thresholds",
                                            "Critical shell widths delta_s and delta_u");
    add_output_opts(thresholds, st.outopt);
    thresholds->add_option("--tol", st.th_tol, "Root tolerance (default 1e-7)");
    thresholds->callback([&] { code = do_stability_thresholds(st, out); });

    auto* r0 = stab->add_subcommand(
        "r0", "Smallest radius beyond which the Hessian is negative, for delta0 in "
              "(delta_s, delta_u)");
    add_output_opts(r0, st.outopt);
    r0->add_option("--delta0", st.delta0, "Shell width between delta_s and delta_u")->required();
    r0->add_option("--tol", st.r0_tol, "Root tolerance (default 1e-7)");
    r0->callback([&] { code = do_stability_r0(st, out); });

    // flow -----------------------------------------------------------------
    auto* flow = app.add_subcommand("flow", "Streamlines and qualitative flow diagnostics");
    flow->require_subcommand(1);
    auto* trace_cmd = flow->add_subcommand("trace", "Integrate one streamline");
    add_family_opts(trace_cmd, st.fam);
    add_output_opts(trace_cmd, st.outopt);
    trace_cmd->add_option("--start", st.start_text, "Start point c1,c2,c3")->required();
    trace_cmd->add_option("--chart", st.chart, "Chart of the start point (default: hub chart)");
    trace_cmd->add_option("--step", st.step, "Arc-length step (default 1e-3)");
    trace_cmd->add_option("--n", st.trace_steps, "Number of steps (default 1000)")
        ->check(CLI::Range(1, 100000000));
    trace_cmd->callback([&] { code = do_flow_trace(st, out); });

    auto* diagnose = flow->add_subcommand("diagnose",
                                          "Helix or fountain diagnostics of euclid-pendulum");
    add_family_opts(diagnose, st.fam);
    add_output_opts(diagnose, st.outopt);
    diagnose->add_option("--mode", st.mode, "helix (p = +-pi/2) or fountain (p = 0)")
        ->required()
        ->check(CLI::IsMember({"helix", "fountain"}));
    diagnose->add_option("--radii", st.radii_text,
                         "Helix: comma-separated cylinder radii (default: a spread around the "
                         "crossing radius)");
    diagnose->add_option("--start", st.start_list,
                         "Fountain: start point c1,c2,c3 (repeatable; default 0.5,0,-0.3)");
    diagnose->add_option("--step", st.step, "Integration step (default 1e-3)");
    diagnose->add_option("--max-steps", st.max_steps, "Fountain: integration-step limit");
    diagnose->callback([&] { code = do_flow_diagnose(st, out); });

    // repro ----------------------------------------------------------------
    auto* repro_cmd = app.add_subcommand("repro", "Reproduction of the published numbers");
    repro_cmd->require_subcommand(1);
    auto* all = repro_cmd->add_subcommand("all", "Run the acceptance table (exit 2 on any FAIL)");
    all->add_option("--criterion", st.criterion, "Run a single criterion 1..7")
        ->check(CLI::Range(1, 7));
    all->add_option("--format", st.repro_format, "table|csv|json (default table)")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    all->add_option("--output", st.outopt.output,
                    "Output file (default stdout; bare names land in $HUVF_OUTPUT_DIR)");
    all->add_flag("--no-timestamp", st.outopt.no_timestamp,
                  "Omit the timestamp in json format");
    all->callback([&] { code = do_repro(st, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e, out, err);
        return cli_code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return code;
}

}  // namespace huvf::cli

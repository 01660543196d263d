// command-line workbench over the incidence library: generators, exact counts,
// arrangements, random cells, refinements, bushes, the parameter recipe, and
// unit circles. Reports embed their run manifest; fixed seeds give
// byte-identical outputs.
#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <nlohmann/json.hpp>

#include "stw/bush.hpp"
#include "stw/circles.hpp"
#include "stw/crossings.hpp"
#include "stw/io.hpp"
#include "stw/recipe.hpp"
#include "stw/refinement.hpp"

using json = nlohmann::json;
using namespace stw;

namespace {

struct Common {
    std::string epsilon = "1/20";
    long long c_gap = 4, k = 4, k1 = 4, k2 = 4;
    std::string c_cross = "1/64", c_st = "5/2";
    std::uint64_t seed = 1;
    long long n_override = -1;
    std::string format = "json";
    std::string out = "-";
    bool timing = false;

    SlackParams slack() const {
        SlackParams s;
        s.epsilon = Rat::from_string(epsilon);
        s.c_gap = c_gap;
        s.k = k;
        s.k1 = k1;
        s.k2 = k2;
        s.c_cross = Rat::from_string(c_cross);
        s.c_st = Rat::from_string(c_st);
        s.validate();
        return s;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--epsilon", c.epsilon, "slack exponent, rational in (0, 1/10]");
    cmd->add_option("--c-gap", c.c_gap,
                    "window constant C in the C*n*ln(n)/r acceptability events");
    cmd->add_option("--slack-k", c.k,
                    "per-cell incidence cap exponent: multiplicities bounded by N^(k*eps)");
    cmd->add_option("--slack-k1", c.k1,
                    "sector crossing-budget exponent: sectors dropped above N^(5/3+k1*eps)");
    cmd->add_option("--slack-k2", c.k2,
                    "slow-line threshold exponent: slow below N^(2/3+k2*eps) sector crossings");
    cmd->add_option("--c-cross", c.c_cross, "crossing inequality constant in c*e^3/v^2");
    cmd->add_option("--c-st", c.c_st, "incidence bound constant in C*(nm)^(2/3)+n+m");
    cmd->add_option("--seed", c.seed, "PRNG seed; fixed seeds give byte-identical runs");
    cmd->add_option("--n", c.n_override, "override the declared scale N of the input");
    cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "output path, - for stdout");
    cmd->add_flag("--timing", c.timing,
                  "record wall-clock in the manifest (breaks byte-identity)");
}

struct Ctx {
    Common common;
    RunManifest manifest;
    std::string command_line;

    Configuration load_config(const std::string& path) {
        manifest.input_digests.push_back({path, digest_file(path)});
        Configuration c = config_from_json(json::parse(read_file(path)));
        if (common.n_override > 0) c = Configuration::make(c.lines, c.points, common.n_override);
        return c;
    }
    CircleConfig load_circles(const std::string& path) {
        manifest.input_digests.push_back({path, digest_file(path)});
        CircleConfig c = circle_config_from_json(json::parse(read_file(path)));
        if (common.n_override > 0) c.N = common.n_override;
        return c;
    }
    void emit(json report) {
        manifest.command = command_line;
        manifest.slack = common.slack();
        manifest.seeds = {common.seed};
        if (common.timing) {
            auto now = std::chrono::system_clock::now().time_since_epoch();
            manifest.wall_clock = std::to_string(
                std::chrono::duration_cast<std::chrono::milliseconds>(now).count());
        }
        report["manifest"] = manifest.to_json();
        std::string text = report.dump(2) + "\n";
        if (common.out == "-")
            std::cout << text;
        else
            write_file(common.out, text);
    }
    void emit_text(const std::string& body) {
        manifest.command = command_line;
        manifest.slack = common.slack();
        manifest.seeds = {common.seed};
        std::string text = "# manifest: " + manifest.to_json().dump() + "\n" + body;
        if (common.out == "-")
            std::cout << text;
        else
            write_file(common.out, text);
    }
};

json cells_report(const CellDecomposition& cd) {
    json j;
    j["cell_count"] = cd.cells.size();
    j["points_per_cell"] = cd.points_per_cell;
    j["lines_per_cell"] = cd.lines_per_cell;
    j["cells_per_line"] = cd.cells_per_line;
    j["boundary_points"] = cd.boundary_points;
    return j;
}

json trace_to_json(const RefinementTrace& t) {
    json stages = json::array();
    for (const auto& s : t.stages)
        stages.push_back({{"name", s.name},
                          {"removed", s.removed},
                          {"incidences_before", s.incidences_before},
                          {"incidences_after", s.incidences_after},
                          {"threshold", s.threshold}});
    return stages;
}

std::pair<Selection, ProvisionalResult> pipeline_cells(const Configuration& cfg, long long r,
                                                       std::uint64_t seed,
                                                       const SlackParams& slack) {
    Selection sel = sample(cfg, r, seed);
    if (sel.chosen.empty()) throw std::runtime_error("selection is empty; try another seed");
    return {sel, provisional_decomposition(cfg, sel, slack)};
}

SegmentGraph graph_from_json(const json& j) {
    SegmentGraph g;
    for (const auto& v : j.at("vertices"))
        g.vertices.push_back({Rat::from_string(v.at(0).get<std::string>()),
                              Rat::from_string(v.at(1).get<std::string>())});
    for (const auto& e : j.at("edges")) {
        int src = e.size() > 2 ? e.at(2).get<int>() : -1;
        g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), src});
    }
    return g;
}

Line parse_line(const std::string& s) {
    auto c1 = s.find(',');
    auto c2 = s.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::runtime_error("line format: A,B,C");
    return Line::canon(Rat::from_string(s.substr(0, c1)),
                       Rat::from_string(s.substr(c1 + 1, c2 - c1 - 1)),
                       Rat::from_string(s.substr(c2 + 1)));
}

int ranked_point(const Configuration& cfg, const IncidenceSet& I) {
    int best = -1;
    std::size_t rich = 0;
    for (std::size_t pi = 0; pi < cfg.points.size(); ++pi)
        if (I.by_point[pi].size() > rich) {
            rich = I.by_point[pi].size();
            best = static_cast<int>(pi);
        }
    if (best < 0) throw std::runtime_error("no incident point to organize around");
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for point-line incidence structure"};
    app.require_subcommand(1);
    Ctx ctx;
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        ctx.command_line = cmd.str();
    }
    Common& C = ctx.common;
    int exit_code = 0;

    auto* gen = app.add_subcommand("generate", "configuration generators");
    gen->require_subcommand(1);
    long long gen_k = 3, gen_lines = 20, gen_points = 40, gen_span = 10;
    std::string in_path;
    auto* gen_grid =
        gen->add_subcommand("grid", "k^3 lines on k(2k^2-1) points, k incidences per line");
    gen_grid->add_option("--k", gen_k, "grid parameter")->required();
    add_common(gen_grid, C);
    gen_grid->callback([&] { ctx.emit(config_to_json(generate_grid(gen_k))); });
    auto* gen_rand = gen->add_subcommand("random", "seeded random lines and points");
    gen_rand->add_option("--lines", gen_lines);
    gen_rand->add_option("--points", gen_points);
    gen_rand->add_option("--span", gen_span);
    add_common(gen_rand, C);
    gen_rand->callback([&] {
        ctx.emit(config_to_json(generate_random(gen_lines, gen_points, gen_span, C.seed)));
    });

    auto* inc = app.add_subcommand("incidence", "exact incidence statistics");
    inc->require_subcommand(1);
    auto* inc_count = inc->add_subcommand("count", "exact |I|");
    inc_count->add_option("--in", in_path)->required();
    add_common(inc_count, C);
    inc_count->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        ctx.emit({{"incidences", I.size()},
                  {"lines", cfg.lines.size()},
                  {"points", cfg.points.size()},
                  {"N", cfg.N}});
    });
    auto* inc_rich = inc->add_subcommand("richness", "per-point and per-line counts");
    inc_rich->add_option("--in", in_path)->required();
    add_common(inc_rich, C);
    inc_rich->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        RichnessProfile r = richness(cfg, incidences(cfg));
        if (C.format == "csv") {
            ctx.emit_text(richness_csv(r));
            return;
        }
        json hist_p, hist_l;
        for (auto [d, c] : r.point_histogram) hist_p[std::to_string(1LL << d)] = c;
        for (auto [d, c] : r.line_histogram) hist_l[std::to_string(1LL << d)] = c;
        ctx.emit({{"total", r.total},
                  {"point_counts", r.point_counts},
                  {"line_counts", r.line_counts},
                  {"point_dyadic", hist_p},
                  {"line_dyadic", hist_l}});
    });
    auto* inc_st = inc->add_subcommand("st-margin", "|I| over the configured incidence bound");
    inc_st->add_option("--in", in_path)->required();
    add_common(inc_st, C);
    inc_st->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Rat m = st_margin(cfg, incidences(cfg), C.slack());
        ctx.emit({{"margin", m.str()}, {"margin_decimal", m.to_double()}});
    });

    auto* arr_cmd = app.add_subcommand("arrange", "line arrangement structure");
    arr_cmd->require_subcommand(1);
    std::string zone_line;
    auto* arr_build = arr_cmd->add_subcommand("build", "faces, edges, vertices, Euler check");
    arr_build->add_option("--in", in_path)->required();
    add_common(arr_build, C);
    arr_build->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Arrangement a = Arrangement::build(cfg.lines);
        if (C.format == "csv") {
            ctx.emit_text(arrangement_csv(a));
            return;
        }
        json sides = json::array();
        for (std::size_t f = 0; f < a.face_count(); ++f)
            sides.push_back(a.side_count(static_cast<int>(f)));
        ctx.emit({{"vertices", a.vertex_count()},
                  {"edges", a.edge_count()},
                  {"faces", a.face_count()},
                  {"euler_ok", a.euler_ok()},
                  {"side_counts", sides}});
    });
    auto* arr_zone = arr_cmd->add_subcommand("zone", "faces met by a query line");
    arr_zone->add_option("--in", in_path)->required();
    arr_zone->add_option("--line", zone_line, "query line as A,B,C rationals")->required();
    add_common(arr_zone, C);
    arr_zone->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Arrangement a = Arrangement::build(cfg.lines);
        auto z = a.zone(parse_line(zone_line));
        ctx.emit(
            {{"zone_faces", z}, {"zone_size", z.size()}, {"bound_6r", 6 * cfg.lines.size()}});
    });
    auto* arr_fun = arr_cmd->add_subcommand("funnels", "vertical trapezoid decomposition");
    arr_fun->add_option("--in", in_path)->required();
    add_common(arr_fun, C);
    arr_fun->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Arrangement a = Arrangement::build(cfg.lines);
        FunnelDecomposition fd = funnelize(a);
        json per_face = json::array();
        for (std::size_t f = 0; f < a.face_count(); ++f) {
            json t;
            t["face"] = f;
            t["trapezoids"] = fd.by_face[f].size();
            if (a.faces()[f].bounded) {
                Rat area(0);
                for (int tr : fd.by_face[f]) area += fd.area(tr);
                t["area"] = area.str();
                t["area_matches_face"] = area == a.face_area(static_cast<int>(f));
            }
            per_face.push_back(t);
        }
        ctx.emit({{"trapezoids", fd.trapezoids.size()}, {"faces", per_face}});
    });
    auto* arr_cx = arr_cmd->add_subcommand("complexity", "dyadic side-count histogram");
    arr_cx->add_option("--in", in_path)->required();
    add_common(arr_cx, C);
    arr_cx->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Arrangement a = Arrangement::build(cfg.lines);
        std::vector<FaceId> all;
        for (std::size_t f = 0; f < a.face_count(); ++f) all.push_back(static_cast<int>(f));
        json h = json::array();
        for (const auto& b : complexity_histogram(a, all))
            h.push_back({{"s", b.s},
                         {"count", b.count},
                         {"bound_r2_s3", b.bound_small},
                         {"bound_r_s", b.bound_large}});
        ctx.emit({{"histogram", h}});
    });

    auto* cells_cmd = app.add_subcommand("cells", "random selections and decompositions");
    cells_cmd->require_subcommand(1);
    long long cell_r = 8, seg_budget = 100000;
    bool seg_exhaustive = false;
    auto* c_sample = cells_cmd->add_subcommand("sample", "Bernoulli r/n line selection");
    c_sample->add_option("--in", in_path)->required();
    c_sample->add_option("--r", cell_r)->required();
    add_common(c_sample, C);
    c_sample->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Selection s = sample(cfg, cell_r, C.seed);
        ctx.emit({{"chosen", s.chosen},
                  {"count", s.chosen.size()},
                  {"rate", s.rate().str()},
                  {"size_ok", s.size_ok()}});
    });
    auto* c_audit = cells_cmd->add_subcommand("audit", "acceptability events for a selection");
    c_audit->add_option("--in", in_path)->required();
    c_audit->add_option("--r", cell_r)->required();
    c_audit->add_option("--segment-budget", seg_budget);
    c_audit->add_flag("--exhaustive-segments", seg_exhaustive, "all vertex pairs (quartic)");
    add_common(c_audit, C);
    c_audit->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Selection s = sample(cfg, cell_r, C.seed);
        AcceptabilityReport r = audit(cfg, s, C.slack(), seg_budget, seg_exhaustive);
        ctx.emit({{"window", r.window},
                  {"gap_checked", r.gap_checked},
                  {"gap_violated", r.gap_violated},
                  {"vertical_checked", r.vertical_checked},
                  {"vertical_violated", r.vertical_violated},
                  {"segment_checked", r.segment_checked},
                  {"segment_violated", r.segment_violated},
                  {"size_ok", r.size_ok}});
    });
    auto* c_dec = cells_cmd->add_subcommand("decompose", "funnel cells of a selection");
    c_dec->add_option("--in", in_path)->required();
    c_dec->add_option("--r", cell_r)->required();
    add_common(c_dec, C);
    c_dec->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        json j = cells_report(pr.cells);
        j["max_lines_entering"] = pr.max_lines_entering;
        j["entering_bound"] = pr.entering_bound;
        j["funnels"] = pr.funnel_count;
        j["shear"] = pr.shear.str();
        ctx.emit(j);
    });
    auto* c_nice = cells_cmd->add_subcommand("nice-refine", "drop points in many-sided cells");
    c_nice->add_option("--in", in_path)->required();
    c_nice->add_option("--r", cell_r)->required();
    add_common(c_nice, C);
    c_nice->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        Selection sel = sample(cfg, cell_r, C.seed);
        NiceRefineResult nr = nice_refine(cfg, sel, C.slack());
        json j = cells_report(nr.cells);
        j["side_cap"] = nr.side_cap;
        j["points_before"] = nr.points_before;
        j["points_after"] = nr.points_after;
        j["retained_at_least_half"] = 2 * nr.points_after >= nr.points_before;
        j["cell_point_cap"] = nr.cell_point_cap;
        j["max_cell_points"] = nr.max_cell_points;
        ctx.emit(j);
    });

    auto* ref = app.add_subcommand("refine", "the refinement chain over random cells");
    ref->require_subcommand(1);
    auto add_refine_common = [&](CLI::App* sub) {
        sub->add_option("--in", in_path)->required();
        sub->add_option("--r", cell_r)->required();
        add_common(sub, C);
    };
    auto* r1 = ref->add_subcommand("r1", "drop points of over-full cells");
    add_refine_common(r1);
    r1->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        Refine1Result res = refine1(cfg, pr.cells, C.slack());
        ctx.emit({{"trace", trace_to_json(res.trace)},
                  {"retained_fraction", res.retained_incidence_fraction.str()},
                  {"points_after", res.config.points.size()},
                  {"cells", cells_report(res.cells)}});
    });
    auto* r2 = ref->add_subcommand("r2", "drop lines visiting few cells");
    add_refine_common(r2);
    r2->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        Refine2Result res = refine2(cfg, pr.cells, C.slack());
        ctx.emit({{"trace", trace_to_json(res.trace)},
                  {"kept_lines", res.kept_lines},
                  {"retained_fraction", res.retained_incidence_fraction.str()}});
    });
    auto* r3 = ref->add_subcommand("r3", "two-sided incidence subset J");
    add_refine_common(r3);
    r3->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        Refine3Result res = refine3(cfg, pr.cells, C.slack());
        ctx.emit({{"trace", trace_to_json(res.trace)},
                  {"J_size", res.partial.J.size()},
                  {"I_size", res.partial.parent_size},
                  {"multiplicity_cap", res.multiplicity_cap},
                  {"precondition_ok", res.precondition_ok}});
    });
    auto* rs = ref->add_subcommand("structured", "per-cell structured line sets");
    add_refine_common(rs);
    rs->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        Refine3Result res = refine3(cfg, pr.cells, C.slack());
        auto cells = structured_cells(cfg, pr.cells, res.partial.J, C.slack());
        if (C.format == "csv") {
            std::ostringstream os;
            os << "cell_id,members,lines,structuring,success,density\n";
            for (const auto& sc : cells)
                os << sc.cell << "," << sc.members.size() << "," << sc.lines.size() << ","
                   << sc.structuring.points.size() << "," << (sc.structuring.success ? 1 : 0)
                   << "," << sc.density.str() << "\n";
            ctx.emit_text(os.str());
            return;
        }
        json arr = json::array();
        for (const auto& sc : cells)
            arr.push_back({{"cell", sc.cell},
                           {"members", sc.members.size()},
                           {"lines", sc.lines.size()},
                           {"structuring_points", sc.structuring.points.size()},
                           {"success", sc.structuring.success},
                           {"density", sc.density.str()}});
        ctx.emit({{"cells", arr}});
    });

    auto* cross = app.add_subcommand("cross", "segment crossing counts");
    cross->require_subcommand(1);
    std::string graph_path, box_spec;
    auto* cr_count = cross->add_subcommand("count", "exact crossings of a segment multigraph");
    cr_count->add_option("--graph", graph_path)->required();
    add_common(cr_count, C);
    cr_count->callback([&] {
        ctx.manifest.input_digests.push_back({graph_path, digest_file(graph_path)});
        SegmentGraph g = graph_from_json(json::parse(read_file(graph_path)));
        CrossingCount cc = count_crossings(g);
        ctx.emit({{"crossings", cc.crossings},
                  {"collinear_overlaps", cc.collinear_overlaps},
                  {"v", g.v()},
                  {"e", g.e()}});
    });
    auto* cr_lb = cross->add_subcommand("lb-margin", "crossings over c*e^3/v^2");
    cr_lb->add_option("--graph", graph_path)->required();
    add_common(cr_lb, C);
    cr_lb->callback([&] {
        ctx.manifest.input_digests.push_back({graph_path, digest_file(graph_path)});
        SegmentGraph g = graph_from_json(json::parse(read_file(graph_path)));
        auto m = crossing_lb_margin(g, C.slack());
        json j{{"v", g.v()}, {"e", g.e()}};
        if (m) {
            j["margin"] = m->str();
            j["margin_decimal"] = m->to_double();
        } else {
            j["margin"] = "not-applicable";
        }
        ctx.emit(j);
    });
    auto* cr_reg = cross->add_subcommand("region", "line pairs meeting inside a box");
    cr_reg->add_option("--in", in_path)->required();
    cr_reg->add_option("--box", box_spec, "xlo,xhi,ylo,yhi rationals")->required();
    add_common(cr_reg, C);
    cr_reg->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        std::vector<Rat> v;
        std::string rest = box_spec;
        for (int i = 0; i < 4; ++i) {
            auto c = rest.find(',');
            v.push_back(Rat::from_string(rest.substr(0, c)));
            if (c != std::string::npos) rest = rest.substr(c + 1);
        }
        ConvexRegion box{{{Line::canon(Rat(1), Rat(0), -v[0]), 1},
                          {Line::canon(Rat(1), Rat(0), -v[1]), -1},
                          {Line::canon(Rat(0), Rat(1), -v[2]), 1},
                          {Line::canon(Rat(0), Rat(1), -v[3]), -1}}};
        ctx.emit({{"crossings_inside", crossings_in_region(cfg.lines, box)}});
    });

    auto* bush_cmd = app.add_subcommand("bush", "bushes, sectors, and the double bush");
    bush_cmd->require_subcommand(1);
    int opt_p = -1, opt_p1 = -1, opt_p2 = -1, opt_sector = 0;
    long long opt_budget = 10000;
    auto* b_build = bush_cmd->add_subcommand("build", "ordered bush at a point");
    b_build->add_option("--in", in_path)->required();
    b_build->add_option("--p", opt_p, "center point id; ranked by richness when omitted");
    add_common(b_build, C);
    b_build->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        int p = opt_p >= 0 ? opt_p : ranked_point(cfg, I);
        Bush b = build_bush(cfg, p, I);
        ctx.emit({{"center", b.center}, {"lines", b.lines}, {"M", b.size()}});
    });
    auto* b_sec = bush_cmd->add_subcommand("sectors", "sector membership and structuring lines");
    b_sec->add_option("--in", in_path)->required();
    b_sec->add_option("--p", opt_p);
    add_common(b_sec, C);
    b_sec->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        int p = opt_p >= 0 ? opt_p : ranked_point(cfg, I);
        Bush b = build_bush(cfg, p, I);
        SectorSet ss = sectors(cfg, b, C.slack());
        if (C.format == "csv") {
            std::ostringstream os;
            os << "sector,members,structuring_lines,covered_twice\n";
            for (const auto& s : ss.sectors)
                os << s.index << "," << s.members.size() << "," << s.structuring_lines.size()
                   << "," << s.covered_twice << "\n";
            ctx.emit_text(os.str());
            return;
        }
        json arr = json::array();
        for (const auto& s : ss.sectors)
            arr.push_back({{"index", s.index},
                           {"members", s.members.size()},
                           {"structuring_lines", s.structuring_lines},
                           {"covered_twice", s.covered_twice}});
        ctx.emit({{"center", p},
                  {"sectors", arr},
                  {"boundary_points", ss.boundary_points.size()},
                  {"structuring_cap", ss.structuring_cap}});
    });
    auto* b_fs = bush_cmd->add_subcommand("fastslow", "crossing classes inside a sector");
    b_fs->add_option("--in", in_path)->required();
    b_fs->add_option("--p", opt_p);
    b_fs->add_option("--sector", opt_sector);
    add_common(b_fs, C);
    b_fs->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        int p = opt_p >= 0 ? opt_p : ranked_point(cfg, I);
        Bush b = build_bush(cfg, p, I);
        SectorSet ss = sectors(cfg, b, C.slack());
        auto table = classify_fast_slow(cfg, b, ss.sectors.at(opt_sector), I, C.slack());
        json arr = json::array();
        for (const auto& e : table)
            arr.push_back({{"line", e.line},
                           {"crossings", e.crossings_inside},
                           {"slow", e.slow},
                           {"alpha", e.alpha.str()}});
        ctx.emit({{"sector", opt_sector}, {"table", arr}});
    });
    auto* b_db = bush_cmd->add_subcommand("double", "double-bush cell partition");
    b_db->add_option("--in", in_path)->required();
    b_db->add_option("--p1", opt_p1);
    b_db->add_option("--p2", opt_p2);
    add_common(b_db, C);
    b_db->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        int p1 = opt_p1, p2 = opt_p2;
        if (p1 < 0 || p2 < 0) {
            ExtractResult ex = extract_params(cfg, I, C.slack(), C.seed);
            p1 = ex.p1;
            p2 = ex.p2;
        }
        DoubleBushResult db = double_bush(cfg, p1, p2, I, C.slack());
        json keys = json::array();
        for (auto [s1, s2] : db.cell_key) keys.push_back({s1, s2});
        json j = cells_report(db.cells);
        j["p1"] = p1;
        j["p2"] = p2;
        j["M1"] = db.bush1.size();
        j["M2"] = db.bush2.size();
        j["cell_keys"] = keys;
        j["cell_point_cap"] = db.cell_point_cap;
        j["max_cell_points"] = db.max_cell_points;
        j["lines_per_p1_sector"] = db.lines_per_p1_sector;
        j["line_floor"] = db.line_floor;
        ctx.emit(j);
    });
    auto* b_mix = bush_cmd->add_subcommand("mixing", "shared-line stats over cell pairs");
    b_mix->add_option("--in", in_path)->required();
    b_mix->add_option("--p1", opt_p1);
    b_mix->add_option("--p2", opt_p2);
    b_mix->add_option("--budget", opt_budget);
    add_common(b_mix, C);
    b_mix->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        int p1 = opt_p1, p2 = opt_p2;
        if (p1 < 0 || p2 < 0) {
            ExtractResult ex = extract_params(cfg, I, C.slack(), C.seed);
            p1 = ex.p1;
            p2 = ex.p2;
        }
        DoubleBushResult db = double_bush(cfg, p1, p2, I, C.slack());
        MixingStats ms = mixing_stats(cfg, db, I, C.slack(), opt_budget, C.seed);
        json hist;
        for (auto [shared, cnt] : ms.shared_histogram) hist[std::to_string(shared)] = cnt;
        ctx.emit({{"pairs_sampled", ms.pairs_sampled},
                  {"pairs_meeting_threshold", ms.pairs_meeting_threshold},
                  {"threshold", ms.threshold},
                  {"shared_histogram", hist}});
    });
    auto* b_org = bush_cmd->add_subcommand("organizing", "interval structure of organizing lines");
    b_org->add_option("--in", in_path)->required();
    b_org->add_option("--r", cell_r);
    add_common(b_org, C);
    b_org->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        OrganizingReport rep = organizing_report(cfg, pr.cells, I, C.slack());
        json lines = json::array();
        for (const auto& ol : rep.lines) {
            json ivs = json::array();
            for (const auto& iv : ol.intervals)
                ivs.push_back({{"lo", iv.point_lo},
                               {"hi", iv.point_hi},
                               {"crossing_lines", iv.crossing_lines},
                               {"structured", iv.structured}});
            lines.push_back({{"line", ol.line},
                             {"qualifying_cells", ol.qualifying_cells},
                             {"intervals", ivs}});
        }
        ctx.emit({{"organizing_lines", lines},
                  {"cell_floor", rep.cell_floor},
                  {"crossing_target", rep.crossing_target}});
    });

    auto* rec = app.add_subcommand("recipe", "the O(N^(1/3))-parameter construction");
    rec->require_subcommand(1);
    std::string params_path;
    auto* rc_run = rec->add_subcommand("run", "execute the staged construction");
    rc_run->add_option("--params", params_path)->required();
    add_common(rc_run, C);
    rc_run->callback([&] {
        ctx.manifest.input_digests.push_back({params_path, digest_file(params_path)});
        RecipeParams p = recipe_params_from_json(json::parse(read_file(params_path)));
        RecipeOutcome out = run_recipe(p, C.slack());
        json j;
        j["success"] = out.success;
        if (out.failed_stage) j["failed_stage"] = to_string(*out.failed_stage);
        j["trace"] = {{"strip_pairs", out.trace.strip_pairs},
                      {"strip_threshold", out.trace.strip_threshold},
                      {"row_counts", out.trace.row_counts},
                      {"row_count_lo", out.trace.row_count_lo},
                      {"row_count_hi", out.trace.row_count_hi},
                      {"rows_needed", out.trace.rows_needed},
                      {"good_rows", out.trace.good_rows},
                      {"line_count", out.trace.line_count},
                      {"cells_needed", out.trace.cells_needed},
                      {"qualifying_cells", out.trace.qualifying_cells},
                      {"structured_cells", out.trace.structured_cells},
                      {"structuring_cap", out.trace.structuring_cap},
                      {"first_strip_points", out.trace.first_strip_points},
                      {"structuring_points", out.trace.structuring_points}};
        if (out.success) j["output"] = config_to_json(out.output);
        ctx.emit(j);
        if (!out.success) exit_code = 2;
    });
    auto* rc_ex = rec->add_subcommand("extract", "parameters from a configuration");
    long long opt_thin = 1;
    rc_ex->add_option("--in", in_path)->required();
    rc_ex->add_option("--p1", opt_p1, "override the ranked first organizing point");
    rc_ex->add_option("--p2", opt_p2, "override the ranked second organizing point");
    rc_ex->add_option("--thin", opt_thin, "keep every t-th bush line before extraction");
    add_common(rc_ex, C);
    rc_ex->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        ExtractResult ex = extract_params(cfg, I, C.slack(), C.seed, opt_p1, opt_p2, opt_thin);
        json j = recipe_params_to_json(ex.params);
        j["map"] = map_to_json(ex.map)["matrix"];
        j["p1"] = ex.p1;
        j["p2"] = ex.p2;
        j["first_sector"] = ex.first_sector;
        j["reflected"] = ex.reflected;
        j["structuring_line_ids"] = ex.structuring_line_ids;
        ctx.emit(j);
    });
    auto* rc_ver = rec->add_subcommand("verify", "intersect the mapped input with the output");
    rc_ver->add_option("--in", in_path)->required();
    rc_ver->add_option("--params", params_path, "extract output (params with embedded map)")
        ->required();
    add_common(rc_ver, C);
    rc_ver->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        ctx.manifest.input_digests.push_back({params_path, digest_file(params_path)});
        json pj = json::parse(read_file(params_path));
        RecipeParams p = recipe_params_from_json(pj);
        ProjectiveMap map = pj.contains("map") ? map_from_json(json{{"matrix", pj["map"]}})
                                               : ProjectiveMap::identity();
        IncidenceSet I = incidences(cfg);
        try {
            ProtoInverseReport rep = verify_protoinverse(cfg, I, map, p, C.slack());
            ctx.emit({{"lines_common", rep.lines_common},
                      {"points_common", rep.points_common},
                      {"incidences_common", rep.incidences_common},
                      {"j_retention", rep.j_retention.str()},
                      {"lines_floor_ok", rep.lines_floor_ok},
                      {"points_floor_ok", rep.points_floor_ok},
                      {"incidences_floor_ok", rep.incidences_floor_ok}});
        } catch (const recipe_failed&) {
            RecipeOutcome out = run_recipe(p, C.slack());
            ctx.emit({{"error", "recipe failed"},
                      {"failed_stage", out.failed_stage ? to_string(*out.failed_stage) : "?"}});
            exit_code = 2;
        }
    });
    auto* rc_dual = rec->add_subcommand("dual-strips", "strips along organizing lines");
    rc_dual->add_option("--in", in_path)->required();
    rc_dual->add_option("--r", cell_r);
    rc_dual->add_option("--budget", opt_budget);
    add_common(rc_dual, C);
    rc_dual->callback([&] {
        Configuration cfg = ctx.load_config(in_path);
        IncidenceSet I = incidences(cfg);
        auto [sel, pr] = pipeline_cells(cfg, cell_r, C.seed, C.slack());
        OrganizingReport orep = organizing_report(cfg, pr.cells, I, C.slack());
        DualStripsReport rep = dual_strips_report(cfg, I, orep, C.slack(), opt_budget, C.seed);
        json strips = json::array();
        for (const auto& s : rep.strips)
            strips.push_back({{"line", s.line},
                              {"interval", s.interval},
                              {"size", s.size},
                              {"in_bracket", s.in_bracket},
                              {"structured", s.structured}});
        json hist;
        for (auto [k2v, v2] : rep.intersection_histogram) hist[std::to_string(k2v)] = v2;
        ctx.emit({{"strips", strips},
                  {"pairs_sampled", rep.pairs_sampled},
                  {"intersections", hist},
                  {"structured_strips", rep.structured_strips}});
    });

    auto* circ = app.add_subcommand("circles", "unit circles centered at the points");
    circ->require_subcommand(1);
    auto* ci_dist = circ->add_subcommand("distances", "exact unit-distance count");
    ci_dist->add_option("--in", in_path)->required();
    add_common(ci_dist, C);
    ci_dist->callback([&] {
        CircleConfig cfg = ctx.load_circles(in_path);
        long long u = unit_distance_count(cfg.points);
        ctx.emit(
            {{"unit_distances", u}, {"circle_incidences", circle_incidences(cfg).size()}});
    });
    auto* ci_cross = circ->add_subcommand("crossings", "arc crossing multigraph");
    ci_cross->add_option("--in", in_path)->required();
    add_common(ci_cross, C);
    ci_cross->callback([&] {
        CircleConfig cfg = ctx.load_circles(in_path);
        std::vector<int> all;
        for (std::size_t i = 0; i < cfg.points.size(); ++i) all.push_back(static_cast<int>(i));
        CircleGraphResult r = circle_crossing_graph(cfg, all, C.slack());
        json j{{"vertices", r.vertices}, {"edges", r.edges}, {"crossings", r.crossings}};
        j["lb_margin"] = r.lb_margin ? json(r.lb_margin->str()) : json("not-applicable");
        ctx.emit(j);
    });
    auto* ci_sec = circ->add_subcommand("sectors", "bush sectors at a point");
    ci_sec->add_option("--in", in_path)->required();
    ci_sec->add_option("--p", opt_p)->required();
    add_common(ci_sec, C);
    ci_sec->callback([&] {
        CircleConfig cfg = ctx.load_circles(in_path);
        CircleBush b = build_circle_bush(cfg, opt_p);
        std::vector<long long> counts(b.circles.size(), 0);
        long long boundary = 0, unassigned = 0;
        for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
            if (static_cast<int>(pi) == opt_p) continue;
            bool onb = false;
            for (int c : b.circles)
                if (disk_membership(cfg.points[pi], cfg.points[c]) == DiskSide::On) onb = true;
            if (onb) {
                ++boundary;
                continue;
            }
            auto s = circle_sector_of(cfg, b, cfg.points[pi]);
            if (s)
                ++counts[*s];
            else
                ++unassigned;
        }
        if (C.format == "csv") {
            std::ostringstream os;
            os << "sector,members\n";
            for (std::size_t i = 0; i < counts.size(); ++i) os << i << "," << counts[i] << "\n";
            os << "boundary," << boundary << "\nunassigned," << unassigned << "\n";
            ctx.emit_text(os.str());
            return;
        }
        ctx.emit({{"center", opt_p},
                  {"M", b.circles.size()},
                  {"sector_counts", counts},
                  {"boundary", boundary},
                  {"unassigned", unassigned}});
    });
    auto* ci_db = circ->add_subcommand("double-bush", "two-bush cell partition");
    ci_db->add_option("--in", in_path)->required();
    ci_db->add_option("--p1", opt_p1)->required();
    ci_db->add_option("--p2", opt_p2)->required();
    add_common(ci_db, C);
    ci_db->callback([&] {
        CircleConfig cfg = ctx.load_circles(in_path);
        CircleDoubleBushResult db = circle_double_bush_partition(cfg, opt_p1, opt_p2, C.slack());
        json keys = json::array();
        for (auto [s1, s2] : db.cell_key) keys.push_back({s1, s2});
        json sizes = json::array();
        for (const auto& cell : db.cells) sizes.push_back(cell.size());
        ctx.emit({{"M1", db.bush1.circles.size()},
                  {"M2", db.bush2.circles.size()},
                  {"cells", db.cells.size()},
                  {"cell_sizes", sizes},
                  {"cell_keys", keys},
                  {"boundary", db.boundary_points.size()},
                  {"unassigned", db.unassigned_points.size()},
                  {"cell_point_cap", db.cell_point_cap},
                  {"max_cell_points", db.max_cell_points}});
    });

    auto* ren = app.add_subcommand("render", "figures (decimal precision, render-only)");
    ren->require_subcommand(1);
    bool as_circles = false;
    auto* ren_svg = ren->add_subcommand("svg", "arrangement or circle figure");
    ren_svg->add_option("--in", in_path)->required();
    ren_svg->add_flag("--circles", as_circles, "treat the input as a circle configuration");
    add_common(ren_svg, C);
    ren_svg->callback([&] {
        if (as_circles) {
            CircleConfig cfg = ctx.load_circles(in_path);
            ctx.emit_text(circles_svg(cfg));
            return;
        }
        Configuration cfg = ctx.load_config(in_path);
        Arrangement a = Arrangement::build(cfg.lines);
        ctx.emit_text(arrangement_svg(a, cfg.points));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

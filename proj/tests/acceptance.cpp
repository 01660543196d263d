// acceptance suite: one measurable criterion per invocation, exact thresholds
// pinned in code, one PASS/FAIL line each. Run `acceptance --criterion N` or
// without arguments for the whole battery.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stw/bush.hpp"
#include "stw/circles.hpp"
#include "stw/crossings.hpp"
#include "stw/io.hpp"
#include "stw/recipe.hpp"
#include "stw/refinement.hpp"

using namespace stw;
using nlohmann::json;

#ifndef STW_CLI_PATH
#define STW_CLI_PATH "stw"
#endif

namespace {

int failures = 0;

void verdict(int n, bool ok, const std::string& what) {
    std::printf("criterion %d: %s - %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

std::mt19937_64 rng(20240817);

Rat rnd_rat(long long span, long long den) {
    return Rat(static_cast<long long>(rng() % (2 * span * den + 1)) - span * den, den);
}

std::vector<Line> random_generic_lines(int r, long long span) {
    std::vector<Line> out;
    while (static_cast<int>(out.size()) < r) {
        Line cand = Line::canon(rnd_rat(span, 7), Rat(-1), rnd_rat(span, 7));
        bool ok = true;
        for (const auto& l : out)
            if (l == cand || meet(l, cand).at_infinity()) ok = false;
        for (std::size_t i = 0; ok && i < out.size(); ++i)
            for (std::size_t j = i + 1; ok && j < out.size(); ++j) {
                HPoint m = meet(out[i], out[j]);
                if (!m.at_infinity() && cand.contains(m.affine())) ok = false;
            }
        if (ok) out.push_back(cand);
    }
    return out;
}

// ---------- 1: grid exactness ----------
void criterion1() {
    bool ok = true;
    std::ostringstream note;
    for (long long k = 1; k <= 10; ++k) {
        Configuration g = generate_grid(k);
        IncidenceSet I = incidences(g);
        long long brute = 0;
        for (const auto& l : g.lines)
            for (const auto& p : g.points)
                if (l.contains(p)) ++brute;
        bool here = static_cast<long long>(g.lines.size()) == k * k * k &&
                    static_cast<long long>(g.points.size()) == k * (2 * k * k - 1) &&
                    static_cast<long long>(I.size()) == k * k * k * k && brute == k * k * k * k;
        if (!here) {
            ok = false;
            note << " k=" << k << " mismatch";
        }
    }
    verdict(1, ok, "grid(k) has k^3 lines, k(2k^2-1) points, k^4 incidences vs brute force, k=1..10" +
                       note.str());
}

// ---------- 2: arrangement combinatorics ----------
void criterion2() {
    bool ok = true;
    std::ostringstream note;
    for (int t = 0; t < 30; ++t) {
        int r = 3 + static_cast<int>(rng() % 48);  // <= 50
        auto lines = random_generic_lines(r, 25);
        Arrangement a = Arrangement::build(lines);
        long long rc2 = static_cast<long long>(r) * (r - 1) / 2;
        if (static_cast<long long>(a.vertex_count()) != rc2 ||
            static_cast<long long>(a.face_count()) != 1 + r + rc2 || !a.euler_ok()) {
            ok = false;
            note << " counts(r=" << r << ")";
            continue;
        }
        FunnelDecomposition fd = funnelize(a);
        for (std::size_t f = 0; f < a.face_count(); ++f) {
            for (int tr : fd.by_face[f])
                if (fd.trapezoids[tr].sides > 4) ok = false;
            if (!a.faces()[f].bounded) continue;
            Rat sum(0);
            for (int tr : fd.by_face[f]) sum += fd.area(tr);
            if (sum != a.face_area(static_cast<FaceId>(f))) {
                ok = false;
                note << " area(r=" << r << ",f=" << f << ")";
            }
        }
    }
    verdict(2, ok,
            "30 random generic arrangements (r<=50): vertices=C(r,2), faces=1+r+C(r,2), Euler, "
            "funnels partition faces with <=4 sides" +
                note.str());
}

// ---------- 3: crossing oracle equivalence ----------
void criterion3() {
    bool ok = true;
    std::ostringstream note;
    long long margin_checked = 0;
    for (int t = 0; t < 100; ++t) {
        int v = 4 + static_cast<int>(rng() % 37);
        long long max_e = std::min<long long>(400, static_cast<long long>(v) * (v - 1) / 2);
        long long e = 10 + static_cast<long long>(rng() % 391);
        e = std::min(e, max_e);
        SegmentGraph g;
        std::set<std::pair<long long, long long>> seen;
        while (static_cast<int>(g.vertices.size()) < v) {
            long long x = static_cast<long long>(rng() % 80) - 40;
            long long y = static_cast<long long>(rng() % 80) - 40;
            if (seen.insert({x, y}).second) g.vertices.push_back({Rat(x), Rat(y)});
        }
        // distinct vertex pairs: the crossing bound assumes bounded multiplicity
        std::set<std::pair<int, int>> pairs;
        while (static_cast<long long>(pairs.size()) < e) {
            int a = static_cast<int>(rng() % v), b = static_cast<int>(rng() % v);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (pairs.insert({a, b}).second)
                g.edges.push_back({a, b, static_cast<int>(rng() % 5)});
        }
        // sparse graphs also exercise duplicate multigraph edges (margin not in play)
        if (10 * v > static_cast<long long>(g.edges.size()))
            for (int d = 0; d < 4 && !g.edges.empty(); ++d)
                g.edges.push_back(g.edges[rng() % g.edges.size()]);
        CrossingCount fast = count_crossings(g);
        // the quadratic oracle, no pruning
        CrossingCount slow;
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
                const auto& e1 = g.edges[i];
                const auto& e2 = g.edges[j];
                if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
                const Point2 &a0 = g.vertices[e1.a], &a1 = g.vertices[e1.b];
                const Point2 &b0 = g.vertices[e2.a], &b1 = g.vertices[e2.b];
                int o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
                int o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
                if (o1 * o2 < 0 && o3 * o4 < 0) ++slow.crossings;
            }
        if (fast.crossings != slow.crossings) {
            ok = false;
            note << " oracle-mismatch(t=" << t << ")";
        }
        SlackParams sp;
        auto m = crossing_lb_margin(g, sp);
        if (m) {
            ++margin_checked;
            if (*m < Rat(1)) {
                ok = false;
                note << " margin<1(t=" << t << ")";
            }
        }
    }
    // convex-position complete graphs
    for (int n = 4; n <= 14; ++n) {
        SegmentGraph g;
        for (int i = 0; i < n; ++i) {
            Rat t(i + 1, n + 1);
            Rat d = Rat(1) + t * t;
            g.vertices.push_back({(Rat(1) - t * t) / d, Rat(2) * t / d});
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, -1});
        long long want = static_cast<long long>(n) * (n - 1) * (n - 2) * (n - 3) / 24;
        if (count_crossings(g).crossings != want) {
            ok = false;
            note << " K" << n;
        }
    }
    std::ostringstream what;
    what << "count_crossings matches the quadratic oracle on 100 multigraphs; convex K_n = "
            "C(n,4) for n<=14; lb margin >= 1 at c=1/64 on "
         << margin_checked << " dense graphs" << note.str();
    verdict(3, ok, what.str());
}

// ---------- 4: refinement contracts ----------
void criterion4() {
    SlackParams sp;
    Configuration g = generate_grid(6);
    long long cap = ceil_pow(g.N, Rat(sp.k, 1) * sp.epsilon);
    long long r = ceil_pow(g.N, Rat(1, 3));
    int retained_ok = 0;
    bool window_ok = true;
    int seeds_run = 0;
    for (std::uint64_t seed = 0; seeds_run < 10; ++seed) {
        Selection sel = sample(g, r, seed);
        if (sel.chosen.empty()) continue;
        ++seeds_run;
        ProvisionalResult pr = provisional_decomposition(g, sel, sp);
        Refine1Result r1 = refine1(g, pr.cells, sp);
        if (r1.retained_incidence_fraction >= Rat(1, 2)) ++retained_ok;
        Refine3Result r3 = refine3(g, pr.cells, sp);
        std::map<std::pair<int, int>, long long> mult;
        for (auto [li, pi] : r3.partial.J.pairs) {
            int cell = pr.cells.cell_of_point[pi];
            if (cell < 0) window_ok = false;
            ++mult[{li, cell}];
        }
        for (auto& [key, m] : mult)
            if (m < 2 || m > cap) window_ok = false;
    }
    std::ostringstream what;
    what << "grid(6), 10 seeds: J multiplicities in [2," << cap << "] exhaustively ("
         << (window_ok ? "yes" : "no") << "); refine1 kept >=50% incidences in " << retained_ok
         << "/10 seeds (need >=8)";
    verdict(4, window_ok && retained_ok >= 8, what.str());
}

// ---------- 5: acceptability audit ----------
void criterion5() {
    SlackParams sp;
    Configuration g = generate_grid(8);
    long long r = ceil_pow(g.N, Rat(1, 3));
    long long n = static_cast<long long>(g.lines.size());
    int in_band = 0, under_10r = 0;
    auto orders = crossing_orders(g);
    long long W = gap_window(sp.c_gap, n, r);
    long long gap_checked = 0, gap_violated = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Selection sel = sample(g, r, seed);
        long long c = static_cast<long long>(sel.chosen.size());
        if (2 * c >= r && c <= 2 * r) ++in_band;
        if (c <= 10 * r) ++under_10r;
        std::vector<char> mask(g.lines.size(), 0);
        for (int li : sel.chosen) mask[li] = 1;
        for (const auto& ord : orders) {
            auto [checked, violated] = gap_events_for_order(ord, mask, W);
            gap_checked += checked;
            gap_violated += violated;
        }
    }
    std::ostringstream what;
    what << "grid(8), r=" << r << ", 100 seeds: |chosen| in [r/2,2r] " << in_band
         << "/100 (need >=95); |chosen| <= 10r " << under_10r
         << "/100 (need 100); gap windows W=" << W << " violated " << gap_violated << "/"
         << gap_checked;
    verdict(5, in_band >= 95 && under_10r == 100, what.str());
}

// ---------- 6: recipe round trip ----------
void criterion6() {
    SlackParams sp;
    Configuration g = generate_grid(6);
    IncidenceSet I = incidences(g);
    std::ostringstream what;
    bool ok = false;
    try {
        ExtractResult ex = extract_params(g, I, sp, 1);
        RecipeOutcome out = run_recipe(ex.params, sp);
        what << "grid(6) extract -> run: ";
        if (out.success) {
            ProtoInverseReport rep = verify_protoinverse(g, I, ex.map, ex.params, sp);
            Rat half(1, 2);
            ok = rep.j_retention >= half;
            what << "Success, retention " << rep.j_retention.str();
        } else {
            what << "failed at " << to_string(*out.failed_stage) << "; trace: strip_pairs="
                 << out.trace.strip_pairs << " (need " << out.trace.strip_threshold
                 << "), good_rows=" << out.trace.good_rows << " (need "
                 << out.trace.rows_needed << ", counts in [" << out.trace.row_count_lo << ","
                 << out.trace.row_count_hi
                 << "]). Desk-scale witness: the first-strip crossings concentrate in one "
                    "sector row, and the cell-count stage is unreachable regardless: the "
                    "double-bush grid has (M1-1)*(M2-1) = "
                 << (ex.params.a.size() - 1) * (ex.params.b.size() - 1)
                 << " bounded cells versus the " << out.trace.cells_needed
                 << " qualifying cells required at this epsilon (still 32 at the loosest "
                    "admissible epsilon = 1/10)";
        }
    } catch (const std::exception& e) {
        what << "exception: " << e.what();
    }
    verdict(6, ok, what.str());
}

// ---------- 7: recipe failure staging ----------
void criterion7() {
    std::string dir = "acceptance_work";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        verdict(7, false, "workspace setup failed");
        return;
    }
    // parallel structuring lines
    RecipeParams par;
    par.N = 432;
    par.a = {Rat(0), Rat(1), Rat(2)};
    par.b = {Rat(0), Rat(1), Rat(2)};
    for (int i = 0; i < 12; ++i) par.ls.push_back(Line::canon(Rat(0), Rat(1), Rat(-3 * i)));
    write_file(dir + "/parallel.json", recipe_params_to_json(par).dump(2));
    // one-row pencil
    RecipeParams pen;
    pen.N = 432;
    pen.a = {Rat(-1), Rat(1), Rat(3)};
    pen.b = {Rat(-100), Rat(0), Rat(100), Rat(200)};
    for (int i = 0; i < 24; ++i)
        pen.ls.push_back(
            line_through({Rat(0), Rat(50) + Rat(i, 1000)}, {Rat(1), Rat(50 - 3 * i)}));
    write_file(dir + "/pencil.json", recipe_params_to_json(pen).dump(2));

    auto run_cli = [&](const std::string& args, const std::string& outfile) {
        std::string cmd = std::string(STW_CLI_PATH) + " " + args + " --out " + outfile;
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    int code1 = run_cli("recipe run --params " + dir + "/parallel.json", dir + "/par_out.json");
    int code2 = run_cli("recipe run --params " + dir + "/pencil.json", dir + "/pen_out.json");
    bool ok = true;
    std::ostringstream what;
    json j1 = json::parse(read_file(dir + "/par_out.json"));
    json j2 = json::parse(read_file(dir + "/pen_out.json"));
    if (code1 != 2 || j1["failed_stage"] != "StripCrossings" || !j1.contains("trace")) ok = false;
    if (code2 != 2 || j2["failed_stage"] != "RowBuckets" || !j2.contains("trace")) ok = false;
    what << "parallel input: exit " << code1 << ", stage "
         << j1.value("failed_stage", std::string("?")) << "; pencil input: exit " << code2
         << ", stage " << j2.value("failed_stage", std::string("?"))
         << "; reports emitted with full traces";
    verdict(7, ok, what.str());
}

// ---------- 8: unit distance exactness ----------
void criterion8() {
    bool ok = true;
    std::ostringstream note;
    for (int n = 2; n <= 12; ++n) {
        std::vector<Point2> pts;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) pts.push_back({Rat(x), Rat(y)});
        long long brute = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (squared_distance(pts[i], pts[j]) == Rat(1)) ++brute;
        long long fast = unit_distance_count(pts);
        CircleConfig cfg = CircleConfig::make(pts, n * n);
        long long inc = static_cast<long long>(circle_incidences(cfg).size());
        if (fast != 2LL * n * (n - 1) || brute != fast || inc != 2 * fast) {
            ok = false;
            note << " n=" << n;
        }
    }
    verdict(8, ok, "n x n grids give 2n(n-1) unit distances vs brute force, incidences double "
                   "them, n=2..12" + note.str());
}

// ---------- 9: circle duality equivalence ----------
void criterion9() {
    auto circle_point = [](const Point2& q0, const Rat& t) {
        Rat d = Rat(1) + t * t;
        return Point2{q0.x + (Rat(1) - t * t) / d, q0.y + Rat(2) * t / d};
    };
    int done = 0, agree = 0;
    while (done < 1000) {
        Point2 q0{rnd_rat(3, 7), rnd_rat(3, 7)};
        Rat t1 = rnd_rat(4, 9), t2 = rnd_rat(4, 9);
        if (t1 == t2) continue;
        Point2 qi = circle_point(q0, t1), qi1 = circle_point(q0, t2);
        Point2 p{rnd_rat(3, 7), rnd_rat(3, 7)};
        if (p == q0) continue;
        SectorSide side = sector_membership_geometric(p, qi, qi1);
        if (side == SectorSide::Boundary) continue;
        if (squared_distance(p, q0) == Rat(4)) continue;  // tangency is a touch, not a crossing
        int crossings = arc_crossing_count(p, ArcSpec{q0, qi, qi1});
        if ((side == SectorSide::In) == (crossings == 1)) ++agree;
        ++done;
    }
    std::ostringstream what;
    what << "sector membership <=> exactly one arc crossing on " << agree
         << "/1000 exact rational instances (need 1000)";
    verdict(9, agree == 1000, what.str());
}

// ---------- 10: determinism ----------
void criterion10() {
    std::string dir = "acceptance_work";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        verdict(10, false, "workspace setup failed");
        return;
    }
    auto cli = [&](const std::string& args) {
        std::string cmd = std::string(STW_CLI_PATH) + " " + args;
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    cli("generate grid --k 4 --out " + dir + "/det_g.json");
    json cj;
    cj["N"] = 25;
    cj["points"] = json::array();
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            cj["points"].push_back({std::to_string(x), std::to_string(y)});
    write_file(dir + "/det_c.json", cj.dump(2));
    std::vector<std::string> invocations = {
        "generate grid --k 4",
        "generate random --lines 15 --points 30 --seed 7",
        "incidence count --in " + dir + "/det_g.json",
        "incidence richness --in " + dir + "/det_g.json --format csv",
        "incidence st-margin --in " + dir + "/det_g.json",
        "arrange build --in " + dir + "/det_g.json",
        "cells sample --in " + dir + "/det_g.json --r 5 --seed 3",
        "cells audit --in " + dir + "/det_g.json --r 5 --seed 3 --segment-budget 200",
        "cells decompose --in " + dir + "/det_g.json --r 5 --seed 3",
        "refine r3 --in " + dir + "/det_g.json --r 5 --seed 3",
        "bush sectors --in " + dir + "/det_g.json",
        "recipe extract --in " + dir + "/det_g.json",
        "circles distances --in " + dir + "/det_c.json",
        "circles crossings --in " + dir + "/det_c.json",
        "render svg --in " + dir + "/det_g.json",
    };
    bool ok = true;
    std::ostringstream note;
    for (std::size_t i = 0; i < invocations.size(); ++i) {
        std::string f1 = dir + "/det_a_" + std::to_string(i) + ".out";
        std::string f2 = dir + "/det_b_" + std::to_string(i) + ".out";
        int c1 = cli(invocations[i] + " --out " + f1);
        // identical command, identical --out path: capture the first run's bytes
        std::string first = read_file(f1);
        int c2 = cli(invocations[i] + " --out " + f1);
        write_file(f2, read_file(f1));
        if (c1 != c2 || first != read_file(f2)) {
            ok = false;
            note << " [" << invocations[i] << "]";
        }
    }
    verdict(10, ok,
            "15 CLI invocations byte-identical across consecutive runs with fixed seeds" +
                note.str());
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i + 1 < argc + 1; ++i)
        if (i + 1 < argc && std::strcmp(argv[i], "--criterion") == 0) which = std::atoi(argv[i + 1]);
    void (*all[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                       criterion6, criterion7, criterion8, criterion9, criterion10};
    if (which >= 1 && which <= 10) {
        all[which - 1]();
    } else {
        for (auto* c : all) c();
    }
    return failures == 0 ? 0 : 1;
}

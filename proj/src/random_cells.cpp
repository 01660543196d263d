#include "stw/random_cells.hpp"

#include <algorithm>
#include <random>

namespace stw {

Selection sample(const Configuration& config, long long r, std::uint64_t seed) {
    long long n = static_cast<long long>(config.lines.size());
    if (r < 1 || n == 0) throw std::invalid_argument("sample: need 1 <= r and nonempty lines");
    Selection s;
    s.seed = seed;
    s.r_target = r;
    s.pool = n;
    std::mt19937_64 rng(seed);
    for (long long i = 0; i < n; ++i) {
        std::uint64_t u = rng();
        // accept iff u / 2^64 < r / n, exactly
        unsigned __int128 lhs = static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(n);
        unsigned __int128 rhs = static_cast<unsigned __int128>(r) << 64;
        if (lhs < rhs) s.chosen.push_back(static_cast<int>(i));
    }
    return s;
}

namespace {

// circular crossing order along `along`: every other line sorted by the meet
// parameter, parallels at the infinity position (by id), concurrent meets by id
std::vector<int> crossing_order(const Configuration& config, int along) {
    const Line& l = config.lines[along];
    Rat ux = l.b, uy = -l.a;
    std::vector<std::pair<std::pair<int, Rat>, int>> keyed;  // ((is_inf, param), id)
    for (std::size_t m = 0; m < config.lines.size(); ++m) {
        if (static_cast<int>(m) == along) continue;
        HPoint h = meet(l, config.lines[m]);
        if (h.at_infinity())
            keyed.push_back({{1, Rat(0)}, static_cast<int>(m)});
        else {
            Point2 q = h.affine();
            keyed.push_back({{0, ux * q.x + uy * q.y}, static_cast<int>(m)});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return a.first.first < b.first.first;
        if (a.first.second != b.first.second) return a.first.second < b.first.second;
        return a.second < b.second;
    });
    std::vector<int> out;
    out.reserve(keyed.size());
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

}  // namespace

std::vector<std::vector<int>> crossing_orders(const Configuration& config) {
    std::vector<std::vector<int>> out;
    out.reserve(config.lines.size());
    for (std::size_t li = 0; li < config.lines.size(); ++li)
        out.push_back(crossing_order(config, static_cast<int>(li)));
    return out;
}

std::pair<long long, long long> gap_events_for_order(const std::vector<int>& order,
                                                     const std::vector<char>& chosen,
                                                     long long W) {
    long long m = static_cast<long long>(order.size());
    if (m == 0) return {0, 0};
    std::vector<long long> chosen_pos;
    for (long long i = 0; i < m; ++i)
        if (chosen[order[i]]) chosen_pos.push_back(i);
    long long violated = 0;
    if (chosen_pos.empty()) {
        violated = m >= W ? m : 1;
        return {m, violated};
    }
    for (std::size_t t = 0; t < chosen_pos.size(); ++t) {
        long long next = chosen_pos[(t + 1) % chosen_pos.size()];
        long long gap = (t + 1 == chosen_pos.size()) ? next + m - chosen_pos[t]
                                                     : next - chosen_pos[t];
        if (gap - 1 >= W) violated += gap - W;
    }
    return {m, violated};
}

std::pair<long long, long long> circular_gap_events(const Configuration& config, int along,
                                                    const std::vector<char>& chosen,
                                                    long long W) {
    return gap_events_for_order(crossing_order(config, along), chosen, W);
}

AcceptabilityReport audit(const Configuration& config, const Selection& sel,
                          const SlackParams& params, long long segment_budget,
                          bool exhaustive_segments) {
    AcceptabilityReport rep;
    long long n = static_cast<long long>(config.lines.size());
    rep.size_ok = sel.size_ok();
    rep.segment_budget = segment_budget;
    if (n < 2) return rep;
    long long W = gap_window(params.c_gap, n, sel.r_target);
    rep.window = W;
    std::vector<char> is_chosen(config.lines.size(), 0);
    for (int c : sel.chosen) is_chosen[c] = 1;

    // (i) circular windows along every line
    for (long long li = 0; li < n; ++li) {
        auto [checked, violated] = circular_gap_events(config, static_cast<int>(li), is_chosen, W);
        rep.gap_checked += checked;
        rep.gap_violated += violated;
    }

    // (ii) vertical order at chosen-pair vertices, one event per side
    for (std::size_t a = 0; a < sel.chosen.size(); ++a)
        for (std::size_t b = a + 1; b < sel.chosen.size(); ++b) {
            const Line& la = config.lines[sel.chosen[a]];
            const Line& lb = config.lines[sel.chosen[b]];
            HPoint h = meet(la, lb);
            if (h.at_infinity()) continue;
            Point2 v = h.affine();
            std::vector<std::pair<Rat, int>> above, below;
            for (std::size_t m = 0; m < config.lines.size(); ++m) {
                const Line& lm = config.lines[m];
                if (lm.vertical()) continue;
                Rat y = lm.y_at(v.x);
                if (y > v.y) above.push_back({y, static_cast<int>(m)});
                else if (y < v.y) below.push_back({-y, static_cast<int>(m)});
            }
            auto side_violates = [&](std::vector<std::pair<Rat, int>>& side) {
                if (side.empty()) return false;  // nothing to select from
                std::sort(side.begin(), side.end(), [](const auto& x, const auto& y) {
                    if (x.first != y.first) return x.first < y.first;
                    return x.second < y.second;
                });
                long long take = std::min<long long>(W, static_cast<long long>(side.size()));
                for (long long i = 0; i < take; ++i)
                    if (is_chosen[side[i].second]) return false;
                return true;
            };
            rep.vertical_checked += 2;
            if (side_violates(above)) ++rep.vertical_violated;
            if (side_violates(below)) ++rep.vertical_violated;
        }

    // (iii) segment events over vertex pairs
    auto check_segment = [&](const Point2& v1, const Point2& v2) {
        if (v1 == v2) return;
        long long crossing = 0;
        bool any_chosen = false;
        for (std::size_t m = 0; m < config.lines.size(); ++m) {
            int s1 = config.lines[m].side(v1);
            int s2 = config.lines[m].side(v2);
            if (s1 * s2 < 0) {
                ++crossing;
                if (is_chosen[m]) any_chosen = true;
            }
        }
        if (crossing >= W) {
            ++rep.segment_checked;
            if (!any_chosen) ++rep.segment_violated;
        }
    };
    if (exhaustive_segments) {
        std::vector<Point2> verts;
        for (std::size_t i = 0; i < config.lines.size(); ++i)
            for (std::size_t j = i + 1; j < config.lines.size(); ++j) {
                HPoint h = meet(config.lines[i], config.lines[j]);
                if (!h.at_infinity()) verts.push_back(h.affine());
            }
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) check_segment(verts[i], verts[j]);
    } else {
        std::mt19937_64 rng(sel.seed ^ 0x5e9a3f1bd2c47e65ULL);
        for (long long t = 0; t < segment_budget; ++t) {
            auto pick_vertex = [&]() -> std::optional<Point2> {
                int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
                if (i == j) return std::nullopt;
                HPoint h = meet(config.lines[i], config.lines[j]);
                if (h.at_infinity()) return std::nullopt;
                return h.affine();
            };
            auto v1 = pick_vertex(), v2 = pick_vertex();
            if (v1 && v2) check_segment(*v1, *v2);
        }
    }
    return rep;
}

void CellDecomposition::rebuild_counts(const Configuration& config, const IncidenceSet& I) {
    points_per_cell.assign(cells.size(), 0);
    lines_per_cell.assign(cells.size(), 0);
    cells_per_line.assign(config.lines.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c)
        points_per_cell[c] = static_cast<long long>(cells[c].size());
    std::vector<std::vector<char>> line_hits(config.lines.size());
    for (auto& v : line_hits) v.assign(cells.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (int pi : cells[c])
            for (int li : I.by_point[pi]) line_hits[li][c] = 1;
    for (std::size_t li = 0; li < config.lines.size(); ++li)
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (line_hits[li][c]) {
                ++cells_per_line[li];
                ++lines_per_cell[c];
            }
}

ProvisionalResult provisional_decomposition(const Configuration& config0, const Selection& sel,
                                            const SlackParams& params) {
    if (sel.chosen.empty())
        throw std::invalid_argument("provisional_decomposition: empty selection");
    ShearResult sheared = shear_avoiding_vertical(config0);
    const Configuration& config = sheared.config;
    std::vector<Line> chosen;
    for (int li : sel.chosen) chosen.push_back(config.lines[li]);
    Arrangement arr = Arrangement::build(chosen);
    FunnelDecomposition fd = funnelize(arr);

    ProvisionalResult res;
    res.shear = sheared.shear;
    CellDecomposition& cd = res.cells;
    cd.source = CellDecomposition::Source::Funnels;
    cd.r_param = sel.r_target;
    cd.cells.assign(fd.trapezoids.size(), {});
    cd.cell_of_point.assign(config.points.size(), -1);
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        const Point2& p = config.points[pi];
        bool on_chosen = false;
        for (const Line& l : chosen)
            if (l.contains(p)) on_chosen = true;
        FaceId f = arr.locate_nudged_up_left(p);
        int t = fd.locate_in_face(f, p);
        cd.cells[t].push_back(static_cast<int>(pi));
        cd.cell_of_point[pi] = t;
        if (on_chosen) cd.boundary_points.push_back(static_cast<int>(pi));
    }
    // drop empty funnels, keep deterministic order
    std::vector<std::vector<int>> packed;
    std::vector<int> remap(cd.cells.size(), -1);
    for (std::size_t t = 0; t < cd.cells.size(); ++t)
        if (!cd.cells[t].empty()) {
            remap[t] = static_cast<int>(packed.size());
            packed.push_back(std::move(cd.cells[t]));
        }
    cd.cells = std::move(packed);
    for (auto& c : cd.cell_of_point)
        if (c >= 0) c = remap[c];
    IncidenceSet I = incidences(config);
    cd.rebuild_counts(config, I);

    // geometric entering-lines count per funnel (all funnels, 1-D feasibility)
    res.funnel_count = static_cast<long long>(fd.trapezoids.size());
    for (const auto& t : fd.trapezoids) {
        long long entering = 0;
        for (const Line& l : config.lines) {
            // constraints along l as linear inequalities in the parameter
            Rat ux = l.b, uy = -l.a;
            Point2 p0 =
                l.vertical() ? Point2{-l.c / l.a, Rat(0)} : Point2{Rat(0), l.y_at(Rat(0))};
            bool feasible = true, lo_open = true, hi_open = true;
            Rat lo, hi;
            auto add = [&](const Rat& a, const Rat& b) {
                // a*s + b > 0
                if (a.is_zero()) {
                    if (b.sign() <= 0) feasible = false;
                    return;
                }
                Rat bound = -b / a;
                if (a.sign() > 0) {
                    if (lo_open || bound > lo) lo = bound;
                    lo_open = false;
                } else {
                    if (hi_open || bound < hi) hi = bound;
                    hi_open = false;
                }
            };
            if (t.x_lo) add(ux, p0.x - *t.x_lo);
            if (t.x_hi) add(-ux, *t.x_hi - p0.x);
            if (t.top_edge) {
                const Line& m = arr.lines()[arr.edges()[*t.top_edge].line];
                // strictly below the top line: -m(p) > 0 if m has positive b
                // normalize: want the side that contains the trapezoid interior
                int want = -1 * m.b.sign();  // below: m.b*y term; see note below
                // below the line m: sign of m.eval = sign(b)*(y - line) -> interior has
                // opposite sign to b for points below
                Rat a = Rat(want) * (m.a * ux + m.b * uy);
                Rat b = Rat(want) * m.eval(p0);
                add(a, b);
            }
            if (t.bottom_edge) {
                const Line& m = arr.lines()[arr.edges()[*t.bottom_edge].line];
                int want = m.b.sign();  // above the line
                Rat a = Rat(want) * (m.a * ux + m.b * uy);
                Rat b = Rat(want) * m.eval(p0);
                add(a, b);
            }
            if (!feasible) continue;
            if (!lo_open && !hi_open && !(lo < hi)) continue;
            ++entering;
        }
        res.lines_entering.push_back(entering);
        res.max_lines_entering = std::max(res.max_lines_entering, entering);
    }
    Rat expo = Rat(1) + params.epsilon;
    res.entering_bound =
        pow_approx(config.N, expo) / static_cast<double>(std::max<long long>(1, sel.r_target));
    return res;
}

NiceRefineResult nice_refine(const Configuration& config, const Selection& sel,
                             const SlackParams& params) {
    long long floor_rich = ceil_pow(config.N, Rat(1, 3) - params.epsilon);
    IncidenceSet I = incidences(config);
    for (const auto& lines_at : I.by_point)
        if (static_cast<long long>(lines_at.size()) < floor_rich)
            throw richness_precondition_failed();

    std::vector<Line> chosen;
    for (int li : sel.chosen) chosen.push_back(config.lines[li]);
    Arrangement arr = Arrangement::build(chosen);
    NiceRefineResult res;
    res.side_cap = ceil_pow(config.N, Rat(params.k, 1) * params.epsilon);
    res.points_before = static_cast<long long>(config.points.size());

    std::vector<Point2> kept;
    std::vector<FaceId> kept_face;
    for (const auto& p : config.points) {
        FaceId f = arr.locate_nudged_up_left(p);
        if (arr.side_count(f) <= res.side_cap) {
            kept.push_back(p);
            kept_face.push_back(f);
        }
    }
    res.points_after = static_cast<long long>(kept.size());
    res.config = Configuration::make(config.lines, kept, config.N);
    res.incidences = incidences(res.config);

    CellDecomposition& cd = res.cells;
    cd.source = CellDecomposition::Source::ArrangementFaces;
    cd.r_param = sel.r_target;
    std::vector<std::vector<int>> by_face(arr.face_count());
    for (std::size_t pi = 0; pi < kept.size(); ++pi)
        by_face[kept_face[pi]].push_back(static_cast<int>(pi));
    cd.cell_of_point.assign(kept.size(), -1);
    for (auto& cell : by_face) {
        if (cell.empty()) continue;
        for (int pi : cell) cd.cell_of_point[pi] = static_cast<int>(cd.cells.size());
        cd.cells.push_back(cell);
    }
    cd.rebuild_counts(res.config, res.incidences);
    res.cell_point_cap = ceil_pow(config.N, Rat(1, 3) + params.epsilon);
    for (auto c : cd.points_per_cell) res.max_cell_points = std::max(res.max_cell_points, c);
    return res;
}

}  // namespace stw

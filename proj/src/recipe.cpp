#include "stw/recipe.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace stw {

void RecipeParams::validate() const {
    if (N < 1) throw std::invalid_argument("recipe: N >= 1 required");
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("recipe: need at least two separators per axis");
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (!(a[i] < a[i + 1])) throw std::invalid_argument("recipe: a not strictly increasing");
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (!(b[i] < b[i + 1])) throw std::invalid_argument("recipe: b not strictly increasing");
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
            if (ls[i] == ls[j]) throw std::invalid_argument("recipe: duplicate structuring line");
}

const char* to_string(RecipeStage s) {
    switch (s) {
        case RecipeStage::StripCrossings: return "StripCrossings";
        case RecipeStage::RowBuckets: return "RowBuckets";
        case RecipeStage::CellLineCounts: return "CellLineCounts";
        case RecipeStage::Structuredness: return "Structuredness";
    }
    return "?";
}

namespace {

bool crosses_cell(const Line& l, const Rat& xlo, const Rat& xhi, const Rat& ylo,
                  const Rat& yhi) {
    int s1 = l.eval({xlo, ylo}).sign();
    int s2 = l.eval({xlo, yhi}).sign();
    int s3 = l.eval({xhi, ylo}).sign();
    int s4 = l.eval({xhi, yhi}).sign();
    bool pos = s1 > 0 || s2 > 0 || s3 > 0 || s4 > 0;
    bool neg = s1 < 0 || s2 < 0 || s3 < 0 || s4 < 0;
    return pos && neg;
}

}  // namespace

RecipeOutcome run_recipe(const RecipeParams& params, const SlackParams& slack) {
    params.validate();
    RecipeOutcome out;
    RecipeTrace& tr = out.trace;
    long long N = params.N;
    Rat e13m = Rat(1, 3) - slack.epsilon, e13p = Rat(1, 3) + slack.epsilon;
    Rat e23m = Rat(2, 3) - slack.epsilon, e23p = Rat(2, 3) + slack.epsilon;
    tr.strip_threshold = ceil_pow(N, e23m);
    tr.row_count_lo = ceil_pow(N, e13m);
    tr.row_count_hi = floor_pow(N, e13p);
    tr.rows_needed = ceil_pow(N, e13m);
    tr.cell_count_lo = ceil_pow(N, e23m);
    tr.cell_count_hi = floor_pow(N, e23p);
    tr.cells_needed = ceil_pow(N, e23m);
    tr.structuring_cap = ceil_pow(N, e13p);

    // stage 1: crossing pairs of ls with x in [a1, a2]
    std::vector<Point2> strip_meets;
    for (std::size_t i = 0; i < params.ls.size(); ++i)
        for (std::size_t j = i + 1; j < params.ls.size(); ++j) {
            HPoint h = meet(params.ls[i], params.ls[j]);
            if (h.at_infinity()) continue;
            Point2 q = h.affine();
            if (params.a[0] <= q.x && q.x <= params.a[1]) {
                ++tr.strip_pairs;
                strip_meets.push_back(q);
            }
        }
    if (!ge_pow(tr.strip_pairs, N, e23m)) {
        out.failed_stage = RecipeStage::StripCrossings;
        return out;
    }

    // stage 2: distinct crossing points bucketed into half-open rows
    std::sort(strip_meets.begin(), strip_meets.end());
    strip_meets.erase(std::unique(strip_meets.begin(), strip_meets.end()), strip_meets.end());
    std::size_t rows = params.b.size() - 1;
    std::vector<std::vector<Point2>> row_pts(rows);
    for (const Point2& q : strip_meets)
        for (std::size_t k = 0; k < rows; ++k)
            if (params.b[k] <= q.y && q.y < params.b[k + 1]) {
                row_pts[k].push_back(q);
                break;
            }
    tr.row_counts.resize(rows);
    std::vector<int> good_rows;
    for (std::size_t k = 0; k < rows; ++k) {
        tr.row_counts[k] = static_cast<long long>(row_pts[k].size());
        if (tr.row_counts[k] > 0 && ge_pow(tr.row_counts[k], N, e13m) &&
            le_pow(tr.row_counts[k], N, e13p))
            good_rows.push_back(static_cast<int>(k));
    }
    tr.good_rows = static_cast<long long>(good_rows.size());
    if (!ge_pow(tr.good_rows, N, e13m)) {
        out.failed_stage = RecipeStage::RowBuckets;
        return out;
    }

    // stage 3: L = lines through two points of a common first-strip cell
    std::set<Line> lines;
    for (int k : good_rows)
        for (std::size_t i = 0; i < row_pts[k].size(); ++i)
            for (std::size_t j = i + 1; j < row_pts[k].size(); ++j)
                lines.insert(line_through(row_pts[k][i], row_pts[k][j]));
    std::vector<Line> L(lines.begin(), lines.end());
    tr.line_count = static_cast<long long>(L.size());
    std::set<int> good_row_set(good_rows.begin(), good_rows.end());
    std::vector<std::pair<int, int>> qualifying;
    std::map<std::pair<int, int>, std::vector<Line>> cell_lines;
    for (std::size_t jx = 0; jx + 1 < params.a.size(); ++jx)
        for (std::size_t ky = 0; ky < rows; ++ky) {
            std::vector<Line> cls;
            for (const Line& l : L)
                if (crosses_cell(l, params.a[jx], params.a[jx + 1], params.b[ky],
                                 params.b[ky + 1]))
                    cls.push_back(l);
            long long cnt = static_cast<long long>(cls.size());
            if (ge_pow(cnt, N, e23m) && le_pow(cnt, N, e23p)) {
                qualifying.push_back({static_cast<int>(jx), static_cast<int>(ky)});
                cell_lines[{static_cast<int>(jx), static_cast<int>(ky)}] = std::move(cls);
            }
        }
    tr.qualifying_cells = static_cast<long long>(qualifying.size());
    if (!ge_pow(tr.qualifying_cells, N, e23m)) {
        out.failed_stage = RecipeStage::CellLineCounts;
        return out;
    }

    // stage 4: structure the crossing lines of each qualifying cell; first-strip
    // cells are exempt, their points being definitional
    std::vector<Point2> structuring_points;
    for (auto [jx, ky] : qualifying) {
        if (jx == 0 && good_row_set.count(ky)) {
            ++tr.structured_cells;
            continue;
        }
        const auto& cls = cell_lines[{jx, ky}];
        // greedy cover; collect the chosen points for the output point set
        std::map<Point2, std::set<int>> on;
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j) {
                HPoint h = meet(cls[i], cls[j]);
                if (h.at_infinity()) continue;
                Point2 q = h.affine();
                if (params.a[jx] < q.x && q.x < params.a[jx + 1] && params.b[ky] < q.y &&
                    q.y < params.b[ky + 1])
                    on[q].insert({static_cast<int>(i), static_cast<int>(j)});
            }
        std::vector<int> need(cls.size(), 2);
        std::vector<Point2> chosen;
        while (static_cast<long long>(chosen.size()) < tr.structuring_cap) {
            long long bg = 0;
            const Point2* best = nullptr;
            for (const auto& [q, ons] : on) {
                if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
                long long g = 0;
                for (int t : ons)
                    if (need[t] > 0) ++g;
                if (g > bg) {
                    bg = g;
                    best = &q;
                }
            }
            if (!best || bg == 0) break;
            chosen.push_back(*best);
            for (int t : on[*best])
                if (need[t] > 0) --need[t];
            if (std::all_of(need.begin(), need.end(), [](int n) { return n == 0; })) break;
        }
        bool ok = std::all_of(need.begin(), need.end(), [](int n) { return n == 0; });
        if (ok) {
            ++tr.structured_cells;
            structuring_points.insert(structuring_points.end(), chosen.begin(), chosen.end());
        }
    }
    if (!ge_pow(tr.structured_cells, N, e23m)) {
        out.failed_stage = RecipeStage::Structuredness;
        return out;
    }

    // success: P = structuring points plus the first-strip cell points
    std::set<Point2> pts;
    for (int k : good_rows) {
        for (const Point2& q : row_pts[k]) pts.insert(q);
        tr.first_strip_points += static_cast<long long>(row_pts[k].size());
    }
    tr.structuring_points = static_cast<long long>(structuring_points.size());
    for (const Point2& q : structuring_points) pts.insert(q);
    out.output = Configuration::make(L, {pts.begin(), pts.end()}, params.N);
    out.success = true;
    return out;
}

ExtractResult extract_params(const Configuration& config, const IncidenceSet& J,
                             const SlackParams& slack, std::uint64_t seed, int p1_override,
                             int p2_override, long long thin) {
    (void)seed;  // extraction is deterministic; the seed only enters the manifest
    // ranked organizing pair: maximal J-richness, lexicographic, with the joining
    // direction strictly inside a bounded sector of both bushes so every sector
    // image is a finite strip
    std::vector<int> candidates;
    std::size_t max_rich = 0;
    for (std::size_t pi = 0; pi < config.points.size(); ++pi)
        max_rich = std::max(max_rich, J.by_point[pi].size());
    if (max_rich < 2) throw double_bush_failed();
    for (std::size_t pi = 0; pi < config.points.size(); ++pi)
        if (J.by_point[pi].size() == max_rich) candidates.push_back(static_cast<int>(pi));

    auto bounded_sector_of_dir = [&](const Bush& bush, const Point2& from,
                                     const Point2& to) -> std::optional<int> {
        DirKey key = dir_key(to.x - from.x, to.y - from.y);
        int M = static_cast<int>(bush.lines.size());
        for (int j = 0; j + 1 < M; ++j) {
            DirKey lo = dir_key(config.lines[bush.lines[j]]);
            DirKey hi = dir_key(config.lines[bush.lines[j + 1]]);
            if (lo < key && key < hi) return j;
        }
        return std::nullopt;  // wrap sector or on a bush direction
    };

    ExtractResult res;
    std::map<int, Bush> bushes;
    auto bush_of = [&](int pi) -> Bush& {
        auto it = bushes.find(pi);
        if (it == bushes.end()) it = bushes.emplace(pi, build_bush(config, pi, J)).first;
        return it->second;
    };
    int p1 = -1, p2 = -1;
    if (p1_override >= 0 && p2_override >= 0) {
        p1 = p1_override;
        p2 = p2_override;
    } else {
        for (int c1 : candidates) {
            for (int c2 : candidates) {
                if (c1 == c2) continue;
                if (bounded_sector_of_dir(bush_of(c1), config.points[c1], config.points[c2])
                        .has_value() &&
                    bounded_sector_of_dir(bush_of(c2), config.points[c2], config.points[c1])
                        .has_value()) {
                    p1 = c1;
                    p2 = c2;
                    break;
                }
            }
            if (p1 >= 0) break;
        }
    }
    if (p1 < 0) throw double_bush_failed();
    res.p1 = p1;
    res.p2 = p2;
    Bush bush1 = bush_of(p1);
    Bush bush2 = bush_of(p2);
    if (thin > 1) {
        auto thin_lines = [&](Bush& b) {
            std::vector<int> kept;
            for (std::size_t i = 0; i < b.lines.size(); i += thin) kept.push_back(b.lines[i]);
            if (kept.size() >= 2) b.lines = std::move(kept);
        };
        thin_lines(bush1);
        thin_lines(bush2);
    }
    res.map = send_to_infinity(config.points[p1], config.points[p2]);

    auto boundary_values = [&](const Bush& bush, bool vertical) {
        std::vector<Rat> vals;
        for (int li : bush.lines) {
            auto img = res.map.apply(config.lines[li]);
            if (!img.has_value()) continue;  // the joining line, not expected in a bush
            // canonical vertical (1,0,c): x = -c; horizontal (0,1,c): y = -c
            vals.push_back(vertical ? -img->c / img->a : -img->c / img->b);
        }
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    std::vector<Rat> a_vals = boundary_values(bush2, true);
    std::vector<Rat> b_vals = boundary_values(bush1, false);

    // p2 sectors and their image strips; candidates for the first strip are the
    // two end strips
    SectorSet ss2 = sectors(config, bush2, slack);
    int best_sector = -1, best_side = 0;
    std::size_t best_size = 0;
    for (const auto& s : ss2.sectors) {
        if (s.members.empty()) continue;
        // image x-interval from a member point
        bool lo_end = true, hi_end = true;
        for (int pi : s.members) {
            HPoint h = res.map.apply(config.points[pi]);
            if (h.at_infinity()) {
                lo_end = hi_end = false;
                break;
            }
            Rat x = h.affine().x;
            if (!(a_vals.size() >= 2 && a_vals[0] <= x && x <= a_vals[1])) lo_end = false;
            if (!(a_vals.size() >= 2 && a_vals[a_vals.size() - 2] <= x && x <= a_vals.back()))
                hi_end = false;
        }
        if ((lo_end || hi_end) && s.members.size() > best_size) {
            best_size = s.members.size();
            best_sector = s.index;
            best_side = lo_end ? -1 : 1;
        }
    }
    if (best_sector < 0) throw double_bush_failed();
    res.first_sector = best_sector;
    if (best_side > 0) {
        // reflect x so the chosen strip comes first
        ProjectiveMap refl{{Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0),
                            Rat(1)}};
        res.map = refl.compose(res.map);
        res.reflected = true;
        for (auto& v : a_vals) v = -v;
        std::sort(a_vals.begin(), a_vals.end());
    }

    res.params.N = config.N;
    res.params.a = a_vals;
    res.params.b = b_vals;
    for (int li : ss2.sectors[best_sector].structuring_lines) {
        auto img = res.map.apply(config.lines[li]);
        if (!img.has_value()) continue;  // joining line: unusable, skip and report
        res.params.ls.push_back(*img);
        res.structuring_line_ids.push_back(li);
    }
    return res;
}

ProtoInverseReport verify_protoinverse(const Configuration& config, const IncidenceSet& J,
                                       const ProjectiveMap& map, const RecipeParams& params,
                                       const SlackParams& slack) {
    RecipeOutcome outcome = run_recipe(params, slack);
    if (!outcome.success) throw recipe_failed();
    ProtoInverseReport rep;
    std::set<Line> out_lines(outcome.output.lines.begin(), outcome.output.lines.end());
    std::set<Point2> out_points(outcome.output.points.begin(), outcome.output.points.end());
    std::vector<Line> common_lines;
    std::vector<Point2> common_points;
    for (const Line& l : config.lines) {
        auto img = map.apply(l);
        if (img.has_value() && out_lines.count(*img)) common_lines.push_back(*img);
    }
    for (const Point2& p : config.points) {
        HPoint h = map.apply(p);
        if (h.at_infinity()) continue;
        Point2 q = h.affine();
        if (out_points.count(q)) common_points.push_back(q);
    }
    std::sort(common_lines.begin(), common_lines.end());
    common_lines.erase(std::unique(common_lines.begin(), common_lines.end()),
                       common_lines.end());
    std::sort(common_points.begin(), common_points.end());
    common_points.erase(std::unique(common_points.begin(), common_points.end()),
                        common_points.end());
    rep.lines_common = static_cast<long long>(common_lines.size());
    rep.points_common = static_cast<long long>(common_points.size());
    Configuration inter = Configuration::make(common_lines, common_points, params.N);
    rep.incidences_common = static_cast<long long>(incidences(inter).size());
    if (!J.pairs.empty())
        rep.j_retention = Rat(rep.incidences_common) / Rat(static_cast<long long>(J.size()));
    Rat floor1 = Rat(1) - slack.epsilon;
    Rat floor43 = Rat(4, 3) - slack.epsilon;
    rep.lines_floor_ok = ge_pow(rep.lines_common, params.N, floor1);
    rep.points_floor_ok = ge_pow(rep.points_common, params.N, floor1);
    rep.incidences_floor_ok = ge_pow(rep.incidences_common, params.N, floor43);
    return rep;
}

DualStripsReport dual_strips_report(const Configuration& config, const IncidenceSet& J,
                                    const OrganizingReport& orep, const SlackParams& slack,
                                    long long pair_budget, std::uint64_t seed) {
    (void)J;
    DualStripsReport rep;
    long long cap = ceil_pow(config.N, Rat(1, 3) + slack.epsilon);
    Rat lo = Rat(2, 3) - slack.epsilon, hi = Rat(2, 3) + slack.epsilon;
    std::vector<int> all_points(config.points.size());
    for (std::size_t pi = 0; pi < config.points.size(); ++pi)
        all_points[pi] = static_cast<int>(pi);
    std::vector<std::vector<std::vector<int>>> strip_sets;  // [line idx][interval] -> line ids
    for (const auto& ol : orep.lines) {
        std::vector<std::vector<int>> per_interval;
        for (std::size_t t = 0; t < ol.intervals.size(); ++t) {
            const auto& iv = ol.intervals[t];
            const Point2& v1 = config.points[iv.point_lo];
            const Point2& v2 = config.points[iv.point_hi];
            std::vector<int> ids;
            for (std::size_t m = 0; m < config.lines.size(); ++m) {
                if (static_cast<int>(m) == ol.line) continue;
                if (config.lines[m].side(v1) * config.lines[m].side(v2) < 0)
                    ids.push_back(static_cast<int>(m));
            }
            DualStrip ds;
            ds.line = ol.line;
            ds.interval = static_cast<int>(t);
            ds.size = static_cast<long long>(ids.size());
            ds.in_bracket = ge_pow(ds.size, config.N, lo) && le_pow(ds.size, config.N, hi);
            if (!ids.empty())
                ds.structured = find_structuring_points(config, ids, all_points, cap).success;
            if (ds.structured) ++rep.structured_strips;
            rep.strips.push_back(ds);
            per_interval.push_back(std::move(ids));
        }
        strip_sets.push_back(std::move(per_interval));
    }
    // sampled strip-pair intersections across distinct organizing lines
    std::vector<std::pair<int, int>> flat;  // (line idx, interval idx)
    for (std::size_t i = 0; i < strip_sets.size(); ++i)
        for (std::size_t t = 0; t < strip_sets[i].size(); ++t)
            flat.push_back({static_cast<int>(i), static_cast<int>(t)});
    if (flat.size() >= 2) {
        std::mt19937_64 rng(seed);
        for (long long n = 0; n < pair_budget; ++n) {
            auto [i1, t1] = flat[rng() % flat.size()];
            auto [i2, t2] = flat[rng() % flat.size()];
            if (i1 == i2) continue;
            const auto& s1 = strip_sets[i1][t1];
            const auto& s2 = strip_sets[i2][t2];
            long long common = 0;
            std::set<int> set1(s1.begin(), s1.end());
            for (int id : s2)
                if (set1.count(id)) ++common;
            ++rep.pairs_sampled;
            ++rep.intersection_histogram[common];
        }
    }
    return rep;
}

}  // namespace stw

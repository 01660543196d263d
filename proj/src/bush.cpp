#include "stw/bush.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace stw {

std::vector<int> bush_points(const Configuration& config, int p) {
    const Point2& c = config.points[p];
    std::set<int> out;
    for (std::size_t li = 0; li < config.lines.size(); ++li) {
        if (!config.lines[li].contains(c)) continue;
        for (std::size_t pi = 0; pi < config.points.size(); ++pi)
            if (config.lines[li].contains(config.points[pi])) out.insert(static_cast<int>(pi));
    }
    return {out.begin(), out.end()};
}

Bush build_bush(const Configuration& config, int p, const IncidenceSet& J) {
    Bush b;
    b.center = p;
    b.lines = J.by_point[p];
    if (b.lines.size() < 2) throw too_few_bush_lines();
    std::sort(b.lines.begin(), b.lines.end(), [&](int x, int y) {
        DirKey kx = dir_key(config.lines[x]);
        DirKey ky = dir_key(config.lines[y]);
        if (!(kx == ky)) return kx < ky;
        return x < y;
    });
    return b;
}

std::optional<int> sector_of_point(const Configuration& config, const Bush& bush,
                                   const Point2& q) {
    const Point2& c = config.points[bush.center];
    if (q == c) return std::nullopt;
    DirKey key = dir_key(q.x - c.x, q.y - c.y);
    int M = static_cast<int>(bush.lines.size());
    std::vector<DirKey> keys;
    keys.reserve(M);
    for (int li : bush.lines) keys.push_back(dir_key(config.lines[li]));
    for (int j = 0; j < M; ++j)
        if (keys[j] == key) return std::nullopt;  // on the bush line through c
    for (int j = 0; j + 1 < M; ++j)
        if (keys[j] < key && key < keys[j + 1]) return j;
    return M - 1;  // wrap-around
}

namespace {

// greedy cap-bounded cover of `members` by lines with >= 2 member incidences;
// gain order: newly twice-covered, then newly once-covered, then line id
std::pair<std::vector<int>, long long> cover_lines(const Configuration& config,
                                                   const std::vector<int>& members,
                                                   long long cap) {
    std::vector<std::pair<int, std::vector<int>>> cand;  // (line, member indexes)
    for (std::size_t li = 0; li < config.lines.size(); ++li) {
        std::vector<int> inc;
        for (std::size_t mi = 0; mi < members.size(); ++mi)
            if (config.lines[li].contains(config.points[members[mi]]))
                inc.push_back(static_cast<int>(mi));
        if (inc.size() >= 2) cand.push_back({static_cast<int>(li), std::move(inc)});
    }
    std::vector<int> cover(members.size(), 0);
    std::vector<char> used(cand.size(), 0);
    std::vector<int> chosen;
    while (static_cast<long long>(chosen.size()) < cap) {
        long long b2 = 0, b1 = 0;
        int best = -1;
        for (std::size_t ci = 0; ci < cand.size(); ++ci) {
            if (used[ci]) continue;
            long long g2 = 0, g1 = 0;
            for (int mi : cand[ci].second) {
                if (cover[mi] == 1) ++g2;
                if (cover[mi] == 0) ++g1;
            }
            if (g2 > b2 || (g2 == b2 && g1 > b1)) {
                b2 = g2;
                b1 = g1;
                best = static_cast<int>(ci);
            }
        }
        if (best < 0 || (b2 == 0 && b1 == 0)) break;
        used[best] = 1;
        chosen.push_back(cand[best].first);
        for (int mi : cand[best].second) ++cover[mi];
    }
    long long twice = 0;
    for (int c : cover)
        if (c >= 2) ++twice;
    std::sort(chosen.begin(), chosen.end());
    return {chosen, twice};
}

}  // namespace

SectorSet sectors(const Configuration& config, const Bush& bush, const SlackParams& params) {
    SectorSet out;
    out.bush = bush;
    out.structuring_cap = ceil_pow(config.N, Rat(1, 3) + params.epsilon);
    int M = static_cast<int>(bush.lines.size());
    out.sectors.resize(M);
    for (int j = 0; j < M; ++j) {
        out.sectors[j].index = j;
        out.sectors[j].line_lo = bush.lines[j];
        out.sectors[j].line_hi = bush.lines[(j + 1) % M];
    }
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        if (static_cast<int>(pi) == bush.center) continue;
        auto s = sector_of_point(config, bush, config.points[pi]);
        if (!s.has_value()) {
            out.boundary_points.push_back(static_cast<int>(pi));
            continue;
        }
        out.sectors[*s].members.push_back(static_cast<int>(pi));
    }
    for (auto& s : out.sectors) {
        auto [lines, twice] = cover_lines(config, s.members, out.structuring_cap);
        s.structuring_lines = std::move(lines);
        s.covered_twice = twice;
    }
    return out;
}

BushCellsResult bush_cells(const Configuration& config, const IncidenceSet& J, int p,
                           long long K, std::uint64_t seed, const SlackParams& params) {
    Bush bush = build_bush(config, p, J);
    SectorSet ss = sectors(config, bush, params);
    std::set<int> in_bush(bush.lines.begin(), bush.lines.end());
    std::vector<int> others;
    for (std::size_t li = 0; li < config.lines.size(); ++li)
        if (!in_bush.count(static_cast<int>(li))) others.push_back(static_cast<int>(li));
    std::mt19937_64 rng(seed);
    for (std::size_t i = others.size(); i > 1; --i)
        std::swap(others[i - 1], others[rng() % i]);
    std::vector<int> picked(others.begin(),
                            others.begin() + std::min<std::size_t>(others.size(), K));
    std::sort(picked.begin(), picked.end());

    std::vector<int> dividing = bush.lines;
    dividing.insert(dividing.end(), picked.begin(), picked.end());
    std::sort(dividing.begin(), dividing.end());

    // projective cells: sector index plus the sign pattern over the random lines
    // (K = 0 leaves exactly the sectors)
    BushCellsResult res;
    CellDecomposition& cd = res.cells;
    cd.source = CellDecomposition::Source::BushSectors;
    cd.r_param = static_cast<long long>(dividing.size());
    cd.cell_of_point.assign(config.points.size(), -1);
    std::map<std::pair<int, std::vector<int>>, int> key_cell;
    std::vector<std::vector<int>> cells_tmp;
    std::vector<int> cell_sector_tmp;
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        const Point2& q = config.points[pi];
        auto sec = sector_of_point(config, bush, q);
        std::vector<int> signs;
        bool on_div = !sec.has_value();
        for (int li : picked) {
            int s = config.lines[li].side(q);
            if (s == 0) on_div = true;
            signs.push_back(s);
        }
        if (on_div) {
            cd.boundary_points.push_back(static_cast<int>(pi));
            continue;
        }
        auto [it, fresh] = key_cell.emplace(std::make_pair(*sec, std::move(signs)),
                                            static_cast<int>(cells_tmp.size()));
        if (fresh) {
            cells_tmp.push_back({});
            cell_sector_tmp.push_back(*sec);
        }
        cells_tmp[it->second].push_back(static_cast<int>(pi));
        cd.cell_of_point[pi] = it->second;
    }
    cd.cells = std::move(cells_tmp);
    cd.rebuild_counts(config, J);
    res.sector_of_cell = std::move(cell_sector_tmp);

    res.cell_point_cap = ceil_pow(config.N, Rat(1, 3) + params.epsilon);
    for (auto c : cd.points_per_cell) res.max_cell_points = std::max(res.max_cell_points, c);

    // per-structuring-line, per-cell member counts
    res.per_line_cell_cap = ceil_pow(config.N, params.epsilon);
    std::vector<char> chosen_mask(config.lines.size(), 0);
    for (int li : dividing) chosen_mask[li] = 1;
    long long W = gap_window(params.c_gap, static_cast<long long>(config.lines.size()),
                             std::max<long long>(1, cd.r_param));
    for (const auto& s : ss.sectors) {
        for (int sl : s.structuring_lines) {
            std::map<int, long long> per_cell;
            for (int pi : s.members)
                if (config.lines[sl].contains(config.points[pi]) && cd.cell_of_point[pi] >= 0)
                    ++per_cell[cd.cell_of_point[pi]];
            for (auto [cell, cnt] : per_cell)
                res.max_points_per_structuring_line_cell =
                    std::max(res.max_points_per_structuring_line_cell, cnt);
            auto [checked, violated] = circular_gap_events(config, sl, chosen_mask, W);
            res.gap_checked += checked;
            res.gap_violated += violated;
        }
    }
    return res;
}

std::vector<FastSlowEntry> classify_fast_slow(const Configuration& config, const Bush& bush,
                                              const Sector& sector, const IncidenceSet& J,
                                              const SlackParams& params) {
    std::set<int> member_set(sector.members.begin(), sector.members.end());
    std::set<int> lines_here;
    for (int pi : sector.members)
        for (int li : J.by_point[pi]) lines_here.insert(li);
    std::vector<FastSlowEntry> out;
    Rat slow_expo = Rat(2, 3) + Rat(params.k2, 1) * params.epsilon;
    for (int li : lines_here) {
        FastSlowEntry e;
        e.line = li;
        for (std::size_t m = 0; m < config.lines.size(); ++m) {
            if (static_cast<int>(m) == li) continue;
            HPoint h = meet(config.lines[li], config.lines[m]);
            if (h.at_infinity()) continue;
            auto s = sector_of_point(config, bush, h.affine());
            if (s.has_value() && *s == sector.index) ++e.crossings_inside;
        }
        e.slow = le_pow(e.crossings_inside, config.N, slow_expo);
        if (!e.slow) {
            long long j = 1;
            while (ge_pow(e.crossings_inside, config.N,
                          Rat(2, 3) + Rat(j + 1, 1) * params.epsilon))
                ++j;
            e.alpha = Rat(j, 1) * params.epsilon;
        }
        out.push_back(e);
    }
    return out;
}

std::vector<SectorStat> sector_report(const Configuration& config, const IncidenceSet& J,
                                      int p, const SlackParams& params) {
    Bush bush = build_bush(config, p, J);
    SectorSet ss = sectors(config, bush, params);
    long long sparse_cap = ceil_pow(config.N, Rat(params.k, 1) * params.epsilon);
    Rat crossing_budget_expo = Rat(5, 3) + Rat(params.k1, 1) * params.epsilon;
    std::vector<SectorStat> out;
    for (const auto& s : ss.sectors) {
        SectorStat st;
        st.sector = s.index;
        std::map<int, long long> per_line;  // line -> member incidences
        for (int pi : s.members)
            for (int li : J.by_point[pi]) {
                ++per_line[li];
                ++st.incidences;
            }
        for (auto [li, cnt] : per_line)
            if (cnt < sparse_cap) st.sparse_incidences += cnt;
        if (st.incidences > 0)
            st.sparse_share = Rat(st.sparse_incidences) / Rat(st.incidences);
        for (std::size_t i = 0; i < config.lines.size(); ++i)
            for (std::size_t j = i + 1; j < config.lines.size(); ++j) {
                HPoint h = meet(config.lines[i], config.lines[j]);
                if (h.at_infinity()) continue;
                auto sec = sector_of_point(config, bush, h.affine());
                if (sec.has_value() && *sec == s.index) ++st.line_line_crossings;
            }
        st.dropped = gt_pow(st.line_line_crossings, config.N, crossing_budget_expo);
        out.push_back(st);
    }
    return out;
}

DoubleBushResult double_bush(const Configuration& config, int p1, int p2,
                             const IncidenceSet& J, const SlackParams& params) {
    DoubleBushResult res;
    try {
        res.bush1 = build_bush(config, p1, J);
        res.bush2 = build_bush(config, p2, J);
    } catch (const too_few_bush_lines&) {
        throw double_bush_failed();
    }
    CellDecomposition& cd = res.cells;
    cd.source = CellDecomposition::Source::DoubleBush;
    cd.r_param = static_cast<long long>(res.bush1.size() + res.bush2.size());
    cd.cell_of_point.assign(config.points.size(), -1);
    std::map<std::pair<int, int>, int> key_cell;
    std::vector<std::vector<int>> cells_tmp;
    std::vector<std::pair<int, int>> keys_tmp;
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        if (static_cast<int>(pi) == p1 || static_cast<int>(pi) == p2) continue;
        auto s1 = sector_of_point(config, res.bush1, config.points[pi]);
        auto s2 = sector_of_point(config, res.bush2, config.points[pi]);
        if (!s1.has_value() || !s2.has_value()) {
            cd.boundary_points.push_back(static_cast<int>(pi));
            continue;
        }
        auto [it, fresh] = key_cell.emplace(std::make_pair(*s1, *s2),
                                            static_cast<int>(cells_tmp.size()));
        if (fresh) {
            cells_tmp.push_back({});
            keys_tmp.push_back({*s1, *s2});
        }
        cells_tmp[it->second].push_back(static_cast<int>(pi));
        cd.cell_of_point[pi] = it->second;
    }
    cd.cells = std::move(cells_tmp);
    res.cell_key = std::move(keys_tmp);
    cd.rebuild_counts(config, J);
    res.cell_point_cap = ceil_pow(config.N, Rat(1, 3) + params.epsilon);
    for (auto c : cd.points_per_cell) res.max_cell_points = std::max(res.max_cell_points, c);

    res.lines_per_p1_sector.assign(res.bush1.size(), 0);
    std::vector<std::set<int>> per_sector(res.bush1.size());
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        if (static_cast<int>(pi) == p1 || static_cast<int>(pi) == p2) continue;
        auto s1 = sector_of_point(config, res.bush1, config.points[pi]);
        if (!s1.has_value()) continue;
        for (int li : J.by_point[pi]) per_sector[*s1].insert(li);
    }
    for (std::size_t s = 0; s < per_sector.size(); ++s)
        res.lines_per_p1_sector[s] = static_cast<long long>(per_sector[s].size());
    res.line_floor = ceil_pow(config.N, Rat(1) - params.epsilon);
    return res;
}

MixingStats mixing_stats(const Configuration& config, const DoubleBushResult& db,
                         const IncidenceSet& J, const SlackParams& params, long long budget,
                         std::uint64_t seed) {
    (void)config;
    MixingStats out;
    out.threshold = ceil_pow(config.N, Rat(1, 3) - params.epsilon);
    std::size_t n = db.cells.cells.size();
    if (n < 2) return out;
    // per-cell line multiplicities in J
    std::vector<std::map<int, long long>> mult(n);
    for (std::size_t c = 0; c < n; ++c)
        for (int pi : db.cells.cells[c])
            for (int li : J.by_point[pi]) ++mult[c][li];
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < budget; ++t) {
        std::size_t a = rng() % n, b = rng() % n;
        if (a == b) continue;
        long long shared = 0;
        const auto& ma = mult[a];
        const auto& mb = mult[b];
        for (const auto& [li, m] : ma)
            if (m >= 2) {
                auto it = mb.find(li);
                if (it != mb.end() && it->second >= 2) ++shared;
            }
        ++out.pairs_sampled;
        ++out.shared_histogram[shared];
        if (shared >= out.threshold) ++out.pairs_meeting_threshold;
    }
    return out;
}

OrganizingReport organizing_report(const Configuration& config, const CellDecomposition& cells,
                                   const IncidenceSet& J, const SlackParams& params) {
    OrganizingReport rep;
    rep.cell_floor = ceil_pow(config.N, Rat(1, 3) - params.epsilon);
    rep.crossing_target = ceil_pow(config.N, Rat(2, 3) - params.epsilon);
    long long cap = ceil_pow(config.N, Rat(1, 3) + params.epsilon);
    std::vector<int> all_points(config.points.size());
    for (std::size_t pi = 0; pi < config.points.size(); ++pi)
        all_points[pi] = static_cast<int>(pi);
    for (std::size_t li = 0; li < config.lines.size(); ++li) {
        std::map<int, long long> per_cell;
        for (int pi : J.by_line[li]) {
            int c = cells.cell_of_point[pi];
            if (c >= 0) ++per_cell[c];
        }
        long long qualifying = 0;
        for (auto [c, m] : per_cell)
            if (m >= 2) ++qualifying;
        if (qualifying < rep.cell_floor) continue;
        OrganizingLine ol;
        ol.line = static_cast<int>(li);
        ol.qualifying_cells = qualifying;
        const Line& l = config.lines[li];
        Rat ux = l.b, uy = -l.a;
        std::vector<int> on = J.by_line[li];
        std::sort(on.begin(), on.end(), [&](int p, int q) {
            const Point2 &a = config.points[p], &b = config.points[q];
            return ux * a.x + uy * a.y < ux * b.x + uy * b.y;
        });
        for (std::size_t t = 0; t + 1 < on.size(); ++t) {
            OrganizingInterval iv;
            iv.point_lo = on[t];
            iv.point_hi = on[t + 1];
            const Point2& v1 = config.points[on[t]];
            const Point2& v2 = config.points[on[t + 1]];
            std::vector<int> crossing;
            for (std::size_t m = 0; m < config.lines.size(); ++m) {
                if (m == li) continue;
                if (config.lines[m].side(v1) * config.lines[m].side(v2) < 0)
                    crossing.push_back(static_cast<int>(m));
            }
            iv.crossing_lines = static_cast<long long>(crossing.size());
            if (!crossing.empty())
                iv.structured =
                    find_structuring_points(config, crossing, all_points, cap).success;
            ol.intervals.push_back(std::move(iv));
        }
        rep.lines.push_back(std::move(ol));
    }
    return rep;
}

}  // namespace stw

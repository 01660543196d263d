#include "stw/crossings.hpp"

#include <algorithm>
#include <map>

namespace stw {

namespace {

// exactly-one-common-interior-point test for open segments
bool proper_cross(const Point2& a0, const Point2& a1, const Point2& b0, const Point2& b1) {
    int o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
    int o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool collinear_overlap(const Point2& a0, const Point2& a1, const Point2& b0, const Point2& b1) {
    if (orient(a0, a1, b0) != 0 || orient(a0, a1, b1) != 0) return false;
    // 1-dimensional open-interval overlap along the carrier
    Rat ux = a1.x - a0.x, uy = a1.y - a0.y;
    auto par = [&](const Point2& p) { return ux * p.x + uy * p.y; };
    Rat alo = par(a0), ahi = par(a1);
    if (alo > ahi) std::swap(alo, ahi);
    Rat blo = par(b0), bhi = par(b1);
    if (blo > bhi) std::swap(blo, bhi);
    return std::max(alo, blo) < std::min(ahi, bhi);
}

}  // namespace

CrossingCount count_crossings(const SegmentGraph& g) {
    CrossingCount out;
    struct Item {
        Rat xlo, xhi;
        int e;
    };
    std::vector<Item> items;
    items.reserve(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        Rat x0 = g.vertices[e.a].x, x1 = g.vertices[e.b].x;
        if (x0 > x1) std::swap(x0, x1);
        items.push_back({x0, x1, static_cast<int>(i)});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.xlo < b.xlo; });
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[j].xlo > items[i].xhi) break;  // pruned by x-interval
            const auto& e1 = g.edges[items[i].e];
            const auto& e2 = g.edges[items[j].e];
            if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) continue;
            const Point2 &a0 = g.vertices[e1.a], &a1 = g.vertices[e1.b];
            const Point2 &b0 = g.vertices[e2.a], &b1 = g.vertices[e2.b];
            if (proper_cross(a0, a1, b0, b1))
                ++out.crossings;
            else if (collinear_overlap(a0, a1, b0, b1))
                ++out.collinear_overlaps;
        }
    }
    return out;
}

std::optional<Rat> crossing_lb_margin(const SegmentGraph& g, const SlackParams& params) {
    long long v = static_cast<long long>(g.v());
    long long e = static_cast<long long>(g.e());
    if (v == 0 || e < 10 * v) return std::nullopt;
    CrossingCount c = count_crossings(g);
    Rat bound = params.c_cross * Rat(e) * Rat(e) * Rat(e) / (Rat(v) * Rat(v));
    return Rat(c.crossings) / bound;
}

SegmentGraph cell_graph(const Configuration& config, const std::vector<int>& cell_points,
                        const IncidenceSet& J, long long M) {
    SegmentGraph g;
    std::map<int, int> local;  // point id -> graph vertex
    for (int pi : cell_points) {
        local[pi] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(config.points[pi]);
    }
    for (std::size_t li = 0; li < config.lines.size(); ++li) {
        const Line& l = config.lines[li];
        std::vector<int> on;
        for (int pi : J.by_line[li])
            if (local.count(pi)) on.push_back(pi);
        if (static_cast<long long>(on.size()) < M + 1) continue;
        Rat ux = l.b, uy = -l.a;
        std::sort(on.begin(), on.end(), [&](int p, int q) {
            const Point2 &a = config.points[p], &b = config.points[q];
            return ux * a.x + uy * a.y < ux * b.x + uy * b.y;
        });
        for (long long t = 0; t < M; ++t)
            g.edges.push_back({local[on[t]], local[on[t + 1]], static_cast<int>(li)});
    }
    return g;
}

bool ConvexRegion::contains_strict(const Point2& p) const {
    for (const auto& h : bounds)
        if (h.side * h.line.side(p) <= 0) return false;
    return true;
}

bool ConvexRegion::contains_closed(const Point2& p) const {
    for (const auto& h : bounds)
        if (h.side * h.line.side(p) < 0) return false;
    return true;
}

ConvexRegion consecutive_union(const std::vector<ConvexRegion>& cells,
                               const std::vector<std::vector<Point2>>& members) {
    if (cells.empty()) throw non_consecutive_cells();
    ConvexRegion out;
    for (const auto& h : cells.front().bounds) {
        bool in_all = true;
        for (const auto& c : cells) {
            bool found = false;
            for (const auto& g : c.bounds)
                if (g.line == h.line && g.side == h.side) found = true;
            if (!found) {
                in_all = false;
                break;
            }
        }
        if (in_all) out.bounds.push_back(h);
    }
    // the common constraints must still hold every member point of every cell
    for (const auto& cell_members : members)
        for (const auto& p : cell_members)
            if (!out.contains_closed(p)) throw non_consecutive_cells();
    return out;
}

long long crossings_in_region(const std::vector<Line>& lines, const ConvexRegion& region) {
    long long n = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (lines[i] == lines[j]) continue;
            HPoint m = meet(lines[i], lines[j]);
            if (m.at_infinity()) continue;
            if (region.contains_strict(m.affine())) ++n;
        }
    return n;
}

}  // namespace stw

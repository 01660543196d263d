#include "stw/circles.hpp"

#include <algorithm>
#include <set>

namespace stw {

CircleConfig CircleConfig::make(std::vector<Point2> pts, long long N) {
    std::set<Point2> seen;
    for (const auto& p : pts)
        if (!seen.insert(p).second) throw duplicate_input("duplicate circle center");
    CircleConfig c;
    c.points = std::move(pts);
    c.N = N;
    return c;
}

Rat squared_distance(const Point2& a, const Point2& b) {
    Rat dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

long long unit_distance_count(const std::vector<Point2>& pts) {
    long long n = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (squared_distance(pts[i], pts[j]) == Rat(1)) ++n;
    return n;
}

IncidenceSet circle_incidences(const CircleConfig& cfg) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t c = 0; c < cfg.points.size(); ++c)
        for (std::size_t p = 0; p < cfg.points.size(); ++p)
            if (c != p && squared_distance(cfg.points[c], cfg.points[p]) == Rat(1))
                pairs.push_back({static_cast<int>(c), static_cast<int>(p)});
    return IncidenceSet::from_pairs(std::move(pairs), cfg.points.size(), cfg.points.size());
}

CirclePairKind circle_pair_kind(const Point2& c1, const Point2& c2) {
    if (c1 == c2) throw identical_centers();
    Rat d2 = squared_distance(c1, c2);
    if (d2 > Rat(4)) return CirclePairKind::Disjoint;
    if (d2 == Rat(4)) return CirclePairKind::Tangent;
    return CirclePairKind::TwoPoints;
}

DiskSide disk_membership(const Point2& p, const Point2& center) {
    int s = (squared_distance(p, center) - Rat(1)).sign();
    return s < 0 ? DiskSide::Inside : s == 0 ? DiskSide::On : DiskSide::Outside;
}

void ArcSpec::validate() const {
    if (from == to) throw degenerate_arc();
    if (squared_distance(from, center) != Rat(1) || squared_distance(to, center) != Rat(1))
        throw std::invalid_argument("arc endpoint off the circle");
}

SectorSide sector_membership_geometric(const Point2& p, const Point2& qi, const Point2& qi1) {
    DiskSide a = disk_membership(p, qi);
    DiskSide b = disk_membership(p, qi1);
    if (a == DiskSide::On || b == DiskSide::On) return SectorSide::Boundary;
    bool ina = a == DiskSide::Inside, inb = b == DiskSide::Inside;
    return (ina != inb) ? SectorSide::In : SectorSide::Out;
}

namespace {

Rat cross(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
    return ax * by - ay * bx;
}

// sign of A + B*sqrt(T), exact (T >= 0 rational)
int sign_sqrt(const Rat& A, const Rat& B, const Rat& T) {
    if (B.is_zero() || T.is_zero()) return A.sign();
    int sa = A.sign(), sb = B.sign();
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare A^2 vs B^2 T
    int c = Rat::cmp(A * A, B * B * T);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

// w strictly inside the CCW angular span from u to v (directions from a common
// center, u and v independent)
bool in_ccw_span(const Rat& ux, const Rat& uy, const Rat& vx, const Rat& vy, const Rat& wx,
                 const Rat& wy) {
    Rat cuv = cross(ux, uy, vx, vy);
    Rat cuw = cross(ux, uy, wx, wy);
    Rat cwv = cross(wx, wy, vx, vy);
    if (cuv.sign() > 0) return cuw.sign() > 0 && cwv.sign() > 0;
    if (cuv.sign() < 0) return cuw.sign() > 0 || cwv.sign() > 0;
    // u, v antipodal (distinct circle points): the CCW half from u
    return cuw.sign() > 0;
}

// same test for the symbolic direction w = d/2 + s*t*perp(d), t = sqrt(T)
bool in_ccw_span_symbolic(const Rat& ux, const Rat& uy, const Rat& vx, const Rat& vy,
                          const Rat& dx, const Rat& dy, int s, const Rat& T) {
    // cross(u, w) = cross(u, d)/2 + s*t*cross(u, perp(d)); perp(d) = (-dy, dx)
    Rat cud = cross(ux, uy, dx, dy) / Rat(2);
    Rat cup = cross(ux, uy, -dy, dx);
    int sign_cuw = sign_sqrt(cud, Rat(s) * cup, T);
    Rat cdv = cross(dx, dy, vx, vy) / Rat(2);
    Rat cpv = cross(-dy, dx, vx, vy);
    int sign_cwv = sign_sqrt(cdv, Rat(s) * cpv, T);
    Rat cuv = cross(ux, uy, vx, vy);
    if (cuv.sign() > 0) return sign_cuw > 0 && sign_cwv > 0;
    if (cuv.sign() < 0) return sign_cuw > 0 || sign_cwv > 0;
    return sign_cuw > 0;
}

}  // namespace

int arc_crossing_count(const Point2& p, const ArcSpec& arc) {
    arc.validate();
    const Point2& q0 = arc.center;
    if (p == q0) return 0;  // concentric unit circles never meet
    Rat dx = p.x - q0.x, dy = p.y - q0.y;
    Rat D = dx * dx + dy * dy;
    Rat ux = arc.from.x - q0.x, uy = arc.from.y - q0.y;
    Rat vx = arc.to.x - q0.x, vy = arc.to.y - q0.y;

    // route A: endpoint parity, disambiguated by nearest/farthest approach
    int routeA;
    DiskSide sa = disk_membership(arc.from, p);
    DiskSide sb = disk_membership(arc.to, p);
    bool ina = sa == DiskSide::Inside, inb = sb == DiskSide::Inside;
    if (D > Rat(4)) {
        routeA = 0;
    } else if (D == Rat(4)) {
        // tangency at the midpoint direction
        routeA = in_ccw_span(ux, uy, vx, vy, dx, dy) && !ina && !inb ? 1 : (ina != inb ? 1 : 0);
    } else if (ina != inb) {
        routeA = 1;
    } else if (!ina && !inb) {
        // both outside: the inside sub-arc sits around direction d
        routeA = in_ccw_span(ux, uy, vx, vy, dx, dy) ? 2 : 0;
    } else {
        // both inside: the outside sub-arc sits around direction -d
        routeA = in_ccw_span(ux, uy, vx, vy, -dx, -dy) ? 2 : 0;
    }

    // route B: per-branch membership of the circle-pair intersections
    int routeB = 0;
    if (D < Rat(4) && D.sign() > 0) {
        Rat T = (Rat(4) - D) / (Rat(4) * D);
        for (int s : {1, -1})
            if (in_ccw_span_symbolic(ux, uy, vx, vy, dx, dy, s, T)) ++routeB;
    } else if (D == Rat(4)) {
        routeB = in_ccw_span(ux, uy, vx, vy, dx, dy) ? 1 : 0;
    }
    if (routeA != routeB) throw std::logic_error("arc crossing routes disagree");
    return routeA;
}

namespace {

// closed-arc membership of a circle-pair intersection branch on the arc's circle
bool branch_on_closed_arc(const ArcSpec& arc, const Point2& other_center, int s) {
    const Point2& q0 = arc.center;
    Rat dx = other_center.x - q0.x, dy = other_center.y - q0.y;
    Rat D = dx * dx + dy * dy;
    Rat T = (Rat(4) - D) / (Rat(4) * D);
    Rat ux = arc.from.x - q0.x, uy = arc.from.y - q0.y;
    Rat vx = arc.to.x - q0.x, vy = arc.to.y - q0.y;
    // equality with an endpoint: endpoint on the other circle and on branch s
    auto is_branch_endpoint = [&](const Point2& e) {
        if (squared_distance(e, other_center) != Rat(1)) return false;
        Rat c = cross(dx, dy, e.x - q0.x - dx / Rat(2), e.y - q0.y - dy / Rat(2));
        int side = c.sign();
        // branch +1 has cross(d, w - d/2) = t*cross(d, perp d) = t*|d|^2 > 0
        return side == s || side == 0;
    };
    if (is_branch_endpoint(arc.from) || is_branch_endpoint(arc.to)) return true;
    return in_ccw_span_symbolic(ux, uy, vx, vy, dx, dy, s, T);
}

bool point_on_closed_arc(const ArcSpec& arc, const Point2& z) {
    if (z == arc.from || z == arc.to) return true;
    return in_ccw_span(arc.from.x - arc.center.x, arc.from.y - arc.center.y,
                       arc.to.x - arc.center.x, arc.to.y - arc.center.y, z.x - arc.center.x,
                       z.y - arc.center.y);
}

}  // namespace

ArcCrossKind simple_double_classify(const ArcSpec& a, const ArcSpec& b) {
    a.validate();
    b.validate();
    if (a.center == b.center)
        throw std::invalid_argument("classify expects arcs on distinct circles");
    CirclePairKind kind = circle_pair_kind(a.center, b.center);
    if (kind == CirclePairKind::Disjoint) return ArcCrossKind::None;
    if (kind == CirclePairKind::Tangent) {
        Point2 t{(a.center.x + b.center.x) / Rat(2), (a.center.y + b.center.y) / Rat(2)};
        bool on = point_on_closed_arc(a, t) && point_on_closed_arc(b, t);
        return on ? ArcCrossKind::Simple : ArcCrossKind::None;
    }
    int common = 0;
    for (int s : {1, -1}) {
        // the branch as seen from a.center toward b.center flips sign from b's view
        bool on_a = branch_on_closed_arc(a, b.center, s);
        bool on_b = branch_on_closed_arc(b, a.center, -s);
        if (on_a && on_b) ++common;
    }
    return common == 0 ? ArcCrossKind::None
           : common == 1 ? ArcCrossKind::Simple
                         : ArcCrossKind::Double;
}

namespace {

int octant(const Rat& x, const Rat& y) {
    int sx = x.sign(), sy = y.sign();
    if (sx > 0 && sy == 0) return 0;
    if (sx > 0 && sy > 0) return 1;
    if (sx == 0 && sy > 0) return 2;
    if (sx < 0 && sy > 0) return 3;
    if (sx < 0 && sy == 0) return 4;
    if (sx < 0 && sy < 0) return 5;
    if (sx == 0 && sy < 0) return 6;
    return 7;
}

int angle_cmp(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
    int oa = octant(ax, ay), ob = octant(bx, by);
    if (oa != ob) return oa < ob ? -1 : 1;
    Rat cr = ax * by - ay * bx;
    return cr.sign() > 0 ? -1 : cr.sign() < 0 ? 1 : 0;
}

}  // namespace

CircleGraphResult circle_crossing_graph(const CircleConfig& cfg,
                                        const std::vector<int>& point_subset,
                                        const SlackParams& params) {
    CircleGraphResult res;
    res.vertices = static_cast<long long>(point_subset.size());
    struct ArcEdge {
        ArcSpec arc;
        int circle, pa, pb;
    };
    std::vector<ArcEdge> edges;
    for (std::size_t c = 0; c < cfg.points.size(); ++c) {
        const Point2& center = cfg.points[c];
        std::vector<int> on;
        for (int pi : point_subset)
            if (pi != static_cast<int>(c) &&
                squared_distance(cfg.points[pi], center) == Rat(1))
                on.push_back(pi);
        if (on.size() < 2) continue;
        std::sort(on.begin(), on.end(), [&](int p, int q) {
            const Point2 &a = cfg.points[p], &b = cfg.points[q];
            int cc = angle_cmp(a.x - center.x, a.y - center.y, b.x - center.x, b.y - center.y);
            if (cc != 0) return cc < 0;
            return p < q;
        });
        // cyclic consecutive pairs; for two points this already yields the two
        // complementary arcs
        for (std::size_t t = 0; t < on.size(); ++t) {
            int pa = on[t], pb = on[(t + 1) % on.size()];
            edges.push_back(
                {{center, cfg.points[pa], cfg.points[pb]}, static_cast<int>(c), pa, pb});
        }
    }
    res.edges = static_cast<long long>(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& e1 = edges[i];
            const auto& e2 = edges[j];
            if (e1.circle == e2.circle) continue;
            if (e1.pa == e2.pa || e1.pa == e2.pb || e1.pb == e2.pa || e1.pb == e2.pb)
                continue;  // shared endpoint contributes nothing
            switch (simple_double_classify(e1.arc, e2.arc)) {
                case ArcCrossKind::Simple: res.crossings += 1; break;
                case ArcCrossKind::Double: res.crossings += 2; break;
                default: break;
            }
        }
    if (res.vertices > 0 && res.edges >= 10 * res.vertices) {
        Rat bound = params.c_cross * Rat(res.edges) * Rat(res.edges) * Rat(res.edges) /
                    (Rat(res.vertices) * Rat(res.vertices));
        res.lb_margin = Rat(res.crossings) / bound;
    }
    return res;
}

CircleCoverResult circle_structured_sets(const CircleConfig& cfg,
                                         const std::vector<int>& circles,
                                         const std::vector<int>& candidates, long long cap) {
    CircleCoverResult res;
    std::vector<std::vector<int>> on(candidates.size());
    for (std::size_t ci = 0; ci < candidates.size(); ++ci)
        for (std::size_t t = 0; t < circles.size(); ++t)
            if (squared_distance(cfg.points[candidates[ci]], cfg.points[circles[t]]) == Rat(1))
                on[ci].push_back(static_cast<int>(t));
    std::vector<int> need(circles.size(), 2);
    std::vector<char> used(candidates.size(), 0);
    while (static_cast<long long>(res.points.size()) < cap) {
        long long bg = 0;
        int best = -1;
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            if (used[ci]) continue;
            long long g = 0;
            for (int t : on[ci])
                if (need[t] > 0) ++g;
            if (g > bg) {
                bg = g;
                best = static_cast<int>(ci);
            }
        }
        if (best < 0 || bg == 0) break;
        used[best] = 1;
        res.points.push_back(candidates[best]);
        for (int t : on[best])
            if (need[t] > 0) --need[t];
        if (std::all_of(need.begin(), need.end(), [](int n) { return n == 0; })) break;
    }
    res.circles_covered = static_cast<long long>(std::count(need.begin(), need.end(), 0));
    res.success = res.circles_covered == static_cast<long long>(circles.size());
    return res;
}

CircleBush build_circle_bush(const CircleConfig& cfg, int p) {
    CircleBush b;
    b.center = p;
    const Point2& q = cfg.points[p];
    for (std::size_t c = 0; c < cfg.points.size(); ++c)
        if (static_cast<int>(c) != p && squared_distance(cfg.points[c], q) == Rat(1))
            b.circles.push_back(static_cast<int>(c));
    if (b.circles.size() < 2) throw too_few_bush_circles();
    std::sort(b.circles.begin(), b.circles.end(), [&](int a, int c) {
        // tangent direction at q is perpendicular to (center - q); order mod pi
        const Point2 &ca = cfg.points[a], &cc = cfg.points[c];
        DirKey ka = dir_key(-(ca.y - q.y), ca.x - q.x);
        DirKey kc = dir_key(-(cc.y - q.y), cc.x - q.x);
        if (!(ka == kc)) return ka < kc;
        return a < c;
    });
    return b;
}

std::optional<int> circle_sector_of(const CircleConfig& cfg, const CircleBush& bush,
                                    const Point2& q) {
    int M = static_cast<int>(bush.circles.size());
    std::vector<DiskSide> side(M);
    for (int i = 0; i < M; ++i) {
        side[i] = disk_membership(q, cfg.points[bush.circles[i]]);
        if (side[i] == DiskSide::On) return std::nullopt;
    }
    for (int i = 0; i < M; ++i) {
        bool a = side[i] == DiskSide::Inside;
        bool b = side[(i + 1) % M] == DiskSide::Inside;
        if (a != b) return i;
    }
    return std::nullopt;  // inside all or outside all consecutive pairs equally
}

CircleDoubleBushResult circle_double_bush_partition(const CircleConfig& cfg, int p1, int p2,
                                                    const SlackParams& params) {
    CircleDoubleBushResult res;
    res.bush1 = build_circle_bush(cfg, p1);
    res.bush2 = build_circle_bush(cfg, p2);
    res.cell_of_point.assign(cfg.points.size(), -1);
    std::map<std::pair<int, int>, int> key_cell;
    for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
        if (static_cast<int>(pi) == p1 || static_cast<int>(pi) == p2) continue;
        const Point2& q = cfg.points[pi];
        bool boundary = false;
        for (int c : res.bush1.circles)
            if (disk_membership(q, cfg.points[c]) == DiskSide::On) boundary = true;
        for (int c : res.bush2.circles)
            if (disk_membership(q, cfg.points[c]) == DiskSide::On) boundary = true;
        if (boundary) {
            res.boundary_points.push_back(static_cast<int>(pi));
            continue;
        }
        auto s1 = circle_sector_of(cfg, res.bush1, q);
        auto s2 = circle_sector_of(cfg, res.bush2, q);
        if (!s1.has_value() || !s2.has_value()) {
            res.unassigned_points.push_back(static_cast<int>(pi));
            continue;
        }
        auto [it, fresh] =
            key_cell.emplace(std::make_pair(*s1, *s2), static_cast<int>(res.cells.size()));
        if (fresh) {
            res.cells.push_back({});
            res.cell_key.push_back({*s1, *s2});
        }
        res.cells[it->second].push_back(static_cast<int>(pi));
        res.cell_of_point[pi] = it->second;
    }
    res.cell_point_cap = ceil_pow(cfg.N, Rat(1, 3) + params.epsilon);
    for (const auto& cell : res.cells)
        res.max_cell_points =
            std::max(res.max_cell_points, static_cast<long long>(cell.size()));
    return res;
}

}  // namespace stw

#include "stw/arrangement.hpp"

#include <algorithm>
#include <tuple>

namespace stw {

namespace {

// full-2pi exact angle comparison: octant class, then cross product
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

int Arrangement::dart_source(int d) const {
    const Edge& e = edges_[d / 2];
    return (d % 2 == 0) ? e.v_from : e.v_to;
}

bool Arrangement::is_leading_ray(int edge) const {
    const Edge& e = edges_[edge];
    if (e.v_to != kInfinity || e.v_from == kInfinity) return false;
    return edge == edges_on_line_[e.line].front() && edges_on_line_[e.line].size() > 1;
}

std::pair<Rat, Rat> Arrangement::dart_dir(int d) const {
    const Edge& e = edges_[d / 2];
    const Line& l = lines_[e.line];
    Rat ux = l.b, uy = -l.a;
    bool fwd = (d % 2 == 0);
    // forward darts run in +u, except along the leading ray which points outward -u
    bool flip = is_leading_ray(d / 2);
    if (fwd != flip) return {ux, uy};
    return {-ux, -uy};
}

struct ArrangementBuilder {
    static Arrangement run(std::vector<Line> lines) {
        Arrangement A;
        A.lines_ = std::move(lines);
        {
            std::vector<Line> sorted = A.lines_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw duplicate_lines();
        }

        for (std::size_t i = 0; i < A.lines_.size(); ++i)
            for (std::size_t j = i + 1; j < A.lines_.size(); ++j) {
                HPoint h = meet(A.lines_[i], A.lines_[j]);
                if (h.at_infinity()) continue;
                Point2 p = h.affine();
                auto [it, fresh] =
                    A.vertex_index_.emplace(p, static_cast<int>(A.vertices_.size()));
                if (fresh) A.vertices_.push_back({p, {}, {}});
                auto& ls = A.vertices_[it->second].lines;
                for (int li : {static_cast<int>(i), static_cast<int>(j)})
                    if (std::find(ls.begin(), ls.end(), li) == ls.end()) ls.push_back(li);
            }
        for (auto& v : A.vertices_) std::sort(v.lines.begin(), v.lines.end());

        A.edges_on_line_.assign(A.lines_.size(), {});
        struct InfDart {
            int dart;
            Rat dx, dy;  // plane-entering direction
            Rat off;     // big-circle tie-break, descending
        };
        std::vector<InfDart> at_inf;
        auto add_edge = [&](int line, int vf, int vt) {
            int e = static_cast<int>(A.edges_.size());
            A.edges_.push_back({line, vf, vt});
            A.edges_on_line_[line].push_back(e);
            return e;
        };
        for (std::size_t li0 = 0; li0 < A.lines_.size(); ++li0) {
            int li = static_cast<int>(li0);
            const Line& l = A.lines_[li0];
            Rat ux = l.b, uy = -l.a;
            Point2 anchor =
                l.vertical() ? Point2{-l.c / l.a, Rat(0)} : Point2{Rat(0), l.y_at(Rat(0))};
            Rat off = ux * anchor.y - uy * anchor.x;  // cross(u, point on line), invariant
            std::vector<std::pair<Rat, int>> on;
            for (std::size_t vi = 0; vi < A.vertices_.size(); ++vi)
                if (l.contains(A.vertices_[vi].p)) {
                    const Point2& p = A.vertices_[vi].p;
                    on.push_back({ux * p.x + uy * p.y, static_cast<int>(vi)});
                }
            std::sort(on.begin(), on.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (on.empty()) {
                int e = add_edge(li, Arrangement::kInfinity, Arrangement::kInfinity);
                at_inf.push_back({2 * e, ux, uy, -off});      // enters moving +u
                at_inf.push_back({2 * e + 1, -ux, -uy, off}); // enters moving -u
                continue;
            }
            int e0 = add_edge(li, on.front().second, Arrangement::kInfinity);  // leading ray
            at_inf.push_back({2 * e0 + 1, ux, uy, -off});
            for (std::size_t t = 0; t + 1 < on.size(); ++t)
                add_edge(li, on[t].second, on[t + 1].second);
            int e1 = add_edge(li, on.back().second, Arrangement::kInfinity);  // trailing ray
            at_inf.push_back({2 * e1 + 1, -ux, -uy, off});
        }

        std::size_t nd = 2 * A.edges_.size();
        A.dart_face_.assign(nd, -1);
        A.rot_next_.assign(nd, -1);

        for (std::size_t d = 0; d < nd; ++d) {
            int src = A.dart_source(static_cast<int>(d));
            if (src != Arrangement::kInfinity)
                A.vertices_[src].out_darts.push_back(static_cast<int>(d));
        }
        for (auto& v : A.vertices_) {
            std::sort(v.out_darts.begin(), v.out_darts.end(), [&](int a, int b) {
                auto [ax, ay] = A.dart_dir(a);
                auto [bx, by] = A.dart_dir(b);
                int c = angle_cmp(ax, ay, bx, by);
                if (c != 0) return c < 0;
                return a < b;
            });
            for (std::size_t i = 0; i < v.out_darts.size(); ++i)
                A.rot_next_[v.out_darts[i]] = v.out_darts[(i + 1) % v.out_darts.size()];
        }
        std::sort(at_inf.begin(), at_inf.end(), [&](const InfDart& a, const InfDart& b) {
            int c = angle_cmp(a.dx, a.dy, b.dx, b.dy);
            if (c != 0) return c > 0;  // descending angle on the compactification
            if (a.off != b.off) return a.off > b.off;
            return a.dart < b.dart;
        });
        for (std::size_t i = 0; i < at_inf.size(); ++i)
            A.rot_next_[at_inf[i].dart] = at_inf[(i + 1) % at_inf.size()].dart;

        std::vector<Arrangement::Face> faces;
        for (std::size_t d0 = 0; d0 < nd; ++d0) {
            if (A.dart_face_[d0] != -1) continue;
            Arrangement::Face f;
            int fid = static_cast<int>(faces.size());
            int d = static_cast<int>(d0);
            do {
                A.dart_face_[d] = fid;
                f.darts.push_back(d);
                d = A.rot_next_[d ^ 1];
            } while (d != static_cast<int>(d0));
            faces.push_back(std::move(f));
        }
        if (nd == 0) faces.push_back({});

        for (auto& f : faces) {
            f.bounded = !f.darts.empty();
            for (int d : f.darts) {
                const auto& e = A.edges_[d / 2];
                if (e.v_from == Arrangement::kInfinity || e.v_to == Arrangement::kInfinity)
                    f.bounded = false;
                f.edge_list.push_back(d / 2);
                int src = A.dart_source(d);
                if (src != Arrangement::kInfinity) f.vertex_list.push_back(src);
            }
            auto uniq = [](std::vector<int>& v) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
            };
            uniq(f.edge_list);
            uniq(f.vertex_list);
        }

        A.faces_ = std::move(faces);
        return A;
    }
};

// vertex_list is kept ascending by construction; boundary-vertex minimality needs
// the geometric minimum, so resolve it here
namespace {
const Point2& min_vertex_point(const Arrangement& A, const Arrangement::Face& f) {
    int best = f.vertex_list.front();
    for (int v : f.vertex_list)
        if (A.vertices()[v].p < A.vertices()[best].p) best = v;
    return A.vertices()[best].p;
}
}  // namespace

Arrangement Arrangement::build(std::vector<Line> lines) {
    Arrangement A = ArrangementBuilder::run(std::move(lines));
    // re-sort faces by true geometric minimum vertex (builder used first-listed)
    std::vector<int> order(A.faces_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int fa, int fb) {
        const auto& a = A.faces_[fa];
        const auto& b = A.faces_[fb];
        bool ha = !a.vertex_list.empty(), hb = !b.vertex_list.empty();
        if (ha != hb) return ha;
        if (ha) {
            const Point2& pa = min_vertex_point(A, a);
            const Point2& pb = min_vertex_point(A, b);
            if (pa != pb) return pa < pb;
        }
        int la = a.edge_list.empty() ? -1 : A.edges_[a.edge_list.front()].line;
        int lb = b.edge_list.empty() ? -1 : A.edges_[b.edge_list.front()].line;
        if (la != lb) return la < lb;
        if (a.edge_list.size() != b.edge_list.size())
            return a.edge_list.size() < b.edge_list.size();
        int da = a.darts.empty() ? -1 : *std::min_element(a.darts.begin(), a.darts.end());
        int db = b.darts.empty() ? -1 : *std::min_element(b.darts.begin(), b.darts.end());
        return da < db;
    });
    std::vector<int> rank(A.faces_.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    std::vector<Face> nf(A.faces_.size());
    for (std::size_t i = 0; i < A.faces_.size(); ++i) nf[rank[i]] = std::move(A.faces_[i]);
    A.faces_ = std::move(nf);
    for (auto& df : A.dart_face_) df = rank[df];
    return A;
}

bool Arrangement::euler_ok() const {
    long long v = static_cast<long long>(vertices_.size()) + 1;
    long long e = static_cast<long long>(edges_.size());
    long long f = static_cast<long long>(faces_.size());
    return v - e + f == 2;
}

int Arrangement::edge_on_line_at(int line, const Point2& p) const {
    const Line& l = lines_[line];
    Rat ux = l.b, uy = -l.a;
    Rat t = ux * p.x + uy * p.y;
    const auto& list = edges_on_line_[line];
    if (edges_[list.front()].v_from == kInfinity) return list.front();  // loop
    auto param_of = [&](int v) {
        const Point2& q = vertices_[v].p;
        return ux * q.x + uy * q.y;
    };
    if (t <= param_of(edges_[list.front()].v_from)) return list.front();
    for (std::size_t i = 1; i + 1 < list.size(); ++i)
        if (t <= param_of(edges_[list[i]].v_to)) return list[i];
    return list.back();
}

FaceId Arrangement::face_below_edge(int e) const {
    auto [dx, dy] = dart_dir(2 * e);
    return dx.sign() > 0 ? dart_face_[2 * e] : dart_face_[2 * e + 1];
}

FaceId Arrangement::face_above_edge(int e) const {
    auto [dx, dy] = dart_dir(2 * e);
    return dx.sign() > 0 ? dart_face_[2 * e + 1] : dart_face_[2 * e];
}

FaceId Arrangement::face_at_vertex_toward(int v, const Rat& dx, const Rat& dy,
                                          bool allow_equal_low) const {
    const auto& outs = vertices_[v].out_darts;
    int pick = -1;
    for (int d : outs) {
        auto [sx, sy] = dart_dir(d);
        int c = angle_cmp(sx, sy, dx, dy);
        if (c < 0 || (c == 0 && allow_equal_low)) pick = d;
    }
    if (pick == -1) pick = outs.back();  // wrap below the smallest angle
    return dart_face_[pick ^ 1];
}

Arrangement::Location Arrangement::locate(const Point2& p) const {
    std::vector<int> through;
    for (std::size_t li = 0; li < lines_.size(); ++li)
        if (lines_[li].contains(p)) through.push_back(static_cast<int>(li));
    if (!through.empty()) {
        auto it = vertex_index_.find(p);
        if (it != vertex_index_.end()) return {Location::OnVertex, -1, -1, it->second};
        return {Location::OnEdge, -1, edge_on_line_at(through.front(), p), -1};
    }
    if (edges_.empty()) return {Location::InFace, 0, -1, -1};

    bool have_above = false, have_below = false;
    Rat best_above, best_below;
    int above_line = -1, below_line = -1;
    for (std::size_t li = 0; li < lines_.size(); ++li) {
        const Line& l = lines_[li];
        if (l.vertical()) continue;
        Rat y = l.y_at(p.x);
        if (y > p.y && (!have_above || y < best_above)) {
            best_above = y;
            above_line = static_cast<int>(li);
            have_above = true;
        } else if (y < p.y && (!have_below || y > best_below)) {
            best_below = y;
            below_line = static_cast<int>(li);
            have_below = true;
        }
    }
    if (have_above) {
        Point2 q{p.x, best_above};
        auto it = vertex_index_.find(q);
        if (it != vertex_index_.end())
            return {Location::InFace, face_at_vertex_toward(it->second, Rat(0), Rat(-1), false),
                    -1, -1};
        return {Location::InFace, face_below_edge(edge_on_line_at(above_line, q)), -1, -1};
    }
    if (have_below) {
        Point2 q{p.x, best_below};
        auto it = vertex_index_.find(q);
        if (it != vertex_index_.end())
            return {Location::InFace, face_at_vertex_toward(it->second, Rat(0), Rat(1), false),
                    -1, -1};
        return {Location::InFace, face_above_edge(edge_on_line_at(below_line, q)), -1, -1};
    }
    // only vertical lines cross no horizontal through p: nearest right, else left
    bool have_r = false, have_l = false;
    Rat xr, xl;
    int lr = -1, ll = -1;
    for (std::size_t li = 0; li < lines_.size(); ++li) {
        if (!lines_[li].vertical()) continue;
        Rat x = -lines_[li].c / lines_[li].a;
        if (x > p.x && (!have_r || x < xr)) {
            xr = x;
            lr = static_cast<int>(li);
            have_r = true;
        }
        if (x < p.x && (!have_l || x > xl)) {
            xl = x;
            ll = static_cast<int>(li);
            have_l = true;
        }
    }
    if (have_r) {
        int e = edge_on_line_at(lr, Point2{xr, p.y});
        auto [dx, dy] = dart_dir(2 * e);
        // the dart moving -y has the left side (x < xr) on its right
        return {Location::InFace, dart_face_[dy.sign() < 0 ? 2 * e : 2 * e + 1], -1, -1};
    }
    if (have_l) {
        int e = edge_on_line_at(ll, Point2{xl, p.y});
        auto [dx, dy] = dart_dir(2 * e);
        return {Location::InFace, dart_face_[dy.sign() > 0 ? 2 * e : 2 * e + 1], -1, -1};
    }
    return {Location::InFace, 0, -1, -1};
}

FaceId Arrangement::locate_nudged_up_left(const Point2& p) const {
    std::vector<int> through;
    for (std::size_t li = 0; li < lines_.size(); ++li)
        if (lines_[li].contains(p)) through.push_back(static_cast<int>(li));
    if (through.empty()) return locate(p).face;
    auto it = vertex_index_.find(p);
    if (it != vertex_index_.end())
        return face_at_vertex_toward(it->second, Rat(0), Rat(1), true);
    int li = through.front();
    int e = edge_on_line_at(li, p);
    const Line& l = lines_[li];
    if (!l.vertical()) return face_above_edge(e);
    auto [dx, dy] = dart_dir(2 * e);
    return dart_face_[dy.sign() < 0 ? 2 * e : 2 * e + 1];  // left side
}

std::vector<FaceId> Arrangement::faces_at_vertex(int v) const {
    std::vector<FaceId> out;
    for (int d : vertices_[v].out_darts) out.push_back(dart_face_[d ^ 1]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FaceId> Arrangement::zone(const Line& l) const {
    for (const auto& m : lines_)
        if (m == l) throw line_in_arrangement();
    Rat ux = l.b, uy = -l.a;
    Rat n2 = ux * ux + uy * uy;
    Point2 p0 = l.vertical() ? Point2{-l.c / l.a, Rat(0)} : Point2{Rat(0), l.y_at(Rat(0))};
    Rat s0 = ux * p0.x + uy * p0.y;
    std::vector<std::pair<Rat, Point2>> hits;
    for (const auto& m : lines_) {
        HPoint h = meet(l, m);
        if (h.at_infinity()) continue;
        Point2 q = h.affine();
        hits.push_back({ux * q.x + uy * q.y, q});
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               hits.end());
    std::vector<Rat> samples;
    if (hits.empty()) {
        samples.push_back(s0);
    } else {
        samples.push_back(hits.front().first - n2);
        for (std::size_t i = 0; i + 1 < hits.size(); ++i)
            samples.push_back((hits[i].first + hits[i + 1].first) / Rat(2));
        samples.push_back(hits.back().first + n2);
    }
    std::vector<FaceId> out;
    for (const Rat& s : samples) {
        Point2 q{p0.x + ux * (s - s0) / n2, p0.y + uy * (s - s0) / n2};
        auto loc = locate(q);
        if (loc.kind == Location::InFace) out.push_back(loc.face);
    }
    for (auto& [t, q] : hits) {
        auto it = vertex_index_.find(q);
        if (it != vertex_index_.end()) {
            auto fs = faces_at_vertex(it->second);
            out.insert(out.end(), fs.begin(), fs.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Arrangement::side_count(FaceId f) const {
    return static_cast<int>(faces_[f].edge_list.size());
}

Rat Arrangement::face_area(FaceId f) const {
    const Face& fc = faces_[f];
    if (!fc.bounded) throw geometry_error("face_area: unbounded face");
    Rat s(0);
    for (int d : fc.darts) {
        const Edge& e = edges_[d / 2];
        int a = (d % 2 == 0) ? e.v_from : e.v_to;
        int b = (d % 2 == 0) ? e.v_to : e.v_from;
        const Point2& pa = vertices_[a].p;
        const Point2& pb = vertices_[b].p;
        s += pa.x * pb.y - pb.x * pa.y;
    }
    Rat area = s / Rat(2);
    return area.sign() < 0 ? -area : area;
}

FunnelDecomposition funnelize(const Arrangement& arr) {
    for (const auto& l : arr.lines())
        if (l.vertical()) throw vertical_line_present();
    FunnelDecomposition fd;
    fd.arrangement = &arr;
    fd.by_face.assign(arr.face_count(), {});
    for (std::size_t f = 0; f < arr.face_count(); ++f) {
        const auto& face = arr.faces()[f];
        std::vector<Rat> xs;
        for (int v : face.vertex_list) xs.push_back(arr.vertices()[v].p.x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        bool left_open = false, right_open = false;
        if (!face.bounded) {
            if (xs.empty()) {
                left_open = right_open = true;
            } else {
                for (int d : face.darts) {
                    const auto& e = arr.edges()[d / 2];
                    bool from_inf = e.v_from == Arrangement::kInfinity;
                    bool to_inf = e.v_to == Arrangement::kInfinity;
                    if (!from_inf && !to_inf) continue;
                    const Line& el = arr.lines()[e.line];
                    if (from_inf && to_inf) {
                        left_open = right_open = true;
                    } else {
                        Rat ox = arr.is_leading_ray(d / 2) ? -el.b : el.b;
                        if (ox.sign() < 0) left_open = true;
                        if (ox.sign() > 0) right_open = true;
                    }
                }
            }
        }
        std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>> slabs;
        if (xs.empty()) {
            slabs.push_back({std::nullopt, std::nullopt});
        } else {
            if (left_open) slabs.push_back({std::nullopt, xs.front()});
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) slabs.push_back({xs[i], xs[i + 1]});
            if (right_open) slabs.push_back({xs.back(), std::nullopt});
        }
        for (auto& [lo, hi] : slabs) {
            Trapezoid t;
            t.face = static_cast<FaceId>(f);
            t.x_lo = lo;
            t.x_hi = hi;
            Rat probe_x = (lo && hi) ? (*lo + *hi) / Rat(2)
                          : lo       ? *lo + Rat(1)
                          : hi       ? *hi - Rat(1)
                                     : Rat(0);
            for (int e : face.edge_list) {
                const auto& ed = arr.edges()[e];
                const Line& el = arr.lines()[ed.line];
                bool covers;
                if (ed.v_from != Arrangement::kInfinity && ed.v_to != Arrangement::kInfinity) {
                    Rat x0 = arr.vertices()[ed.v_from].p.x;
                    Rat x1 = arr.vertices()[ed.v_to].p.x;
                    if (x0 > x1) std::swap(x0, x1);
                    covers = x0 <= probe_x && probe_x <= x1;
                } else if (ed.v_from != Arrangement::kInfinity) {
                    Rat x0 = arr.vertices()[ed.v_from].p.x;
                    Rat ox = arr.is_leading_ray(e) ? -el.b : el.b;
                    covers = ox.sign() > 0 ? probe_x >= x0 : probe_x <= x0;
                } else {
                    covers = true;  // full-line loop
                }
                if (!covers) continue;
                if (arr.face_below_edge(e) == static_cast<FaceId>(f))
                    t.top_edge = e;
                else if (arr.face_above_edge(e) == static_cast<FaceId>(f))
                    t.bottom_edge = e;
            }
            int sides = (t.top_edge ? 1 : 0) + (t.bottom_edge ? 1 : 0);
            auto wall = [&](const std::optional<Rat>& x) {
                if (!x) return 0;
                if (t.top_edge && t.bottom_edge) {
                    const Line& top = arr.lines()[arr.edges()[*t.top_edge].line];
                    const Line& bot = arr.lines()[arr.edges()[*t.bottom_edge].line];
                    if (top.y_at(*x) == bot.y_at(*x)) return 0;  // chains meet in a corner
                }
                return 1;
            };
            sides += wall(t.x_lo) + wall(t.x_hi);
            t.sides = sides;
            fd.by_face[f].push_back(static_cast<int>(fd.trapezoids.size()));
            fd.trapezoids.push_back(t);
        }
    }
    return fd;
}

int FunnelDecomposition::locate_in_face(FaceId f, const Point2& p) const {
    const auto& list = by_face[f];
    int pick = list.front();
    for (int t : list) {
        const auto& tr = trapezoids[t];
        if (!tr.x_lo || *tr.x_lo < p.x) pick = t;
    }
    return pick;
}

Rat FunnelDecomposition::area(int t) const {
    const auto& tr = trapezoids[t];
    if (!tr.x_lo || !tr.x_hi || !tr.top_edge || !tr.bottom_edge)
        throw geometry_error("trapezoid area: unbounded");
    const Arrangement& arr = *arrangement;
    const Line& top = arr.lines()[arr.edges()[*tr.top_edge].line];
    const Line& bot = arr.lines()[arr.edges()[*tr.bottom_edge].line];
    Rat h1 = top.y_at(*tr.x_lo) - bot.y_at(*tr.x_lo);
    Rat h2 = top.y_at(*tr.x_hi) - bot.y_at(*tr.x_hi);
    return (h1 + h2) * (*tr.x_hi - *tr.x_lo) / Rat(2);
}

std::vector<ComplexityBucket> complexity_histogram(const Arrangement& arr,
                                                   const std::vector<FaceId>& subset) {
    std::map<long long, long long> counts;
    for (FaceId f : subset) {
        int s = arr.side_count(f);
        if (s <= 0) continue;
        long long d = 1;
        while (2 * d < s) d *= 2;
        ++counts[d];
    }
    std::vector<ComplexityBucket> out;
    double r = static_cast<double>(arr.lines().size());
    for (auto [s, c] : counts) {
        double sd = static_cast<double>(s);
        out.push_back({s, c, r * r / (sd * sd * sd), r / sd});
    }
    return out;
}

}  // namespace stw

#include "stw/geometry.hpp"

namespace stw {

Line Line::canon(Rat A, Rat B, Rat C) {
    if (A.is_zero() && B.is_zero()) throw geometry_error("degenerate line (0,0,c)");
    Rat s = A.is_zero() ? B : A;
    return Line{A / s, B / s, C / s};
}

int orient(const Point2& p, const Point2& q, const Point2& r) {
    Rat d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return d.sign();
}

Line line_through(const Point2& p, const Point2& q) {
    if (p == q) throw identical_points();
    Rat A = q.y - p.y;
    Rat B = p.x - q.x;
    Rat C = -(A * p.x + B * p.y);
    return Line::canon(A, B, C);
}

HPoint meet(const Line& l1, const Line& l2) {
    if (l1 == l2) throw coincident_lines();
    // cross product of coefficient triples
    Rat X = l1.b * l2.c - l1.c * l2.b;
    Rat Y = l1.c * l2.a - l1.a * l2.c;
    Rat W = l1.a * l2.b - l1.b * l2.a;
    return HPoint{X, Y, W};
}

bool on_line_h(const Line& l, const HPoint& p) {
    return (l.a * p.X + l.b * p.Y + l.c * p.W).is_zero();
}

DirKey dir_key(const Line& l) {
    if (l.b.is_zero()) return {true, Rat(0)};
    return {false, -l.a / l.b};
}

DirKey dir_key(const Rat& vx, const Rat& vy) {
    if (vx.is_zero()) {
        if (vy.is_zero()) throw geometry_error("zero direction");
        return {true, Rat(0)};
    }
    return {false, vy / vx};
}

ProjectiveMap ProjectiveMap::identity() {
    return {{Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}};
}

ProjectiveMap ProjectiveMap::from_rows(const std::array<Rat, 9>& rows) {
    ProjectiveMap p{rows};
    if (p.det().is_zero()) throw geometry_error("singular projective map");
    return p;
}

Rat ProjectiveMap::det() const {
    const auto& a = m;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
}

ProjectiveMap ProjectiveMap::inverse() const {
    Rat d = det();
    if (d.is_zero()) throw geometry_error("singular projective map");
    const auto& a = m;
    std::array<Rat, 9> adj = {
        a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
        a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
        a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]};
    for (auto& v : adj) v = v / d;
    return {adj};
}

ProjectiveMap ProjectiveMap::compose(const ProjectiveMap& inner) const {
    std::array<Rat, 9> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat s(0);
            for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * inner.m[k * 3 + j];
            r[i * 3 + j] = s;
        }
    return {r};
}

HPoint ProjectiveMap::apply(const HPoint& p) const {
    return HPoint{m[0] * p.X + m[1] * p.Y + m[2] * p.W,
                  m[3] * p.X + m[4] * p.Y + m[5] * p.W,
                  m[6] * p.X + m[7] * p.Y + m[8] * p.W};
}

std::optional<Line> ProjectiveMap::apply(const Line& l) const {
    // l' = M^{-T} l
    ProjectiveMap inv = inverse();
    const auto& a = inv.m;
    Rat A = a[0] * l.a + a[3] * l.b + a[6] * l.c;
    Rat B = a[1] * l.a + a[4] * l.b + a[7] * l.c;
    Rat C = a[2] * l.a + a[5] * l.b + a[8] * l.c;
    if (A.is_zero() && B.is_zero()) return std::nullopt;
    return Line::canon(A, B, C);
}

ProjectiveMap send_to_infinity(const Point2& p1, const Point2& p2) {
    if (p1 == p2) throw identical_points();
    Rat dx = p2.x - p1.x, dy = p2.y - p1.y;
    // X' vanishes on the line through p2 perpendicular-in-direction to p1p2,
    // Y' on the parallel line through p1, W' on the line p1p2 itself.
    auto form = [](const Point2& p, const Rat& vx, const Rat& vy) {
        Rat A = vy, B = -vx;
        return std::array<Rat, 3>{A, B, -(A * p.x + B * p.y)};
    };
    auto X = form(p2, -dy, dx);
    auto Y = form(p1, -dy, dx);
    auto W = form(p1, dx, dy);
    return ProjectiveMap::from_rows(
        {X[0], X[1], X[2], Y[0], Y[1], Y[2], W[0], W[1], W[2]});
}

Line dualize_point(const Point2& p) {
    // y = a x - b  <->  a x - y - b = 0
    return Line::canon(p.x, Rat(-1), -p.y);
}

Point2 dualize_line(const Line& l) {
    if (l.b.is_zero()) throw vertical_line();
    // canonical non-vertical line has a = slope-form after rescale by -b
    Rat slope = -l.a / l.b;
    Rat icept = -l.c / l.b;
    return Point2{slope, -icept};
}

}  // namespace stw

#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "stw/rational.hpp"

namespace stw {

struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct identical_points : geometry_error {
    identical_points() : geometry_error("identical points") {}
};
struct coincident_lines : geometry_error {
    coincident_lines() : geometry_error("coincident lines") {}
};
struct vertical_line : geometry_error {
    vertical_line() : geometry_error("vertical line has no point dual") {}
};

struct Point2 {
    Rat x, y;

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    friend bool operator<(const Point2& a, const Point2& b) {
        int c = Rat::cmp(a.x, b.x);
        if (c != 0) return c < 0;
        return a.y < b.y;
    }
};

// homogeneous point (X : Y : W); W = 0 encodes a direction at infinity
struct HPoint {
    Rat X, Y, W;

    bool at_infinity() const { return W.is_zero(); }
    Point2 affine() const {
        if (at_infinity()) throw geometry_error("point at infinity has no affine form");
        return {X / W, Y / W};
    }
};

// the locus A x + B y + C = 0, (A,B) != (0,0), scaled so the first nonzero
// of (A,B) equals 1 — canonical form, usable as an ordered key
struct Line {
    Rat a, b, c;

    static Line canon(Rat A, Rat B, Rat C);

    bool vertical() const { return b.is_zero(); }
    Rat eval(const Point2& p) const { return a * p.x + b * p.y + c; }
    int side(const Point2& p) const { return eval(p).sign(); }
    bool contains(const Point2& p) const { return eval(p).is_zero(); }
    // y at given x; requires !vertical()
    Rat y_at(const Rat& x) const { return (-c - a * x) / b; }

    friend bool operator==(const Line& l, const Line& m) {
        return l.a == m.a && l.b == m.b && l.c == m.c;
    }
    friend bool operator!=(const Line& l, const Line& m) { return !(l == m); }
    friend bool operator<(const Line& l, const Line& m) {
        int c1 = Rat::cmp(l.a, m.a);
        if (c1 != 0) return c1 < 0;
        int c2 = Rat::cmp(l.b, m.b);
        if (c2 != 0) return c2 < 0;
        return l.c < m.c;
    }
};

// sign of det(q - p, r - p): +1 counterclockwise, 0 collinear, -1 clockwise
int orient(const Point2& p, const Point2& q, const Point2& r);

Line line_through(const Point2& p, const Point2& q);  // throws identical_points

// intersection as a homogeneous point; W = 0 iff parallel; throws coincident_lines
HPoint meet(const Line& l1, const Line& l2);

bool on_line_h(const Line& l, const HPoint& p);

// direction key for ordering lines of a pencil by direction mod pi.
// vertical sorts last: key = (is_vertical, slope).
struct DirKey {
    bool vertical;
    Rat slope;

    friend bool operator==(const DirKey& a, const DirKey& b) {
        return a.vertical == b.vertical && (a.vertical || a.slope == b.slope);
    }
    friend bool operator<(const DirKey& a, const DirKey& b) {
        if (a.vertical != b.vertical) return !a.vertical;
        if (a.vertical) return false;
        return a.slope < b.slope;
    }
};
DirKey dir_key(const Line& l);
DirKey dir_key(const Rat& vx, const Rat& vy);  // direction of a vector, mod pi

// row-major 3x3 matrix acting on homogeneous points; lines map by the inverse
// transpose
struct ProjectiveMap {
    std::array<Rat, 9> m;

    static ProjectiveMap identity();
    static ProjectiveMap from_rows(const std::array<Rat, 9>& rows);  // throws if singular

    Rat det() const;
    ProjectiveMap inverse() const;
    ProjectiveMap compose(const ProjectiveMap& inner) const;  // this ∘ inner

    HPoint apply(const HPoint& p) const;
    HPoint apply(const Point2& p) const { return apply(HPoint{p.x, p.y, Rat(1)}); }
    // image line; nullopt when the image is the line at infinity
    std::optional<Line> apply(const Line& l) const;
};

// projective map sending p1 to (1:0:0) and p2 to (0:1:0); throws identical_points
ProjectiveMap send_to_infinity(const Point2& p1, const Point2& p2);

// point (a,b) <-> line y = a x - b
Line dualize_point(const Point2& p);
Point2 dualize_line(const Line& l);  // throws vertical_line when b == 0

}  // namespace stw

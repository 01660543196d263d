#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stw/geometry.hpp"

using namespace stw;

namespace {
Point2 pt(long long x, long long y) { return {Rat(x), Rat(y)}; }

std::mt19937_64 rng(7);
Rat rnd_rat(long long span) {
    long long n = static_cast<long long>(rng() % (2 * span + 1)) - span;
    long long d = static_cast<long long>(rng() % 9) + 1;
    return Rat(n, d);
}
Point2 rnd_pt() { return {rnd_rat(50), rnd_rat(50)}; }
}  // namespace

TEST_CASE("orient basics") {
    CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
    CHECK(orient(pt(0, 0), pt(1, 0), pt(1, -1)) == -1);
}

TEST_CASE("orient is antisymmetric under swaps") {
    for (int i = 0; i < 300; ++i) {
        Point2 p = rnd_pt(), q = rnd_pt(), r = rnd_pt();
        int o = orient(p, q, r);
        CHECK(orient(q, p, r) == -o);
        CHECK(orient(p, r, q) == -o);
        CHECK(orient(r, q, p) == -o);
    }
}

TEST_CASE("line_through") {
    Line x_axis = line_through(pt(0, 0), pt(1, 0));
    CHECK(x_axis == Line::canon(Rat(0), Rat(1), Rat(0)));
    Line y_axis = line_through(pt(0, 0), pt(0, 1));
    CHECK(y_axis == Line::canon(Rat(1), Rat(0), Rat(0)));
    Line l = line_through(pt(0, 1), pt(1, 3));  // y = 2x + 1
    CHECK(l.a == Rat(1));
    CHECK(l.b == Rat(-1, 2));
    CHECK(l.c == Rat(1, 2));
    CHECK_THROWS_AS(line_through(pt(2, 2), pt(2, 2)), identical_points);
}

TEST_CASE("meet") {
    Line x0 = Line::canon(Rat(1), Rat(0), Rat(0));
    Line y0 = Line::canon(Rat(0), Rat(1), Rat(0));
    HPoint o = meet(x0, y0);
    CHECK(!o.at_infinity());
    CHECK(o.affine() == pt(0, 0));

    Line y1 = Line::canon(Rat(0), Rat(1), Rat(-1));
    HPoint par = meet(y0, y1);
    CHECK(par.at_infinity());
    // direction (1, 0) up to scale
    CHECK((par.X * Rat(0) == par.Y * Rat(1)));
    CHECK(!par.X.is_zero());

    Line d1 = line_through(pt(0, 0), pt(1, 1));
    Line d2 = line_through(pt(0, 2), pt(2, 0));
    CHECK(meet(d1, d2).affine() == pt(1, 1));
    CHECK_THROWS_AS(meet(y0, y0), coincident_lines);
}

TEST_CASE("meet lies on both lines") {
    for (int i = 0; i < 300; ++i) {
        Point2 a = rnd_pt(), b = rnd_pt(), c = rnd_pt(), d = rnd_pt();
        if (a == b || c == d) continue;
        Line l1 = line_through(a, b), l2 = line_through(c, d);
        if (l1 == l2) continue;
        HPoint m = meet(l1, l2);
        CHECK(on_line_h(l1, m));
        CHECK(on_line_h(l2, m));
    }
}

TEST_CASE("send_to_infinity postconditions") {
    auto check_pair = [](Point2 p1, Point2 p2) {
        ProjectiveMap M = send_to_infinity(p1, p2);
        CHECK(!M.det().is_zero());
        HPoint i1 = M.apply(p1);
        HPoint i2 = M.apply(p2);
        CHECK(i1.W.is_zero());
        CHECK(i1.Y.is_zero());
        CHECK(!i1.X.is_zero());
        CHECK(i2.W.is_zero());
        CHECK(i2.X.is_zero());
        CHECK(!i2.Y.is_zero());
    };
    check_pair(pt(1, 0), pt(0, 1));
    check_pair(pt(2, 3), pt(5, 7));
    CHECK_THROWS_AS(send_to_infinity(pt(1, 1), pt(1, 1)), identical_points);
}

TEST_CASE("bush lines through p1 become horizontal after the map") {
    Point2 p1 = pt(2, 3), p2 = pt(5, 7);
    ProjectiveMap M = send_to_infinity(p1, p2);
    // several lines through p1
    for (auto q : {pt(4, 4), pt(0, 9), pt(7, 2), pt(-3, 5), pt(1, -8)}) {
        Line l = line_through(p1, q);
        auto img = M.apply(l);
        REQUIRE(img.has_value());
        CHECK(img->a.is_zero());  // horizontal: A == 0
    }
    for (auto q : {pt(4, 4), pt(0, 9), pt(7, 2)}) {
        Line l = line_through(p2, q);
        auto img = M.apply(l);
        REQUIRE(img.has_value());
        CHECK(img->b.is_zero());  // vertical: B == 0
    }
    // the joining line maps to the line at infinity
    CHECK(!M.apply(line_through(p1, p2)).has_value());
}

TEST_CASE("projective maps preserve incidence") {
    for (int i = 0; i < 1000; ++i) {
        Point2 p1 = rnd_pt(), p2 = rnd_pt();
        if (p1 == p2) continue;
        ProjectiveMap M = send_to_infinity(p1, p2);
        Point2 a = rnd_pt(), b = rnd_pt();
        if (a == b) continue;
        Line l = line_through(a, b);
        Point2 c = rnd_pt();
        bool on = l.contains(c);
        auto li = M.apply(l);
        HPoint ci = M.apply(c);
        if (li.has_value()) {
            CHECK(on == on_line_h(*li, ci));
        }
    }
}

TEST_CASE("duality") {
    CHECK(dualize_point(pt(0, 0)) == Line::canon(Rat(0), Rat(1), Rat(0)));
    // (1,1) -> y = x - 1
    Line l = dualize_point(pt(1, 1));
    CHECK(l.contains(pt(1, 0)));
    CHECK(l.contains(pt(2, 1)));
    CHECK_THROWS_AS(dualize_line(Line::canon(Rat(1), Rat(0), Rat(3))), vertical_line);

    for (int i = 0; i < 100; ++i) {
        Point2 p = rnd_pt();
        CHECK(dualize_line(dualize_point(p)) == p);
        Point2 a = rnd_pt(), b = rnd_pt();
        if (a == b || a.x == b.x) continue;  // non-vertical line
        Line m = line_through(a, b);
        // incidence preserved both ways
        bool inc = m.contains(p);
        CHECK(inc == dualize_point(p).contains(dualize_line(m)));
    }
}

TEST_CASE("map inverse and composition") {
    ProjectiveMap M = send_to_infinity(pt(1, 2), pt(3, 5));
    ProjectiveMap I = M.compose(M.inverse());
    for (auto p : {pt(0, 0), pt(7, -4), pt(1, 1)}) {
        HPoint h = I.apply(p);
        CHECK(!h.at_infinity());
        CHECK(h.affine() == p);
    }
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "stw/config.hpp"
#include "stw/geometry.hpp"

namespace stw {

struct identical_centers : std::runtime_error {
    identical_centers() : std::runtime_error("identical circle centers") {}
};
struct degenerate_arc : std::runtime_error {
    degenerate_arc() : std::runtime_error("arc endpoints coincide") {}
};
struct too_few_bush_circles : std::runtime_error {
    too_few_bush_circles() : std::runtime_error("bush needs at least 2 circles through the point") {}
};

// unit circles centered at the points; circle id = point id
struct CircleConfig {
    std::vector<Point2> points;
    long long N = 0;

    static CircleConfig make(std::vector<Point2> points, long long N);
};

Rat squared_distance(const Point2& a, const Point2& b);

long long unit_distance_count(const std::vector<Point2>& points);

// (circle id, point id) pairs with |p - center| = 1; total is twice the
// unit-distance count
IncidenceSet circle_incidences(const CircleConfig& cfg);

enum class CirclePairKind { Disjoint, Tangent, TwoPoints };
CirclePairKind circle_pair_kind(const Point2& c1, const Point2& c2);

enum class DiskSide { Inside, On, Outside };
DiskSide disk_membership(const Point2& p, const Point2& center);

// symbolic intersection of two unit circles; branch 0 lies left of the directed
// center-to-center segment
struct CirclePoint {
    int c1 = -1, c2 = -1;
    int branch = 0;
};

// counterclockwise arc on the unit circle at `center` from `from` to `to`,
// endpoints rational points on the circle
struct ArcSpec {
    Point2 center;
    Point2 from, to;

    void validate() const;  // endpoints on the circle and distinct
};

enum class SectorSide { In, Out, Boundary };
// symmetric difference of the unit disks at q_i and q_{i+1}
SectorSide sector_membership_geometric(const Point2& p, const Point2& qi, const Point2& qi1);

// crossings of the unit circle at p with the open arc; two independent exact
// routes (endpoint parity + nearest/farthest approach, and per-branch
// semialgebraic membership), cross-asserted
int arc_crossing_count(const Point2& p, const ArcSpec& arc);

enum class ArcCrossKind { None, Simple, Double };
// common points of the two closed arcs; arcs on distinct circles
ArcCrossKind simple_double_classify(const ArcSpec& a, const ArcSpec& b);

struct CircleGraphResult {
    long long vertices = 0;
    long long edges = 0;
    long long crossings = 0;  // Simple = 1, Double = 2 over arc-edge pairs
    std::optional<Rat> lb_margin;  // vs c_cross e^3/v^2 when e >= 10v
};

// multigraph of consecutive-incidence arcs per circle over the given points
CircleGraphResult circle_crossing_graph(const CircleConfig& cfg,
                                        const std::vector<int>& point_subset,
                                        const SlackParams& params);

struct CircleCoverResult {
    bool success = false;
    std::vector<int> points;
    long long circles_covered = 0;
};

// greedy 2-cover of circles by candidate points (incidence: |p - center| = 1)
CircleCoverResult circle_structured_sets(const CircleConfig& cfg,
                                         const std::vector<int>& circles,
                                         const std::vector<int>& candidates, long long cap);

struct CircleBush {
    int center = -1;            // point id
    std::vector<int> circles;   // circle ids through it, by tangent direction
};

CircleBush build_circle_bush(const CircleConfig& cfg, int p);

// sector index at a bush: smallest i with the point inside disks(i) xor
// disks(i+1) (cyclic); nullopt for boundary or outside every sector
std::optional<int> circle_sector_of(const CircleConfig& cfg, const CircleBush& bush,
                                    const Point2& q);

struct CircleDoubleBushResult {
    CircleBush bush1, bush2;
    std::vector<std::vector<int>> cells;  // keyed below
    std::vector<std::pair<int, int>> cell_key;
    std::vector<int> cell_of_point;  // -1 boundary/unassigned
    std::vector<int> boundary_points;
    std::vector<int> unassigned_points;  // outside every sector of either bush
    long long cell_point_cap = 0;
    long long max_cell_points = 0;
};

CircleDoubleBushResult circle_double_bush_partition(const CircleConfig& cfg, int p1, int p2,
                                                    const SlackParams& params);

}  // namespace stw

#pragma once

#include <optional>
#include <vector>

#include "stw/config.hpp"
#include "stw/geometry.hpp"

namespace stw {

struct non_consecutive_cells : std::runtime_error {
    non_consecutive_cells() : std::runtime_error("cells are not consecutive along the line") {}
};

// straight-segment multigraph; parallel edges from distinct source lines count
// separately
struct SegmentGraph {
    std::vector<Point2> vertices;
    struct SegEdge {
        int a, b;         // vertex ids, a != b
        int source_line;  // provenance tag, -1 when unset
    };
    std::vector<SegEdge> edges;

    std::size_t v() const { return vertices.size(); }
    std::size_t e() const { return edges.size(); }
};

struct CrossingCount {
    long long crossings = 0;          // proper interior crossings
    long long collinear_overlaps = 0; // pairs sharing infinitely many points, surfaced
};

// pairs of edges whose open segments meet in exactly one point; pairs sharing an
// endpoint contribute 0; x-interval pruning only, the predicate is exact
CrossingCount count_crossings(const SegmentGraph& g);

// count_crossings / (c_cross * e^3 / v^2); nullopt when e < 10 v
std::optional<Rat> crossing_lb_margin(const SegmentGraph& g, const SlackParams& params);

// per-cell crossing graph: vertices are the cell points; each line with at least
// M+1 J-incidences in the cell contributes its first M consecutive pairs
SegmentGraph cell_graph(const Configuration& config, const std::vector<int>& cell_points,
                        const IncidenceSet& J, long long M);

// intersection of closed half-planes
struct ConvexRegion {
    struct HalfPlane {
        Line line;
        int side;  // +1 or -1: points p with side * line.eval(p) > 0 are interior
    };
    std::vector<HalfPlane> bounds;

    bool contains_strict(const Point2& p) const;
    bool contains_closed(const Point2& p) const;
};

// union of consecutive cells along a structuring line = the cell cut out by the
// constraints common to all of them; verified to contain every member point
ConvexRegion consecutive_union(const std::vector<ConvexRegion>& cells,
                               const std::vector<std::vector<Point2>>& members);

// exact count of line pairs whose meet lies strictly inside the region
long long crossings_in_region(const std::vector<Line>& lines, const ConvexRegion& region);

}  // namespace stw

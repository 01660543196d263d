#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stw/config.hpp"
#include "stw/geometry.hpp"

namespace stw {

struct duplicate_lines : std::runtime_error {
    duplicate_lines() : std::runtime_error("duplicate lines in arrangement input") {}
};
struct line_in_arrangement : std::runtime_error {
    line_in_arrangement() : std::runtime_error("query line belongs to the arrangement") {}
};
struct vertical_line_present : std::runtime_error {
    vertical_line_present() : std::runtime_error("funnel decomposition requires no vertical lines") {}
};

using FaceId = int;

// planar arrangement of lines on the one-point compactification: all rays meet a
// single added vertex, so v - e + f = 2 holds and unbounded faces carry a
// well-defined boundary walk. Faces are traced with the interior on the right.
class Arrangement {
public:
    struct Vertex {
        Point2 p;
        std::vector<int> lines;      // ids of lines through it, ascending
        std::vector<int> out_darts;  // outgoing darts, CCW by direction
    };
    struct Edge {
        int line;
        int v_from;  // finite vertex id or kInfinity
        int v_to;
    };
    struct Face {
        std::vector<int> darts;        // boundary walk
        bool bounded = false;
        std::vector<int> edge_list;    // distinct edges, ascending
        std::vector<int> vertex_list;  // distinct finite vertices, ascending
    };

    static constexpr int kInfinity = -1;

    static Arrangement build(std::vector<Line> lines);  // throws duplicate_lines

    const std::vector<Line>& lines() const { return lines_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }
    bool euler_ok() const;  // (v+1) - e + f == 2

    struct Location {
        enum Kind { InFace, OnEdge, OnVertex } kind;
        FaceId face = -1;
        int edge = -1;
        int vertex = -1;
    };
    Location locate(const Point2& p) const;

    // face containing p after the symbolic (up, then left) nudge; total, so
    // points on lines or vertices resolve deterministically
    FaceId locate_nudged_up_left(const Point2& p) const;

    // faces whose closure meets l; throws line_in_arrangement if l is an input line
    std::vector<FaceId> zone(const Line& l) const;

    int side_count(FaceId f) const;
    std::vector<FaceId> faces_at_vertex(int v) const;
    Rat face_area(FaceId f) const;  // bounded faces only

    int dart_count() const { return static_cast<int>(dart_face_.size()); }
    int dart_edge(int dart) const { return dart / 2; }
    FaceId dart_face(int dart) const { return dart_face_[dart]; }
    // direction of motion along a dart (exact, unnormalized)
    std::pair<Rat, Rat> dart_dir(int dart) const;
    int dart_source(int dart) const;  // finite vertex id or kInfinity

    bool is_leading_ray(int edge) const;
    FaceId face_below_edge(int e) const;  // e non-vertical
    FaceId face_above_edge(int e) const;
    int edge_on_line_at(int line, const Point2& p) const;

private:
    std::vector<Line> lines_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::map<Point2, int> vertex_index_;
    std::vector<std::vector<int>> edges_on_line_;  // [leading ray, segments..., trailing ray] or [loop]
    std::vector<FaceId> dart_face_;
    std::vector<int> rot_next_;

    FaceId face_at_vertex_toward(int v, const Rat& dx, const Rat& dy, bool allow_equal_low) const;

    friend struct ArrangementBuilder;
};

// at most 4 sides: top edge, bottom edge, up to 2 vertical walls
struct Trapezoid {
    FaceId face;
    std::optional<Rat> x_lo, x_hi;
    std::optional<int> top_edge, bottom_edge;
    int sides = 0;
};

struct FunnelDecomposition {
    const Arrangement* arrangement = nullptr;
    std::vector<Trapezoid> trapezoids;
    std::vector<std::vector<int>> by_face;  // face -> trapezoid ids, left to right

    int locate_in_face(FaceId f, const Point2& p) const;  // ties resolve left
    Rat area(int t) const;                                // bounded trapezoids only
};

// throws vertical_line_present
FunnelDecomposition funnelize(const Arrangement& arr);

struct ComplexityBucket {
    long long s;  // side counts in (s, 2s]
    long long count;
    double bound_small;  // r^2/s^3
    double bound_large;  // r/s
};
std::vector<ComplexityBucket> complexity_histogram(const Arrangement& arr,
                                                   const std::vector<FaceId>& subset);

}  // namespace stw

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stw/geometry.hpp"
#include "stw/powers.hpp"

namespace stw {

struct duplicate_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// one global epsilon plus the named constants of the N^(a +- c*eps) slack bookkeeping
struct SlackParams {
    Rat epsilon{1, 20};   // in (0, 1/10]
    long long c_gap = 4;  // consecutive-lines window constant
    long long k = 4;      // per-cell incidence cap exponent: N^{k*eps}
    long long k1 = 4;     // sector crossing-budget exponent
    long long k2 = 4;     // slow-line threshold exponent
    Rat c_cross{1, 64};   // crossing inequality constant
    Rat c_st{5, 2};       // incidence-bound constant for the margin auditor

    void validate() const;
};

struct Configuration {
    std::vector<Line> lines;
    std::vector<Point2> points;
    long long N = 0;

    // throws duplicate_input naming the offending indices
    static Configuration make(std::vector<Line> lines, std::vector<Point2> points, long long N);

    int line_id(const Line& l) const;    // -1 when absent
    int point_id(const Point2& p) const; // -1 when absent

private:
    std::map<Line, int> line_index_;
    std::map<Point2, int> point_index_;
};

struct IncidenceSet {
    std::vector<std::pair<int, int>> pairs;    // (line id, point id), sorted
    std::vector<std::vector<int>> by_line;     // line id -> point ids
    std::vector<std::vector<int>> by_point;    // point id -> line ids

    std::size_t size() const { return pairs.size(); }
    bool contains(int li, int pi) const;

    static IncidenceSet from_pairs(std::vector<std::pair<int, int>> pairs,
                                   std::size_t n_lines, std::size_t n_points);
};

// distinguished subset J of a parent incidence set
struct PartialIncidenceSet {
    IncidenceSet J;
    std::size_t parent_size = 0;
};

struct RichnessProfile {
    std::vector<long long> point_counts;
    std::vector<long long> line_counts;
    // dyadic histogram: key d counts items with richness in [2^d, 2^(d+1))
    std::map<int, long long> point_histogram;
    std::map<int, long long> line_histogram;
    long long total = 0;
};

// exact incidence computation; per-x bucketing with a full-scan fallback
IncidenceSet incidences(const Configuration& config);

// the standard k-grid example: points {0..k-1} x {0..2k^2-2},
// lines y = m x + b for m in {0..k-1}, b in {0..k^2-1}; N = 2k^3
Configuration generate_grid(long long k);

// seeded random configuration (n lines, m points, coordinates in [-span, span])
Configuration generate_random(long long n_lines, long long n_points, long long span,
                              std::uint64_t seed);

// |I| / (C_st * floor(((n*m)^2)^(1/3)) + n + m) — the fractional power is
// evaluated as the floor integer-root bracket, making the margin an exact rational
Rat st_margin(const Configuration& config, const IncidenceSet& I, const SlackParams& params);

RichnessProfile richness(const Configuration& config, const IncidenceSet& I);

// exact shear (x, y) -> (x + s*y, y) with s chosen so no line is vertical
// afterwards; the identity when none is. Applied once per pipeline run and
// recorded in the run report.
struct ShearResult {
    Configuration config;
    Rat shear;
};
ShearResult shear_avoiding_vertical(const Configuration& config);

struct FilterResult {
    Configuration config;
    IncidenceSet incidences;
    std::vector<int> removed_points;  // ids in the input configuration
};

// drop points with fewer than `threshold` incident lines, recompute incidences
FilterResult filter_rich_points(const Configuration& config, const IncidenceSet& I,
                                long long threshold);

}  // namespace stw

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stw/config.hpp"
#include "stw/random_cells.hpp"
#include "stw/refinement.hpp"

namespace stw {

struct too_few_bush_lines : std::runtime_error {
    too_few_bush_lines() : std::runtime_error("bush needs at least 2 incident lines in J") {}
};

struct Bush {
    int center = -1;           // point id
    std::vector<int> lines;    // ordered by direction: slope ascending, vertical last, id ties
    std::size_t size() const { return lines.size(); }
};

// B(p): every point incident to one of the lines through p
std::vector<int> bush_points(const Configuration& config, int p);

Bush build_bush(const Configuration& config, int p, const IncidenceSet& J);

// sector index for a point: 0..M-2 between consecutive bush lines, M-1 is the
// wrap-around; nullopt for the center and for points on a bush line
std::optional<int> sector_of_point(const Configuration& config, const Bush& bush,
                                   const Point2& q);

struct Sector {
    int index = -1;
    int line_lo = -1, line_hi = -1;  // bounding bush line ids
    std::vector<int> members;
    std::vector<int> structuring_lines;
    long long covered_twice = 0;  // members on >= 2 structuring lines
};

struct SectorSet {
    Bush bush;
    std::vector<Sector> sectors;       // size M (wrap sector last)
    std::vector<int> boundary_points;  // on a bush line, excluded from sectors
    long long structuring_cap = 0;
};

SectorSet sectors(const Configuration& config, const Bush& bush, const SlackParams& params);

struct BushCellsResult {
    CellDecomposition cells;
    std::vector<int> sector_of_cell;  // every cell lies inside one sector
    long long cell_point_cap = 0;     // ceil(N^(1/3+eps))
    long long max_cell_points = 0;
    long long per_line_cell_cap = 0;  // ceil(N^eps)
    long long max_points_per_structuring_line_cell = 0;
    long long gap_checked = 0, gap_violated = 0;  // windows along structuring lines
};

// cells from the bush lines plus K seeded random lines; each cell sits inside
// one sector
BushCellsResult bush_cells(const Configuration& config, const IncidenceSet& J, int p,
                           long long K, std::uint64_t seed, const SlackParams& params);

struct FastSlowEntry {
    int line = -1;
    long long crossings_inside = 0;
    bool slow = true;
    Rat alpha{0};  // dyadic multiple of eps when fast
};

// crossing counts strictly inside the sector for every line with a J-incidence
// among the sector members
std::vector<FastSlowEntry> classify_fast_slow(const Configuration& config, const Bush& bush,
                                              const Sector& sector, const IncidenceSet& J,
                                              const SlackParams& params);

struct SectorStat {
    int sector = -1;
    long long incidences = 0;          // J-incidences at member points
    long long sparse_incidences = 0;   // from lines taking < ceil(N^(k eps)) members
    Rat sparse_share{0};
    long long line_line_crossings = 0; // config-line pairs meeting strictly inside
    bool dropped = false;              // crossings above N^(5/3 + k1 eps)
};

std::vector<SectorStat> sector_report(const Configuration& config, const IncidenceSet& J,
                                      int p, const SlackParams& params);

struct DoubleBushResult {
    Bush bush1, bush2;
    CellDecomposition cells;  // Source::DoubleBush
    std::vector<std::pair<int, int>> cell_key;  // (sector at p1, sector at p2) per cell
    long long cell_point_cap = 0;
    long long max_cell_points = 0;
    // per p1-sector: lines with >= 1 J-incidence among the sector's points
    std::vector<long long> lines_per_p1_sector;
    long long line_floor = 0;  // ceil(N^(1-eps)), reported against
};

struct double_bush_failed : std::runtime_error {
    double_bush_failed() : std::runtime_error("double bush requires two buildable bushes") {}
};

DoubleBushResult double_bush(const Configuration& config, int p1, int p2,
                             const IncidenceSet& J, const SlackParams& params);

struct MixingStats {
    long long pairs_sampled = 0;
    long long pairs_meeting_threshold = 0;  // shared-line count >= ceil(N^(1/3-eps))
    long long threshold = 0;
    std::map<long long, long long> shared_histogram;
};

MixingStats mixing_stats(const Configuration& config, const DoubleBushResult& db,
                         const IncidenceSet& J, const SlackParams& params,
                         long long budget, std::uint64_t seed);

struct OrganizingInterval {
    int point_lo = -1, point_hi = -1;  // consecutive J-incidence points along the line
    long long crossing_lines = 0;      // config lines meeting the open interval
    bool structured = false;           // greedy cover of those lines succeeded
};

struct OrganizingLine {
    int line = -1;
    long long qualifying_cells = 0;  // cells with >= 2 J-incidences of this line
    std::vector<OrganizingInterval> intervals;
};

struct OrganizingReport {
    std::vector<OrganizingLine> lines;   // lines passing the cell-count floor
    long long cell_floor = 0;            // ceil(N^(1/3-eps))
    long long crossing_target = 0;       // ceil(N^(2/3-eps)), reported against
};

OrganizingReport organizing_report(const Configuration& config, const CellDecomposition& cells,
                                   const IncidenceSet& J, const SlackParams& params);

}  // namespace stw

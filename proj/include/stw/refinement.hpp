#pragma once

#include <string>
#include <vector>

#include "stw/config.hpp"
#include "stw/random_cells.hpp"

namespace stw {

struct RefinementTrace {
    struct Stage {
        std::string name;
        std::vector<int> removed;  // ids; meaning is stage-specific
        long long incidences_before = 0;
        long long incidences_after = 0;
        long long threshold = 0;
    };
    std::vector<Stage> stages;
};

struct Refine1Result {
    Configuration config;   // big-cell points removed
    IncidenceSet incidences;
    CellDecomposition cells;  // same cells restricted to surviving points
    RefinementTrace trace;
    Rat retained_incidence_fraction{0};
};

// remove all points of cells holding more than ceil(N^(1/3+10 eps)) points
Refine1Result refine1(const Configuration& config, const CellDecomposition& cells,
                      const SlackParams& params);

struct Refine2Result {
    std::vector<int> kept_lines;
    RefinementTrace trace;
    Rat retained_incidence_fraction{0};
};

// drop lines visiting fewer than ceil(r^(1-20 eps)) cells
Refine2Result refine2(const Configuration& config, const CellDecomposition& cells,
                      const SlackParams& params);

struct Refine3Result {
    PartialIncidenceSet partial;  // J with parent size
    RefinementTrace trace;
    bool precondition_ok = true;  // N^(1/3-5eps) <= r <= |I| / (100 |L|)
    long long multiplicity_cap = 0;
};

// J: per-(line, cell) multiplicities forced into [2, ceil(N^(k*eps))] by the
// three removals of the two-sided selection
Refine3Result refine3(const Configuration& config, const CellDecomposition& cells,
                      const SlackParams& params);

struct StructuringResult {
    bool success = false;  // every line 2-covered within the cap
    std::vector<int> points;
    long long lines_covered = 0;  // lines with >= 2 chosen incident points
};

// greedy 2-cover of `lines` by candidate points; Failure does not certify that
// no cover exists
StructuringResult find_structuring_points(const Configuration& config,
                                          const std::vector<int>& lines,
                                          const std::vector<int>& candidates, long long cap);

struct StructuredCell {
    int cell = -1;
    std::vector<int> members;
    std::vector<int> lines;        // L_C: >= 2 J-incidences among the members
    StructuringResult structuring;
    Rat density{0};                // |L_C| / #lines through two cell points
};

std::vector<StructuredCell> structured_cells(const Configuration& config,
                                             const CellDecomposition& cells,
                                             const IncidenceSet& J,
                                             const SlackParams& params);

}  // namespace stw

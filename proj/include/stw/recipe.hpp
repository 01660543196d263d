#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "stw/bush.hpp"
#include "stw/config.hpp"
#include "stw/geometry.hpp"

namespace stw {

struct recipe_failed : std::runtime_error {
    recipe_failed() : std::runtime_error("recipe did not succeed") {}
};

struct RecipeParams {
    long long N = 0;
    std::vector<Rat> a;      // strictly increasing x separators
    std::vector<Rat> b;      // strictly increasing y separators
    std::vector<Line> ls;    // pairwise distinct structuring lines of the first strip

    void validate() const;   // throws std::invalid_argument
};

enum class RecipeStage { StripCrossings, RowBuckets, CellLineCounts, Structuredness };

const char* to_string(RecipeStage s);

struct RecipeTrace {
    long long strip_pairs = 0;  // stage 1: crossing pairs with x in [a1, a2]
    long long strip_threshold = 0;
    std::vector<long long> row_counts;  // distinct crossing points per row
    long long row_count_lo = 0, row_count_hi = 0;
    long long rows_needed = 0, good_rows = 0;
    long long line_count = 0;  // |L| after stage 3 dedup
    long long cell_count_lo = 0, cell_count_hi = 0;
    long long cells_needed = 0, qualifying_cells = 0;
    long long structured_cells = 0;  // includes the exempt first-strip cells
    long long structuring_cap = 0;
    long long first_strip_points = 0, structuring_points = 0;
};

struct RecipeOutcome {
    bool success = false;
    std::optional<RecipeStage> failed_stage;
    RecipeTrace trace;
    Configuration output;  // populated on success: (L, P) with N = params.N
};

RecipeOutcome run_recipe(const RecipeParams& params, const SlackParams& slack);

struct ExtractResult {
    ProjectiveMap map;
    RecipeParams params;
    int p1 = -1, p2 = -1;
    int first_sector = -1;  // p2-bush sector realized as [a1, a2]
    bool reflected = false;
    std::vector<int> structuring_line_ids;  // pre-image ids of params.ls
};

// ranked organizing pair, separators from the mapped bush boundaries, l_s from
// the chosen end sector's structuring lines; override the ranking with p1/p2.
// thin > 1 keeps every thin-th bush line before the separators are read off
ExtractResult extract_params(const Configuration& config, const IncidenceSet& J,
                             const SlackParams& slack, std::uint64_t seed,
                             int p1_override = -1, int p2_override = -1, long long thin = 1);

struct ProtoInverseReport {
    long long lines_common = 0;       // |P(L) ∩ L(a,b,ls)|
    long long points_common = 0;      // |P(P) ∩ P(a,b,ls)|
    long long incidences_common = 0;  // incidences of the intersected configuration
    Rat j_retention{0};
    bool lines_floor_ok = false;       // >= N^(1-eps)
    bool points_floor_ok = false;      // >= N^(1-eps)
    bool incidences_floor_ok = false;  // >= N^(4/3-eps)
};

// runs the recipe on params; throws recipe_failed unless it succeeds
ProtoInverseReport verify_protoinverse(const Configuration& config, const IncidenceSet& J,
                                       const ProjectiveMap& map, const RecipeParams& params,
                                       const SlackParams& slack);

struct DualStrip {
    int line = -1;           // organizing line
    int interval = -1;       // index into its intervals
    long long size = 0;      // lines crossing the open interval
    bool in_bracket = false; // size within N^(2/3 +- eps)
    bool structured = false; // greedy cover by <= ceil(N^(1/3+eps)) points
};

struct DualStripsReport {
    std::vector<DualStrip> strips;
    long long pairs_sampled = 0;
    std::map<long long, long long> intersection_histogram;  // |strip1 ∩ strip2|
    long long structured_strips = 0;
};

DualStripsReport dual_strips_report(const Configuration& config, const IncidenceSet& J,
                                    const OrganizingReport& orep, const SlackParams& slack,
                                    long long pair_budget, std::uint64_t seed);

}  // namespace stw

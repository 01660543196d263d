#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stw/arrangement.hpp"
#include "stw/config.hpp"

namespace stw {

struct richness_precondition_failed : std::runtime_error {
    richness_precondition_failed()
        : std::runtime_error("nice_refine requires every point to meet the richness floor") {}
};

struct Selection {
    std::uint64_t seed = 0;
    long long r_target = 0;
    long long pool = 0;        // number of lines sampled from
    std::vector<int> chosen;   // line ids, ascending

    Rat rate() const { return Rat(r_target, pool); }
    bool size_ok() const {
        long long c = static_cast<long long>(chosen.size());
        return 2 * c >= r_target && c <= 2 * r_target;
    }
};

// each line chosen independently with probability r/|lines|, decided by an exact
// integer comparison on the raw 64-bit draw; reproducible across platforms
Selection sample(const Configuration& config, long long r, std::uint64_t seed);

struct AcceptabilityReport {
    long long window = 0;  // ceil(C_gap * n * ln n / r), n = number of lines
    long long gap_checked = 0, gap_violated = 0;
    long long vertical_checked = 0, vertical_violated = 0;
    long long segment_checked = 0, segment_violated = 0;
    long long segment_budget = 0;
    bool size_ok = false;
};

// crossing order along every line (parallels at the infinity position); the
// orders depend only on the configuration, so audits over many seeds can share
// them
std::vector<std::vector<int>> crossing_orders(const Configuration& config);

// circular-window gap events over a precomputed order
std::pair<long long, long long> gap_events_for_order(const std::vector<int>& order,
                                                     const std::vector<char>& chosen,
                                                     long long window);

// circular-window gap events along one line: (windows checked, windows with no
// chosen line) in the crossing order of all other lines, parallels at infinity
std::pair<long long, long long> circular_gap_events(const Configuration& config, int along,
                                                    const std::vector<char>& chosen,
                                                    long long window);

// the consecutive-lines events: (i) along every line, circular windows in the
// crossing order; (ii) vertical order above/below each chosen-pair vertex;
// (iii) budgeted random sample of vertex pairs with >= window many lines
// crossing the open segment between them
AcceptabilityReport audit(const Configuration& config, const Selection& sel,
                          const SlackParams& params, long long segment_budget = 100000,
                          bool exhaustive_segments = false);

struct CellDecomposition {
    enum class Source { ArrangementFaces, Funnels, BushSectors, DoubleBush, RecipeGrid };
    Source source = Source::Funnels;
    long long r_param = 0;
    std::vector<std::vector<int>> cells;  // cell -> point ids
    std::vector<int> cell_of_point;       // point id -> cell, -1 when boundary/unassigned
    std::vector<int> boundary_points;
    std::vector<long long> points_per_cell;
    std::vector<long long> lines_per_cell;   // lines with >= 1 incident member point
    std::vector<long long> cells_per_line;   // cells in which the line has >= 1 incidence

    void rebuild_counts(const Configuration& config, const IncidenceSet& I);
};

struct ProvisionalResult {
    CellDecomposition cells;
    Rat shear{0};  // safe-direction pre-rotation applied to build the funnels
    std::vector<long long> lines_entering;  // per funnel, geometric crossing count
    long long max_lines_entering = 0;
    long long funnel_count = 0;
    double entering_bound = 0;          // N^(1+eps)/r preview, report only
};

// arrangement of the chosen lines, funnelized; every point assigned to a funnel,
// points on chosen lines go to the funnel above (then left)
ProvisionalResult provisional_decomposition(const Configuration& config, const Selection& sel,
                                            const SlackParams& params);

struct NiceRefineResult {
    Configuration config;            // points in small-sided faces only
    Rat shear{0};
    IncidenceSet incidences;
    CellDecomposition cells;         // face-based decomposition of the kept points
    long long side_cap = 0;          // ceil(N^(k*eps))
    long long points_before = 0, points_after = 0;
    long long cell_point_cap = 0;    // ceil(N^(1/3+eps)), reported against
    long long max_cell_points = 0;
};

// requires every point to be ceil(N^(1/3-eps))-rich; throws otherwise
NiceRefineResult nice_refine(const Configuration& config, const Selection& sel,
                             const SlackParams& params);

}  // namespace stw

#ifndef ADIM_ADAPTIVE_PLANNER_HPP
#define ADIM_ADAPTIVE_PLANNER_HPP

#include <adim/adaptive_graph.hpp>
#include <adim/distance_field.hpp>
#include <adim/egraph.hpp>
#include <adim/mrmha.hpp>
#include <adim/types.hpp>
#include <adim/world.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adim {

/// Cells within Chebyshev distance `width` of a phase-1 path. Full states
/// are members when their cell is.
class Tunnel
{
public:
    Tunnel() = default;
    Tunnel(int map_width, int map_height, std::vector<Cell> path_cells, int width);

    bool contains(Cell c) const { return progress_of(c) >= 0; }
    bool contains(const HDState& s) const { return contains(s.cell()); }

    /// Largest waypoint index within `width` of `c`, -1 outside the tunnel.
    int progress_of(Cell c) const;

    /// Path cells with consecutive repeats collapsed.
    const std::vector<Cell>& path_cells() const { return m_path; }
    int width() const { return m_width; }
    std::size_t cell_count() const { return m_cells; }

private:
    int m_map_width = 0;
    int m_map_height = 0;
    std::vector<Cell> m_path;
    int m_width = 0;
    std::vector<int> m_progress;
    std::size_t m_cells = 0;
};

Tunnel build_tunnel(const World& w, const std::vector<AnyState>& pi_ad, int width);
Tunnel build_tunnel(const World& w, const AdPath& pi_ad, int width);

struct AdaptivePlanParams
{
    Weight w1_plan{ 2 };
    Weight w2_plan{ 2 };
    Weight w1_track{ 2 };
    Weight w2_track{ 2 };
    int tunnel_width = 1;
    int region_radius = 2;
    int max_iterations = 20;
    std::uint64_t budget_plan = 500'000;
    std::uint64_t budget_track = 500'000;
    AdaptiveGraphOptions graph;
    EGraphParams egraph;
    bool debug_checks = false;
};

/// Full-dimensional graph searched while tracking: controller macros and
/// stance changes anywhere in the tunnel; the remaining full-body primitives
/// (and E-Graph snaps) only from cells inside an HD region. Both endpoints
/// must lie in the tunnel. With an E-Graph, a state lying on a demonstration
/// also gets an EGRAPH_SHORTCUT to the furthest recorded waypoint reachable
/// through transitions of this graph.
class TrackingGraph
{
public:
    TrackingGraph(const World& w, const CostTable& c, const Tunnel& tunnel,
                  std::vector<HDRegion> regions, const EGraph* eg = nullptr,
                  EGraphParams eg_params = {});

    std::vector<Transition> successors(const HDState& s) const;

    /// Successors without shortcuts.
    std::vector<Transition> base_successors(const HDState& s) const;

    /// Recorded edges behind a shortcut from `from` to `to`, empty if none.
    std::vector<PathEdge<HDState>> replay(const HDState& from, const HDState& to) const;

    /// Replaces every EGRAPH_SHORTCUT edge of `p` by its replayed edges.
    Path expand_shortcuts(const Path& p) const;
    bool in_hd_region(Cell c) const;
    const Tunnel& tunnel() const { return *m_tunnel; }

private:
    const World* m_world;
    const CostTable* m_costs;
    const Tunnel* m_tunnel;
    std::vector<HDRegion> m_regions;
    const EGraph* m_egraph;
    EGraphParams m_eg_params;
};

struct TrackResult
{
    SearchResult<HDState> search;
    /// Open states at termination, in anchor-queue order.
    std::vector<FrontierEntry<HDState>> frontier;
    /// Highest tunnel progress among expanded states (-1 if none).
    int max_closed_progress = -1;
    /// Open state with the highest progress, ties to the lowest anchor key.
    std::optional<HDState> best_progress_state;
    /// Executable path from the tracking start to best_progress_state.
    std::optional<Path> partial;
};

/// Tracking search inside `tunnel`. Anchor: tunnel Dijkstra with the
/// cheapest in-place primitive cost per move. Inadmissible: tunnel Dijkstra
/// with walking costs, remaining path waypoints, and h^E when an E-Graph is
/// supplied. Throws ContractViolation if `start` lies outside the tunnel.
TrackResult track(const World& w, const CostTable& c, const Tunnel& tunnel,
                  const std::vector<HDRegion>& regions, const HDState& start, const GoalSpec& goal,
                  const AdaptivePlanParams& params, const EGraph* eg = nullptr,
                  std::optional<std::uint64_t> budget = std::nullopt,
                  std::function<void(const TraceEvent<HDState>&)> trace = {});

/// Stuck-location policy: the frontier state of maximal progress, or the
/// path cell at the highest progress reached when the frontier is empty.
HDRegion select_region(const TrackResult& tracking, const Tunnel& tunnel,
                       const AdaptivePlanParams& params);

enum class AdaptiveOutcome { EXECUTABLE, NO_PATH, PLAN_TIMEOUT, ITERATION_LIMIT };
std::string_view to_string(AdaptiveOutcome o);

struct IterationRecord
{
    int index = 0;
    std::vector<HDRegion> regions;
    SearchOutcome plan_outcome = SearchOutcome::EXHAUSTED;
    SearchStats plan_stats;
    AdPath pi_ad;
    Cost plan_cost = kInfiniteCost;
    int tunnel_width = 0;
    std::size_t tunnel_cells = 0;
    std::optional<SearchOutcome> track_outcome;
    SearchStats track_stats;
    std::optional<HDRegion> region_added;
};

struct AdaptiveResult
{
    AdaptiveOutcome outcome = AdaptiveOutcome::NO_PATH;
    std::optional<Path> path;
    std::vector<IterationRecord> iterations;
    std::vector<HDRegion> regions;

    std::uint64_t plan_expansions() const;
    std::uint64_t track_expansions() const;
    double plan_seconds() const;
    double track_seconds() const;
};

/// Phase machinery shared by the batch planner and the interleaved executive.
class AdaptivePlanner
{
public:
    AdaptivePlanner(std::shared_ptr<const World> world, CostTable costs, GoalSpec goal,
                    AdaptivePlanParams params, const EGraph* eg = nullptr);

    const World& world() const { return *m_world; }
    const CostTable& costs() const { return m_costs; }
    const GoalSpec& goal() const { return m_goal; }
    const AdaptivePlanParams& params() const { return m_params; }
    const EGraph* egraph() const { return m_egraph; }
    const std::vector<HDRegion>& regions() const { return m_regions; }

    AdaptiveGraph graph() const;
    void add_region(const HDRegion& r) { m_regions.push_back(r); }

    /// Phase 1: MR-MHA* over the current adaptive graph from the image of
    /// `start`.
    SearchResult<AnyState> plan(const HDState& start,
                                std::function<void(const TraceEvent<AnyState>&)> trace = {}) const;

    Tunnel tunnel_for(const AdPath& pi_ad) const;

    TrackResult track_from(const Tunnel& tunnel, const HDState& start,
                           std::optional<std::uint64_t> budget = std::nullopt) const;

private:
    std::shared_ptr<const World> m_world;
    CostTable m_costs;
    GoalSpec m_goal;
    AdaptivePlanParams m_params;
    const EGraph* m_egraph;
    std::vector<HDRegion> m_regions;
    std::vector<DistanceField> m_plan_fields;
};

/// Heuristic tables for phase 1: anchor (uniform cheapest move), walking,
/// crawling and terrain-aware cell distances.
std::vector<DistanceField> plan_heuristic_fields(const World& w, const CostTable& c,
                                                 const GoalSpec& goal);

/// Per-representation enable matrix for the phase-1 heuristics.
HeuristicLists plan_heuristic_lists();

AdaptiveResult plan_adaptive(std::shared_ptr<const World> world, const CostTable& costs,
                             const HDState& start, const GoalSpec& goal,
                             const AdaptivePlanParams& params, const EGraph* eg = nullptr,
                             std::function<void(const IterationRecord&)> sink = {});

struct PathViolation
{
    std::size_t edge_index = 0;
    std::string message;
};

struct ValidateOptions
{
    std::optional<HDState> start;
    std::optional<GoalSpec> goal;
    Cost snap_cost_per_field = 1;
};

/// Checks that every edge is a legal HD_PRIMITIVE, HD_MACRO or SNAP transition
/// with the recorded cost. Returns the first violation, nullopt if the path
/// is executable.
std::optional<PathViolation> validate_path(const World& w, const CostTable& c, const Path& path,
                                           const ValidateOptions& opts = {});

} // namespace adim

#endif

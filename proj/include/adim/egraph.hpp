#ifndef ADIM_EGRAPH_HPP
#define ADIM_EGRAPH_HPP

#include <adim/distance_field.hpp>
#include <adim/mrmha.hpp>
#include <adim/types.hpp>
#include <adim/world.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace adim {

struct EGraphEdge
{
    HDState from;
    HDState to;
    Cost cost = 0;
    /// Not a single primitive or macro transition (a demonstrated jump).
    bool composite = false;

    bool operator==(const EGraphEdge&) const = default;
};

/// Demonstrated full-body edges, indexed by cell and by (x, y, stance).
class EGraph
{
public:
    EGraph() = default;
    explicit EGraph(std::vector<EGraphEdge> edges);

    const std::vector<EGraphEdge>& edges() const { return m_edges; }
    const std::vector<HDState>& nodes() const { return m_nodes; }
    bool empty() const { return m_edges.empty(); }

    /// Nodes located at `c`, in state order.
    std::vector<HDState> nodes_at(Cell c) const;
    /// Nodes sharing (x, y, stance) with `s`, in state order.
    std::vector<HDState> nodes_matching(const HDState& s) const;

    /// Recorded continuations from `s`: for every edge leaving `s`, that edge
    /// followed by the edges recorded after it in the same demonstration.
    std::vector<std::vector<EGraphEdge>> runs_from(const HDState& s) const;

private:
    std::vector<EGraphEdge> m_edges;
    std::vector<HDState> m_nodes;
    std::map<Cell, std::vector<std::size_t>> m_by_cell;
    std::map<std::tuple<int, int, Stance>, std::vector<std::size_t>> m_by_key;
    std::map<HDState, std::vector<std::size_t>> m_out;
};

struct EGraphParams
{
    /// Inflation of the grid heuristic between E-Graph edges, >= 1.
    Weight eps_e{ 10 };
    Cost snap_cost_per_field = 1;
};

class DemoParseError : public std::runtime_error
{
public:
    DemoParseError(const std::string& source, int waypoint, int line, const std::string& what);

    int waypoint() const { return m_waypoint; }
    int line() const { return m_line; }

private:
    int m_waypoint;
    int m_line;
};

/// Parses one demonstration ("x y theta stance phase cost_to_next" per
/// line, '#' comments) and returns its edges.
std::vector<EGraphEdge> parse_demonstration(const World& w, const CostTable& c,
                                            const std::string& text,
                                            const std::string& source = "<demo>");

EGraph load_demonstrations(const World& w, const CostTable& c, const std::vector<std::string>& files);

/// Grid heuristic h^G: 8-connected Dijkstra over non-wall cells, walk_step
/// per move.
DistanceField grid_heuristic(const World& w, const CostTable& c, const GoalSpec& goal);

/// h^E as a per-cell table: one Dijkstra from the goal whose edges are grid
/// moves costing eps_e * walk_step and E-Graph edges (projected onto cells)
/// at their demonstrated cost. Fractional values are rounded down.
DistanceField egraph_heuristic(const World& w, const CostTable& c, const EGraph& eg,
                               const GoalSpec& goal, const EGraphParams& p);

/// SNAP transitions from `s` to E-Graph nodes with the same (x, y, stance) but
/// a different heading or phase, priced at the in-place primitive cost
/// times snap_cost_per_field.
std::vector<Transition> snap_successors(const EGraph& eg, const CostTable& c, const HDState& s,
                                        const EGraphParams& p);

/// Price of a SNAP edge between two states sharing (x, y, stance).
Cost snap_cost(const CostTable& c, const HDState& from, const HDState& to, const EGraphParams& p);

} // namespace adim

#endif

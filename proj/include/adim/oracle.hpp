#ifndef ADIM_ORACLE_HPP
#define ADIM_ORACLE_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace adim {

template <class State>
struct DijkstraResult
{
    std::optional<Cost> cost;
    std::optional<BasicPath<State>> path;
    std::size_t settled = 0;
};

/// Plain multi-source Dijkstra. `succ(s, out)` appends the edges leaving s.
/// Ties are broken on state order so results are reproducible.
template <class State, class Succ, class Goal>
DijkstraResult<State> dijkstra(const std::vector<State>& starts, Succ&& succ, Goal&& goal)
{
    struct Rec
    {
        Cost g;
        std::optional<State> parent;
        PathEdge<State> edge;
        bool done = false;
    };
    using Item = std::pair<Cost, State>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
    std::unordered_map<State, Rec, StateHash> rec;
    for (const auto& s : starts) {
        if (rec.try_emplace(s, Rec{ 0, std::nullopt, {}, false }).second) {
            open.push({ 0, s });
        }
    }
    DijkstraResult<State> out;
    std::vector<PathEdge<State>> edges;
    while (!open.empty()) {
        const auto [g, s] = open.top();
        open.pop();
        auto& r = rec.at(s);
        if (r.done || g > r.g) {
            continue;
        }
        r.done = true;
        ++out.settled;
        if (goal(s)) {
            out.cost = g;
            BasicPath<State> p;
            State cur = s;
            while (rec.at(cur).parent) {
                p.edges.push_back(rec.at(cur).edge);
                cur = *rec.at(cur).parent;
            }
            p.start = cur;
            std::reverse(p.edges.begin(), p.edges.end());
            out.path = std::move(p);
            return out;
        }
        edges.clear();
        succ(s, edges);
        for (const auto& e : edges) {
            const Cost ng = g + e.cost;
            auto [it, fresh] = rec.try_emplace(e.to, Rec{ ng, s, e, false });
            if (!fresh) {
                if (it->second.done || it->second.g <= ng) {
                    continue;
                }
                it->second = Rec{ ng, s, e, false };
            }
            open.push({ ng, e.to });
        }
    }
    return out;
}

/// Single-source costs to every reachable state.
template <class State, class Succ>
std::unordered_map<State, Cost, StateHash> dijkstra_all(const std::vector<State>& starts, Succ&& succ)
{
    using Item = std::pair<Cost, State>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
    std::unordered_map<State, Cost, StateHash> dist;
    for (const auto& s : starts) {
        if (dist.try_emplace(s, 0).second) {
            open.push({ 0, s });
        }
    }
    std::vector<PathEdge<State>> edges;
    while (!open.empty()) {
        const auto [g, s] = open.top();
        open.pop();
        if (g > dist.at(s)) {
            continue;
        }
        edges.clear();
        succ(s, edges);
        for (const auto& e : edges) {
            const Cost ng = g + e.cost;
            auto [it, fresh] = dist.try_emplace(e.to, ng);
            if (!fresh) {
                if (it->second <= ng) {
                    continue;
                }
                it->second = ng;
            }
            open.push({ ng, e.to });
        }
    }
    return dist;
}

/// Reference full-dimensional graph: primitives plus controller macros.
void hd_oracle_successors(const World& w, const CostTable& c, const HDState& s,
                          std::vector<PathEdge<HDState>>& out);

/// Largest map (in cells) the command-line oracle accepts.
inline constexpr std::size_t kOracleMaxCells = 16 * 16;

/// Optimal full-dimensional cost from `start` to the goal cell.
DijkstraResult<HDState> oracle_hd(const World& w, const CostTable& c, const HDState& start,
                                  const GoalSpec& goal);

/// Every valid full state of the map, in state order.
std::vector<HDState> all_hd_states(const World& w);

} // namespace adim

#endif

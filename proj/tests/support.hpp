#ifndef ADIM_TEST_SUPPORT_HPP
#define ADIM_TEST_SUPPORT_HPP

#include <adim/adaptive_graph.hpp>
#include <adim/domain.hpp>
#include <adim/world.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace testing {

inline std::string asset(const std::string& rel) { return std::string(ADIM_ASSET_DIR) + "/" + rel; }

inline std::shared_ptr<const adim::World> crafted(const std::string& name)
{
    return std::make_shared<adim::World>(adim::load_map_file(asset("maps/" + name + ".map")));
}

inline adim::World rows(std::initializer_list<std::string> lines)
{
    const int h = int(lines.size());
    const int w = int(lines.begin()->size());
    std::string text = std::to_string(w) + " " + std::to_string(h) + "\n";
    for (const auto& l : lines) {
        text += l + "\n";
    }
    return adim::load_map(text);
}

inline std::shared_ptr<const adim::World> open_map(int w, int h)
{
    return std::make_shared<adim::World>(w, h, std::vector<adim::Terrain>(std::size_t(w * h), adim::Terrain::FREE));
}

/// Transitions as comparable (kind, to, cost) triples.
inline std::vector<std::tuple<adim::TransitionKind, adim::AnyState, adim::Cost>>
triples(const std::vector<adim::Transition>& ts)
{
    std::vector<std::tuple<adim::TransitionKind, adim::AnyState, adim::Cost>> out;
    for (const auto& t : ts) {
        out.emplace_back(t.kind, t.to, t.cost);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Mixed-terrain 6x6 map used by the exhaustive checks.
inline std::shared_ptr<const adim::World> mixed6()
{
    return std::make_shared<adim::World>(rows({
        "......",
        "..~~..",
        ".%..#.",
        "....%.",
        ".~~...",
        "......",
    }));
}

} // namespace testing

#endif

#include <adim/distance_field.hpp>
#include <adim/mapgen.hpp>
#include <adim/mrmha.hpp>
#include <adim/oracle.hpp>

namespace testing {

/// Cell distances with a fixed per-move cost over non-wall cells.
inline adim::DistanceField uniform_field(const adim::World& w, adim::Cell goal, adim::Cost step,
                                         bool eight = true)
{
    adim::GridGraphSpec spec;
    spec.eight_connected = eight;
    spec.passable = [&w](adim::Cell c) { return w.at(c) != adim::Terrain::WALL; };
    spec.move_cost = [step](adim::Cell, adim::Cell) { return step; };
    return adim::dijkstra_to(w, goal, spec);
}

template <class State>
std::function<adim::Cost(const State&)> from_field(adim::DistanceField f)
{
    return [f = std::move(f)](const State& s) { return f.at(s.cell()); };
}

/// Full-dimensional search problem over primitives plus macros, the same
/// graph the brute-force oracle uses.
inline adim::SearchProblem<adim::HDState>
hd_problem(const adim::World& w, const adim::CostTable& c, adim::GoalSpec goal,
           std::vector<std::function<adim::Cost(const adim::HDState&)>> hs)
{
    adim::SearchProblem<adim::HDState> p;
    p.successors = [&w, &c](const adim::HDState& s, std::vector<adim::PathEdge<adim::HDState>>& out) {
        adim::hd_oracle_successors(w, c, s, out);
    };
    p.rep_of = [](const adim::HDState&) { return adim::RepId::HD; };
    p.is_goal = [goal](const adim::HDState& s) { return s.cell() == goal.cell; };
    p.heuristics = std::move(hs);
    return p;
}

/// Low-dimensional search problem inside one representation.
inline adim::SearchProblem<adim::LDState>
ld_problem(const adim::World& w, const adim::CostTable& c, adim::GoalSpec goal,
           std::vector<std::function<adim::Cost(const adim::LDState&)>> hs)
{
    adim::SearchProblem<adim::LDState> p;
    p.successors = [&w, &c](const adim::LDState& s, std::vector<adim::PathEdge<adim::LDState>>& out) {
        for (const auto& t : adim::ld_successors(w, c, s)) {
            out.push_back({ std::get<adim::LDState>(t.to), t.cost, t.kind, t.controller });
        }
    };
    p.rep_of = [](const adim::LDState& s) { return s.rep; };
    p.is_goal = [goal](const adim::LDState& s) { return s.cell() == goal.cell; };
    p.heuristics = std::move(hs);
    return p;
}

inline std::shared_ptr<const adim::World> random_map(std::uint64_t seed, int w, int h,
                                                     std::vector<adim::Cell> keep)
{
    return std::make_shared<adim::World>(adim::gen_random_map(seed, w, h, { 0.15, 0.1, 0.1 }, keep));
}

} // namespace testing

#include <adim/egraph.hpp>
#include <adim/io.hpp>

namespace testing {

struct Case
{
    adim::Scenario scenario;
    std::shared_ptr<const adim::World> world;
    adim::CostTable costs;
};

inline Case load_case(const std::string& name)
{
    Case c;
    c.scenario = adim::load_scenario(asset("scenarios/" + name + ".json"));
    c.world = std::make_shared<adim::World>(adim::load_map_file(c.scenario.map));
    c.costs = adim::CostTable(c.scenario.costs);
    return c;
}

inline adim::EGraph demos_of(const Case& c)
{
    return adim::load_demonstrations(*c.world, c.costs, c.scenario.demos);
}

inline std::size_t count_kind(const adim::Path& p, adim::TransitionKind k)
{
    return std::size_t(std::count_if(p.edges.begin(), p.edges.end(),
                                     [k](const auto& e) { return e.kind == k; }));
}

inline std::optional<adim::Cost> golden_oracle(const std::string& name)
{
    std::ifstream in(asset("golden/" + name + ".oracle.txt"));
    std::string word;
    adim::Cost v = 0;
    in >> word;
    if (word == "optimal_cost" && (in >> v)) {
        return v;
    }
    return std::nullopt;
}

} // namespace testing

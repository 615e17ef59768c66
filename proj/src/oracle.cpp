#include <adim/oracle.hpp>

#include <adim/domain.hpp>

namespace adim {

void hd_oracle_successors(const World& w, const CostTable& c, const HDState& s,
                          std::vector<PathEdge<HDState>>& out)
{
    for (auto list : { &hd_successors, &executable_macro_successors }) {
        for (const auto& t : (*list)(w, c, s)) {
            out.push_back({ std::get<HDState>(t.to), t.cost, t.kind, t.controller });
        }
    }
}

DijkstraResult<HDState> oracle_hd(const World& w, const CostTable& c, const HDState& start,
                                  const GoalSpec& goal)
{
    if (!is_valid(w, start)) {
        throw ContractViolation("oracle: invalid start " + to_string(start));
    }
    check_goal(w, goal);
    return dijkstra<HDState>(
        { start },
        [&](const HDState& s, std::vector<PathEdge<HDState>>& out) { hd_oracle_successors(w, c, s, out); },
        [&](const HDState& s) { return is_goal(goal, s); });
}

std::vector<HDState> all_hd_states(const World& w)
{
    std::vector<HDState> out;
    for (int x = 0; x < w.width(); ++x) {
        for (int y = 0; y < w.height(); ++y) {
            for (int th = 0; th < kHeadings; ++th) {
                for (auto st : { Stance::STAND, Stance::CROUCH }) {
                    for (int ph = 0; ph < kPhases; ++ph) {
                        const HDState s{ x, y, th, st, ph };
                        if (is_valid(w, s)) {
                            out.push_back(s);
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace adim

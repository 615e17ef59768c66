#ifndef ADIM_DOMAIN_HPP
#define ADIM_DOMAIN_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <vector>

namespace adim {

/// Cell offset of one forward step along heading `theta` (45 degree units,
/// 0 = +x, 2 = +y).
Cell heading_delta(int theta);
Cell step(Cell c, int theta);

/// STAND is allowed on FREE and RUBBLE, CROUCH on FREE and LOW.
bool stance_allows(Stance s, Terrain t);

bool is_valid(const World& w, const HDState& s);
bool is_valid(const World& w, const LDState& s);

/// Full-body primitives: rotate, weight shift, stance change, forward step.
/// Crouched forward steps are restricted to the four cardinal headings.
std::vector<Transition> hd_successors(const World& w, const CostTable& c, const HDState& s);

/// Low-dimensional primitives. WALK may step over rubble, but such steps
/// carry no controller (they have to be resolved by full-body planning).
std::vector<Transition> ld_successors(const World& w, const CostTable& c, const LDState& s);

/// REP_SWITCH transitions between WALK and CRAWL at the same FREE cell.
std::vector<Transition> special_projection_successors(const World& w, const CostTable& c,
                                                      const LDState& s);

/// Full-body transitions that mirror controller-executable LD actions of the
/// representation matching the stance, landing on a nominal (phase 0) state.
std::vector<Transition> executable_macro_successors(const World& w, const CostTable& c,
                                                    const HDState& s);

bool is_goal(const GoalSpec& g, const AnyState& s);
bool is_goal(const GoalSpec& g, const HDState& s);

/// Representation whose controller handles the given stance.
RepId rep_for_stance(Stance s);
Controller controller_for(RepId r);

/// Minimal cost of in-place rotations and weight shifts taking (theta, phase)
/// of `from` to those of `to`. Every in-place primitive advances the phase
/// by one, so this is a small shortest-path problem over 32 states.
Cost in_place_cost(const CostTable& c, int from_theta, int from_phase, int to_theta, int to_phase);

} // namespace adim

#endif

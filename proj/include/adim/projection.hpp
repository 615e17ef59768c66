#ifndef ADIM_PROJECTION_HPP
#define ADIM_PROJECTION_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <vector>

namespace adim {

/// Many-to-one map from the full state space onto one low-dimensional
/// representation. WALK keeps (x, y, theta), CRAWL keeps (x, y).
/// Throws ContractViolation for rep == HD.
LDState project(RepId rep, const HDState& s);

/// Nominal preimage of `l`: phase 0 states, STAND for WALK, CROUCH with all
/// eight headings for CRAWL. States invalid on their cell are dropped.
std::vector<HDState> inverse_project(const World& w, RepId rep, const LDState& l);

/// States of representation `j` sharing a nominal preimage with `s`
/// (sorted, duplicate free).
std::vector<LDState> cross_project(const World& w, RepId i, RepId j, const LDState& s);

} // namespace adim

#endif

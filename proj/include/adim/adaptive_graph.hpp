#ifndef ADIM_ADAPTIVE_GRAPH_HPP
#define ADIM_ADAPTIVE_GRAPH_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <memory>
#include <vector>

namespace adim {

/// Chebyshev ball of cells in which full-dimensional planning is enabled.
struct HDRegion
{
    Cell center;
    int radius = 0;

    bool contains(Cell c) const { return chebyshev(c, center) <= radius; }
    bool operator==(const HDRegion&) const = default;
};

struct AdaptiveGraphOptions
{
    /// Surcharge added to a move whose endpoint is re-expressed in the other
    /// dimensionality (0 keeps projections free, 1 is the unit-cost mode).
    Cost projection_cost = 0;
    /// Low-dimensional representations taking part in the graph.
    std::vector<RepId> ld_reps{ RepId::WALK, RepId::CRAWL };

    bool operator==(const AdaptiveGraphOptions&) const = default;
};

/// Immutable snapshot of the hybrid graph: low-dimensional states everywhere
/// except inside the HD regions, where full states replace them.
class AdaptiveGraph
{
public:
    AdaptiveGraph(std::shared_ptr<const World> world, CostTable costs,
                  std::vector<HDRegion> regions = {}, AdaptiveGraphOptions options = {});

    const World& world() const { return *m_world; }
    const std::shared_ptr<const World>& world_ptr() const { return m_world; }
    const CostTable& costs() const { return m_costs; }
    const std::vector<HDRegion>& regions() const { return m_regions; }
    const AdaptiveGraphOptions& options() const { return m_options; }

    bool in_hd_region(Cell c) const;
    bool has_rep(RepId r) const;

    /// New graph with `r` appended to the region list.
    AdaptiveGraph add_hd_region(const HDRegion& r) const;

    /// Membership rule: HD states inside regions, LD states (of an enabled
    /// representation) outside them.
    bool contains(const AnyState& s) const;

    /// Representative of a full state in this graph: itself inside a region,
    /// otherwise its projection into the representation matching its stance.
    AnyState image_of(const HDState& s) const;

    /// Transitions out of `s`, sorted by (kind, target) and free of
    /// duplicate (kind, target) pairs. Throws ContractViolation if `s` is not
    /// a member of the graph.
    std::vector<Transition> successors(const AnyState& s) const;

    bool operator==(const AdaptiveGraph& o) const;

private:
    std::shared_ptr<const World> m_world;
    CostTable m_costs;
    std::vector<HDRegion> m_regions;
    AdaptiveGraphOptions m_options;
};

bool in_hd_region(const AdaptiveGraph& g, int x, int y);
AdaptiveGraph add_hd_region(const AdaptiveGraph& g, const HDRegion& r);
std::vector<Transition> ad_successors(const AdaptiveGraph& g, const AnyState& s);

/// Sorts by (kind, target) and keeps the cheapest of equal (kind, target)
/// entries.
void normalize_transitions(std::vector<Transition>& ts);

} // namespace adim

#endif

#include <adim/adaptive_graph.hpp>

#include <adim/domain.hpp>
#include <adim/projection.hpp>

#include <algorithm>

namespace adim {

AdaptiveGraph::AdaptiveGraph(std::shared_ptr<const World> world, CostTable costs,
                             std::vector<HDRegion> regions, AdaptiveGraphOptions options)
    : m_world(std::move(world)),
      m_costs(costs),
      m_regions(std::move(regions)),
      m_options(std::move(options))
{
    if (!m_world) {
        throw ContractViolation("AdaptiveGraph: null world");
    }
    for (const auto& r : m_regions) {
        if (!m_world->in_bounds(r.center) || r.radius < 0) {
            throw ContractViolation("AdaptiveGraph: invalid HD region");
        }
    }
    for (auto r : m_options.ld_reps) {
        if (r == RepId::HD) {
            throw ContractViolation("AdaptiveGraph: HD listed as a low-dimensional representation");
        }
    }
    if (m_options.projection_cost < 0) {
        throw ContractViolation("AdaptiveGraph: negative projection cost");
    }
}

bool AdaptiveGraph::in_hd_region(Cell c) const
{
    return std::any_of(m_regions.begin(), m_regions.end(),
                       [&](const HDRegion& r) { return r.contains(c); });
}

bool AdaptiveGraph::has_rep(RepId r) const
{
    if (r == RepId::HD) {
        return true;
    }
    return std::find(m_options.ld_reps.begin(), m_options.ld_reps.end(), r) !=
           m_options.ld_reps.end();
}

AdaptiveGraph AdaptiveGraph::add_hd_region(const HDRegion& r) const
{
    auto regions = m_regions;
    regions.push_back(r);
    return AdaptiveGraph(m_world, m_costs, std::move(regions), m_options);
}

bool AdaptiveGraph::contains(const AnyState& s) const
{
    const bool inside = in_hd_region(cell_of(s));
    if (const auto* h = std::get_if<HDState>(&s)) {
        return inside && is_valid(*m_world, *h);
    }
    const auto& l = std::get<LDState>(s);
    return !inside && has_rep(l.rep) && is_valid(*m_world, l);
}

AnyState AdaptiveGraph::image_of(const HDState& s) const
{
    if (in_hd_region(s.cell())) {
        return s;
    }
    RepId rep = rep_for_stance(s.stance);
    if (!has_rep(rep)) {
        rep = m_options.ld_reps.front();
    }
    return project(rep, s);
}

std::vector<Transition> AdaptiveGraph::successors(const AnyState& s) const
{
    if (!contains(s)) {
        throw ContractViolation("ad_successors: " + to_string(s) +
                                " violates the adaptive membership rule");
    }
    const World& w = *m_world;
    std::vector<Transition> out;

    if (const auto* h = std::get_if<HDState>(&s)) {
        for (const auto& t : hd_successors(w, m_costs, *h)) {
            const auto& to = std::get<HDState>(t.to);
            if (in_hd_region(to.cell())) {
                out.push_back(t);
                continue;
            }
            for (auto rep : m_options.ld_reps) {
                out.push_back({ s, project(rep, to), t.cost + m_options.projection_cost,
                                TransitionKind::PROJECTION, Controller::NONE });
            }
        }
        normalize_transitions(out);
        return out;
    }

    const auto& l = std::get<LDState>(s);
    for (const auto& t : ld_successors(w, m_costs, l)) {
        const auto& to = std::get<LDState>(t.to);
        if (!in_hd_region(to.cell())) {
            out.push_back(t);
            continue;
        }
        // the LD target lies in a region: replace it by its nominal preimage
        for (const auto& hto : inverse_project(w, l.rep, to)) {
            out.push_back({ s, hto, t.cost + m_options.projection_cost, TransitionKind::PROJECTION,
                            Controller::NONE });
        }
    }
    for (const auto& hs : inverse_project(w, l.rep, l)) {
        for (const auto& t : hd_successors(w, m_costs, hs)) {
            const auto& to = std::get<HDState>(t.to);
            if (in_hd_region(to.cell())) {
                out.push_back({ s, to, t.cost, TransitionKind::HD_PRIMITIVE, t.controller });
            }
        }
    }
    for (const auto& t : special_projection_successors(w, m_costs, l)) {
        if (has_rep(std::get<LDState>(t.to).rep)) {
            out.push_back(t);
        }
    }
    normalize_transitions(out);
    return out;
}

bool AdaptiveGraph::operator==(const AdaptiveGraph& o) const
{
    return (m_world == o.m_world || *m_world == *o.m_world) && m_costs == o.m_costs &&
           m_regions == o.m_regions && m_options == o.m_options;
}

bool in_hd_region(const AdaptiveGraph& g, int x, int y) { return g.in_hd_region({ x, y }); }

AdaptiveGraph add_hd_region(const AdaptiveGraph& g, const HDRegion& r) { return g.add_hd_region(r); }

std::vector<Transition> ad_successors(const AdaptiveGraph& g, const AnyState& s)
{
    return g.successors(s);
}

void normalize_transitions(std::vector<Transition>& ts)
{
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
        if (a.kind != b.kind) {
            return a.kind < b.kind;
        }
        if (a.to != b.to) {
            return a.to < b.to;
        }
        return a.cost < b.cost;
    });
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](const Transition& a, const Transition& b) {
                             return a.kind == b.kind && a.to == b.to;
                         }),
             ts.end());
}

} // namespace adim

#include <adim/egraph.hpp>

#include <adim/domain.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace adim {

EGraph::EGraph(std::vector<EGraphEdge> edges) : m_edges(std::move(edges))
{
    for (std::size_t k = 0; k < m_edges.size(); ++k) {
        const auto& e = m_edges[k];
        if (e.cost <= 0) {
            throw std::invalid_argument("EGraph: edge costs must be > 0");
        }
        m_out[e.from].push_back(k);
        m_nodes.push_back(e.from);
        m_nodes.push_back(e.to);
    }
    std::sort(m_nodes.begin(), m_nodes.end());
    m_nodes.erase(std::unique(m_nodes.begin(), m_nodes.end()), m_nodes.end());
    for (std::size_t i = 0; i < m_nodes.size(); ++i) {
        const auto& n = m_nodes[i];
        m_by_cell[n.cell()].push_back(i);
        m_by_key[{ n.x, n.y, n.stance }].push_back(i);
    }
}

std::vector<HDState> EGraph::nodes_at(Cell c) const
{
    std::vector<HDState> out;
    if (auto it = m_by_cell.find(c); it != m_by_cell.end()) {
        for (auto i : it->second) {
            out.push_back(m_nodes[i]);
        }
    }
    return out;
}

std::vector<HDState> EGraph::nodes_matching(const HDState& s) const
{
    std::vector<HDState> out;
    if (auto it = m_by_key.find({ s.x, s.y, s.stance }); it != m_by_key.end()) {
        for (auto i : it->second) {
            out.push_back(m_nodes[i]);
        }
    }
    return out;
}

std::vector<std::vector<EGraphEdge>> EGraph::runs_from(const HDState& s) const
{
    std::vector<std::vector<EGraphEdge>> out;
    auto it = m_out.find(s);
    if (it == m_out.end()) {
        return out;
    }
    for (std::size_t k : it->second) {
        std::vector<EGraphEdge> run{ m_edges[k] };
        while (k + 1 < m_edges.size() && m_edges[k + 1].from == m_edges[k].to) {
            run.push_back(m_edges[++k]);
        }
        out.push_back(std::move(run));
    }
    return out;
}

DemoParseError::DemoParseError(const std::string& source, int waypoint, int line,
                               const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": waypoint " +
                         std::to_string(waypoint) + ": " + what),
      m_waypoint(waypoint),
      m_line(line)
{
}

namespace {

bool is_single_transition(const World& w, const CostTable& c, const HDState& a, const HDState& b,
                          Cost cost)
{
    auto matches = [&](const std::vector<Transition>& ts) {
        return std::any_of(ts.begin(), ts.end(), [&](const Transition& t) {
            return std::get<HDState>(t.to) == b && t.cost == cost;
        });
    };
    return matches(hd_successors(w, c, a)) || matches(executable_macro_successors(w, c, a));
}

} // namespace

std::vector<EGraphEdge> parse_demonstration(const World& w, const CostTable& c,
                                            const std::string& text, const std::string& source)
{
    struct Waypoint
    {
        HDState state;
        Cost cost_to_next;
        int line;
    };
    std::vector<Waypoint> wps;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        std::string first;
        if (!(ls >> first)) {
            continue;
        }
        const int idx = int(wps.size());
        HDState s;
        std::string stance;
        Cost cost = 0;
        try {
            s.x = std::stoi(first);
        } catch (const std::exception&) {
            throw DemoParseError(source, idx, line_no, "bad x coordinate '" + first + "'");
        }
        if (!(ls >> s.y >> s.theta >> stance >> s.phase >> cost)) {
            throw DemoParseError(source, idx, line_no,
                                 "expected \"x y theta stance phase cost_to_next\"");
        }
        std::string extra;
        if (ls >> extra) {
            throw DemoParseError(source, idx, line_no, "trailing token '" + extra + "'");
        }
        try {
            s.stance = parse_stance(stance);
        } catch (const std::invalid_argument& e) {
            throw DemoParseError(source, idx, line_no, e.what());
        }
        if (!is_valid(w, s)) {
            throw DemoParseError(source, idx, line_no, to_string(s) + " is not a valid state");
        }
        if (cost < 0) {
            throw DemoParseError(source, idx, line_no, "negative cost");
        }
        wps.push_back({ s, cost, line_no });
    }

    std::vector<EGraphEdge> edges;
    for (std::size_t i = 0; i + 1 < wps.size(); ++i) {
        const auto& a = wps[i];
        const auto& b = wps[i + 1];
        if (a.cost_to_next <= 0) {
            throw DemoParseError(source, int(i), a.line, "cost_to_next must be > 0");
        }
        edges.push_back({ a.state, b.state, a.cost_to_next,
                          !is_single_transition(w, c, a.state, b.state, a.cost_to_next) });
    }
    if (!wps.empty() && wps.back().cost_to_next != 0) {
        throw DemoParseError(source, int(wps.size()) - 1, wps.back().line,
                             "final waypoint must have cost 0");
    }
    return edges;
}

EGraph load_demonstrations(const World& w, const CostTable& c, const std::vector<std::string>& files)
{
    std::vector<EGraphEdge> all;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) {
            throw std::runtime_error("cannot open demonstration '" + f + "'");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        auto edges = parse_demonstration(w, c, ss.str(), f);
        all.insert(all.end(), edges.begin(), edges.end());
    }
    return EGraph(std::move(all));
}

namespace {

GridGraphSpec open_grid(const World& w, Cost per_move)
{
    GridGraphSpec spec;
    spec.eight_connected = true;
    spec.passable = [&w](Cell c) { return w.at(c) != Terrain::WALL; };
    spec.move_cost = [per_move](Cell, Cell) { return per_move; };
    return spec;
}

} // namespace

DistanceField grid_heuristic(const World& w, const CostTable& c, const GoalSpec& goal)
{
    return dijkstra_to(w, goal.cell, open_grid(w, c.walk_step()));
}

DistanceField egraph_heuristic(const World& w, const CostTable& c, const EGraph& eg,
                               const GoalSpec& goal, const EGraphParams& p)
{
    if (p.eps_e < 1) {
        throw ContractViolation("egraph_heuristic: eps_e must be >= 1");
    }
    // work in units of 1/den so that eps_e * walk_step stays integral
    const Cost num = p.eps_e.numerator();
    const Cost den = p.eps_e.denominator();
    auto spec = open_grid(w, num * c.walk_step());
    for (const auto& e : eg.edges()) {
        if (e.from.cell() != e.to.cell()) {
            spec.extra.push_back({ e.from.cell(), e.to.cell(), den * e.cost });
        }
    }
    const auto scaled = dijkstra_to(w, goal.cell, spec);
    std::vector<Cost> out = scaled.values();
    for (auto& v : out) {
        if (v < kInfiniteCost) {
            v /= den;
        }
    }
    return DistanceField(w.width(), w.height(), std::move(out));
}

Cost snap_cost(const CostTable& c, const HDState& from, const HDState& to, const EGraphParams& p)
{
    return p.snap_cost_per_field * in_place_cost(c, from.theta, from.phase, to.theta, to.phase);
}

std::vector<Transition> snap_successors(const EGraph& eg, const CostTable& c, const HDState& s,
                                        const EGraphParams& p)
{
    std::vector<Transition> out;
    for (const auto& n : eg.nodes_matching(s)) {
        if (n.theta == s.theta && n.phase == s.phase) {
            continue;
        }
        out.push_back({ s, n, snap_cost(c, s, n, p), TransitionKind::SNAP,
                        Controller::FULLBODY_CTRL });
    }
    return out;
}

} // namespace adim

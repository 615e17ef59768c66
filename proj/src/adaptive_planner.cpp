#include <adim/adaptive_planner.hpp>

#include <adim/domain.hpp>
#include <adim/projection.hpp>

#include <algorithm>

namespace adim {

Tunnel::Tunnel(int map_width, int map_height, std::vector<Cell> path_cells, int width)
    : m_map_width(map_width),
      m_map_height(map_height),
      m_path(std::move(path_cells)),
      m_width(width),
      m_progress(std::size_t(map_width) * std::size_t(map_height), -1)
{
    if (width < 0) {
        throw ContractViolation("tunnel width must be >= 0");
    }
    for (std::size_t j = 0; j < m_path.size(); ++j) {
        const Cell p = m_path[j];
        for (int y = std::max(0, p.y - width); y <= std::min(map_height - 1, p.y + width); ++y) {
            for (int x = std::max(0, p.x - width); x <= std::min(map_width - 1, p.x + width); ++x) {
                auto& v = m_progress[std::size_t(y) * std::size_t(map_width) + std::size_t(x)];
                if (v < 0) {
                    ++m_cells;
                }
                v = int(j);
            }
        }
    }
}

int Tunnel::progress_of(Cell c) const
{
    if (c.x < 0 || c.y < 0 || c.x >= m_map_width || c.y >= m_map_height) {
        return -1;
    }
    return m_progress[std::size_t(c.y) * std::size_t(m_map_width) + std::size_t(c.x)];
}

Tunnel build_tunnel(const World& w, const std::vector<AnyState>& pi_ad, int width)
{
    std::vector<Cell> cells;
    for (const auto& s : pi_ad) {
        const Cell c = cell_of(s);
        if (cells.empty() || cells.back() != c) {
            cells.push_back(c);
        }
    }
    return Tunnel(w.width(), w.height(), std::move(cells), width);
}

Tunnel build_tunnel(const World& w, const AdPath& pi_ad, int width)
{
    return build_tunnel(w, pi_ad.states(), width);
}

TrackingGraph::TrackingGraph(const World& w, const CostTable& c, const Tunnel& tunnel,
                             std::vector<HDRegion> regions, const EGraph* eg,
                             EGraphParams eg_params)
    : m_world(&w),
      m_costs(&c),
      m_tunnel(&tunnel),
      m_regions(std::move(regions)),
      m_egraph(eg),
      m_eg_params(eg_params)
{
}

bool TrackingGraph::in_hd_region(Cell c) const
{
    return std::any_of(m_regions.begin(), m_regions.end(),
                       [&](const HDRegion& r) { return r.contains(c); });
}

std::vector<Transition> TrackingGraph::base_successors(const HDState& s) const
{
    std::vector<Transition> out;
    auto keep = [&](const std::vector<Transition>& ts) {
        for (const auto& t : ts) {
            if (m_tunnel->contains(std::get<HDState>(t.to))) {
                out.push_back(t);
            }
        }
    };
    // macros first: on equal cost they win the backpointer
    keep(executable_macro_successors(*m_world, *m_costs, s));
    if (in_hd_region(s.cell())) {
        keep(hd_successors(*m_world, *m_costs, s));
        if (m_egraph) {
            keep(snap_successors(*m_egraph, *m_costs, s, m_eg_params));
        }
        return out;
    }
    // stance changes realize the representation switches of the phase-1 path
    for (const auto& t : hd_successors(*m_world, *m_costs, s)) {
        if (std::get<HDState>(t.to).stance != s.stance) {
            out.push_back(t);
        }
    }
    return out;
}

namespace {

// Longest legal prefix of each recorded run from `s`, as replayed edges.
std::vector<std::vector<PathEdge<HDState>>> legal_runs(const TrackingGraph& g, const EGraph& eg,
                                                       const HDState& s)
{
    std::vector<std::vector<PathEdge<HDState>>> out;
    for (const auto& run : eg.runs_from(s)) {
        std::vector<PathEdge<HDState>> edges;
        HDState cur = s;
        for (const auto& e : run) {
            const auto succ = g.base_successors(cur);
            auto it = std::find_if(succ.begin(), succ.end(), [&](const Transition& t) {
                return std::get<HDState>(t.to) == e.to && t.cost == e.cost &&
                       t.kind != TransitionKind::SNAP;
            });
            if (it == succ.end()) {
                break;
            }
            edges.push_back({ e.to, it->cost, it->kind, it->controller });
            cur = e.to;
        }
        if (edges.size() >= 2) {
            out.push_back(std::move(edges));
        }
    }
    return out;
}

Cost edge_sum(const std::vector<PathEdge<HDState>>& edges)
{
    Cost c = 0;
    for (const auto& e : edges) {
        c += e.cost;
    }
    return c;
}

} // namespace

std::vector<Transition> TrackingGraph::successors(const HDState& s) const
{
    auto out = base_successors(s);
    if (m_egraph) {
        for (const auto& run : legal_runs(*this, *m_egraph, s)) {
            out.push_back({ s, run.back().to, edge_sum(run), TransitionKind::EGRAPH_SHORTCUT,
                            Controller::NONE });
        }
    }
    return out;
}

std::vector<PathEdge<HDState>> TrackingGraph::replay(const HDState& from, const HDState& to) const
{
    if (m_egraph) {
        for (auto& run : legal_runs(*this, *m_egraph, from)) {
            if (run.back().to == to) {
                return run;
            }
        }
    }
    return {};
}

Path TrackingGraph::expand_shortcuts(const Path& p) const
{
    Path out{ p.start, {} };
    for (const auto& e : p.edges) {
        if (e.kind != TransitionKind::EGRAPH_SHORTCUT) {
            out.edges.push_back(e);
            continue;
        }
        auto run = replay(out.back(), e.to);
        if (run.empty() || edge_sum(run) != e.cost) {
            throw std::logic_error("shortcut " + to_string(out.back()) + " -> " + to_string(e.to) +
                                   " cannot be replayed");
        }
        out.edges.insert(out.edges.end(), run.begin(), run.end());
    }
    return out;
}

namespace {

std::function<void(const HDState&, std::vector<PathEdge<HDState>>&)>
hd_edges(std::function<std::vector<Transition>(const HDState&)> succ)
{
    return [succ = std::move(succ)](const HDState& s, std::vector<PathEdge<HDState>>& out) {
        for (const auto& t : succ(s)) {
            out.push_back({ std::get<HDState>(t.to), t.cost, t.kind, t.controller });
        }
    };
}

GridGraphSpec tunnel_grid(const World& w, const Tunnel& tunnel, Cost per_move)
{
    GridGraphSpec spec;
    spec.eight_connected = true;
    spec.passable = [&w, &tunnel](Cell c) { return tunnel.contains(c) && w.at(c) != Terrain::WALL; };
    spec.move_cost = [per_move](Cell, Cell) { return per_move; };
    return spec;
}

} // namespace

TrackResult track(const World& w, const CostTable& c, const Tunnel& tunnel,
                  const std::vector<HDRegion>& regions, const HDState& start, const GoalSpec& goal,
                  const AdaptivePlanParams& params, const EGraph* eg,
                  std::optional<std::uint64_t> budget,
                  std::function<void(const TraceEvent<HDState>&)> trace)
{
    if (!tunnel.contains(start)) {
        throw ContractViolation("track: start " + to_string(start) + " is outside the tunnel");
    }
    const TrackingGraph graph(w, c, tunnel, regions, eg, params.egraph);

    const Cost anchor_move = std::min({ c.rotate(), c.weight_shift(), c.min_move() });
    auto anchor = std::make_shared<DistanceField>(dijkstra_to(w, goal.cell, tunnel_grid(w, tunnel, anchor_move)));
    auto walk = std::make_shared<DistanceField>(dijkstra_to(w, goal.cell, tunnel_grid(w, tunnel, c.walk_step())));
    const int last = int(tunnel.path_cells().size()) - 1;

    SearchProblem<HDState> problem;
    problem.successors = hd_edges([&graph](const HDState& s) { return graph.successors(s); });
    problem.rep_of = [](const HDState&) { return RepId::HD; };
    problem.is_goal = [goal](const HDState& s) { return is_goal(goal, s); };
    problem.heuristics.push_back([anchor](const HDState& s) { return anchor->at(s.cell()); });
    problem.heuristics.push_back([walk](const HDState& s) { return walk->at(s.cell()); });
    problem.heuristics.push_back([&tunnel, &c, last, goal](const HDState& s) -> Cost {
        if (s.cell() == goal.cell) {
            return 0;
        }
        const int p = tunnel.progress_of(s.cell());
        return p < 0 ? kInfiniteCost : Cost(std::max(0, last - p)) * c.walk_step();
    });
    std::vector<std::vector<bool>> enable{ { true }, { true } };
    if (eg) {
        auto he = std::make_shared<DistanceField>(egraph_heuristic(w, c, *eg, goal, params.egraph));
        problem.heuristics.push_back([he](const HDState& s) { return he->at(s.cell()); });
        enable.push_back({ true });
    }

    SearchParams sp;
    sp.w1 = params.w1_track;
    sp.w2 = params.w2_track;
    sp.expansion_budget = budget.value_or(params.budget_track);
    sp.debug_checks = params.debug_checks;

    MultiRepSearch<HDState> search(std::move(problem), init_heuristic_lists({ RepId::HD }, enable), sp);
    if (trace) {
        search.set_trace(std::move(trace));
    }

    TrackResult out;
    out.search = search.run(start);
    if (out.search.outcome == SearchOutcome::PATH) {
        out.search.path = graph.expand_shortcuts(out.search.path);
    }
    out.frontier = search.frontier();
    for (const auto& s : search.closed()) {
        out.max_closed_progress = std::max(out.max_closed_progress, tunnel.progress_of(s.cell()));
    }
    int best = -1;
    for (const auto& f : out.frontier) {
        // frontier is sorted by anchor key, so the first maximum wins ties
        const int p = tunnel.progress_of(f.state.cell());
        if (p > best) {
            best = p;
            out.best_progress_state = f.state;
        }
    }
    if (out.best_progress_state) {
        if (auto p = search.reconstruct(*out.best_progress_state)) {
            out.partial = graph.expand_shortcuts(*p);
        }
    }
    return out;
}

HDRegion select_region(const TrackResult& tracking, const Tunnel& tunnel,
                       const AdaptivePlanParams& params)
{
    HDRegion r;
    r.radius = params.region_radius;
    if (tracking.best_progress_state) {
        r.center = tracking.best_progress_state->cell();
    } else if (!tunnel.path_cells().empty()) {
        const int p = std::max(0, tracking.max_closed_progress);
        r.center = tunnel.path_cells()[std::size_t(p)];
    } else {
        r.center = tracking.search.path.start.cell();
    }
    return r;
}

std::string_view to_string(AdaptiveOutcome o)
{
    switch (o) {
    case AdaptiveOutcome::EXECUTABLE:
        return "EXECUTABLE";
    case AdaptiveOutcome::NO_PATH:
        return "NO_PATH";
    case AdaptiveOutcome::PLAN_TIMEOUT:
        return "PLAN_TIMEOUT";
    case AdaptiveOutcome::ITERATION_LIMIT:
        return "ITERATION_LIMIT";
    }
    return "?";
}

std::uint64_t AdaptiveResult::plan_expansions() const
{
    std::uint64_t n = 0;
    for (const auto& it : iterations) {
        n += it.plan_stats.expansions;
    }
    return n;
}

std::uint64_t AdaptiveResult::track_expansions() const
{
    std::uint64_t n = 0;
    for (const auto& it : iterations) {
        n += it.track_stats.expansions;
    }
    return n;
}

double AdaptiveResult::plan_seconds() const
{
    double t = 0;
    for (const auto& it : iterations) {
        t += it.plan_stats.wall_seconds;
    }
    return t;
}

double AdaptiveResult::track_seconds() const
{
    double t = 0;
    for (const auto& it : iterations) {
        t += it.track_stats.wall_seconds;
    }
    return t;
}

std::vector<DistanceField> plan_heuristic_fields(const World& w, const CostTable& c,
                                                 const GoalSpec& goal)
{
    auto grid = [&](bool eight, auto passable, auto cost) {
        GridGraphSpec spec;
        spec.eight_connected = eight;
        spec.passable = passable;
        spec.move_cost = cost;
        return dijkstra_to(w, goal.cell, spec);
    };
    auto not_wall = [&w](Cell x) { return w.at(x) != Terrain::WALL; };
    const Cost min_move = c.min_move();

    std::vector<DistanceField> out;
    out.push_back(grid(true, not_wall, [min_move](Cell, Cell) { return min_move; }));
    out.push_back(grid(
        true, [&w](Cell x) { return w.at(x) == Terrain::FREE || w.at(x) == Terrain::RUBBLE; },
        [&c](Cell, Cell) { return c.walk_step(); }));
    out.push_back(grid(
        false, [&w](Cell x) { return w.at(x) == Terrain::FREE || w.at(x) == Terrain::LOW; },
        [&c](Cell, Cell) { return c.crawl_step(); }));
    out.push_back(grid(true, not_wall, [&w, &c](Cell, Cell to) {
        switch (w.at(to)) {
        case Terrain::LOW:
            return c.crawl_step();
        case Terrain::RUBBLE:
            return c.rubble_substep();
        default:
            return c.walk_step();
        }
    }));
    return out;
}

HeuristicLists plan_heuristic_lists()
{
    // columns: HD, WALK, CRAWL
    return init_heuristic_lists({ RepId::HD, RepId::WALK, RepId::CRAWL },
                                {
                                    { false, true, false }, // h1 walking distance
                                    { false, false, true }, // h2 crawling distance
                                    { true, true, true },   // h3 terrain-aware distance
                                });
}

AdaptivePlanner::AdaptivePlanner(std::shared_ptr<const World> world, CostTable costs, GoalSpec goal,
                                 AdaptivePlanParams params, const EGraph* eg)
    : m_world(std::move(world)),
      m_costs(costs),
      m_goal(goal),
      m_params(std::move(params)),
      m_egraph(eg)
{
    check_goal(*m_world, m_goal);
    if (m_params.max_iterations < 1 || m_params.tunnel_width < 0 || m_params.region_radius < 0 ||
        m_params.budget_plan == 0 || m_params.budget_track == 0) {
        throw ContractViolation("AdaptivePlanParams out of range");
    }
    m_plan_fields = plan_heuristic_fields(*m_world, m_costs, m_goal);
}

AdaptiveGraph AdaptivePlanner::graph() const
{
    return AdaptiveGraph(m_world, m_costs, m_regions, m_params.graph);
}

SearchResult<AnyState> AdaptivePlanner::plan(const HDState& start,
                                             std::function<void(const TraceEvent<AnyState>&)> trace) const
{
    if (!is_valid(*m_world, start)) {
        throw ContractViolation("plan: invalid start " + to_string(start));
    }
    const AdaptiveGraph g = graph();
    SearchProblem<AnyState> problem;
    problem.successors = [&g](const AnyState& s, std::vector<PathEdge<AnyState>>& out) {
        for (const auto& t : g.successors(s)) {
            out.push_back({ t.to, t.cost, t.kind, t.controller });
        }
    };
    problem.rep_of = [](const AnyState& s) { return rep_of(s); };
    problem.is_goal = [goal = m_goal](const AnyState& s) { return is_goal(goal, s); };
    for (const auto& f : m_plan_fields) {
        problem.heuristics.push_back([&f](const AnyState& s) { return f.at(cell_of(s)); });
    }
    SearchParams sp;
    sp.w1 = m_params.w1_plan;
    sp.w2 = m_params.w2_plan;
    sp.expansion_budget = m_params.budget_plan;
    sp.debug_checks = m_params.debug_checks;
    MultiRepSearch<AnyState> search(std::move(problem), plan_heuristic_lists(), sp);
    if (trace) {
        search.set_trace(std::move(trace));
    }
    return search.run(g.image_of(start));
}

Tunnel AdaptivePlanner::tunnel_for(const AdPath& pi_ad) const
{
    return build_tunnel(*m_world, pi_ad, m_params.tunnel_width);
}

TrackResult AdaptivePlanner::track_from(const Tunnel& tunnel, const HDState& start,
                                        std::optional<std::uint64_t> budget) const
{
    return track(*m_world, m_costs, tunnel, m_regions, start, m_goal, m_params, m_egraph, budget);
}

AdaptiveResult plan_adaptive(std::shared_ptr<const World> world, const CostTable& costs,
                             const HDState& start, const GoalSpec& goal,
                             const AdaptivePlanParams& params, const EGraph* eg,
                             std::function<void(const IterationRecord&)> sink)
{
    AdaptivePlanner planner(std::move(world), costs, goal, params, eg);
    AdaptiveResult result;
    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        IterationRecord rec;
        rec.index = iter;
        rec.regions = planner.regions();

        const auto phase1 = planner.plan(start);
        rec.plan_outcome = phase1.outcome;
        rec.plan_stats = phase1.stats;
        if (phase1.outcome != SearchOutcome::PATH) {
            result.outcome = phase1.outcome == SearchOutcome::EXHAUSTED ? AdaptiveOutcome::NO_PATH
                                                                        : AdaptiveOutcome::PLAN_TIMEOUT;
            result.iterations.push_back(rec);
            if (sink) {
                sink(rec);
            }
            result.regions = planner.regions();
            return result;
        }
        rec.pi_ad = phase1.path;
        rec.plan_cost = phase1.cost;

        const Tunnel tunnel = planner.tunnel_for(phase1.path);
        rec.tunnel_width = tunnel.width();
        rec.tunnel_cells = tunnel.cell_count();
        const auto tracked = planner.track_from(tunnel, start);
        rec.track_outcome = tracked.search.outcome;
        rec.track_stats = tracked.search.stats;

        if (tracked.search.outcome == SearchOutcome::PATH) {
            result.outcome = AdaptiveOutcome::EXECUTABLE;
            result.path = tracked.search.path;
            result.iterations.push_back(rec);
            if (sink) {
                sink(rec);
            }
            result.regions = planner.regions();
            return result;
        }

        const HDRegion region = select_region(tracked, tunnel, params);
        rec.region_added = region;
        planner.add_region(region);
        result.iterations.push_back(rec);
        if (sink) {
            sink(rec);
        }
    }
    result.outcome = AdaptiveOutcome::ITERATION_LIMIT;
    result.regions = planner.regions();
    return result;
}

std::optional<PathViolation> validate_path(const World& w, const CostTable& c, const Path& path,
                                           const ValidateOptions& opts)
{
    if (!is_valid(w, path.start)) {
        return PathViolation{ 0, "start " + to_string(path.start) + " is not a valid state" };
    }
    if (opts.start && *opts.start != path.start) {
        return PathViolation{ 0, "path starts at " + to_string(path.start) + ", expected " +
                                     to_string(*opts.start) };
    }
    HDState cur = path.start;
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const auto& e = path.edges[i];
        const std::string where = "edge " + std::to_string(i) + " " + to_string(cur) + " -> " +
                                  to_string(e.to) + ": ";
        if (!is_valid(w, e.to)) {
            return PathViolation{ i, where + "target is not a valid state" };
        }
        std::vector<Transition> legal;
        switch (e.kind) {
        case TransitionKind::HD_PRIMITIVE:
            legal = hd_successors(w, c, cur);
            break;
        case TransitionKind::HD_MACRO:
            legal = executable_macro_successors(w, c, cur);
            break;
        case TransitionKind::SNAP: {
            if (cur.cell() != e.to.cell() || cur.stance != e.to.stance) {
                return PathViolation{ i, where + "snap changes cell or stance" };
            }
            if (cur == e.to) {
                return PathViolation{ i, where + "zero-length snap" };
            }
            const Cost expected =
                opts.snap_cost_per_field * in_place_cost(c, cur.theta, cur.phase, e.to.theta, e.to.phase);
            if (e.cost != expected) {
                return PathViolation{ i, where + "snap cost " + std::to_string(e.cost) + " != " +
                                             std::to_string(expected) };
            }
            cur = e.to;
            continue;
        }
        default:
            return PathViolation{ i, where + "kind " + std::string(to_string(e.kind)) +
                                         " is not executable" };
        }
        auto it = std::find_if(legal.begin(), legal.end(), [&](const Transition& t) {
            return std::get<HDState>(t.to) == e.to;
        });
        if (it == legal.end()) {
            return PathViolation{ i, where + "no such " + std::string(to_string(e.kind)) + " transition" };
        }
        if (it->cost != e.cost) {
            return PathViolation{ i, where + "cost " + std::to_string(e.cost) + " != " +
                                         std::to_string(it->cost) };
        }
        if (e.kind == TransitionKind::HD_MACRO && it->controller != e.controller) {
            return PathViolation{ i, where + "controller mismatch" };
        }
        cur = e.to;
    }
    if (opts.goal && !is_goal(*opts.goal, cur)) {
        return PathViolation{ path.edges.empty() ? 0 : path.edges.size() - 1,
                              "path ends at " + to_string(cur) + ", not at the goal cell" };
    }
    return std::nullopt;
}

} // namespace adim

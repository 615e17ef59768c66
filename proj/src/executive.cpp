#include <adim/executive.hpp>

#include <algorithm>

namespace adim {

Controller executing_controller(const PathEdge<HDState>& e)
{
    if (e.kind == TransitionKind::HD_PRIMITIVE || e.kind == TransitionKind::SNAP) {
        return Controller::FULLBODY_CTRL;
    }
    if (e.kind == TransitionKind::HD_MACRO && e.controller != Controller::NONE) {
        return e.controller;
    }
    throw ContractViolation("edge of kind " + std::string(to_string(e.kind)) + " is not executable");
}

std::vector<Segment> split_segments(const Path& path)
{
    std::vector<Segment> out;
    HDState cur = path.start;
    for (const auto& e : path.edges) {
        const Controller c = executing_controller(e);
        if (out.empty() || out.back().controller != c) {
            out.push_back({ c, Path{ cur, {} } });
        }
        out.back().path.edges.push_back(e);
        cur = e.to;
    }
    return out;
}

Path concat_segments(const std::vector<Segment>& segments)
{
    Path p;
    if (segments.empty()) {
        return p;
    }
    p.start = segments.front().path.start;
    for (const auto& s : segments) {
        if (s.path.start != p.back()) {
            throw ContractViolation("concat_segments: segments are not contiguous");
        }
        p.edges.insert(p.edges.end(), s.path.edges.begin(), s.path.edges.end());
    }
    return p;
}

std::string_view to_string(ExecEventKind k)
{
    switch (k) {
    case ExecEventKind::PHASE1_DONE:
        return "PHASE1_DONE";
    case ExecEventKind::PATH_EXTENDED:
        return "PATH_EXTENDED";
    case ExecEventKind::SEGMENT_DISPATCHED:
        return "SEGMENT_DISPATCHED";
    case ExecEventKind::WAYPOINT_REACHED:
        return "WAYPOINT_REACHED";
    case ExecEventKind::SEGMENT_DONE:
        return "SEGMENT_DONE";
    case ExecEventKind::TRACKING_COMPLETE:
        return "TRACKING_COMPLETE";
    case ExecEventKind::GOAL_REACHED:
        return "GOAL_REACHED";
    case ExecEventKind::ABORT:
        return "ABORT";
    }
    return "?";
}

std::int64_t ExecRates::for_controller(Controller c) const
{
    switch (c) {
    case Controller::WALK_CTRL:
        return walk;
    case Controller::CRAWL_CTRL:
        return crawl;
    case Controller::FULLBODY_CTRL:
        return fullbody;
    case Controller::NONE:
        break;
    }
    throw ContractViolation("no controller rate for NONE");
}

std::vector<ExecEvent> ExecTrace::sorted_events() const
{
    auto out = events;
    std::stable_sort(out.begin(), out.end(),
                     [](const ExecEvent& a, const ExecEvent& b) { return a.tick < b.tick; });
    return out;
}

std::optional<std::int64_t> ExecTrace::first_tick(ExecEventKind kind) const
{
    std::optional<std::int64_t> t;
    for (const auto& e : events) {
        if (e.kind == kind && (!t || e.tick < *t)) {
            t = e.tick;
        }
    }
    return t;
}

void simulate_execute(ExecTrace& trace, const Segment& seg, const ExecRates& rates,
                      std::int64_t available_at)
{
    if (!trace.started) {
        trace.executed.start = seg.path.start;
        trace.started = true;
    } else if (seg.path.start != trace.executed.back()) {
        throw ContractViolation("simulate_execute: segment does not continue the executed path");
    }
    const std::int64_t begin = std::max(trace.now, available_at);
    trace.idle_ticks += begin - trace.now;
    trace.now = begin;
    const int id = trace.segments_dispatched++;
    trace.events.push_back({ trace.now, ExecEventKind::SEGMENT_DISPATCHED, id,
                             int(trace.executed.edges.size()) });
    for (const auto& e : seg.path.edges) {
        trace.now += e.cost * rates.for_controller(seg.controller);
        trace.executed.edges.push_back(e);
        trace.events.push_back({ trace.now, ExecEventKind::WAYPOINT_REACHED, id,
                                 int(trace.executed.edges.size()) });
    }
    trace.events.push_back({ trace.now, ExecEventKind::SEGMENT_DONE, id,
                             int(trace.executed.edges.size()) });
}

namespace {

void dispatch(ExecTrace& trace, const Path& part, const ExecRates& rates, std::int64_t at)
{
    if (!trace.started) {
        trace.executed.start = part.start;
        trace.started = true;
    }
    for (const auto& seg : split_segments(part)) {
        simulate_execute(trace, seg, rates, at);
    }
}

} // namespace

InterleaveResult interleave_run(std::shared_ptr<const World> world, const CostTable& costs,
                                const HDState& start, const GoalSpec& goal,
                                const AdaptivePlanParams& params,
                                std::optional<std::uint64_t> lookahead, const EGraph* eg,
                                const ExecRates& rates)
{
    if (lookahead && *lookahead == 0) {
        throw ContractViolation("interleave_run: lookahead must be > 0");
    }
    AdaptivePlanner planner(std::move(world), costs, goal, params, eg);
    InterleaveResult out;
    ExecTrace& trace = out.trace;
    trace.executed.start = start;
    std::int64_t planner_tick = 0;
    HDState cur = start;

    auto abort = [&](AdaptiveOutcome why) {
        out.result.outcome = why;
        trace.events.push_back({ std::max(planner_tick, trace.now), ExecEventKind::ABORT, -1,
                                 int(trace.executed.edges.size()) });
        out.result.regions = planner.regions();
        return out;
    };

    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        IterationRecord rec;
        rec.index = iter;
        rec.regions = planner.regions();

        const auto phase1 = planner.plan(cur);
        rec.plan_outcome = phase1.outcome;
        rec.plan_stats = phase1.stats;
        planner_tick += std::int64_t(phase1.stats.expansions) * rates.per_expansion;
        if (phase1.outcome != SearchOutcome::PATH) {
            out.result.iterations.push_back(rec);
            return abort(phase1.outcome == SearchOutcome::EXHAUSTED ? AdaptiveOutcome::NO_PATH
                                                                    : AdaptiveOutcome::PLAN_TIMEOUT);
        }
        trace.events.push_back({ planner_tick, ExecEventKind::PHASE1_DONE, -1, -1 });
        rec.pi_ad = phase1.path;
        rec.plan_cost = phase1.cost;
        const Tunnel tunnel = planner.tunnel_for(phase1.path);
        rec.tunnel_width = tunnel.width();
        rec.tunnel_cells = tunnel.cell_count();

        std::optional<std::uint64_t> burst_budget = lookahead;
        while (true) {
            const auto burst = planner.track_from(tunnel, cur, burst_budget);
            rec.track_outcome = burst.search.outcome;
            rec.track_stats.expansions += burst.search.stats.expansions;
            rec.track_stats.generated += burst.search.stats.generated;
            rec.track_stats.wall_seconds += burst.search.stats.wall_seconds;
            planner_tick += std::int64_t(burst.search.stats.expansions) * rates.per_expansion;

            if (burst.search.outcome == SearchOutcome::PATH) {
                trace.events.push_back({ planner_tick, ExecEventKind::TRACKING_COMPLETE, -1, -1 });
                out.commits.push_back(burst.search.path);
                dispatch(trace, burst.search.path, rates, planner_tick);
                trace.events.push_back({ trace.now, ExecEventKind::GOAL_REACHED, -1,
                                         int(trace.executed.edges.size()) });
                out.result.iterations.push_back(rec);
                out.result.outcome = AdaptiveOutcome::EXECUTABLE;
                out.result.path = trace.executed;
                out.result.regions = planner.regions();
                return out;
            }

            const bool can_commit = lookahead && burst.search.outcome == SearchOutcome::BUDGET &&
                                    burst.partial && !burst.partial->edges.empty() &&
                                    tunnel.progress_of(burst.partial->back().cell()) >
                                        tunnel.progress_of(cur.cell());
            if (!can_commit) {
                // a stalled burst gets a larger budget before the tunnel is declared stuck
                if (burst_budget && burst.search.outcome == SearchOutcome::BUDGET &&
                    *burst_budget < params.budget_track) {
                    burst_budget = std::min(*burst_budget * 2, params.budget_track);
                    continue;
                }
                const HDRegion region = select_region(burst, tunnel, params);
                rec.region_added = region;
                planner.add_region(region);
                break;
            }
            burst_budget = lookahead;
            out.commits.push_back(*burst.partial);
            trace.events.push_back({ planner_tick, ExecEventKind::PATH_EXTENDED, -1,
                                     int(trace.executed.edges.size()) });
            dispatch(trace, *burst.partial, rates, planner_tick);
            cur = burst.partial->back();
        }
        out.result.iterations.push_back(rec);
    }
    return abort(AdaptiveOutcome::ITERATION_LIMIT);
}

} // namespace adim

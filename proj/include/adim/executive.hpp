#ifndef ADIM_EXECUTIVE_HPP
#define ADIM_EXECUTIVE_HPP

#include <adim/adaptive_planner.hpp>
#include <adim/types.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace adim {

/// Maximal run of path edges handled by one controller.
struct Segment
{
    Controller controller = Controller::NONE;
    Path path;
};

/// Controller that executes an edge: macros carry their own, full-body
/// primitives and snaps go to FULLBODY_CTRL.
Controller executing_controller(const PathEdge<HDState>& e);

std::vector<Segment> split_segments(const Path& path);
Path concat_segments(const std::vector<Segment>& segments);

enum class ExecEventKind {
    PHASE1_DONE,
    PATH_EXTENDED,
    SEGMENT_DISPATCHED,
    WAYPOINT_REACHED,
    SEGMENT_DONE,
    TRACKING_COMPLETE,
    GOAL_REACHED,
    ABORT,
};
std::string_view to_string(ExecEventKind k);

struct ExecEvent
{
    std::int64_t tick = 0;
    ExecEventKind kind = ExecEventKind::SEGMENT_DISPATCHED;
    /// Segment index (dispatch order), -1 if not about a segment.
    int segment = -1;
    /// Index of the waypoint in the executed path, -1 if not applicable.
    int waypoint = -1;

    bool operator==(const ExecEvent&) const = default;
};

struct ExecRates
{
    std::int64_t walk = 3;
    std::int64_t crawl = 3;
    std::int64_t fullbody = 3;
    /// Simulated planner time per node expansion.
    std::int64_t per_expansion = 1;

    std::int64_t for_controller(Controller c) const;
};

/// Simulated executor state and event log.
struct ExecTrace
{
    /// Tick at which the executor becomes free.
    std::int64_t now = 0;
    std::int64_t idle_ticks = 0;
    int segments_dispatched = 0;
    Path executed;
    bool started = false;
    std::vector<ExecEvent> events;

    /// Events ordered by tick (stable with respect to emission order).
    std::vector<ExecEvent> sorted_events() const;
    /// First tick of an event of `kind`, nullopt if none.
    std::optional<std::int64_t> first_tick(ExecEventKind kind) const;
};

/// Runs one segment on the simulated controller, starting no earlier than
/// `available_at`. The segment must continue the executed path.
void simulate_execute(ExecTrace& trace, const Segment& seg, const ExecRates& rates,
                      std::int64_t available_at = 0);

struct InterleaveResult
{
    AdaptiveResult result;
    ExecTrace trace;
    /// Partial paths in the order they were committed.
    std::vector<Path> commits;
};

/// Phase 1 runs to completion, tracking runs in bursts of `lookahead`
/// expansions. After each burst the path to the frontier state of maximal
/// tunnel progress is committed and handed to the executor; tracking resumes
/// from its tail. nullopt lookahead plans completely before executing.
InterleaveResult interleave_run(std::shared_ptr<const World> world, const CostTable& costs,
                                const HDState& start, const GoalSpec& goal,
                                const AdaptivePlanParams& params,
                                std::optional<std::uint64_t> lookahead,
                                const EGraph* eg = nullptr, const ExecRates& rates = {});

} // namespace adim

#endif

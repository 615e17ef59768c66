#ifndef ADIM_BENCH_HPP
#define ADIM_BENCH_HPP

#include <adim/adaptive_planner.hpp>
#include <adim/egraph.hpp>

#include <memory>
#include <string>
#include <vector>

namespace adim {

enum class BenchClock { WALL, SIM };

struct BenchOptions
{
    int stride = 4;
    std::vector<Cell> goals;
    CostTable costs;
    AdaptivePlanParams params;
    const EGraph* egraph = nullptr;
    int jobs = 1;
    BenchClock clock = BenchClock::WALL;
};

/// One query outcome. Times are seconds (WALL) or expansions (SIM).
struct BenchQuery
{
    HDState start;
    Cell goal;
    bool plan_success = false;
    bool track_success = false;
    double plan_time = 0;
    double track_time = 0;
    double wall_seconds = 0;
};

struct BenchRow
{
    Cell goal;
    int queries = 0;
    int plan_successes = 0;
    int track_successes = 0;
    double plan_success_pct = 0;
    /// Normalized by the number of phase-1 successes.
    double track_success_pct = 0;
    double plan_mean_time = 0;
    double track_mean_time = 0;
    double max_query_seconds = 0;
};

/// Starts on cells (1 + i*stride, 1 + j*stride) that admit a stance (STAND
/// unless the cell is LOW), each with all eight headings.
std::vector<HDState> bench_starts(const World& w, int stride);

std::vector<BenchQuery> run_bench_queries(std::shared_ptr<const World> w, const BenchOptions& o);
std::vector<BenchRow> summarize_bench(const std::vector<BenchQuery>& qs,
                                      const std::vector<Cell>& goals);

/// Columns: goal, plan_success_pct, track_success_pct, plan_mean_time,
/// track_mean_time. The goal is written as "x:y".
std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace adim

#endif

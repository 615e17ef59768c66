#include <adim/bench.hpp>

#include <adim/domain.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

namespace adim {

std::vector<HDState> bench_starts(const World& w, int stride)
{
    if (stride < 1) {
        throw ContractViolation("bench: stride must be >= 1");
    }
    std::vector<HDState> out;
    for (int y = 1; y < w.height(); y += stride) {
        for (int x = 1; x < w.width(); x += stride) {
            const Terrain t = w.at(x, y);
            if (t == Terrain::WALL) {
                continue;
            }
            const Stance st = t == Terrain::LOW ? Stance::CROUCH : Stance::STAND;
            for (int th = 0; th < kHeadings; ++th) {
                out.push_back({ x, y, th, st, 0 });
            }
        }
    }
    return out;
}

std::vector<BenchQuery> run_bench_queries(std::shared_ptr<const World> w, const BenchOptions& o)
{
    const auto starts = bench_starts(*w, o.stride);
    std::vector<BenchQuery> qs;
    for (const auto& g : o.goals) {
        check_goal(*w, GoalSpec{ g });
        for (const auto& s : starts) {
            qs.push_back({ s, g });
        }
    }
    std::atomic<std::size_t> next{ 0 };
    auto worker = [&] {
        for (std::size_t i = next++; i < qs.size(); i = next++) {
            BenchQuery& q = qs[i];
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = plan_adaptive(w, o.costs, q.start, GoalSpec{ q.goal }, o.params, o.egraph);
            q.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            q.plan_success = r.outcome != AdaptiveOutcome::NO_PATH && r.outcome != AdaptiveOutcome::PLAN_TIMEOUT;
            q.track_success = r.outcome == AdaptiveOutcome::EXECUTABLE;
            if (o.clock == BenchClock::WALL) {
                q.plan_time = r.plan_seconds();
                q.track_time = r.track_seconds();
            } else {
                q.plan_time = double(r.plan_expansions());
                q.track_time = double(r.track_expansions());
            }
        }
    };
    const int jobs = std::max(1, o.jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return qs;
}

std::vector<BenchRow> summarize_bench(const std::vector<BenchQuery>& qs, const std::vector<Cell>& goals)
{
    std::vector<BenchRow> rows;
    for (const auto& g : goals) {
        BenchRow r;
        r.goal = g;
        double plan_t = 0;
        double track_t = 0;
        for (const auto& q : qs) {
            if (q.goal != g) {
                continue;
            }
            ++r.queries;
            plan_t += q.plan_time;
            r.max_query_seconds = std::max(r.max_query_seconds, q.wall_seconds);
            if (q.plan_success) {
                ++r.plan_successes;
                track_t += q.track_time;
                r.track_successes += q.track_success ? 1 : 0;
            }
        }
        if (r.queries > 0) {
            r.plan_success_pct = 100.0 * r.plan_successes / r.queries;
            r.plan_mean_time = plan_t / r.queries;
        }
        if (r.plan_successes > 0) {
            r.track_success_pct = 100.0 * r.track_successes / r.plan_successes;
            r.track_mean_time = track_t / r.plan_successes;
        }
        rows.push_back(r);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::string out = "goal,plan_success_pct,track_success_pct,plan_mean_time,track_mean_time\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d:%d,%.1f,%.1f,%.6f,%.6f\n", r.goal.x, r.goal.y,
                      r.plan_success_pct, r.track_success_pct, r.plan_mean_time, r.track_mean_time);
        out += buf;
    }
    return out;
}

} // namespace adim

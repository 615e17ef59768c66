// Command-line front end: plan, bench, oracle, validate, render, genmap.

#include <adim/adaptive_planner.hpp>
#include <adim/bench.hpp>
#include <adim/egraph.hpp>
#include <adim/executive.hpp>
#include <adim/io.hpp>
#include <adim/mapgen.hpp>
#include <adim/oracle.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace adim;

namespace {

enum Exit : int { OK = 0, USAGE = 1, NO_PATH = 2, LIMIT = 3, INVALID = 4 };

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

int to_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + ": '" + s + "'");
    }
}

Cell parse_cell(const std::string& s)
{
    const auto p = split(s, ',');
    if (p.size() != 2) {
        throw UsageError("expected x,y but got '" + s + "'");
    }
    return { to_int(p[0], "x"), to_int(p[1], "y") };
}

// "x,y,theta[,STAND|CROUCH[,phase]]"
HDState parse_start(const std::string& s)
{
    const auto p = split(s, ',');
    if (p.size() < 3 || p.size() > 5) {
        throw UsageError("expected x,y,theta[,stance[,phase]] but got '" + s + "'");
    }
    HDState h{ to_int(p[0], "x"), to_int(p[1], "y"), to_int(p[2], "theta"), Stance::STAND, 0 };
    if (p.size() >= 4) {
        h.stance = parse_stance(p[3]);
    }
    if (p.size() == 5) {
        h.phase = to_int(p[4], "phase");
    }
    if (h.theta < 0 || h.theta >= kHeadings || h.phase < 0 || h.phase >= kPhases) {
        throw UsageError("theta or phase out of range in '" + s + "'");
    }
    return h;
}

struct QueryFlags
{
    std::string scenario;
    std::string map;
    std::string start;
    std::string goal;
    std::string w1, w2, w1_plan, w2_plan, w1_track, w2_track, eps;
    std::optional<int> tunnel_width, region_radius, max_iterations;
    std::optional<std::uint64_t> budget_plan, budget_track, seed, lookahead;
    std::vector<std::string> demos;

    void add(CLI::App* app, bool with_query)
    {
        app->add_option("--scenario", scenario, "scenario file (JSON)");
        app->add_option("--map", map, "map file");
        if (with_query) {
            app->add_option("--start", start, "start state x,y,theta[,stance[,phase]]");
            app->add_option("--goal", goal, "goal cell x,y");
        }
        app->add_option("--w1", w1, "w1 for both phases");
        app->add_option("--w2", w2, "w2 for both phases");
        app->add_option("--w1-plan", w1_plan);
        app->add_option("--w2-plan", w2_plan);
        app->add_option("--w1-track", w1_track);
        app->add_option("--w2-track", w2_track);
        app->add_option("--tunnel-width", tunnel_width);
        app->add_option("--region-radius", region_radius);
        app->add_option("--eps-egraph", eps, "E-Graph inflation epsilon^E");
        app->add_option("--demo", demos, "demonstration file (repeatable)");
        app->add_option("--seed", seed);
        app->add_option("--budget-plan", budget_plan, "phase-1 expansion budget");
        app->add_option("--budget-track", budget_track, "tracking expansion budget");
        app->add_option("--max-iterations", max_iterations);
    }

    Scenario resolve(bool need_query) const
    {
        Scenario s;
        if (!scenario.empty()) {
            s = load_scenario(scenario);
        }
        if (!map.empty()) {
            s.map = map;
        }
        if (!start.empty()) {
            s.start = parse_start(start);
        }
        if (!goal.empty()) {
            s.goal.cell = parse_cell(goal);
        }
        if (s.map.empty()) {
            throw UsageError("a map is required (--map or --scenario)");
        }
        if (need_query && scenario.empty() && (start.empty() || goal.empty())) {
            throw UsageError("--start and --goal are required without --scenario");
        }
        auto& a = s.params;
        auto weight = [](const std::string& v, Weight& out) {
            if (!v.empty()) {
                out = parse_weight(v);
                if (out < 1) {
                    throw UsageError("weights must be >= 1");
                }
            }
        };
        weight(w1, a.w1_plan);
        weight(w1, a.w1_track);
        weight(w2, a.w2_plan);
        weight(w2, a.w2_track);
        weight(w1_plan, a.w1_plan);
        weight(w2_plan, a.w2_plan);
        weight(w1_track, a.w1_track);
        weight(w2_track, a.w2_track);
        weight(eps, a.egraph.eps_e);
        if (tunnel_width) {
            a.tunnel_width = *tunnel_width;
        }
        if (region_radius) {
            a.region_radius = *region_radius;
        }
        if (max_iterations) {
            a.max_iterations = *max_iterations;
        }
        if (budget_plan) {
            a.budget_plan = *budget_plan;
        }
        if (budget_track) {
            a.budget_track = *budget_track;
        }
        if (seed) {
            s.seed = *seed;
        }
        if (lookahead) {
            s.lookahead = *lookahead;
        }
        for (const auto& d : demos) {
            s.demos.push_back(d);
        }
        if (a.tunnel_width < 0 || a.region_radius < 0 || a.max_iterations < 1 || a.budget_plan == 0 ||
            a.budget_track == 0) {
            throw UsageError("parameter out of range");
        }
        return s;
    }
};

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

int exit_for(AdaptiveOutcome o)
{
    switch (o) {
    case AdaptiveOutcome::EXECUTABLE:
        return OK;
    case AdaptiveOutcome::NO_PATH:
        return NO_PATH;
    case AdaptiveOutcome::PLAN_TIMEOUT:
    case AdaptiveOutcome::ITERATION_LIMIT:
        return LIMIT;
    }
    return USAGE;
}

int cmd_plan(const QueryFlags& f, bool interleave, const std::string& out, const std::string& render,
             bool timing)
{
    Scenario s = f.resolve(true);
    if (interleave && !s.lookahead) {
        throw UsageError("--interleave needs --lookahead N (or a scenario lookahead)");
    }
    auto world = std::make_shared<World>(load_map_file(s.map));
    const CostTable costs(s.costs);
    std::optional<EGraph> eg;
    if (!s.demos.empty()) {
        eg = load_demonstrations(*world, costs, s.demos);
    }
    RunRecord rec{ s, *world, {}, std::nullopt, timing };
    if (interleave) {
        auto r = interleave_run(world, costs, s.start, s.goal, s.params, s.lookahead, eg ? &*eg : nullptr);
        rec.result = std::move(r.result);
        rec.trace = std::move(r.trace);
    } else {
        rec.result = plan_adaptive(world, costs, s.start, s.goal, s.params, eg ? &*eg : nullptr);
    }
    if (rec.result.path) {
        if (auto v = validate_path(*world, costs, *rec.result.path,
                                   { s.start, s.goal, s.params.egraph.snap_cost_per_field })) {
            std::cerr << "internal error: produced path is invalid: " << v->message << "\n";
            return USAGE;
        }
    }
    emit(out, result_to_json(rec).dump(2) + "\n");
    if (!render.empty()) {
        write_text_file(render, render_svg(*world, rec.result.path, rec.result.regions));
    }
    std::cerr << to_string(rec.result.outcome);
    if (rec.result.path) {
        std::cerr << " cost " << rec.result.path->cost();
    }
    std::cerr << " iterations " << rec.result.iterations.size() << "\n";
    return exit_for(rec.result.outcome);
}

int cmd_bench(const QueryFlags& f, const std::vector<std::string>& goals, int stride, int jobs,
              const std::string& clock, const std::string& out)
{
    Scenario s = f.resolve(false);
    auto world = std::make_shared<World>(load_map_file(s.map));
    BenchOptions o;
    o.stride = stride;
    o.jobs = jobs;
    o.costs = CostTable(s.costs);
    o.params = s.params;
    if (clock == "wall") {
        o.clock = BenchClock::WALL;
    } else if (clock == "sim") {
        o.clock = BenchClock::SIM;
    } else {
        throw UsageError("--clock must be wall or sim");
    }
    for (const auto& g : goals) {
        o.goals.push_back(parse_cell(g));
    }
    if (o.goals.empty()) {
        if (f.scenario.empty()) {
            throw UsageError("bench needs at least one --goal");
        }
        o.goals.push_back(s.goal.cell);
    }
    std::optional<EGraph> eg;
    if (!s.demos.empty()) {
        eg = load_demonstrations(*world, o.costs, s.demos);
        o.egraph = &*eg;
    }
    const auto qs = run_bench_queries(world, o);
    const auto rows = summarize_bench(qs, o.goals);
    emit(out, bench_csv(rows));
    for (const auto& r : rows) {
        std::cerr << "goal " << r.goal.x << ":" << r.goal.y << " queries " << r.queries
                  << " max_query_seconds " << r.max_query_seconds << "\n";
    }
    return OK;
}

int cmd_oracle(const QueryFlags& f, const std::string& out)
{
    Scenario s = f.resolve(true);
    const World w = load_map_file(s.map);
    if (w.cell_count() > kOracleMaxCells) {
        std::cerr << "error: oracle refuses maps larger than " << kOracleMaxCells << " cells ("
                  << w.width() << "x" << w.height() << ")\n";
        return USAGE;
    }
    const auto r = oracle_hd(w, CostTable(s.costs), s.start, s.goal);
    const std::string text = r.cost ? "optimal_cost " + std::to_string(*r.cost) + "\n" : "NO_PATH\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
    return r.cost ? OK : NO_PATH;
}

int cmd_validate(const std::string& result)
{
    const StoredResult r = parse_result(read_json_file(result));
    if (!r.path) {
        std::cout << "no path (outcome " << r.outcome << ")\n";
        return r.outcome == "EXECUTABLE" ? INVALID : OK;
    }
    if (auto v = validate_path(r.world, r.costs, *r.path, { r.start, r.goal, r.snap_cost_per_field })) {
        std::cout << "invalid: " << v->message << "\n";
        return INVALID;
    }
    std::cout << "ok cost " << r.path->cost() << " edges " << r.path->edges.size() << "\n";
    return OK;
}

int cmd_render(const std::string& result, const std::string& map, const std::string& out)
{
    if (!result.empty()) {
        const StoredResult r = parse_result(read_json_file(result));
        emit(out, render_svg(r.world, r.path, r.regions));
    } else if (!map.empty()) {
        emit(out, render_svg(load_map_file(map), std::nullopt, {}));
    } else {
        throw UsageError("render needs --result or --map");
    }
    return OK;
}

int cmd_genmap(std::uint64_t seed, int width, int height, const TerrainDensities& d,
               const std::vector<std::string>& keep, const std::string& out)
{
    std::vector<Cell> cells;
    for (const auto& k : keep) {
        cells.push_back(parse_cell(k));
    }
    emit(out, gen_random_map(seed, width, height, d, cells).to_text());
    return OK;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "Adaptive-dimensionality planner" };
    app.require_subcommand(1);

    QueryFlags plan_flags, bench_flags, oracle_flags;
    std::string out, render, result, map;
    bool interleave = false, timing = false;

    auto* plan = app.add_subcommand("plan", "plan one query and write a result file");
    plan_flags.add(plan, true);
    plan->add_option("--out", out, "result file (default stdout)");
    plan->add_option("--render", render, "also write an SVG");
    plan->add_flag("--interleave", interleave, "interleave tracking and execution");
    plan->add_option("--lookahead", plan_flags.lookahead, "tracking expansions per burst");
    plan->add_flag("--timing", timing, "include wall-clock fields in the result");

    std::vector<std::string> goals;
    int stride = 4, jobs = 1;
    std::string clock = "wall";
    auto* bench = app.add_subcommand("bench", "batch of starts x headings per goal, CSV out");
    bench_flags.add(bench, false);
    bench->add_option("--goal", goals, "goal cell x,y (repeatable)");
    bench->add_option("--stride", stride, "start grid stride");
    bench->add_option("--jobs", jobs, "worker threads");
    bench->add_option("--clock", clock, "wall (seconds) or sim (expansions)");
    bench->add_option("--out", out, "CSV file (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "brute-force optimal cost over the full state space");
    oracle_flags.add(oracle, true);
    oracle->add_option("--out", out, "certificate file (default stdout)");

    auto* validate = app.add_subcommand("validate", "re-check the path stored in a result file");
    validate->add_option("--result", result, "result file")->required();

    auto* rend = app.add_subcommand("render", "SVG of a result file or a bare map");
    rend->add_option("--result", result);
    rend->add_option("--map", map);
    rend->add_option("--out", out);

    std::uint64_t seed = 0;
    int width = 8, height = 8;
    TerrainDensities dens;
    std::vector<std::string> keep;
    auto* gen = app.add_subcommand("genmap", "seeded random map");
    gen->add_option("--seed", seed);
    gen->add_option("--width", width);
    gen->add_option("--height", height);
    gen->add_option("--wall", dens.wall);
    gen->add_option("--low", dens.low);
    gen->add_option("--rubble", dens.rubble);
    gen->add_option("--keep-free", keep, "cell x,y forced FREE (repeatable)");
    gen->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? OK : USAGE;
    }

    try {
        if (*plan) {
            return cmd_plan(plan_flags, interleave, out, render, timing);
        }
        if (*bench) {
            return cmd_bench(bench_flags, goals, stride, jobs, clock, out);
        }
        if (*oracle) {
            return cmd_oracle(oracle_flags, out);
        }
        if (*validate) {
            return cmd_validate(result);
        }
        if (*rend) {
            return cmd_render(result, map, out);
        }
        if (*gen) {
            return cmd_genmap(seed, width, height, dens, keep, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return USAGE;
    }
    return USAGE;
}

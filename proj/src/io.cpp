#include <adim/io.hpp>

#include <fstream>
#include <sstream>

namespace adim {

namespace fs = std::filesystem;

namespace {

Weight weight_from(const Json& j)
{
    if (j.is_string()) {
        return parse_weight(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Weight(j.get<std::int64_t>());
    }
    if (j.is_number()) {
        std::ostringstream os;
        os << j.get<double>();
        return parse_weight(os.str());
    }
    throw FormatError("weight must be a number or a \"p/q\" string");
}

template <class T>
void read_opt(const Json& j, const char* key, T& out)
{
    if (j.contains(key) && !j.at(key).is_null()) {
        out = j.at(key).get<T>();
    }
}

void read_weight(const Json& j, const char* key, Weight& out)
{
    if (j.contains(key) && !j.at(key).is_null()) {
        out = weight_from(j.at(key));
    }
}

std::string resolve(const fs::path& base, const std::string& p)
{
    if (p.empty() || fs::path(p).is_absolute() || base.empty()) {
        return p;
    }
    return (base / p).lexically_normal().string();
}

Json costs_to_json(const CostTable::Values& v)
{
    return Json{ { "walk_step", v.walk_step },         { "rotate", v.rotate },
                 { "crawl_step", v.crawl_step },       { "stance_change", v.stance_change },
                 { "rep_switch", v.rep_switch },       { "rubble_substep", v.rubble_substep },
                 { "weight_shift", v.weight_shift } };
}

CostTable::Values costs_from_json(const Json& j)
{
    CostTable::Values v;
    read_opt(j, "walk_step", v.walk_step);
    read_opt(j, "rotate", v.rotate);
    read_opt(j, "crawl_step", v.crawl_step);
    read_opt(j, "stance_change", v.stance_change);
    read_opt(j, "rep_switch", v.rep_switch);
    read_opt(j, "rubble_substep", v.rubble_substep);
    read_opt(j, "weight_shift", v.weight_shift);
    return v;
}

Json region_to_json(const HDRegion& r)
{
    return Json{ { "x", r.center.x }, { "y", r.center.y }, { "radius", r.radius } };
}

Json world_to_json(const World& w)
{
    Json rows = Json::array();
    for (int y = 0; y < w.height(); ++y) {
        std::string row;
        for (int x = 0; x < w.width(); ++x) {
            row.push_back(char(w.at(x, y)));
        }
        rows.push_back(row);
    }
    return Json{ { "width", w.width() }, { "height", w.height() }, { "rows", rows } };
}

World world_from_json(const Json& j)
{
    std::string text = std::to_string(j.at("width").get<int>()) + " " +
                       std::to_string(j.at("height").get<int>()) + "\n";
    for (const auto& r : j.at("rows")) {
        text += r.get<std::string>() + "\n";
    }
    return load_map(text);
}

} // namespace

Json to_json(const HDState& s)
{
    return Json{ { "x", s.x },
                 { "y", s.y },
                 { "theta", s.theta },
                 { "stance", std::string(to_string(s.stance)) },
                 { "phase", s.phase } };
}

Json to_json(const AnyState& s)
{
    if (const auto* h = std::get_if<HDState>(&s)) {
        Json j{ { "rep", "HD" } };
        j.update(to_json(*h));
        return j;
    }
    const auto& l = std::get<LDState>(s);
    Json j{ { "rep", std::string(to_string(l.rep)) }, { "x", l.x }, { "y", l.y } };
    if (l.theta) {
        j["theta"] = *l.theta;
    }
    return j;
}

HDState hd_state_from_json(const Json& j)
{
    HDState s;
    s.x = j.at("x").get<int>();
    s.y = j.at("y").get<int>();
    s.theta = j.value("theta", 0);
    s.stance = parse_stance(j.value("stance", std::string("STAND")));
    s.phase = j.value("phase", 0);
    if (s.theta < 0 || s.theta >= kHeadings || s.phase < 0 || s.phase >= kPhases) {
        throw FormatError("state " + to_string(s) + ": theta or phase out of range");
    }
    return s;
}

Json to_json(const Path& p)
{
    Json edges = Json::array();
    for (const auto& e : p.edges) {
        edges.push_back(Json{ { "to", to_json(e.to) },
                              { "cost", e.cost },
                              { "kind", std::string(to_string(e.kind)) },
                              { "controller", std::string(to_string(e.controller)) } });
    }
    return Json{ { "start", to_json(p.start) }, { "edges", edges } };
}

Path path_from_json(const Json& j)
{
    Path p;
    p.start = hd_state_from_json(j.at("start"));
    for (const auto& e : j.at("edges")) {
        p.edges.push_back({ hd_state_from_json(e.at("to")), e.at("cost").get<Cost>(),
                            parse_kind(e.at("kind").get<std::string>()),
                            parse_controller(e.value("controller", std::string("NONE"))) });
    }
    return p;
}

Scenario parse_scenario(const Json& j, const fs::path& base_dir)
{
    try {
        Scenario s;
        s.map = resolve(base_dir, j.at("map").get<std::string>());
        s.start = hd_state_from_json(j.at("start"));
        s.goal.cell = { j.at("goal").at("x").get<int>(), j.at("goal").at("y").get<int>() };
        if (j.contains("costs")) {
            s.costs = costs_from_json(j.at("costs"));
        }
        if (j.contains("params")) {
            const Json& p = j.at("params");
            auto& a = s.params;
            read_weight(p, "w1_plan", a.w1_plan);
            read_weight(p, "w2_plan", a.w2_plan);
            read_weight(p, "w1_track", a.w1_track);
            read_weight(p, "w2_track", a.w2_track);
            read_opt(p, "tunnel_width", a.tunnel_width);
            read_opt(p, "region_radius", a.region_radius);
            read_opt(p, "max_iterations", a.max_iterations);
            read_opt(p, "budget_plan", a.budget_plan);
            read_opt(p, "budget_track", a.budget_track);
            read_opt(p, "projection_cost", a.graph.projection_cost);
            read_weight(p, "eps_e", a.egraph.eps_e);
            read_opt(p, "snap_cost_per_field", a.egraph.snap_cost_per_field);
            read_opt(p, "seed", s.seed);
            if (p.contains("lookahead") && !p.at("lookahead").is_null()) {
                s.lookahead = p.at("lookahead").get<std::uint64_t>();
            }
        }
        if (j.contains("demos")) {
            for (const auto& d : j.at("demos")) {
                s.demos.push_back(resolve(base_dir, d.get<std::string>()));
            }
        }
        for (const auto& f : s.demos) {
            if (!fs::exists(f)) {
                throw FormatError("scenario: demonstration file '" + f + "' does not exist");
            }
        }
        if (!fs::exists(s.map)) {
            throw FormatError("scenario: map file '" + s.map + "' does not exist");
        }
        const auto& a = s.params;
        if (a.w1_plan < 1 || a.w2_plan < 1 || a.w1_track < 1 || a.w2_track < 1 || a.egraph.eps_e < 1) {
            throw FormatError("weights must be >= 1");
        }
        if (a.tunnel_width < 0 || a.region_radius < 0 || a.max_iterations < 1 || a.budget_plan == 0 ||
            a.budget_track == 0 || (s.lookahead && *s.lookahead == 0)) {
            throw FormatError("parameter out of range");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path)
{
    return parse_scenario(read_json_file(path), fs::path(path).parent_path());
}

Json scenario_to_json(const Scenario& s)
{
    const auto& a = s.params;
    Json demos = Json::array();
    for (const auto& d : s.demos) {
        demos.push_back(d);
    }
    return Json{
        { "map", s.map },
        { "start", to_json(s.start) },
        { "goal", Json{ { "x", s.goal.cell.x }, { "y", s.goal.cell.y } } },
        { "costs", costs_to_json(s.costs) },
        { "params",
          Json{ { "w1_plan", to_string(a.w1_plan) },
                { "w2_plan", to_string(a.w2_plan) },
                { "w1_track", to_string(a.w1_track) },
                { "w2_track", to_string(a.w2_track) },
                { "tunnel_width", a.tunnel_width },
                { "region_radius", a.region_radius },
                { "max_iterations", a.max_iterations },
                { "budget_plan", a.budget_plan },
                { "budget_track", a.budget_track },
                { "projection_cost", a.graph.projection_cost },
                { "eps_e", to_string(a.egraph.eps_e) },
                { "snap_cost_per_field", a.egraph.snap_cost_per_field },
                { "lookahead", s.lookahead ? Json(*s.lookahead) : Json(nullptr) },
                { "seed", s.seed } } },
        { "demos", demos },
    };
}

Json result_to_json(const RunRecord& r)
{
    const AdaptiveResult& res = r.result;
    Json j;
    j["format"] = kResultFormat;
    j["tool_version"] = kToolVersion;
    j["outcome"] = std::string(to_string(res.outcome));
    j["cost"] = res.path ? Json(res.path->cost()) : Json(nullptr);
    j["config"] = scenario_to_json(r.scenario);
    j["world"] = world_to_json(r.world);
    j["path"] = res.path ? to_json(*res.path) : Json(nullptr);

    Json segs = Json::array();
    if (res.path) {
        std::size_t first = 0;
        for (const auto& s : split_segments(*res.path)) {
            segs.push_back(Json{ { "controller", std::string(to_string(s.controller)) },
                                 { "first_edge", first },
                                 { "edge_count", s.path.edges.size() },
                                 { "cost", s.path.cost() } });
            first += s.path.edges.size();
        }
    }
    j["segments"] = segs;

    Json regions = Json::array();
    for (const auto& g : res.regions) {
        regions.push_back(region_to_json(g));
    }
    j["regions"] = regions;

    Json iters = Json::array();
    for (const auto& it : res.iterations) {
        Json pi = Json::array();
        for (const auto& s : it.pi_ad.states()) {
            pi.push_back(to_json(s));
        }
        Json ji{ { "index", it.index },
                 { "region_count", it.regions.size() },
                 { "plan_outcome", std::string(to_string(it.plan_outcome)) },
                 { "plan_cost", it.plan_outcome == SearchOutcome::PATH ? Json(it.plan_cost) : Json(nullptr) },
                 { "plan_expansions", it.plan_stats.expansions },
                 { "pi_ad", it.plan_outcome == SearchOutcome::PATH ? pi : Json(nullptr) },
                 { "tunnel_width", it.tunnel_width },
                 { "tunnel_cells", it.tunnel_cells },
                 { "track_outcome",
                   it.track_outcome ? Json(std::string(to_string(*it.track_outcome))) : Json(nullptr) },
                 { "track_expansions", it.track_stats.expansions },
                 { "region_added", it.region_added ? region_to_json(*it.region_added) : Json(nullptr) } };
        if (r.include_timing) {
            ji["plan_seconds"] = it.plan_stats.wall_seconds;
            ji["track_seconds"] = it.track_stats.wall_seconds;
        }
        iters.push_back(ji);
    }
    j["iterations"] = iters;

    Json stats{ { "iterations", res.iterations.size() },
                { "plan_expansions", res.plan_expansions() },
                { "track_expansions", res.track_expansions() } };
    if (r.include_timing) {
        stats["plan_seconds"] = res.plan_seconds();
        stats["track_seconds"] = res.track_seconds();
    }
    j["stats"] = stats;

    if (r.trace) {
        Json ev = Json::array();
        for (const auto& e : r.trace->sorted_events()) {
            ev.push_back(Json{ { "tick", e.tick },
                               { "kind", std::string(to_string(e.kind)) },
                               { "segment", e.segment },
                               { "waypoint", e.waypoint } });
        }
        j["exec_trace"] = Json{ { "idle_ticks", r.trace->idle_ticks },
                                { "finish_tick", r.trace->now },
                                { "events", ev } };
    }
    return j;
}

StoredResult parse_result(const Json& j)
{
    try {
        if (j.value("format", std::string()) != kResultFormat) {
            throw FormatError("not an adim result file (format field missing or unknown)");
        }
        StoredResult r;
        r.outcome = j.at("outcome").get<std::string>();
        r.world = world_from_json(j.at("world"));
        const Json& cfg = j.at("config");
        r.costs = CostTable(costs_from_json(cfg.value("costs", Json::object())));
        r.start = hd_state_from_json(cfg.at("start"));
        r.goal.cell = { cfg.at("goal").at("x").get<int>(), cfg.at("goal").at("y").get<int>() };
        if (cfg.contains("params")) {
            read_opt(cfg.at("params"), "snap_cost_per_field", r.snap_cost_per_field);
        }
        if (j.contains("path") && !j.at("path").is_null()) {
            r.path = path_from_json(j.at("path"));
        }
        for (const auto& g : j.value("regions", Json::array())) {
            r.regions.push_back({ { g.at("x").get<int>(), g.at("y").get<int>() }, g.at("radius").get<int>() });
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("result: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

} // namespace adim

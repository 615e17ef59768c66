#include "support.hpp"

#include <adim/adaptive_planner.hpp>
#include <adim/mrmha.hpp>
#include <adim/oracle.hpp>

#include <doctest.h>

#include <map>
#include <set>

using namespace adim;
using testing::from_field;
using testing::uniform_field;

namespace {

using HDSearch = MultiRepSearch<HDState>;
using Event = TraceEvent<HDState>;

const HDState kStart{ 1, 1, 0, Stance::STAND, 0 };
const GoalSpec kGoal{ { 5, 5 } };

std::shared_ptr<const World> map7(std::uint64_t seed) { return testing::random_map(seed, 7, 7, { { 1, 1 }, { 5, 5 } }); }

/// Textbook A* without reopening, tie-breaking on (f, larger g, smaller state).
std::vector<HDState> reference_astar(const World& w, const CostTable& c, const HDState& start,
                                     const GoalSpec& goal, const std::function<Cost(const HDState&)>& h)
{
    std::map<HDState, Cost> g{ { start, 0 } };
    std::set<HDState> closed;
    std::set<std::tuple<Cost, Cost, HDState>> open{ { h(start), 0, start } };
    std::optional<Cost> best_goal;
    std::vector<HDState> order;
    std::vector<PathEdge<HDState>> edges;
    if (start.cell() == goal.cell) {
        return order;
    }
    while (!open.empty()) {
        const auto [f, neg_g, s] = *open.begin();
        if (best_goal && *best_goal <= f) {
            break;
        }
        open.erase(open.begin());
        closed.insert(s);
        order.push_back(s);
        const Cost gs = -neg_g;
        if (s.cell() == goal.cell && (!best_goal || gs < *best_goal)) {
            best_goal = gs;
        }
        edges.clear();
        hd_oracle_successors(w, c, s, edges);
        for (const auto& e : edges) {
            auto it = g.find(e.to);
            const Cost ng = gs + e.cost;
            if (it != g.end() && it->second <= ng) {
                continue;
            }
            if (it != g.end() && !closed.count(e.to)) {
                open.erase({ it->second + h(e.to), -it->second, e.to });
            }
            g[e.to] = ng;
            if (!closed.count(e.to)) {
                open.insert({ ng + h(e.to), -ng, e.to });
            }
        }
    }
    return order;
}

std::vector<std::function<Cost(const HDState&)>> default_heuristics(const World& w, const CostTable& c)
{
    return {
        from_field<HDState>(uniform_field(w, kGoal.cell, c.min_move())),
        from_field<HDState>(uniform_field(w, kGoal.cell, c.walk_step() + 1)),
        [](const HDState&) { return Cost(0); },
    };
}

HeuristicLists two_inadm() { return init_heuristic_lists({ RepId::HD }, { { true }, { true } }); }

} // namespace

TEST_CASE("weights and keys are exact")
{
    CHECK(key(10, 4, Weight(2)) == Weight(18));
    CHECK(key(7, 0, Weight(1)) == Weight(7));
    CHECK(key(0, 7, Weight(3, 2)) == Weight(21, 2));
    CHECK(parse_weight("3/2") == Weight(3, 2));
    CHECK(parse_weight("1.25") == Weight(5, 4));
    CHECK(parse_weight("2") == Weight(2));
    CHECK(to_string(Weight(21, 2)) == "21/2");
    CHECK(to_string(Weight(4)) == "4");
    CHECK_THROWS(parse_weight("x"));
    CHECK_THROWS(parse_weight("1/0"));
}

TEST_CASE("heuristic lists")
{
    auto one = init_heuristic_lists({ RepId::HD }, { { true }, { true } });
    CHECK(one[RepId::HD].inadm == std::vector<int>{ 1, 2 });
    CHECK(one.count == 2);

    auto split = init_heuristic_lists({ RepId::WALK, RepId::CRAWL }, { { true, false }, { false, true } });
    CHECK(split[RepId::WALK].inadm == std::vector<int>{ 1 });
    CHECK(split[RepId::CRAWL].inadm == std::vector<int>{ 2 });
    CHECK(split.enabled(RepId::WALK, 0));
    CHECK_FALSE(split.enabled(RepId::CRAWL, 1));
    for (const auto& e : split.per_rep) {
        CHECK(e.anchor == 0);
    }

    std::vector<std::string> warnings;
    auto none = init_heuristic_lists({ RepId::WALK, RepId::CRAWL }, { { false, false } }, &warnings);
    CHECK(none[RepId::WALK].inadm.empty());
    CHECK(none[RepId::CRAWL].inadm.empty());
    CHECK(warnings.size() == 1);
}

TEST_CASE("parameter contracts")
{
    const auto w = map7(1);
    const CostTable c;
    auto p = testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c));
    SearchParams bad;
    bad.w1 = Weight(1, 2);
    CHECK_THROWS_AS(HDSearch(p, two_inadm(), bad), ContractViolation);
    bad = {};
    bad.expansion_budget = 0;
    CHECK_THROWS_AS(HDSearch(p, two_inadm(), bad), ContractViolation);
    CHECK_THROWS_AS(HDSearch(p, init_heuristic_lists({ RepId::HD }, { { true } }), {}), ContractViolation);
}

TEST_CASE("start at the goal")
{
    const auto w = map7(1);
    const CostTable c;
    HDSearch s(testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c)), two_inadm(), {});
    const auto r = s.run({ 5, 5, 3, Stance::STAND, 2 });
    CHECK(r.outcome == SearchOutcome::PATH);
    CHECK(r.cost == 0);
    CHECK(r.path.edges.empty());
}

TEST_CASE("w1 = w2 = 1 is optimal and w1 = w2 = 2 stays within 4x on 50 maps")
{
    const CostTable c;
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto w = map7(seed);
        const auto oracle = oracle_hd(*w, c, kStart, kGoal);
        for (int weight : { 1, 2 }) {
            SearchParams sp;
            sp.w1 = sp.w2 = Weight(weight);
            sp.debug_checks = true;
            auto hs = default_heuristics(*w, c);
            if (weight == 1) {
                hs.resize(2);
                hs[1] = [](const HDState&) { return Cost(0); };
            }
            const auto lists = weight == 1 ? init_heuristic_lists({ RepId::HD }, { { true } }) : two_inadm();
            HDSearch s(testing::hd_problem(*w, c, kGoal, hs), lists, sp);
            const auto r = s.run(kStart);
            if (!oracle.cost) {
                CHECK(r.outcome == SearchOutcome::EXHAUSTED);
                continue;
            }
            REQUIRE(r.outcome == SearchOutcome::PATH);
            CHECK(r.cost == r.path.cost());
            if (weight == 1) {
                CHECK(r.cost == *oracle.cost);
                ++solved;
            } else {
                CHECK(r.cost <= 4 * *oracle.cost);
            }
        }
    }
    CHECK(solved >= 25);
}

TEST_CASE("rational weights keep the bound")
{
    const CostTable c;
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        const auto w = map7(seed);
        const auto oracle = oracle_hd(*w, c, kStart, kGoal);
        SearchParams sp;
        sp.w1 = Weight(3, 2);
        sp.w2 = Weight(5, 4);
        HDSearch s(testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c)), two_inadm(), sp);
        const auto r = s.run(kStart);
        if (oracle.cost) {
            REQUIRE(r.outcome == SearchOutcome::PATH);
            CHECK(Weight(r.cost) <= sp.w1 * sp.w2 * *oracle.cost);
        }
    }
}

TEST_CASE("anchor-only search with w1 = 1 expands exactly like A*")
{
    const CostTable c;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto w = map7(seed);
        const auto h0 = from_field<HDState>(uniform_field(*w, kGoal.cell, c.min_move()));
        HDSearch s(testing::hd_problem(*w, c, kGoal, { h0 }), init_heuristic_lists({ RepId::HD }, {}), {});
        std::vector<HDState> order;
        s.set_trace([&](const Event& e) {
            if (e.kind == Event::Kind::EXPAND) {
                order.push_back(e.state);
            }
        });
        s.run(kStart);
        CHECK(order == reference_astar(*w, c, kStart, kGoal, h0));
    }
}

TEST_CASE("queue invariants hold along the trace")
{
    const CostTable c;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto w = map7(seed);
        for (int weight : { 1, 2, 3 }) {
            SearchParams sp;
            sp.w1 = Weight(weight);
            sp.w2 = Weight(weight);
            HDSearch s(testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c)), two_inadm(), sp);
            std::map<HDState, int> anchor, inadm;
            std::set<HDState> anchor_closed;
            std::optional<Weight> last_anchor;
            bool ok = true;
            s.set_trace([&](const Event& e) {
                if (e.kind == Event::Kind::INSERT) {
                    // never re-queued once expanded from the anchor
                    ok = ok && !anchor_closed.count(e.state);
                    return;
                }
                if (e.queue == 0) {
                    ++anchor[e.state];
                    anchor_closed.insert(e.state);
                    if (weight == 1) {
                        ok = ok && (!last_anchor || *last_anchor <= e.key);
                        last_anchor = e.key;
                    }
                } else {
                    ++inadm[e.state];
                    ok = ok && e.anchor_minkey && e.key <= sp.w2 * *e.anchor_minkey;
                }
            });
            s.run(kStart);
            CHECK(ok);
            for (const auto& [st, n] : anchor) {
                CHECK(n <= 1);
            }
            for (const auto& [st, n] : inadm) {
                CHECK(n <= 1);
            }
        }
    }
}

TEST_CASE("deterministic results and stats")
{
    const CostTable c;
    const auto w = map7(3);
    SearchParams sp;
    sp.w1 = sp.w2 = Weight(2);
    HDSearch a(testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c)), two_inadm(), sp);
    HDSearch b(testing::hd_problem(*w, c, kGoal, default_heuristics(*w, c)), two_inadm(), sp);
    const auto ra = a.run(kStart);
    const auto rb = b.run(kStart);
    CHECK(ra == rb);
    CHECK(ra == a.run(kStart));
}

TEST_CASE("exhausted and budget outcomes")
{
    const CostTable c;
    const auto walled = testing::crafted("walled");
    const GoalSpec goal{ { 5, 5 } };
    const auto h0 = from_field<HDState>(uniform_field(*walled, goal.cell, c.min_move()));
    HDSearch s(testing::hd_problem(*walled, c, goal, { h0, h0 }),
               init_heuristic_lists({ RepId::HD }, { { true } }), {});
    CHECK(s.run(kStart).outcome == SearchOutcome::EXHAUSTED);

    const auto w = testing::open_map(9, 9);
    const GoalSpec far{ { 8, 8 } };
    const auto hf = from_field<HDState>(uniform_field(*w, far.cell, c.min_move()));
    SearchParams sp;
    sp.expansion_budget = 5;
    HDSearch b(testing::hd_problem(*w, c, far, { hf }), init_heuristic_lists({ RepId::HD }, {}), sp);
    const auto r = b.run({ 0, 0, 0, Stance::STAND, 0 });
    CHECK(r.outcome == SearchOutcome::BUDGET);
    CHECK(r.stats.expansions == 5);
    REQUIRE(r.best_frontier);
    const auto fr = b.frontier();
    REQUIRE_FALSE(fr.empty());
    CHECK(fr.front().state == *r.best_frontier);
    for (const auto& e : fr) {
        CHECK(fr.front().anchor_key <= e.anchor_key);
    }
}

TEST_CASE("an overestimating anchor is reported in debug mode")
{
    const CostTable c;
    const auto w = testing::open_map(5, 1);
    const GoalSpec goal{ { 4, 0 } };
    auto h0 = [goal](const HDState& s) { return s.cell() == goal.cell ? Cost(0) : Cost(1000); };
    SearchParams sp;
    sp.debug_checks = true;
    HDSearch s(testing::hd_problem(*w, c, goal, { h0 }), init_heuristic_lists({ RepId::HD }, {}), sp);
    CHECK_THROWS_AS(s.run({ 0, 0, 0, Stance::STAND, 0 }), std::logic_error);
}

TEST_CASE("representation-filtered insertion in the adaptive graph")
{
    const CostTable c;
    const auto w = testing::crafted("low_tunnel");
    const GoalSpec goal{ { 14, 2 } };
    AdaptivePlanParams params;
    AdaptivePlanner planner(w, c, goal, params);
    planner.add_region({ { 10, 2 }, 1 });
    const auto lists = plan_heuristic_lists();
    std::size_t inserts = 0;
    bool ok = true;
    std::set<std::pair<int, AnyState>> expanded;
    const auto r = planner.plan({ 1, 2, 0, Stance::STAND, 0 }, [&](const TraceEvent<AnyState>& e) {
        ok = ok && e.rep == rep_of(e.state);
        ok = ok && lists.enabled(e.rep, e.queue);
        if (e.kind == TraceEvent<AnyState>::Kind::INSERT) {
            ++inserts;
        } else {
            const int slot = e.queue == 0 ? 0 : 1;
            ok = ok && expanded.insert({ slot, e.state }).second;
        }
    });
    CHECK(r.outcome == SearchOutcome::PATH);
    CHECK(inserts > 0);
    CHECK(ok);
    // a crawl state never lands in the walking queue and vice versa
    CHECK_FALSE(lists.enabled(RepId::CRAWL, 1));
    CHECK_FALSE(lists.enabled(RepId::WALK, 2));
}

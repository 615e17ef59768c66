#include "support.hpp"

#include <adim/adaptive_graph.hpp>
#include <adim/domain.hpp>
#include <adim/mapgen.hpp>
#include <adim/projection.hpp>

#include <doctest.h>

#include <map>
#include <set>

using namespace adim;

namespace {

// ---------------------------------------------------------------------------
// Rule-table reference for ad_successors. Instead of pushing successors out
// of the domain functions it pulls: every state in the 3x3 neighbourhood is a
// candidate and a per-rule predicate decides whether (and at what cost) it is
// reachable in one transition.

struct RefEdge
{
    Cost cost;
    Controller controller;
};
using RefKey = std::pair<TransitionKind, AnyState>;
using RefSet = std::map<RefKey, RefEdge>;

bool ref_walkable(Terrain t) { return t == Terrain::FREE || t == Terrain::RUBBLE; }
bool ref_crawlable(Terrain t) { return t == Terrain::FREE || t == Terrain::LOW; }

const Cell kRefDelta[8] = { { 1, 0 }, { 1, 1 }, { 0, 1 }, { -1, 1 }, { -1, 0 }, { -1, -1 }, { 0, -1 }, { 1, -1 } };

bool ref_valid_hd(const World& w, const HDState& s)
{
    const Terrain t = w.at(s.x, s.y);
    return w.in_bounds(s.x, s.y) && (s.stance == Stance::STAND ? ref_walkable(t) : ref_crawlable(t));
}

/// Cost of the full-body primitive a -> b, nullopt if there is none.
std::optional<Cost> ref_hd_cost(const World& w, const CostTable& c, const HDState& a, const HDState& b)
{
    if (!ref_valid_hd(w, b)) {
        return std::nullopt;
    }
    const int next = (a.phase + 1) % 4;
    const int dth = ((b.theta - a.theta) % 8 + 8) % 8;
    if (a.cell() == b.cell()) {
        if (a.stance == b.stance) {
            if (b.phase != next) {
                return std::nullopt;
            }
            if (dth == 0) {
                return c.weight_shift();
            }
            if (dth == 1 || dth == 7) {
                return c.rotate();
            }
            return std::nullopt;
        }
        if (w.at(a.x, a.y) == Terrain::FREE && dth == 0 && b.phase == 0) {
            return c.stance_change();
        }
        return std::nullopt;
    }
    const Cell d = kRefDelta[a.theta];
    if (b.x != a.x + d.x || b.y != a.y + d.y || dth != 0 || b.stance != a.stance) {
        return std::nullopt;
    }
    const Terrain from = w.at(a.x, a.y);
    const Terrain to = w.at(b.x, b.y);
    if (from == Terrain::RUBBLE || to == Terrain::RUBBLE) {
        if (a.stance == Stance::STAND && a.phase == 3 && b.phase == 0) {
            return c.rubble_substep();
        }
        return std::nullopt;
    }
    if (b.phase != next) {
        return std::nullopt;
    }
    if (a.stance == Stance::STAND && to == Terrain::FREE) {
        return c.walk_step();
    }
    if (a.stance == Stance::CROUCH && a.theta % 2 == 0) {
        return c.crawl_step();
    }
    return std::nullopt;
}

/// LD primitive a -> b within one representation.
std::optional<RefEdge> ref_ld(const World& w, const CostTable& c, const LDState& a, const LDState& b)
{
    if (a.rep != b.rep || w.at(b.x, b.y) == Terrain::WALL || !w.in_bounds(b.x, b.y)) {
        return std::nullopt;
    }
    const Terrain from = w.at(a.x, a.y);
    const Terrain to = w.at(b.x, b.y);
    if (a.rep == RepId::WALK) {
        const int dth = ((*b.theta - *a.theta) % 8 + 8) % 8;
        const Controller on_even = from == Terrain::FREE ? Controller::WALK_CTRL : Controller::NONE;
        if (a.cell() == b.cell()) {
            if (dth == 1 || dth == 7) {
                return RefEdge{ c.rotate(), on_even };
            }
            return std::nullopt;
        }
        const Cell d = kRefDelta[*a.theta];
        if (dth == 0 && b.x == a.x + d.x && b.y == a.y + d.y && ref_walkable(from) && ref_walkable(to)) {
            const bool even = from == Terrain::FREE && to == Terrain::FREE;
            return RefEdge{ c.walk_step(), even ? Controller::WALK_CTRL : Controller::NONE };
        }
        return std::nullopt;
    }
    const int manhattan = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    if (manhattan == 1 && ref_crawlable(from) && ref_crawlable(to)) {
        return RefEdge{ c.crawl_step(), Controller::CRAWL_CTRL };
    }
    return std::nullopt;
}

std::vector<HDState> ref_preimage(const World& w, const LDState& l)
{
    std::vector<HDState> out;
    if (l.rep == RepId::WALK) {
        out.push_back({ l.x, l.y, *l.theta, Stance::STAND, 0 });
    } else {
        for (int th = 0; th < 8; ++th) {
            out.push_back({ l.x, l.y, th, Stance::CROUCH, 0 });
        }
    }
    std::erase_if(out, [&](const HDState& h) { return !ref_valid_hd(w, h); });
    return out;
}

LDState ref_project(RepId r, const HDState& h)
{
    return r == RepId::WALK ? LDState::walk(h.x, h.y, h.theta) : LDState::crawl(h.x, h.y);
}

void ref_put(RefSet& out, TransitionKind k, const AnyState& to, Cost cost, Controller ctrl)
{
    auto [it, fresh] = out.try_emplace({ k, to }, RefEdge{ cost, ctrl });
    if (!fresh && cost < it->second.cost) {
        it->second = { cost, ctrl };
    }
}

RefSet reference_successors(const World& w, const CostTable& c, const std::vector<HDRegion>& regions,
                            Cost pc, const AnyState& s)
{
    auto in_region = [&](int x, int y) {
        return std::any_of(regions.begin(), regions.end(), [&](const HDRegion& r) { return r.contains({ x, y }); });
    };
    std::vector<HDState> hd_cands;
    std::vector<LDState> ld_cands;
    const Cell at = cell_of(s);
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const int x = at.x + dx;
            const int y = at.y + dy;
            if (!w.in_bounds(x, y) || w.at(x, y) == Terrain::WALL) {
                continue;
            }
            ld_cands.push_back(LDState::crawl(x, y));
            for (int th = 0; th < 8; ++th) {
                ld_cands.push_back(LDState::walk(x, y, th));
                for (auto st : { Stance::STAND, Stance::CROUCH }) {
                    for (int ph = 0; ph < 4; ++ph) {
                        hd_cands.push_back({ x, y, th, st, ph });
                    }
                }
            }
        }
    }

    RefSet out;
    if (const auto* h = std::get_if<HDState>(&s)) {
        for (const auto& b : hd_cands) {
            const auto cost = ref_hd_cost(w, c, *h, b);
            if (!cost) {
                continue;
            }
            if (in_region(b.x, b.y)) {
                ref_put(out, TransitionKind::HD_PRIMITIVE, b, *cost, Controller::FULLBODY_CTRL);
            } else {
                ref_put(out, TransitionKind::PROJECTION, ref_project(RepId::WALK, b), *cost + pc, Controller::NONE);
                ref_put(out, TransitionKind::PROJECTION, ref_project(RepId::CRAWL, b), *cost + pc, Controller::NONE);
            }
        }
        return out;
    }
    const auto& l = std::get<LDState>(s);
    for (const auto& b : ld_cands) {
        const auto e = ref_ld(w, c, l, b);
        if (!e) {
            continue;
        }
        if (!in_region(b.x, b.y)) {
            ref_put(out, TransitionKind::LD_PRIMITIVE, b, e->cost, e->controller);
        } else {
            for (const auto& hb : ref_preimage(w, b)) {
                ref_put(out, TransitionKind::PROJECTION, hb, e->cost + pc, Controller::NONE);
            }
        }
    }
    for (const auto& src : ref_preimage(w, l)) {
        for (const auto& b : hd_cands) {
            if (!in_region(b.x, b.y)) {
                continue;
            }
            if (const auto cost = ref_hd_cost(w, c, src, b)) {
                ref_put(out, TransitionKind::HD_PRIMITIVE, b, *cost, Controller::FULLBODY_CTRL);
            }
        }
    }
    if (w.at(l.x, l.y) == Terrain::FREE) {
        if (l.rep == RepId::WALK) {
            ref_put(out, TransitionKind::REP_SWITCH, LDState::crawl(l.x, l.y), c.rep_switch(), Controller::CRAWL_CTRL);
        } else {
            for (int th = 0; th < 8; ++th) {
                ref_put(out, TransitionKind::REP_SWITCH, LDState::walk(l.x, l.y, th), c.rep_switch(),
                        Controller::WALK_CTRL);
            }
        }
    }
    return out;
}

RefSet as_ref(const std::vector<Transition>& ts)
{
    RefSet out;
    for (const auto& t : ts) {
        out[{ t.kind, t.to }] = { t.cost, t.controller };
    }
    return out;
}

bool same(const RefSet& a, const RefSet& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        if (it == b.end() || it->second.cost != v.cost || it->second.controller != v.controller) {
            return false;
        }
    }
    return true;
}

std::vector<AnyState> members(const AdaptiveGraph& g)
{
    std::vector<AnyState> out;
    const World& w = g.world();
    for (int x = 0; x < w.width(); ++x) {
        for (int y = 0; y < w.height(); ++y) {
            std::vector<AnyState> cand{ LDState::crawl(x, y) };
            for (int th = 0; th < 8; ++th) {
                cand.push_back(LDState::walk(x, y, th));
                for (auto st : { Stance::STAND, Stance::CROUCH }) {
                    for (int ph = 0; ph < 4; ++ph) {
                        cand.push_back(HDState{ x, y, th, st, ph });
                    }
                }
            }
            for (const auto& s : cand) {
                if (g.contains(s)) {
                    out.push_back(s);
                }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("projection and inverse projection")
{
    const World w = testing::rows({ ".~%" });
    CHECK(project(RepId::WALK, HDState{ 1, 2, 3, Stance::CROUCH, 2 }) == LDState::walk(1, 2, 3));
    CHECK(project(RepId::CRAWL, HDState{ 1, 2, 3, Stance::STAND, 2 }) == LDState::crawl(1, 2));
    CHECK_THROWS_AS(project(RepId::HD, HDState{}), ContractViolation);

    CHECK(inverse_project(w, RepId::WALK, LDState::walk(0, 0, 5)) ==
          std::vector<HDState>{ { 0, 0, 5, Stance::STAND, 0 } });
    CHECK(inverse_project(w, RepId::CRAWL, LDState::crawl(0, 0)).size() == 8);
    CHECK(inverse_project(w, RepId::WALK, LDState::walk(1, 0, 0)).empty());
    CHECK(inverse_project(w, RepId::CRAWL, LDState::crawl(2, 0)).empty());
    CHECK_THROWS_AS(inverse_project(w, RepId::CRAWL, LDState::walk(0, 0, 0)), ContractViolation);

    CHECK(cross_project(w, RepId::WALK, RepId::CRAWL, LDState::walk(0, 0, 3)) ==
          std::vector<LDState>{ LDState::crawl(0, 0) });
    CHECK(cross_project(w, RepId::CRAWL, RepId::WALK, LDState::crawl(0, 0)).size() == 8);
    CHECK(cross_project(w, RepId::CRAWL, RepId::WALK, LDState::crawl(1, 0)).size() == 8);
    CHECK_THROWS_AS(cross_project(w, RepId::WALK, RepId::WALK, LDState::walk(0, 0, 0)), ContractViolation);
}

TEST_CASE("projection round-trip and cross_project extensionality on a 6x6 map")
{
    const auto w = testing::mixed6();
    for (int x = 0; x < 6; ++x) {
        for (int y = 0; y < 6; ++y) {
            std::vector<LDState> ls{ LDState::crawl(x, y) };
            for (int th = 0; th < 8; ++th) {
                ls.push_back(LDState::walk(x, y, th));
            }
            for (const auto& l : ls) {
                if (!is_valid(*w, l)) {
                    continue;
                }
                for (const auto& h : inverse_project(*w, l.rep, l)) {
                    CHECK(project(l.rep, h) == l);
                }
                const RepId other = l.rep == RepId::WALK ? RepId::CRAWL : RepId::WALK;
                std::set<LDState> expected;
                for (const auto& h : ref_preimage(*w, l)) {
                    expected.insert(ref_project(other, h));
                }
                const auto got = cross_project(*w, l.rep, other, l);
                CHECK(std::vector<LDState>(expected.begin(), expected.end()) == got);
            }
        }
    }
}

TEST_CASE("regions")
{
    const auto w = testing::open_map(7, 7);
    const AdaptiveGraph g(w, CostTable{});
    CHECK_FALSE(in_hd_region(g, 3, 3));
    const auto g1 = add_hd_region(g, { { 3, 3 }, 1 });
    CHECK(g1.regions().size() == 1);
    CHECK(in_hd_region(g1, 3, 3));
    CHECK(in_hd_region(g1, 4, 4));
    CHECK_FALSE(in_hd_region(g1, 5, 3));
    CHECK(g.regions().empty());
    const auto g2 = add_hd_region(g1, { { 3, 3 }, 1 });
    CHECK(g2.regions().size() == 2);
    for (const auto& s : members(g1)) {
        CHECK(testing::triples(ad_successors(g1, s)) == testing::triples(ad_successors(g2, s)));
    }
    CHECK_THROWS_AS(add_hd_region(g, { { 9, 3 }, 1 }), ContractViolation);
    CHECK_THROWS_AS(add_hd_region(g, { { 3, 3 }, -1 }), ContractViolation);
}

TEST_CASE("ad_successors examples")
{
    const auto w = testing::open_map(7, 7);
    const CostTable c;
    const AdaptiveGraph g(w, c);

    const auto crawl = ad_successors(g, LDState::crawl(3, 3));
    REQUIRE(crawl.size() == 12);
    int steps = 0;
    int switches = 0;
    for (const auto& t : crawl) {
        if (t.kind == TransitionKind::LD_PRIMITIVE) {
            ++steps;
            CHECK(t.cost == 3);
        } else {
            CHECK(t.kind == TransitionKind::REP_SWITCH);
            CHECK(t.cost == 5);
            CHECK(rep_of(t.to) == RepId::WALK);
            ++switches;
        }
    }
    CHECK(steps == 4);
    CHECK(switches == 8);

    const auto whole = g.add_hd_region({ { 3, 3 }, 7 });
    const HDState h{ 3, 3, 0, Stance::STAND, 0 };
    CHECK(testing::triples(ad_successors(whole, h)) == testing::triples(hd_successors(*w, c, h)));

    const auto big = std::make_shared<World>(10, 7, std::vector<Terrain>(70, Terrain::FREE));
    const AdaptiveGraph near(big, c, { { { 7, 3 }, 2 } });
    const auto ts = ad_successors(near, LDState::walk(4, 3, 0));
    bool hd_target = false;
    for (const auto& t : ts) {
        CHECK(std::holds_alternative<HDState>(t.to) == near.in_hd_region(cell_of(t.to)));
        if (t.to == AnyState{ HDState{ 5, 3, 0, Stance::STAND, 0 } }) {
            hd_target = true;
            CHECK(t.kind == TransitionKind::PROJECTION);
            CHECK(t.cost == 2);
        }
    }
    CHECK(hd_target);
    CHECK(std::none_of(ts.begin(), ts.end(), [](const Transition& t) {
        return t.to == AnyState{ LDState::walk(5, 3, 0) };
    }));
}

TEST_CASE("membership violations are rejected")
{
    const auto w = testing::open_map(7, 7);
    const AdaptiveGraph g(w, CostTable{}, { { { 3, 3 }, 1 } });
    CHECK_THROWS_AS(ad_successors(g, LDState::walk(3, 3, 0)), ContractViolation);
    CHECK_THROWS_AS(ad_successors(g, HDState{ 0, 0, 0, Stance::STAND, 0 }), ContractViolation);
    CHECK_NOTHROW(ad_successors(g, HDState{ 3, 3, 0, Stance::STAND, 0 }));
}

TEST_CASE("ad_successors agrees with the rule table")
{
    const CostTable c;
    struct Case
    {
        std::shared_ptr<const World> world;
        std::vector<HDRegion> regions;
        Cost pc;
    };
    std::vector<Case> cases{
        { testing::open_map(7, 7), {}, 0 },
        { testing::open_map(7, 7), { { { 3, 3 }, 1 } }, 0 },
        { testing::mixed6(), {}, 0 },
        { testing::mixed6(), { { { 2, 2 }, 1 } }, 0 },
        { testing::mixed6(), { { { 1, 4 }, 1 }, { { 4, 3 }, 0 } }, 1 },
        { testing::mixed6(), { { { 3, 3 }, 2 } }, 0 },
    };
    for (const auto& k : cases) {
        AdaptiveGraphOptions opts;
        opts.projection_cost = k.pc;
        const AdaptiveGraph g(k.world, c, k.regions, opts);
        std::size_t checked = 0;
        for (const auto& s : members(g)) {
            const auto got = ad_successors(g, s);
            const auto want = reference_successors(*k.world, c, k.regions, k.pc, s);
            const bool ok = same(as_ref(got), want);
            if (!ok) {
                INFO("state " << to_string(s));
                CHECK(ok);
            }
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("successor lists are sorted, duplicate-free, deterministic and respect membership")
{
    const CostTable c;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto w = std::make_shared<World>(gen_random_map(seed, 8, 8, { 0.15, 0.15, 0.15 }, {}));
        const std::vector<HDRegion> regions{ { { int(seed % 6) + 1, int(seed * 3 % 6) + 1 }, 1 } };
        const AdaptiveGraph g(w, c, regions);
        for (const auto& s : members(g)) {
            const auto a = ad_successors(g, s);
            CHECK(a == ad_successors(g, s));
            for (std::size_t i = 1; i < a.size(); ++i) {
                CHECK(std::tie(a[i - 1].kind, a[i - 1].to) < std::tie(a[i].kind, a[i].to));
            }
            for (const auto& t : a) {
                CHECK(g.contains(t.to));
                CHECK(t.from == s);
                if (t.kind == TransitionKind::PROJECTION) {
                    CHECK(t.cost >= 0);
                } else {
                    CHECK(t.cost > 0);
                }
            }
        }
    }
}

TEST_CASE("monotone refinement away from a new region")
{
    const CostTable c;
    const auto w = std::make_shared<World>(gen_random_map(7, 12, 12, { 0.1, 0.1, 0.1 }, {}));
    const AdaptiveGraph g(w, c, { { { 2, 2 }, 1 } });
    const HDRegion added{ { 8, 8 }, 1 };
    const auto g2 = g.add_hd_region(added);
    const int far = added.radius + 2;
    std::size_t compared = 0;
    for (const auto& s : members(g)) {
        if (chebyshev(cell_of(s), added.center) < far) {
            continue;
        }
        const auto a = ad_successors(g, s);
        if (std::any_of(a.begin(), a.end(), [&](const Transition& t) {
                return chebyshev(cell_of(t.to), added.center) < far;
            })) {
            continue;
        }
        CHECK(a == ad_successors(g2, s));
        ++compared;
    }
    CHECK(compared > 500);
}

TEST_CASE("equal graphs produce equal successors")
{
    const CostTable c;
    const AdaptiveGraph a(testing::mixed6(), c, { { { 2, 2 }, 1 } });
    const AdaptiveGraph b(testing::mixed6(), c, { { { 2, 2 }, 1 } });
    CHECK(a == b);
    for (const auto& s : members(a)) {
        CHECK(ad_successors(a, s) == ad_successors(b, s));
    }
}

TEST_CASE("image_of follows the stance outside regions")
{
    const AdaptiveGraph g(testing::open_map(7, 7), CostTable{}, { { { 5, 5 }, 1 } });
    CHECK(g.image_of({ 1, 1, 3, Stance::STAND, 2 }) == AnyState{ LDState::walk(1, 1, 3) });
    CHECK(g.image_of({ 1, 1, 3, Stance::CROUCH, 2 }) == AnyState{ LDState::crawl(1, 1) });
    CHECK(g.image_of({ 5, 5, 3, Stance::CROUCH, 2 }) == AnyState{ HDState{ 5, 5, 3, Stance::CROUCH, 2 } });
}

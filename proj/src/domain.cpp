#include <adim/domain.hpp>

#include <adim/projection.hpp>

#include <algorithm>
#include <array>
#include <queue>

namespace adim {

namespace {

constexpr std::array<Cell, kHeadings> kDeltas{ {
    { 1, 0 }, { 1, 1 }, { 0, 1 }, { -1, 1 }, { -1, 0 }, { -1, -1 }, { 0, -1 }, { 1, -1 },
} };

int wrap_heading(int th) { return ((th % kHeadings) + kHeadings) % kHeadings; }
int next_phase(int p) { return (p + 1) % kPhases; }

bool walkable(Terrain t) { return t == Terrain::FREE || t == Terrain::RUBBLE; }
bool crawlable(Terrain t) { return t == Terrain::FREE || t == Terrain::LOW; }

} // namespace

Cell heading_delta(int theta) { return kDeltas[std::size_t(wrap_heading(theta))]; }

Cell step(Cell c, int theta)
{
    const auto d = heading_delta(theta);
    return { c.x + d.x, c.y + d.y };
}

bool stance_allows(Stance s, Terrain t)
{
    return s == Stance::STAND ? walkable(t) : crawlable(t);
}

bool is_valid(const World& w, const HDState& s)
{
    return w.in_bounds(s.x, s.y) && s.theta >= 0 && s.theta < kHeadings && s.phase >= 0 &&
           s.phase < kPhases && stance_allows(s.stance, w.at(s.x, s.y));
}

bool is_valid(const World& w, const LDState& s)
{
    if (!w.in_bounds(s.x, s.y) || w.at(s.x, s.y) == Terrain::WALL) {
        return false;
    }
    switch (s.rep) {
    case RepId::WALK:
        return s.theta.has_value() && *s.theta >= 0 && *s.theta < kHeadings;
    case RepId::CRAWL:
        return !s.theta.has_value();
    case RepId::HD:
        break;
    }
    return false;
}

std::vector<Transition> hd_successors(const World& w, const CostTable& c, const HDState& s)
{
    std::vector<Transition> out;
    auto emit = [&](const HDState& to, Cost cost) {
        out.push_back({ s, to, cost, TransitionKind::HD_PRIMITIVE, Controller::FULLBODY_CTRL });
    };

    for (int d : { -1, 1 }) {
        emit({ s.x, s.y, wrap_heading(s.theta + d), s.stance, next_phase(s.phase) }, c.rotate());
    }
    emit({ s.x, s.y, s.theta, s.stance, next_phase(s.phase) }, c.weight_shift());

    const Terrain here = w.at(s.x, s.y);
    if (here == Terrain::FREE) {
        const Stance other = s.stance == Stance::STAND ? Stance::CROUCH : Stance::STAND;
        emit({ s.x, s.y, s.theta, other, 0 }, c.stance_change());
    }

    const bool cardinal = s.theta % 2 == 0;
    if (s.stance == Stance::CROUCH && !cardinal) {
        return out;
    }
    const Cell to = step(s.cell(), s.theta);
    const Terrain there = w.at(to);
    if (here == Terrain::RUBBLE || there == Terrain::RUBBLE) {
        if (s.stance == Stance::STAND && s.phase == kPhases - 1 && walkable(there)) {
            emit({ to.x, to.y, s.theta, s.stance, 0 }, c.rubble_substep());
        }
    } else if (s.stance == Stance::STAND && there == Terrain::FREE) {
        emit({ to.x, to.y, s.theta, s.stance, next_phase(s.phase) }, c.walk_step());
    } else if (s.stance == Stance::CROUCH && crawlable(there)) {
        emit({ to.x, to.y, s.theta, s.stance, next_phase(s.phase) }, c.crawl_step());
    }
    return out;
}

std::vector<Transition> ld_successors(const World& w, const CostTable& c, const LDState& s)
{
    std::vector<Transition> out;
    const Terrain here = w.at(s.x, s.y);
    if (s.rep == RepId::WALK) {
        const int th = s.theta.value_or(0);
        const auto ctrl = here == Terrain::FREE ? Controller::WALK_CTRL : Controller::NONE;
        for (int d : { -1, 1 }) {
            out.push_back({ s, LDState::walk(s.x, s.y, wrap_heading(th + d)), c.rotate(),
                            TransitionKind::LD_PRIMITIVE, ctrl });
        }
        const Cell to = step(s.cell(), th);
        const Terrain there = w.at(to);
        if (walkable(here) && walkable(there)) {
            const bool even = here == Terrain::FREE && there == Terrain::FREE;
            out.push_back({ s, LDState::walk(to.x, to.y, th), c.walk_step(),
                            TransitionKind::LD_PRIMITIVE,
                            even ? Controller::WALK_CTRL : Controller::NONE });
        }
    } else if (s.rep == RepId::CRAWL) {
        if (!crawlable(here)) {
            return out;
        }
        for (int th = 0; th < kHeadings; th += 2) {
            const Cell to = step(s.cell(), th);
            if (crawlable(w.at(to))) {
                out.push_back({ s, LDState::crawl(to.x, to.y), c.crawl_step(),
                                TransitionKind::LD_PRIMITIVE, Controller::CRAWL_CTRL });
            }
        }
    } else {
        throw ContractViolation("ld_successors: state must be low-dimensional");
    }
    return out;
}

std::vector<Transition> special_projection_successors(const World& w, const CostTable& c,
                                                      const LDState& s)
{
    std::vector<Transition> out;
    if (w.at(s.x, s.y) != Terrain::FREE) {
        return out;
    }
    const RepId other = s.rep == RepId::WALK ? RepId::CRAWL : RepId::WALK;
    for (const auto& t : cross_project(w, s.rep, other, s)) {
        out.push_back({ s, t, c.rep_switch(), TransitionKind::REP_SWITCH, controller_for(other) });
    }
    return out;
}

std::vector<Transition> executable_macro_successors(const World& w, const CostTable& c,
                                                    const HDState& s)
{
    std::vector<Transition> out;
    const RepId rep = rep_for_stance(s.stance);
    for (const auto& t : ld_successors(w, c, project(rep, s))) {
        if (t.controller == Controller::NONE) {
            continue;
        }
        const auto& l = std::get<LDState>(t.to);
        HDState to{ l.x, l.y, s.theta, s.stance, 0 };
        if (l.theta) {
            to.theta = *l.theta;
        } else if (l.cell() != s.cell()) {
            // crawl macros face the direction of motion
            for (int th = 0; th < kHeadings; th += 2) {
                if (step(s.cell(), th) == l.cell()) {
                    to.theta = th;
                }
            }
        }
        out.push_back({ s, to, t.cost, TransitionKind::HD_MACRO, t.controller });
    }
    return out;
}

bool is_goal(const GoalSpec& g, const AnyState& s) { return cell_of(s) == g.cell; }
bool is_goal(const GoalSpec& g, const HDState& s) { return s.cell() == g.cell; }

RepId rep_for_stance(Stance s) { return s == Stance::STAND ? RepId::WALK : RepId::CRAWL; }

Controller controller_for(RepId r)
{
    switch (r) {
    case RepId::WALK:
        return Controller::WALK_CTRL;
    case RepId::CRAWL:
        return Controller::CRAWL_CTRL;
    case RepId::HD:
        return Controller::FULLBODY_CTRL;
    }
    return Controller::NONE;
}

Cost in_place_cost(const CostTable& c, int from_theta, int from_phase, int to_theta, int to_phase)
{
    constexpr int n = kHeadings * kPhases;
    std::array<Cost, n> dist;
    dist.fill(kInfiniteCost);
    auto id = [](int th, int ph) { return th * kPhases + ph; };
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[std::size_t(id(from_theta, from_phase))] = 0;
    open.push({ 0, id(from_theta, from_phase) });
    while (!open.empty()) {
        auto [d, u] = open.top();
        open.pop();
        if (d != dist[std::size_t(u)]) {
            continue;
        }
        const int th = u / kPhases;
        const int ph = u % kPhases;
        const std::array<Item, 3> moves{ {
            { c.rotate(), id(wrap_heading(th + 1), next_phase(ph)) },
            { c.rotate(), id(wrap_heading(th - 1), next_phase(ph)) },
            { c.weight_shift(), id(th, next_phase(ph)) },
        } };
        for (const auto& [cost, v] : moves) {
            if (d + cost < dist[std::size_t(v)]) {
                dist[std::size_t(v)] = d + cost;
                open.push({ d + cost, v });
            }
        }
    }
    return dist[std::size_t(id(to_theta, to_phase))];
}

} // namespace adim

#ifndef ADIM_MRMHA_HPP
#define ADIM_MRMHA_HPP

#include <adim/types.hpp>

#include <boost/rational.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace adim {

/// Exact weight (w1, w2, epsilon) so that keys never drift.
using Weight = boost::rational<std::int64_t>;

Weight parse_weight(const std::string& s);
std::string to_string(const Weight& w);

/// Priority of a state in queue i: g + w1 * h_i. An infinite heuristic has
/// no finite key; callers use `kInfiniteCost` for it.
Weight key(Cost g, Cost h, const Weight& w1);

inline constexpr int kMaxQueues = 8;

/// Per-representation heuristic assignment. Index 0 is the anchor.
struct HeuristicLists
{
    struct Entry
    {
        int anchor = 0;
        std::vector<int> inadm;
        bool operator==(const Entry&) const = default;
    };

    std::array<Entry, kRepCount> per_rep{};
    /// Number of inadmissible heuristics h_1..h_n.
    int count = 0;

    const Entry& operator[](RepId r) const { return per_rep[std::size_t(r)]; }
    bool enabled(RepId r, int h) const
    {
        const auto& v = per_rep[std::size_t(r)].inadm;
        return h == 0 || std::find(v.begin(), v.end(), h) != v.end();
    }
    bool operator==(const HeuristicLists&) const = default;
};

/// `enable[i][d]` says whether heuristic i+1 is available to reps[d].
/// Heuristics enabled nowhere are reported through `warnings`.
HeuristicLists init_heuristic_lists(const std::vector<RepId>& reps,
                                    const std::vector<std::vector<bool>>& enable,
                                    std::vector<std::string>* warnings = nullptr);

struct SearchParams
{
    Weight w1{ 1 };
    Weight w2{ 1 };
    std::uint64_t expansion_budget = 1'000'000;
    /// Assert the queue invariants while searching (throws std::logic_error).
    bool debug_checks = false;
};

enum class SearchOutcome { PATH, EXHAUSTED, BUDGET };
std::string_view to_string(SearchOutcome o);

struct SearchStats
{
    std::vector<std::uint64_t> expansions_per_queue;
    std::vector<std::size_t> peak_open;
    std::uint64_t expansions = 0;
    std::size_t generated = 0;
    double wall_seconds = 0.0;

    bool operator==(const SearchStats& o) const
    {
        return expansions_per_queue == o.expansions_per_queue && peak_open == o.peak_open &&
               expansions == o.expansions && generated == o.generated;
    }
};

template <class State>
struct SearchResult
{
    SearchOutcome outcome = SearchOutcome::EXHAUSTED;
    BasicPath<State> path;
    Cost cost = kInfiniteCost;
    SearchStats stats;
    /// Open state with the smallest anchor key (set for BUDGET).
    std::optional<State> best_frontier;

    bool operator==(const SearchResult&) const = default;
};

template <class State>
struct TraceEvent
{
    enum class Kind { EXPAND, INSERT };
    Kind kind = Kind::EXPAND;
    int queue = 0;
    State state;
    RepId rep = RepId::HD;
    Cost g = 0;
    Weight key{ 0 };
    /// OPEN_0 minimum key at the time of the event (expansions only).
    std::optional<Weight> anchor_minkey;
};

/// Stable one-line form of an expansion: "queue_id, state, g, key".
template <class State>
std::string format_trace_line(const TraceEvent<State>& e)
{
    std::ostringstream os;
    os << e.queue << ", " << to_string(e.state) << ", " << e.g << ", " << to_string(e.key);
    return os.str();
}

template <class State>
struct SearchProblem
{
    std::function<void(const State&, std::vector<PathEdge<State>>&)> successors;
    std::function<RepId(const State&)> rep_of;
    std::function<bool(const State&)> is_goal;
    /// heuristics[0] is the anchor; it must be admissible for the bound.
    std::vector<std::function<Cost(const State&)>> heuristics;
};

template <class State>
struct FrontierEntry
{
    State state;
    Cost g = 0;
    Weight anchor_key{ 0 };
};

/// Multi-representation multi-heuristic A*: one anchor queue ordered by
/// g + w1*h_0 and one queue per inadmissible heuristic. A successor is only
/// queued under heuristics enabled for its own representation.
template <class State>
class MultiRepSearch
{
public:
    MultiRepSearch(SearchProblem<State> problem, HeuristicLists lists, SearchParams params)
        : m_problem(std::move(problem)), m_lists(std::move(lists)), m_params(params)
    {
        if (m_problem.heuristics.empty()) {
            throw ContractViolation("MultiRepSearch: anchor heuristic missing");
        }
        if (m_params.w1 < 1 || m_params.w2 < 1) {
            throw ContractViolation("MultiRepSearch: weights must be >= 1");
        }
        if (m_params.expansion_budget == 0) {
            throw ContractViolation("MultiRepSearch: expansion budget must be > 0");
        }
        m_queue_count = int(m_problem.heuristics.size());
        if (m_queue_count > kMaxQueues || m_lists.count + 1 != m_queue_count) {
            throw ContractViolation("MultiRepSearch: heuristic list does not match heuristics");
        }
    }

    void set_trace(std::function<void(const TraceEvent<State>&)> sink) { m_trace = std::move(sink); }

    SearchResult<State> run(const State& start)
    {
        reset();
        const auto t0 = std::chrono::steady_clock::now();
        SearchResult<State> res;
        res.path.start = start;
        m_stats.expansions_per_queue.assign(std::size_t(m_queue_count), 0);
        m_stats.peak_open.assign(std::size_t(m_queue_count), 0);

        const std::uint32_t s0 = node_for(start);
        m_nodes[s0].g = 0;
        if (m_problem.is_goal(start)) {
            res.outcome = SearchOutcome::PATH;
            res.cost = 0;
            return finish(res, t0);
        }

        push(s0, 0);
        const RepId rep0 = m_nodes[s0].rep;
        for (int i : m_lists[rep0].inadm) {
            push(s0, i);
        }

        const int n = m_lists.count;
        while (valid_top(0)) {
            if (n == 0) {
                if (goal_reached(0)) {
                    return finish_path(res, t0);
                }
                expand(top(0), 0);
            } else {
                for (int i = 1; i <= n && valid_top(0); ++i) {
                    const bool use_inadm = valid_top(i) && within_anchor_bound(i);
                    const int q = use_inadm ? i : 0;
                    if (goal_reached(q)) {
                        return finish_path(res, t0);
                    }
                    expand(top(q), q);
                    if (m_stats.expansions >= m_params.expansion_budget) {
                        break;
                    }
                }
            }
            if (m_stats.expansions >= m_params.expansion_budget) {
                if (best_goal()) {
                    return finish_path(res, t0);
                }
                res.outcome = SearchOutcome::BUDGET;
                if (valid_top(0)) {
                    res.best_frontier = m_nodes[top(0)].state;
                }
                return finish(res, t0);
            }
        }
        if (best_goal()) {
            return finish_path(res, t0);
        }
        res.outcome = SearchOutcome::EXHAUSTED;
        return finish(res, t0);
    }

    /// Backpointer chain from the start to `s`; empty if `s` was never reached.
    std::optional<BasicPath<State>> reconstruct(const State& s) const
    {
        auto it = m_index.find(s);
        if (it == m_index.end() || m_nodes[it->second].g >= kInfiniteCost) {
            return std::nullopt;
        }
        BasicPath<State> p;
        std::uint32_t cur = it->second;
        while (m_nodes[cur].parent != kNone) {
            p.edges.push_back(m_nodes[cur].in_edge);
            cur = m_nodes[cur].parent;
        }
        p.start = m_nodes[cur].state;
        std::reverse(p.edges.begin(), p.edges.end());
        return p;
    }

    /// States still waiting in any queue, in anchor-queue order.
    std::vector<FrontierEntry<State>> frontier() const
    {
        std::vector<FrontierEntry<State>> out;
        for (const auto& nd : m_nodes) {
            bool open = false;
            for (int i = 0; i < m_queue_count; ++i) {
                open = open || nd.in_open[std::size_t(i)];
            }
            if (open) {
                out.push_back({ nd.state, nd.g, key(nd.g, nd.h[0], m_params.w1) });
            }
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.anchor_key != b.anchor_key) {
                return a.anchor_key < b.anchor_key;
            }
            if (a.g != b.g) {
                return a.g > b.g;
            }
            return a.state < b.state;
        });
        return out;
    }

    /// States expanded at least once.
    std::vector<State> closed() const
    {
        std::vector<State> out;
        for (const auto& nd : m_nodes) {
            if (nd.closed_anchor || nd.closed_inad) {
                out.push_back(nd.state);
            }
        }
        return out;
    }

    std::optional<Cost> g_value(const State& s) const
    {
        auto it = m_index.find(s);
        if (it == m_index.end()) {
            return std::nullopt;
        }
        return m_nodes[it->second].g;
    }

    const SearchParams& params() const { return m_params; }
    const HeuristicLists& lists() const { return m_lists; }

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    struct Node
    {
        State state;
        RepId rep = RepId::HD;
        Cost g = kInfiniteCost;
        std::uint32_t parent = kNone;
        PathEdge<State> in_edge;
        bool closed_anchor = false;
        bool closed_inad = false;
        std::array<std::uint32_t, kMaxQueues> version{};
        std::array<bool, kMaxQueues> in_open{};
        std::array<Cost, kMaxQueues> h{};
    };

    struct Entry
    {
        Cost key; // scaled by the denominator of w1, kInfiniteCost if unbounded
        Cost g;
        std::uint32_t node;
        std::uint32_t version;
    };

    void reset()
    {
        m_nodes.clear();
        m_index.clear();
        for (auto& q : m_open) {
            q.clear();
        }
        m_open_count.fill(0);
        m_stats = {};
        m_goal_nodes.clear();
    }

    std::uint32_t node_for(const State& s)
    {
        auto [it, inserted] = m_index.try_emplace(s, std::uint32_t(m_nodes.size()));
        if (inserted) {
            Node nd;
            nd.state = s;
            nd.rep = m_problem.rep_of(s);
            for (int i = 0; i < m_queue_count; ++i) {
                nd.h[std::size_t(i)] = std::min(m_problem.heuristics[std::size_t(i)](s), kInfiniteCost);
            }
            m_nodes.push_back(std::move(nd));
            ++m_stats.generated;
        }
        return it->second;
    }

    Cost scaled_key(const Node& nd, int i) const
    {
        const Cost h = nd.h[std::size_t(i)];
        if (h >= kInfiniteCost || nd.g >= kInfiniteCost) {
            return kInfiniteCost;
        }
        return m_params.w1.denominator() * nd.g + m_params.w1.numerator() * h;
    }

    // a <= w2 * b on scaled keys
    bool le_w2(Cost a, Cost b) const
    {
        if (a >= kInfiniteCost) {
            return false;
        }
        if (b >= kInfiniteCost) {
            return true;
        }
        return m_params.w2.denominator() * a <= m_params.w2.numerator() * b;
    }

    Weight unscale(Cost k) const { return Weight(k, m_params.w1.denominator()); }

    bool worse(const Entry& a, const Entry& b) const
    {
        if (a.key != b.key) {
            return a.key > b.key;
        }
        if (a.g != b.g) {
            return a.g < b.g;
        }
        return m_nodes[b.node].state < m_nodes[a.node].state;
    }

    void push(std::uint32_t id, int i)
    {
        auto& nd = m_nodes[id];
        const auto qi = std::size_t(i);
        ++nd.version[qi];
        if (!nd.in_open[qi]) {
            nd.in_open[qi] = true;
            ++m_open_count[qi];
            m_stats.peak_open[qi] = std::max(m_stats.peak_open[qi], m_open_count[qi]);
        }
        const Entry e{ scaled_key(nd, i), nd.g, id, nd.version[qi] };
        auto& q = m_open[qi];
        q.push_back(e);
        std::push_heap(q.begin(), q.end(), [this](const Entry& a, const Entry& b) { return worse(a, b); });
        if (m_trace) {
            TraceEvent<State> ev;
            ev.kind = TraceEvent<State>::Kind::INSERT;
            ev.queue = i;
            ev.state = nd.state;
            ev.rep = nd.rep;
            ev.g = nd.g;
            ev.key = unscale(e.key);
            m_trace(ev);
        }
    }

    void remove_from_open(std::uint32_t id, int i)
    {
        auto& nd = m_nodes[id];
        if (nd.in_open[std::size_t(i)]) {
            nd.in_open[std::size_t(i)] = false;
            --m_open_count[std::size_t(i)];
        }
    }

    bool valid_top(int i)
    {
        auto& q = m_open[std::size_t(i)];
        auto cmp = [this](const Entry& a, const Entry& b) { return worse(a, b); };
        while (!q.empty()) {
            const Entry& e = q.front();
            const Node& nd = m_nodes[e.node];
            if (nd.in_open[std::size_t(i)] && nd.version[std::size_t(i)] == e.version) {
                return true;
            }
            std::pop_heap(q.begin(), q.end(), cmp);
            q.pop_back();
        }
        return false;
    }

    std::uint32_t top(int i) const { return m_open[std::size_t(i)].front().node; }
    Cost min_key(int i) { return valid_top(i) ? m_open[std::size_t(i)].front().key : kInfiniteCost; }

    bool within_anchor_bound(int i) { return le_w2(min_key(i), min_key(0)); }

    std::optional<std::uint32_t> best_goal() const
    {
        std::optional<std::uint32_t> best;
        for (auto id : m_goal_nodes) {
            if (!best || m_nodes[id].g < m_nodes[*best].g) {
                best = id;
            }
        }
        return best;
    }

    bool goal_reached(int q)
    {
        const auto g = best_goal();
        if (!g) {
            return false;
        }
        const Cost k = min_key(q);
        return k >= kInfiniteCost || m_params.w1.denominator() * m_nodes[*g].g <= k;
    }

    void expand(std::uint32_t id, int q)
    {
        if (m_params.debug_checks && q != 0 && !le_w2(min_key(q), min_key(0))) {
            throw std::logic_error("inadmissible expansion outside the w2 anchor bound");
        }
        if (m_trace) {
            const Node& nd = m_nodes[id];
            TraceEvent<State> ev;
            ev.kind = TraceEvent<State>::Kind::EXPAND;
            ev.queue = q;
            ev.state = nd.state;
            ev.rep = nd.rep;
            ev.g = nd.g;
            ev.key = unscale(min_key(q));
            const Cost k0 = min_key(0);
            if (k0 < kInfiniteCost) {
                ev.anchor_minkey = unscale(k0);
            }
            m_trace(ev);
        }

        {
            Node& nd = m_nodes[id];
            if (q == 0) {
                nd.closed_anchor = true;
            } else {
                nd.closed_inad = true;
            }
        }
        const RepId rep = m_nodes[id].rep;
        remove_from_open(id, 0);
        for (int i : m_lists[rep].inadm) {
            remove_from_open(id, i);
        }
        ++m_stats.expansions;
        ++m_stats.expansions_per_queue[std::size_t(q)];

        const State s = m_nodes[id].state;
        if (m_problem.is_goal(s)) {
            m_goal_nodes.push_back(id);
        }

        m_succ.clear();
        m_problem.successors(s, m_succ);
        const Cost gs = m_nodes[id].g;
        for (const auto& e : m_succ) {
            if (e.cost <= 0 && e.kind != TransitionKind::PROJECTION) {
                throw ContractViolation("MultiRepSearch: non-positive edge cost");
            }
            const std::uint32_t t = node_for(e.to);
            Node& nt = m_nodes[t];
            if (nt.g <= gs + e.cost) {
                continue;
            }
            nt.g = gs + e.cost;
            nt.parent = id;
            nt.in_edge = e;
            if (nt.closed_anchor) {
                continue;
            }
            push(t, 0);
            if (m_nodes[t].closed_inad) {
                continue;
            }
            const Cost k0 = scaled_key(m_nodes[t], 0);
            for (int i : m_lists[m_nodes[t].rep].inadm) {
                if (le_w2(scaled_key(m_nodes[t], i), k0)) {
                    push(t, i);
                }
            }
        }
    }

    SearchResult<State>& finish(SearchResult<State>& res,
                                std::chrono::steady_clock::time_point t0)
    {
        res.stats = m_stats;
        res.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    SearchResult<State>& finish_path(SearchResult<State>& res,
                                     std::chrono::steady_clock::time_point t0)
    {
        const auto g = *best_goal();
        res.outcome = SearchOutcome::PATH;
        res.path = *reconstruct(m_nodes[g].state);
        res.cost = m_nodes[g].g;
        if (m_params.debug_checks) {
            const Cost h0 = m_nodes[0].h[0];
            if (h0 < kInfiniteCost && res.cost < h0) {
                throw std::logic_error("anchor heuristic is inadmissible: g(goal) < h_0(start)");
            }
        }
        return finish(res, t0);
    }

    SearchProblem<State> m_problem;
    HeuristicLists m_lists;
    SearchParams m_params;
    int m_queue_count = 1;

    std::vector<Node> m_nodes;
    std::unordered_map<State, std::uint32_t, StateHash> m_index;
    std::array<std::vector<Entry>, kMaxQueues> m_open;
    std::array<std::size_t, kMaxQueues> m_open_count{};
    std::vector<std::uint32_t> m_goal_nodes;
    std::vector<PathEdge<State>> m_succ;
    SearchStats m_stats;
    std::function<void(const TraceEvent<State>&)> m_trace;
};

} // namespace adim

#endif

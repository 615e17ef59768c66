#ifndef ADIM_TYPES_HPP
#define ADIM_TYPES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adim {

using Cost = std::int64_t;

/// Saturating "unreachable" value shared by heuristics and distance fields.
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 8;

inline constexpr int kHeadings = 8;
inline constexpr int kPhases = 4;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

enum class RepId : std::uint8_t { HD = 0, WALK = 1, CRAWL = 2 };
inline constexpr std::array<RepId, 2> kLowDimReps{ RepId::WALK, RepId::CRAWL };
inline constexpr int kRepCount = 3;

enum class Stance : std::uint8_t { STAND = 0, CROUCH = 1 };

enum class TransitionKind : std::uint8_t {
    LD_PRIMITIVE = 0,
    HD_PRIMITIVE,
    HD_MACRO,
    PROJECTION,
    REP_SWITCH,
    SNAP,
    /// Jump along a stored demonstration. Internal to tracking: returned
    /// paths carry the replayed waypoints instead.
    EGRAPH_SHORTCUT,
};

enum class Controller : std::uint8_t {
    NONE = 0,
    WALK_CTRL,
    CRAWL_CTRL,
    FULLBODY_CTRL,
};

std::string_view to_string(RepId r);
std::string_view to_string(Stance s);
std::string_view to_string(TransitionKind k);
std::string_view to_string(Controller c);

RepId parse_rep(std::string_view s);
Stance parse_stance(std::string_view s);
TransitionKind parse_kind(std::string_view s);
Controller parse_controller(std::string_view s);

struct Cell
{
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

inline int chebyshev(Cell a, Cell b)
{
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

/// Full configuration of the toy robot.
struct HDState
{
    int x = 0;
    int y = 0;
    int theta = 0;
    Stance stance = Stance::STAND;
    int phase = 0;

    Cell cell() const { return { x, y }; }
    auto operator<=>(const HDState&) const = default;
};

/// A state of one low-dimensional representation. Only WALK states carry a
/// heading.
struct LDState
{
    RepId rep = RepId::WALK;
    int x = 0;
    int y = 0;
    std::optional<int> theta;

    static LDState walk(int x, int y, int theta) { return { RepId::WALK, x, y, theta }; }
    static LDState crawl(int x, int y) { return { RepId::CRAWL, x, y, std::nullopt }; }

    Cell cell() const { return { x, y }; }
    auto operator<=>(const LDState&) const = default;
};

/// Element of the adaptive state space. The variant index order (HD first)
/// agrees with RepId order, so the built-in comparison sorts by
/// (rep, x, y, theta, stance, phase).
using AnyState = std::variant<HDState, LDState>;

RepId rep_of(const AnyState& s);
Cell cell_of(const AnyState& s);
inline Cell cell_of(const HDState& s) { return s.cell(); }
inline RepId rep_of(const HDState&) { return RepId::HD; }

std::string to_string(const HDState& s);
std::string to_string(const LDState& s);
std::string to_string(const AnyState& s);

/// Dense key, unique per state, used for hashing.
std::uint64_t pack(const HDState& s);
std::uint64_t pack(const LDState& s);
std::uint64_t pack(const AnyState& s);

struct StateHash
{
    std::size_t operator()(const HDState& s) const { return std::hash<std::uint64_t>()(pack(s)); }
    std::size_t operator()(const LDState& s) const { return std::hash<std::uint64_t>()(pack(s)); }
    std::size_t operator()(const AnyState& s) const { return std::hash<std::uint64_t>()(pack(s)); }
};

struct Transition
{
    AnyState from;
    AnyState to;
    Cost cost = 0;
    TransitionKind kind = TransitionKind::LD_PRIMITIVE;
    /// Controller able to execute this transition, NONE if no controller can.
    Controller controller = Controller::NONE;

    bool operator==(const Transition&) const = default;
};

/// An edge of a path, stored with the state it arrives at.
template <class State>
struct PathEdge
{
    State to;
    Cost cost = 0;
    TransitionKind kind = TransitionKind::HD_PRIMITIVE;
    Controller controller = Controller::NONE;

    bool operator==(const PathEdge&) const = default;
};

template <class State>
struct BasicPath
{
    State start;
    std::vector<PathEdge<State>> edges;

    Cost cost() const
    {
        Cost c = 0;
        for (const auto& e : edges) {
            c += e.cost;
        }
        return c;
    }

    const State& back() const { return edges.empty() ? start : edges.back().to; }

    std::vector<State> states() const
    {
        std::vector<State> out;
        out.reserve(edges.size() + 1);
        out.push_back(start);
        for (const auto& e : edges) {
            out.push_back(e.to);
        }
        return out;
    }

    bool operator==(const BasicPath&) const = default;
};

/// Executable full-dimensional path.
using Path = BasicPath<HDState>;
/// Path through the adaptive graph (mixed dimensionality).
using AdPath = BasicPath<AnyState>;

} // namespace adim

#endif

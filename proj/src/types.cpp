#include <adim/types.hpp>

#include <sstream>

namespace adim {

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<std::string_view, E>, N>& table,
             const char* what)
{
    for (const auto& [name, value] : table) {
        if (name == s) {
            return value;
        }
    }
    throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::array<std::pair<std::string_view, RepId>, 3> kRepNames{ {
    { "HD", RepId::HD }, { "WALK", RepId::WALK }, { "CRAWL", RepId::CRAWL },
} };

constexpr std::array<std::pair<std::string_view, Stance>, 2> kStanceNames{ {
    { "STAND", Stance::STAND }, { "CROUCH", Stance::CROUCH },
} };

constexpr std::array<std::pair<std::string_view, TransitionKind>, 7> kKindNames{ {
    { "LD_PRIMITIVE", TransitionKind::LD_PRIMITIVE },
    { "HD_PRIMITIVE", TransitionKind::HD_PRIMITIVE },
    { "HD_MACRO", TransitionKind::HD_MACRO },
    { "PROJECTION", TransitionKind::PROJECTION },
    { "REP_SWITCH", TransitionKind::REP_SWITCH },
    { "SNAP", TransitionKind::SNAP },
    { "EGRAPH_SHORTCUT", TransitionKind::EGRAPH_SHORTCUT },
} };

constexpr std::array<std::pair<std::string_view, Controller>, 4> kControllerNames{ {
    { "NONE", Controller::NONE },
    { "WALK_CTRL", Controller::WALK_CTRL },
    { "CRAWL_CTRL", Controller::CRAWL_CTRL },
    { "FULLBODY_CTRL", Controller::FULLBODY_CTRL },
} };

template <class E, std::size_t N>
std::string_view name_of(E v, const std::array<std::pair<std::string_view, E>, N>& table)
{
    for (const auto& [name, value] : table) {
        if (value == v) {
            return name;
        }
    }
    return "?";
}

} // namespace

std::string_view to_string(RepId r) { return name_of(r, kRepNames); }
std::string_view to_string(Stance s) { return name_of(s, kStanceNames); }
std::string_view to_string(TransitionKind k) { return name_of(k, kKindNames); }
std::string_view to_string(Controller c) { return name_of(c, kControllerNames); }

RepId parse_rep(std::string_view s) { return parse_enum(s, kRepNames, "representation"); }
Stance parse_stance(std::string_view s) { return parse_enum(s, kStanceNames, "stance"); }
TransitionKind parse_kind(std::string_view s) { return parse_enum(s, kKindNames, "transition kind"); }
Controller parse_controller(std::string_view s) { return parse_enum(s, kControllerNames, "controller"); }

RepId rep_of(const AnyState& s)
{
    if (const auto* h = std::get_if<HDState>(&s)) {
        (void)h;
        return RepId::HD;
    }
    return std::get<LDState>(s).rep;
}

Cell cell_of(const AnyState& s)
{
    return std::visit([](const auto& v) { return v.cell(); }, s);
}

std::string to_string(const HDState& s)
{
    std::ostringstream os;
    os << "(HD," << s.x << ',' << s.y << ",θ=" << s.theta << ',' << to_string(s.stance) << ','
       << s.phase << ')';
    return os.str();
}

std::string to_string(const LDState& s)
{
    std::ostringstream os;
    os << '(' << to_string(s.rep) << ',' << s.x << ',' << s.y;
    if (s.theta) {
        os << ",θ=" << *s.theta;
    }
    os << ')';
    return os.str();
}

std::string to_string(const AnyState& s)
{
    return std::visit([](const auto& v) { return to_string(v); }, s);
}

// Layout: rep:2 | x:16 | y:16 | theta+1:4 | stance:1 | phase:3
std::uint64_t pack(const HDState& s)
{
    return (std::uint64_t(RepId::HD) << 40) | (std::uint64_t(std::uint16_t(s.x)) << 24) |
           (std::uint64_t(std::uint16_t(s.y)) << 8) | (std::uint64_t(s.theta + 1) << 4) |
           (std::uint64_t(s.stance) << 3) | std::uint64_t(s.phase);
}

std::uint64_t pack(const LDState& s)
{
    const int th = s.theta ? *s.theta + 1 : 0;
    return (std::uint64_t(s.rep) << 40) | (std::uint64_t(std::uint16_t(s.x)) << 24) |
           (std::uint64_t(std::uint16_t(s.y)) << 8) | (std::uint64_t(th) << 4);
}

std::uint64_t pack(const AnyState& s)
{
    return std::visit([](const auto& v) { return pack(v); }, s);
}

} // namespace adim

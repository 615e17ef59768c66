#include <adim/projection.hpp>

#include <adim/domain.hpp>

#include <algorithm>

namespace adim {

LDState project(RepId rep, const HDState& s)
{
    switch (rep) {
    case RepId::WALK:
        return LDState::walk(s.x, s.y, s.theta);
    case RepId::CRAWL:
        return LDState::crawl(s.x, s.y);
    case RepId::HD:
        break;
    }
    throw ContractViolation("project: target representation must be low-dimensional");
}

std::vector<HDState> inverse_project(const World& w, RepId rep, const LDState& l)
{
    if (rep != l.rep) {
        throw ContractViolation("inverse_project: state " + to_string(l) + " is not in " +
                                std::string(to_string(rep)));
    }
    std::vector<HDState> out;
    if (rep == RepId::WALK) {
        const HDState h{ l.x, l.y, l.theta.value_or(0), Stance::STAND, 0 };
        if (is_valid(w, h)) {
            out.push_back(h);
        }
    } else if (rep == RepId::CRAWL) {
        for (int th = 0; th < kHeadings; ++th) {
            const HDState h{ l.x, l.y, th, Stance::CROUCH, 0 };
            if (is_valid(w, h)) {
                out.push_back(h);
            }
        }
    } else {
        throw ContractViolation("inverse_project: representation must be low-dimensional");
    }
    return out;
}

std::vector<LDState> cross_project(const World& w, RepId i, RepId j, const LDState& s)
{
    if (i == j || i == RepId::HD || j == RepId::HD) {
        throw ContractViolation("cross_project: needs two distinct low-dimensional representations");
    }
    std::vector<LDState> out;
    for (const auto& h : inverse_project(w, i, s)) {
        out.push_back(project(j, h));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace adim

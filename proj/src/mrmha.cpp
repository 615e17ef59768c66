#include <adim/mrmha.hpp>

#include <charconv>

namespace adim {

namespace {

std::int64_t parse_i64(std::string_view s, const std::string& whole)
{
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw std::invalid_argument("bad weight '" + whole + "'");
    }
    return v;
}

} // namespace

Weight parse_weight(const std::string& s)
{
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const auto num = parse_i64(std::string_view(s).substr(0, slash), s);
        const auto den = parse_i64(std::string_view(s).substr(slash + 1), s);
        if (den <= 0) {
            throw std::invalid_argument("bad weight '" + s + "'");
        }
        return Weight(num, den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal, kept exact
        const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) {
            den *= 10;
        }
        return Weight(parse_i64(digits, s), den);
    }
    return Weight(parse_i64(s, s));
}

std::string to_string(const Weight& w)
{
    if (w.denominator() == 1) {
        return std::to_string(w.numerator());
    }
    return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

Weight key(Cost g, Cost h, const Weight& w1)
{
    if (g >= kInfiniteCost || h >= kInfiniteCost) {
        return Weight(kInfiniteCost);
    }
    return Weight(g) + w1 * h;
}

HeuristicLists init_heuristic_lists(const std::vector<RepId>& reps,
                                    const std::vector<std::vector<bool>>& enable,
                                    std::vector<std::string>* warnings)
{
    HeuristicLists lists;
    lists.count = int(enable.size());
    if (lists.count + 1 > kMaxQueues) {
        throw ContractViolation("init_heuristic_lists: too many heuristics");
    }
    for (auto& e : lists.per_rep) {
        e.anchor = 0;
    }
    for (std::size_t i = 0; i < enable.size(); ++i) {
        if (enable[i].size() != reps.size()) {
            throw ContractViolation("init_heuristic_lists: enable matrix has wrong width");
        }
        bool any = false;
        for (std::size_t d = 0; d < reps.size(); ++d) {
            if (enable[i][d]) {
                lists.per_rep[std::size_t(reps[d])].inadm.push_back(int(i) + 1);
                any = true;
            }
        }
        if (!any && warnings) {
            warnings->push_back("heuristic h" + std::to_string(i + 1) +
                                " is not enabled for any representation");
        }
    }
    return lists;
}

std::string_view to_string(SearchOutcome o)
{
    switch (o) {
    case SearchOutcome::PATH:
        return "PATH";
    case SearchOutcome::EXHAUSTED:
        return "EXHAUSTED";
    case SearchOutcome::BUDGET:
        return "BUDGET";
    }
    return "?";
}

} // namespace adim

#include <adim/world.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace adim {

MapParseError::MapParseError(const std::string& what, int line, int column)
    : std::runtime_error("map:" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      m_line(line),
      m_column(column)
{
}

World::World(int width, int height, std::vector<Terrain> cells)
    : m_width(width), m_height(height), m_cells(std::move(cells))
{
    if (width < 0 || height < 0 || std::size_t(width) * std::size_t(height) != m_cells.size()) {
        throw std::invalid_argument("world dimensions do not match cell count");
    }
}

std::string World::to_text() const
{
    std::string out = std::to_string(m_width) + " " + std::to_string(m_height) + "\n";
    for (int y = 0; y < m_height; ++y) {
        for (int x = 0; x < m_width; ++x) {
            out.push_back(static_cast<char>(at(x, y)));
        }
        out.push_back('\n');
    }
    return out;
}

namespace {

bool parse_int(std::string_view tok, int& out)
{
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) {
                lines.push_back(text.substr(pos));
            }
            break;
        }
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

} // namespace

World load_map(std::string_view text)
{
    const auto lines = split_lines(text);
    if (lines.empty()) {
        throw MapParseError("missing header \"width height\"", 1, 1);
    }

    const auto header = lines[0];
    const auto sp = header.find(' ');
    int width = 0;
    int height = 0;
    if (sp == std::string_view::npos || !parse_int(header.substr(0, sp), width) ||
        !parse_int(header.substr(sp + 1), height) || width <= 0 || height <= 0) {
        throw MapParseError("bad header \"" + std::string(header) + "\"", 1, 1);
    }

    if (lines.size() < std::size_t(height) + 1) {
        throw MapParseError("expected " + std::to_string(height) + " rows, got " +
                                std::to_string(lines.size() - 1),
                            int(lines.size()) + 1, 1);
    }
    for (std::size_t i = std::size_t(height) + 1; i < lines.size(); ++i) {
        if (!lines[i].empty()) {
            throw MapParseError("trailing data after last row", int(i) + 1, 1);
        }
    }

    std::vector<Terrain> cells;
    cells.reserve(std::size_t(width) * std::size_t(height));
    for (int y = 0; y < height; ++y) {
        const auto row = lines[std::size_t(y) + 1];
        const int line_no = y + 2;
        if (row.size() != std::size_t(width)) {
            throw MapParseError("row length " + std::to_string(row.size()) + " != width " +
                                    std::to_string(width),
                                line_no, int(std::min(row.size(), std::size_t(width))) + 1);
        }
        for (int x = 0; x < width; ++x) {
            const char c = row[std::size_t(x)];
            switch (c) {
            case '.':
            case '#':
            case '~':
            case '%':
                cells.push_back(static_cast<Terrain>(c));
                break;
            default:
                throw MapParseError(std::string("unknown terrain '") + c + "'", line_no, x + 1);
            }
        }
    }
    return World(width, height, std::move(cells));
}

World load_map_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open map file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_map(ss.str());
}

CostTable::CostTable(const Values& v) : m_v(v)
{
    const std::array<std::pair<const char*, Cost>, 7> all{ {
        { "walk_step", v.walk_step },
        { "rotate", v.rotate },
        { "crawl_step", v.crawl_step },
        { "stance_change", v.stance_change },
        { "rep_switch", v.rep_switch },
        { "rubble_substep", v.rubble_substep },
        { "weight_shift", v.weight_shift },
    } };
    for (const auto& [name, c] : all) {
        if (c <= 0) {
            throw std::invalid_argument(std::string("cost ") + name + " must be > 0");
        }
    }
    // Low-dimensional walking crosses rubble at walk_step and switches
    // representation at rep_switch; both must not exceed the full-body price.
    if (v.walk_step > v.rubble_substep) {
        throw std::invalid_argument("walk_step must not exceed rubble_substep");
    }
    if (v.rep_switch > v.stance_change) {
        throw std::invalid_argument("rep_switch must not exceed stance_change");
    }
}

Cost CostTable::min_move() const
{
    return std::min({ m_v.walk_step, m_v.crawl_step, m_v.rubble_substep });
}

bool CostTable::operator==(const CostTable& o) const
{
    const auto& a = m_v;
    const auto& b = o.m_v;
    return a.walk_step == b.walk_step && a.rotate == b.rotate && a.crawl_step == b.crawl_step &&
           a.stance_change == b.stance_change && a.rep_switch == b.rep_switch &&
           a.rubble_substep == b.rubble_substep && a.weight_shift == b.weight_shift;
}

void check_goal(const World& w, const GoalSpec& g)
{
    if (!w.in_bounds(g.cell) || w.at(g.cell) == Terrain::WALL) {
        throw ContractViolation("goal cell (" + std::to_string(g.cell.x) + "," +
                                std::to_string(g.cell.y) + ") is not traversable");
    }
}

} // namespace adim

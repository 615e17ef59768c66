#ifndef ADIM_WORLD_HPP
#define ADIM_WORLD_HPP

#include <adim/types.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adim {

enum class Terrain : char {
    FREE = '.',
    WALL = '#',
    LOW = '~',
    RUBBLE = '%',
};

/// Map parse failure. Line and column are 1-based and refer to the input text.
class MapParseError : public std::runtime_error
{
public:
    MapParseError(const std::string& what, int line, int column);

    int line() const { return m_line; }
    int column() const { return m_column; }

private:
    int m_line;
    int m_column;
};

/// Row-major terrain grid. Anything outside the grid reads as WALL.
class World
{
public:
    World() = default;
    World(int width, int height, std::vector<Terrain> cells);

    int width() const { return m_width; }
    int height() const { return m_height; }

    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < m_width && y < m_height; }
    bool in_bounds(Cell c) const { return in_bounds(c.x, c.y); }

    Terrain at(int x, int y) const
    {
        return in_bounds(x, y) ? m_cells[std::size_t(y) * std::size_t(m_width) + std::size_t(x)]
                               : Terrain::WALL;
    }
    Terrain at(Cell c) const { return at(c.x, c.y); }

    std::size_t index(Cell c) const { return std::size_t(c.y) * std::size_t(m_width) + std::size_t(c.x); }
    std::size_t cell_count() const { return m_cells.size(); }

    /// Serializes back to the map text format.
    std::string to_text() const;

    bool operator==(const World&) const = default;

private:
    int m_width = 0;
    int m_height = 0;
    std::vector<Terrain> m_cells;
};

/// Parses "width height" followed by `height` rows of terrain characters.
World load_map(std::string_view text);
World load_map_file(const std::string& path);

/// Primitive costs. All entries are positive integers; construction rejects
/// tables under which the low-dimensional graphs could overestimate the
/// full-dimensional cost.
class CostTable
{
public:
    struct Values
    {
        Cost walk_step = 2;
        Cost rotate = 1;
        Cost crawl_step = 3;
        Cost stance_change = 5;
        Cost rep_switch = 5;
        Cost rubble_substep = 4;
        Cost weight_shift = 1;
    };

    CostTable() : CostTable(Values{}) {}
    explicit CostTable(const Values& v);

    Cost walk_step() const { return m_v.walk_step; }
    Cost rotate() const { return m_v.rotate; }
    Cost crawl_step() const { return m_v.crawl_step; }
    Cost stance_change() const { return m_v.stance_change; }
    Cost rep_switch() const { return m_v.rep_switch; }
    Cost rubble_substep() const { return m_v.rubble_substep; }
    Cost weight_shift() const { return m_v.weight_shift; }

    const Values& values() const { return m_v; }

    /// Cheapest cost of any transition that changes the cell.
    Cost min_move() const;

    bool operator==(const CostTable& o) const;

private:
    Values m_v;
};

/// Goal set: every state, of any representation, located at `cell`.
struct GoalSpec
{
    Cell cell;
};

/// Throws ContractViolation when the goal cell is out of bounds or a wall.
void check_goal(const World& w, const GoalSpec& g);

} // namespace adim

#endif

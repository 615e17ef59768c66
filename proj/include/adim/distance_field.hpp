#ifndef ADIM_DISTANCE_FIELD_HPP
#define ADIM_DISTANCE_FIELD_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <functional>
#include <vector>

namespace adim {

/// Cost-to-goal for every cell of a world, kInfiniteCost where unreachable.
class DistanceField
{
public:
    DistanceField() = default;
    DistanceField(int width, int height, std::vector<Cost> dist)
        : m_width(width), m_height(height), m_dist(std::move(dist))
    {
    }

    Cost at(Cell c) const
    {
        if (c.x < 0 || c.y < 0 || c.x >= m_width || c.y >= m_height) {
            return kInfiniteCost;
        }
        return m_dist[std::size_t(c.y) * std::size_t(m_width) + std::size_t(c.x)];
    }

    int width() const { return m_width; }
    int height() const { return m_height; }
    const std::vector<Cost>& values() const { return m_dist; }

private:
    int m_width = 0;
    int m_height = 0;
    std::vector<Cost> m_dist;
};

struct GridEdge
{
    Cell from;
    Cell to;
    Cost cost = 0;
};

struct GridGraphSpec
{
    bool eight_connected = true;
    /// Cells that may be occupied.
    std::function<bool(Cell)> passable;
    /// Cost of moving between two adjacent passable cells.
    std::function<Cost(Cell, Cell)> move_cost;
    /// Additional directed edges (not necessarily between neighbours).
    std::vector<GridEdge> extra;
};

/// Backward Dijkstra from `goal`: value at c is the cheapest cost from c to
/// the goal cell.
DistanceField dijkstra_to(const World& w, Cell goal, const GridGraphSpec& spec);

} // namespace adim

#endif

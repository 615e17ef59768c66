#include <adim/distance_field.hpp>

#include <queue>

namespace adim {

DistanceField dijkstra_to(const World& w, Cell goal, const GridGraphSpec& spec)
{
    const int W = w.width();
    const int H = w.height();
    std::vector<Cost> dist(std::size_t(W) * std::size_t(H), kInfiniteCost);
    if (!w.in_bounds(goal) || !spec.passable(goal)) {
        return DistanceField(W, H, std::move(dist));
    }

    // reverse adjacency of the extra edges, indexed by target cell
    std::vector<std::vector<std::pair<Cell, Cost>>> into(dist.size());
    for (const auto& e : spec.extra) {
        if (w.in_bounds(e.from) && w.in_bounds(e.to)) {
            into[w.index(e.to)].push_back({ e.from, e.cost });
        }
    }

    using Item = std::pair<Cost, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[w.index(goal)] = 0;
    open.push({ 0, w.index(goal) });

    auto relax = [&](Cell u, Cost d) {
        auto& du = dist[w.index(u)];
        if (d < du) {
            du = d;
            open.push({ d, w.index(u) });
        }
    };

    while (!open.empty()) {
        const auto [d, vi] = open.top();
        open.pop();
        if (d != dist[vi]) {
            continue;
        }
        const Cell v{ int(vi % std::size_t(W)), int(vi / std::size_t(W)) };
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if ((dx == 0 && dy == 0) || (!spec.eight_connected && dx != 0 && dy != 0)) {
                    continue;
                }
                const Cell u{ v.x + dx, v.y + dy };
                if (!w.in_bounds(u) || !spec.passable(u)) {
                    continue;
                }
                relax(u, d + spec.move_cost(u, v));
            }
        }
        for (const auto& [u, c] : into[vi]) {
            relax(u, d + c);
        }
    }
    return DistanceField(W, H, std::move(dist));
}

} // namespace adim

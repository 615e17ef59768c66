#include <adim/mapgen.hpp>

#include <random>

namespace adim {

World gen_random_map(std::uint64_t seed, int width, int height, const TerrainDensities& d,
                     const std::vector<Cell>& keep_free)
{
    if (width < 1 || height < 1) {
        throw ContractViolation("gen_random_map: empty map");
    }
    if (d.wall < 0 || d.low < 0 || d.rubble < 0 || d.wall + d.low + d.rubble > 1.0 + 1e-12) {
        throw ContractViolation("gen_random_map: densities must be >= 0 and sum to <= 1");
    }
    std::mt19937_64 rng(seed);
    // raw engine output keeps the stream identical across standard libraries
    auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

    std::vector<Terrain> cells(std::size_t(width) * std::size_t(height), Terrain::FREE);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            Terrain& t = cells[std::size_t(y) * std::size_t(width) + std::size_t(x)];
            const double r = uniform();
            if (x == 0 || y == 0 || x == width - 1 || y == height - 1) {
                t = Terrain::WALL;
            } else if (r < d.wall) {
                t = Terrain::WALL;
            } else if (r < d.wall + d.low) {
                t = Terrain::LOW;
            } else if (r < d.wall + d.low + d.rubble) {
                t = Terrain::RUBBLE;
            }
        }
    }
    for (const auto& c : keep_free) {
        if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height) {
            throw ContractViolation("gen_random_map: forced cell out of bounds");
        }
        cells[std::size_t(c.y) * std::size_t(width) + std::size_t(c.x)] = Terrain::FREE;
    }
    return World(width, height, std::move(cells));
}

} // namespace adim

#ifndef ADIM_MAPGEN_HPP
#define ADIM_MAPGEN_HPP

#include <adim/types.hpp>
#include <adim/world.hpp>

#include <cstdint>
#include <vector>

namespace adim {

/// Fraction of interior cells given each terrain; the rest is FREE.
struct TerrainDensities
{
    double wall = 0.0;
    double low = 0.0;
    double rubble = 0.0;
};

/// Seeded random map with a WALL border. Cells listed in `keep_free` are
/// forced FREE. Identical arguments give identical maps on every platform.
World gen_random_map(std::uint64_t seed, int width, int height, const TerrainDensities& d,
                     const std::vector<Cell>& keep_free = {});

} // namespace adim

#endif

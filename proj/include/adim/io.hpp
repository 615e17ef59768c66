#ifndef ADIM_IO_HPP
#define ADIM_IO_HPP

#include <adim/adaptive_planner.hpp>
#include <adim/executive.hpp>
#include <adim/types.hpp>
#include <adim/world.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adim {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kResultFormat = "adim-result/1";

class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A planning query. File paths are resolved against the scenario's
/// directory when loaded from disk.
struct Scenario
{
    std::string map;
    HDState start;
    GoalSpec goal;
    AdaptivePlanParams params;
    CostTable::Values costs;
    std::optional<std::uint64_t> lookahead;
    std::uint64_t seed = 0;
    std::vector<std::string> demos;
};

Scenario parse_scenario(const Json& j, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::string& path);
Json scenario_to_json(const Scenario& s);

Json to_json(const HDState& s);
Json to_json(const AnyState& s);
HDState hd_state_from_json(const Json& j);
Json to_json(const Path& p);
Path path_from_json(const Json& j);

struct RunRecord
{
    Scenario scenario;
    World world;
    AdaptiveResult result;
    std::optional<ExecTrace> trace;
    /// Emit wall-clock fields (makes the file non-reproducible).
    bool include_timing = false;
};

Json result_to_json(const RunRecord& r);

/// Fields of a result file needed to re-check its path.
struct StoredResult
{
    std::string outcome;
    World world;
    CostTable costs;
    HDState start;
    GoalSpec goal;
    Cost snap_cost_per_field = 1;
    std::optional<Path> path;
    std::vector<HDRegion> regions;
};

StoredResult parse_result(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// SVG overlay: terrain, regions (dashed), path coloured per controller.
std::string render_svg(const World& w, const std::optional<Path>& path,
                       const std::vector<HDRegion>& regions);

} // namespace adim

#endif

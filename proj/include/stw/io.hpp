#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stw/arrangement.hpp"
#include "stw/circles.hpp"
#include "stw/config.hpp"
#include "stw/recipe.hpp"

namespace stw {

inline constexpr const char* kToolVersion = "0.1.0";

// command line, slack constants, seeds, input digests, tool version; wall-clock
// time is recorded only on request so reruns stay byte-identical
struct RunManifest {
    std::string command;
    SlackParams slack;
    std::vector<std::uint64_t> seeds;
    std::vector<std::pair<std::string, std::string>> input_digests;  // (path, fnv64)
    std::optional<std::string> wall_clock;

    nlohmann::json to_json() const;
};

std::string fnv1a_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

nlohmann::json slack_to_json(const SlackParams& s);

nlohmann::json config_to_json(const Configuration& c);
Configuration config_from_json(const nlohmann::json& j);

nlohmann::json circle_config_to_json(const CircleConfig& c);
CircleConfig circle_config_from_json(const nlohmann::json& j);

nlohmann::json recipe_params_to_json(const RecipeParams& p);
RecipeParams recipe_params_from_json(const nlohmann::json& j);

nlohmann::json map_to_json(const ProjectiveMap& m);
ProjectiveMap map_from_json(const nlohmann::json& j);

// CSV report bodies (no manifest lines); callers prepend "# ..." comments
std::string richness_csv(const RichnessProfile& r);
std::string arrangement_csv(const Arrangement& a);

// render-only precision: rationals printed at 12 significant digits
std::string arrangement_svg(const Arrangement& a, const std::vector<Point2>& overlay);
std::string circles_svg(const CircleConfig& cfg);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace stw

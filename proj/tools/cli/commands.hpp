#pragma once

#include <iosfwd>
#include <json.hpp>

#include "config.hpp"

namespace heunwell::cli {

inline constexpr const char* kVersion = "0.1.0";

// Each command writes its artifacts plus manifest.json into cfg.output_dir
// and returns the JSON summary it wrote.
nlohmann::json cmd_spectrum(const RunConfig& cfg, const nlohmann::json& resolved);
nlohmann::json cmd_eigenfunctions(const RunConfig& cfg, const nlohmann::json& resolved);
nlohmann::json cmd_evolve(const RunConfig& cfg, const nlohmann::json& resolved);
nlohmann::json cmd_wigner(const RunConfig& cfg, const nlohmann::json& resolved);
nlohmann::json cmd_validate(const RunConfig& cfg, const nlohmann::json& resolved);

/// Full command-line entry point. Exit codes: 0 ok, 2 invalid input,
/// 3 numerical failure, 1 anything else.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace heunwell::cli

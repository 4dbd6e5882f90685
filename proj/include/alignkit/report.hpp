#pragma once
// Report emission shared by the CLI subcommands: every report records the
// tool name, seed, configuration, and content digests of its inputs so a
// pipeline run is auditable and reruns are byte-comparable.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace align {

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

nlohmann::json make_report(const std::string& tool, std::uint64_t seed,
                           const nlohmann::json& config,
                           const std::vector<std::string>& input_paths);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace align

#include "alignkit/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace align {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

std::string digest_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return fnv1a64_hex(ss.str());
}

nlohmann::json make_report(const std::string& tool, std::uint64_t seed,
                           const nlohmann::json& config,
                           const std::vector<std::string>& input_paths) {
    nlohmann::json j;
    j["tool"] = tool;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = nlohmann::json::object();
    for (const auto& p : input_paths) j["inputs"][p] = digest_file(p);
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

}  // namespace align

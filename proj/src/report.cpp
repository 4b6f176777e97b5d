#include "stablab/report.hpp"

#include <iomanip>
#include <sstream>

namespace stablab {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a_hex(std::string_view data) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(data);
    return out.str();
}

std::string RunReport::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["results"] = results;
    if (include_timing) j["timing_ms"] = elapsed_ms;
    return j.dump(2);
}

}  // namespace stablab

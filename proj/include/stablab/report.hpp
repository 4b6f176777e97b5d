#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace stablab {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a digest used to fingerprint CLI inputs in reports.
std::uint64_t fnv1a(std::string_view data);
std::string fnv1a_hex(std::string_view data);

/// Deterministically serializable run summary: keys keep insertion order,
/// timing is only emitted on request so reports can be compared byte for
/// byte.
struct RunReport {
    std::string command;
    std::string input_digest;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    double elapsed_ms = 0.0;

    std::string to_json(bool include_timing) const;
};

}  // namespace stablab

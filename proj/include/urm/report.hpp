#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

// Machine-readable outcome of one CLI invocation; schema "urm-report/1".
struct RunReport {
    std::string command;
    std::string input_digest;
    std::string algorithm;
    std::optional<int> size;
    std::optional<std::vector<Edge>> witness;
    std::optional<bool> optimal;
    std::optional<bool> accepted;
    std::map<std::string, std::uint64_t> counters;
    std::map<std::string, double> timing_ms;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> notes;

    std::string to_json() const;
};

// FNV-1a over the raw bytes, rendered as fnv1a:<16 hex digits>.
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::string& path);

} // namespace urm

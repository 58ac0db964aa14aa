#include "urm/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "urm/errors.hpp"

namespace urm {

std::string RunReport::to_json() const {
    nlohmann::json doc;
    doc["schema"] = "urm-report/1";
    doc["command"] = command;
    doc["input_digest"] = input_digest;
    doc["algorithm"] = algorithm;
    nlohmann::json result = nlohmann::json::object();
    if (size) result["size"] = *size;
    if (optimal) result["optimal"] = *optimal;
    if (accepted) result["accepted"] = *accepted;
    if (witness) {
        nlohmann::json edges = nlohmann::json::array();
        for (const Edge& e : *witness) edges.push_back({e.u, e.v});
        result["witness"] = edges;
    }
    doc["result"] = result;
    doc["counters"] = counters;
    doc["timing_ms"] = timing_ms;
    if (seed) doc["seed"] = *seed;
    if (!notes.empty()) doc["notes"] = notes;
    return doc.dump(2);
}

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << "fnv1a:" << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return digest_bytes(buf.str());
}

} // namespace urm

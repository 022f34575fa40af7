#pragma once

#include "gridweaver/transfer.hpp"
#include "gridweaver/verify.hpp"

namespace gw {

nlohmann::json to_json(const Ray& r);
Ray ray_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DivergenceCertificate& cert);
DivergenceCertificate cert_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SubdivisionMap& m);
SubdivisionMap subdivision_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MinorModel& m);
MinorModel minor_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CheckReport& rep);
nlohmann::json to_json(const RefutationWitness& w);
nlohmann::json to_json(const CoarseEmbedding& emb);

/// Reproducibility header carried by every output file.
struct RunConfig {
    std::string command;
    nlohmann::json graph;  // family spec
    nlohmann::json args;   // command parameters
    int seed = 0;          // reserved; nothing is random

    nlohmann::json to_meta() const;
};

/// {"meta": ..., "type": ..., "payload": ...}, stable key order, one
/// trailing newline; reruns with the same config are byte-identical.
void write_artifact(const std::string& path, const std::string& type, const RunConfig& cfg,
                    const nlohmann::json& payload);
nlohmann::json read_artifact(const std::string& path);

/// Undirected DOT rendering of a subdivision's host image.
std::string subdivision_to_dot(const SubdivisionMap& m);

}  // namespace gw

#pragma once

// JSON form of reports and certificates.  Every document carries
// "schema": "means-sharp/1" and the manifest of the run that produced it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include "msharp/certifier.hpp"
#include "msharp/verifier.hpp"

namespace msharp {

inline constexpr const char* kSchema = "means-sharp/1";

const char* library_version();

struct RunManifest {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
};

void to_json(nlohmann::ordered_json& j, const RunManifest& m);
void to_json(nlohmann::ordered_json& j, const Interval& v);
void to_json(nlohmann::ordered_json& j, const CounterexampleReport& r);
void to_json(nlohmann::ordered_json& j, const InequalityCheck& c);
void to_json(nlohmann::ordered_json& j, const PropertyResult& r);
void to_json(nlohmann::ordered_json& j, const LemmaReport& r);
void to_json(nlohmann::ordered_json& j, const SeiffertProbe& p);
void to_json(nlohmann::ordered_json& j, const SeiffertReport& r);
void to_json(nlohmann::ordered_json& j, const CertificateCell& c);
void to_json(nlohmann::ordered_json& j, const Certificate& c);
void to_json(nlohmann::ordered_json& j, const Unknown& u);
void to_json(nlohmann::ordered_json& j, const NamedResult& r);
void to_json(nlohmann::ordered_json& j, const LimitCheck& l);
void to_json(nlohmann::ordered_json& j, const TheoremCertification& t);

nlohmann::ordered_json certify_result_json(const CertifyResult& r);

/// Inverse of to_json(Certificate); throws std::invalid_argument on a
/// malformed document.
Certificate certificate_from_json(const nlohmann::ordered_json& j);

/// {"schema", "manifest", then the members of body}.
nlohmann::ordered_json make_document(const RunManifest& m, const nlohmann::ordered_json& body);

}  // namespace msharp

#pragma once

// Canonical report serialization: sorted keys, two-space indentation,
// integers as JSON numbers within 64 bits and decimal strings beyond,
// newline-terminated.

#include <string>

#include <json.hpp>

#include "gammalat/lattices.hpp"

namespace gammalat::cli {

using Json = nlohmann::json;

inline constexpr const char* tool_name = "gammalat";
inline constexpr const char* tool_version = "0.1.0";

std::string canonical(const Json& j);
std::string sha256_hex(const std::string& bytes);

Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const AbelianGroupInvariants& a);  // "[2,2]"

// Digest of the fingerprint's canonical text, one line per class.
std::string fingerprint_digest(const CohFingerprint& f);

}  // namespace gammalat::cli

// config.hpp
// Key-value run configuration: parsing, defaults, and overrides.
//
// Schema (one "key = value" per line, '#' comments):
//   protocol.kind            BB84 | MUB | CHAU15 | CHAU02        (required)
//   protocol.d               dimension                (required; CHAU02: 2)
//   protocol.m               number of bases  (default: BB84 2, MUB d+1, CHAU02 3)
//   protocol.bias            comma-separated basis probabilities (BB84/MUB)
//   channel.kind             IDENTITY | DEPOLARIZING | INTERCEPT_RESEND | CLONER
//   channel.q                depolarizing strength            (DEPOLARIZING)
//   channel.eve_m            Eve's MUB count          (INTERCEPT_RESEND only;
//                            default: the protocol's m, or 2 for CHAU15)
//   run.pulses               default 100000
//   run.sample_fraction      default 0.1
//   run.seed                 default 1
//   run.workers              default 1

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkd/experiment.hpp"

namespace qkd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw "key = value" lines to an ordered map. Rejects malformed lines and
/// duplicate keys.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Builds and validates a RunConfig; unknown keys are rejected by name, and
/// violations are reported with their field path.
RunConfig config_from_entries(const std::map<std::string, std::string>& entries);

RunConfig parse_config(const std::string& text);

/// File text plus "key=value" override strings (applied after parsing).
RunConfig parse_config_with_overrides(const std::string& text,
                                      const std::vector<std::string>& overrides);

}  // namespace qkd

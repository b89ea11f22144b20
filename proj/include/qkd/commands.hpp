// commands.hpp
// Subcommand implementations behind the qkdsim CLI. Kept in the library so
// output determinism can be tested against string streams.
//
// Exit codes: 0 ok, 1 usage, 2 validation failure, 3 numerical self-check
// failure.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qkd/experiment.hpp"

namespace qkd {

enum class OutputFormat { Csv, Json, Table };

OutputFormat output_format_from_string(const std::string& s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSelfCheck = 3;

/// Runs one experiment and emits the report. If `transcript_path` is
/// nonempty, writes one JSON object per pulse ({idx, prep, meas, kept}).
int cmd_run(const RunConfig& config, OutputFormat format, std::ostream& out,
            std::ostream& err, const std::string& transcript_path = "");

int cmd_sweep(const RunConfig& base, const std::string& parameter,
              const std::vector<double>& values, OutputFormat format, std::ostream& out,
              std::ostream& err);

/// Analytic threshold / R(0) table: columns protocol,d,e_max,R0.
int cmd_thresholds(OutputFormat format, std::ostream& out, std::ostream& err);

/// Dumps mub_set(d, m) as JSON plus an unbiasedness self-check summary on
/// `err`. Self-check failure exits 3.
int cmd_mubs(int d, int m, std::ostream& out, std::ostream& err);

/// Desk-scale protocol comparison table: one simulated row per protocol
/// configuration (Chau02, Chau15 d=4/8, BB84 d=2/4/8, MUB d=2/4), with
/// analytic threshold, R(0), sift-rate columns, and simulated QBER/sift
/// columns. `q` adds depolarizing noise to every row's channel.
int cmd_compare(std::uint64_t pulses, std::uint64_t seed, double q, OutputFormat format,
                std::ostream& out, std::ostream& err);

}  // namespace qkd

// experiment.hpp
// Seeded Monte Carlo experiment engine: runs a (protocol x channel)
// configuration over N pulses and aggregates statistics into a RunReport.
//
// Reproducibility contract: every pulse consumes randomness only from its
// own substream derive_substream(master_seed, pulse_index), and parameter
// estimation from a dedicated reserved stream, so the report (wall time
// aside) is a pure function of the RunConfig regardless of worker count or
// scheduling.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qkd/channel.hpp"
#include "qkd/protocol.hpp"

namespace qkd {

struct RunConfig {
    ProtocolSpec protocol;
    ChannelSpec channel;
    std::uint64_t num_pulses = 100000;
    double sample_fraction = 0.1;   // share of the sifted key disclosed
    std::uint64_t master_seed = 1;
    int workers = 1;                // informational hint; never affects results

    void validate() const;
};

struct RunReport {
    RunConfig config;
    std::uint64_t pulses = 0;
    std::uint64_t sifted_len = 0;
    double sift_rate = 0.0;
    double qber_estimate = 0.0;
    double qber_exact = 0.0;        // full-census mismatch over the sifted key
    std::uint64_t disclosed = 0;
    std::optional<double> key_rate; // analytic rate at qber_exact (see README)
    double security_threshold = 0.0;
    bool secure = false;            // qber_exact < security_threshold
    bool insufficient_data = false; // zero sifted symbols
    std::uint64_t final_key_dits = 0;
    double final_key_bits = 0.0;
    double elapsed_ms = 0.0;        // excluded from machine-readable output
};

/// One pulse of an exported transcript.
struct PulseRecord {
    PrepRecord prep;
    MeasRecord meas;
    bool kept = false;
};

RunReport run_experiment(const RunConfig& config);
/// As above, also captures the per-pulse transcript.
RunReport run_experiment(const RunConfig& config, std::vector<PulseRecord>* transcript);

enum class SweepParameter { DepolarizingQ, Dimension, NumBases };

SweepParameter sweep_parameter_from_string(const std::string& s);
const char* to_string(SweepParameter p);

/// Runs one experiment per value, substituting the chosen parameter into the
/// base config. Every substituted config is validated before any run starts.
/// Point i runs with master seed mix_seed(base.master_seed, i), so single
/// points can be reproduced in isolation. Sweeping NumBases under an
/// intercept-resend channel resizes Eve's basis set along with the parties'.
std::vector<RunReport> sweep(const RunConfig& base, SweepParameter parameter,
                             const std::vector<double>& values);

// --- serialization -------------------------------------------------------

/// Full-precision JSON form (schema in README). Timing is omitted.
nlohmann::json report_to_json(const RunReport& report);
nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json pulse_to_json(std::size_t idx, const PulseRecord& pulse);

/// Fixed-order CSV (6 significant digits, decimal dot). Timing is omitted.
std::string report_csv_header();
std::string report_to_csv_row(const RunReport& report);

}  // namespace qkd

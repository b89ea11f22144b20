#include "qkd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qkd/analysis.hpp"
#include "qkd/textio.hpp"

namespace qkd {

namespace {

// Reserved substream index for parameter estimation; pulse indices are
// 0..num_pulses-1 and can never reach it.
constexpr std::uint64_t kEstimationStream = std::numeric_limits<std::uint64_t>::max();

double security_bound(const ProtocolSpec& spec) {
    switch (spec.kind) {
        case ProtocolKind::BB84:
        case ProtocolKind::MUB:
            return threshold(spec.kind, spec.dim);
        case ProtocolKind::CHAU15:
            return chau_tolerances().chau15;
        case ProtocolKind::CHAU02:
            return chau_tolerances().chau02;
    }
    throw std::logic_error("security_bound: unhandled kind");
}

std::optional<double> analytic_rate(const ProtocolSpec& spec, double qber, bool secure) {
    switch (spec.kind) {
        case ProtocolKind::BB84:
            return keyrate_bb84(qber, spec.dim);
        case ProtocolKind::MUB:
            try {
                return keyrate_mub(qber, spec.dim);
            } catch (const std::domain_error&) {
                return std::nullopt;  // qber beyond the formula's domain
            }
        case ProtocolKind::CHAU15:
        case ProtocolKind::CHAU02:
            // Only R(0) = 1 and the tolerance are published for these, so the
            // report carries a nominal gate value.
            return secure ? 1.0 : 0.0;
    }
    return std::nullopt;
}

}  // namespace

void RunConfig::validate() const {
    protocol.validate();
    channel.validate();
    if (num_pulses < 1) {
        throw std::invalid_argument("run.pulses: must be >= 1");
    }
    if (sample_fraction <= 0.0 || sample_fraction > 1.0) {
        throw std::invalid_argument("run.sample_fraction: must lie in (0, 1]");
    }
    if (workers < 1) {
        throw std::invalid_argument("run.workers: must be >= 1");
    }
}

RunReport run_experiment(const RunConfig& config) {
    return run_experiment(config, nullptr);
}

RunReport run_experiment(const RunConfig& config, std::vector<PulseRecord>* transcript) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const Protocol protocol(config.protocol);
    const Channel channel(config.channel, config.protocol.dim);
    const std::uint64_t n = config.num_pulses;

    std::vector<PrepRecord> preps(n);
    std::vector<MeasRecord> meas(n);

    const auto simulate_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = derive_substream(config.master_seed, i);
            auto [prep, state] = protocol.prepare(rng);
            auto sent = channel.transmit(state, rng);
            preps[i] = prep;
            meas[i] = protocol.measure(sent.state, rng);
        }
    };

    const int workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(config.workers), n);
    if (workers <= 1) {
        simulate_range(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        const std::uint64_t chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t end = std::min(n, begin + chunk);
            if (begin < end) {
                pool.emplace_back(simulate_range, begin, end);
            }
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    const SiftResult sifted = protocol.sift(preps, meas);

    RunReport report;
    report.config = config;
    report.pulses = n;
    report.sifted_len = sifted.alice_dits.size();
    report.sift_rate = sifted.sift_rate;
    report.security_threshold = security_bound(config.protocol);

    if (sifted.alice_dits.empty()) {
        report.insufficient_data = true;
    } else {
        Rng est_rng = derive_substream(config.master_seed, kEstimationStream);
        const QberEstimate est = protocol.estimate_qber(sifted, config.sample_fraction, est_rng);
        report.qber_estimate = est.qber;
        report.disclosed = est.disclosed.size();

        std::uint64_t mismatches = 0;
        for (size_t k = 0; k < sifted.alice_dits.size(); ++k) {
            if (sifted.alice_dits[k] != sifted.bob_dits[k]) {
                ++mismatches;
            }
        }
        report.qber_exact =
            static_cast<double>(mismatches) / static_cast<double>(sifted.alice_dits.size());
        report.secure = report.qber_exact < report.security_threshold;
        report.key_rate = analytic_rate(config.protocol, report.qber_exact, report.secure);
        report.final_key_dits = report.sifted_len - report.disclosed;
        report.final_key_bits =
            static_cast<double>(report.final_key_dits) * raw_bits_per_symbol(config.protocol);
    }

    if (transcript) {
        transcript->resize(n);
        size_t next_kept = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            bool kept = false;
            if (next_kept < sifted.kept_indices.size() && sifted.kept_indices[next_kept] == i) {
                kept = true;
                ++next_kept;
            }
            (*transcript)[i] = PulseRecord{preps[i], meas[i], kept};
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

SweepParameter sweep_parameter_from_string(const std::string& s) {
    if (s == "q") return SweepParameter::DepolarizingQ;
    if (s == "d") return SweepParameter::Dimension;
    if (s == "m") return SweepParameter::NumBases;
    throw std::invalid_argument("unknown sweep parameter '" + s + "' (expected q, d or m)");
}

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::DepolarizingQ: return "q";
        case SweepParameter::Dimension: return "d";
        case SweepParameter::NumBases: return "m";
    }
    return "?";
}

namespace {

RunConfig substitute(const RunConfig& base, SweepParameter parameter, double value) {
    RunConfig cfg = base;
    switch (parameter) {
        case SweepParameter::DepolarizingQ:
            if (cfg.channel.kind != ChannelKind::DEPOLARIZING) {
                throw std::invalid_argument("sweep q: base channel must be DEPOLARIZING");
            }
            cfg.channel.depolarizing_q = value;
            break;
        case SweepParameter::Dimension: {
            const int d = static_cast<int>(value);
            if (static_cast<double>(d) != value) {
                throw std::invalid_argument("sweep d: values must be integers");
            }
            cfg.protocol.dim = d;
            break;
        }
        case SweepParameter::NumBases: {
            const int m = static_cast<int>(value);
            if (static_cast<double>(m) != value) {
                throw std::invalid_argument("sweep m: values must be integers");
            }
            cfg.protocol.num_bases = m;
            if (!cfg.protocol.basis_bias.empty()) {
                throw std::invalid_argument("sweep m: clear protocol.bias first");
            }
            if (cfg.channel.kind == ChannelKind::INTERCEPT_RESEND) {
                cfg.channel.eve_num_bases = m;
            }
            break;
        }
    }
    return cfg;
}

}  // namespace

std::vector<RunReport> sweep(const RunConfig& base, SweepParameter parameter,
                             const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("sweep: no values given");
    }
    std::vector<RunConfig> configs;
    configs.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        RunConfig cfg = substitute(base, parameter, values[i]);
        cfg.master_seed = mix_seed(base.master_seed, i);
        cfg.validate();  // abort before running anything
        configs.push_back(std::move(cfg));
    }
    std::vector<RunReport> reports;
    reports.reserve(configs.size());
    for (const auto& cfg : configs) {
        reports.push_back(run_experiment(cfg));
    }
    return reports;
}

// --- serialization -------------------------------------------------------

nlohmann::json config_to_json(const RunConfig& config) {
    nlohmann::json j;
    j["protocol"]["kind"] = to_string(config.protocol.kind);
    j["protocol"]["d"] = config.protocol.dim;
    j["protocol"]["m"] = config.protocol.num_bases;
    if (!config.protocol.basis_bias.empty()) {
        j["protocol"]["bias"] = config.protocol.basis_bias;
    }
    j["channel"]["kind"] = to_string(config.channel.kind);
    if (config.channel.kind == ChannelKind::DEPOLARIZING) {
        j["channel"]["q"] = config.channel.depolarizing_q;
    }
    if (config.channel.kind == ChannelKind::INTERCEPT_RESEND) {
        j["channel"]["eve_m"] = config.channel.eve_num_bases;
    }
    j["pulses"] = config.num_pulses;
    j["sample_fraction"] = config.sample_fraction;
    j["seed"] = config.master_seed;
    j["workers"] = config.workers;
    return j;
}

nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["config"] = config_to_json(report.config);
    j["pulses"] = report.pulses;
    j["sifted"] = report.sifted_len;
    j["sift_rate"] = report.sift_rate;
    j["qber_estimate"] = report.qber_estimate;
    j["qber_exact"] = report.qber_exact;
    j["disclosed"] = report.disclosed;
    if (report.key_rate) {
        j["key_rate"] = *report.key_rate;
    } else {
        j["key_rate"] = nullptr;
    }
    j["security_threshold"] = report.security_threshold;
    j["secure"] = report.secure;
    j["insufficient_data"] = report.insufficient_data;
    j["final_key_dits"] = report.final_key_dits;
    j["final_key_bits"] = report.final_key_bits;
    return j;
}

nlohmann::json pulse_to_json(std::size_t idx, const PulseRecord& pulse) {
    nlohmann::json j;
    j["idx"] = idx;
    nlohmann::json prep;
    prep["symbol"] = pulse.prep.symbol;
    if (pulse.prep.basis_idx >= 0) {
        prep["basis"] = pulse.prep.basis_idx;
    } else {
        prep["pair"] = {pulse.prep.pair.i, pulse.prep.pair.j};
    }
    j["prep"] = prep;
    nlohmann::json meas;
    if (pulse.meas.basis_idx >= 0) {
        meas["basis"] = pulse.meas.basis_idx;
    } else {
        meas["pair"] = {pulse.meas.pair.i, pulse.meas.pair.j};
    }
    if (pulse.meas.outcome == kInconclusive) {
        meas["outcome"] = "inconclusive";
    } else {
        meas["outcome"] = pulse.meas.outcome;
    }
    j["meas"] = meas;
    j["kept"] = pulse.kept;
    return j;
}

std::string report_csv_header() {
    return "protocol,d,m,channel,q,pulses,seed,sift_rate,qber_estimate,qber_exact,"
           "key_rate,security_threshold,secure,final_key_bits";
}

std::string report_to_csv_row(const RunReport& r) {
    std::ostringstream out;
    out << to_string(r.config.protocol.kind) << ',' << r.config.protocol.dim << ','
        << r.config.protocol.num_bases << ',' << to_string(r.config.channel.kind) << ','
        << format_sig(r.config.channel.depolarizing_q) << ',' << r.pulses << ','
        << r.config.master_seed << ',' << format_sig(r.sift_rate) << ','
        << format_sig(r.qber_estimate) << ',' << format_sig(r.qber_exact) << ','
        << (r.key_rate ? format_sig(*r.key_rate) : std::string("-")) << ','
        << format_sig(r.security_threshold) << ',' << (r.secure ? 1 : 0) << ','
        << format_sig(r.final_key_bits);
    return out.str();
}

}  // namespace qkd

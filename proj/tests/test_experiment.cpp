#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qkd/experiment.hpp"

using namespace qkd;

namespace {

RunConfig base_config(ProtocolSpec protocol, ChannelSpec channel, std::uint64_t seed,
                      std::uint64_t pulses = 100000) {
    RunConfig cfg;
    cfg.protocol = std::move(protocol);
    cfg.channel = channel;
    cfg.num_pulses = pulses;
    cfg.master_seed = seed;
    return cfg;
}

// Everything except wall time.
bool reports_equal(const RunReport& a, const RunReport& b) {
    return report_to_json(a) == report_to_json(b);
}

}  // namespace

TEST_CASE("noiseless BB84 reference run") {
    const auto report = run_experiment(base_config(ProtocolSpec::bb84(2), ChannelSpec::identity(), 3));
    CHECK(report.qber_exact == 0.0);
    CHECK(report.qber_estimate == 0.0);
    CHECK(std::abs(report.sift_rate - 0.5) < 0.005);
    REQUIRE(report.key_rate.has_value());
    CHECK(*report.key_rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.secure);
    CHECK(report.final_key_dits == report.sifted_len - report.disclosed);
    CHECK(report.final_key_bits == doctest::Approx(static_cast<double>(report.final_key_dits)));
}

TEST_CASE("intercept-resend run is insecure at 25% QBER") {
    const auto report = run_experiment(
        base_config(ProtocolSpec::bb84(2), ChannelSpec::intercept_resend(2), 5));
    CHECK(std::abs(report.qber_exact - 0.25) < 0.005);
    CHECK_FALSE(report.secure);
}

TEST_CASE("cloner run at d=7 exceeds the coherent bound") {
    const auto report =
        run_experiment(base_config(ProtocolSpec::bb84(7), ChannelSpec::cloner(), 8));
    CHECK(std::abs(report.qber_exact - 0.375) < 0.005);
    CHECK(report.qber_exact > 0.2372);
    CHECK_FALSE(report.secure);
}

TEST_CASE("reports are bit-identical across worker counts") {
    auto cfg = base_config(ProtocolSpec::mub(4, 5), ChannelSpec::depolarizing(0.1), 99, 20000);
    cfg.workers = 1;
    std::vector<PulseRecord> t1;
    const auto serial = run_experiment(cfg, &t1);
    cfg.workers = 8;
    std::vector<PulseRecord> t8;
    const auto parallel = run_experiment(cfg, &t8);
    // worker hint is config echo, so compare with it normalized
    auto a = report_to_json(serial);
    auto b = report_to_json(parallel);
    a["config"]["workers"] = 0;
    b["config"]["workers"] = 0;
    CHECK(a == b);
    REQUIRE(t1.size() == t8.size());
    for (size_t i = 0; i < t1.size(); ++i) {
        REQUIRE(pulse_to_json(i, t1[i]) == pulse_to_json(i, t8[i]));
    }
}

TEST_CASE("reports are reproducible for a repeated seed and differ across seeds") {
    const auto cfg = base_config(ProtocolSpec::bb84(4), ChannelSpec::depolarizing(0.2), 1234, 20000);
    CHECK(reports_equal(run_experiment(cfg), run_experiment(cfg)));
    auto other = cfg;
    other.master_seed = 1235;
    const auto r1 = run_experiment(cfg);
    const auto r2 = run_experiment(other);
    CHECK(r1.qber_exact != r2.qber_exact);  // astronomically unlikely to collide
}

TEST_CASE("qber estimate equals the census at sample_fraction 1") {
    auto cfg = base_config(ProtocolSpec::bb84(2), ChannelSpec::depolarizing(0.15), 17, 30000);
    cfg.sample_fraction = 1.0;
    const auto report = run_experiment(cfg);
    CHECK(report.qber_estimate == report.qber_exact);
    CHECK(report.disclosed == report.sifted_len);
    CHECK(report.final_key_dits == 0);
}

TEST_CASE("sweeping depolarizing strength gives nondecreasing QBER") {
    const auto base = base_config(ProtocolSpec::bb84(2), ChannelSpec::depolarizing(0.0), 21, 50000);
    const auto reports = sweep(base, SweepParameter::DepolarizingQ, {0.0, 0.05, 0.10});
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].qber_exact == 0.0);
    CHECK(reports[0].qber_exact <= reports[1].qber_exact);
    CHECK(reports[1].qber_exact <= reports[2].qber_exact);
    // per-point seeds are the documented mix of the master seed
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].config.master_seed == mix_seed(21, i));
    }
}

TEST_CASE("sweeping the dimension with tuned noise reproduces the published key rates") {
    // q = e * d/(d-1) makes the depolarizing QBER match the published
    // experimental error rates.
    const struct {
        int d;
        double e;
        double rate;
    } rows[] = {{2, 0.00628, 0.8901}, {4, 0.0351, 1.4500}, {8, 0.109, 1.3942}};
    for (const auto& row : rows) {
        CAPTURE(row.d);
        const double q = row.e * row.d / (row.d - 1.0);
        const auto report = run_experiment(
            base_config(ProtocolSpec::bb84(row.d), ChannelSpec::depolarizing(q), 33));
        REQUIRE(report.key_rate.has_value());
        CHECK(std::abs(*report.key_rate - row.rate) < 0.02);
    }
}

TEST_CASE("sweeping m under intercept-resend moves QBER from 1/4 to 1/3") {
    auto base = base_config(ProtocolSpec::mub(2, 2), ChannelSpec::intercept_resend(2), 44);
    const auto reports = sweep(base, SweepParameter::NumBases, {2.0, 3.0});
    REQUIRE(reports.size() == 2);
    CHECK(std::abs(reports[0].qber_exact - 0.25) < 0.01);
    CHECK(std::abs(reports[1].qber_exact - 1.0 / 3.0) < 0.01);
}

TEST_CASE("invalid sweep values abort before any run") {
    const auto base = base_config(ProtocolSpec::mub(4, 5), ChannelSpec::identity(), 1, 1000);
    CHECK_THROWS_AS(sweep(base, SweepParameter::DepolarizingQ, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(base, SweepParameter::Dimension, {4.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(base, SweepParameter::Dimension, {4.5}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(base, SweepParameter::NumBases, {}), std::invalid_argument);
}

TEST_CASE("stochastic estimates stay within 3 sigma over 100 seeded repetitions") {
    const std::uint64_t n = 10000;
    const double p = 0.5;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto report =
            run_experiment(base_config(ProtocolSpec::bb84(2), ChannelSpec::identity(), seed, n));
        if (std::abs(report.sift_rate - p) < 3.0 * sigma) {
            ++within;
        }
        CHECK(report.qber_exact == 0.0);
    }
    CHECK(within >= 99);
}

TEST_CASE("zero sifted symbols yields an insufficient-data report") {
    // Single CHAU15 pulse: pairs match only 1/28 of the time, so scan for a
    // seed whose one pulse missed (deterministic once found).
    bool found = false;
    for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
        const auto report =
            run_experiment(base_config(ProtocolSpec::chau15(8), ChannelSpec::identity(), seed, 1));
        if (report.sifted_len == 0) {
            found = true;
            CHECK(report.insufficient_data);
            CHECK(report.final_key_bits == 0.0);
            CHECK_FALSE(report.key_rate.has_value());
            CHECK_FALSE(report.secure);
        }
    }
    CHECK(found);
}

TEST_CASE("config validation") {
    auto cfg = base_config(ProtocolSpec::bb84(2), ChannelSpec::identity(), 1);
    cfg.num_pulses = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.num_pulses = 10;
    cfg.sample_fraction = 0.0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.sample_fraction = 0.1;
    cfg.workers = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("report serialization carries the documented fields") {
    const auto report =
        run_experiment(base_config(ProtocolSpec::chau15(4), ChannelSpec::identity(), 2, 5000));
    const auto j = report_to_json(report);
    for (const char* key : {"config", "pulses", "sifted", "sift_rate", "qber_estimate",
                            "qber_exact", "key_rate", "security_threshold", "secure",
                            "insufficient_data", "final_key_dits", "final_key_bits"}) {
        CAPTURE(key);
        CHECK(j.contains(key));
    }
    CHECK_FALSE(j.contains("elapsed_ms"));  // timing stays out of machine output

    const std::string header = report_csv_header();
    const std::string row = report_to_csv_row(report);
    CHECK(std::count(header.begin(), header.end(), ',') ==
          std::count(row.begin(), row.end(), ','));
}

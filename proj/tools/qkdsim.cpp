// qkdsim: qudit key-distribution protocol simulator and analytic toolkit.
//
//   qkdsim run        --config run.cfg [--set key=value ...] [--transcript t.jsonl]
//   qkdsim sweep      --config run.cfg --param q --values 0,0.05,0.1
//   qkdsim thresholds
//   qkdsim mubs       --d 4 --m 5
//   qkdsim compare    --pulses 100000 --seed 7
//
// All subcommands accept --format {csv,json,table} and --out PATH.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "qkd/commands.hpp"
#include "qkd/config.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "table";
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_config) {
    if (with_config) {
        cmd->add_option("--config", opts.config_path, "run configuration file");
        cmd->add_option("--set", opts.overrides,
                        "key=value override applied after the config file (repeatable)");
    }
    cmd->add_option("--out", opts.out_path, "write output to a file instead of stdout");
    cmd->add_option("--format", opts.format, "output format: csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
}

int load_config(const CommonOpts& opts, const std::vector<std::string>& extra_overrides,
                qkd::RunConfig& cfg) {
    std::string text;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << opts.config_path << "'\n";
            return qkd::kExitUsage;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::vector<std::string> overrides = opts.overrides;
    overrides.insert(overrides.end(), extra_overrides.begin(), extra_overrides.end());
    if (text.empty() && overrides.empty()) {
        std::cerr << "error: no configuration given (use --config and/or --set)\n";
        return qkd::kExitUsage;
    }
    try {
        cfg = qkd::parse_config_with_overrides(text, overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qkd::kExitValidation;
    }
    return qkd::kExitOk;
}

// Runs `fn(out)` against --out or stdout.
template <typename Fn>
int with_output(const CommonOpts& opts, Fn&& fn) {
    if (opts.out_path.empty()) {
        return fn(std::cout);
    }
    std::ofstream out(opts.out_path);
    if (!out) {
        std::cerr << "error: cannot open output file '" << opts.out_path << "'\n";
        return qkd::kExitUsage;
    }
    return fn(out);
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qudit QKD protocol simulator and analytic toolkit"};
    app.require_subcommand(1);

    // run
    CommonOpts run_opts;
    std::string transcript_path;
    std::uint64_t opt_seed = 0;
    std::uint64_t opt_pulses = 0;
    auto* run_cmd = app.add_subcommand("run", "run one protocol/channel experiment");
    add_common(run_cmd, run_opts, true);
    run_cmd->add_option("--seed", opt_seed, "master seed (same as --set run.seed=N)");
    run_cmd->add_option("--pulses", opt_pulses, "pulse count (same as --set run.pulses=N)");
    run_cmd->add_option("--transcript", transcript_path,
                        "write per-pulse transcript as JSON lines");

    // sweep
    CommonOpts sweep_opts;
    std::string sweep_param;
    std::string sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment per parameter value");
    add_common(sweep_cmd, sweep_opts, true);
    sweep_cmd->add_option("--param", sweep_param, "parameter to vary: q, d or m")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

    // thresholds
    CommonOpts thr_opts;
    auto* thr_cmd = app.add_subcommand("thresholds", "analytic threshold / R(0) table");
    add_common(thr_cmd, thr_opts, false);
    thr_opts.format = "csv";

    // mubs
    CommonOpts mub_opts;
    int mub_d = 2;
    int mub_m = 3;
    auto* mub_cmd = app.add_subcommand("mubs", "dump a mutually unbiased basis set as JSON");
    add_common(mub_cmd, mub_opts, false);
    mub_cmd->add_option("--d", mub_d, "dimension")->required();
    mub_cmd->add_option("--m", mub_m, "number of bases")->required();

    // compare
    CommonOpts cmp_opts;
    std::uint64_t cmp_pulses = 100000;
    std::uint64_t cmp_seed = 1;
    double cmp_q = 0.0;
    auto* cmp_cmd = app.add_subcommand("compare", "protocol comparison table at desk scale");
    add_common(cmp_cmd, cmp_opts, false);
    cmp_cmd->add_option("--pulses", cmp_pulses, "pulses per protocol row");
    cmp_cmd->add_option("--seed", cmp_seed, "master seed");
    cmp_cmd->add_option("--q", cmp_q, "depolarizing noise applied to every row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qkd::kExitUsage;
    }

    if (run_cmd->parsed()) {
        std::vector<std::string> extra;
        if (run_cmd->count("--seed")) {
            extra.push_back("run.seed=" + std::to_string(opt_seed));
        }
        if (run_cmd->count("--pulses")) {
            extra.push_back("run.pulses=" + std::to_string(opt_pulses));
        }
        qkd::RunConfig cfg;
        if (const int rc = load_config(run_opts, extra, cfg); rc != qkd::kExitOk) {
            return rc;
        }
        const auto format = qkd::output_format_from_string(run_opts.format);
        return with_output(run_opts, [&](std::ostream& out) {
            return qkd::cmd_run(cfg, format, out, std::cerr, transcript_path);
        });
    }

    if (sweep_cmd->parsed()) {
        qkd::RunConfig cfg;
        if (const int rc = load_config(sweep_opts, {}, cfg); rc != qkd::kExitOk) {
            return rc;
        }
        std::vector<double> values;
        try {
            values = parse_value_list(sweep_values);
        } catch (const std::exception&) {
            std::cerr << "error: --values must be a comma-separated number list\n";
            return qkd::kExitUsage;
        }
        const auto format = qkd::output_format_from_string(sweep_opts.format);
        return with_output(sweep_opts, [&](std::ostream& out) {
            return qkd::cmd_sweep(cfg, sweep_param, values, format, out, std::cerr);
        });
    }

    if (thr_cmd->parsed()) {
        const auto format = qkd::output_format_from_string(thr_opts.format);
        return with_output(thr_opts, [&](std::ostream& out) {
            return qkd::cmd_thresholds(format, out, std::cerr);
        });
    }

    if (mub_cmd->parsed()) {
        return with_output(mub_opts, [&](std::ostream& out) {
            return qkd::cmd_mubs(mub_d, mub_m, out, std::cerr);
        });
    }

    if (cmp_cmd->parsed()) {
        const auto format = qkd::output_format_from_string(cmp_opts.format);
        return with_output(cmp_opts, [&](std::ostream& out) {
            return qkd::cmd_compare(cmp_pulses, cmp_seed, cmp_q, format, out, std::cerr);
        });
    }

    return qkd::kExitUsage;
}

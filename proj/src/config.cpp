#include "qkd/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace qkd {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

const std::set<std::string> kKnownKeys = {
    "protocol.kind", "protocol.d", "protocol.m", "protocol.bias",
    "channel.kind", "channel.q", "channel.eve_m",
    "run.pulses", "run.sample_fraction", "run.seed", "run.workers",
};

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError(key + ": empty list entry");
        }
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw ConfigError(key + ": expected a comma-separated list");
    }
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        if (entries.contains(key)) {
            throw ConfigError("duplicate key '" + key + "'");
        }
        entries[key] = value;
    }
    return entries;
}

RunConfig config_from_entries(const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        (void)value;
        if (!kKnownKeys.contains(key)) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    RunConfig cfg;

    const std::string* kind = get("protocol.kind");
    if (!kind) {
        throw ConfigError("protocol.kind: required");
    }
    try {
        cfg.protocol.kind = protocol_kind_from_string(*kind);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("protocol.kind: ") + e.what());
    }

    if (const std::string* d = get("protocol.d")) {
        cfg.protocol.dim = static_cast<int>(parse_int("protocol.d", *d));
    } else if (cfg.protocol.kind == ProtocolKind::CHAU02) {
        cfg.protocol.dim = 2;
    } else {
        throw ConfigError("protocol.d: required");
    }

    // Per-protocol default basis count.
    switch (cfg.protocol.kind) {
        case ProtocolKind::BB84: cfg.protocol.num_bases = 2; break;
        case ProtocolKind::MUB: cfg.protocol.num_bases = cfg.protocol.dim + 1; break;
        case ProtocolKind::CHAU02: cfg.protocol.num_bases = 3; break;
        case ProtocolKind::CHAU15: cfg.protocol.num_bases = 0; break;
    }
    if (const std::string* m = get("protocol.m")) {
        cfg.protocol.num_bases = static_cast<int>(parse_int("protocol.m", *m));
    }
    if (const std::string* bias = get("protocol.bias")) {
        cfg.protocol.basis_bias = parse_double_list("protocol.bias", *bias);
    }

    if (const std::string* ck = get("channel.kind")) {
        try {
            cfg.channel.kind = channel_kind_from_string(*ck);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("channel.kind: ") + e.what());
        }
    }
    if (const std::string* q = get("channel.q")) {
        if (cfg.channel.kind != ChannelKind::DEPOLARIZING) {
            throw ConfigError("channel.q: only meaningful for DEPOLARIZING channels");
        }
        cfg.channel.depolarizing_q = parse_double("channel.q", *q);
    }
    cfg.channel.eve_num_bases = cfg.protocol.uses_bases() ? cfg.protocol.num_bases : 2;
    if (const std::string* em = get("channel.eve_m")) {
        if (cfg.channel.kind != ChannelKind::INTERCEPT_RESEND) {
            throw ConfigError("channel.eve_m: only meaningful for INTERCEPT_RESEND channels");
        }
        cfg.channel.eve_num_bases = static_cast<int>(parse_int("channel.eve_m", *em));
    }

    if (const std::string* p = get("run.pulses")) {
        const long long n = parse_int("run.pulses", *p);
        if (n < 1) {
            throw ConfigError("run.pulses: must be >= 1");
        }
        cfg.num_pulses = static_cast<std::uint64_t>(n);
    }
    if (const std::string* f = get("run.sample_fraction")) {
        cfg.sample_fraction = parse_double("run.sample_fraction", *f);
    }
    if (const std::string* s = get("run.seed")) {
        cfg.master_seed = static_cast<std::uint64_t>(parse_int("run.seed", *s));
    }
    if (const std::string* w = get("run.workers")) {
        cfg.workers = static_cast<int>(parse_int("run.workers", *w));
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    return config_from_entries(parse_key_values(text));
}

RunConfig parse_config_with_overrides(const std::string& text,
                                      const std::vector<std::string>& overrides) {
    auto entries = parse_key_values(text);
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + ov + "': expected key=value");
        }
        std::string key = ov.substr(0, eq);
        std::string value = ov.substr(eq + 1);
        // Reuse the line parser's trimming rules.
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);
        if (key.empty() || value.empty()) {
            throw ConfigError("override '" + ov + "': empty key or value");
        }
        entries[key] = value;  // overrides replace file entries
    }
    return config_from_entries(entries);
}

}  // namespace qkd

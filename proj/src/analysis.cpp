#include "qkd/analysis.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

void check_rate_domain(double e, int d) {
    if (d < 2) {
        throw std::domain_error("key rate: d must be >= 2");
    }
    if (e < 0.0 || e > 1.0) {
        throw std::domain_error("key rate: error rate must lie in [0, 1]");
    }
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo <= 0.0 || fhi >= 0.0) {
        throw std::runtime_error("threshold: no sign change in bracket");
    }
    // Coarse monotonicity check before trusting bisection.
    constexpr int kGrid = 64;
    double prev = flo;
    for (int k = 1; k <= kGrid; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / kGrid;
        const double fx = f(x);
        if (fx >= prev) {
            throw std::runtime_error("threshold: key rate is not decreasing on the bracket");
        }
        prev = fx;
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::BB84: return "BB84";
        case ProtocolKind::MUB: return "MUB";
        case ProtocolKind::CHAU15: return "CHAU15";
        case ProtocolKind::CHAU02: return "CHAU02";
    }
    return "?";
}

ProtocolKind protocol_kind_from_string(const std::string& s) {
    if (s == "BB84") return ProtocolKind::BB84;
    if (s == "MUB") return ProtocolKind::MUB;
    if (s == "CHAU15") return ProtocolKind::CHAU15;
    if (s == "CHAU02") return ProtocolKind::CHAU02;
    throw std::invalid_argument("unknown protocol kind '" + s +
                                "' (expected BB84, MUB, CHAU15 or CHAU02)");
}

double shannon_h(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::domain_error("shannon_h: argument must lie in [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log2(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log2(1.0 - x);
    }
    return h;
}

double entropy_d(double e, int d) {
    if (d < 2) {
        throw std::domain_error("entropy_d: d must be >= 2");
    }
    if (e < 0.0 || e > 1.0) {
        throw std::domain_error("entropy_d: error rate must lie in [0, 1]");
    }
    double h = 0.0;
    if (e > 0.0) {
        h -= e * std::log2(e / static_cast<double>(d - 1));
    }
    if (e < 1.0) {
        h -= (1.0 - e) * std::log2(1.0 - e);
    }
    return h;
}

double keyrate_bb84(double e, int d) {
    check_rate_domain(e, d);
    return std::log2(static_cast<double>(d)) - 2.0 * entropy_d(e, d);
}

double keyrate_mub(double e, int d) {
    check_rate_domain(e, d);
    const double frac = (static_cast<double>(d) + 1.0) * e / static_cast<double>(d);
    if (frac > 1.0) {
        throw std::domain_error("keyrate_mub: error rate outside the formula's domain");
    }
    double r = std::log2(static_cast<double>(d));
    if (frac < 1.0) {
        r += (1.0 - frac) * std::log2(1.0 - frac);
    }
    if (frac > 0.0) {
        r += frac * std::log2(e / (static_cast<double>(d) * (d - 1.0)));
    }
    return r;
}

double threshold(ProtocolKind kind, int d) {
    if (d < 2) {
        throw std::domain_error("threshold: d must be >= 2");
    }
    std::function<double(double)> rate;
    switch (kind) {
        case ProtocolKind::BB84:
            rate = [d](double e) { return keyrate_bb84(e, d); };
            break;
        case ProtocolKind::MUB:
            rate = [d](double e) { return keyrate_mub(e, d); };
            break;
        default:
            // Chau protocols publish tolerance constants, not rate curves.
            throw std::invalid_argument("threshold: defined for BB84 and MUB only; "
                                        "see chau_tolerances()");
    }
    const double hi = static_cast<double>(d - 1) / static_cast<double>(d);
    return bisect_root(rate, 1e-9, hi - 1e-9);
}

double mutual_info(double e, int d) {
    return std::log2(static_cast<double>(d)) - entropy_d(e, d);
}

CloningFigures cloning_figures(int d) {
    if (d < 2) {
        throw std::domain_error("cloning_figures: d must be >= 2");
    }
    CloningFigures f;
    f.d = d;
    f.f_est = 2.0 / (1.0 + d);
    f.f_clo = 0.5 + 1.0 / (1.0 + d);
    f.shrink_eta = (f.f_clo * d - 1.0) / (d - 1.0);
    f.disturbance = 1.0 - f.f_clo;
    return f;
}

ChauTolerances chau_tolerances() {
    ChauTolerances t;
    t.chau02 = 0.5 - 0.1 * std::sqrt(5.0);
    t.chau15 = 0.5;
    return t;
}

KeyRateCurve sample_key_rate_curve(ProtocolKind kind, int d, int num_points, double e_max) {
    if (kind != ProtocolKind::BB84 && kind != ProtocolKind::MUB) {
        throw std::invalid_argument("sample_key_rate_curve: only BB84 and MUB have rate curves");
    }
    if (num_points < 2) {
        throw std::invalid_argument("sample_key_rate_curve: need at least two points");
    }
    KeyRateCurve curve;
    curve.kind = kind;
    curve.dim = d;
    curve.num_bases = (kind == ProtocolKind::BB84) ? 2 : d + 1;
    curve.threshold = threshold(kind, d);
    const double hi = (e_max > 0.0) ? e_max : curve.threshold;

    const auto rate = [&](double e) {
        return kind == ProtocolKind::BB84 ? keyrate_bb84(e, d) : keyrate_mub(e, d);
    };
    const double at_threshold = rate(curve.threshold);
    if (std::abs(at_threshold) > 1e-9) {
        throw std::runtime_error("sample_key_rate_curve: R(threshold) != 0");
    }

    double prev_rate = 0.0;
    bool have_prev = false;
    for (int k = 0; k < num_points; ++k) {
        const double e = hi * static_cast<double>(k) / static_cast<double>(num_points - 1);
        const double r = rate(e);
        if (have_prev && e <= curve.threshold && r >= prev_rate) {
            throw std::runtime_error("sample_key_rate_curve: rate not strictly decreasing");
        }
        curve.points.push_back({e, r});
        prev_rate = r;
        have_prev = true;
    }
    return curve;
}

}  // namespace qkd

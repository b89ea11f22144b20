// analysis.hpp
// Closed-form figures of merit: entropies, key rates, security thresholds,
// mutual information, cloning fidelities, and error-tolerance constants.

#pragma once

#include <string>
#include <vector>

namespace qkd {

enum class ProtocolKind { BB84, MUB, CHAU15, CHAU02 };

const char* to_string(ProtocolKind kind);
ProtocolKind protocol_kind_from_string(const std::string& s);

/// Binary Shannon entropy h(x) = -x log2 x - (1-x) log2 (1-x); h(0)=h(1)=0.
double shannon_h(double x);

/// Dimensional entropy -e log2(e / (d-1)) - (1-e) log2(1-e).
/// Reduces to shannon_h at d = 2; equals log2 d at e = (d-1)/d.
double entropy_d(double e, int d);

/// Key rate R(e) = log2 d - 2 entropy_d(e, d). May be negative ("no secure
/// key"); callers decide how to report that.
double keyrate_bb84(double e, int d);

/// Key rate of the (d+1)-basis protocol:
///   R = log2 d + (1 - (d+1)e/d) log2(1 - (d+1)e/d) + ((d+1)e/d) log2(e / (d(d-1))).
/// Throws std::domain_error once 1 - (d+1)e/d < 0.
double keyrate_mub(double e, int d);

/// Critical QBER where the key rate crosses zero, found by bisection on
/// (0, (d-1)/d). Result is accurate to well below the 1e-6 contract (the
/// bracket is shrunk to 1e-12). Verifies a sign change and a decreasing
/// coarse grid before solving.
double threshold(ProtocolKind kind, int d);

/// I_AB = log2 d - entropy_d(e, d), bits per symbol at Bob error rate e.
double mutual_info(double e, int d);

struct CloningFigures {
    int d = 0;
    double f_est = 0.0;       // optimal estimation fidelity 2/(1+d)
    double f_clo = 0.0;       // optimal symmetric clone fidelity 1/2 + 1/(1+d)
    double shrink_eta = 0.0;  // depolarization coefficient (f_clo*d - 1)/(d - 1)
    double disturbance = 0.0; // 1 - f_clo
};

/// Figures of merit for the universal optimal 1->2 cloner in dimension d.
CloningFigures cloning_figures(int d);

struct ChauTolerances {
    double chau02 = 0.0;       // 1/2 - 0.1*sqrt(5)
    double chau15 = 0.0;       // 1/2
    int chau15_min_dim = 16;   // the 50% figure holds for d >= 16
};

ChauTolerances chau_tolerances();

/// Published error bound on BB84 against coherent attacks in d = 7 (and the
/// matching d = 2 value), kept as reference constants for detection checks.
inline constexpr double kCoherentBoundD7 = 0.2372;
inline constexpr double kCoherentBoundD2 = 0.1100;

struct KeyRatePoint {
    double qber = 0.0;
    double rate = 0.0;
};

struct KeyRateCurve {
    ProtocolKind kind = ProtocolKind::BB84;
    int dim = 0;
    int num_bases = 0;
    double threshold = 0.0;
    std::vector<KeyRatePoint> points;
};

/// Samples R(e) on num_points evenly spaced e in [0, e_max] (default: up to
/// the threshold). Checks that the curve is strictly decreasing below the
/// threshold and that R(threshold) = 0 within 1e-9.
KeyRateCurve sample_key_rate_curve(ProtocolKind kind, int d, int num_points, double e_max = -1.0);

}  // namespace qkd

// protocol.hpp
// Prepare / measure / sift state machines for the four key-distribution
// protocols: BB84 in dimension d, the m-basis MUB protocol (six-state at
// d = 2, m = 3), Chau15 two-level-subspace encoding, and Chau02 (to the
// sift stage; its privacy amplification is out of scope).

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qkd/analysis.hpp"
#include "qkd/mub.hpp"
#include "qkd/rng.hpp"
#include "qkd/state.hpp"

namespace qkd {

/// Measurement outcome for a Chau15 subspace projection that hit neither
/// projector (the qudit lay outside the measured two-level subspace).
inline constexpr int kInconclusive = -1;

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::BB84;
    int dim = 2;
    int num_bases = 2;               // 0 for CHAU15 (pairs, not bases)
    std::vector<double> basis_bias;  // empty = uniform; BB84/MUB only

    static ProtocolSpec bb84(int d);
    static ProtocolSpec bb84_biased(int d, std::vector<double> bias);
    static ProtocolSpec mub(int d, int m);
    static ProtocolSpec chau15(int d);
    static ProtocolSpec chau02();

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool uses_bases() const noexcept { return kind != ProtocolKind::CHAU15; }
    /// Number of two-level subspaces d(d-1)/2 (CHAU15).
    int pair_count() const noexcept { return dim * (dim - 1) / 2; }
};

/// Ordered two-level subspace {|i>, |j>}, i < j.
struct SubspacePair {
    int i = -1;
    int j = -1;
    bool operator==(const SubspacePair&) const = default;
};

struct PrepRecord {
    int symbol = 0;       // key dit in [0, d); the key bit for CHAU15
    int basis_idx = -1;   // basis protocols
    SubspacePair pair;    // CHAU15
};

struct MeasRecord {
    int basis_idx = -1;
    SubspacePair pair;
    int outcome = 0;      // kInconclusive possible only for CHAU15
};

struct SiftResult {
    std::vector<std::size_t> kept_indices;  // strictly increasing
    std::vector<int> alice_dits;
    std::vector<int> bob_dits;
    double sift_rate = 0.0;
};

struct QberEstimate {
    double qber = 0.0;
    std::vector<std::size_t> disclosed;  // positions into the sifted strings, sorted
};

class Protocol {
public:
    explicit Protocol(ProtocolSpec spec);

    const ProtocolSpec& spec() const noexcept { return spec_; }
    /// The basis set used for preparation/measurement; throws for CHAU15.
    const BasisSet& bases() const;

    std::pair<PrepRecord, StateVector> prepare(Rng& rng) const;
    /// The state a given record encodes (prepare() == this applied to its draw).
    StateVector preparation_state(const PrepRecord& prep) const;
    MeasRecord measure(const StateVector& state, Rng& rng) const;

    SiftResult sift(const std::vector<PrepRecord>& preps,
                    const std::vector<MeasRecord>& meas) const;

    /// Disclose ceil(fraction * len) sifted positions, chosen uniformly
    /// without replacement, and report the mismatch fraction on them.
    QberEstimate estimate_qber(const SiftResult& sifted, double sample_fraction,
                               Rng& rng) const;

    SubspacePair pair_from_index(int index) const;

private:
    int draw_basis(Rng& rng) const;

    ProtocolSpec spec_;
    std::optional<BasisSet> bases_;
    std::vector<double> bias_;  // resolved (uniform if unspecified)
};

struct TheorySiftRate {
    double rate = 0.0;
    // Chau02: published comparison tables quote 1/2, while three uniformly
    // chosen bases match with probability 1/3; both values are surfaced.
    std::optional<double> alternate;
};

/// Expected sift rate: sum of squared basis probabilities for basis
/// protocols (1/m uniform), 2/(d^2 - d) for CHAU15.
TheorySiftRate sift_rate_theory(const ProtocolSpec& spec);

/// Raw-key bits carried per sifted symbol: log2(d) for BB84/MUB, 1 for the
/// bit-valued Chau protocols.
double raw_bits_per_symbol(const ProtocolSpec& spec);

}  // namespace qkd

// channel.hpp
// Per-pulse channel and adversary models: identity, depolarizing noise,
// intercept-resend, and the universal optimal 1->2 cloning attack (modeled
// through the depolarization it induces on Bob's copy).

#pragma once

#include <optional>
#include <string>

#include "qkd/mub.hpp"
#include "qkd/rng.hpp"
#include "qkd/state.hpp"

namespace qkd {

enum class ChannelKind { IDENTITY, DEPOLARIZING, INTERCEPT_RESEND, CLONER };

const char* to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& s);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::IDENTITY;
    double depolarizing_q = 0.0;  // DEPOLARIZING: replacement probability
    int eve_num_bases = 2;        // INTERCEPT_RESEND: size of Eve's MUB set

    static ChannelSpec identity();
    static ChannelSpec depolarizing(double q);
    static ChannelSpec intercept_resend(int eve_num_bases);
    static ChannelSpec cloner();

    void validate() const;
};

/// What Eve learned (or did) on one pulse; absent for non-adversarial kinds.
struct EveRecord {
    int basis_idx = -1;        // INTERCEPT_RESEND: basis she measured in
    int outcome = -1;          // INTERCEPT_RESEND: her measurement result
    bool clone_passed = true;  // CLONER: pulse survived undisturbed
};

struct TransmitResult {
    StateVector state;
    std::optional<EveRecord> eve;
};

class Channel {
public:
    /// `dim` is the protocol dimension; Eve's bases and the cloner shrink
    /// factor are derived from it.
    Channel(ChannelSpec spec, int dim);

    const ChannelSpec& spec() const noexcept { return spec_; }
    int dim() const noexcept { return dim_; }
    /// Cloner pass-through probability eta = (F_clo * d - 1)/(d - 1).
    double cloner_eta() const noexcept { return eta_; }

    TransmitResult transmit(const StateVector& state, Rng& rng) const;

private:
    ChannelSpec spec_;
    int dim_;
    std::optional<BasisSet> eve_bases_;
    double eta_ = 1.0;
};

/// Sifted QBER produced by intercept-resend when all parties use m MUBs in
/// dimension d: wrong-basis probability (m-1)/m times the uniform-outcome
/// error rate (d-1)/d.
double intercept_resend_qber_theory(int d, int m);

}  // namespace qkd

#include "qkd/channel.hpp"

#include <stdexcept>

#include "qkd/analysis.hpp"

namespace qkd {

const char* to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::IDENTITY: return "IDENTITY";
        case ChannelKind::DEPOLARIZING: return "DEPOLARIZING";
        case ChannelKind::INTERCEPT_RESEND: return "INTERCEPT_RESEND";
        case ChannelKind::CLONER: return "CLONER";
    }
    return "?";
}

ChannelKind channel_kind_from_string(const std::string& s) {
    if (s == "IDENTITY") return ChannelKind::IDENTITY;
    if (s == "DEPOLARIZING") return ChannelKind::DEPOLARIZING;
    if (s == "INTERCEPT_RESEND") return ChannelKind::INTERCEPT_RESEND;
    if (s == "CLONER") return ChannelKind::CLONER;
    throw std::invalid_argument("unknown channel kind '" + s +
                                "' (expected IDENTITY, DEPOLARIZING, INTERCEPT_RESEND or CLONER)");
}

ChannelSpec ChannelSpec::identity() {
    return ChannelSpec{};
}

ChannelSpec ChannelSpec::depolarizing(double q) {
    ChannelSpec s;
    s.kind = ChannelKind::DEPOLARIZING;
    s.depolarizing_q = q;
    return s;
}

ChannelSpec ChannelSpec::intercept_resend(int eve_num_bases) {
    ChannelSpec s;
    s.kind = ChannelKind::INTERCEPT_RESEND;
    s.eve_num_bases = eve_num_bases;
    return s;
}

ChannelSpec ChannelSpec::cloner() {
    ChannelSpec s;
    s.kind = ChannelKind::CLONER;
    return s;
}

void ChannelSpec::validate() const {
    if (kind == ChannelKind::DEPOLARIZING &&
        (depolarizing_q < 0.0 || depolarizing_q > 1.0)) {
        throw std::invalid_argument("channel.q: must lie in [0, 1]");
    }
    if (kind == ChannelKind::INTERCEPT_RESEND && eve_num_bases < 2) {
        throw std::invalid_argument("channel.eve_m: Eve needs at least 2 bases");
    }
}

Channel::Channel(ChannelSpec spec, int dim) : spec_(spec), dim_(dim) {
    spec_.validate();
    if (dim_ < 2) {
        throw std::invalid_argument("Channel: dim must be >= 2");
    }
    if (spec_.kind == ChannelKind::INTERCEPT_RESEND) {
        eve_bases_ = mub_set(dim_, spec_.eve_num_bases);
    }
    if (spec_.kind == ChannelKind::CLONER) {
        eta_ = cloning_figures(dim_).shrink_eta;
    }
}

TransmitResult Channel::transmit(const StateVector& state, Rng& rng) const {
    if (state.dim() != dim_) {
        throw std::invalid_argument("Channel::transmit: dimension mismatch");
    }
    switch (spec_.kind) {
        case ChannelKind::IDENTITY:
            return {state, std::nullopt};

        case ChannelKind::DEPOLARIZING: {
            // q == 0 consumes no randomness, so it is stream-identical to
            // the identity channel under the same seed.
            if (spec_.depolarizing_q <= 0.0) {
                return {state, std::nullopt};
            }
            if (rng.next_double() < spec_.depolarizing_q) {
                const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dim_)));
                return {StateVector::basis_state(dim_, k), std::nullopt};
            }
            return {state, std::nullopt};
        }

        case ChannelKind::INTERCEPT_RESEND: {
            EveRecord eve;
            eve.basis_idx = static_cast<int>(
                rng.next_below(static_cast<std::uint64_t>(eve_bases_->num_bases())));
            const Basis& basis = eve_bases_->bases[static_cast<size_t>(eve.basis_idx)];
            eve.outcome = born_sample(state, basis, rng);
            // She forwards her post-measurement state unchanged.
            return {basis.vectors[static_cast<size_t>(eve.outcome)], eve};
        }

        case ChannelKind::CLONER: {
            EveRecord eve;
            if (rng.next_double() < eta_) {
                eve.clone_passed = true;
                return {state, eve};
            }
            eve.clone_passed = false;
            const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dim_)));
            return {StateVector::basis_state(dim_, k), eve};
        }
    }
    throw std::logic_error("Channel::transmit: unhandled kind");
}

double intercept_resend_qber_theory(int d, int m) {
    if (d < 2 || m < 2 || m > d + 1) {
        throw std::invalid_argument("intercept_resend_qber_theory: need 2 <= m <= d+1");
    }
    return (static_cast<double>(m - 1) / m) * (static_cast<double>(d - 1) / d);
}

}  // namespace qkd

#include "qkd/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

constexpr int kMaxDim = 16;

bool is_power_of_two(int x) {
    return x > 0 && (x & (x - 1)) == 0;
}

}  // namespace

ProtocolSpec ProtocolSpec::bb84(int d) {
    ProtocolSpec s;
    s.kind = ProtocolKind::BB84;
    s.dim = d;
    s.num_bases = 2;
    return s;
}

ProtocolSpec ProtocolSpec::bb84_biased(int d, std::vector<double> bias) {
    auto s = bb84(d);
    s.basis_bias = std::move(bias);
    return s;
}

ProtocolSpec ProtocolSpec::mub(int d, int m) {
    ProtocolSpec s;
    s.kind = ProtocolKind::MUB;
    s.dim = d;
    s.num_bases = m;
    return s;
}

ProtocolSpec ProtocolSpec::chau15(int d) {
    ProtocolSpec s;
    s.kind = ProtocolKind::CHAU15;
    s.dim = d;
    s.num_bases = 0;
    return s;
}

ProtocolSpec ProtocolSpec::chau02() {
    ProtocolSpec s;
    s.kind = ProtocolKind::CHAU02;
    s.dim = 2;
    s.num_bases = 3;
    return s;
}

void ProtocolSpec::validate() const {
    if (dim < 2 || dim > kMaxDim) {
        throw std::invalid_argument("protocol.d: must be in [2, " + std::to_string(kMaxDim) +
                                    "], got " + std::to_string(dim));
    }
    switch (kind) {
        case ProtocolKind::BB84:
            if (num_bases != 2) {
                throw std::invalid_argument("protocol.m: BB84 uses exactly 2 bases");
            }
            break;
        case ProtocolKind::MUB:
            if (num_bases < 2) {
                throw std::invalid_argument("protocol.m: need at least 2 bases");
            }
            if (num_bases > dim + 1) {
                throw std::invalid_argument("protocol.m: m > d+1 is impossible (d = " +
                                            std::to_string(dim) + ", m = " +
                                            std::to_string(num_bases) + ")");
            }
            if (num_bases > 2 && !full_mub_supported(dim)) {
                throw std::invalid_argument("protocol.d: no full MUB construction for d = " +
                                            std::to_string(dim) + " (supported: 2,3,4,5,7,8)");
            }
            break;
        case ProtocolKind::CHAU02:
            if (dim != 2) {
                throw std::invalid_argument("protocol.d: CHAU02 is defined for d = 2");
            }
            if (num_bases != 3) {
                throw std::invalid_argument("protocol.m: CHAU02 uses the 3 Pauli bases");
            }
            if (!basis_bias.empty()) {
                throw std::invalid_argument("protocol.bias: CHAU02 preparation is uniform");
            }
            break;
        case ProtocolKind::CHAU15:
            if (!is_power_of_two(dim) || dim < 4) {
                throw std::invalid_argument("protocol.d: d must be a power of two >= 4 for "
                                            "CHAU15, got " + std::to_string(dim));
            }
            if (num_bases != 0) {
                throw std::invalid_argument("protocol.m: not applicable to CHAU15");
            }
            if (!basis_bias.empty()) {
                throw std::invalid_argument("protocol.bias: not applicable to CHAU15");
            }
            break;
    }
    if (!basis_bias.empty()) {
        if (basis_bias.size() != static_cast<size_t>(num_bases)) {
            throw std::invalid_argument("protocol.bias: expected " + std::to_string(num_bases) +
                                        " entries, got " + std::to_string(basis_bias.size()));
        }
        double sum = 0.0;
        for (double p : basis_bias) {
            if (p < 0.0) {
                throw std::invalid_argument("protocol.bias: entries must be nonnegative");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("protocol.bias: entries must sum to 1");
        }
    }
}

Protocol::Protocol(ProtocolSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.uses_bases()) {
        bases_ = mub_set(spec_.dim, spec_.num_bases);
        if (spec_.basis_bias.empty()) {
            bias_.assign(static_cast<size_t>(spec_.num_bases),
                         1.0 / static_cast<double>(spec_.num_bases));
        } else {
            bias_ = spec_.basis_bias;
        }
    }
}

const BasisSet& Protocol::bases() const {
    if (!bases_) {
        throw std::logic_error("Protocol::bases: CHAU15 measures subspace pairs, not bases");
    }
    return *bases_;
}

int Protocol::draw_basis(Rng& rng) const {
    const double u = rng.next_double();
    double cum = 0.0;
    const int m = static_cast<int>(bias_.size());
    for (int b = 0; b < m; ++b) {
        cum += bias_[static_cast<size_t>(b)];
        if (u < cum) {
            return b;
        }
    }
    return m - 1;
}

SubspacePair Protocol::pair_from_index(int index) const {
    const int d = spec_.dim;
    if (index < 0 || index >= spec_.pair_count()) {
        throw std::invalid_argument("pair_from_index: out of range");
    }
    for (int i = 0; i < d - 1; ++i) {
        const int block = d - 1 - i;  // pairs (i, i+1) .. (i, d-1)
        if (index < block) {
            return SubspacePair{i, i + 1 + index};
        }
        index -= block;
    }
    throw std::logic_error("pair_from_index: unreachable");
}

std::pair<PrepRecord, StateVector> Protocol::prepare(Rng& rng) const {
    PrepRecord prep;
    if (spec_.kind == ProtocolKind::CHAU15) {
        prep.symbol = static_cast<int>(rng.next_below(2));
        prep.pair = pair_from_index(static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(spec_.pair_count()))));
    } else {
        prep.basis_idx = draw_basis(rng);
        prep.symbol = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec_.dim)));
    }
    return {prep, preparation_state(prep)};
}

StateVector Protocol::preparation_state(const PrepRecord& prep) const {
    if (spec_.kind == ProtocolKind::CHAU15) {
        return StateVector::pair_superposition(spec_.dim, prep.pair.i, prep.pair.j,
                                               prep.symbol == 0 ? +1 : -1);
    }
    return bases_->bases[static_cast<size_t>(prep.basis_idx)]
        .vectors[static_cast<size_t>(prep.symbol)];
}

MeasRecord Protocol::measure(const StateVector& state, Rng& rng) const {
    if (state.dim() != spec_.dim) {
        throw std::invalid_argument("Protocol::measure: dimension mismatch");
    }
    MeasRecord rec;
    if (spec_.kind == ProtocolKind::CHAU15) {
        rec.pair = pair_from_index(static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(spec_.pair_count()))));
        const auto plus = StateVector::pair_superposition(spec_.dim, rec.pair.i, rec.pair.j, +1);
        const auto minus = StateVector::pair_superposition(spec_.dim, rec.pair.i, rec.pair.j, -1);
        const double p0 = overlap_sq(plus, state);
        const double p1 = overlap_sq(minus, state);
        // Rounding can push p0 + p1 a hair past 1; clamp so an in-subspace
        // state can never leak into the inconclusive bucket.
        double p_inc = 1.0 - p0 - p1;
        if (p_inc < 1e-12) {
            p_inc = 0.0;
        }
        const double u = rng.next_double() * (p0 + p1 + p_inc);
        if (u < p0) {
            rec.outcome = 0;
        } else if (u < p0 + p1) {
            rec.outcome = 1;
        } else {
            rec.outcome = kInconclusive;
        }
    } else {
        rec.basis_idx = draw_basis(rng);
        rec.outcome = born_sample(state, bases_->bases[static_cast<size_t>(rec.basis_idx)], rng);
    }
    return rec;
}

SiftResult Protocol::sift(const std::vector<PrepRecord>& preps,
                          const std::vector<MeasRecord>& meas) const {
    if (preps.size() != meas.size()) {
        throw std::invalid_argument("Protocol::sift: transcript length mismatch");
    }
    SiftResult out;
    for (size_t k = 0; k < preps.size(); ++k) {
        bool keep = false;
        if (spec_.kind == ProtocolKind::CHAU15) {
            keep = preps[k].pair == meas[k].pair && meas[k].outcome != kInconclusive;
        } else {
            keep = preps[k].basis_idx == meas[k].basis_idx;
        }
        if (keep) {
            out.kept_indices.push_back(k);
            out.alice_dits.push_back(preps[k].symbol);
            out.bob_dits.push_back(meas[k].outcome);
        }
    }
    out.sift_rate = preps.empty() ? 0.0
                                  : static_cast<double>(out.kept_indices.size()) /
                                        static_cast<double>(preps.size());
    return out;
}

QberEstimate Protocol::estimate_qber(const SiftResult& sifted, double sample_fraction,
                                     Rng& rng) const {
    if (sifted.alice_dits.empty()) {
        throw std::invalid_argument("estimate_qber: empty sifted key");
    }
    if (sample_fraction <= 0.0 || sample_fraction > 1.0) {
        throw std::domain_error("estimate_qber: sample_fraction must lie in (0, 1]");
    }
    const size_t len = sifted.alice_dits.size();
    const size_t k = static_cast<size_t>(
        std::ceil(sample_fraction * static_cast<double>(len)));

    // Partial Fisher-Yates: the first k entries are a uniform sample
    // without replacement.
    std::vector<std::size_t> idx(len);
    for (size_t t = 0; t < len; ++t) {
        idx[t] = t;
    }
    for (size_t t = 0; t < k; ++t) {
        const size_t j = t + static_cast<size_t>(rng.next_below(len - t));
        std::swap(idx[t], idx[j]);
    }

    QberEstimate est;
    est.disclosed.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(est.disclosed.begin(), est.disclosed.end());
    size_t mismatches = 0;
    for (size_t pos : est.disclosed) {
        if (sifted.alice_dits[pos] != sifted.bob_dits[pos]) {
            ++mismatches;
        }
    }
    est.qber = static_cast<double>(mismatches) / static_cast<double>(k);
    return est;
}

TheorySiftRate sift_rate_theory(const ProtocolSpec& spec) {
    spec.validate();
    TheorySiftRate out;
    if (spec.kind == ProtocolKind::CHAU15) {
        out.rate = 2.0 / (static_cast<double>(spec.dim) * (spec.dim - 1.0));
        return out;
    }
    if (spec.basis_bias.empty()) {
        out.rate = 1.0 / static_cast<double>(spec.num_bases);
    } else {
        double s = 0.0;
        for (double p : spec.basis_bias) {
            s += p * p;
        }
        out.rate = s;
    }
    if (spec.kind == ProtocolKind::CHAU02) {
        out.alternate = 0.5;
    }
    return out;
}

double raw_bits_per_symbol(const ProtocolSpec& spec) {
    if (spec.kind == ProtocolKind::CHAU15 || spec.kind == ProtocolKind::CHAU02) {
        return 1.0;
    }
    return std::log2(static_cast<double>(spec.dim));
}

}  // namespace qkd

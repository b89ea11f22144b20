#include "qkd/mub.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qkd/gf.hpp"

namespace qkd {

namespace {

constexpr int kMaxDim = 16;

Basis pauli_y_basis() {
    const double a = 1.0 / std::sqrt(2.0);
    Basis b;
    b.dim = 2;
    b.vectors.emplace_back(2, std::vector<Complex>{{a, 0.0}, {0.0, a}});
    b.vectors.emplace_back(2, std::vector<Complex>{{a, 0.0}, {0.0, -a}});
    return b;
}

// Quadratic-phase bases for odd prime d: basis b, vector k, component j has
// amplitude w^(b*j^2 + k*j) / sqrt(d). b = 0 reproduces the Fourier basis;
// the Gauss-sum magnitude sqrt(d) gives cross-overlaps of exactly 1/d.
Basis quadratic_phase_basis(int d, int b) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Basis basis;
    basis.dim = d;
    basis.vectors.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        std::vector<Complex> amps(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            const int e = (b * j * j + k * j) % d;
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(e) /
                                 static_cast<double>(d);
            amps[static_cast<size_t>(j)] =
                Complex{scale * std::cos(theta), scale * std::sin(theta)};
        }
        basis.vectors.emplace_back(d, std::move(amps));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Galois-ring construction for d = 2^n.
//
// Work in R = Z4[x]/(h), where h is a monic lift of the GF(2^n) modulus
// chosen so that xi = x has multiplicative order 2^n - 1 (h divides
// x^(2^n - 1) - 1 over Z4). Every y in R decomposes uniquely as y = a + 2b
// with a, b in the Teichmueller set T = {0, 1, xi, ..., xi^(2^n - 2)}; the
// Frobenius sigma(a + 2b) = a^2 + 2 b^2 fixes Z4, and the trace
// tr(y) = y + sigma(y) + ... lands in Z4. The d bases (plus computational)
// have components i^tr((a + 2b) x) / sqrt(d) for basis a in T, vector b in T,
// component x in T.
// ---------------------------------------------------------------------------

class GaloisRing4 {
public:
    using Elem = std::vector<int>;  // n coefficients mod 4, little-endian

    explicit GaloisRing4(int n) : n_(n), q_(1 << n) {
        if (n == 2) {
            modulus_ = {1, 1, 1};     // x^2 + x + 1
        } else if (n == 3) {
            modulus_ = {3, 1, 2, 1};  // x^3 + 2x^2 + x + 3, lift of x^3 + x + 1
        } else {
            throw std::invalid_argument("GaloisRing4: only n = 2, 3 are needed here");
        }
        build_teichmueller();
    }

    int q() const noexcept { return q_; }
    const std::vector<Elem>& teichmueller() const noexcept { return teich_; }

    Elem zero() const { return Elem(static_cast<size_t>(n_), 0); }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = zero();
        for (int k = 0; k < n_; ++k) {
            r[static_cast<size_t>(k)] = (a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)]) % 4;
        }
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = zero();
        for (int k = 0; k < n_; ++k) {
            r[static_cast<size_t>(k)] =
                ((a[static_cast<size_t>(k)] - b[static_cast<size_t>(k)]) % 4 + 4) % 4;
        }
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<int> prod(static_cast<size_t>(2 * n_), 0);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                prod[static_cast<size_t>(i + j)] =
                    (prod[static_cast<size_t>(i + j)] +
                     a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % 4;
            }
        }
        // Reduce by the monic modulus: x^n = -(modulus minus leading term).
        for (int k = 2 * n_ - 1; k >= n_; --k) {
            const int factor = prod[static_cast<size_t>(k)];
            if (factor == 0) continue;
            prod[static_cast<size_t>(k)] = 0;
            for (int j = 0; j < n_; ++j) {
                int& c = prod[static_cast<size_t>(k - n_ + j)];
                c = ((c - factor * modulus_[static_cast<size_t>(j)]) % 4 + 4) % 4;
            }
        }
        prod.resize(static_cast<size_t>(n_));
        return prod;
    }

    // Unique decomposition y = a + 2b with a, b in the Teichmueller set.
    void decompose(const Elem& y, Elem& a, Elem& b) const {
        a = teich_[static_cast<size_t>(teich_index_mod2(y))];
        Elem c = sub(y, a);
        Elem half = zero();
        for (int k = 0; k < n_; ++k) {
            if (c[static_cast<size_t>(k)] % 2 != 0) {
                throw std::runtime_error("GaloisRing4: decomposition failed");
            }
            half[static_cast<size_t>(k)] = (c[static_cast<size_t>(k)] / 2) % 2;
        }
        b = teich_[static_cast<size_t>(teich_index_mod2(half))];
    }

    Elem frobenius(const Elem& y) const {
        Elem a, b;
        decompose(y, a, b);
        Elem a2 = mul(a, a);
        Elem b2 = mul(b, b);
        for (int& c : b2) {
            c = (2 * c) % 4;
        }
        return add(a2, b2);
    }

    // Trace into Z4.
    int trace(const Elem& y) const {
        Elem acc = y;
        Elem t = y;
        for (int k = 1; k < n_; ++k) {
            t = frobenius(t);
            acc = add(acc, t);
        }
        for (int k = 1; k < n_; ++k) {
            if (acc[static_cast<size_t>(k)] != 0) {
                throw std::runtime_error("GaloisRing4: trace did not land in Z4");
            }
        }
        return acc[0];
    }

private:
    void build_teichmueller() {
        teich_.clear();
        teich_.push_back(zero());
        Elem xi = zero();
        xi[1] = 1;  // the class of x
        Elem t = zero();
        t[0] = 1;
        for (int k = 0; k < q_ - 1; ++k) {
            teich_.push_back(t);
            t = mul(t, xi);
        }
        // xi must have order q - 1: cycling back to 1 confirms the modulus
        // is the correct lift.
        Elem one = zero();
        one[0] = 1;
        if (t != one) {
            throw std::runtime_error("GaloisRing4: x does not have order 2^n - 1");
        }
        // Index the set by mod-2 reduction for decompose().
        mod2_to_index_.assign(static_cast<size_t>(q_), -1);
        for (int i = 0; i < q_; ++i) {
            const int key = mod2_key(teich_[static_cast<size_t>(i)]);
            if (mod2_to_index_[static_cast<size_t>(key)] != -1) {
                throw std::runtime_error("GaloisRing4: Teichmueller reductions collide");
            }
            mod2_to_index_[static_cast<size_t>(key)] = i;
        }
    }

    int mod2_key(const Elem& y) const {
        int key = 0;
        for (int k = n_ - 1; k >= 0; --k) {
            key = key * 2 + (y[static_cast<size_t>(k)] % 2);
        }
        return key;
    }

    int teich_index_mod2(const Elem& y) const {
        const int idx = mod2_to_index_[static_cast<size_t>(mod2_key(y))];
        if (idx < 0) {
            throw std::runtime_error("GaloisRing4: unmapped mod-2 pattern");
        }
        return idx;
    }

    int n_;
    int q_;
    std::vector<int> modulus_;
    std::vector<Elem> teich_;
    std::vector<int> mod2_to_index_;
};

std::vector<Basis> galois_ring_bases(int d) {
    const int n = (d == 4) ? 2 : 3;
    // The ring's mod-2 reduction is GF(2^n) with the canonical modulus;
    // constructing it here pins that correspondence.
    const GaloisField gf(2, n);
    if (gf.order() != d) {
        throw std::runtime_error("galois_ring_bases: field order mismatch");
    }
    const GaloisRing4 ring(n);
    const auto& T = ring.teichmueller();

    static const std::array<Complex, 4> kQuarterPhases = {
        Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{-1.0, 0.0}, Complex{0.0, -1.0}};

    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<Basis> bases;
    bases.reserve(static_cast<size_t>(d));
    for (int ai = 0; ai < d; ++ai) {
        Basis basis;
        basis.dim = d;
        basis.vectors.reserve(static_cast<size_t>(d));
        for (int bi = 0; bi < d; ++bi) {
            // y = a + 2b
            GaloisRing4::Elem two_b = T[static_cast<size_t>(bi)];
            for (int& c : two_b) {
                c = (2 * c) % 4;
            }
            const auto y = ring.add(T[static_cast<size_t>(ai)], two_b);
            std::vector<Complex> amps(static_cast<size_t>(d));
            for (int xi = 0; xi < d; ++xi) {
                const int phase = ring.trace(ring.mul(y, T[static_cast<size_t>(xi)]));
                amps[static_cast<size_t>(xi)] = scale * kQuarterPhases[static_cast<size_t>(phase)];
            }
            basis.vectors.emplace_back(d, std::move(amps));
        }
        bases.push_back(std::move(basis));
    }
    return bases;
}

}  // namespace

bool full_mub_supported(int d) {
    return d == 2 || d == 3 || d == 4 || d == 5 || d == 7 || d == 8;
}

BasisSet mub_set(int d, int m) {
    if (d < 2 || d > kMaxDim) {
        throw std::invalid_argument("mub_set: d must be in [2, " + std::to_string(kMaxDim) + "]");
    }
    if (m < 2) {
        throw std::invalid_argument("mub_set: need at least two bases");
    }
    if (m > d + 1) {
        throw std::invalid_argument("mub_set: m > d+1 is impossible (d = " + std::to_string(d) +
                                    ")");
    }
    if (m > 2 && !full_mub_supported(d)) {
        throw std::invalid_argument("mub_set: full MUB sets unsupported for d = " +
                                    std::to_string(d) + " (supported: 2,3,4,5,7,8)");
    }

    BasisSet set;
    set.dim = d;
    set.bases.push_back(computational_basis(d));
    if (m == 2) {
        set.bases.push_back(dqft_basis(d));
    } else if (d == 2) {
        set.bases.push_back(dqft_basis(2));
        set.bases.push_back(pauli_y_basis());
    } else if (d == 4 || d == 8) {
        auto ring_bases = galois_ring_bases(d);
        for (int k = 0; k + 1 < m; ++k) {
            set.bases.push_back(std::move(ring_bases[static_cast<size_t>(k)]));
        }
    } else {
        // odd prime d
        for (int b = 0; b + 1 < m; ++b) {
            set.bases.push_back(quadratic_phase_basis(d, b));
        }
    }
    set.validate(kOverlapTol);
    return set;
}

}  // namespace qkd

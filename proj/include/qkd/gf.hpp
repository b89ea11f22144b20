// gf.hpp
// Arithmetic in GF(p^n) for small prime powers (p^n <= 2^16).
//
// Elements are polynomials over GF(p) reduced modulo a fixed monic
// irreducible polynomial. The modulus for each (p, n) is the monic
// irreducible of degree n whose coefficient value sum(c_k * p^k) is
// smallest; this rule is deterministic, so element representations are
// stable across runs. The moduli used by the basis constructions:
//   GF(4)  = GF(2)[x] / (x^2 + x + 1)
//   GF(8)  = GF(2)[x] / (x^3 + x + 1)
//   GF(16) = GF(2)[x] / (x^4 + x + 1)
//   GF(9)  = GF(3)[x] / (x^2 + 1)

#pragma once

#include <cstdint>
#include <vector>

namespace qkd {

/// One element of GF(p^n): n coefficients in [0, p), little-endian
/// (coeffs[k] multiplies x^k).
struct FieldElement {
    int p = 0;
    int n = 0;
    std::vector<int> coeffs;

    bool operator==(const FieldElement&) const = default;
};

class GaloisField {
public:
    /// Field with the canonical (smallest) irreducible modulus for (p, n).
    GaloisField(int p, int n);

    /// Field with a caller-supplied monic modulus of degree n
    /// (little-endian, n+1 coefficients). Rejects reducible moduli.
    GaloisField(int p, std::vector<int> modulus);

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return n_; }
    int order() const noexcept { return order_; }  // p^n
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element from its index in [0, p^n): index = sum(coeffs[k] * p^k).
    FieldElement element(int index) const;
    int index_of(const FieldElement& a) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;
    /// Multiplicative inverse; throws on zero.
    FieldElement inverse(const FieldElement& a) const;

private:
    void check(const FieldElement& a) const;

    int p_;
    int n_;
    int order_;
    std::vector<int> modulus_;  // n+1 coefficients, monic
};

bool is_prime(int p);

/// Irreducibility over GF(p) by trial division (degree <= 16).
bool is_irreducible(const std::vector<int>& poly, int p);

}  // namespace qkd

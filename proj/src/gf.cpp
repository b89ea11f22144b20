#include "qkd/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

int true_degree(const std::vector<int>& poly) {
    for (int k = static_cast<int>(poly.size()) - 1; k >= 0; --k) {
        if (poly[static_cast<size_t>(k)] != 0) {
            return k;
        }
    }
    return -1;  // zero polynomial
}

// Remainder of a modulo m over GF(p); m must be monic.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    const int dm = true_degree(m);
    for (int k = true_degree(a); k >= dm; k = true_degree(a)) {
        const int factor = a[static_cast<size_t>(k)];
        if (factor != 0) {
            for (int j = 0; j <= dm; ++j) {
                int& c = a[static_cast<size_t>(k - dm + j)];
                c = ((c - factor * m[static_cast<size_t>(j)]) % p + p) % p;
            }
        }
    }
    a.resize(static_cast<size_t>(dm));
    return a;
}

std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& m, int p) {
    std::vector<int> prod(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    return poly_mod(std::move(prod), m, p);
}

// Smallest monic irreducible of degree n over GF(p), ordered by the
// integer value of the non-leading coefficients.
std::vector<int> canonical_modulus(int p, int n) {
    if (n == 1) {
        return {0, 1};  // x; reduction of constants is a no-op
    }
    std::int64_t count = 1;
    for (int k = 0; k < n; ++k) {
        count *= p;
    }
    for (std::int64_t value = 0; value < count; ++value) {
        std::vector<int> poly(static_cast<size_t>(n) + 1, 0);
        std::int64_t v = value;
        for (int k = 0; k < n; ++k) {
            poly[static_cast<size_t>(k)] = static_cast<int>(v % p);
            v /= p;
        }
        poly[static_cast<size_t>(n)] = 1;
        if (is_irreducible(poly, p)) {
            return poly;
        }
    }
    throw std::runtime_error("canonical_modulus: no irreducible polynomial found");
}

}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int f = 2; f * f <= p; ++f) {
        if (p % f == 0) return false;
    }
    return true;
}

bool is_irreducible(const std::vector<int>& poly, int p) {
    const int n = true_degree(poly);
    if (n <= 0) return false;
    if (n == 1) return true;
    // Trial division by every monic polynomial of degree 1..n/2.
    for (int dd = 1; 2 * dd <= n; ++dd) {
        std::int64_t count = 1;
        for (int k = 0; k < dd; ++k) {
            count *= p;
        }
        for (std::int64_t value = 0; value < count; ++value) {
            std::vector<int> divisor(static_cast<size_t>(dd) + 1, 0);
            std::int64_t v = value;
            for (int k = 0; k < dd; ++k) {
                divisor[static_cast<size_t>(k)] = static_cast<int>(v % p);
                v /= p;
            }
            divisor[static_cast<size_t>(dd)] = 1;
            if (true_degree(poly_mod(poly, divisor, p)) < 0) {
                return false;
            }
        }
    }
    return true;
}

GaloisField::GaloisField(int p, int n) : p_(p), n_(n) {
    if (!is_prime(p_)) {
        throw std::invalid_argument("GaloisField: characteristic " + std::to_string(p_) +
                                    " is not prime");
    }
    if (n_ < 1) {
        throw std::invalid_argument("GaloisField: degree must be >= 1");
    }
    std::int64_t order = 1;
    for (int k = 0; k < n_; ++k) {
        order *= p_;
        if (order > 65536) {
            throw std::invalid_argument("GaloisField: p^n exceeds 2^16");
        }
    }
    order_ = static_cast<int>(order);
    modulus_ = canonical_modulus(p_, n_);
}

GaloisField::GaloisField(int p, std::vector<int> modulus) : p_(p) {
    if (!is_prime(p_)) {
        throw std::invalid_argument("GaloisField: characteristic " + std::to_string(p_) +
                                    " is not prime");
    }
    n_ = true_degree(modulus);
    if (n_ < 1) {
        throw std::invalid_argument("GaloisField: modulus must have degree >= 1");
    }
    if (modulus[static_cast<size_t>(n_)] != 1) {
        throw std::invalid_argument("GaloisField: modulus must be monic");
    }
    for (int c : modulus) {
        if (c < 0 || c >= p_) {
            throw std::invalid_argument("GaloisField: modulus coefficients must lie in [0, p)");
        }
    }
    if (n_ > 1 && !is_irreducible(modulus, p_)) {
        throw std::invalid_argument("GaloisField: modulus is reducible");
    }
    std::int64_t order = 1;
    for (int k = 0; k < n_; ++k) {
        order *= p_;
        if (order > 65536) {
            throw std::invalid_argument("GaloisField: p^n exceeds 2^16");
        }
    }
    order_ = static_cast<int>(order);
    modulus_ = std::move(modulus);
    modulus_.resize(static_cast<size_t>(n_) + 1);
}

FieldElement GaloisField::zero() const {
    return FieldElement{p_, n_, std::vector<int>(static_cast<size_t>(n_), 0)};
}

FieldElement GaloisField::one() const {
    auto e = zero();
    e.coeffs[0] = 1;
    return e;
}

FieldElement GaloisField::element(int index) const {
    if (index < 0 || index >= order_) {
        throw std::invalid_argument("GaloisField::element: index out of range");
    }
    auto e = zero();
    for (int k = 0; k < n_; ++k) {
        e.coeffs[static_cast<size_t>(k)] = index % p_;
        index /= p_;
    }
    return e;
}

int GaloisField::index_of(const FieldElement& a) const {
    check(a);
    int idx = 0;
    for (int k = n_ - 1; k >= 0; --k) {
        idx = idx * p_ + a.coeffs[static_cast<size_t>(k)];
    }
    return idx;
}

void GaloisField::check(const FieldElement& a) const {
    if (a.p != p_ || a.n != n_ || a.coeffs.size() != static_cast<size_t>(n_)) {
        throw std::invalid_argument("GaloisField: element belongs to a different field");
    }
    for (int c : a.coeffs) {
        if (c < 0 || c >= p_) {
            throw std::invalid_argument("GaloisField: coefficient out of range");
        }
    }
}

FieldElement GaloisField::add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    auto r = zero();
    for (int k = 0; k < n_; ++k) {
        r.coeffs[static_cast<size_t>(k)] =
            (a.coeffs[static_cast<size_t>(k)] + b.coeffs[static_cast<size_t>(k)]) % p_;
    }
    return r;
}

FieldElement GaloisField::sub(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    auto r = zero();
    for (int k = 0; k < n_; ++k) {
        r.coeffs[static_cast<size_t>(k)] =
            ((a.coeffs[static_cast<size_t>(k)] - b.coeffs[static_cast<size_t>(k)]) % p_ + p_) % p_;
    }
    return r;
}

FieldElement GaloisField::mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    auto reduced = poly_mul_mod(a.coeffs, b.coeffs, modulus_, p_);
    reduced.resize(static_cast<size_t>(n_), 0);
    return FieldElement{p_, n_, std::move(reduced)};
}

FieldElement GaloisField::pow(const FieldElement& a, std::uint64_t e) const {
    check(a);
    auto result = one();
    auto base = a;
    while (e > 0) {
        if (e & 1u) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1u;
    }
    return result;
}

FieldElement GaloisField::inverse(const FieldElement& a) const {
    check(a);
    if (a == zero()) {
        throw std::domain_error("GaloisField::inverse: zero has no inverse");
    }
    // a^(q-2) = a^-1 in the multiplicative group of order q-1.
    return pow(a, static_cast<std::uint64_t>(order_ - 2));
}

}  // namespace qkd

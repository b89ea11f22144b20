#include "doctest.h"

#include <stdexcept>
#include <utility>
#include <vector>

#include "qkd/gf.hpp"

using namespace qkd;

namespace {

// Independent multiplication oracle: schoolbook polynomial product followed
// by textbook long division modulo the field's modulus. Shares no code with
// GaloisField::mul.
std::vector<int> oracle_mul(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& modulus, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    const int dm = static_cast<int>(modulus.size()) - 1;
    for (int k = static_cast<int>(prod.size()) - 1; k >= dm; --k) {
        const int factor = prod[static_cast<size_t>(k)];
        if (factor == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            int& c = prod[static_cast<size_t>(k - dm + j)];
            c = ((c - factor * modulus[static_cast<size_t>(j)]) % p + p) % p;
        }
    }
    prod.resize(static_cast<size_t>(dm) > prod.size() ? prod.size() : static_cast<size_t>(dm));
    prod.resize(static_cast<size_t>(dm), 0);
    return prod;
}

void check_field_axioms(const GaloisField& gf) {
    const int q = gf.order();
    std::vector<FieldElement> elems;
    elems.reserve(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) {
        elems.push_back(gf.element(i));
    }
    const auto zero = gf.zero();
    const auto one = gf.one();

    for (int i = 0; i < q; ++i) {
        // identities
        CHECK(gf.add(elems[i], zero) == elems[i]);
        CHECK(gf.mul(elems[i], one) == elems[i]);
        // inverse of every nonzero element
        if (!(elems[i] == zero)) {
            CHECK(gf.mul(elems[i], gf.inverse(elems[i])) == one);
        }
        for (int j = 0; j < q; ++j) {
            // commutativity
            CHECK(gf.add(elems[i], elems[j]) == gf.add(elems[j], elems[i]));
            CHECK(gf.mul(elems[i], elems[j]) == gf.mul(elems[j], elems[i]));
            for (int k = 0; k < q; ++k) {
                // associativity and distributivity
                CHECK(gf.add(gf.add(elems[i], elems[j]), elems[k]) ==
                      gf.add(elems[i], gf.add(elems[j], elems[k])));
                CHECK(gf.mul(gf.mul(elems[i], elems[j]), elems[k]) ==
                      gf.mul(elems[i], gf.mul(elems[j], elems[k])));
                CHECK(gf.mul(elems[i], gf.add(elems[j], elems[k])) ==
                      gf.add(gf.mul(elems[i], elems[j]), gf.mul(elems[i], elems[k])));
            }
        }
    }
}

}  // namespace

TEST_CASE("GF(2): 1 + 1 = 0") {
    const GaloisField gf(2, 1);
    CHECK(gf.add(gf.one(), gf.one()) == gf.zero());
}

TEST_CASE("canonical moduli are the documented ones") {
    CHECK(GaloisField(2, 2).modulus() == std::vector<int>{1, 1, 1});     // x^2+x+1
    CHECK(GaloisField(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});  // x^3+x+1
    CHECK(GaloisField(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1});
    CHECK(GaloisField(3, 2).modulus() == std::vector<int>{1, 0, 1});     // x^2+1
}

TEST_CASE("GF(4): x * x = x + 1") {
    const GaloisField gf(2, 2);
    const auto x = gf.element(2);  // coeffs (0,1)
    const auto expected = gf.element(3);  // coeffs (1,1) = x + 1
    CHECK(gf.mul(x, x) == expected);
}

TEST_CASE("GF(8): x * x * x = x + 1") {
    const GaloisField gf(2, 3);
    const auto x = gf.element(2);
    const auto expected = gf.element(3);
    CHECK(gf.mul(gf.mul(x, x), x) == expected);
}

TEST_CASE("multiplication agrees with the polynomial-reduction oracle") {
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        CAPTURE(p);
        CAPTURE(n);
        const GaloisField gf(p, n);
        for (int i = 0; i < gf.order(); ++i) {
            for (int j = 0; j < gf.order(); ++j) {
                const auto a = gf.element(i);
                const auto b = gf.element(j);
                CHECK(gf.mul(a, b).coeffs == oracle_mul(a.coeffs, b.coeffs, gf.modulus(), p));
            }
        }
    }
}

TEST_CASE("field axioms hold exhaustively for every order up to 16") {
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{
             {2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
             {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        CAPTURE(p);
        CAPTURE(n);
        check_field_axioms(GaloisField(p, n));
    }
}

TEST_CASE("constructor rejects invalid parameters") {
    CHECK_THROWS_AS(GaloisField(4, 1), std::invalid_argument);   // non-prime
    CHECK_THROWS_AS(GaloisField(6, 2), std::invalid_argument);   // non-prime
    CHECK_THROWS_AS(GaloisField(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(GaloisField(2, 17), std::invalid_argument);  // 2^17 > 2^16
    // x^2 + 1 = (x+1)^2 over GF(2)
    CHECK_THROWS_AS(GaloisField(2, std::vector<int>{1, 0, 1}), std::invalid_argument);
    // non-monic
    CHECK_THROWS_AS(GaloisField(3, std::vector<int>{1, 1, 2}), std::invalid_argument);
}

TEST_CASE("custom irreducible modulus is accepted") {
    // x^3 + x^2 + 1 is the other irreducible cubic over GF(2)
    const GaloisField gf(2, std::vector<int>{1, 0, 1, 1});
    check_field_axioms(gf);
}

TEST_CASE("inverse of zero is rejected") {
    const GaloisField gf(2, 3);
    CHECK_THROWS_AS(gf.inverse(gf.zero()), std::domain_error);
}

TEST_CASE("element indexing round-trips") {
    const GaloisField gf(3, 2);
    for (int i = 0; i < gf.order(); ++i) {
        CHECK(gf.index_of(gf.element(i)) == i);
    }
    CHECK_THROWS_AS(gf.element(9), std::invalid_argument);
    // elements of a different field are rejected
    const GaloisField other(2, 2);
    CHECK_THROWS_AS(gf.add(gf.one(), other.one()), std::invalid_argument);
}

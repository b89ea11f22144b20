#include "doctest.h"

#include <cmath>

#include "qkd/mub.hpp"

using namespace qkd;

namespace {

// |<a|b>|^2 = 1 iff the states agree up to a global phase.
bool same_up_to_phase(const StateVector& a, const StateVector& b) {
    return std::abs(overlap_sq(a, b) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("d=2, m=3 gives the three Pauli eigenbases") {
    const BasisSet set = mub_set(2, 3);
    REQUIRE(set.num_bases() == 3);

    const double a = 1.0 / std::sqrt(2.0);
    // sigma_z
    CHECK(same_up_to_phase(set.bases[0].vectors[0], StateVector::basis_state(2, 0)));
    CHECK(same_up_to_phase(set.bases[0].vectors[1], StateVector::basis_state(2, 1)));
    // sigma_x
    CHECK(same_up_to_phase(set.bases[1].vectors[0],
                           StateVector(2, {Complex{a, 0}, Complex{a, 0}})));
    CHECK(same_up_to_phase(set.bases[1].vectors[1],
                           StateVector(2, {Complex{a, 0}, Complex{-a, 0}})));
    // sigma_y
    CHECK(same_up_to_phase(set.bases[2].vectors[0],
                           StateVector(2, {Complex{a, 0}, Complex{0, a}})));
    CHECK(same_up_to_phase(set.bases[2].vectors[1],
                           StateVector(2, {Complex{a, 0}, Complex{0, -a}})));
}

TEST_CASE("d=2, m=2 is computational plus Fourier with overlap 1/2") {
    const BasisSet set = mub_set(2, 2);
    const Basis f = dqft_basis(2);
    for (int k = 0; k < 2; ++k) {
        CHECK(same_up_to_phase(set.bases[1].vectors[static_cast<size_t>(k)],
                               f.vectors[static_cast<size_t>(k)]));
    }
    CHECK(overlap_sq(set.bases[0].vectors[0], set.bases[1].vectors[0]) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("d=4, m=5: every cross-basis pair has squared overlap 1/4") {
    const BasisSet set = mub_set(4, 5);
    REQUIRE(set.num_bases() == 5);
    int pairs = 0;
    for (size_t a = 0; a < set.bases.size(); ++a) {
        for (size_t b = a + 1; b < set.bases.size(); ++b) {
            ++pairs;
            for (const auto& va : set.bases[a].vectors) {
                for (const auto& vb : set.bases[b].vectors) {
                    CHECK(std::abs(overlap_sq(va, vb) - 0.25) <= 1e-10);
                }
            }
        }
    }
    CHECK(pairs == 10);
}

TEST_CASE("full sets validate for every supported dimension") {
    for (int d : {2, 3, 4, 5, 7, 8}) {
        CAPTURE(d);
        const BasisSet set = mub_set(d, d + 1);
        CHECK(set.num_bases() == d + 1);
        CHECK(set.max_unbiasedness_deviation() <= 1e-10);
        for (const auto& basis : set.bases) {
            CHECK(basis.max_orthonormality_deviation() <= 1e-10);
        }
        // bases[0] is computational
        for (int k = 0; k < d; ++k) {
            CHECK(same_up_to_phase(set.bases[0].vectors[static_cast<size_t>(k)],
                                   StateVector::basis_state(d, k)));
        }
    }
}

TEST_CASE("for prime d the second basis is exactly the Fourier basis") {
    for (int d : {3, 5, 7}) {
        CAPTURE(d);
        const BasisSet set = mub_set(d, d + 1);
        const Basis f = dqft_basis(d);
        for (int k = 0; k < d; ++k) {
            for (int j = 0; j < d; ++j) {
                CHECK(std::abs(set.bases[1].vectors[static_cast<size_t>(k)][j] -
                               f.vectors[static_cast<size_t>(k)][j]) < 1e-12);
            }
        }
    }
}

TEST_CASE("pairwise set works for any dimension up to 16") {
    for (int d : {6, 10, 12, 16}) {
        CAPTURE(d);
        const BasisSet set = mub_set(d, 2);
        CHECK(set.max_unbiasedness_deviation() <= 1e-10);
    }
}

TEST_CASE("invalid requests are rejected") {
    CHECK_THROWS_AS(mub_set(4, 6), std::invalid_argument);   // m > d+1
    CHECK_THROWS_AS(mub_set(6, 3), std::invalid_argument);   // no full set for d=6
    CHECK_THROWS_AS(mub_set(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(mub_set(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(mub_set(17, 2), std::invalid_argument);  // beyond the d <= 16 envelope
}

TEST_CASE("intermediate m takes a prefix of the full set") {
    const BasisSet three = mub_set(8, 3);
    const BasisSet nine = mub_set(8, 9);
    for (int b = 0; b < 3; ++b) {
        for (int k = 0; k < 8; ++k) {
            CHECK(same_up_to_phase(three.bases[static_cast<size_t>(b)].vectors[static_cast<size_t>(k)],
                                   nine.bases[static_cast<size_t>(b)].vectors[static_cast<size_t>(k)]));
        }
    }
}

#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qkd/rng.hpp"
#include "qkd/state.hpp"

using namespace qkd;

namespace {

StateVector random_unit_state(int d, Rng& rng) {
    std::vector<Complex> amps(static_cast<size_t>(d));
    double norm = 0.0;
    for (auto& a : amps) {
        a = Complex{rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) {
        a /= norm;
    }
    return StateVector(d, std::move(amps));
}

}  // namespace

TEST_CASE("state construction enforces the invariants") {
    CHECK_THROWS_AS(StateVector(1, {Complex{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(2, {Complex{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(2, {Complex{1, 0}, Complex{1, 0}}), std::invalid_argument);
    const auto zero = StateVector::basis_state(4, 0);
    CHECK(zero.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dqft d=2 is the |+>, |-> basis") {
    const Basis f = dqft_basis(2);
    const double a = 1.0 / std::sqrt(2.0);
    CHECK(f.vectors[0][0].real() == doctest::Approx(a).epsilon(1e-14));
    CHECK(f.vectors[0][1].real() == doctest::Approx(a).epsilon(1e-14));
    CHECK(f.vectors[1][0].real() == doctest::Approx(a).epsilon(1e-14));
    CHECK(f.vectors[1][1].real() == doctest::Approx(-a).epsilon(1e-14));
    for (const auto& v : f.vectors) {
        CHECK(std::abs(v[0].imag()) < 1e-14);
        CHECK(std::abs(v[1].imag()) < 1e-14);
    }
}

TEST_CASE("dqft d=4 vector 0 is the uniform superposition") {
    const Basis f = dqft_basis(4);
    for (int j = 0; j < 4; ++j) {
        CHECK(f.vectors[0][j].real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(f.vectors[0][j].imag()) < 1e-14);
    }
}

TEST_CASE("dqft d=8 is unbiased with the computational basis") {
    const Basis f = dqft_basis(8);
    const Basis comp = computational_basis(8);
    for (const auto& fv : f.vectors) {
        for (const auto& cv : comp.vectors) {
            CHECK(overlap_sq(cv, fv) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("dqft basis is unitary for every supported dimension") {
    for (int d = 2; d <= 16; ++d) {
        CAPTURE(d);
        const Basis f = dqft_basis(d);
        CHECK(f.max_orthonormality_deviation() <= 1e-10);
    }
    CHECK_THROWS_AS(dqft_basis(1), std::invalid_argument);
}

TEST_CASE("inner product basics") {
    Rng rng(11);
    for (int d : {2, 4, 8}) {
        const auto psi = random_unit_state(d, rng);
        CHECK(inner_product(psi, psi).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(inner_product(psi, psi).imag()) < 1e-12);
    }

    // <0|+> = 1/sqrt(2)
    const auto zero = StateVector::basis_state(2, 0);
    const auto plus = dqft_basis(2).vectors[0];
    CHECK(inner_product(zero, plus).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    // distinct Fourier vectors are orthogonal (geometric sum cancels)
    const Basis f4 = dqft_basis(4);
    CHECK(std::abs(inner_product(f4.vectors[0], f4.vectors[1])) < 1e-14);

    CHECK_THROWS_AS(inner_product(StateVector::basis_state(2, 0), StateVector::basis_state(3, 0)),
                    std::invalid_argument);
}

TEST_CASE("inner product is conjugate-linear in the first argument") {
    // <i*psi|phi> = -i <psi|phi>
    const double a = 1.0 / std::sqrt(2.0);
    const StateVector psi(2, {Complex{a, 0}, Complex{a, 0}});
    const StateVector i_psi(2, {Complex{0, a}, Complex{0, a}});
    const StateVector phi = StateVector::basis_state(2, 0);
    const Complex lhs = inner_product(i_psi, phi);
    const Complex rhs = Complex{0, -1} * inner_product(psi, phi);
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("born sampling: eigenstate is deterministic") {
    const Basis comp = computational_basis(2);
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
        CHECK(born_sample(StateVector::basis_state(2, 0), comp, rng) == 0);
    }
}

TEST_CASE("born sampling: |+> in the computational basis is a fair coin") {
    const Basis comp = computational_basis(2);
    const auto plus = dqft_basis(2).vectors[0];
    Rng rng = derive_substream(17, 0);
    const int n = 100000;
    int ones = 0;
    for (int k = 0; k < n; ++k) {
        ones += born_sample(plus, comp, rng);
    }
    CHECK(std::abs(static_cast<double>(ones) / n - 0.5) < 0.01);
}

TEST_CASE("born sampling: unbiased basis gives uniform outcomes at d=8") {
    const Basis comp = computational_basis(8);
    const auto fourier_state = dqft_basis(8).vectors[3];
    Rng rng = derive_substream(18, 0);
    const int n = 100000;
    std::vector<int> counts(8, 0);
    for (int k = 0; k < n; ++k) {
        ++counts[static_cast<size_t>(born_sample(fourier_state, comp, rng))];
    }
    for (int c : counts) {
        CHECK(std::abs(static_cast<double>(c) / n - 1.0 / 8.0) < 0.01);
    }
}

TEST_CASE("born sampling is reproducible for a fixed seed") {
    const Basis comp = computational_basis(4);
    const auto state = dqft_basis(4).vectors[1];
    std::vector<int> first;
    std::vector<int> second;
    for (int rep = 0; rep < 2; ++rep) {
        Rng rng = derive_substream(99, 5);
        auto& sink = rep == 0 ? first : second;
        for (int k = 0; k < 500; ++k) {
            sink.push_back(born_sample(state, comp, rng));
        }
    }
    CHECK(first == second);

    Rng rng(1);
    CHECK_THROWS_AS(born_sample(StateVector::basis_state(2, 0), comp, rng),
                    std::invalid_argument);
}

TEST_CASE("pair superposition states") {
    const auto s = StateVector::pair_superposition(4, 1, 3, -1);
    const double a = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(s[1].real() == doctest::Approx(a).epsilon(1e-14));
    CHECK(std::abs(s[2]) < 1e-15);
    CHECK(s[3].real() == doctest::Approx(-a).epsilon(1e-14));
    CHECK_THROWS_AS(StateVector::pair_superposition(4, 2, 2, 1), std::invalid_argument);
}

// state.hpp
// Finite-dimensional pure states, orthonormal bases, and Born-rule sampling.

#pragma once

#include <complex>
#include <vector>

#include "qkd/rng.hpp"

namespace qkd {

using Complex = std::complex<double>;

// Tolerances for structural checks. Norms get the tighter bound; overlap
// comparisons (orthonormality, unbiasedness) the looser one.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kOverlapTol = 1e-10;

/// A pure quantum state of dimension d >= 2: d complex amplitudes, unit norm.
class StateVector {
public:
    StateVector(int dim, std::vector<Complex> amps);

    /// Computational basis state |k>.
    static StateVector basis_state(int dim, int k);

    /// (|i> + sign * |j>) / sqrt(2), i != j.
    static StateVector pair_superposition(int dim, int i, int j, int sign);

    int dim() const noexcept { return dim_; }
    const std::vector<Complex>& amps() const noexcept { return amps_; }
    const Complex& operator[](int j) const { return amps_[static_cast<size_t>(j)]; }

    double norm_sq() const noexcept;

private:
    int dim_;
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2.
double overlap_sq(const StateVector& a, const StateVector& b);

/// An ordered orthonormal basis of dimension d.
struct Basis {
    int dim = 0;
    std::vector<StateVector> vectors;

    /// max_{a,b} | <v_a|v_b> - delta_ab |.
    double max_orthonormality_deviation() const;
    /// Throws if the orthonormality deviation exceeds `tol`.
    void validate(double tol = kOverlapTol) const;
};

/// The basis {|0>, |1>, ..., |d-1>}.
Basis computational_basis(int d);

/// Discrete quantum Fourier basis: vector i has amplitudes w^{ij}/sqrt(d)
/// with w = exp(2*pi*i/d). Mutually unbiased with the computational basis.
Basis dqft_basis(int d);

/// An ordered collection of m pairwise mutually unbiased bases.
struct BasisSet {
    int dim = 0;
    std::vector<Basis> bases;

    int num_bases() const noexcept { return static_cast<int>(bases.size()); }

    /// max over cross-basis vector pairs of | |<a|b>|^2 - 1/d |.
    double max_unbiasedness_deviation() const;
    /// Checks per-basis orthonormality and cross-basis unbiasedness.
    void validate(double tol = kOverlapTol) const;
};

/// Projective measurement of `state` in `basis`: outcome k is drawn with
/// probability |<basis.vectors[k]|state>|^2. Consumes exactly one draw.
int born_sample(const StateVector& state, const Basis& basis, Rng& rng);

}  // namespace qkd

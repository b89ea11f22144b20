#include "qkd/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

// Probabilities below this are numerical residue of orthogonal overlaps
// (|<a|b>|^2 ~ 1e-32) and are snapped to zero so that noiseless runs are
// exactly error-free. Genuine Born probabilities in this toolkit are >= 1/d^2.
constexpr double kProbFloor = 1e-20;

}  // namespace

StateVector::StateVector(int dim, std::vector<Complex> amps)
    : dim_(dim), amps_(std::move(amps)) {
    if (dim_ < 2) {
        throw std::invalid_argument("StateVector: dim must be >= 2, got " + std::to_string(dim_));
    }
    if (amps_.size() != static_cast<size_t>(dim_)) {
        throw std::invalid_argument("StateVector: amplitude count does not match dim");
    }
    if (std::abs(norm_sq() - 1.0) > kNormTol) {
        throw std::invalid_argument("StateVector: amplitudes are not unit-norm");
    }
}

StateVector StateVector::basis_state(int dim, int k) {
    if (k < 0 || k >= dim) {
        throw std::invalid_argument("StateVector::basis_state: index out of range");
    }
    std::vector<Complex> amps(static_cast<size_t>(dim), Complex{0.0, 0.0});
    amps[static_cast<size_t>(k)] = Complex{1.0, 0.0};
    return StateVector(dim, std::move(amps));
}

StateVector StateVector::pair_superposition(int dim, int i, int j, int sign) {
    if (i < 0 || j < 0 || i >= dim || j >= dim || i == j) {
        throw std::invalid_argument("StateVector::pair_superposition: invalid level pair");
    }
    const double a = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(static_cast<size_t>(dim), Complex{0.0, 0.0});
    amps[static_cast<size_t>(i)] = Complex{a, 0.0};
    amps[static_cast<size_t>(j)] = Complex{sign >= 0 ? a : -a, 0.0};
    return StateVector(dim, std::move(amps));
}

double StateVector::norm_sq() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Complex acc{0.0, 0.0};
    for (int j = 0; j < a.dim(); ++j) {
        acc += std::conj(a[j]) * b[j];
    }
    return acc;
}

double overlap_sq(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

double Basis::max_orthonormality_deviation() const {
    double worst = 0.0;
    const int d = dim;
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            const double expect = (a == b) ? 1.0 : 0.0;
            const double dev = std::abs(std::abs(inner_product(vectors[static_cast<size_t>(a)],
                                                               vectors[static_cast<size_t>(b)])) -
                                        expect);
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

void Basis::validate(double tol) const {
    if (dim < 2 || vectors.size() != static_cast<size_t>(dim)) {
        throw std::invalid_argument("Basis: need exactly dim vectors, dim >= 2");
    }
    for (const auto& v : vectors) {
        if (v.dim() != dim) {
            throw std::invalid_argument("Basis: vector dimension mismatch");
        }
    }
    if (max_orthonormality_deviation() > tol) {
        throw std::runtime_error("Basis: orthonormality check failed");
    }
}

Basis computational_basis(int d) {
    if (d < 2) {
        throw std::invalid_argument("computational_basis: d must be >= 2");
    }
    Basis b;
    b.dim = d;
    b.vectors.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        b.vectors.push_back(StateVector::basis_state(d, k));
    }
    return b;
}

Basis dqft_basis(int d) {
    if (d < 2) {
        throw std::invalid_argument("dqft_basis: d must be >= 2");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Basis basis;
    basis.dim = d;
    basis.vectors.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<Complex> amps(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            // Reduce the exponent mod d before evaluating the phase so large
            // i*j products do not lose precision.
            const int e = (i * j) % d;
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(e) /
                                 static_cast<double>(d);
            amps[static_cast<size_t>(j)] = Complex{scale * std::cos(theta), scale * std::sin(theta)};
        }
        basis.vectors.emplace_back(d, std::move(amps));
    }
    return basis;
}

double BasisSet::max_unbiasedness_deviation() const {
    const double target = 1.0 / static_cast<double>(dim);
    double worst = 0.0;
    for (size_t a = 0; a < bases.size(); ++a) {
        for (size_t b = a + 1; b < bases.size(); ++b) {
            for (const auto& va : bases[a].vectors) {
                for (const auto& vb : bases[b].vectors) {
                    worst = std::max(worst, std::abs(overlap_sq(va, vb) - target));
                }
            }
        }
    }
    return worst;
}

void BasisSet::validate(double tol) const {
    if (bases.size() < 2) {
        throw std::invalid_argument("BasisSet: need at least two bases");
    }
    for (const auto& b : bases) {
        if (b.dim != dim) {
            throw std::invalid_argument("BasisSet: basis dimension mismatch");
        }
        b.validate(tol);
    }
    if (max_unbiasedness_deviation() > tol) {
        throw std::runtime_error("BasisSet: mutual unbiasedness check failed");
    }
}

int born_sample(const StateVector& state, const Basis& basis, Rng& rng) {
    if (state.dim() != basis.dim) {
        throw std::invalid_argument("born_sample: dimension mismatch");
    }
    const int d = basis.dim;
    std::vector<double> probs(static_cast<size_t>(d));
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
        double p = overlap_sq(basis.vectors[static_cast<size_t>(k)], state);
        if (p < kProbFloor) {
            p = 0.0;
        }
        probs[static_cast<size_t>(k)] = p;
        total += p;
    }
    const double u = rng.next_double() * total;
    double cum = 0.0;
    for (int k = 0; k < d; ++k) {
        cum += probs[static_cast<size_t>(k)];
        if (u < cum) {
            return k;
        }
    }
    return d - 1;  // u landed on the rounding edge of the last bucket
}

}  // namespace qkd

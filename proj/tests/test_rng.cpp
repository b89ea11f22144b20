#include "doctest.h"

#include <set>
#include <vector>

#include "qkd/rng.hpp"

using namespace qkd;

TEST_CASE("same (seed, index) reproduces the stream exactly") {
    Rng a = derive_substream(42, 0);
    Rng b = derive_substream(42, 0);
    for (int k = 0; k < 1000; ++k) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("distinct indices give distinct streams") {
    Rng a = derive_substream(42, 0);
    Rng b = derive_substream(42, 1);
    int differing = 0;
    for (int k = 0; k < 64; ++k) {
        if (a.next_u64() != b.next_u64()) {
            ++differing;
        }
    }
    CHECK(differing == 64);
}

TEST_CASE("next_double lies in [0, 1) and covers the range") {
    Rng rng(7);
    double lo = 1.0;
    double hi = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("next_below is unbiased within sampling error") {
    Rng rng(123);
    const int n = 6;
    std::vector<int> counts(n, 0);
    const int draws = 60000;
    for (int k = 0; k < draws; ++k) {
        ++counts[static_cast<size_t>(rng.next_below(n))];
    }
    for (int c : counts) {
        CHECK(std::abs(c - draws / n) < 400);  // ~4 sigma
    }
    CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("mix_seed differs from substream keys and is deterministic") {
    CHECK(mix_seed(9, 4) == mix_seed(9, 4));
    CHECK(mix_seed(9, 4) != mix_seed(9, 5));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 100; ++i) {
        seen.insert(mix_seed(1, i));
        seen.insert(derive_substream(1, i).key());
    }
    CHECK(seen.size() == 200);
}

#include <doctest.h>

#include <cmath>

#include "polyq/charsum.hpp"
#include "polyq/reference.hpp"
#include "polyq/spectrum.hpp"

using namespace polyq;

TEST_CASE("trivial character sums to N exactly") {
    for (u64 p : {5ull, 13ull, 101ull}) {
        const PrimeContext ctx(p);
        for (u64 N : {u64(1), (p + 1) / 2, p}) {
            const auto prof = character_sum_profile(ctx, 2, N);
            CHECK(prof.magnitudes[0] == static_cast<double>(N));
        }
    }
}

TEST_CASE("frozen maximum for p=5, w=4, N=5") {
    const PrimeContext ctx(5);
    const auto prof = character_sum_profile(ctx, 4, 5);
    CHECK(std::abs(prof.max_nontrivial - 2.236068) < 1e-6);  // |2 + 2w + w^3| = sqrt(5)
    // direct complex summation oracle
    const auto direct = ref::char_sum_direct(ctx, 4, 5);
    for (u64 a = 0; a < 5; ++a) {
        CHECK(std::abs(prof.magnitudes[a] - direct[a]) < 1e-9);
    }
}

TEST_CASE("profile equals direct summation") {
    for (u64 p : {13ull, 101ull}) {
        const PrimeContext ctx(p);
        for (u64 w : {u64(1), u64(5), p - 1}) {
            for (u64 N : {(p + 1) / 2, p}) {
                const auto prof = character_sum_profile(ctx, w, N);
                const auto direct = ref::char_sum_direct(ctx, w, N);
                for (u64 a = 0; a < p; ++a) {
                    CHECK(std::abs(prof.magnitudes[a] - direct[a]) <= 1e-9 * static_cast<double>(N));
                }
            }
        }
    }
}

TEST_CASE("triangle inequality and conjugate symmetry") {
    for (u64 p : {13ull, 257ull}) {
        const PrimeContext ctx(p);
        for (u64 w : {u64(1), u64(2), p - 2}) {
            const auto prof = character_sum_profile(ctx, w, p);
            const double slack = 1e-9 * static_cast<double>(p);
            for (u64 a = 1; a < p; ++a) {
                CHECK(prof.magnitudes[a] <= static_cast<double>(p) + slack);
                CHECK(std::abs(prof.magnitudes[a] - prof.magnitudes[p - a]) <= slack);
                CHECK(prof.max_nontrivial >= prof.magnitudes[a]);
            }
        }
    }
}

TEST_CASE("Parseval ties the profile to the frequency vector") {
    for (u64 p : {13ull, 101ull, 509ull}) {
        const PrimeContext ctx(p);
        for (u64 w : {u64(1), u64(2), (p - 1) / 2}) {
            for (u64 N : {(p + 1) / 2, p}) {
                const auto prof = character_sum_profile(ctx, w, N);
                const auto vp = value_profile(ctx, w, N);
                u64 freq_sq = 0;
                for (u64 f : vp.freq) freq_sq += f * f;
                double lhs = 0.0;
                for (double m : prof.magnitudes) lhs += m * m;
                const double rhs = static_cast<double>(p) * static_cast<double>(freq_sq);
                CHECK(std::abs(lhs - rhs) <= 1e-6 * rhs);
            }
        }
    }
}

TEST_CASE("cap on p") {
    const PrimeContext ctx(100003);
    CHECK_THROWS_AS(character_sum_profile(ctx, 2, 100), LimitExceeded);
}

TEST_CASE("zero map gives |S(a)| = N for every a") {
    const PrimeContext ctx(7);
    const auto prof = character_sum_profile(ctx, 7, 7);
    for (u64 a = 0; a < 7; ++a) {
        CHECK(std::abs(prof.magnitudes[a] - 7.0) < 1e-9);
    }
}

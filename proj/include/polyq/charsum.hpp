#pragma once

#include "polyq/arith.hpp"

namespace polyq {

/// |S(a)| for every additive character psi_a of F_p, where
/// S(a) = sum_{u<N} e(a*q_{p,w}(u)/p). magnitudes[0] = N exactly.
struct CharSumProfile {
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    std::vector<double> magnitudes;
    double max_nontrivial = 0.0;
};

/// Full profile from the frequency vector: p complex terms per character
/// instead of N. Characters evaluated in parallel. Requires p <= 10^5.
CharSumProfile character_sum_profile(const PrimeContext& ctx, u64 w, u64 N);

}  // namespace polyq

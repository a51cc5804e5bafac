#pragma once

#include <optional>
#include <string>

#include "polyq/arith.hpp"
#include "polyq/bigint.hpp"

namespace polyq {

/// Sizes of the iterated sumsets W_1, W_1 + W_1, ... of the value set of
/// q_{p,w} on [0, N), the Waring number g (nullopt = infinite), and the
/// first index ell with a nonzero quotient value.
struct WaringTrajectory {
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    std::vector<u64> sizes;
    std::optional<u64> g;
    std::optional<u64> ell;
};

/// counts[y] = #{(u_1,...,u_s) in [0,N)^s : sum q_{p,w}(u_i) == y mod p},
/// exact. Equals the s-fold cyclic self-convolution of the frequency vector.
struct RepCountVector {
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    u64 s = 0;
    std::vector<BigInt> counts;

    BigInt total() const;
};

struct ChainCheck {
    bool passed = true;
    u64 witness_s = 0;
    std::string detail;
};

WaringTrajectory waring_number(const PrimeContext& ctx, u64 w, u64 N);

RepCountVector representation_counts(const PrimeContext& ctx, u64 w, u64 N, u64 s);

/// Check #W_s >= min{s(#W_1 - 1) + 1, p} for every recorded s, and
/// g <= ceil((p-1)/(#W_1 - 1)) when the trajectory reaches p with #W_1 >= 2.
ChainCheck cauchy_davenport_floor(const std::vector<u64>& sizes, u64 p);

}  // namespace polyq

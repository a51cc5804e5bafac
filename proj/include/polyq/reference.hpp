#pragma once

#include <optional>

#include "polyq/arith.hpp"
#include "polyq/bigint.hpp"

namespace polyq::ref {

// Serial, direct-from-definition evaluators. They exist as oracles for the
// test suites and as the baseline for the benchmark; none of them share the
// shortcuts of the main kernels (no power-chain reuse, no frequency-vector
// trick, no chunked scans).

/// Repeated multiplication, no squaring ladder.
u64 pow_mod_serial(u64 base, u64 exp, u64 modulus);

/// ((u^{p-1} - 1)/p) mod p computed in exact (unbounded) integers.
u64 fermat_quotient_exact(u64 p, u64 u);

/// ((u^w - u^{wp})/p) mod p computed in exact (unbounded) integers.
u64 poly_quotient_exact(u64 p, u64 w, u64 u);

/// Plain serial loop of independent evaluations.
std::vector<u64> batch_quotients_serial(const PrimeContext& ctx, u64 w, u64 N);

std::vector<u64> primes_trial_division(u64 x);

/// Order check by enumerating all powers.
bool is_primitive_root(u64 g, u64 p);

/// |S(a)| for each a by direct summation over u < N (N complex terms per a).
std::vector<double> char_sum_direct(const PrimeContext& ctx, u64 w, u64 N);

/// Representation counts by brute force over all N^s tuples (s small).
std::vector<BigInt> rep_counts_brute(const PrimeContext& ctx, u64 w, u64 N, u64 s);

/// Iterated sumset sizes via std::set arithmetic, up to max_steps entries.
std::vector<u64> waring_sizes_setbased(const PrimeContext& ctx, u64 w, u64 N, u64 max_steps);

/// Term-by-term sum with per-term modular inversions.
u64 truncated_log_direct(const PrimeContext& ctx, u64 x);

/// Serial coverage scan.
u64 lambda_serial(const PrimeContext& ctx);

std::optional<u64> smallest_nonzero_serial(const PrimeContext& ctx, u64 w);

/// Exact binomial coefficient; n choose k must fit in 128 bits.
u128 binomial_exact(u64 n, u64 k);

}  // namespace polyq::ref

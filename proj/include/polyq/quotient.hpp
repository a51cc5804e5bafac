#pragma once

#include "polyq/arith.hpp"

namespace polyq {

/// Canonical reduction of an exponent w to w = w1 + w2*(p-1) with
/// 1 <= w1 <= p-1, plus the scale relating q_{p,w} to q_{p,w1} on [0, p).
/// When p | w the map is identically zero and only zero_map is meaningful.
struct QuotientSpec {
    u64 p = 0;
    u64 w = 0;
    bool zero_map = false;
    u64 w1 = 0;
    u64 w2 = 0;
    u64 scale = 0;  // w1^{-1} * (w1 - w2) mod p, nonzero when p does not divide w
};

/// Fermat quotient q_p(u): ((u^{p-1} - 1)/p) mod p for gcd(u, p) = 1,
/// zero on multiples of p. u is reduced mod p^2 first (q_p is p^2-periodic).
u64 fermat_quotient(const PrimeContext& ctx, u64 u);

/// Polynomial quotient q_{p,w}(u): ((u^w - u^{wp})/p) mod p, u reduced mod p^2.
u64 poly_quotient(const PrimeContext& ctx, u64 w, u64 u);

/// The other defining route: -u^w * w * q_p(u) mod p. Only valid for
/// gcd(u, p) = 1; used for cross-checking.
u64 poly_quotient_fermat_route(const PrimeContext& ctx, u64 w, u64 u);

/// Reduce w to its canonical (w1, w2, scale) triple. On [0, p),
/// q_{p,w}(u) = scale * q_{p,w1}(u) mod p.
QuotientSpec reduce_exponent(const PrimeContext& ctx, u64 w);

/// Truncated logarithm: sum_{i=1}^{p-1} x^i / i mod p.
u64 truncated_log(const PrimeContext& ctx, u64 x);

/// q_{p,w}(u) for u = 0..N-1 (N <= p required). Entries computed
/// independently, so the loop runs parallel when OpenMP is enabled.
std::vector<u64> batch_quotients(const PrimeContext& ctx, u64 w, u64 N);

}  // namespace polyq

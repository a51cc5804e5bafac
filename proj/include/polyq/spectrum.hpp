#pragma once

#include <optional>

#include "polyq/arith.hpp"

namespace polyq {

/// Polynomial over F_p: ascending coefficients, reduced mod p, trailing
/// zeros trimmed. The zero polynomial has an empty coefficient vector.
struct PolyOverFp {
    std::vector<u64> coeffs;

    static PolyOverFp make(std::vector<u64> raw, u64 p);
    bool is_zero() const { return coeffs.empty(); }
    u64 degree() const;  // undefined (throws) for the zero polynomial
    u64 eval(u64 x, u64 p) const;
};

/// Frequency vector of q_{p,w} on [0, N): freq[d] = M_d, plus the value-set
/// size V = #nonzero entries.
struct ValueProfile {
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    std::vector<u64> freq;
    u64 value_count = 0;

    std::vector<u64> values() const;  // support, ascending
    u64 max_multiplicity() const;
};

/// Q[a] = #{prime l < N : q_p(l) = a}, with prime_count = pi(N-1).
struct PrimeHistogram {
    u64 p = 0;
    u64 n = 0;
    std::vector<u64> counts;
    u64 prime_count = 0;
};

ValueProfile value_profile(const PrimeContext& ctx, u64 w, u64 N);

/// #{u < N : q_{p,w}(u) == f(u) mod p}.
u64 interpolation_count(const PrimeContext& ctx, u64 w, u64 N, const PolyOverFp& f);

/// interpolation_count with f(x) = x.
u64 fixed_points(const PrimeContext& ctx, u64 w, u64 N);

/// Partition of F_p^* into (p-1)/d cyclotomic classes of size d, indexed by
/// the smallest primitive root; d must divide p-1. Classes sorted ascending.
std::vector<std::vector<u64>> cyclotomic_classes(const PrimeContext& ctx, u64 d);

/// Smallest u >= 1 with q_{p,w}(u) != 0, searched over [1, p^2).
/// nullopt exactly when p | w (the zero map).
std::optional<u64> smallest_nonzero(const PrimeContext& ctx, u64 w);

/// Smallest L with {q_p(1), ..., q_p(L)} = F_p. Always <= p^2.
u64 lambda_p(const PrimeContext& ctx);

PrimeHistogram prime_quotient_histogram(const PrimeContext& ctx, u64 N);

}  // namespace polyq

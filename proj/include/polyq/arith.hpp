#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polyq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when a request exceeds one of the documented desk-scale caps.
struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caps. Everything below runs in fixed-width exact integers; the caps keep
// exhaustive walks of [0, p^2) and length-p tables affordable.
inline constexpr u64 kMaxPrimeSingle = 1'000'000'000;  // single evaluations
inline constexpr u64 kMaxPrimeExhaustive = 1'000'000;  // [0, p^2) walks, length-p tables
inline constexpr u64 kMaxPrimeCharSum = 100'000;       // full character-sum profiles
inline constexpr u64 kMaxPrimeConvolution = 4096;      // exact integer convolution
inline constexpr u64 kMaxRingSize = 1'000'000;         // q^n cap for exhaustive funcfield ops

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    const u64 room = m - b;
    return a >= room ? a - room : a + b;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

/// base^exp mod modulus by square-and-multiply. modulus = 0 is invalid.
u64 pow_mod(u64 base, u64 exp, u64 modulus);

/// Same, for exponents held as a little-endian vector of 64-bit digits
/// (exponents above 2^64 appear in function-field settings).
u64 pow_mod(u64 base, const std::vector<u64>& exp_digits, u64 modulus);

u64 gcd_u64(u64 a, u64 b);

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(u64 n);

/// a^{-1} mod p for an odd prime p; throws std::domain_error when p | a.
u64 inv_mod(u64 a, u64 p);

/// Smallest g >= 2 of multiplicative order p-1 modulo the prime p.
u64 primitive_root(u64 p);

/// All primes <= x, ascending. Empty for x < 2.
std::vector<u64> primes_up_to(u64 x);

/// Frozen arithmetic context for one odd prime p: p^2, the smallest
/// primitive root, and (for p within the exhaustive cap) the inverse table.
/// Immutable after construction and shareable across threads.
class PrimeContext {
public:
    explicit PrimeContext(u64 p);

    u64 p() const { return p_; }
    u64 p_sq() const { return p_sq_; }
    u64 gamma() const { return gamma_; }

    bool has_inverse_table() const { return !inv_.empty(); }

    /// inv[a] for 1 <= a < p; throws LimitExceeded when p is too large to table.
    const std::vector<u64>& inverse_table() const;

    /// a^{-1} mod p, via the table when present.
    u64 inv(u64 a) const;

private:
    u64 p_;
    u64 p_sq_;
    u64 gamma_;
    std::vector<u64> inv_;
};

}  // namespace polyq

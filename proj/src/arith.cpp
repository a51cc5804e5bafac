#include "polyq/arith.hpp"

#include <string>

namespace polyq {

u64 pow_mod(u64 base, u64 exp, u64 modulus) {
    if (modulus == 0) throw std::invalid_argument("pow_mod: modulus must be >= 1");
    u64 result = 1 % modulus;
    base %= modulus;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    return result;
}

u64 pow_mod(u64 base, const std::vector<u64>& exp_digits, u64 modulus) {
    if (modulus == 0) throw std::invalid_argument("pow_mod: modulus must be >= 1");
    u64 result = 1 % modulus;
    base %= modulus;
    for (u64 digit : exp_digits) {
        for (int bit = 0; bit < 64; ++bit) {
            if (digit & (u64(1) << bit)) result = mul_mod(result, base, modulus);
            base = mul_mod(base, base, modulus);
        }
    }
    return result;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

u64 inv_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("inv_mod: value not invertible (divisible by p)");
    return pow_mod(a, p - 2, p);
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    const u64 m = p - 1;
    std::vector<u64> prime_factors;
    u64 rest = m;
    for (u64 f = 2; f * f <= rest; ++f) {
        if (rest % f == 0) {
            prime_factors.push_back(f);
            while (rest % f == 0) rest /= f;
        }
    }
    if (rest > 1) prime_factors.push_back(rest);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : prime_factors) {
            if (pow_mod(g, m / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found (input not prime?)");
}

std::vector<u64> primes_up_to(u64 x) {
    std::vector<u64> out;
    if (x < 2) return out;
    std::vector<bool> composite(x + 1, false);
    for (u64 i = 2; i * i <= x; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= x; j += i) composite[j] = true;
    }
    for (u64 i = 2; i <= x; ++i) {
        if (!composite[i]) out.push_back(i);
    }
    return out;
}

PrimeContext::PrimeContext(u64 p) : p_(p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("PrimeContext: p must be an odd prime, got " + std::to_string(p));
    }
    if (p > kMaxPrimeSingle) {
        throw LimitExceeded("PrimeContext: p exceeds the single-evaluation cap of 10^9");
    }
    p_sq_ = p * p;
    gamma_ = primitive_root(p);
    if (p <= kMaxPrimeExhaustive) {
        inv_.assign(p, 0);
        inv_[1] = 1;
        for (u64 i = 2; i < p; ++i) inv_[i] = p - mul_mod(p / i, inv_[p % i], p);
    }
}

const std::vector<u64>& PrimeContext::inverse_table() const {
    if (inv_.empty()) {
        throw LimitExceeded("PrimeContext: inverse table unavailable for p > 10^6");
    }
    return inv_;
}

u64 PrimeContext::inv(u64 a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("PrimeContext::inv: value divisible by p");
    return inv_.empty() ? inv_mod(a, p_) : inv_[a];
}

}  // namespace polyq

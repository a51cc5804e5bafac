#include "polyq/reference.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "polyq/quotient.hpp"

namespace polyq::ref {

u64 pow_mod_serial(u64 base, u64 exp, u64 modulus) {
    if (modulus == 0) throw std::invalid_argument("pow_mod_serial: modulus must be >= 1");
    u64 acc = 1 % modulus;
    base %= modulus;
    for (u64 i = 0; i < exp; ++i) acc = mul_mod(acc, base, modulus);
    return acc;
}

namespace {

BigInt big_pow(u64 base, u64 exp) {
    BigInt acc = 1;
    for (u64 i = 0; i < exp; ++i) acc *= base;
    return acc;
}

}  // namespace

u64 fermat_quotient_exact(u64 p, u64 u) {
    u %= p * p;
    if (u % p == 0) return 0;
    const BigInt t = (big_pow(u, p - 1) - 1) / p;
    return static_cast<u64>(t % p);
}

u64 poly_quotient_exact(u64 p, u64 w, u64 u) {
    u %= p * p;
    const BigInt diff = big_pow(u, w) - big_pow(u, w * p);
    BigInt q = diff / BigInt(p);  // exact: u^w == u^{wp} mod p
    q %= p;
    if (q < 0) q += p;
    return static_cast<u64>(q);
}

std::vector<u64> batch_quotients_serial(const PrimeContext& ctx, u64 w, u64 N) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("batch_quotients_serial: N must satisfy 1 <= N <= p");
    }
    std::vector<u64> out(N);
    for (u64 u = 0; u < N; ++u) out[u] = poly_quotient(ctx, w, u);
    return out;
}

std::vector<u64> primes_trial_division(u64 x) {
    std::vector<u64> out;
    for (u64 n = 2; n <= x; ++n) {
        bool prime = true;
        for (u64 d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(n);
    }
    return out;
}

bool is_primitive_root(u64 g, u64 p) {
    g %= p;
    if (g == 0) return false;
    u64 x = g % p;
    u64 order = 1;
    while (x != 1) {
        x = mul_mod(x, g, p);
        ++order;
    }
    return order == p - 1;
}

std::vector<double> char_sum_direct(const PrimeContext& ctx, u64 w, u64 N) {
    const u64 p = ctx.p();
    std::vector<u64> q(N);
    for (u64 u = 0; u < N; ++u) q[u] = poly_quotient(ctx, w, u);
    std::vector<double> mags(p);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (u64 a = 0; a < p; ++a) {
        double re = 0.0;
        double im = 0.0;
        for (u64 u = 0; u < N; ++u) {
            const double arg = step * static_cast<double>(mul_mod(a, q[u], p));
            re += std::cos(arg);
            im += std::sin(arg);
        }
        mags[a] = std::hypot(re, im);
    }
    return mags;
}

std::vector<BigInt> rep_counts_brute(const PrimeContext& ctx, u64 w, u64 N, u64 s) {
    const u64 p = ctx.p();
    std::vector<u64> q(N);
    for (u64 u = 0; u < N; ++u) q[u] = poly_quotient(ctx, w, u);
    std::vector<BigInt> counts(p, 0);
    // odometer over [0, N)^s
    std::vector<u64> tuple(s, 0);
    while (true) {
        u64 sum = 0;
        for (u64 i = 0; i < s; ++i) sum = add_mod(sum, q[tuple[i]], p);
        counts[sum] += 1;
        u64 pos = 0;
        while (pos < s && ++tuple[pos] == N) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == s) break;
    }
    return counts;
}

std::vector<u64> waring_sizes_setbased(const PrimeContext& ctx, u64 w, u64 N, u64 max_steps) {
    const u64 p = ctx.p();
    std::set<u64> w1;
    for (u64 u = 0; u < N; ++u) w1.insert(poly_quotient(ctx, w, u));
    std::vector<u64> sizes{w1.size()};
    std::set<u64> current = w1;
    while (sizes.size() < max_steps && sizes.back() < p) {
        std::set<u64> next;
        for (u64 a : current) {
            for (u64 b : w1) next.insert(add_mod(a, b, p));
        }
        if (next.size() == current.size()) break;
        sizes.push_back(next.size());
        current = std::move(next);
    }
    return sizes;
}

u64 truncated_log_direct(const PrimeContext& ctx, u64 x) {
    const u64 p = ctx.p();
    x %= p;
    if (x == 0) return 0;
    u64 acc = 0;
    for (u64 i = 1; i < p; ++i) {
        acc = add_mod(acc, mul_mod(pow_mod(x, i, p), inv_mod(i, p), p), p);
    }
    return acc;
}

u64 lambda_serial(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    std::vector<char> seen(p, 0);
    u64 covered = 0;
    for (u64 u = 1; u <= ctx.p_sq(); ++u) {
        char& flag = seen[fermat_quotient(ctx, u)];
        if (!flag) {
            flag = 1;
            if (++covered == p) return u;
        }
    }
    throw std::logic_error("lambda_serial: coverage incomplete below p^2");
}

std::optional<u64> smallest_nonzero_serial(const PrimeContext& ctx, u64 w) {
    if (w % ctx.p() == 0) return std::nullopt;
    for (u64 u = 1; u < ctx.p_sq(); ++u) {
        if (poly_quotient(ctx, w, u) != 0) return u;
    }
    return std::nullopt;
}

u128 binomial_exact(u64 n, u64 k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 c = 1;
    for (u64 i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;  // exact at every step
    }
    return c;
}

}  // namespace polyq::ref

#include "polyq/quotient.hpp"

namespace polyq {

u64 fermat_quotient(const PrimeContext& ctx, u64 u) {
    const u64 p = ctx.p();
    u %= ctx.p_sq();
    if (u % p == 0) return 0;
    const u64 t = pow_mod(u, p - 1, ctx.p_sq());
    // t == 1 mod p by Fermat, so the division is exact
    return ((t - 1) / p) % p;
}

u64 poly_quotient(const PrimeContext& ctx, u64 w, u64 u) {
    if (w == 0) throw std::invalid_argument("poly_quotient: w must be >= 1");
    const u64 p = ctx.p();
    const u64 p2 = ctx.p_sq();
    u %= p2;
    const u64 a = pow_mod(u, w, p2);
    const u64 b = pow_mod(a, p, p2);  // u^{wp} = (u^w)^p, avoids forming w*p
    const u64 diff = a >= b ? a - b : a + (p2 - b);
    // u^w == u^{wp} mod p, so p | diff
    const u64 q = (diff / p) % p;
#ifdef POLYQ_DUAL_EVAL
    if (u % p != 0 && q != poly_quotient_fermat_route(ctx, w, u)) {
        throw std::logic_error("poly_quotient: defining routes disagree");
    }
#endif
    return q;
}

u64 poly_quotient_fermat_route(const PrimeContext& ctx, u64 w, u64 u) {
    const u64 p = ctx.p();
    u64 t = mul_mod(pow_mod(u % p, w, p), w % p, p);
    t = mul_mod(t, fermat_quotient(ctx, u), p);
    return (p - t) % p;
}

QuotientSpec reduce_exponent(const PrimeContext& ctx, u64 w) {
    if (w == 0) throw std::invalid_argument("reduce_exponent: w must be >= 1");
    const u64 p = ctx.p();
    QuotientSpec spec;
    spec.p = p;
    spec.w = w;
    if (w % p == 0) {
        spec.zero_map = true;
        return spec;
    }
    const u64 pm1 = p - 1;
    spec.w1 = (w - 1) % pm1 + 1;
    spec.w2 = (w - spec.w1) / pm1;
    // w1 - w2 == w mod p, nonzero because p does not divide w
    spec.scale = mul_mod(inv_mod(spec.w1, p), w % p, p);
    return spec;
}

u64 truncated_log(const PrimeContext& ctx, u64 x) {
    const u64 p = ctx.p();
    x %= p;
    if (x == 0) return 0;
    const auto& inv = ctx.inverse_table();
    u64 acc = 0;
    u64 power = 1;
    for (u64 i = 1; i < p; ++i) {
        power = mul_mod(power, x, p);
        acc = add_mod(acc, mul_mod(power, inv[i], p), p);
    }
    return acc;
}

std::vector<u64> batch_quotients(const PrimeContext& ctx, u64 w, u64 N) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("batch_quotients: N must satisfy 1 <= N <= p");
    }
    if (w == 0) throw std::invalid_argument("batch_quotients: w must be >= 1");
    std::vector<u64> out(N);
#pragma omp parallel for schedule(static)
    for (u64 u = 0; u < N; ++u) {
        out[u] = poly_quotient(ctx, w, u);
    }
    return out;
}

}  // namespace polyq

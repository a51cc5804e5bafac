#include "polyq/spectrum.hpp"

#include <algorithm>

#include "polyq/quotient.hpp"

namespace polyq {

PolyOverFp PolyOverFp::make(std::vector<u64> raw, u64 p) {
    for (u64& c : raw) c %= p;
    while (!raw.empty() && raw.back() == 0) raw.pop_back();
    return PolyOverFp{std::move(raw)};
}

u64 PolyOverFp::degree() const {
    if (coeffs.empty()) throw std::domain_error("degree of the zero polynomial is undefined");
    return coeffs.size() - 1;
}

u64 PolyOverFp::eval(u64 x, u64 p) const {
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = add_mod(mul_mod(acc, x, p), *it, p);
    }
    return acc;
}

std::vector<u64> ValueProfile::values() const {
    std::vector<u64> out;
    for (u64 d = 0; d < freq.size(); ++d) {
        if (freq[d] != 0) out.push_back(d);
    }
    return out;
}

u64 ValueProfile::max_multiplicity() const {
    u64 m = 0;
    for (u64 c : freq) m = std::max(m, c);
    return m;
}

namespace {

void check_profile_args(const PrimeContext& ctx, u64 N) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("N must satisfy 1 <= N <= p");
    }
    if (ctx.p() > kMaxPrimeExhaustive) {
        throw LimitExceeded("value profiles require p <= 10^6");
    }
}

}  // namespace

ValueProfile value_profile(const PrimeContext& ctx, u64 w, u64 N) {
    check_profile_args(ctx, N);
    ValueProfile prof;
    prof.p = ctx.p();
    prof.w = w;
    prof.n = N;
    prof.freq.assign(ctx.p(), 0);
    for (u64 q : batch_quotients(ctx, w, N)) ++prof.freq[q];
    for (u64 c : prof.freq) prof.value_count += (c != 0);
    return prof;
}

u64 interpolation_count(const PrimeContext& ctx, u64 w, u64 N, const PolyOverFp& f) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("N must satisfy 1 <= N <= p");
    }
    const auto q = batch_quotients(ctx, w, N);
    const u64 p = ctx.p();
    u64 count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (u64 u = 0; u < N; ++u) {
        count += (q[u] == f.eval(u, p));
    }
    return count;
}

u64 fixed_points(const PrimeContext& ctx, u64 w, u64 N) {
    return interpolation_count(ctx, w, N, PolyOverFp::make({0, 1}, ctx.p()));
}

std::vector<std::vector<u64>> cyclotomic_classes(const PrimeContext& ctx, u64 d) {
    const u64 p = ctx.p();
    if (d == 0 || (p - 1) % d != 0) {
        throw std::invalid_argument("cyclotomic_classes: d must divide p-1");
    }
    if (p > kMaxPrimeExhaustive) {
        throw LimitExceeded("cyclotomic_classes requires p <= 10^6");
    }
    const u64 class_count = (p - 1) / d;
    std::vector<std::vector<u64>> classes(class_count);
    u64 power = 1;  // gamma^k
    for (u64 k = 0; k < p - 1; ++k) {
        classes[k % class_count].push_back(power);
        power = mul_mod(power, ctx.gamma(), p);
    }
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());
    return classes;
}

std::optional<u64> smallest_nonzero(const PrimeContext& ctx, u64 w) {
    if (w == 0) throw std::invalid_argument("smallest_nonzero: w must be >= 1");
    if (w % ctx.p() == 0) return std::nullopt;
    if (ctx.p() > kMaxPrimeExhaustive) {
        throw LimitExceeded("smallest_nonzero requires p <= 10^6");
    }
    // A nonzero value exists below p^2 whenever p does not divide w, and in
    // practice the first one appears within a few steps.
    for (u64 u = 1; u < ctx.p_sq(); ++u) {
        if (poly_quotient(ctx, w, u) != 0) return u;
    }
    return std::nullopt;  // unreachable for p not dividing w
}

u64 lambda_p(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p > kMaxPrimeExhaustive) {
        throw LimitExceeded("lambda_p requires p <= 10^6");
    }
    std::vector<char> seen(p, 0);
    u64 covered = 0;
    const u64 cap = ctx.p_sq();
    const u64 chunk = 8192;
    std::vector<u64> vals(chunk);
    for (u64 lo = 1; lo <= cap; lo += chunk) {
        const u64 hi = std::min(lo + chunk, cap + 1);
        vals.resize(hi - lo);
#pragma omp parallel for schedule(static)
        for (u64 u = lo; u < hi; ++u) {
            vals[u - lo] = fermat_quotient(ctx, u);
        }
        for (u64 u = lo; u < hi; ++u) {
            char& flag = seen[vals[u - lo]];
            if (!flag) {
                flag = 1;
                if (++covered == p) return u;
            }
        }
    }
    throw std::logic_error("lambda_p: q_p failed to cover F_p below p^2");
}

PrimeHistogram prime_quotient_histogram(const PrimeContext& ctx, u64 N) {
    if (N < 2 || N > ctx.p()) {
        throw std::invalid_argument("prime_quotient_histogram: N must satisfy 2 <= N <= p");
    }
    if (ctx.p() > kMaxPrimeExhaustive) {
        throw LimitExceeded("prime_quotient_histogram requires p <= 10^6");
    }
    PrimeHistogram hist;
    hist.p = ctx.p();
    hist.n = N;
    hist.counts.assign(ctx.p(), 0);
    const auto primes = primes_up_to(N - 1);
    hist.prime_count = primes.size();
    for (u64 l : primes) ++hist.counts[fermat_quotient(ctx, l)];
    return hist;
}

}  // namespace polyq

#include "polyq/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polyq/bigint.hpp"
#include "polyq/charsum.hpp"
#include "polyq/funcfield.hpp"
#include "polyq/quotient.hpp"
#include "polyq/reference.hpp"
#include "polyq/spectrum.hpp"
#include "polyq/waring.hpp"

namespace polyq {

namespace {

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

struct Checker {
    SuiteResult res;

    explicit Checker(std::string name) { res.suite = std::move(name); }
    bool failed() const { return !res.passed; }

    template <typename WitnessFn>
    void require(bool cond, WitnessFn&& witness) {
        if (!res.passed) return;
        ++res.checks;
        if (!cond) {
            res.passed = false;
            res.witness = witness();
        }
    }
};

u64 qeval(const SuiteOptions& opt, const PrimeContext& ctx, u64 w, u64 u) {
    return opt.quotient_override ? opt.quotient_override(ctx, w, u) : poly_quotient(ctx, w, u);
}

std::vector<u64> odd_primes_up_to(u64 x) {
    auto primes = primes_up_to(x);
    std::erase(primes, 2);
    return primes;
}

u64 ceil_half(u64 p) { return (p + 1) / 2; }

// ---------------------------------------------------------------------------
// identity suites
// ---------------------------------------------------------------------------

SuiteResult suite_two_path(const IdentityGrid& grid, const SuiteOptions& opt) {
    Checker c("two-path");
    for (u64 p : odd_primes_up_to(grid.two_path_max_prime)) {
        const PrimeContext ctx(p);
        for (u64 u = 1; u < ctx.p_sq(); ++u) {
            if (u % p == 0) continue;
            const u64 qp = fermat_quotient(ctx, u);
            u64 upow = 1;
            for (u64 w = 1; w < p; ++w) {
                upow = mul_mod(upow, u, p);
                const u64 direct = qeval(opt, ctx, w, u);
                const u64 route = (p - mul_mod(mul_mod(upow, w, p), qp, p)) % p;
                c.require(direct == route, [&] {
                    return cat("p=", p, " w=", w, " u=", u, ": direct=", direct, " route=", route);
                });
                if (c.failed()) return c.res;
            }
        }
    }
    return c.res;
}

SuiteResult suite_reduction(const IdentityGrid& grid, const SuiteOptions& opt) {
    Checker c("reduction");
    const std::vector<std::vector<u64>> f_family{{0, 1}, {1, 0, 1}};
    for (u64 p : odd_primes_up_to(grid.two_path_max_prime)) {
        const PrimeContext ctx(p);

        // q_{p,p-1} specializes to the Fermat quotient on a full period
        for (u64 u = 0; u < ctx.p_sq(); ++u) {
            c.require(qeval(opt, ctx, p - 1, u) == fermat_quotient(ctx, u),
                      [&] { return cat("p=", p, " u=", u, ": q_{p,p-1} != q_p"); });
            if (c.failed()) return c.res;
        }

        // values on multiples of p: k for w = 1, zero for w >= 2
        for (u64 k = 0; k < p; ++k) {
            const u64 u = k * p;
            c.require(qeval(opt, ctx, 1, u) == k,
                      [&] { return cat("p=", p, " k=", k, ": q_{p,1}(kp) != k"); });
            for (u64 w = 2; w < p; ++w) {
                c.require(qeval(opt, ctx, w, u) == 0,
                          [&] { return cat("p=", p, " w=", w, " k=", k, ": q_{p,w}(kp) != 0"); });
            }
            if (c.failed()) return c.res;
        }

        // canonical reduction: spec fields and the scale identity on [0, p)
        for (u64 w1 = 1; w1 < p; ++w1) {
            for (u64 w2 : {u64(0), u64(1), u64(2), u64(5)}) {
                const u64 w = w1 + w2 * (p - 1);
                const auto spec = reduce_exponent(ctx, w);
                if (w % p == 0) {
                    c.require(spec.zero_map, [&] { return cat("p=", p, " w=", w, ": zero_map not set"); });
                    continue;
                }
                c.require(spec.w1 == w1 && spec.w2 == w2 && spec.scale != 0, [&] {
                    return cat("p=", p, " w=", w, ": bad reduction (w1=", spec.w1, " w2=", spec.w2,
                               " scale=", spec.scale, ")");
                });
                for (u64 u = 0; u < p; ++u) {
                    const u64 lhs = qeval(opt, ctx, w, u);
                    const u64 rhs = mul_mod(spec.scale, qeval(opt, ctx, w1, u), p);
                    c.require(lhs == rhs, [&] {
                        return cat("p=", p, " w=", w, " u=", u, ": scale identity broken");
                    });
                }
                if (c.failed()) return c.res;
            }
        }

        // p | w: the zero map collapses V to a single value
        for (u64 k = 1; k <= 3; ++k) {
            c.require(reduce_exponent(ctx, k * p).zero_map,
                      [&] { return cat("p=", p, " w=", k * p, ": zero_map not set"); });
            const auto prof = value_profile(ctx, k * p, p);
            c.require(prof.value_count == 1,
                      [&] { return cat("p=", p, " w=", k * p, ": V != 1 for the zero map"); });
        }

        // F/V/g invariance under w -> w + (p-1)
        for (u64 w1 = 1; w1 < p; ++w1) {
            const u64 w = w1 + (p - 1);
            if (w % p == 0) continue;
            const auto spec = reduce_exponent(ctx, w);
            for (u64 N : {ceil_half(p), p}) {
                c.require(value_profile(ctx, w, N).value_count ==
                              value_profile(ctx, w1, N).value_count,
                          [&] { return cat("p=", p, " w=", w, " N=", N, ": V changed"); });
                const auto g_lhs = waring_number(ctx, w, N).g;
                const auto g_rhs = waring_number(ctx, w1, N).g;
                c.require(g_lhs == g_rhs,
                          [&] { return cat("p=", p, " w=", w, " N=", N, ": g changed"); });
                const u64 inv_scale = inv_mod(spec.scale, p);
                for (const auto& coeffs : f_family) {
                    const auto f = PolyOverFp::make(coeffs, p);
                    std::vector<u64> scaled(f.coeffs);
                    for (u64& x : scaled) x = mul_mod(x, inv_scale, p);
                    const auto fs = PolyOverFp::make(scaled, p);
                    c.require(interpolation_count(ctx, w, N, f) ==
                                  interpolation_count(ctx, w1, N, fs),
                              [&] { return cat("p=", p, " w=", w, " N=", N, ": F changed"); });
                }
            }
            if (c.failed()) return c.res;
        }
    }
    return c.res;
}

SuiteResult suite_homomorphism(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("homomorphism");
    for (u64 p : odd_primes_up_to(grid.homomorphism_max_prime)) {
        const PrimeContext ctx(p);
        const u64 p2 = ctx.p_sq();
        std::vector<u64> qp(p2);
        for (u64 u = 0; u < p2; ++u) qp[u] = fermat_quotient(ctx, u);

        u64 kernel = 0;
        for (u64 u = 1; u < p2; ++u) {
            if (u % p != 0 && qp[u] == 0) ++kernel;
        }
        c.require(kernel == p - 1,
                  [&] { return cat("p=", p, ": zero fiber has ", kernel, " elements, expected ", p - 1); });

        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
        auto draw_unit = [&] {
            while (true) {
                const u64 x = rng() % (p2 - 1) + 1;
                if (x % p != 0) return x;
            }
        };
        for (u64 t = 0; t < grid.homomorphism_pairs; ++t) {
            const u64 u = draw_unit();
            const u64 v = draw_unit();
            const u64 lhs = qp[mul_mod(u, v, p2)];
            const u64 rhs = add_mod(qp[u], qp[v], p);
            c.require(lhs == rhs,
                      [&] { return cat("p=", p, " u=", u, " v=", v, ": q_p(uv) != q_p(u)+q_p(v)"); });
            if (c.failed()) return c.res;
        }
    }
    return c.res;
}

SuiteResult suite_addition_law(const IdentityGrid& grid, const SuiteOptions& opt) {
    Checker c("addition-law");
    for (u64 p : odd_primes_up_to(grid.addition_law_max_prime)) {
        const PrimeContext ctx(p);
        const u64 p2 = ctx.p_sq();
        std::vector<u64> q1(p2);
        for (u64 u = 0; u < p2; ++u) q1[u] = qeval(opt, ctx, 1, u);
        std::vector<u64> ltab(p);
        for (u64 x = 0; x < p; ++x) ltab[x] = truncated_log(ctx, x);

        for (u64 a = 1; a < p2 && !c.failed(); ++a) {
            if (a % p == 0) continue;
            const u64 am = a % p;
            for (u64 b = 1; b < p2; ++b) {
                if (b % p == 0 || (am + b) % p == 0) continue;
                const u64 x = (p - mul_mod(am, ctx.inv(b % p), p)) % p;  // -a/b mod p
                const u64 rhs = add_mod(add_mod(q1[a], q1[b], p), mul_mod(b % p, ltab[x], p), p);
                const u64 lhs = q1[(a + b) % p2];
                c.require(lhs == rhs, [&] {
                    return cat("p=", p, " a=", a, " c=", b, ": addition law broken");
                });
                if (c.failed()) break;
            }
        }
        if (c.failed()) return c.res;
    }

    // binomial identity C(p,i)/p == (-1)^{i-1} / i mod p
    for (u64 p : odd_primes_up_to(grid.binomial_max_prime)) {
        const PrimeContext ctx(p);
        for (u64 i = 1; i < p; ++i) {
            const u128 binom = ref::binomial_exact(p, i);
            c.require(binom % p == 0, [&] { return cat("p=", p, " i=", i, ": p does not divide C(p,i)"); });
            if (c.failed()) return c.res;
            const u64 lhs = static_cast<u64>((binom / p) % p);
            const u64 inv_i = ctx.inv(i);
            const u64 rhs = (i % 2 == 1) ? inv_i : p - inv_i;
            c.require(lhs == rhs, [&] { return cat("p=", p, " i=", i, ": binomial identity broken"); });
            if (c.failed()) return c.res;
        }
    }
    return c.res;
}

SuiteResult suite_lemma1(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("lemma1");
    for (u64 p : odd_primes_up_to(grid.lemma1_max_prime)) {
        if (p < 5) continue;
        const PrimeContext ctx(p);
        for (u64 N : {ceil_half(p), p}) {
            const auto hist = prime_quotient_histogram(ctx, N);
            const u64 pi = hist.prime_count;
            u64 sum = 0;
            u64 sum_sq = 0;
            for (u64 q : hist.counts) {
                sum += q;
                sum_sq += q * q;
            }
            c.require(sum == pi, [&] { return cat("p=", p, " N=", N, ": sum Q != pi(N-1)"); });
            c.require(sum_sq <= pi + p - 2,
                      [&] { return cat("p=", p, " N=", N, ": sum Q^2 = ", sum_sq, " > ", pi + p - 2); });
            const u64 V = value_profile(ctx, p - 1, N).value_count;
            c.require(V * (pi + p - 2) >= pi * pi, [&] {
                return cat("p=", p, " N=", N, ": V=", V, " below pi^2/(pi+p-2)");
            });
            if (c.failed()) return c.res;
        }
    }
    return c.res;
}

SuiteResult suite_theorem3(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("theorem3");
    for (u64 p : odd_primes_up_to(grid.theorem3_max_prime)) {
        const PrimeContext ctx(p);
        for (u64 N : {ceil_half(p), p}) {
            const u64 v_fermat = value_profile(ctx, p - 1, N).value_count;
            for (u64 w = 1; w < p; ++w) {
                const auto prof = value_profile(ctx, w, N);
                const u64 g = gcd_u64(w, p - 1);
                c.require(prof.value_count * (p - 1) >= v_fermat * g, [&] {
                    return cat("p=", p, " w=", w, " N=", N, ": pigeonhole chain broken (V=",
                               prof.value_count, ")");
                });
                c.require(prof.value_count * prof.max_multiplicity() >= N, [&] {
                    return cat("p=", p, " w=", w, " N=", N, ": V * max M_d < N");
                });
                if (c.failed()) return c.res;
            }
        }
        // power images and cyclotomic classes, independent of N
        for (u64 w = 1; w < p; ++w) {
            const u64 d = gcd_u64(w, p - 1);
            std::vector<char> im_w(p, 0), im_d(p, 0);
            for (u64 u = 1; u < p; ++u) {
                im_w[pow_mod(u, w, p)] = 1;
                im_d[pow_mod(u, d, p)] = 1;
            }
            c.require(im_w == im_d,
                      [&] { return cat("p=", p, " w=", w, ": {u^w} != {u^gcd(w,p-1)}"); });
            for (const auto& cls : cyclotomic_classes(ctx, d)) {
                const u64 ref_pow = pow_mod(cls.front(), w, p);
                for (u64 u : cls) {
                    c.require(pow_mod(u, w, p) == ref_pow, [&] {
                        return cat("p=", p, " w=", w, " u=", u, ": u^w not constant on class");
                    });
                }
            }
            if (c.failed()) return c.res;
        }
    }
    return c.res;
}

std::vector<BigInt> cyclic_convolve(const std::vector<BigInt>& a, const std::vector<u64>& freq) {
    const u64 p = a.size();
    std::vector<BigInt> out(p, 0);
    for (u64 d = 0; d < p; ++d) {
        if (freq[d] == 0) continue;
        for (u64 y = 0; y < p; ++y) {
            out[(y + d) % p] += a[y] * freq[d];
        }
    }
    return out;
}

SuiteResult suite_waring(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("waring");
    for (u64 p : odd_primes_up_to(grid.waring_max_prime)) {
        const PrimeContext ctx(p);
        std::set<u64> w_set{1, 2, (p - 1) / 2, p - 1};
        w_set.erase(0);
        for (u64 w : w_set) {
            for (u64 N : {ceil_half(p), p}) {
                const auto traj = waring_number(ctx, w, N);
                const auto cd = cauchy_davenport_floor(traj.sizes, p);
                c.require(cd.passed,
                          [&] { return cat("p=", p, " w=", w, " N=", N, ": ", cd.detail); });

                for (size_t i = 1; i < traj.sizes.size(); ++i) {
                    c.require(traj.sizes[i] > traj.sizes[i - 1],
                              [&] { return cat("p=", p, " w=", w, " N=", N, ": sizes not strict"); });
                }
                const auto prof = value_profile(ctx, w, N);
                c.require(traj.g.has_value() == (prof.value_count > 1), [&] {
                    return cat("p=", p, " w=", w, " N=", N, ": finiteness vs value set mismatch");
                });
                if (traj.g) {
                    c.require(traj.sizes.back() == p && *traj.g == traj.sizes.size(), [&] {
                        return cat("p=", p, " w=", w, " N=", N, ": trajectory inconsistent with g");
                    });
                }
                if (traj.ell && N > *traj.ell) {
                    c.require(traj.g && *traj.g <= p - 1, [&] {
                        return cat("p=", p, " w=", w, " N=", N, ": g > p-1 despite N > ell");
                    });
                }

                // representation counts: positivity of N_s <=> s >= g
                const u64 s_max = traj.g ? *traj.g + 1 : 3;
                std::vector<BigInt> counts(prof.freq.begin(), prof.freq.end());
                BigInt expected_total = N;
                for (u64 s = 1; s <= s_max; ++s) {
                    if (s >= 2) {
                        counts = cyclic_convolve(counts, prof.freq);
                        expected_total *= N;
                    }
                    BigInt total = 0;
                    bool all_positive = true;
                    for (const BigInt& x : counts) {
                        total += x;
                        if (x == 0) all_positive = false;
                    }
                    c.require(total == expected_total, [&] {
                        return cat("p=", p, " w=", w, " N=", N, " s=", s, ": sum N_s(y) != N^s");
                    });
                    const bool covered = traj.g && s >= *traj.g;
                    c.require(all_positive == covered, [&] {
                        return cat("p=", p, " w=", w, " N=", N, " s=", s,
                                   ": positivity/coverage mismatch");
                    });
                    if (s == 2 && p <= kMaxPrimeConvolution) {
                        const auto rep = representation_counts(ctx, w, N, 2);
                        c.require(rep.counts == counts, [&] {
                            return cat("p=", p, " w=", w, " N=", N,
                                       ": representation_counts disagrees at s=2");
                        });
                    }
                    if (c.failed()) return c.res;
                }
            }
        }
    }

    // remark: three Fermat-quotient values cover F_p once N = p
    for (u64 p : odd_primes_up_to(grid.waring_remark_max_prime)) {
        if (p < 5) continue;
        const PrimeContext ctx(p);
        const auto traj = waring_number(ctx, p - 1, p);
        c.require(traj.g && *traj.g <= 3,
                  [&] { return cat("p=", p, ": g(p-1,p,p) not <= 3"); });
        if (p == 5) {
            c.require(traj.g && *traj.g == 2, [&] { return cat("g(4,5,5) != 2"); });
        }
        if (c.failed()) return c.res;
    }
    return c.res;
}

SuiteResult suite_charsum(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("charsum");
    for (u64 p : grid.charsum_primes) {
        const PrimeContext ctx(p);
        std::set<u64> w_set{1, 2, (p - 1) / 2, p - 1, p - 2};
        w_set.erase(0);
        for (u64 w : w_set) {
            for (u64 N : {ceil_half(p), p}) {
                const auto prof = character_sum_profile(ctx, w, N);
                const double slack = 1e-9 * static_cast<double>(N);
                c.require(prof.magnitudes[0] == static_cast<double>(N), [&] {
                    return cat("p=", p, " w=", w, " N=", N, ": |S(0)| != N");
                });
                for (u64 a = 1; a < p; ++a) {
                    c.require(std::abs(prof.magnitudes[a] - prof.magnitudes[p - a]) <= slack,
                              [&] { return cat("p=", p, " w=", w, " N=", N, " a=", a,
                                               ": |S(a)| != |S(p-a)|"); });
                    c.require(prof.magnitudes[a] <= static_cast<double>(N) + slack,
                              [&] { return cat("p=", p, " w=", w, " N=", N, " a=", a,
                                               ": |S(a)| > N"); });
                }
                // Parseval against the frequency vector
                const auto vp = value_profile(ctx, w, N);
                u64 freq_sq = 0;
                for (u64 f : vp.freq) freq_sq += f * f;
                const double rhs = static_cast<double>(p) * static_cast<double>(freq_sq);
                double lhs = 0.0;
                for (double m : prof.magnitudes) lhs += m * m;
                c.require(std::abs(lhs - rhs) <= 1e-6 * rhs, [&] {
                    return cat("p=", p, " w=", w, " N=", N, ": Parseval off (", lhs, " vs ", rhs, ")");
                });
                if (c.failed()) return c.res;
            }
        }
    }
    return c.res;
}

SuiteResult suite_funcfield(const IdentityGrid& grid, const SuiteOptions&) {
    Checker c("funcfield");
    if (!grid.funcfield) return c.res;
    struct Config {
        u64 p, r, n;
    };
    for (const Config& cfg : {Config{3, 1, 2}, Config{3, 1, 3}, Config{5, 1, 2}, Config{3, 2, 2}}) {
        const Fq base(cfg.p, 1);
        const Fq F = cfg.r == 1 ? base : Fq(cfg.p, cfg.r, find_irreducible(base, cfg.r));
        const FieldRing ring(F, find_irreducible(F, cfg.n));
        const u64 q = F.q();
        const u64 n = cfg.n;
        const u64 kdim = (n + cfg.p - 1) / cfg.p;  // ceil(n/p)

        const auto stats1 = image_kernel_stats(ring, 1);
        u64 expected_image = 1, expected_fiber = 1;
        for (u64 i = 0; i < n - kdim; ++i) expected_image *= q;
        for (u64 i = 0; i < kdim; ++i) expected_fiber *= q;
        c.require(stats1.image_size == expected_image, [&] {
            return cat("q=", q, " n=", n, ": image ", stats1.image_size, " != ", expected_image);
        });
        c.require(stats1.zero_fiber_size == expected_fiber, [&] {
            return cat("q=", q, " n=", n, ": fiber ", stats1.zero_fiber_size, " != ", expected_fiber);
        });
        c.require(stats1.relation_ok, [&] { return cat("q=", q, " n=", n, ": relation (w=1) broken"); });
        c.require(stats1.image_size * stats1.zero_fiber_size == ring.size(),
                  [&] { return cat("q=", q, " n=", n, ": rank-nullity broken"); });

        // q_{P,1} is F_q-linear: exhaustive over all pairs and scalars
        const u64 total = ring.size();
        std::vector<FqPoly> q1(total);
        for (u64 i = 0; i < total; ++i) q1[i] = ring.quotient(fq_poly_decode(F, i), 1).value;
        for (u64 i = 0; i < total && !c.failed(); ++i) {
            const FqPoly A = fq_poly_decode(F, i);
            for (u64 j = 0; j < total; ++j) {
                const FqPoly B = fq_poly_decode(F, j);
                const u64 sum_idx = fq_poly_encode(F, fq_poly_add(F, A, B));
                c.require(q1[sum_idx] == fq_poly_add(F, q1[i], q1[j]),
                          [&] { return cat("q=", q, " n=", n, " A=", i, " B=", j,
                                           ": additivity broken"); });
                if (c.failed()) break;
            }
            for (u64 s = 0; s < q; ++s) {
                const u64 scaled_idx = fq_poly_encode(F, fq_poly_scale(F, A, s));
                c.require(q1[scaled_idx] == fq_poly_scale(F, q1[i], s),
                          [&] { return cat("q=", q, " n=", n, " A=", i, " c=", s,
                                           ": homogeneity broken"); });
            }
        }
        if (c.failed()) return c.res;

        // higher w: relation (5), the companion relation, and the zero map
        for (u64 w : {u64(2), u64(3), u64(4), u64(5), cfg.p}) {
            const auto stats = image_kernel_stats(ring, w);
            if (w % cfg.p == 0) {
                c.require(stats.image_size == 1,
                          [&] { return cat("q=", q, " n=", n, " w=", w, ": zero map image != 1"); });
                continue;
            }
            c.require(stats.relation_ok,
                      [&] { return cat("q=", q, " n=", n, " w=", w, ": relation (5) broken"); });
            for (u64 i = 1; i < total; ++i) {  // units: every nonzero A with deg < n
                const FqPoly A = fq_poly_decode(F, i);
                const FqPoly lhs = ring.quotient(A, w).value;
                const FqPoly apw = fq_poly_pow_mod(F, A, BigInt(w), ring.modulus());
                const FqPoly prod = fq_poly_mod(F, fq_poly_mul(F, apw, ring.fermat(A)), ring.modulus());
                const FqPoly rhs = fq_poly_scale(F, prod, F.sub(0, w % cfg.p));
                c.require(lhs == rhs, [&] {
                    return cat("q=", q, " n=", n, " w=", w, " A=", i, ": companion relation broken");
                });
                if (c.failed()) return c.res;
            }
        }
    }
    return c.res;
}

using SuiteFn = SuiteResult (*)(const IdentityGrid&, const SuiteOptions&);

const std::pair<const char*, SuiteFn> kSuites[] = {
    {"two-path", suite_two_path},       {"reduction", suite_reduction},
    {"homomorphism", suite_homomorphism}, {"addition-law", suite_addition_law},
    {"lemma1", suite_lemma1},           {"theorem3", suite_theorem3},
    {"waring", suite_waring},           {"charsum", suite_charsum},
    {"funcfield", suite_funcfield},
};

}  // namespace

std::vector<SuiteResult> run_identity_suite(const IdentityGrid& grid, const SuiteOptions& options,
                                            const std::string& which) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : kSuites) {
        if (which != "all" && which != name) continue;
        try {
            out.push_back(fn(grid, options));
        } catch (const std::exception& e) {
            SuiteResult res;
            res.suite = name;
            res.passed = false;
            res.witness = cat("exception: ", e.what());
            out.push_back(std::move(res));
        }
    }
    if (out.empty()) throw std::invalid_argument("unknown suite: " + which);
    return out;
}

// ---------------------------------------------------------------------------
// bound sweeps
// ---------------------------------------------------------------------------

namespace {

std::string poly_pretty(const std::vector<u64>& coeffs) {
    std::string out;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(coeffs[i]);
        } else {
            if (coeffs[i] != 1) out += std::to_string(coeffs[i]);
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

SweepRow make_row(int theorem, u64 p, u64 w, u64 N, std::string stat, double exact, double bound,
                  std::string flag = "") {
    SweepRow row;
    row.theorem = theorem;
    row.p = p;
    row.w = w;
    row.n = N;
    row.stat = std::move(stat);
    row.exact = exact;
    row.bound = bound;
    if (bound > 0.0) {
        row.ratio = exact / bound;
    } else if (flag.empty()) {
        flag = "bound-undefined";
    }
    row.flag = std::move(flag);
    return row;
}

void chain_assert(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("bound sweep: proof-chain inequality failed: ") + what);
}

}  // namespace

u64 resolve_w_token(const std::string& token, u64 p) {
    if (token == "p-1") return p - 1;
    if (token == "p-2") return p - 2;
    if (token == "(p-1)/2") return (p - 1) / 2;
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        const u64 w = std::stoull(token);
        if (w >= 1) return w;
    }
    throw std::invalid_argument("bad w token: '" + token + "'");
}

u64 resolve_n_token(const std::string& token, u64 p) {
    if (token == "p") return p;
    if (token == "p/2") return ceil_half(p);
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        const u64 n = std::stoull(token);
        if (n >= 1 && n <= p) return n;
        throw std::invalid_argument("N token out of range for p=" + std::to_string(p));
    }
    throw std::invalid_argument("bad N token: '" + token + "'");
}

SweepReport run_bound_sweep(int theorem, const SweepGrid& grid) {
    if (theorem < 1 || theorem > 6) {
        throw std::invalid_argument("theorem must be between 1 and 6");
    }
    SweepReport report;
    report.theorem = theorem;
    {
        std::ostringstream os;
        os << "p={";
        for (size_t i = 0; i < grid.primes.size(); ++i) os << (i ? "," : "") << grid.primes[i];
        os << "};w={";
        for (size_t i = 0; i < grid.w_tokens.size(); ++i) os << (i ? "," : "") << grid.w_tokens[i];
        os << "};N={";
        for (size_t i = 0; i < grid.n_tokens.size(); ++i) os << (i ? "," : "") << grid.n_tokens[i];
        os << "}";
        report.grid_desc = os.str();
    }
    {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        report.timestamp = buf;
    }

    for (u64 p : grid.primes) {
        std::unique_ptr<PrimeContext> ctx_holder;
        try {
            ctx_holder = std::make_unique<PrimeContext>(p);
        } catch (const LimitExceeded&) {
            report.limit_hit = true;
            report.rows.push_back(make_row(theorem, p, 0, 0, "grid-point", 0.0, 0.0, "limit-exceeded"));
            continue;
        }
        const PrimeContext& ctx = *ctx_holder;
        const double pd = static_cast<double>(p);

        std::vector<u64> ws;
        for (const auto& tok : grid.w_tokens) {
            const u64 w = resolve_w_token(tok, p);
            if (std::find(ws.begin(), ws.end(), w) == ws.end()) ws.push_back(w);
        }
        std::vector<u64> ns;
        for (const auto& tok : grid.n_tokens) {
            const u64 n = resolve_n_token(tok, p);
            if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
        }

        for (u64 w : ws) {
            // exact statistics are invariant under the canonical reduction,
            // the bound shapes are stated for 1 <= w < p
            std::string reduce_flag;
            u64 w_eff = w;
            if (w % p == 0) {
                for (u64 N : ns) {
                    report.rows.push_back(
                        make_row(theorem, p, w, N, "zero-map", 0.0, 0.0, "zero-map"));
                }
                continue;
            }
            if (w_eff >= p) {
                w_eff = reduce_exponent(ctx, w).w1;
                reduce_flag = "w-reduced";
            }
            const double gw = static_cast<double>(gcd_u64(w_eff, p - 1));
            const double gw1 = static_cast<double>(gcd_u64(w_eff - 1, p - 1));

            for (u64 N : ns) {
                const double nd = static_cast<double>(N);
                const double logN = std::log(nd);

                try {
                switch (theorem) {
                    case 1: {
                        for (const auto& coeffs : grid.poly_family) {
                            const auto f = PolyOverFp::make(coeffs, p);
                            if (f.is_zero()) continue;
                            const u64 d = f.degree();
                            const double dd = static_cast<double>(d);
                            const u64 F = interpolation_count(ctx, w, N, f);
                            const double base = static_cast<double>(p - 1 - w_eff + d);
                            const double bound =
                                std::min({std::pow(base, 0.25) * std::sqrt(nd) * std::pow(pd, 1.0 / 3),
                                          std::pow(base, 0.125) * std::sqrt(nd) * std::pow(pd, 3.0 / 8),
                                          std::pow(dd, 0.25) * std::sqrt(nd) * std::pow(pd, 4.0 / 3) / gw,
                                          std::pow(dd, 0.125) * std::sqrt(nd) * std::pow(pd, 11.0 / 8) / gw});
                            report.rows.push_back(make_row(theorem, p, w, N,
                                                           "F[f=" + poly_pretty(f.coeffs) + "]",
                                                           static_cast<double>(F), bound, reduce_flag));
                        }
                        break;
                    }
                    case 2: {
                        const u64 F = fixed_points(ctx, w, N);
                        const double bound = std::pow(pd, 1.5) / gw1;
                        report.rows.push_back(make_row(theorem, p, w, N, "fixed_points",
                                                       static_cast<double>(F), bound, reduce_flag));
                        break;
                    }
                    case 3: {
                        const u64 V = value_profile(ctx, w, N).value_count;
                        const u64 v_fermat = value_profile(ctx, p - 1, N).value_count;
                        const u64 gw_int = gcd_u64(w_eff, p - 1);
                        chain_assert(V * (p - 1) >= v_fermat * gw_int, "theorem 3 pigeonhole");
                        const auto hist = prime_quotient_histogram(ctx, N);
                        const u64 pi = hist.prime_count;
                        chain_assert(v_fermat * (pi + p - 2) >= pi * pi, "lemma 1 chain");
                        report.rows.push_back(make_row(theorem, p, w, N, "V_vs_pigeonhole",
                                                       static_cast<double>(V),
                                                       static_cast<double>(v_fermat) * gw / (pd - 1),
                                                       reduce_flag));
                        const double bound =
                            logN > 0 ? gw * (nd / (pd * logN)) * (nd / (pd * logN)) : 0.0;
                        report.rows.push_back(make_row(theorem, p, w, N, "V_vs_th3_bound",
                                                       static_cast<double>(V), bound, reduce_flag));
                        break;
                    }
                    case 4: {
                        const u64 V = value_profile(ctx, w, N).value_count;
                        const u64 V1 = value_profile(ctx, 1, N).value_count;
                        const u64 g_int = gcd_u64(w_eff - 1, p - 1);
                        chain_assert(V * (p - 1) >= (V1 - 1) * g_int, "theorem 4 pigeonhole");
                        report.rows.push_back(make_row(theorem, p, w, N, "V_vs_w1_pigeonhole",
                                                       static_cast<double>(V),
                                                       static_cast<double>(V1) * gw1 / (pd - 1),
                                                       reduce_flag));
                        const double bound = gw1 * std::sqrt(nd) / std::pow(pd, 4.0 / 3);
                        report.rows.push_back(make_row(theorem, p, w, N, "V_vs_th4_bound",
                                                       static_cast<double>(V), bound, reduce_flag));
                        break;
                    }
                    case 5: {
                        const auto traj = waring_number(ctx, w, N);
                        const bool trivial = gw < std::pow(pd, 7.0 / 8);
                        for (u64 s : grid.s_values) {
                            const double lhs = std::pow(gw, static_cast<double>(s - 1));
                            const double rhs = logN > 0
                                                   ? std::pow(pd, 11.0 * s / 8 + 0.25) *
                                                         std::pow(nd, -(static_cast<double>(s) / 2) - 1) *
                                                         logN * logN
                                                   : 0.0;
                            std::string flag = reduce_flag;
                            if (rhs <= 0.0) {
                                flag = "bound-undefined";
                            } else if (trivial) {
                                flag = "bound-trivial";
                            }
                            report.rows.push_back(make_row(theorem, p, w, N,
                                                           "th5_condition_s" + std::to_string(s), lhs,
                                                           rhs, flag));
                        }
                        u64 s_star = 0;
                        for (u64 s = 3; s <= 64; ++s) {
                            const double lhs = std::pow(gw, static_cast<double>(s - 1));
                            const double rhs = logN > 0
                                                   ? std::pow(pd, 11.0 * s / 8 + 0.25) *
                                                         std::pow(nd, -(static_cast<double>(s) / 2) - 1) *
                                                         logN * logN
                                                   : 0.0;
                            if (rhs > 0.0 && lhs >= rhs) {
                                s_star = s;
                                break;
                            }
                        }
                        std::string flag = reduce_flag;
                        if (!traj.g) flag = "g-infinite";
                        if (s_star == 0 && flag.empty()) flag = "no-admissible-s";
                        report.rows.push_back(make_row(theorem, p, w, N, "waring_g_vs_min_s",
                                                       traj.g ? static_cast<double>(*traj.g) : 0.0,
                                                       static_cast<double>(s_star), flag));
                        break;
                    }
                    case 6: {
                        const auto traj = waring_number(ctx, w, N);
                        const auto cd = cauchy_davenport_floor(traj.sizes, p);
                        chain_assert(cd.passed, "Cauchy-Davenport floor");
                        if (!traj.g) {
                            report.rows.push_back(make_row(theorem, p, w, N, "g_vs_cd_ceiling", 0.0,
                                                           0.0, "g-infinite"));
                            break;
                        }
                        const double g = static_cast<double>(*traj.g);
                        const u64 w1_size = traj.sizes.front();
                        if (w1_size >= 2) {
                            const u64 ceiling = (p - 2) / (w1_size - 1) + 1;
                            report.rows.push_back(make_row(theorem, p, w, N, "g_vs_cd_ceiling", g,
                                                           static_cast<double>(ceiling), reduce_flag));
                        } else {
                            report.rows.push_back(make_row(theorem, p, w, N, "g_vs_cd_ceiling", g, 0.0,
                                                           "w1-degenerate"));
                        }
                        const double logP = std::log(pd);
                        const double b1 = pd * pd * pd * logP * logP / (nd * nd * gw);
                        const double b2 = std::pow(pd, 7.0 / 3) / (std::sqrt(nd) * gw1);
                        const double bound = std::min(b1, b2);
                        report.rows.push_back(
                            make_row(theorem, p, w, N, "g_vs_th6_bound", g, bound, reduce_flag));
                        break;
                    }
                    default:
                        break;
                }
                } catch (const LimitExceeded&) {
                    report.limit_hit = true;
                    report.rows.push_back(
                        make_row(theorem, p, w, N, "grid-point", 0.0, 0.0, "limit-exceeded"));
                }
            }
        }
    }

    std::stable_sort(report.rows.begin(), report.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.p, a.w, a.n, a.stat) < std::tie(b.p, b.w, b.n, b.stat);
    });
    return report;
}

namespace {

std::string fmt_double(double x) { return nlohmann::ordered_json(x).dump(); }

}  // namespace

std::string SweepReport::to_csv() const {
    std::string out = "theorem,p,w,N,stat,exact,bound,ratio,flag\n";
    for (const auto& row : rows) {
        out += std::to_string(row.theorem) + "," + std::to_string(row.p) + "," +
               std::to_string(row.w) + "," + std::to_string(row.n) + "," + row.stat + "," +
               fmt_double(row.exact) + "," + fmt_double(row.bound) + "," + fmt_double(row.ratio) +
               "," + row.flag + "\n";
    }
    return out;
}

std::string SweepReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["theorem"] = row.theorem;
        j["p"] = row.p;
        j["w"] = row.w;
        j["N"] = row.n;
        j["stat"] = row.stat;
        j["exact"] = row.exact;
        j["bound"] = row.bound;
        j["ratio"] = row.ratio;
        j["flag"] = row.flag;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

}  // namespace polyq

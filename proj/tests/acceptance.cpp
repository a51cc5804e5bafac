// Acceptance suite: one line per criterion, exit code = number of failures.
//
// Every tolerance is pinned here. Criteria are exact-identity and
// constant-free-inequality checks; asymptotic shapes are ratio reports only
// and are exercised through the sweep machinery.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyq/charsum.hpp"
#include "polyq/funcfield.hpp"
#include "polyq/quotient.hpp"
#include "polyq/reference.hpp"
#include "polyq/spectrum.hpp"
#include "polyq/verifier.hpp"
#include "polyq/waring.hpp"

using json = nlohmann::ordered_json;
using namespace polyq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<u64> odd_primes(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 p : primes_up_to(hi)) {
        if (p >= lo && p != 2) out.push_back(p);
    }
    return out;
}

u64 ceil_half(u64 p) { return (p + 1) / 2; }

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(POLYQ_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

int failures = 0;
Clock::time_point suite_start;

void criterion(int id, const char* name, const std::function<std::string(std::string&)>& body) {
    const auto t0 = Clock::now();
    std::string detail;
    std::string err;
    try {
        err = body(detail);
    } catch (const std::exception& e) {
        err = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (err.empty()) {
        std::printf("criterion %02d: PASS  %-42s (%s, %.2fs)\n", id, name,
                    detail.empty() ? "ok" : detail.c_str(), dt);
    } else {
        std::printf("criterion %02d: FAIL  %-42s (%s)\n", id, name, err.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

std::string count_detail(u64 checks) {
    std::ostringstream os;
    os << checks << " checks, 0 mismatches";
    return os.str();
}

}  // namespace

int main() {
    suite_start = Clock::now();

    // 1. Eq.-(2)-vs-Eq.-(3) agreement, exhaustive
    criterion(1, "two-path agreement p<=31", [](std::string& detail) -> std::string {
        const auto t0 = Clock::now();
        u64 checks = 0;
        for (u64 p : odd_primes(3, 31)) {
            const PrimeContext ctx(p);
            for (u64 u = 1; u < ctx.p_sq(); ++u) {
                if (u % p == 0) continue;
                for (u64 w = 1; w < p; ++w) {
                    ++checks;
                    if (poly_quotient(ctx, w, u) != poly_quotient_fermat_route(ctx, w, u)) {
                        std::ostringstream os;
                        os << "mismatch at p=" << p << " w=" << w << " u=" << u;
                        return os.str();
                    }
                }
            }
        }
        if (seconds_since(t0) >= 60.0) return "runtime exceeded 60 s";
        detail = count_detail(checks);
        return "";
    });

    // 2. specialization to q_p and the kp rules, same grid
    criterion(2, "specialization and kp rules p<=31", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(3, 31)) {
            const PrimeContext ctx(p);
            for (u64 u = 0; u < ctx.p_sq(); ++u) {
                ++checks;
                if (poly_quotient(ctx, p - 1, u) != fermat_quotient(ctx, u)) {
                    return "q_{p,p-1} != q_p at p=" + std::to_string(p) + " u=" + std::to_string(u);
                }
            }
            for (u64 k = 0; k < p; ++k) {
                ++checks;
                if (poly_quotient(ctx, 1, k * p) != k % p) {
                    return "q_{p,1}(kp) != k at p=" + std::to_string(p) + " k=" + std::to_string(k);
                }
                for (u64 w = 2; w < p; ++w) {
                    ++checks;
                    if (poly_quotient(ctx, w, k * p) != 0) {
                        return "q_{p,w}(kp) != 0 at p=" + std::to_string(p) +
                               " w=" + std::to_string(w) + " k=" + std::to_string(k);
                    }
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 3. homomorphism on random pairs + exact kernel size
    criterion(3, "homomorphism and kernel p<=50", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(3, 50)) {
            const PrimeContext ctx(p);
            const u64 p2 = ctx.p_sq();
            std::vector<u64> qp(p2);
            for (u64 u = 0; u < p2; ++u) qp[u] = fermat_quotient(ctx, u);
            u64 kernel = 0;
            for (u64 u = 1; u < p2; ++u) {
                if (u % p != 0 && qp[u] == 0) ++kernel;
            }
            ++checks;
            if (kernel != p - 1) {
                return "kernel size " + std::to_string(kernel) + " != p-1 at p=" + std::to_string(p);
            }
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
            auto draw = [&] {
                while (true) {
                    const u64 x = rng() % (p2 - 1) + 1;
                    if (x % p != 0) return x;
                }
            };
            for (int t = 0; t < 10000; ++t) {
                const u64 u = draw();
                const u64 v = draw();
                ++checks;
                if (qp[mul_mod(u, v, p2)] != add_mod(qp[u], qp[v], p)) {
                    return "homomorphism broken at p=" + std::to_string(p);
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 4. addition law (exhaustive) + binomial identity
    criterion(4, "addition law p<=31, binomial p<=101", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(3, 31)) {
            const PrimeContext ctx(p);
            const u64 p2 = ctx.p_sq();
            std::vector<u64> q1(p2);
            for (u64 u = 0; u < p2; ++u) q1[u] = poly_quotient(ctx, 1, u);
            std::vector<u64> ltab(p);
            for (u64 x = 0; x < p; ++x) ltab[x] = truncated_log(ctx, x);
            for (u64 a = 1; a <= p2; ++a) {
                if (a % p == 0) continue;
                const u64 am = a % p;
                for (u64 c = 1; c <= p2; ++c) {
                    if (c % p == 0 || (am + c) % p == 0) continue;
                    ++checks;
                    const u64 x = (p - mul_mod(am, ctx.inv(c % p), p)) % p;
                    const u64 rhs = add_mod(add_mod(q1[a % p2], q1[c % p2], p),
                                            mul_mod(c % p, ltab[x], p), p);
                    if (q1[(a + c) % p2] != rhs) {
                        return "addition law broken at p=" + std::to_string(p) +
                               " a=" + std::to_string(a) + " c=" + std::to_string(c);
                    }
                }
            }
        }
        for (u64 p : odd_primes(3, 101)) {
            const PrimeContext ctx(p);
            for (u64 i = 1; i < p; ++i) {
                ++checks;
                const u128 binom = ref::binomial_exact(p, i);
                if (binom % p != 0) return "p does not divide C(p,i) at p=" + std::to_string(p);
                const u64 lhs = static_cast<u64>((binom / p) % p);
                const u64 rhs = (i % 2 == 1) ? ctx.inv(i) : p - ctx.inv(i);
                if (lhs != rhs) {
                    return "binomial identity broken at p=" + std::to_string(p) +
                           " i=" + std::to_string(i);
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 5. Lemma 1 constant-free chain
    criterion(5, "value-set chain 5<=p<=199", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(5, 199)) {
            const PrimeContext ctx(p);
            for (u64 N : {ceil_half(p), p}) {
                const auto hist = prime_quotient_histogram(ctx, N);
                const u64 pi = hist.prime_count;
                u64 sum = 0, sum_sq = 0;
                for (u64 q : hist.counts) {
                    sum += q;
                    sum_sq += q * q;
                }
                checks += 3;
                if (sum != pi) return "sum Q != pi(N-1) at p=" + std::to_string(p);
                if (sum_sq > pi + p - 2) {
                    return "sum Q^2 > pi+p-2 at p=" + std::to_string(p) + " N=" + std::to_string(N);
                }
                const u64 V = value_profile(ctx, p - 1, N).value_count;
                if (V * (pi + p - 2) < pi * pi) {
                    return "V below pi^2/(pi+p-2) at p=" + std::to_string(p) +
                           " N=" + std::to_string(N);
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 6. Theorem 3 pigeonhole chain
    criterion(6, "pigeonhole chain p<=101, all w", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(3, 101)) {
            const PrimeContext ctx(p);
            for (u64 N : {ceil_half(p), p}) {
                const u64 v_fermat = value_profile(ctx, p - 1, N).value_count;
                for (u64 w = 1; w < p; ++w) {
                    ++checks;
                    const u64 V = value_profile(ctx, w, N).value_count;
                    if (V * (p - 1) < v_fermat * gcd_u64(w, p - 1)) {
                        return "chain broken at p=" + std::to_string(p) + " w=" + std::to_string(w) +
                               " N=" + std::to_string(N);
                    }
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 7. Waring exactness: frozen values, totals, positivity<=>coverage
    criterion(7, "waring exactness p<=101", [](std::string& detail) -> std::string {
        const PrimeContext ctx5(5);
        const auto traj5 = waring_number(ctx5, 4, 5);
        if (!(traj5.g && *traj5.g == 2 && traj5.sizes == std::vector<u64>{3, 5})) {
            return "g(4,5,5) trajectory wrong";
        }
        const auto rep2 = representation_counts(ctx5, 4, 5, 2);
        if (rep2.counts != std::vector<BigInt>{4, 9, 4, 4, 4}) return "N_2 vector wrong for (5,4,5)";

        u64 checks = 2;
        for (u64 p : odd_primes(3, 101)) {
            const PrimeContext ctx(p);
            std::set<u64> w_set{1, 2, (p - 1) / 2, p - 1};
            w_set.erase(0);
            for (u64 w : w_set) {
                for (u64 N : {ceil_half(p), p}) {
                    const auto traj = waring_number(ctx, w, N);
                    const auto freq = value_profile(ctx, w, N).freq;
                    std::vector<BigInt> counts(freq.begin(), freq.end());
                    BigInt expected_total = N;
                    const u64 s_max = traj.g ? *traj.g + 1 : 3;
                    for (u64 s = 1; s <= s_max; ++s) {
                        if (s >= 2) {
                            std::vector<BigInt> next(p, 0);
                            for (u64 d = 0; d < p; ++d) {
                                if (freq[d] == 0) continue;
                                for (u64 y = 0; y < p; ++y) next[(y + d) % p] += counts[y] * freq[d];
                            }
                            counts.swap(next);
                            expected_total *= N;
                        }
                        BigInt total = 0;
                        bool all_positive = true;
                        for (const auto& c : counts) {
                            total += c;
                            if (c == 0) all_positive = false;
                        }
                        checks += 2;
                        if (total != expected_total) {
                            return "sum N_s != N^s at p=" + std::to_string(p) +
                                   " w=" + std::to_string(w) + " s=" + std::to_string(s);
                        }
                        if (all_positive != (traj.g && s >= *traj.g)) {
                            return "positivity/coverage mismatch at p=" + std::to_string(p) +
                                   " w=" + std::to_string(w) + " N=" + std::to_string(N) +
                                   " s=" + std::to_string(s);
                        }
                    }
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 8. Cauchy-Davenport chain + reduction invariance
    criterion(8, "CD chain, reduction invariance p<=31", [](std::string& detail) -> std::string {
        u64 checks = 0;
        for (u64 p : odd_primes(3, 101)) {
            const PrimeContext ctx(p);
            std::set<u64> w_set{1, 2, (p - 1) / 2, p - 1};
            w_set.erase(0);
            for (u64 w : w_set) {
                for (u64 N : {ceil_half(p), p}) {
                    ++checks;
                    const auto traj = waring_number(ctx, w, N);
                    const auto cd = cauchy_davenport_floor(traj.sizes, p);
                    if (!cd.passed) {
                        return "CD floor broken at p=" + std::to_string(p) +
                               " w=" + std::to_string(w) + ": " + cd.detail;
                    }
                }
            }
        }
        const std::vector<std::vector<u64>> f_family{{0, 1}, {1, 0, 1}};
        for (u64 p : odd_primes(3, 31)) {
            const PrimeContext ctx(p);
            for (u64 w1 = 1; w1 < p; ++w1) {
                const u64 w = w1 + (p - 1);
                if (w % p == 0) continue;
                const auto spec = reduce_exponent(ctx, w);
                const u64 inv_scale = inv_mod(spec.scale, p);
                for (u64 N : {ceil_half(p), p}) {
                    checks += 2;
                    if (value_profile(ctx, w, N).value_count !=
                        value_profile(ctx, w1, N).value_count) {
                        return "V not invariant at p=" + std::to_string(p) + " w=" + std::to_string(w);
                    }
                    if (waring_number(ctx, w, N).g != waring_number(ctx, w1, N).g) {
                        return "g not invariant at p=" + std::to_string(p) + " w=" + std::to_string(w);
                    }
                    for (const auto& coeffs : f_family) {
                        ++checks;
                        const auto f = PolyOverFp::make(coeffs, p);
                        std::vector<u64> scaled(f.coeffs);
                        for (u64& x : scaled) x = mul_mod(x, inv_scale, p);
                        if (interpolation_count(ctx, w, N, f) !=
                            interpolation_count(ctx, w1, N, PolyOverFp::make(scaled, p))) {
                            return "F not invariant at p=" + std::to_string(p) +
                                   " w=" + std::to_string(w);
                        }
                    }
                }
            }
        }
        detail = count_detail(checks);
        return "";
    });

    // 9. remark reproduction: g(p-1, p, p) <= 3
    criterion(9, "g(p-1,p,p) <= 3 for 5<=p<=199", [](std::string& detail) -> std::string {
        const auto t0 = Clock::now();
        u64 checks = 0;
        for (u64 p : odd_primes(5, 199)) {
            ++checks;
            const PrimeContext ctx(p);
            const auto traj = waring_number(ctx, p - 1, p);
            if (!traj.g || *traj.g > 3) return "g(p-1,p,p) > 3 at p=" + std::to_string(p);
            if (p == 5 && *traj.g != 2) return "g(4,5,5) != 2";
        }
        if (seconds_since(t0) >= 30.0) return "runtime exceeded 30 s";
        detail = count_detail(checks);
        return "";
    });

    // 10. character sums
    criterion(10, "character sums, Parseval p<=509", [](std::string& detail) -> std::string {
        const PrimeContext ctx5(5);
        const auto prof5 = character_sum_profile(ctx5, 4, 5);
        if (std::abs(prof5.max_nontrivial - 2.236068) > 1e-6) {
            return "max nontrivial magnitude for (5,4,5) off";
        }
        u64 checks = 1;
        double lemma2_ratio_sample = 0.0;
        for (u64 p : {5ull, 101ull, 257ull, 509ull}) {
            const PrimeContext ctx(p);
            std::set<u64> w_set{1, 2, (p - 1) / 2, p - 1, p - 2};
            w_set.erase(0);
            for (u64 w : w_set) {
                for (u64 N : {ceil_half(p), p}) {
                    const auto prof = character_sum_profile(ctx, w, N);
                    ++checks;
                    if (prof.magnitudes[0] != static_cast<double>(N)) {
                        return "|S(0)| != N at p=" + std::to_string(p);
                    }
                    const auto freq = value_profile(ctx, w, N).freq;
                    u64 freq_sq = 0;
                    for (u64 c : freq) freq_sq += c * c;
                    const double rhs = static_cast<double>(p) * static_cast<double>(freq_sq);
                    double lhs = 0.0;
                    for (double m : prof.magnitudes) lhs += m * m;
                    ++checks;
                    if (std::abs(lhs - rhs) > 1e-6 * rhs) {
                        return "Parseval off at p=" + std::to_string(p) + " w=" + std::to_string(w);
                    }
                    // report-only Lemma 2 shape
                    lemma2_ratio_sample =
                        prof.max_nontrivial /
                        (std::sqrt(static_cast<double>(N)) *
                         std::pow(static_cast<double>(p), 11.0 / 8) /
                         static_cast<double>(gcd_u64(w, p - 1)));
                }
            }
        }
        std::ostringstream os;
        os << checks << " checks, 0 mismatches, lemma2 ratio sample " << lemma2_ratio_sample;
        detail = os.str();
        return "";
    });

    // 11. function-field statistics
    criterion(11, "funcfield image/kernel, Eq.(5)", [](std::string& detail) -> std::string {
        const auto t0 = Clock::now();
        struct Config {
            u64 p, r, n;
        };
        u64 checks = 0;
        for (const Config& cfg : {Config{3, 1, 2}, Config{3, 1, 3}, Config{5, 1, 2}, Config{3, 2, 2}}) {
            const Fq base(cfg.p, 1);
            const Fq F = cfg.r == 1 ? base : Fq(cfg.p, cfg.r, find_irreducible(base, cfg.r));
            const FieldRing ring(F, find_irreducible(F, cfg.n));
            const u64 kdim = (cfg.n + cfg.p - 1) / cfg.p;
            u64 image = 1, fiber = 1;
            for (u64 i = 0; i < cfg.n - kdim; ++i) image *= F.q();
            for (u64 i = 0; i < kdim; ++i) fiber *= F.q();
            const auto stats = image_kernel_stats(ring, 1);  // throws on any inexact division
            checks += 3;
            std::ostringstream tag;
            tag << "(p=" << cfg.p << ",r=" << cfg.r << ",n=" << cfg.n << ")";
            if (stats.image_size != image) return "image size wrong at " + tag.str();
            if (stats.zero_fiber_size != fiber) return "zero fiber wrong at " + tag.str();
            if (!stats.relation_ok) return "relation (5) broken at " + tag.str();
            for (u64 w : {u64(2), u64(3), u64(5)}) {
                if (w % cfg.p == 0) continue;
                ++checks;
                if (!image_kernel_stats(ring, w).relation_ok) {
                    return "relation (5) broken for w=" + std::to_string(w) + " at " + tag.str();
                }
            }
        }
        if (seconds_since(t0) >= 60.0) return "runtime exceeded 60 s";
        detail = count_detail(checks);
        return "";
    });

    // 12. coverage indices
    criterion(12, "Lambda_5 = 9, ell(5,4) = 2, Lambda_p <= p^2", [](std::string& detail) -> std::string {
        const PrimeContext ctx5(5);
        if (lambda_p(ctx5) != 9) return "Lambda_5 != 9";
        if (smallest_nonzero(ctx5, 4) != 2) return "ell(5,4) != 2";
        u64 checks = 2;
        for (u64 p : odd_primes(3, 101)) {
            ++checks;
            const PrimeContext ctx(p);
            if (lambda_p(ctx) > ctx.p_sq()) return "Lambda_p > p^2 at p=" + std::to_string(p);
        }
        detail = count_detail(checks);
        return "";
    });

    // 13. CLI contract, byte-stable JSON, verify exit code, total runtime
    criterion(13, "CLI contract and full-run budget", [](std::string& detail) -> std::string {
        const auto eval = run_cli("eval --p 5 --w 4 --u 2");
        if (eval.code != 0 || eval.out != "{\"p\":5,\"w\":4,\"u\":2,\"q\":3}\n") {
            return "eval output or exit code wrong";
        }
        const auto waring = run_cli("waring --p 5 --w 5 --n 5");
        if (waring.code != 0) return "waring exit code wrong";
        if (json::parse(waring.out)["g"] != "infinite") return "waring g not infinite";
        if (run_cli("eval --p 4 --w 1 --u 1").code != 2) return "non-prime p must exit 2";

        for (const char* args : {"eval --p 5 --w 4 --u 2", "waring --p 5 --w 5 --n 5",
                                 "charsum --p 13 --w 3 --n 13", "valueset --p 13 --w 3 --n 13",
                                 "ff --p 3 --r 2 --n 2"}) {
            const auto res = run_cli(args);
            if (res.code != 0) return std::string("CLI failed: ") + args;
            if (json::parse(res.out).dump() + "\n" != res.out) {
                return std::string("JSON round trip not byte-stable: ") + args;
            }
        }

        const auto verify = run_cli("verify --suite all");
        if (verify.code != 0) return "verify --suite all did not exit 0";
        if (!json::parse(verify.out)["passed"]) return "verify reported failure";

        const double total = seconds_since(suite_start);
        if (total >= 300.0) return "full acceptance run exceeded 5 minutes";
        std::ostringstream os;
        os << "verify suites green, total runtime " << static_cast<int>(total * 1000) / 1000.0
           << "s";
        detail = os.str();
        return "";
    });

    if (failures == 0) {
        std::printf("ACCEPTANCE: 13/13 criteria passed (%.2fs total)\n", seconds_since(suite_start));
    } else {
        std::printf("ACCEPTANCE: %d criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}

// Benchmark comparing the OpenMP kernels against the serial reference
// implementations. Every row also cross-checks that both paths agree, so a
// bench run doubles as a consistency test at scale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyq/charsum.hpp"
#include "polyq/quotient.hpp"
#include "polyq/reference.hpp"
#include "polyq/spectrum.hpp"
#include "polyq/waring.hpp"

using namespace polyq;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int failures = 0;

void report(const char* name, double serial_ms, double parallel_ms, bool ok) {
    std::printf("%-22s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, ok ? "ok" : "MISMATCH");
    if (!ok) ++failures;
}

std::vector<BigInt> convolve_serial(const std::vector<BigInt>& a, const std::vector<u64>& freq) {
    const u64 p = a.size();
    std::vector<BigInt> out(p, 0);
    for (u64 d = 0; d < p; ++d) {
        if (freq[d] == 0) continue;
        for (u64 y = 0; y < p; ++y) out[(y + d) % p] += a[y] * freq[d];
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    u64 batch_p = 999983;
    u64 charsum_p = 2003;
    u64 lambda_prime = 99991;
    u64 conv_p = 1009;
    u64 w = 12345;

    CLI::App app{"serial-vs-parallel benchmark for the quotient kernels"};
    app.add_option("--batch-p", batch_p, "prime for the batch evaluation kernel");
    app.add_option("--charsum-p", charsum_p, "prime for the character-sum kernel");
    app.add_option("--lambda-p", lambda_prime, "prime for the coverage scan");
    app.add_option("--conv-p", conv_p, "prime for the exact convolution kernel");
    app.add_option("--w", w, "exponent used throughout");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial build)\n");
#endif

    {
        const PrimeContext ctx(batch_p);
        std::vector<u64> serial, parallel;
        const double t_serial = time_ms([&] { serial = ref::batch_quotients_serial(ctx, w, ctx.p()); });
        const double t_parallel = time_ms([&] { parallel = batch_quotients(ctx, w, ctx.p()); });
        report("batch quotients", t_serial, t_parallel, serial == parallel);
    }
    {
        const PrimeContext ctx(charsum_p);
        std::vector<double> direct;
        CharSumProfile prof;
        const double t_serial = time_ms([&] { direct = ref::char_sum_direct(ctx, w, ctx.p()); });
        const double t_parallel = time_ms([&] { prof = character_sum_profile(ctx, w, ctx.p()); });
        bool ok = true;
        for (u64 a = 0; a < ctx.p(); ++a) {
            if (std::abs(direct[a] - prof.magnitudes[a]) > 1e-6 * static_cast<double>(ctx.p())) {
                ok = false;
                break;
            }
        }
        report("character sums", t_serial, t_parallel, ok);
    }
    {
        const PrimeContext ctx(lambda_prime);
        u64 serial = 0, parallel = 0;
        const double t_serial = time_ms([&] { serial = ref::lambda_serial(ctx); });
        const double t_parallel = time_ms([&] { parallel = lambda_p(ctx); });
        report("coverage scan", t_serial, t_parallel, serial == parallel);
    }
    {
        const PrimeContext ctx(conv_p);
        const auto freq = value_profile(ctx, w, ctx.p()).freq;
        const u64 s = 3;
        std::vector<BigInt> serial(freq.begin(), freq.end());
        RepCountVector parallel;
        const double t_serial = time_ms([&] {
            for (u64 step = 2; step <= s; ++step) serial = convolve_serial(serial, freq);
        });
        const double t_parallel = time_ms([&] { parallel = representation_counts(ctx, w, ctx.p(), s); });
        report("exact convolution", t_serial, t_parallel, serial == parallel.counts);
    }
    return failures == 0 ? 0 : 1;
}

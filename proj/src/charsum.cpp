#include "polyq/charsum.hpp"

#include <cmath>
#include <numbers>

#include "polyq/spectrum.hpp"

namespace polyq {

CharSumProfile character_sum_profile(const PrimeContext& ctx, u64 w, u64 N) {
    const u64 p = ctx.p();
    if (p > kMaxPrimeCharSum) {
        throw LimitExceeded("character_sum_profile requires p <= 10^5");
    }
    const auto prof = value_profile(ctx, w, N);

    std::vector<std::pair<u64, double>> support;
    for (u64 y = 0; y < p; ++y) {
        if (prof.freq[y] != 0) support.emplace_back(y, static_cast<double>(prof.freq[y]));
    }

    std::vector<double> cs(p), sn(p);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (u64 k = 0; k < p; ++k) {
        cs[k] = std::cos(step * static_cast<double>(k));
        sn[k] = std::sin(step * static_cast<double>(k));
    }

    CharSumProfile out;
    out.p = p;
    out.w = w;
    out.n = N;
    out.magnitudes.assign(p, 0.0);
#pragma omp parallel for schedule(static)
    for (u64 a = 0; a < p; ++a) {
        double re = 0.0;
        double im = 0.0;
        for (const auto& [y, f] : support) {
            const u64 k = mul_mod(a, y, p);
            re += f * cs[k];
            im += f * sn[k];
        }
        out.magnitudes[a] = std::hypot(re, im);
    }
    for (u64 a = 1; a < p; ++a) {
        out.max_nontrivial = std::max(out.max_nontrivial, out.magnitudes[a]);
    }
    return out;
}

}  // namespace polyq

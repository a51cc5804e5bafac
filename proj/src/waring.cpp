#include "polyq/waring.hpp"

#include <algorithm>

#include "polyq/spectrum.hpp"

namespace polyq {

namespace {

// p-bit set over F_p packed into 64-bit words.
struct ResidueSet {
    u64 p;
    std::vector<u64> words;

    explicit ResidueSet(u64 p_) : p(p_), words((p_ + 63) / 64, 0) {}

    void set(u64 i) { words[i >> 6] |= u64(1) << (i & 63); }
    bool test(u64 i) const { return (words[i >> 6] >> (i & 63)) & 1; }

    u64 count() const {
        u64 c = 0;
        for (u64 w : words) c += static_cast<u64>(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const ResidueSet& other) const { return words == other.words; }
};

// dst[dst_begin + k] |= src[src_begin + k] for 0 <= k < len, word-at-a-time.
void or_bit_range(std::vector<u64>& dst, const std::vector<u64>& src, u64 src_begin, u64 len,
                  u64 dst_begin) {
    for (u64 k = 0; k < len;) {
        const u64 s = src_begin + k;
        const u64 d = dst_begin + k;
        const u64 sb = s & 63;
        const u64 db = d & 63;
        const u64 nbits = std::min({u64(64) - sb, u64(64) - db, len - k});
        const u64 mask = nbits == 64 ? ~u64(0) : (u64(1) << nbits) - 1;
        dst[d >> 6] |= ((src[s >> 6] >> sb) & mask) << db;
        k += nbits;
    }
}

// dst |= src rotated left by v within the p-bit ring:
// for every i in src, (i + v) mod p lands in dst.
void or_rotated(ResidueSet& dst, const ResidueSet& src, u64 v) {
    const u64 p = dst.p;
    v %= p;
    if (v == 0) {
        for (size_t k = 0; k < dst.words.size(); ++k) dst.words[k] |= src.words[k];
        return;
    }
    or_bit_range(dst.words, src.words, 0, p - v, v);
    or_bit_range(dst.words, src.words, p - v, v, 0);
}

}  // namespace

WaringTrajectory waring_number(const PrimeContext& ctx, u64 w, u64 N) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("waring_number: N must satisfy 1 <= N <= p");
    }
    const u64 p = ctx.p();
    WaringTrajectory traj;
    traj.p = p;
    traj.w = w;
    traj.n = N;
    traj.ell = smallest_nonzero(ctx, w);

    const auto base_values = value_profile(ctx, w, N).values();
    ResidueSet w1(p);
    for (u64 v : base_values) w1.set(v);

    ResidueSet current = w1;
    traj.sizes.push_back(current.count());
    if (traj.sizes.back() == p) {
        traj.g = 1;
        return traj;
    }
    if (base_values.size() == 1) {
        // W_1 = {0}: all quotient values vanish on [0, N), g is infinite.
        return traj;
    }
    while (true) {
        ResidueSet next = current;  // 0 is always in W_1
        for (u64 v : base_values) or_rotated(next, current, v);
        const u64 size = next.count();
        if (size == traj.sizes.back()) return traj;  // stabilized below p
        traj.sizes.push_back(size);
        if (size == p) {
            traj.g = traj.sizes.size();
            return traj;
        }
        current = std::move(next);
    }
}

BigInt RepCountVector::total() const {
    BigInt t = 0;
    for (const BigInt& c : counts) t += c;
    return t;
}

RepCountVector representation_counts(const PrimeContext& ctx, u64 w, u64 N, u64 s) {
    if (N == 0 || N > ctx.p()) {
        throw std::invalid_argument("representation_counts: N must satisfy 1 <= N <= p");
    }
    if (s == 0) throw std::invalid_argument("representation_counts: s must be >= 1");
    const u64 p = ctx.p();
    if (p > kMaxPrimeConvolution) {
        throw LimitExceeded("representation_counts: exact convolution requires p <= 4096");
    }
    const auto freq = value_profile(ctx, w, N).freq;

    RepCountVector rep;
    rep.p = p;
    rep.w = w;
    rep.n = N;
    rep.s = s;
    rep.counts.assign(freq.begin(), freq.end());

    std::vector<u64> support;
    for (u64 d = 0; d < p; ++d) {
        if (freq[d] != 0) support.push_back(d);
    }
    std::vector<BigInt> next(p);
    for (u64 step = 2; step <= s; ++step) {
        for (BigInt& c : next) c = 0;
#pragma omp parallel for schedule(static)
        for (u64 y = 0; y < p; ++y) {
            BigInt acc = 0;
            for (u64 d : support) {
                const u64 src = y >= d ? y - d : y + p - d;
                acc += rep.counts[src] * freq[d];
            }
            next[y] = std::move(acc);
        }
        rep.counts.swap(next);
    }
    return rep;
}

ChainCheck cauchy_davenport_floor(const std::vector<u64>& sizes, u64 p) {
    ChainCheck check;
    if (sizes.empty()) return check;
    const u64 w1 = sizes.front();
    for (u64 s = 1; s <= sizes.size(); ++s) {
        const u64 lower = std::min(s * (w1 - 1) + 1, p);
        if (sizes[s - 1] < lower) {
            check.passed = false;
            check.witness_s = s;
            check.detail = "#W_" + std::to_string(s) + " = " + std::to_string(sizes[s - 1]) +
                           " < " + std::to_string(lower);
            return check;
        }
    }
    if (w1 >= 2 && sizes.back() == p) {
        const u64 g = sizes.size();
        const u64 ceiling = (p - 2) / (w1 - 1) + 1;  // ceil((p-1)/(w1-1))
        if (g > ceiling) {
            check.passed = false;
            check.witness_s = g;
            check.detail = "g = " + std::to_string(g) + " exceeds ceil((p-1)/(#W_1-1)) = " +
                           std::to_string(ceiling);
        }
    }
    return check;
}

}  // namespace polyq

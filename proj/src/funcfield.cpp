#include "polyq/funcfield.hpp"

#include <algorithm>
#include <array>

namespace polyq {

namespace {

constexpr u64 kMaxExtensionDegree = 32;

u64 checked_pow(u64 base, u64 exp, u64 cap, const char* what) {
    u64 acc = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (acc > cap / base) throw LimitExceeded(what);
        acc *= base;
    }
    return acc;
}

void decode_digits(u64 code, u64 p, u64 r, u64* digits) {
    for (u64 i = 0; i < r; ++i) {
        digits[i] = code % p;
        code /= p;
    }
}

u64 encode_digits(const u64* digits, u64 p, u64 r) {
    u64 code = 0;
    for (u64 i = r; i-- > 0;) code = code * p + digits[i];
    return code;
}

}  // namespace

Fq::Fq(u64 p, u64 r, std::vector<u64> conductor) : p_(p), r_(r) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("Fq: characteristic must be an odd prime");
    }
    if (r == 0 || r > kMaxExtensionDegree) {
        throw std::invalid_argument("Fq: extension degree must be in [1, 32]");
    }
    q_ = checked_pow(p, r, u64(1) << 62, "Fq: q = p^r too large");
    for (u64& c : conductor) c %= p;
    while (!conductor.empty() && conductor.back() == 0) conductor.pop_back();
    if (r == 1) {
        if (!conductor.empty()) {
            throw std::invalid_argument("Fq: conductor must be absent when r = 1");
        }
        return;
    }
    if (conductor.size() != r + 1 || conductor.back() != 1) {
        throw std::invalid_argument("Fq: conductor must be monic of degree r");
    }
    conductor_ = std::move(conductor);
    if (!fq_poly_irreducible(Fq(p, 1), conductor_)) {
        throw std::invalid_argument("Fq: conductor is reducible over F_p");
    }
    // alpha^{r+k} mod conductor, k = 0 .. r-2
    red_.resize(r - 1);
    std::vector<u64> cur(r);
    for (u64 t = 0; t < r; ++t) cur[t] = (p - conductor_[t]) % p;
    red_[0] = cur;
    for (u64 k = 1; k + 1 < r; ++k) {
        std::vector<u64> nxt(r, 0);
        const u64 top = cur[r - 1];
        for (u64 t = r - 1; t >= 1; --t) nxt[t] = cur[t - 1];
        if (top != 0) {
            for (u64 t = 0; t < r; ++t) nxt[t] = (nxt[t] + mul_mod(top, red_[0][t], p)) % p;
        }
        red_[k] = nxt;
        cur = std::move(nxt);
    }
}

u64 Fq::add(u64 a, u64 b) const {
    if (r_ == 1) return add_mod(a, b, p_);
    std::array<u64, kMaxExtensionDegree> da, db;
    decode_digits(a, p_, r_, da.data());
    decode_digits(b, p_, r_, db.data());
    for (u64 i = 0; i < r_; ++i) da[i] = add_mod(da[i], db[i], p_);
    return encode_digits(da.data(), p_, r_);
}

u64 Fq::sub(u64 a, u64 b) const {
    if (r_ == 1) return sub_mod(a, b, p_);
    std::array<u64, kMaxExtensionDegree> da, db;
    decode_digits(a, p_, r_, da.data());
    decode_digits(b, p_, r_, db.data());
    for (u64 i = 0; i < r_; ++i) da[i] = sub_mod(da[i], db[i], p_);
    return encode_digits(da.data(), p_, r_);
}

u64 Fq::neg(u64 a) const { return sub(0, a); }

u64 Fq::mul(u64 a, u64 b) const {
    if (r_ == 1) return mul_mod(a, b, p_);
    if (a == 0 || b == 0) return 0;
    std::array<u64, kMaxExtensionDegree> da, db;
    std::array<u64, 2 * kMaxExtensionDegree> prod{};
    decode_digits(a, p_, r_, da.data());
    decode_digits(b, p_, r_, db.data());
    for (u64 i = 0; i < r_; ++i) {
        if (da[i] == 0) continue;
        for (u64 j = 0; j < r_; ++j) {
            prod[i + j] = (prod[i + j] + mul_mod(da[i], db[j], p_)) % p_;
        }
    }
    for (u64 k = 2 * r_ - 2; k >= r_; --k) {
        const u64 c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        const auto& red = red_[k - r_];
        for (u64 t = 0; t < r_; ++t) {
            prod[t] = (prod[t] + mul_mod(c, red[t], p_)) % p_;
        }
    }
    return encode_digits(prod.data(), p_, r_);
}

u64 Fq::pow(u64 a, u64 e) const {
    u64 result = 1;
    a %= q_;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

u64 Fq::inv(u64 a) const {
    if (a % q_ == 0) throw std::domain_error("Fq::inv: zero is not invertible");
    return pow(a, q_ - 2);
}

FqPoly fq_poly_trim(FqPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool fq_poly_is_zero(const FqPoly& a) {
    return std::all_of(a.begin(), a.end(), [](u64 c) { return c == 0; });
}

FqPoly fq_poly_add(const Fq& F, const FqPoly& a, const FqPoly& b) {
    FqPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        const u64 x = i < a.size() ? a[i] : 0;
        const u64 y = i < b.size() ? b[i] : 0;
        out[i] = F.add(x, y);
    }
    return fq_poly_trim(std::move(out));
}

FqPoly fq_poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
    FqPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        const u64 x = i < a.size() ? a[i] : 0;
        const u64 y = i < b.size() ? b[i] : 0;
        out[i] = F.sub(x, y);
    }
    return fq_poly_trim(std::move(out));
}

FqPoly fq_poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
    return fq_poly_trim(std::move(out));
}

FqPoly fq_poly_scale(const Fq& F, const FqPoly& a, u64 c) {
    if (c == 0) return {};
    FqPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
    return fq_poly_trim(std::move(out));
}

std::pair<FqPoly, FqPoly> fq_poly_divmod(const Fq& F, const FqPoly& a, const FqPoly& b) {
    const FqPoly divisor = fq_poly_trim(b);
    if (divisor.empty()) throw std::domain_error("fq_poly_divmod: division by zero polynomial");
    FqPoly rem = fq_poly_trim(a);
    if (rem.size() < divisor.size()) return {{}, std::move(rem)};
    FqPoly quot(rem.size() - divisor.size() + 1, 0);
    const u64 lead_inv = F.inv(divisor.back());
    for (size_t i = rem.size(); i >= divisor.size(); --i) {
        const size_t k = i - 1;
        const u64 c = F.mul(rem[k], lead_inv);
        if (c == 0) continue;
        quot[k - (divisor.size() - 1)] = c;
        for (size_t j = 0; j < divisor.size(); ++j) {
            const size_t at = k - (divisor.size() - 1) + j;
            rem[at] = F.sub(rem[at], F.mul(c, divisor[j]));
        }
    }
    rem.resize(divisor.size() - 1);
    return {fq_poly_trim(std::move(quot)), fq_poly_trim(std::move(rem))};
}

FqPoly fq_poly_mod(const Fq& F, const FqPoly& a, const FqPoly& b) {
    return fq_poly_divmod(F, a, b).second;
}

FqPoly fq_poly_gcd(const Fq& F, FqPoly a, FqPoly b) {
    a = fq_poly_trim(std::move(a));
    b = fq_poly_trim(std::move(b));
    while (!b.empty()) {
        FqPoly r = fq_poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = fq_poly_scale(F, a, F.inv(a.back()));
    return a;
}

FqPoly fq_poly_pow_mod(const Fq& F, FqPoly base, const BigInt& e, const FqPoly& mod) {
    base = fq_poly_mod(F, base, mod);
    FqPoly result{1};
    if (e == 0) return result;
    for (long i = static_cast<long>(msb(e)); i >= 0; --i) {
        result = fq_poly_mod(F, fq_poly_mul(F, result, result), mod);
        if (bit_test(e, static_cast<unsigned>(i))) {
            result = fq_poly_mod(F, fq_poly_mul(F, result, base), mod);
        }
    }
    return result;
}

bool fq_poly_irreducible(const Fq& F, const FqPoly& f) {
    FqPoly g = fq_poly_trim(f);
    if (g.size() < 2) return false;  // constants and zero
    if (g.size() == 2) return true;  // linear
    if (g.back() != 1) g = fq_poly_scale(F, g, F.inv(g.back()));
    const u64 m = g.size() - 1;

    // X^{q^k} mod f by iterated Frobenius powers.
    std::vector<FqPoly> frob(m + 1);
    frob[0] = FqPoly{0, 1};
    for (u64 k = 1; k <= m; ++k) {
        frob[k] = fq_poly_pow_mod(F, frob[k - 1], BigInt(F.q()), g);
    }
    if (frob[m] != frob[0]) return false;
    u64 rest = m;
    for (u64 ell = 2; ell * ell <= rest; ++ell) {
        if (rest % ell != 0) continue;
        while (rest % ell == 0) rest /= ell;
        const FqPoly diff = fq_poly_sub(F, frob[m / ell], frob[0]);
        if (diff.empty() || fq_poly_gcd(F, diff, g).size() > 1) return false;
    }
    if (rest > 1) {
        const FqPoly diff = fq_poly_sub(F, frob[m / rest], frob[0]);
        if (diff.empty() || fq_poly_gcd(F, diff, g).size() > 1) return false;
    }
    return true;
}

u64 fq_poly_encode(const Fq& F, const FqPoly& a) {
    u64 code = 0;
    for (size_t i = a.size(); i-- > 0;) code = code * F.q() + a[i];
    return code;
}

FqPoly fq_poly_decode(const Fq& F, u64 index) {
    FqPoly out;
    while (index > 0) {
        out.push_back(index % F.q());
        index /= F.q();
    }
    return out;
}

FqPoly find_irreducible(const Fq& F, u64 n) {
    if (n == 0) throw std::invalid_argument("find_irreducible: degree must be >= 1");
    const u64 total = checked_pow(F.q(), n, kMaxRingSize, "find_irreducible: search space exceeds 10^6");
    // Candidates ordered by ascending base-q encoding of the lower
    // coefficients: comparing coefficient tuples from the leading end down,
    // X^n < X^n + 1 < ... < X^n + X < ...
    for (u64 k = 0; k < total; ++k) {
        FqPoly cand = fq_poly_decode(F, k);
        cand.resize(n + 1, 0);
        cand[n] = 1;
        if (fq_poly_irreducible(F, cand)) return cand;
    }
    throw std::logic_error("find_irreducible: exhausted search space");
}

FqPoly fq_poly_parse(const Fq& F, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty polynomial string");
    FqPoly out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string coeff = text.substr(pos, comma - pos);
        if (coeff.empty()) throw std::invalid_argument("empty coefficient in polynomial string");
        std::array<u64, kMaxExtensionDegree> digits{};
        u64 count = 0;
        size_t dpos = 0;
        while (dpos <= coeff.size()) {
            const size_t semi = std::min(coeff.find(';', dpos), coeff.size());
            const std::string digit = coeff.substr(dpos, semi - dpos);
            if (digit.empty() || digit.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("bad digit '" + digit + "' in polynomial string");
            }
            if (count >= F.r()) throw std::invalid_argument("too many digits in F_q coefficient");
            digits[count++] = std::stoull(digit) % F.p();
            dpos = semi + 1;
        }
        out.push_back(encode_digits(digits.data(), F.p(), F.r()));
        pos = comma + 1;
    }
    return fq_poly_trim(std::move(out));
}

std::string fq_poly_format(const Fq& F, const FqPoly& a) {
    const FqPoly t = fq_poly_trim(a);
    if (t.empty()) return "0";
    std::string out;
    std::array<u64, kMaxExtensionDegree> digits{};
    for (size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += ',';
        decode_digits(t[i], F.p(), F.r(), digits.data());
        for (u64 d = 0; d < F.r(); ++d) {
            if (d > 0) out += ';';
            out += std::to_string(digits[d]);
        }
    }
    return out;
}

FieldRing::FieldRing(Fq field, FqPoly modulus) : fq_(std::move(field)) {
    P_ = fq_poly_trim(std::move(modulus));
    for (u64 c : P_) {
        if (c >= fq_.q()) throw std::invalid_argument("FieldRing: coefficient out of range");
    }
    if (P_.size() < 3) throw std::invalid_argument("FieldRing: P must have degree >= 2");
    if (P_.back() != 1) throw std::invalid_argument("FieldRing: P must be monic");
    if (!fq_poly_irreducible(fq_, P_)) {
        throw std::invalid_argument("FieldRing: P is reducible over F_q");
    }
    n_ = P_.size() - 1;
    size_ = checked_pow(fq_.q(), n_, u64(1) << 62, "FieldRing: q^n too large");
    P2_ = fq_poly_mul(fq_, P_, P_);
}

FieldRing::Quotient FieldRing::quotient(FqPoly A, u64 w) const {
    if (w == 0) throw std::invalid_argument("quotient: w must be >= 1");
    A = fq_poly_mod(fq_, A, P2_);
    if (w % fq_.p() == 0) return {{}, true};
    const FqPoly aw = fq_poly_pow_mod(fq_, A, BigInt(w), P2_);
    const BigInt big_exp = BigInt(w) * BigInt(size_);
    const FqPoly awq = fq_poly_pow_mod(fq_, A, big_exp, P2_);
    const FqPoly diff = fq_poly_sub(fq_, aw, awq);
    auto [quot, rem] = fq_poly_divmod(fq_, diff, P_);
    if (!rem.empty()) {
        throw std::logic_error("FieldRing::quotient: A^w - A^{w q^n} not divisible by P");
    }
    return {fq_poly_mod(fq_, quot, P_), false};
}

FqPoly FieldRing::fermat(FqPoly A) const {
    A = fq_poly_mod(fq_, A, P2_);
    if (fq_poly_mod(fq_, A, P_).empty()) return {};
    const FqPoly t = fq_poly_pow_mod(fq_, A, BigInt(size_) - 1, P2_);
    const FqPoly diff = fq_poly_sub(fq_, t, FqPoly{1});
    auto [quot, rem] = fq_poly_divmod(fq_, diff, P_);
    if (!rem.empty()) {
        throw std::logic_error("FieldRing::fermat: A^{q^n-1} - 1 not divisible by P");
    }
    return fq_poly_mod(fq_, quot, P_);
}

FieldRing make_field_ring(u64 p, u64 r, const std::vector<u64>& conductor, const FqPoly& P) {
    return FieldRing(Fq(p, r, conductor), P);
}

ImageKernelStats image_kernel_stats(const FieldRing& ring, u64 w) {
    if (w == 0) throw std::invalid_argument("image_kernel_stats: w must be >= 1");
    const u64 total = ring.size();
    if (total > kMaxRingSize) {
        throw LimitExceeded("image_kernel_stats: q^n exceeds the exhaustive cap of 10^6");
    }
    const Fq& F = ring.field();
    const u64 w_scalar = w % F.p();

    ImageKernelStats stats;
    std::vector<char> image(total, 0);
    u64 fiber = 0;
    bool relation = true;
#pragma omp parallel
    {
        std::vector<char> local_image(total, 0);
        u64 local_fiber = 0;
        bool local_relation = true;
#pragma omp for schedule(dynamic, 64) nowait
        for (u64 idx = 0; idx < total; ++idx) {
            const FqPoly A = fq_poly_decode(F, idx);
            const auto qw = ring.quotient(A, w);
            local_image[fq_poly_encode(F, qw.value)] = 1;
            if (qw.value.empty()) ++local_fiber;

            const FqPoly q1 = w == 1 ? qw.value : ring.quotient(A, 1).value;
            const FqPoly apow = fq_poly_pow_mod(F, A, BigInt(w - 1), ring.modulus());
            const FqPoly rhs = fq_poly_scale(
                F, fq_poly_mod(F, fq_poly_mul(F, apow, q1), ring.modulus()), w_scalar);
            if (rhs != qw.value) local_relation = false;
        }
#pragma omp critical
        {
            for (u64 i = 0; i < total; ++i) image[i] |= local_image[i];
            fiber += local_fiber;
            relation = relation && local_relation;
        }
    }
    for (char flag : image) stats.image_size += (flag != 0);
    stats.zero_fiber_size = fiber;
    stats.relation_ok = relation;
    return stats;
}

}  // namespace polyq

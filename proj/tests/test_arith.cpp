#include <doctest.h>

#include "polyq/arith.hpp"
#include "polyq/reference.hpp"

using namespace polyq;

TEST_CASE("pow_mod basics") {
    CHECK(pow_mod(2, 4, 25) == 16);
    CHECK(pow_mod(2, 30, 25) == 24);  // 2^10 = -1 mod 25
    CHECK(pow_mod(0, 0, 7) == 1);
    CHECK(pow_mod(123, 0, 1000) == 1);
    CHECK(pow_mod(5, 0, 1) == 0);  // everything collapses mod 1
    CHECK_THROWS_AS(pow_mod(2, 3, 0), std::invalid_argument);
}

TEST_CASE("pow_mod agrees with repeated multiplication") {
    for (u64 base : {2ull, 3ull, 17ull, 1000003ull}) {
        for (u64 exp : {0ull, 1ull, 2ull, 19ull, 64ull, 100ull}) {
            for (u64 m : {2ull, 25ull, 97ull, 3037000493ull}) {
                CHECK(pow_mod(base, exp, m) == ref::pow_mod_serial(base, exp, m));
            }
        }
    }
}

TEST_CASE("pow_mod with multi-limb exponent") {
    // 2^(2^64) mod 101 == 2^(2^64 mod 100) == 2^16 mod 101
    CHECK(pow_mod(2, std::vector<u64>{0, 1}, 101) == pow_mod(2, 16, 101));
    CHECK(pow_mod(7, std::vector<u64>{5}, 99991) == pow_mod(7, 5, 99991));
    CHECK(pow_mod(3, std::vector<u64>{}, 17) == 1);
}

TEST_CASE("is_prime deterministic") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(101));
    CHECK(is_prime(1000000007));
    CHECK(is_prime((u64(1) << 61) - 1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));  // Carmichael
    CHECK_FALSE(is_prime(341));  // 2-pseudoprime
    CHECK_FALSE(is_prime(1000000));
    const auto primes = primes_up_to(2000);
    u64 idx = 0;
    for (u64 n = 2; n <= 2000; ++n) {
        const bool expect = idx < primes.size() && primes[idx] == n;
        CHECK(is_prime(n) == expect);
        if (expect) ++idx;
    }
}

TEST_CASE("inv_mod") {
    CHECK(inv_mod(3, 5) == 2);
    CHECK(inv_mod(1, 7) == 1);
    CHECK(inv_mod(4, 5) == 4);
    CHECK_THROWS_AS(inv_mod(0, 5), std::domain_error);
    CHECK_THROWS_AS(inv_mod(10, 5), std::domain_error);
    for (u64 p : {5ull, 13ull, 101ull, 99991ull}) {
        for (u64 a = 1; a < std::min(p, u64(200)); ++a) {
            const u64 b = inv_mod(a, p);
            CHECK(mul_mod(a, b, p) == 1);
            CHECK(inv_mod(b, p) == a);  // involution
        }
    }
}

TEST_CASE("primitive_root is the smallest generator") {
    CHECK(primitive_root(3) == 2);
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(7) == 3);  // 2 has order 3 mod 7
    for (u64 p : primes_up_to(199)) {
        if (p == 2) continue;
        const u64 g = primitive_root(p);
        CHECK(ref::is_primitive_root(g, p));
        for (u64 h = 2; h < g; ++h) CHECK_FALSE(ref::is_primitive_root(h, p));
    }
}

TEST_CASE("primitive_root order property") {
    for (u64 p : {101ull, 1009ull, 99991ull}) {
        const u64 g = primitive_root(p);
        CHECK(pow_mod(g, p - 1, p) == 1);
        u64 m = p - 1;
        for (u64 f = 2; f * f <= m; ++f) {
            if (m % f != 0) continue;
            CHECK(pow_mod(g, (p - 1) / f, p) != 1);
            while (m % f == 0) m /= f;
        }
        if (m > 1) CHECK(pow_mod(g, (p - 1) / m, p) != 1);
    }
}

TEST_CASE("primes_up_to") {
    CHECK(primes_up_to(10) == std::vector<u64>{2, 3, 5, 7});
    CHECK(primes_up_to(2) == std::vector<u64>{2});
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(30).size() == 10);
    CHECK(primes_up_to(200) == ref::primes_trial_division(200));
    u64 last = 0;
    for (u64 x = 2; x <= 120; ++x) {
        const u64 count = primes_up_to(x).size();
        CHECK(count >= last);
        last = count;
    }
}

TEST_CASE("PrimeContext validation") {
    CHECK_THROWS_AS(PrimeContext(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeContext(1000000000039ull), LimitExceeded);  // prime above the cap

    const PrimeContext ctx(13);
    CHECK(ctx.p() == 13);
    CHECK(ctx.p_sq() == 169);
    CHECK(ctx.gamma() == 2);
    CHECK(ctx.has_inverse_table());
    const auto& inv = ctx.inverse_table();
    for (u64 a = 1; a < 13; ++a) CHECK(mul_mod(a, inv[a], 13) == 1);
}

TEST_CASE("PrimeContext above the table cap still inverts") {
    const PrimeContext ctx(1000003);
    CHECK_FALSE(ctx.has_inverse_table());
    CHECK_THROWS_AS(ctx.inverse_table(), LimitExceeded);
    CHECK(mul_mod(12345, ctx.inv(12345), ctx.p()) == 1);
}

TEST_CASE("modular helpers near the top of the range") {
    const u64 p = 999999937;  // prime just below 10^9
    const u64 m = p * p;
    CHECK(mul_mod(m - 1, m - 1, m) == 1);
    CHECK(add_mod(m - 1, m - 1, m) == m - 2);
    CHECK(sub_mod(0, 1, m) == m - 1);
}

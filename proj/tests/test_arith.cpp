#include <doctest.h>

#include <cmath>
#include <random>

#include "lchi/arith.hpp"

using namespace lchi;

TEST_CASE("factorize basics") {
    CHECK(factorize(1).empty());
    CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(729) == Factorization{{3, 6}});
    CHECK(factorize(2) == Factorization{{2, 1}});
    CHECK(factorize(9223372036854775807LL) ==
          Factorization{{7, 2}, {73, 1}, {127, 1}, {337, 1}, {92737, 1}, {649657, 1}});
    CHECK_THROWS_AS(factorize(0), PreconditionError);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 1'000'000'000)(rng);
        const auto f = factorize(n);
        CHECK(product(f) == n);
        for (std::size_t j = 0; j < f.size(); ++j) {
            CHECK(is_prime(f[j].p));
            CHECK(f[j].a >= 1);
            if (j > 0) CHECK(f[j - 1].p < f[j].p);
        }
    }
}

TEST_CASE("is_prime against trial division") {
    for (std::int64_t n = 0; n <= 3000; ++n) {
        bool ref = n >= 2;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) ref = false;
        CHECK(is_prime(n) == ref);
    }
    CHECK(is_prime(2147483647LL));          // 2^31 - 1
    CHECK_FALSE(is_prime(2147483647LL * 2147483647LL));
}

TEST_CASE("modulus_profile worked examples") {
    const auto p64 = modulus_profile(64);
    CHECK(p64.C1 == 8);
    CHECK(p64.D1 == 8);
    CHECK(p64.C == 4);
    CHECK(p64.D == 8);
    CHECK(p64.lambda_D == 4);
    CHECK(p64.tau == 7);
    CHECK(p64.omega == 1);

    const auto p729 = modulus_profile(729);
    CHECK(p729.C1 == 27);
    CHECK(p729.D1 == 27);
    CHECK(p729.C == 9);
    CHECK(p729.D == 9);
    CHECK(p729.lambda_D == 2);
    CHECK(p729.spf.is_one());

    const auto p12 = modulus_profile(12);
    CHECK(p12.C1 == 6);
    CHECK(p12.D1 == 2);
    CHECK(p12.C == 6);
    CHECK(p12.D == 2);
}

TEST_CASE("profile structural invariants") {
    for (std::int64_t q = 1; q <= 3000; ++q) {
        const auto mp = modulus_profile(q);
        CHECK(mp.C1 * mp.D1 == q);
        for (const auto& pp : mp.factorization) {
            const auto loc = modulus_profile(ipow(pp.p, pp.a));
            CHECK(ipow(pp.p, pp.a + 1) % (loc.C * loc.D) == 0);  // C D | p^{a+1}
        }
    }
}

TEST_CASE("profile multiplicativity over coprime parts") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 300) {
        const std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, 4000)(rng);
        const std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, 4000)(rng);
        if (std::gcd(a, b) != 1) continue;
        ++done;
        const auto pa = modulus_profile(a), pb = modulus_profile(b), pab = modulus_profile(a * b);
        CHECK(pab.C1 == pa.C1 * pb.C1);
        CHECK(pab.D1 == pa.D1 * pb.D1);
        CHECK(pab.C == pa.C * pb.C);
        CHECK(pab.D == pa.D * pb.D);
        CHECK(pab.tau == pa.tau * pb.tau);
        CHECK(pab.omega == pa.omega + pb.omega);
        CHECK(pab.lambda_D == pa.lambda_D * pb.lambda_D);
        CHECK(pab.sqf.value() == doctest::Approx(pa.sqf.value() * pb.sqf.value()).epsilon(1e-13));
        CHECK(pab.cbf.value() == doctest::Approx(pa.cbf.value() * pb.cbf.value()).epsilon(1e-13));
        CHECK(pab.spf.value() == doctest::Approx(pa.spf.value() * pb.spf.value()).epsilon(1e-13));
    }
}

TEST_CASE("lambda_count closed form vs brute force") {
    CHECK(lambda_count(1) == 1);
    CHECK(lambda_count(2) == 1);
    CHECK(lambda_count(8) == 4);
    CHECK(lambda_count(12) == 4);
    for (std::int64_t m = 1; m <= 4000; ++m) {
        std::int64_t cnt = 0;
        for (std::int64_t x = 0; x < m; ++x)
            if ((x * x) % m == 1 % m) ++cnt;
        CHECK(lambda_count(m) == cnt);
    }
}

TEST_CASE("sixth powers have trivial sqf/cbf and spf <= 1") {
    for (std::int64_t m = 1; ipow(m, 6) <= 1000000; ++m) {
        const auto mp = modulus_profile(ipow(m, 6));
        CHECK(mp.sqf.is_one());
        CHECK(mp.cbf.is_one());
        CHECK(mp.spf.value() <= 1.0 + 1e-15);
    }
}

TEST_CASE("gcd weighted sums") {
    const auto s1 = gcd_weighted_sums(1, 17);
    CHECK(s1.s1 == 0.0L);
    CHECK(s1.s2 == 0.0L);

    const auto s2 = gcd_weighted_sums(4, 3);
    CHECK(static_cast<double>(s2.s1) == doctest::Approx(1.25));
    CHECK(static_cast<double>(s2.s1) <= divisor_count(3) * std::log(4.0));

    const auto s3 = gcd_weighted_sums(8, 8);
    CHECK(static_cast<double>(s3.s1) <= divisor_count(8) * std::log(8.0));
    CHECK(static_cast<double>(s3.s2) <= static_cast<double>(divisor_count(8) * 8));
}

TEST_CASE("gcd sum inequalities on a subgrid") {
    for (std::int64_t M = 1; M <= 64; ++M) {
        for (std::int64_t N = 1; N <= 64; ++N) {
            const auto s = gcd_weighted_sums(M, N);
            const long double tau = static_cast<long double>(divisor_count(N));
            CHECK(s.s1 <= tau * std::log(static_cast<long double>(M)) + 1e-12L);
            CHECK(s.s2 <= tau * static_cast<long double>(M) + 1e-12L);
        }
    }
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_mul(3037000499LL, 3037000499LL) == 9223372030926249001LL);
    CHECK_THROWS_AS(checked_mul(3037000500LL, 3037000500LL), OverflowError);
    CHECK(ipow(2, 62) == (std::int64_t{1} << 62));
    CHECK_THROWS_AS(ipow(2, 63), OverflowError);
}

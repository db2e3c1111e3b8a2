#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lchi/lfunc.hpp"

using namespace lchi;

TEST_CASE("zeta(1/2) against the known value, two refinement levels") {
    const double reference = -1.4603545088095868;
    const auto coarse = riemann_zeta({0.5, 0.0}, 1e-8);
    const auto fine = riemann_zeta({0.5, 0.0}, 1e-10);
    CHECK(std::fabs(coarse.value.real() - reference) <= coarse.err + 1e-15);
    CHECK(std::fabs(coarse.value.imag()) <= coarse.err);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.err + fine.err);
    CHECK(coarse.err <= 1e-8);
    CHECK(fine.err <= 1e-10);
}

TEST_CASE("l_direct at q = 1 is the zeta oracle") {
    const DirichletGroup g1(1);
    const auto lv = l_direct(g1.character(0), 0.0, 1e-9);
    CHECK(std::fabs(lv.value.real() + 1.4603545088) <= lv.err + 1e-10);
    CHECK(lv.err <= 1e-9);
}

TEST_CASE("l_direct refinement self-consistency") {
    const DirichletGroup g5(5);
    for (std::int64_t i = 1; i < g5.size(); ++i) {
        const auto chi = g5.character(i);
        const auto a = l_direct(chi, 37.5, 1e-6);
        const auto b = l_direct(chi, 37.5, 1e-7);
        CHECK(std::abs(a.value - b.value) <= a.err + b.err);
    }
}

TEST_CASE("l_direct conjugate symmetry") {
    for (std::int64_t q : {5, 9, 12}) {
        const DirichletGroup G(q);
        for (std::int64_t i = 1; i < G.size(); ++i) {
            const auto chi = G.character(i);
            const auto lv = l_direct(chi, 41.0, 1e-8);
            const auto lc = l_direct(chi.conjugate(), -41.0, 1e-8);
            CHECK(std::abs(lc.value - std::conj(lv.value)) <= lv.err + lc.err + 1e-12);
        }
    }
}

TEST_CASE("l_direct precision contract") {
    const DirichletGroup g5(5);
    CHECK_THROWS_AS(l_direct(g5.character(1), 10.0, 1e-13), PrecisionError);
    const auto lv = l_direct(g5.character(1), 10.0, 1e-11);
    CHECK(lv.err <= 1e-11);
}

TEST_CASE("principal character via the Euler product") {
    // L(s, chi0 mod q) = zeta(s) prod_{p | q} (1 - p^{-s})
    const DirichletGroup g12(12);
    const auto lv = l_direct(g12.character(0), 9.0, 1e-9);
    const auto z = riemann_zeta({0.5, 9.0}, 1e-12);
    std::complex<double> prod = 1.0;
    for (const double p : {2.0, 3.0})
        prod *= 1.0 - std::exp(std::complex<double>(-0.5, -9.0) * std::log(p));
    CHECK(std::abs(lv.value - z.value * prod) <= lv.err + 1e-10);
}

TEST_CASE("tail bound formula and limits") {
    // monotone decrease to zero in M
    double prev = l_tail_bound(5, 1.0, 10.0);
    for (double M = 10.0; M <= 1e12; M *= 10.0) {
        const double cur = l_tail_bound(5, M, 10.0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev <= 1e-4);

    CHECK(l_tail_bound(5, 1e6, 0.0) == doctest::Approx(2.0 * std::sqrt(5.0) * std::log(5.0) / 1e3));
    CHECK(l_tail_bound(7, 100.0, 3.0, false) ==
          doctest::Approx(std::numbers::sqrt2 * l_tail_bound(7, 100.0, 3.0)));

    // M = (|t|+1) sqrt(q) log q reproduces 4 q^{1/4} sqrt((|t|+1) log q)
    for (const double t : {0.0, 5.0, 300.0}) {
        const std::int64_t q = 13;
        const double M = (t + 1.0) * std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
        const double closed = 4.0 * std::pow(static_cast<double>(q), 0.25) *
                              std::sqrt((t + 1.0) * std::log(static_cast<double>(q)));
        CHECK(2.0 * std::sqrt(M) + l_tail_bound(q, M, t) == doctest::Approx(closed).epsilon(1e-12));
    }
}

TEST_CASE("truncated series plus tail dominates |L|") {
    const DirichletGroup g7(7);
    std::mt19937_64 rng(3);
    for (std::int64_t i = 1; i < g7.size(); ++i) {
        const auto chi = g7.character(i);
        if (!chi.is_primitive()) continue;
        const double t = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
        const auto lv = l_direct(chi, t, 1e-8);
        for (const double M : {1.0, 10.0, 1000.0}) {
            long double acc = 0.0L;
            for (std::int64_t n = 1; n <= static_cast<std::int64_t>(M); ++n)
                if (chi(n).nonzero) acc += 1.0L / std::sqrt(static_cast<long double>(n));
            CHECK(std::abs(lv.value) - lv.err <=
                  static_cast<double>(acc) + l_tail_bound(7, M, t) + 1e-9);
        }
    }
}

TEST_CASE("gamma reciprocal bound") {
    // exact reciprocal via the reflection formula |Gamma(1/2+it)|^2 = pi/cosh(pi t)
    auto exact_recip = [](double t) {
        return std::sqrt(std::cosh(std::numbers::pi * t) / std::numbers::pi);
    };
    CHECK(exact_recip(1.0) == doctest::Approx(1.9209).epsilon(1e-3));
    CHECK(gamma_recip_bound(1.0) > exact_recip(1.0));
    CHECK(gamma_recip_bound(10.0) > exact_recip(10.0));
    for (double t = 0.25; t <= 40.0; t *= 1.7) CHECK(gamma_recip_bound(t) >= exact_recip(t));
    CHECK_THROWS_AS(gamma_recip_bound(0.0), PreconditionError);

    // bound / e^{pi t/2} is decreasing in t
    double prev = gamma_recip_bound(0.5) / std::exp(std::numbers::pi * 0.5 / 2.0);
    for (double t = 1.0; t <= 64.0; t *= 2.0) {
        const double cur = gamma_recip_bound(t) / std::exp(std::numbers::pi * t / 2.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("lgamma_complex against reflection and recurrence") {
    // |Gamma(1/2+it)| from Stirling matches the reflection formula
    for (double t : {0.5, 2.0, 17.0, 300.0}) {
        const auto lg = detail::lgamma_complex({0.5, t});
        const double mod_ref =
            std::sqrt(std::numbers::pi / std::cosh(std::numbers::pi * t));
        CHECK(std::exp(lg.value.real()) == doctest::Approx(mod_ref).epsilon(1e-12));
    }
    // Gamma(5) = 24
    const auto lg5 = detail::lgamma_complex({5.0, 0.0});
    CHECK(std::exp(lg5.value.real()) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(lg5.value.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("afe worked example q=5, t=300") {
    const DirichletGroup g5(5);
    for (std::int64_t i = 1; i < g5.size(); ++i) {
        const auto chi = g5.character(i);
        REQUIRE(chi.is_primitive());
        const auto afe = afe_eval(chi, 300.0);
        CHECK(afe.n1 == 15);
        CHECK(afe.dual_sum == std::conj(afe.main_sum));
        CHECK(std::abs(afe.F) <= 1.0 + afe.delta_t);

        const auto lv = l_direct(chi, 300.0, 1e-9);
        const std::complex<double> approx = afe.main_sum + afe.F * afe.dual_sum;
        CHECK(std::abs(lv.value - approx) <= afe.remainder_bound + lv.err);
    }
}

TEST_CASE("afe preconditions") {
    const DirichletGroup g5(5);
    const DirichletGroup g9(9);
    CHECK_THROWS_AS(afe_eval(g5.character(0), 300.0), PreconditionError);  // principal
    CHECK_THROWS_AS(afe_eval(g5.character(1), -3.0), PreconditionError);   // t <= 0
    CHECK_THROWS_AS(afe_eval(g5.character(1), 1.0), PreconditionError);    // q t < 2 pi
    for (std::int64_t i = 0; i < g9.size(); ++i) {
        if (g9.character(i).conductor() == 3)
            CHECK_THROWS_AS(afe_eval(g9.character(i), 300.0), PreconditionError);  // imprimitive
    }
}

TEST_CASE("delta_t at t = sqrt(2)") {
    const DirichletGroup g5(5);
    const auto afe = afe_eval(g5.character(1), std::numbers::sqrt2);
    const double expected = std::exp(std::numbers::pi / (24.0 * std::numbers::sqrt2) + 1.0 / 24.0) - 1.0;
    CHECK(afe.delta_t == doctest::Approx(expected).epsilon(1e-12));
    CHECK(afe.delta_t == doctest::Approx(0.1436).epsilon(1e-3));
}

TEST_CASE("|F| <= 1 + delta_t on random primitive instances") {
    std::mt19937_64 rng(41);
    std::vector<DirichletCharacter> prims;
    for (std::int64_t q : {5, 7, 8, 9, 11, 13, 16, 25, 27, 49}) {
        for (const auto& chi : enumerate_characters(q))
            if (chi.is_primitive()) prims.push_back(chi);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto& chi = prims[std::uniform_int_distribution<std::size_t>(0, prims.size() - 1)(rng)];
        const double qd = static_cast<double>(chi.modulus());
        const double t = std::uniform_real_distribution<double>(std::sqrt(qd), 500.0)(rng);
        const auto afe = afe_eval(chi, t);
        CHECK(std::abs(afe.F) <= 1.0 + afe.delta_t + 1e-12);
    }
}

TEST_CASE("two-route consistency across moduli and heights") {
    for (std::int64_t q : {5, 13}) {
        const DirichletGroup G(q);
        for (std::int64_t i = 0; i < G.size(); ++i) {
            const auto chi = G.character(i);
            if (!chi.is_primitive()) continue;
            for (const double t : {300.0, 750.0}) {
                const auto lv = l_direct(chi, t, 1e-8);
                const auto afe = afe_eval(chi, t);
                const std::complex<double> approx = afe.main_sum + afe.F * afe.dual_sum;
                CHECK(std::abs(lv.value - approx) <= afe.remainder_bound + lv.err);
            }
        }
    }
}

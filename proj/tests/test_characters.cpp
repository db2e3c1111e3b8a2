#include <doctest.h>

#include <complex>
#include <random>
#include <set>

#include "lchi/characters.hpp"

using namespace lchi;

namespace {

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("unit group bases") {
    const auto b8 = unit_group_basis(2, 3);
    REQUIRE(b8.generators.size() == 2);
    CHECK(b8.generators[0].g == 7);
    CHECK(b8.generators[0].order == 2);
    CHECK(b8.generators[1].g == 5);
    CHECK(b8.generators[1].order == 2);

    const auto b5 = unit_group_basis(5, 1);
    REQUIRE(b5.generators.size() == 1);
    CHECK(b5.generators[0].g == 2);
    CHECK(b5.generators[0].order == 4);

    const auto b9 = unit_group_basis(3, 2);
    REQUIRE(b9.generators.size() == 1);
    CHECK(b9.generators[0].g == 2);
    CHECK(b9.generators[0].order == 6);

    // discrete logs reproduce the units by re-exponentiation
    for (const auto& b : {b8, b5, b9}) {
        for (std::int64_t u = 0; u < b.modulus; ++u) {
            if (!b.is_unit(u)) {
                CHECK(std::gcd(u, b.modulus) > 1);
                continue;
            }
            std::int64_t e[2] = {0, 0};
            b.exponents(u, e);
            std::int64_t v = 1;
            for (std::size_t g = 0; g < b.generators.size(); ++g)
                for (std::int64_t k = 0; k < e[g]; ++k) v = v * b.generators[g].g % b.modulus;
            CHECK(v == u);
        }
    }

    CHECK_THROWS_AS(unit_group_basis(2, 41), ModulusTooLargeError);
}

TEST_CASE("enumerate characters: counts and principal first") {
    CHECK(enumerate_characters(3).size() == 2);
    CHECK(enumerate_characters(8).size() == 4);
    const auto chars9 = enumerate_characters(9);
    CHECK(chars9.size() == 6);
    int primitive = 0;
    for (const auto& chi : chars9)
        if (chi.is_primitive()) ++primitive;
    CHECK(primitive == 4);
    CHECK(chars9[0].is_principal());
    for (std::int64_t n = 1; n < 9; ++n) {
        if (std::gcd(n, std::int64_t{9}) > 1) continue;
        CHECK(chars9[0](n).nonzero);
        CHECK(chars9[0](n).phase.is_one());
    }
}

TEST_CASE("character values are distinct across the group") {
    for (std::int64_t q : {3, 5, 8, 9, 12, 16, 24}) {
        const auto chars = enumerate_characters(q);
        std::set<std::vector<std::int64_t>> seen;
        for (const auto& chi : chars) {
            std::vector<std::int64_t> fingerprint;
            for (std::int64_t n = 0; n < q; ++n) {
                std::int64_t num;
                fingerprint.push_back(chi.eval_raw(n, num) ? num : -1);
            }
            seen.insert(fingerprint);
        }
        CHECK(seen.size() == chars.size());
    }
}

TEST_CASE("eval worked examples") {
    // order-4 character mod 5 with chi(2) = i
    const DirichletGroup g5(5);
    bool found = false;
    for (std::int64_t i = 0; i < g5.size(); ++i) {
        const auto chi = g5.character(i);
        if (close(chi(2).value(), {0.0, 1.0})) {
            found = true;
            CHECK(close(chi(3).value(), {0.0, -1.0}));
            CHECK(close(chi(4).value(), {-1.0, 0.0}));
        }
    }
    CHECK(found);

    // any character vanishes at its modulus
    for (std::int64_t q : {3, 5, 9, 12}) {
        for (const auto& chi : enumerate_characters(q)) CHECK_FALSE(chi(q).nonzero);
    }

    // quadratic character mod 3
    const auto chi3 = DirichletGroup(3).character(1);
    CHECK(close(chi3(2).value(), {-1.0, 0.0}));
    CHECK(close(chi3(4).value(), {1.0, 0.0}));
}

TEST_CASE("eval periodicity and complete multiplicativity") {
    std::mt19937_64 rng(23);
    for (std::int64_t q : {5, 8, 9, 12, 27, 40}) {
        for (const auto& chi : enumerate_characters(q)) {
            for (int trial = 0; trial < 100; ++trial) {
                const std::int64_t m = std::uniform_int_distribution<std::int64_t>(0, 5 * q)(rng);
                const std::int64_t n = std::uniform_int_distribution<std::int64_t>(0, 5 * q)(rng);
                const CharValue vm = chi(m), vn = chi(n), vmn = chi(m * n);
                CHECK(vmn.nonzero == (vm.nonzero && vn.nonzero));
                if (vmn.nonzero) CHECK(vmn.phase == (vm.phase + vn.phase));
                CHECK(chi(m + q).nonzero == vm.nonzero);
                if (vm.nonzero) CHECK(chi(m + q).phase == vm.phase);
            }
        }
    }
}

TEST_CASE("conjugate symmetry") {
    for (std::int64_t q : {5, 9, 16, 21}) {
        for (const auto& chi : enumerate_characters(q)) {
            const auto bar = chi.conjugate();
            for (std::int64_t n = 0; n < q; ++n) {
                const auto a = chi(n), b = bar(n);
                CHECK(a.nonzero == b.nonzero);
                if (a.nonzero) CHECK(b.phase == a.phase.conj());
            }
        }
    }
}

TEST_CASE("conductors") {
    // principal mod 12
    const auto chars12 = enumerate_characters(12);
    CHECK(chars12[0].conductor() == 1);
    CHECK_FALSE(chars12[0].is_primitive());

    // mod-8 character induced from the nontrivial mod-4 character
    const DirichletGroup g8(8);
    bool found4 = false;
    for (std::int64_t i = 0; i < g8.size(); ++i) {
        if (g8.character(i).conductor() == 4) found4 = true;
    }
    CHECK(found4);

    // quadratic character mod 5 is primitive
    for (const auto& chi : enumerate_characters(5)) {
        if (chi.order() == 2) {
            CHECK(chi.conductor() == 5);
            CHECK(chi.is_primitive());
        }
    }

    // conductor is the smallest induced modulus: brute-force cross-check
    for (std::int64_t q : {8, 9, 12, 24, 45}) {
        for (const auto& chi : enumerate_characters(q)) {
            std::int64_t smallest = q;
            for (std::int64_t d = 1; d <= q; ++d) {
                if (q % d != 0) continue;
                // chi is induced by a character mod d iff chi(n) = 1 whenever
                // n = 1 (mod d) and gcd(n, q) = 1
                bool induced = true;
                for (std::int64_t n = 1; n <= q; n += d) {
                    if (std::gcd(n, q) != 1) continue;
                    const auto v = chi(n);
                    if (!v.nonzero || !v.phase.is_one()) {
                        induced = false;
                        break;
                    }
                }
                if (induced) {
                    smallest = d;
                    break;
                }
            }
            CHECK(chi.conductor() == smallest);
        }
    }
}

TEST_CASE("postnikov linear examples") {
    // order-6 character mod 9 with chi(2) = e^{2 pi i/6}
    const DirichletGroup g9(9);
    for (std::int64_t i = 0; i < g9.size(); ++i) {
        const auto chi = g9.character(i);
        if (chi.order() == 6 && chi(2).phase == UnitPhase(1, 6)) {
            const auto lin = postnikov_linear(chi);
            CHECK(lin.verified);
            CHECK(lin.Ltilde % 3 == 1);
            CHECK(lin.B1 == 1);
        }
        if (chi.conductor() == 3) {  // induced from the mod-3 character
            const auto lin = postnikov_linear(chi);
            CHECK(lin.Ltilde == 0);
            CHECK(lin.B1 == 3);  // = D1
        }
    }

    // nontrivial character mod 4
    const auto chi4 = DirichletGroup(4).character(1);
    const auto lin4 = postnikov_linear(chi4);
    CHECK(lin4.verified);
    CHECK(lin4.Ltilde == 1);
    CHECK(lin4.B1 == 1);
}

TEST_CASE("postnikov quadratic examples") {
    // mod 9: D = 1 kills the quadratic phase, so L = 0 and B = 1 throughout
    for (const auto& chi : enumerate_characters(9)) {
        const auto quad = postnikov_quadratic(chi);
        CHECK(quad.verified);
        CHECK(quad.L == 0);
        CHECK(quad.B == 1);
    }

    // primitive mod 8: C = 2, D = 4, L odd, B = 1
    for (const auto& chi : enumerate_characters(8)) {
        const auto quad = postnikov_quadratic(chi);
        CHECK(quad.verified);
        if (chi.is_primitive()) {
            CHECK(quad.B == 1);
            CHECK(quad.L % 2 == 1);
        }
    }

    // primitive mod 27: B = gcd(L, 3) = 1
    for (const auto& chi : enumerate_characters(27)) {
        if (!chi.is_primitive()) continue;
        const auto quad = postnikov_quadratic(chi);
        CHECK(quad.verified);
        CHECK(quad.B == 1);
    }
}

TEST_CASE("postnikov exhaustive on small moduli") {
    for (std::int64_t q = 1; q <= 60; ++q) {
        for (const auto& chi : enumerate_characters(q)) {
            const auto pd = postnikov_data(chi);
            CHECK(pd.verified_linear);
            CHECK(pd.verified_quadratic);
            if (chi.is_primitive()) {
                CHECK(pd.B1 == 1);
                CHECK(pd.B == 1);
            }
        }
    }
}

TEST_CASE("gauss sums") {
    // quadratic character mod 3 at a = -1: two-term sum equals -i sqrt(3)
    const auto chi3 = DirichletGroup(3).character(1);
    CHECK(close(gauss_sum(chi3, -1), {0.0, -std::sqrt(3.0)}, 1e-12));

    // primitive characters mod 5 have |G| = sqrt(5)
    for (const auto& chi : enumerate_characters(5)) {
        if (!chi.is_primitive()) continue;
        CHECK(std::abs(gauss_sum(chi, -1)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    }

    // principal character mod 4: e^{-2 pi i/4} + e^{-6 pi i/4} = 0
    const auto chi4_0 = DirichletGroup(4).character(0);
    CHECK(close(gauss_sum(chi4_0, -1), {0.0, 0.0}, 1e-12));

    // |G(chi,-1)| = sqrt(q) for primitive chi across several moduli
    for (std::int64_t q : {7, 9, 16, 25, 27}) {
        for (const auto& chi : enumerate_characters(q)) {
            if (!chi.is_primitive()) continue;
            CHECK(std::abs(gauss_sum(chi, -1)) ==
                  doctest::Approx(std::sqrt(static_cast<double>(q))).epsilon(1e-9));
        }
    }
}

TEST_CASE("character index order is lexicographic and reproducible") {
    const DirichletGroup g(45);
    for (std::int64_t i = 0; i + 1 < g.size(); ++i) {
        CHECK(g.character(i).exponents() < g.character(i + 1).exponents());
        CHECK(g.character(i).index() == i);
    }
}

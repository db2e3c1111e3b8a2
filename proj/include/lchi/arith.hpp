#pragma once

// Integer factorization and the multiplicative invariants of the modulus:
// C1, D1, C, D, tau, omega, Lambda, and the exact p-power correction factors
// sqf/cbf/spf, plus the weighted gcd sums S1/S2.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "lchi/errors.hpp"

namespace lchi {

struct PrimePower {
    std::int64_t p;
    int a;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization, sorted ascending by prime; empty for n = 1.
using Factorization = std::vector<PrimePower>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin for the full 63-bit range.
inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const int r = std::countr_zero(un - 1);
    const std::uint64_t d = (un - 1) >> r;
    for (std::uint64_t base : {2ull, 325ull, 9375ull, 28178ull, 450775ull,
                               9780504ull, 1795265022ull}) {
        std::uint64_t x = detail::powmod_u64(base % un, d, un);
        if (x == 0 || x == 1 || x == un - 1) continue;
        bool composite = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = detail::mulmod_u64(x, x, un);
            if (x == un - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n, std::uint64_t c0) {
    // Brent's cycle variant; n is odd, composite, and has no tiny factors.
    std::uint64_t c = c0;
    while (true) {
        std::uint64_t x = 2, y = 2, d = 1, saved = 2;
        int power = 1, lam = 1;
        auto step = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        std::uint64_t q = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            saved = y;
            for (int i = 0; i < 64 && lam < power; ++i, ++lam) {
                y = step(y);
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            d = std::gcd(q, n);
        }
        if (d != n) return d;
        // backtrack one by one
        y = saved;
        d = 1;
        while (d == 1) {
            y = step(y);
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
        c += 1;  // rare: retry with a different polynomial
    }
}

inline void factorize_rec(std::uint64_t n, Factorization& out) {
    if (n == 1) return;
    if (is_prime(static_cast<std::int64_t>(n))) {
        out.push_back({static_cast<std::int64_t>(n), 1});
        return;
    }
    std::uint64_t d = pollard_rho(n, 1);
    factorize_rec(d, out);
    factorize_rec(n / d, out);
}

}  // namespace detail

inline Factorization factorize(std::int64_t n) {
    if (n < 1) throw PreconditionError("factorize: n must be >= 1");
    Factorization f;
    std::uint64_t m = static_cast<std::uint64_t>(n);
    for (std::uint64_t p = 2; p < 20000 && p * p <= m; p == 2 ? p = 3 : p += 2) {
        if (m % p == 0) {
            int a = 0;
            while (m % p == 0) {
                m /= p;
                ++a;
            }
            f.push_back({static_cast<std::int64_t>(p), a});
        }
    }
    if (m > 1) {
        Factorization rest;
        detail::factorize_rec(m, rest);
        std::sort(rest.begin(), rest.end(),
                  [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            int a = 0;
            while (j < rest.size() && rest[j].p == rest[i].p) {
                a += rest[j].a;
                ++j;
            }
            f.push_back({rest[i].p, a});
            i = j;
        }
    }
    return f;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer product overflows 63 bits");
    return r;
}

inline std::int64_t ipow(std::int64_t p, int a) {
    std::int64_t r = 1;
    for (int i = 0; i < a; ++i) r = checked_mul(r, p);
    return r;
}

inline std::int64_t product(const Factorization& f) {
    std::int64_t r = 1;
    for (const auto& pp : f) r = checked_mul(r, ipow(pp.p, pp.a));
    return r;
}

inline std::int64_t divisor_count(const Factorization& f) {
    std::int64_t r = 1;
    for (const auto& pp : f) r = checked_mul(r, pp.a + 1);
    return r;
}

inline std::int64_t divisor_count(std::int64_t n) { return divisor_count(factorize(n)); }

inline std::int64_t euler_phi(const Factorization& f) {
    std::int64_t r = 1;
    for (const auto& pp : f) r = checked_mul(r, ipow(pp.p, pp.a - 1) * (pp.p - 1));
    return r;
}

inline std::int64_t euler_phi(std::int64_t n) { return euler_phi(factorize(n)); }

// Number of solutions of x^2 == 1 (mod m), 0 <= x < m, by the closed form.
inline std::int64_t lambda_count(std::int64_t m) {
    if (m < 1) throw PreconditionError("lambda_count: m must be >= 1");
    const int omega = static_cast<int>(factorize(m).size());
    if (m % 4 == 2) return std::int64_t{1} << (omega - 1);
    if (m % 8 == 0) return std::int64_t{1} << (omega + 1);
    return std::int64_t{1} << omega;
}

// Exact product of p^(num/6) terms; converted to floating point only on demand.
class PrimePowerProduct {
  public:
    void multiply(std::int64_t p, std::int64_t num_sixths) {
        if (num_sixths != 0) factors_.push_back({p, num_sixths});
    }
    bool is_one() const { return factors_.empty(); }
    long double value_ld() const {
        long double acc = 0.0L;
        for (const auto& [p, n] : factors_) acc += static_cast<long double>(n) * std::log(static_cast<long double>(p));
        return std::exp(acc / 6.0L);
    }
    double value() const { return static_cast<double>(value_ld()); }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& factors() const { return factors_; }

  private:
    std::vector<std::pair<std::int64_t, std::int64_t>> factors_;  // (p, exponent numerator in sixths)
};

// All multiplicative invariants of the modulus in one record.
struct ModulusProfile {
    std::int64_t q = 1;
    Factorization factorization{};
    std::int64_t C1 = 1, D1 = 1, C = 1, D = 1;
    std::int64_t tau = 1;      // divisor count of q
    int omega = 0;             // distinct prime count of q
    std::int64_t lambda_D = 1; // number of square roots of 1 mod D
    PrimePowerProduct sqf{}, cbf{}, spf{};
};

inline ModulusProfile modulus_profile(std::int64_t q) {
    if (q < 1) throw PreconditionError("modulus_profile: q must be >= 1");
    ModulusProfile mp;
    mp.q = q;
    mp.factorization = factorize(q);
    mp.omega = static_cast<int>(mp.factorization.size());
    for (const auto& [p, a] : mp.factorization) {
        const int ca2 = (a + 1) / 2;  // ceil(a/2)
        const int ca3 = (a + 2) / 3;  // ceil(a/3)
        mp.C1 = checked_mul(mp.C1, ipow(p, ca2));
        mp.D1 = checked_mul(mp.D1, ipow(p, a - ca2));
        mp.C = checked_mul(mp.C, ipow(p, ca3));
        const int ed = (a == 1) ? 0 : (p == 2 ? a - 2 * ca3 + 1 : a - 2 * ca3);
        mp.D = checked_mul(mp.D, ipow(p, ed));
        mp.tau = checked_mul(mp.tau, a + 1);
        mp.sqf.multiply(p, 6LL * ca2 - 3LL * a);
        mp.cbf.multiply(p, 6LL * ca3 - 2LL * a);
        mp.spf.multiply(p, 6LL * ca2 - 3LL * ca3 - a - 3LL * ed);
    }
    mp.lambda_D = lambda_count(mp.D);
    return mp;
}

struct GcdWeightedSums {
    long double s1;  // sum of W_M(m) d_m(N)/m
    long double s2;  // sum of W_M(m) d_m(N)
};

// The two weighted gcd sums with W_M(m) = 1 - m/M and d_m(N) = gcd(2m, N).
// S1 <= tau(N) log M and S2 <= tau(N) M, with M = 1 giving (0, 0).
inline GcdWeightedSums gcd_weighted_sums(std::int64_t M, std::int64_t N) {
    if (M < 1 || N < 1) throw PreconditionError("gcd_weighted_sums: M, N must be >= 1");
    long double s1 = 0.0L, s2 = 0.0L;
    for (std::int64_t m = 1; m <= M; ++m) {
        const long double w = 1.0L - static_cast<long double>(m) / static_cast<long double>(M);
        const long double d = static_cast<long double>(std::gcd(2 * m, N));
        s1 += w * d / static_cast<long double>(m);
        s2 += w * d;
    }
    return {s1, s2};
}

}  // namespace lchi

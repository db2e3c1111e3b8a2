#pragma once

// Twisted exponential sums by brute force, the Taylor reduction factor nu_J,
// the well-spacing bound, the Kusmin-Landau helper, and the two hybrid
// van der Corput-Weyl bounds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "lchi/arith.hpp"
#include "lchi/characters.hpp"
#include "lchi/errors.hpp"

namespace lchi {

inline constexpr std::int64_t kMaxSumLength = std::int64_t{1} << 40;

// The phase of n^{-it}: f(x) = -(t/2pi) log x.
struct PhaseFunction {
    double t = 0.0;

    double f(double x) const { return -t / (2.0 * std::numbers::pi) * std::log(x); }
    double fprime(double x) const { return -t / (2.0 * std::numbers::pi * x); }
    double fsecond(double x) const { return t / (2.0 * std::numbers::pi * x * x); }

    long double f_ld(long double x) const {
        return -static_cast<long double>(t) / (2.0L * std::numbers::pi_v<long double>)*std::log(x);
    }
    long double fprime_ld(long double x) const {
        return -static_cast<long double>(t) / (2.0L * std::numbers::pi_v<long double> * x);
    }
    long double fsecond_ld(long double x) const {
        return static_cast<long double>(t) / (2.0L * std::numbers::pi_v<long double> * x * x);
    }
};

// Distance to the nearest integer, computed in extended precision.
inline long double nearest_int_dist(long double x) {
    const long double r = std::fabs(x - std::nearbyint(x));
    return r;
}

// nu_J(lambda, eta) = (1 + lambda^{-J}/(lambda-1)) exp(2 pi eta lambda^{-J}/(lambda-1)).
inline double nu_factor(int J, double lambda, double eta) {
    if (!(lambda > 1.0)) throw PreconditionError("nu_factor: lambda must exceed 1");
    if (eta < 0.0 || J < 0) throw PreconditionError("nu_factor: need eta >= 0, J >= 0");
    const long double lj = std::pow(static_cast<long double>(lambda), static_cast<long double>(-J));
    const long double ratio = lj / (static_cast<long double>(lambda) - 1.0L);
    return static_cast<double>((1.0L + ratio) *
                               std::exp(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(eta) * ratio));
}

struct TaylorReduction {
    int J;
    double lambda;
    double eta;
    double nu;
};

inline TaylorReduction taylor_reduction(int J, double lambda, double eta) {
    return {J, lambda, eta, nu_factor(J, lambda, eta)};
}

// Exact hypothesis of the Taylor reduction for f = -(t/2pi) log x:
// analyticity on the disk of radius lambda(L-1) about N+1, and
// (|t|/2 pi j) (lambda^2 (L-1)/(N+1))^j <= eta for all j > J.
inline bool taylor_hypothesis_ok(double t, std::int64_t N, std::int64_t L, double lambda,
                                 double eta, int J) {
    if (L <= 1) return true;
    const long double r =
        static_cast<long double>(lambda) * lambda * static_cast<long double>(L - 1) / static_cast<long double>(N + 1);
    if (!(lambda * static_cast<long double>(L - 1) < static_cast<long double>(N + 1))) return false;
    if (r > 1.0L) return false;  // terms would grow with j
    const long double first = std::fabs(static_cast<long double>(t)) /
                              (2.0L * std::numbers::pi_v<long double> * (J + 1)) *
                              std::pow(r, static_cast<long double>(J + 1));
    return first <= static_cast<long double>(eta);
}

// Lemma bound for a delta-spaced family {y_r} in [x, y]:
//   sum min(P, ||y_r||^{-1}) <= 2(y-x+1)(2P + delta^{-1} log(eP/2))   if P >= 2,
//   and 2(y-x+1)(P + delta^{-1}) if P < 2.
inline double wellspacing_bound(double P, double delta, double x, double y) {
    if (!(delta > 0.0)) throw PreconditionError("wellspacing_bound: delta must be positive");
    if (y < x) throw PreconditionError("wellspacing_bound: need y >= x");
    const double span = 2.0 * (y - x + 1.0);
    if (P >= 2.0) return span * (2.0 * P + std::log(std::numbers::e * P / 2.0) / delta);
    return span * (P + 1.0 / delta);
}

// Kusmin-Landau form used inside both hybrid bounds:
//   |sum_{k=1}^{K} e^{2 pi i (alpha k + beta)}| <= min(K, (1/pi)||alpha||^{-1} + 1).
inline double linear_exp_sum_bound(double alpha, std::int64_t length) {
    if (length < 0) throw PreconditionError("linear_exp_sum_bound: length must be >= 0");
    const long double dist = nearest_int_dist(static_cast<long double>(alpha));
    const double len = static_cast<double>(length);
    if (dist == 0.0L) return len;
    return std::min(len, static_cast<double>(1.0L / (std::numbers::pi_v<long double> * dist) + 1.0L));
}

struct TwistedSum {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;  // accumulated rounding bound
};

// Direct summation of sum_{n=N+1}^{N+L} chi(n) n^{-it}.
inline TwistedSum twisted_sum(const DirichletCharacter& chi, double t, std::int64_t N, std::int64_t L) {
    if (N < 0 || L < 0 || N + L > kMaxSumLength) throw RangeError("twisted_sum: range exceeds 2^40");
    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    const std::int64_t den = chi.phase_denominator();
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t n = N + 1; n <= N + L; ++n) {
        std::int64_t num;
        if (!chi.eval_raw(n, num)) continue;
        long double th = twopi * static_cast<long double>(num) / static_cast<long double>(den) -
                         static_cast<long double>(t) * std::log(static_cast<long double>(n));
        th = std::fmod(th, twopi);
        re += std::cos(th);
        im += std::sin(th);
    }
    return {{static_cast<double>(re), static_cast<double>(im)},
            std::ldexp(static_cast<double>(L), -48)};
}

// ---------------------------------------------------------------------------
// The two hybrid van der Corput-Weyl bounds
// ---------------------------------------------------------------------------

// z_f and delta_f with z_f + delta_f = q f'(N+1)/B1 and |delta_f| <= 1/2.
struct KusminLandauTerm {
    std::int64_t z_f;
    double delta_f;
    // ||(w + z_f + delta_f) B1 / D1|| for an integer w (= gamma1 * lbar).
    double U(std::int64_t w, std::int64_t D1, std::int64_t B1) const {
        const long double arg = (static_cast<long double>(w) + static_cast<long double>(z_f) +
                                 static_cast<long double>(delta_f)) *
                                static_cast<long double>(B1) / static_cast<long double>(D1);
        return static_cast<double>(nearest_int_dist(arg));
    }
};

inline KusminLandauTerm kusmin_landau_term(const ModulusProfile& mp, std::int64_t B1, double t,
                                           std::int64_t N) {
    const PhaseFunction f{t};
    const long double v = static_cast<long double>(mp.q) * f.fprime_ld(static_cast<long double>(N + 1)) /
                          static_cast<long double>(B1);
    const long double z = std::nearbyint(v);
    return {static_cast<std::int64_t>(z), static_cast<double>(v - z)};
}

// Per-shift data of the Weyl differencing step: d_m = (2m, D/B), m' = 2m/d_m,
// P_m = D/(B d_m), Lambda_m = Lambda(P_m), and w_m + eps_m = P_m m C^2 f''(N+1).
struct DifferencedTerm {
    std::int64_t m;
    std::int64_t d_m;
    std::int64_t m_prime;
    std::int64_t P_m;
    std::int64_t Lambda_m;
    std::int64_t w_m;
    double eps_m;
};

inline DifferencedTerm differenced_term(const ModulusProfile& mp, std::int64_t B, std::int64_t m,
                                        double t, std::int64_t N) {
    if (B < 1 || mp.D % B != 0) throw PreconditionError("differenced_term: B must divide D");
    const std::int64_t DB = mp.D / B;
    const std::int64_t dm = std::gcd(2 * m, DB);
    const std::int64_t Pm = DB / dm;
    const PhaseFunction f{t};
    const long double v = static_cast<long double>(Pm) * static_cast<long double>(m) *
                          static_cast<long double>(mp.C) * static_cast<long double>(mp.C) *
                          f.fsecond_ld(static_cast<long double>(N + 1));
    const long double w = std::nearbyint(v);
    return {m, dm, 2 * m / dm, Pm, lambda_count(Pm), static_cast<std::int64_t>(w),
            static_cast<double>(v - w)};
}

inline const double kDefaultLambda = 1.0 / std::sqrt(0.3);  // the dyadic pipeline's lambda at rho = 1.3

// Lemma bound for |sum chi(n) e^{2 pi i f(n)}| via the linear Postnikov phase:
//   (2 nu1 C1/pi)(log(D1/2B1) + 7/4 + pi/2)
//   + (nu1 C1/pi) min(pi B1 L/q, ||q f'(N+1)/B1||^{-1}).
inline double corput1_bound(const ModulusProfile& mp, std::int64_t B1, double nu1, double t,
                            std::int64_t N, std::int64_t L, double lambda = kDefaultLambda,
                            double eta = 1.0 / (4.0 * std::numbers::pi)) {
    if (B1 < 1 || mp.D1 % B1 != 0) throw PreconditionError("corput1_bound: B1 must divide D1");
    if (!taylor_hypothesis_ok(t, N, L, lambda, eta, 1))
        throw HypothesisError("corput1_bound: Taylor reduction hypothesis fails at J=1");
    const PhaseFunction f{t};
    const double lead = nu1 * static_cast<double>(mp.C1) / std::numbers::pi;
    const double fixed =
        2.0 * lead * (std::log(static_cast<double>(mp.D1) / (2.0 * static_cast<double>(B1))) +
                      7.0 / 4.0 + std::numbers::pi / 2.0);
    const long double arg = static_cast<long double>(mp.q) *
                            f.fprime_ld(static_cast<long double>(N + 1)) / static_cast<long double>(B1);
    const long double dist = nearest_int_dist(arg);
    const double lin = std::numbers::pi * static_cast<double>(B1) * static_cast<double>(L) /
                       static_cast<double>(mp.q);
    const double kl = dist == 0.0L ? lin : std::min(lin, static_cast<double>(1.0L / dist));
    return fixed + lead * kl;
}

// Lemma bound via Weyl differencing and the quadratic Postnikov phase;
// returns the square root of the right-hand side, so it bounds |sum| directly.
inline double corput2_bound(const ModulusProfile& mp, std::int64_t B, std::int64_t Lambda_D,
                            double nu2, double t, std::int64_t N, std::int64_t L,
                            double lambda = kDefaultLambda,
                            double eta = 1.0 / (6.0 * std::numbers::pi)) {
    if (B < 1 || mp.D % B != 0) throw PreconditionError("corput2_bound: B must divide D");
    if (!taylor_hypothesis_ok(t, N, L, lambda, eta, 2))
        throw HypothesisError("corput2_bound: Taylor reduction hypothesis fails at J=2");
    if (L == 0) return 0.0;
    const PhaseFunction f{t};
    const double lam = static_cast<double>(Lambda_D);
    const double C = static_cast<double>(mp.C);
    const double common = 4.0 * nu2 * nu2 * lam / std::numbers::pi;
    const double term1 =
        common * C * static_cast<double>(L) *
        (std::log(static_cast<double>(mp.D) / (2.0 * static_cast<double>(B))) + 7.0 / 4.0 +
         3.0 * std::numbers::pi / (2.0 * lam));
    const std::int64_t M = (L + mp.C - 1) / mp.C;  // ceil(L/C)
    const long double fpp = f.fsecond_ld(static_cast<long double>(N + 1));
    long double msum = 0.0L;
    for (std::int64_t m = 1; m <= M; ++m) {
        const std::int64_t DB = mp.D / B;
        const std::int64_t dm = std::gcd(2 * m, DB);
        const long double weight = 1.0L - static_cast<long double>(m) / static_cast<long double>(M);
        const long double arg = static_cast<long double>(m) * C * C * static_cast<long double>(mp.D) *
                                fpp / (static_cast<long double>(B) * static_cast<long double>(dm));
        const long double dist = nearest_int_dist(arg);
        const long double cap = std::numbers::pi_v<long double> * static_cast<long double>(dm) *
                                static_cast<long double>(B) * static_cast<long double>(L) /
                                (C * static_cast<long double>(mp.D));
        const long double contrib = dist == 0.0L ? cap : std::min(cap, 1.0L / dist);
        msum += weight * contrib;
    }
    const double term2 = common * C * C * static_cast<double>(msum);
    return std::sqrt(term1 + term2);
}

}  // namespace lchi

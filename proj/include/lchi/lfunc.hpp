#pragma once

// Rigorous numerical evaluation of L(1/2+it, chi) by two independent routes:
// an Euler-Maclaurin Hurwitz-zeta oracle with explicit remainder bounds, and
// the approximate functional equation with the explicit remainder of the
// convexity-bound proof. Also the partial-summation tail bound and the
// reciprocal-Gamma bound.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lchi/characters.hpp"
#include "lchi/errors.hpp"
#include "lchi/parallel.hpp"

namespace lchi {

struct LValue {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;  // rigorous radius: the true value lies within err
    enum class Method { direct, afe } method = Method::direct;
};

namespace detail {

// B_2, B_4, ..., B_34.
inline constexpr long double kBernoulli[17] = {
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
    854513.0L / 138.0L,
    -236364091.0L / 2730.0L,
    8553103.0L / 6.0L,
    -23749461029.0L / 870.0L,
    8615841276005.0L / 14322.0L,
    -7709321041217.0L / 510.0L,
    2577687858367.0L / 6.0L,
};

inline long double bernoulli_2j(int j) { return kBernoulli[j - 1]; }

inline long double factorial_ld(int n) {
    long double r = 1.0L;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// |s (s+1) ... (s+k-1)|
inline long double poch_abs(std::complex<long double> s, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r *= std::abs(s + static_cast<long double>(i));
    return r;
}

// Rigorous bound on the Euler-Maclaurin remainder for zeta(s, alpha) cut at
// x = alpha + M with J correction terms (sigma = Re s > -2J).
inline long double em_remainder_bound(std::complex<long double> s, long double x, int J) {
    const long double sigma = s.real();
    const long double zeta_odd = 1.252L;  // >= zeta(2J+1) for J >= 1
    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    return 2.0L * zeta_odd / std::pow(twopi, static_cast<long double>(2 * J + 1)) *
           poch_abs(s, 2 * J + 1) * std::pow(x, -sigma - 2 * J) / (sigma + 2 * J);
}

struct EmPlan {
    std::int64_t M;
    int J;
};

// Smallest (M, J) with certified remainder <= tol at the worst alpha -> 0.
inline EmPlan choose_em_cut(std::complex<long double> s, long double tol) {
    std::int64_t M = std::max<std::int64_t>(16, static_cast<std::int64_t>(0.25L * std::abs(s.imag())));
    for (int rounds = 0; rounds < 400; ++rounds) {
        for (int J = 2; J <= 16; J += 2) {
            if (em_remainder_bound(s, static_cast<long double>(M), J) <= tol) return {M, J};
        }
        M += M / 2 + 8;
        if (M > (std::int64_t{1} << 33))
            throw PrecisionError("euler-maclaurin cut grew past the runtime guard");
    }
    throw PrecisionError("euler-maclaurin cut selection failed");
}

// x^{-s} for real x > 0 with the phase reduced in extended precision.
inline std::complex<long double> pow_neg_s(long double x, std::complex<long double> s) {
    const long double lx = std::log(x);
    const long double mag = std::exp(-s.real() * lx);
    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    const long double th = std::fmod(-s.imag() * lx, twopi);
    return {mag * std::cos(th), mag * std::sin(th)};
}

struct EmTail {
    std::complex<long double> value;
    long double err;
};

// Euler-Maclaurin tail of zeta(s, alpha) past the first M terms:
//   x^{1-s}/(s-1) + x^{-s}/2 + sum_{j<=J} B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1},
// with x = alpha + M.
inline EmTail em_tail(std::complex<long double> s, long double alpha, std::int64_t M, int J) {
    const long double x = alpha + static_cast<long double>(M);
    const std::complex<long double> xms = pow_neg_s(x, s);
    std::complex<long double> acc = xms * x / (s - 1.0L) + 0.5L * xms;
    std::complex<long double> poch = s;  // (s)_1
    long double xpow = 1.0L / x;         // x^{-(2j-1)}
    for (int j = 1; j <= J; ++j) {
        acc += bernoulli_2j(j) / factorial_ld(2 * j) * poch * xms * xpow;
        poch *= (s + static_cast<long double>(2 * j - 1)) * (s + static_cast<long double>(2 * j));
        xpow /= x * x;
    }
    return {acc, em_remainder_bound(s, x, J)};
}

// zeta(s, alpha) for alpha in (0, 1], by Euler-Maclaurin with certified error.
inline void hurwitz_zeta_em(std::complex<long double> s, long double alpha, std::int64_t M, int J,
                            std::complex<long double>& value, long double& err) {
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t k = 0; k < M; ++k) {
        const std::complex<long double> term = pow_neg_s(alpha + static_cast<long double>(k), s);
        re += term.real();
        im += term.imag();
    }
    const EmTail tail = em_tail(s, alpha, M, J);
    value = std::complex<long double>(re, im) + tail.value;
    err = tail.err;
}

}  // namespace detail

// zeta(s) with certified error <= eps (also serves zeta(1+eta) and q = 1).
inline LValue riemann_zeta(std::complex<double> s, double eps) {
    if (eps < 1e-12) throw PrecisionError("riemann_zeta: eps below 1e-12");
    const std::complex<long double> sl(s.real(), s.imag());
    const auto plan = detail::choose_em_cut(sl, static_cast<long double>(eps) / 2.0L);
    std::complex<long double> v;
    long double err;
    detail::hurwitz_zeta_em(sl, 1.0L, plan.M, plan.J, v, err);
    const double round = static_cast<double>(plan.M) * 3e-18 * (std::fabs(s.imag()) + 8.0);
    return {{static_cast<double>(v.real()), static_cast<double>(v.imag())},
            static_cast<double>(err) + round,
            LValue::Method::direct};
}

namespace detail {

// Shared per-(q, t, eps) table: V_a = sum_{n = a mod q, n <= a+(M-1)q} n^{-s}
// plus the scaled Euler-Maclaurin tail of q^{-s} zeta(s, a/q), for every
// residue a coprime to q. L(1/2+it, chi) = sum_a chi(a) V_a.
struct LDirectBank {
    std::int64_t q = 1;
    double t = 0.0;
    double eps = 0.0;
    std::vector<std::complex<double>> V;  // size q; zero at non-coprime residues
    double analytic_err = 0.0;            // sum of scaled EM remainders
    double rounding_err = 0.0;
    double abs_sum = 0.0;  // sum over a of |V_a|, for assembly rounding

    static std::shared_ptr<const LDirectBank> get(std::int64_t q, double t, double eps,
                                                  unsigned threads = 0);
};

inline std::shared_ptr<const LDirectBank> make_bank(std::int64_t q, double t, double eps,
                                                    unsigned threads) {
    auto bank = std::make_shared<LDirectBank>();
    bank->q = q;
    bank->t = t;
    bank->eps = eps;
    bank->V.assign(static_cast<std::size_t>(q), {0.0, 0.0});

    const std::complex<long double> s(0.5L, static_cast<long double>(t));
    const std::int64_t phi = euler_phi(q);
    const long double tol_a = static_cast<long double>(eps) * std::sqrt(static_cast<long double>(q)) /
                              (2.0L * static_cast<long double>(phi));
    const auto plan = choose_em_cut(s, tol_a);
    const std::complex<long double> q_ms = pow_neg_s(static_cast<long double>(q), s);

    std::vector<long double> errs(static_cast<std::size_t>(q), 0.0L);
    std::vector<long double> abss(static_cast<std::size_t>(q), 0.0L);
    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    const long double tl = static_cast<long double>(t);

    parallel_for(q, threads ? threads : default_thread_count(), [&](std::int64_t a0) {
        const std::int64_t a = a0 + 1 <= q ? a0 + 1 : a0;  // residues 1..q (q = 0 mod q)
        if (std::gcd(a % q, q) != 1) return;
        long double re = 0.0L, im = 0.0L;
        for (std::int64_t k = 0; k < plan.M; ++k) {
            const long double n = static_cast<long double>(a + k * q);
            const long double w = 1.0L / std::sqrt(n);
            long double th = std::fmod(-tl * std::log(n), twopi);
            re += w * std::cos(th);
            im += w * std::sin(th);
        }
        const long double alpha = static_cast<long double>(a) / static_cast<long double>(q);
        const EmTail tail = em_tail(s, alpha, plan.M, plan.J);
        const std::complex<long double> v = std::complex<long double>(re, im) + q_ms * tail.value;
        bank->V[static_cast<std::size_t>(a % q)] = {static_cast<double>(v.real()),
                                                    static_cast<double>(v.imag())};
        errs[static_cast<std::size_t>(a % q)] = tail.err / std::sqrt(static_cast<long double>(q));
        abss[static_cast<std::size_t>(a % q)] = std::abs(v);
    });

    long double analytic = 0.0L, absv = 0.0L;
    for (std::int64_t a = 0; a < q; ++a) {
        analytic += errs[static_cast<std::size_t>(a)];
        absv += abss[static_cast<std::size_t>(a)];
    }
    bank->analytic_err = static_cast<double>(analytic);
    bank->abs_sum = static_cast<double>(absv);
    // Per-term extended-precision phase and accumulation budget.
    const double nmax = static_cast<double>(q) * static_cast<double>(plan.M) + 2.0;
    const double per_term = (std::fabs(t) * std::log(nmax) + 8.0) * 2.2e-19 + 2e-18;
    bank->rounding_err = 4.0 * std::sqrt(nmax) * per_term + bank->abs_sum * 1e-17;
    return bank;
}

inline std::shared_ptr<const LDirectBank> LDirectBank::get(std::int64_t q, double t, double eps,
                                                           unsigned threads) {
    struct Key {
        std::int64_t q;
        double t, eps;
        bool operator<(const Key& o) const {
            return std::tie(q, t, eps) < std::tie(o.q, o.t, o.eps);
        }
    };
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const LDirectBank>> cache;
    const Key key{q, t, eps};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto bank = make_bank(q, t, eps, threads);
    std::lock_guard lock(mu);
    if (cache.size() > 256) cache.clear();
    return cache.emplace(key, std::move(bank)).first->second;
}

}  // namespace detail

// Independent oracle for L(1/2+it, chi) with certified radius err <= eps.
// chi nonprincipal uses the Hurwitz decomposition directly; the principal
// character goes through zeta(s) times its finite Euler product.
inline LValue l_direct(const DirichletCharacter& chi, double t, double eps) {
    if (eps < 1e-12) throw PrecisionError("l_direct: eps below 1e-12");
    const std::int64_t q = chi.modulus();
    const std::complex<double> s(0.5, t);

    if (chi.is_principal()) {
        std::complex<long double> prod(1.0L, 0.0L);
        long double prod_abs_max = 1.0L;
        for (const auto& pp : chi.profile().factorization) {
            prod *= 1.0L - detail::pow_neg_s(static_cast<long double>(pp.p),
                                             std::complex<long double>(0.5L, t));
            prod_abs_max *= 1.0L + 1.0L / std::sqrt(static_cast<long double>(pp.p));
        }
        const LValue z = riemann_zeta(s, eps / (2.0 * static_cast<double>(prod_abs_max)));
        const std::complex<double> pd(static_cast<double>(prod.real()),
                                      static_cast<double>(prod.imag()));
        return {z.value * pd, z.err * static_cast<double>(prod_abs_max) + 1e-15 * std::abs(z.value),
                LValue::Method::direct};
    }

    const auto bank = detail::LDirectBank::get(q, t, eps);
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::int64_t a = 0; a < q; ++a) {
        std::int64_t num;
        if (!chi.eval_raw(a, num)) continue;
        const std::complex<double> cv = UnitPhase(num, chi.phase_denominator()).value();
        const auto& v = bank->V[static_cast<std::size_t>(a)];
        acc += std::complex<long double>(cv.real(), cv.imag()) *
               std::complex<long double>(v.real(), v.imag());
    }
    const double err =
        bank->analytic_err + bank->rounding_err + bank->abs_sum * 1e-16;
    if (err > eps)
        throw PrecisionError("l_direct: certified radius exceeds requested eps at this (q, t)");
    return {{static_cast<double>(acc.real()), static_cast<double>(acc.imag())},
            err,
            LValue::Method::direct};
}

// Rigorous tail bound |sum_{n > M} chi(n) n^{-1/2-it}| <= 2 sqrt(q) log(q) (|t|+1)/sqrt(M)
// for primitive chi; nonprincipal-only characters take an extra sqrt(2).
inline double l_tail_bound(std::int64_t q, double M, double t, bool primitive = true) {
    if (q <= 1 || M < 1.0) throw PreconditionError("l_tail_bound: need q > 1, M >= 1");
    const double base = 2.0 * std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q)) *
                        (std::fabs(t) + 1.0) / std::sqrt(M);
    return primitive ? base : base * std::numbers::sqrt2;
}

// ---------------------------------------------------------------------------
// Gamma machinery for the approximate functional equation
// ---------------------------------------------------------------------------

namespace detail {

struct LogGamma {
    std::complex<double> value;
    double err;
};

// log Gamma(z) by argument shift plus Stirling with K = 8 correction terms.
inline LogGamma lgamma_complex(std::complex<double> z) {
    std::complex<long double> w(z.real(), z.imag());
    std::complex<long double> shift(0.0L, 0.0L);
    int guard = 0;
    while (std::abs(w) < 16.0L && guard++ < 64) {
        shift += std::log(w);
        w += 1.0L;
    }
    constexpr int K = 8;
    const std::complex<long double> lw = std::log(w);
    std::complex<long double> acc =
        (w - 0.5L) * lw - w + 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
    std::complex<long double> wp = 1.0L / w;
    const std::complex<long double> winv2 = wp * wp;
    for (int j = 1; j <= K; ++j) {
        acc += bernoulli_2j(j) / static_cast<long double>((2 * j) * (2 * j - 1)) * wp;
        wp *= winv2;
    }
    acc -= shift;
    const long double half_arg = std::arg(w) / 2.0L;
    const long double err = std::fabs(bernoulli_2j(K + 1)) /
                            static_cast<long double>((2 * K + 2) * (2 * K + 1)) /
                            (std::pow(std::abs(w), static_cast<long double>(2 * K + 1)) *
                             std::pow(std::cos(half_arg), static_cast<long double>(2 * K + 2)));
    return {{static_cast<double>(acc.real()), static_cast<double>(acc.imag())},
            static_cast<double>(err) + 1e-16};
}

}  // namespace detail

// Upper bound e^{pi t/2 + pi/(24 t) + 1/(12 t^2)} / sqrt(2 pi) for 1/|Gamma(1/2+it)|.
inline double gamma_recip_bound(double t) {
    if (!(t > 0.0)) throw PreconditionError("gamma_recip_bound: t must be positive");
    const long double e = std::numbers::pi_v<long double> * t / 2.0L +
                          std::numbers::pi_v<long double> / (24.0L * t) + 1.0L / (12.0L * t * t);
    return static_cast<double>(std::exp(e) / std::sqrt(2.0L * std::numbers::pi_v<long double>));
}

struct AfeResult {
    std::int64_t n1 = 0;
    std::complex<double> main_sum{0.0, 0.0};
    std::complex<double> dual_sum{0.0, 0.0};
    std::complex<double> F{0.0, 0.0};
    double delta_t = 0.0;
    double remainder_bound = 0.0;
};

// Approximate functional equation at X = Y = sqrt(qt/2pi):
//   L(1/2+it, chi) = main + F * dual + R,  |R| <= remainder_bound.
inline AfeResult afe_eval(const DirichletCharacter& chi, double t) {
    const std::int64_t q = chi.modulus();
    if (!chi.is_primitive() || q <= 1)
        throw PreconditionError("afe_eval: chi must be primitive mod q > 1");
    if (!(t > 0.0) || static_cast<double>(q) * t < 2.0 * std::numbers::pi)
        throw PreconditionError("afe_eval: need t > 0 and q t >= 2 pi");

    AfeResult out;
    out.n1 = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(q) * t /
                                                 (2.0L * std::numbers::pi_v<long double>)));
    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    const std::int64_t den = chi.phase_denominator();
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t n = 1; n <= out.n1; ++n) {
        std::int64_t num;
        if (!chi.eval_raw(n % q, num)) continue;
        const long double nn = static_cast<long double>(n);
        const long double w = 1.0L / std::sqrt(nn);
        long double th = twopi * static_cast<long double>(num) / static_cast<long double>(den) -
                         static_cast<long double>(t) * std::log(nn);
        th = std::fmod(th, twopi);
        re += w * std::cos(th);
        im += w * std::sin(th);
    }
    out.main_sum = {static_cast<double>(re), static_cast<double>(im)};
    out.dual_sum = std::conj(out.main_sum);

    const std::complex<double> G = gauss_sum(chi, -1);
    const auto lg = detail::lgamma_complex({0.5, t});
    const std::complex<long double> s(0.5L, static_cast<long double>(t));
    const std::complex<long double> log2pii =
        s * std::complex<long double>(std::log(twopi), std::numbers::pi_v<long double> / 2.0L);
    const std::complex<long double> logF =
        log2pii - s * std::log(static_cast<long double>(q)) +
        std::complex<long double>(std::log(std::abs(std::complex<long double>(G.real(), G.imag()))),
                                  std::arg(std::complex<long double>(G.real(), G.imag()))) -
        std::complex<long double>(lg.value.real(), lg.value.imag());
    const std::complex<long double> F = std::exp(logF);
    out.F = {static_cast<double>(F.real()), static_cast<double>(F.imag())};

    out.delta_t = static_cast<double>(std::expm1(std::numbers::pi_v<long double> / (24.0L * t) +
                                                 1.0L / (12.0L * static_cast<long double>(t) * t)));
    const double lq = std::log(static_cast<double>(q));
    out.remainder_bound = 264.72 * std::pow(static_cast<double>(q), 0.25) * lq / std::pow(t, 0.25) +
                          11.39 * std::pow(static_cast<double>(q), 0.75) *
                              std::exp(-0.78 * std::sqrt(t / static_cast<double>(q))) /
                              std::pow(t, 0.75);
    return out;
}

}  // namespace lchi

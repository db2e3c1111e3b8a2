#pragma once

// Exact Dirichlet character arithmetic modulo q. Characters are exponent
// vectors over explicit unit-group generators per prime power; values are
// exact roots of unity (rational phases), so the Postnikov identities can be
// verified exactly instead of to a floating tolerance.

#include <atomic>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <tuple>
#include <vector>

#include "lchi/arith.hpp"
#include "lchi/errors.hpp"

namespace lchi {

inline constexpr std::int64_t kMaxPrimePowerModulus = std::int64_t{1} << 40;

// Exact phase r in [0,1) representing the root of unity e^{2 pi i r}.
class UnitPhase {
  public:
    UnitPhase() = default;
    UnitPhase(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw PreconditionError("UnitPhase: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
        if (num_ == 0) den_ = 1;
    }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_one() const { return num_ == 0; }

    friend bool operator==(const UnitPhase&, const UnitPhase&) = default;

    UnitPhase operator+(const UnitPhase& o) const {
        const std::int64_t g = std::gcd(den_, o.den_);
        const std::int64_t den = checked_mul(den_ / g, o.den_);
        const __int128 num = static_cast<__int128>(num_) * (o.den_ / g) +
                             static_cast<__int128>(o.num_) * (den_ / g);
        return UnitPhase(static_cast<std::int64_t>(num % den), den);
    }
    // Complex conjugate (phase negation mod 1).
    UnitPhase conj() const { return UnitPhase(den_ - num_, den_); }
    // Phase multiplied by an integer k (character power).
    UnitPhase scaled(std::int64_t k) const {
        const __int128 n = static_cast<__int128>(num_) * (((k % den_) + den_) % den_);
        return UnitPhase(static_cast<std::int64_t>(n % den_), den_);
    }
    std::complex<double> value() const {
        const long double th =
            2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num_) / static_cast<long double>(den_);
        return {static_cast<double>(std::cos(th)), static_cast<double>(std::sin(th))};
    }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// A character value: zero (off the units) or an exact root of unity.
struct CharValue {
    bool nonzero = false;
    UnitPhase phase{};
    std::complex<double> value() const { return nonzero ? phase.value() : std::complex<double>{0.0, 0.0}; }
};

// Generators of (Z/p^a Z)^* with a full discrete-log table. For p = 2, a >= 3
// the basis is the class of -1 (order 2) times the class of 5 (order 2^{a-2}).
struct UnitGroupBasis {
    std::int64_t modulus = 1;  // p^a
    std::int64_t p = 1;
    int a = 0;
    std::int64_t phi = 1;
    struct Generator {
        std::int64_t g;
        std::int64_t order;
    };
    std::vector<Generator> generators;
    // dlog[u] packs the exponent vector of u, or -1 for non-units.
    // One generator: dlog = k. Two generators (g0 first): dlog = k0 * order1 + k1.
    std::vector<std::int64_t> dlog;

    bool is_unit(std::int64_t residue) const { return dlog[static_cast<std::size_t>(residue)] >= 0; }
    void exponents(std::int64_t residue, std::int64_t out[2]) const {
        const std::int64_t v = dlog[static_cast<std::size_t>(residue)];
        if (generators.size() == 2) {
            out[0] = v / generators[1].order;
            out[1] = v % generators[1].order;
        } else if (generators.size() == 1) {
            out[0] = v;
        }
    }
};

namespace detail {

inline std::int64_t smallest_primitive_root(std::int64_t p) {
    const Factorization pm1 = factorize(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& pp : pm1) {
            if (powmod_u64(g, (p - 1) / pp.p, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 1;  // p = 2
}

}  // namespace detail

inline UnitGroupBasis unit_group_basis(std::int64_t p, int a) {
    if (!is_prime(p) || a < 1) throw PreconditionError("unit_group_basis: need a prime power");
    UnitGroupBasis b;
    b.p = p;
    b.a = a;
    b.modulus = ipow(p, a);
    if (b.modulus > kMaxPrimePowerModulus)
        throw ModulusTooLargeError("unit_group_basis: prime power exceeds 2^40");
    b.phi = ipow(p, a - 1) * (p - 1);
    b.dlog.assign(static_cast<std::size_t>(b.modulus), -1);

    if (p == 2) {
        if (a == 1) {
            b.dlog[1] = 0;  // trivial group
        } else if (a == 2) {
            b.generators.push_back({3, 2});
            b.dlog[1] = 0;
            b.dlog[3] = 1;
        } else {
            const std::int64_t ord5 = b.modulus / 4;
            b.generators.push_back({b.modulus - 1, 2});
            b.generators.push_back({5, ord5});
            std::int64_t u = 1;
            for (std::int64_t k = 0; k < ord5; ++k) {
                b.dlog[static_cast<std::size_t>(u)] = k;
                b.dlog[static_cast<std::size_t>(b.modulus - u)] = ord5 + k;
                u = detail::mulmod_u64(u, 5, b.modulus);
            }
        }
    } else {
        std::int64_t g = detail::smallest_primitive_root(p);
        if (a >= 2 && detail::powmod_u64(g, p - 1, p * p) == 1) g += p;
        b.generators.push_back({g, b.phi});
        std::int64_t u = 1;
        for (std::int64_t k = 0; k < b.phi; ++k) {
            b.dlog[static_cast<std::size_t>(u)] = k;
            u = detail::mulmod_u64(u, g, b.modulus);
        }
    }

    // Invariant checks: orders multiply to phi and every unit got a log.
    std::int64_t prod = 1;
    for (const auto& gen : b.generators) prod *= gen.order;
    std::int64_t units = 0;
    for (std::int64_t r = 0; r < b.modulus; ++r)
        if (b.dlog[static_cast<std::size_t>(r)] >= 0) ++units;
    if (prod != b.phi || units != b.phi)
        throw VerificationError("unit_group_basis: generator table inconsistent");
    return b;
}

namespace detail {

struct GroupData {
    std::int64_t q = 1;
    std::int64_t phi = 1;
    ModulusProfile profile{};
    std::vector<UnitGroupBasis> bases;  // one per prime power, ascending p
    // Flattened generator orders across bases (basis order preserved).
    std::vector<std::int64_t> orders;
    std::vector<std::size_t> basis_of_gen;
    std::int64_t phase_den = 1;  // lcm of all generator orders
};

inline std::shared_ptr<const GroupData> make_group_data(std::int64_t q) {
    auto d = std::make_shared<GroupData>();
    d->q = q;
    d->profile = modulus_profile(q);
    for (const auto& pp : d->profile.factorization) {
        d->bases.push_back(unit_group_basis(pp.p, pp.a));
        d->phi = checked_mul(d->phi, d->bases.back().phi);
    }
    for (std::size_t bi = 0; bi < d->bases.size(); ++bi) {
        for (const auto& gen : d->bases[bi].generators) {
            d->orders.push_back(gen.order);
            d->basis_of_gen.push_back(bi);
            d->phase_den = std::lcm(d->phase_den, gen.order);
        }
    }
    return d;
}

}  // namespace detail

class DirichletCharacter;

// All characters mod q, indexed lexicographically over generator-exponent
// vectors (principal character first).
class DirichletGroup {
  public:
    explicit DirichletGroup(std::int64_t q) : d_(detail::make_group_data(q)) {}

    std::int64_t modulus() const { return d_->q; }
    std::int64_t size() const { return d_->phi; }  // = phi(q)
    const ModulusProfile& profile() const { return d_->profile; }
    const std::vector<UnitGroupBasis>& bases() const { return d_->bases; }

    DirichletCharacter character(std::int64_t index) const;
    std::vector<DirichletCharacter> characters() const;

  private:
    std::shared_ptr<const detail::GroupData> d_;
    friend class DirichletCharacter;
};

class DirichletCharacter {
  public:
    DirichletCharacter(std::shared_ptr<const detail::GroupData> d, std::int64_t index)
        : d_(std::move(d)), index_(index) {
        if (index_ < 0 || index_ >= d_->phi)
            throw PreconditionError("character index out of range");
        exps_.resize(d_->orders.size());
        std::int64_t rem = index_;
        for (std::size_t i = d_->orders.size(); i-- > 0;) {
            exps_[i] = rem % d_->orders[i];
            rem /= d_->orders[i];
        }
    }

    std::int64_t modulus() const { return d_->q; }
    std::int64_t index() const { return index_; }
    const std::vector<std::int64_t>& exponents() const { return exps_; }
    const ModulusProfile& profile() const { return d_->profile; }
    const std::vector<UnitGroupBasis>& bases() const { return d_->bases; }

    bool is_principal() const { return index_ == 0; }

    // Raw phase of chi(n) over the fixed group denominator; false if chi(n)=0.
    bool eval_raw(std::int64_t n, std::int64_t& num) const {
        std::int64_t acc = 0;
        std::size_t gi = 0;
        for (const auto& b : d_->bases) {
            std::int64_t r = n % b.modulus;
            if (r < 0) r += b.modulus;
            const std::int64_t v = b.dlog[static_cast<std::size_t>(r)];
            if (v < 0) return false;
            if (b.generators.size() == 2) {
                const std::int64_t ord1 = b.generators[1].order;
                const std::int64_t k0 = v / ord1, k1 = v % ord1;
                acc += mul_ord(exps_[gi], k0, b.generators[0].order, d_->phase_den);
                acc += mul_ord(exps_[gi + 1], k1, ord1, d_->phase_den);
                gi += 2;
            } else if (b.generators.size() == 1) {
                acc += mul_ord(exps_[gi], v, b.generators[0].order, d_->phase_den);
                gi += 1;
            }
            acc %= d_->phase_den;
        }
        num = acc;
        return true;
    }

    CharValue operator()(std::int64_t n) const {
        std::int64_t num;
        if (!eval_raw(n, num)) return {};
        return {true, UnitPhase(num, d_->phase_den)};
    }

    std::int64_t phase_denominator() const { return d_->phase_den; }

    DirichletCharacter conjugate() const {
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            const std::int64_t e = exps_[i] == 0 ? 0 : d_->orders[i] - exps_[i];
            idx = idx * d_->orders[i] + e;
        }
        return DirichletCharacter(d_, idx);
    }

    std::int64_t order() const {
        std::int64_t o = 1;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            o = std::lcm(o, d_->orders[i] / std::gcd(d_->orders[i], exps_[i]));
        return o;
    }

    // Smallest induced modulus (1 for the principal character).
    std::int64_t conductor() const {
        std::int64_t cached = conductor_cache_.load(std::memory_order_relaxed);
        if (cached != 0) return cached;
        std::int64_t cond = 1;
        std::size_t gi = 0;
        for (const auto& b : d_->bases) {
            cond = checked_mul(cond, component_conductor(b, gi));
            gi += b.generators.size();
        }
        conductor_cache_.store(cond, std::memory_order_relaxed);
        return cond;
    }

    // Primitive means conductor == q; the principal character is excluded.
    bool is_primitive() const { return d_->q > 1 && conductor() == d_->q; }

    DirichletCharacter(const DirichletCharacter& o)
        : d_(o.d_), index_(o.index_), exps_(o.exps_) {
        conductor_cache_.store(o.conductor_cache_.load(std::memory_order_relaxed),
                               std::memory_order_relaxed);
    }
    DirichletCharacter& operator=(const DirichletCharacter& o) {
        d_ = o.d_;
        index_ = o.index_;
        exps_ = o.exps_;
        conductor_cache_.store(o.conductor_cache_.load(std::memory_order_relaxed),
                               std::memory_order_relaxed);
        return *this;
    }

  private:
    static std::int64_t mul_ord(std::int64_t e, std::int64_t k, std::int64_t ord, std::int64_t den) {
        const __int128 prod = static_cast<__int128>(e) * k;
        return static_cast<std::int64_t>(prod % ord) * (den / ord);
    }

    // Phase of the prime-power component at a residue of that prime power.
    std::int64_t component_phase(const UnitGroupBasis& b, std::size_t gi, std::int64_t residue) const {
        const std::int64_t v = b.dlog[static_cast<std::size_t>(residue)];
        std::int64_t acc = 0;
        if (b.generators.size() == 2) {
            const std::int64_t ord1 = b.generators[1].order;
            acc += mul_ord(exps_[gi], v / ord1, b.generators[0].order, d_->phase_den);
            acc += mul_ord(exps_[gi + 1], v % ord1, ord1, d_->phase_den);
        } else if (b.generators.size() == 1) {
            acc += mul_ord(exps_[gi], v, b.generators[0].order, d_->phase_den);
        }
        return acc % d_->phase_den;
    }

    std::int64_t component_conductor(const UnitGroupBasis& b, std::size_t gi) const {
        std::int64_t pb = 1;  // p^b
        for (int bexp = 0; bexp <= b.a; ++bexp) {
            bool trivial = true;
            for (std::int64_t u = 1; u < b.modulus && trivial; u += pb) {
                if (!b.is_unit(u)) continue;
                if (component_phase(b, gi, u) != 0) trivial = false;
            }
            if (trivial) return pb;
            pb *= b.p;
        }
        return b.modulus;  // unreachable: b = a is always trivial on {1}
    }

    std::shared_ptr<const detail::GroupData> d_;
    std::int64_t index_;
    std::vector<std::int64_t> exps_;  // one entry per generator, reduced mod its order
    mutable std::atomic<std::int64_t> conductor_cache_{0};
};

inline DirichletCharacter DirichletGroup::character(std::int64_t index) const {
    return DirichletCharacter(d_, index);
}

inline std::vector<DirichletCharacter> DirichletGroup::characters() const {
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(d_->phi));
    for (std::int64_t i = 0; i < d_->phi; ++i) out.emplace_back(d_, i);
    return out;
}

inline std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
    return DirichletGroup(q).characters();
}

// ---------------------------------------------------------------------------
// Postnikov decompositions
// ---------------------------------------------------------------------------

struct PostnikovLinear {
    std::int64_t Ltilde = 0;  // in [0, D1)
    std::int64_t B1 = 1;      // gcd(Ltilde, D1)
    bool verified = false;
};

struct PostnikovQuadratic {
    std::int64_t L0 = 0;  // in [0, C*D)
    std::int64_t L = 0;   // in [0, D)
    std::int64_t B = 1;   // gcd(L, D)
    bool verified = false;
};

struct PostnikovData {
    std::int64_t Ltilde = 0;
    std::int64_t B1 = 1;
    std::int64_t L0 = 0;
    std::int64_t L = 0;
    std::int64_t B = 1;
    bool verified_linear = false;
    bool verified_quadratic = false;
};

namespace detail {

// chi(1 + C1 x) phases for x in [0, D1), as raw numerators over the group den.
inline std::vector<std::int64_t> linear_orbit_phases(const DirichletCharacter& chi) {
    const auto& mp = chi.profile();
    std::vector<std::int64_t> out(static_cast<std::size_t>(mp.D1));
    for (std::int64_t x = 0; x < mp.D1; ++x) {
        std::int64_t num;
        const std::int64_t n = 1 + mp.C1 % mp.q * x % mp.q;  // 1 + C1 x, reduced
        if (!chi.eval_raw(n % mp.q, num))
            throw VerificationError("postnikov: 1 + C1 x not a unit");
        out[static_cast<std::size_t>(x)] = num;
    }
    return out;
}

inline bool phase_eq(std::int64_t num_a, std::int64_t den_a, std::int64_t num_b, std::int64_t den_b) {
    return static_cast<__int128>(num_a) * den_b == static_cast<__int128>(num_b) * den_a;
}

}  // namespace detail

inline PostnikovLinear postnikov_linear(const DirichletCharacter& chi) {
    const auto& mp = chi.profile();
    const std::int64_t den = chi.phase_denominator();
    const auto orbit = detail::linear_orbit_phases(chi);

    // chi(1 + C1) pins Ltilde/D1 mod 1.
    PostnikovLinear out;
    if (mp.D1 == 1) {
        out.Ltilde = 0;
    } else {
        const UnitPhase r(orbit[1], den);
        if (mp.D1 % r.den() != 0)
            throw VerificationError("postnikov_linear: phase denominator does not divide D1");
        out.Ltilde = r.num() * (mp.D1 / r.den());
    }
    for (std::int64_t x = 0; x < mp.D1; ++x) {
        const std::int64_t target = (static_cast<__int128>(out.Ltilde) * x) % mp.D1;
        if (!detail::phase_eq(orbit[static_cast<std::size_t>(x)], den, target, mp.D1))
            throw VerificationError("postnikov_linear: identity failed");
    }
    out.B1 = out.Ltilde == 0 ? mp.D1 : std::gcd(out.Ltilde, mp.D1);
    out.verified = true;
    return out;
}

namespace detail {

// chi(1 + C x) phases for x in [0, q).
inline std::vector<std::int64_t> quadratic_orbit_phases(const DirichletCharacter& chi) {
    const auto& mp = chi.profile();
    std::vector<std::int64_t> out(static_cast<std::size_t>(mp.q));
    std::int64_t n = 1;
    for (std::int64_t x = 0; x < mp.q; ++x) {
        std::int64_t num;
        if (!chi.eval_raw(n, num)) throw VerificationError("postnikov: 1 + C x not a unit");
        out[static_cast<std::size_t>(x)] = num;
        n += mp.C;
        if (n >= mp.q) n -= mp.q;
    }
    return out;
}

// target numerator over CD for the quadratic phase 2 L0 x/(CD) + L x^2/D.
inline std::int64_t quad_target(std::int64_t L0, std::int64_t L, std::int64_t C, std::int64_t CD,
                                std::int64_t x) {
    const __int128 v = (static_cast<__int128>(2) * L0 % CD) * x + (static_cast<__int128>(L) * C % CD) * (static_cast<__int128>(x) * x % CD);
    return static_cast<std::int64_t>(((v % CD) + CD) % CD);
}

inline bool quad_verify(const std::vector<std::int64_t>& orbit, std::int64_t den, std::int64_t L0,
                        std::int64_t L, std::int64_t C, std::int64_t CD) {
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(orbit.size()); ++x) {
        if (!phase_eq(orbit[static_cast<std::size_t>(x)], den, quad_target(L0, L, C, CD, x), CD))
            return false;
    }
    return true;
}

}  // namespace detail

// Exhaustive search over (L0 mod CD, L mod D); among all exhaustively verified
// pairs returns one minimizing B = gcd(L, D), ties broken by smallest L then
// smallest L0. The per-prime constructive pairs are CRT-combined as a fast
// path and cross-checked against the search.
inline PostnikovQuadratic postnikov_quadratic(const DirichletCharacter& chi) {
    const auto& mp = chi.profile();
    const std::int64_t den = chi.phase_denominator();
    const std::int64_t CD = checked_mul(mp.C, mp.D);
    const auto orbit = detail::quadratic_orbit_phases(chi);

    PostnikovQuadratic best;
    bool found = false;
    for (std::int64_t L0 = 0; L0 < CD; ++L0) {
        for (std::int64_t L = 0; L < mp.D; ++L) {
            // cheap pre-filter on x = 1, 2 before full verification
            if (mp.q >= 2 &&
                !detail::phase_eq(orbit[1], den, detail::quad_target(L0, L, mp.C, CD, 1), CD))
                continue;
            if (mp.q >= 3 &&
                !detail::phase_eq(orbit[2], den, detail::quad_target(L0, L, mp.C, CD, 2), CD))
                continue;
            if (!detail::quad_verify(orbit, den, L0, L, mp.C, CD)) continue;
            const std::int64_t B = L == 0 ? mp.D : std::gcd(L, mp.D);
            if (!found || B < best.B || (B == best.B && (L < best.L || (L == best.L && L0 < best.L0)))) {
                best = {L0, L, B, true};
                found = true;
            }
        }
    }
    if (!found) throw VerificationError("postnikov_quadratic: no valid (L0, L) pair");

    // Constructive fast path: per-prime pairs combined by
    // L0 = C^2 D sum L0_j/(C_j^2 D_j), L = C^2 D sum L_j/(C_j^2 D_j).
    if (mp.omega > 1) {
        const __int128 c2d = static_cast<__int128>(mp.C) * mp.C * mp.D;
        __int128 l0 = 0, l = 0;
        std::size_t gi = 0;
        for (const auto& b : chi.bases()) {
            DirichletGroup sub(b.modulus);
            std::int64_t sub_index = 0;
            for (std::size_t k = 0; k < b.generators.size(); ++k)
                sub_index = sub_index * b.generators[k].order + chi.exponents()[gi + k];
            gi += b.generators.size();
            const auto part = postnikov_quadratic(sub.character(sub_index));
            const auto& sub_mp = sub.profile();
            const __int128 scale = c2d / (static_cast<__int128>(sub_mp.C) * sub_mp.C * sub_mp.D);
            l0 += static_cast<__int128>(part.L0) * (scale % CD);
            l += static_cast<__int128>(part.L) * (scale % mp.D);
        }
        const std::int64_t L0c = static_cast<std::int64_t>(((l0 % CD) + CD) % CD);
        const std::int64_t Lc = static_cast<std::int64_t>(((l % mp.D) + mp.D) % mp.D);
        if (!detail::quad_verify(orbit, den, L0c, Lc, mp.C, CD))
            throw VerificationError("postnikov_quadratic: constructive pair failed cross-check");
    }
    return best;
}

inline PostnikovData postnikov_data(const DirichletCharacter& chi) {
    const auto lin = postnikov_linear(chi);
    const auto quad = postnikov_quadratic(chi);
    return {lin.Ltilde, lin.B1, quad.L0, quad.L, quad.B, lin.verified, quad.verified};
}

// ---------------------------------------------------------------------------
// Gauss sums
// ---------------------------------------------------------------------------

// G(chi, a) = sum over n mod q of chi(n) e^{2 pi i a n/q}, memoized per
// (chi, a) under a read-mostly map.
inline std::complex<double> gauss_sum(const DirichletCharacter& chi, std::int64_t a) {
    const std::int64_t q = chi.modulus();
    std::int64_t am = a % q;
    if (am < 0) am += q;

    static std::mutex memo_mu;
    static std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::complex<double>> memo;
    const std::tuple key{q, chi.index(), am};
    {
        std::lock_guard lock(memo_mu);
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
    }

    const long double twopi = 2.0L * std::numbers::pi_v<long double>;
    long double re = 0.0L, im = 0.0L;
    const std::int64_t den = chi.phase_denominator();
    for (std::int64_t n = 0; n < q; ++n) {
        std::int64_t num;
        if (!chi.eval_raw(n, num)) continue;
        const std::int64_t an = static_cast<std::int64_t>(static_cast<__int128>(am) * n % q);
        const long double frac = static_cast<long double>(num) / static_cast<long double>(den) +
                                 static_cast<long double>(an) / static_cast<long double>(q);
        const long double th = twopi * frac;
        re += std::cos(th);
        im += std::sin(th);
    }
    const std::complex<double> value{static_cast<double>(re), static_cast<double>(im)};
    std::lock_guard lock(memo_mu);
    if (memo.size() > 4096) memo.clear();
    memo.emplace(key, value);
    return value;
}

}  // namespace lchi

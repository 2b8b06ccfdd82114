#ifndef LACUNARY_RING_HPP
#define LACUNARY_RING_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "natural.hpp"

namespace lacunary
{

// Every randomized routine takes one of these explicitly.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound).
inline Int random_below(Rng& rng, const Int& bound)
{
    if (sgn(bound) <= 0)
        fail(ErrorKind::Precondition, "random_below needs a positive bound");
    const std::size_t bits = bit_length(bound);
    const std::size_t words = (bits + 63) / 64;
    // rejection sampling on the smallest enclosing power of two
    for (;;) {
        Int v = 0;
        for (std::size_t w = 0; w < words; ++w) {
            v <<= 64;
            v += Int(static_cast<unsigned long>(rng()));
        }
        const std::size_t excess = words * 64 - bits;
        if (excess > 0)
            v >>= excess;
        if (v < bound)
            return v;
    }
}

// Uniform integer in [lo, hi].
inline Int random_range(Rng& rng, const Int& lo, const Int& hi)
{
    return lo + random_below(rng, Int(hi - lo + 1));
}

namespace detail
{

inline bool miller_rabin_round(const Int& n, const Int& d, std::size_t s, const Int& a)
{
    const Int nm1 = n - 1;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (std::size_t r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

} // namespace detail

//
// Miller-Rabin primality test.
//
// Deterministic below 2^64 using the first twelve primes as witnesses (a
// witness set known to be exact for that range). Larger inputs get 40 rounds
// with random bases drawn from rng, or from a fixed-seed generator when none
// is supplied so results stay reproducible.
//
inline bool is_prime(const Int& n, Rng* rng = nullptr)
{
    static constexpr std::array<unsigned, 12> small_primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2)
        return false;
    for (unsigned q : small_primes) {
        if (n == q)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), q))
            return false;
    }
    Int d = n - 1;
    std::size_t s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    if (bit_length(n) <= 64) {
        for (unsigned q : small_primes)
            if (!detail::miller_rabin_round(n, d, s, Int(q)))
                return false;
        return true;
    }
    Rng fallback(0x5eed5eedULL);
    Rng& gen = rng ? *rng : fallback;
    for (int round = 0; round < 40; ++round) {
        const Int a = random_range(gen, Int(2), Int(n - 2));
        if (!detail::miller_rabin_round(n, d, s, a))
            return false;
    }
    return true;
}

// Random prime with exactly `bits` bits.
inline Int random_prime(Rng& rng, std::size_t bits)
{
    if (bits < 2)
        fail(ErrorKind::Precondition, "random_prime needs at least 2 bits");
    for (;;) {
        Int lo;
        mpz_setbit(lo.get_mpz_t(), bits - 1);
        Int c = lo + random_below(rng, lo);
        if (bits > 2)
            mpz_setbit(c.get_mpz_t(), 0);
        if (is_prime(c, &rng))
            return c;
    }
}

//
// Coefficient ring: the integers or a prime field Z/pZ.
//
// Prime field elements are always kept as canonical representatives in
// [0, p). Integer elements are unrestricted.
//
class RingSpec
{
public:
    enum class Kind { Integers, PrimeField };

    RingSpec() = default;

    static RingSpec integers() { return RingSpec(); }

    static RingSpec prime_field(const Int& p)
    {
        if (!is_prime(p))
            fail(ErrorKind::Precondition, "modulus " + p.get_str() + " is not prime");
        RingSpec r;
        r.kind_ = Kind::PrimeField;
        r.modulus_ = p;
        return r;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_field() const noexcept { return kind_ == Kind::PrimeField; }
    bool is_integers() const noexcept { return kind_ == Kind::Integers; }

    // Zero for the integers.
    const Int& modulus() const noexcept { return modulus_; }

    std::string to_string() const { return is_field() ? "Zp " + modulus_.get_str() : "Z"; }

    friend bool operator==(const RingSpec& a, const RingSpec& b)
    {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }

    Int reduce(const Int& a) const
    {
        if (!is_field())
            return a;
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
        return r;
    }

    void reduce_in_place(Int& a) const
    {
        if (is_field())
            mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
    }

    Int add(const Int& a, const Int& b) const
    {
        Int r = a + b;
        if (is_field() && r >= modulus_)
            r -= modulus_;
        return r;
    }

    Int sub(const Int& a, const Int& b) const
    {
        Int r = a - b;
        if (is_field() && sgn(r) < 0)
            r += modulus_;
        return r;
    }

    Int neg(const Int& a) const
    {
        if (is_field())
            return sgn(a) == 0 ? Int(0) : Int(modulus_ - a);
        return -a;
    }

    Int mul(const Int& a, const Int& b) const
    {
        Int r = a * b;
        reduce_in_place(r);
        return r;
    }

    // Field inverse; over the integers only the units +-1 are invertible.
    Int inv(const Int& a) const
    {
        if (sgn(a) == 0)
            fail(ErrorKind::DivisionByZero, "inverse of zero");
        if (!is_field()) {
            if (a == 1 || a == -1)
                return a;
            fail(ErrorKind::InexactDivision, a.get_str() + " is not a unit in Z");
        }
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t()) == 0)
            fail(ErrorKind::DivisionByZero, "inverse of zero");
        return r;
    }

    // Exact quotient a / b; throws InexactDivision over Z when b does not divide a.
    Int divexact(const Int& a, const Int& b) const
    {
        if (sgn(b) == 0)
            fail(ErrorKind::DivisionByZero, "division by zero coefficient");
        if (is_field())
            return mul(a, inv(b));
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
            fail(ErrorKind::InexactDivision, b.get_str() + " does not divide " + a.get_str());
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }

    bool divides(const Int& b, const Int& a) const
    {
        if (sgn(b) == 0)
            return sgn(a) == 0;
        return is_field() || mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
    }

private:
    Kind kind_ = Kind::Integers;
    Int modulus_ = 0;
};

inline void require_field(const RingSpec& ring, const char* what)
{
    if (!ring.is_field())
        fail(ErrorKind::UnsupportedRing, std::string(what) + " requires a prime field");
}

//
// a^e in Z/pZ. For a coprime to p the exponent is first reduced modulo p-1,
// so the cost depends on log p and not on the size of e. a = 0 gives 0 for
// every positive exponent.
//
inline Int pow_mod(const Int& a, const Natural& e, const RingSpec& ring)
{
    require_field(ring, "pow_mod");
    const Int& p = ring.modulus();
    const Int base = ring.reduce(a);
    if (e.is_zero())
        return Int(1);
    if (sgn(base) == 0)
        return Int(0);
    Int r;
    if (e.is_small()) {
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), e.word(), p.get_mpz_t());
        return r;
    }
    Int reduced;
    const Int pm1 = p - 1;
    mpz_fdiv_r(reduced.get_mpz_t(), e.to_int().get_mpz_t(), pm1.get_mpz_t());
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), reduced.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline Int pow_mod(const Int& a, const Int& e, const RingSpec& ring)
{
    return pow_mod(a, Natural(e), ring);
}

//
// Prime p = c * 2^k + 1 (c odd) together with an element omega of
// multiplicative order exactly 2^k.
//
struct SmoothPrimeContext {
    Int p;
    std::size_t k = 0;
    Int c;
    Int omega;

    RingSpec field() const { return RingSpec::prime_field(p); }
    Natural subgroup_order() const { return Natural::pow2(k); }
};

namespace detail
{

// Raises random elements to the c-th power until one has order exactly 2^k.
inline Int find_subgroup_generator(const Int& p, std::size_t k, const Int& c, Rng& rng)
{
    if (k == 0)
        return Int(1);
    Int half_order = 1;
    mpz_mul_2exp(half_order.get_mpz_t(), half_order.get_mpz_t(), k - 1);
    const Int pm1 = p - 1;
    for (int attempt = 0; attempt < 4096; ++attempt) {
        const Int x = random_range(rng, Int(1), pm1);
        Int w, t;
        mpz_powm(w.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
        mpz_powm(t.get_mpz_t(), w.get_mpz_t(), half_order.get_mpz_t(), p.get_mpz_t());
        if (t != 1)
            return w;
    }
    fail(ErrorKind::ResourceLimit, "no element of order 2^k found");
}

} // namespace detail

//
// Search for a smooth prime with 2^k >= min_subgroup and p >= min_modulus.
//
// k is the smallest exponent with 2^k >= min_subgroup. Odd cofactors c are
// sampled at random from a window [w, 2w) that doubles after a fixed number of
// misses, starting from the smallest w that satisfies the modulus bound.
//
inline SmoothPrimeContext find_smooth_prime(const Natural& min_subgroup, const Int& min_modulus, Rng& rng,
                                            std::size_t attempt_budget = 1u << 20)
{
    if (min_subgroup < Natural(2))
        fail(ErrorKind::Precondition, "min_subgroup must be at least 2");
    std::size_t k = min_subgroup.bit_length();
    if (Natural::pow2(k - 1) == min_subgroup)
        --k;
    Int two_k = 0;
    mpz_setbit(two_k.get_mpz_t(), k);

    Int window = 1;
    if (min_modulus > two_k + 1) {
        mpz_cdiv_q(window.get_mpz_t(), Int(min_modulus - 1).get_mpz_t(), two_k.get_mpz_t());
        if (window < 1)
            window = 1;
    }
    const std::size_t per_window = 16 + 4 * (k + bit_length(window));
    std::size_t attempts = 0;
    while (attempts < attempt_budget) {
        // odd c in [window, 2*window); tiny windows are scanned exhaustively
        const bool exhaustive = window <= per_window;
        const std::size_t tries = exhaustive ? window.get_ui() : per_window;
        for (std::size_t i = 0; i < tries && attempts < attempt_budget; ++i, ++attempts) {
            Int c = exhaustive ? Int(window + i) : Int(window + random_below(rng, window));
            if (mpz_even_p(c.get_mpz_t())) {
                if (exhaustive)
                    continue;
                mpz_setbit(c.get_mpz_t(), 0);
            }
            const Int p = c * two_k + 1;
            if (p < min_modulus)
                continue;
            if (is_prime(p, &rng)) {
                SmoothPrimeContext ctx;
                ctx.p = p;
                ctx.k = k;
                ctx.c = c;
                ctx.omega = detail::find_subgroup_generator(p, k, c, rng);
                return ctx;
            }
        }
        window *= 2;
    }
    fail(ErrorKind::ResourceLimit, "no smooth prime found within the attempt budget");
}

// Context for a given prime, using its full two-power subgroup.
inline SmoothPrimeContext smooth_context_for_prime(const Int& p, Rng& rng)
{
    if (!is_prime(p, &rng) || p == 2)
        fail(ErrorKind::Precondition, "smooth context needs an odd prime");
    SmoothPrimeContext ctx;
    ctx.p = p;
    Int pm1 = p - 1;
    ctx.k = mpz_scan1(pm1.get_mpz_t(), 0);
    ctx.c = pm1 >> ctx.k;
    ctx.omega = detail::find_subgroup_generator(p, ctx.k, ctx.c, rng);
    return ctx;
}

//
// Discrete logarithm of y to base omega in the order-2^k subgroup, one bit at
// a time (Pohlig-Hellman with all prime factors equal to 2). Each bit costs
// one exponentiation by a power of two, so O(k^2) multiplications total.
//
inline Natural discrete_log_pow2(const SmoothPrimeContext& ctx, const Int& y)
{
    const RingSpec field = ctx.field();
    const Int& p = ctx.p;
    Int yr = field.reduce(y);
    if (sgn(yr) == 0)
        fail(ErrorKind::NotInSubgroup, "zero is not in the subgroup");
    Int check = yr;
    for (std::size_t i = 0; i < ctx.k; ++i)
        check = check * check % p;
    if (check != 1)
        fail(ErrorKind::NotInSubgroup, y.get_str() + " is not in the order-2^k subgroup");

    // inv_pows[i] = omega^(-2^i)
    std::vector<Int> inv_pows(ctx.k);
    if (ctx.k > 0) {
        inv_pows[0] = field.inv(ctx.omega);
        for (std::size_t i = 1; i < ctx.k; ++i)
            inv_pows[i] = inv_pows[i - 1] * inv_pows[i - 1] % p;
    }
    Int e = 0;
    Int cur = yr; // y * omega^(-e) for the bits found so far
    for (std::size_t i = 0; i < ctx.k; ++i) {
        // cur has order dividing 2^(k-i); its 2^(k-1-i) power is +-1
        Int t = cur;
        for (std::size_t j = 0; j + 1 + i < ctx.k; ++j)
            t = t * t % p;
        if (t != 1) {
            mpz_setbit(e.get_mpz_t(), i);
            cur = cur * inv_pows[i] % p;
        }
    }
    return Natural(e);
}

// True iff a is a d-th power residue mod p; requires d | p-1 and a != 0.
inline bool power_residue(const Int& p, const Int& a, const Int& d)
{
    const Int pm1 = p - 1;
    if (sgn(d) <= 0 || !mpz_divisible_p(pm1.get_mpz_t(), d.get_mpz_t()))
        fail(ErrorKind::Precondition, d.get_str() + " does not divide p-1");
    Int ar;
    mpz_fdiv_r(ar.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (sgn(ar) == 0)
        fail(ErrorKind::Precondition, "power residue test of zero");
    Int e, r;
    mpz_divexact(e.get_mpz_t(), pm1.get_mpz_t(), d.get_mpz_t());
    mpz_powm(r.get_mpz_t(), ar.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1;
}

inline bool qth_power_residue(const Int& p, const Int& a, const Int& q)
{
    return power_residue(p, a, q);
}

} // namespace lacunary

#endif

#ifndef LACUNARY_FACTOR_HPP
#define LACUNARY_FACTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

struct GapBlock {
    SparsePoly poly;
    Natural shift;
};

// f = sum of block.poly * x^block.shift; every block has a term at exponent 0.
struct GapSplit {
    std::vector<GapBlock> blocks;
    Natural gamma;
};

//
// Splits f wherever two consecutive exponents are at least gamma apart. Each
// block is stored with its lowest exponent factored out.
//
inline GapSplit gap_split(const SparsePoly& f, const Natural& gamma)
{
    f.require_univariate("gap_split");
    if (gamma < Natural(1))
        fail(ErrorKind::Precondition, "gap threshold must be at least 1");
    GapSplit out{{}, gamma};
    std::size_t start = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const bool last = i + 1 == f.size();
        if (last || f.exponent(i + 1) - f.exponent(i) >= gamma) {
            GapBlock b{SparsePoly(f.ring(), 1), f.exponent(start)};
            for (std::size_t j = start; j <= i; ++j)
                b.poly.push_back(f.coeff(j), f.exponent(j) - b.shift);
            out.blocks.push_back(std::move(b));
            start = i + 1;
        }
    }
    return out;
}

inline SparsePoly reassemble(const GapSplit& s, const RingSpec& ring)
{
    SparsePoly out(ring, 1);
    for (const GapBlock& b : s.blocks)
        for (std::size_t i = 0; i < b.poly.size(); ++i)
            out.push_back(b.poly.coeff(i), b.poly.exponent(i) + b.shift);
    return out;
}

// max(64, bit length of the height).
inline Natural default_gap(const SparsePoly& f)
{
    const std::size_t h = f.ring().is_integers() ? bit_length(height(f)) : bit_length(f.ring().modulus());
    return Natural(std::max<std::size_t>(64, h));
}

// (f(1), f(-1)) exactly.
inline std::pair<Int, Int> eval_at_pm_one(const SparsePoly& f)
{
    f.require_univariate("eval_at_pm_one");
    Int plus = 0, minus = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        plus += f.coeff(i);
        if (f.exponent(i).is_odd())
            minus -= f.coeff(i);
        else
            minus += f.coeff(i);
    }
    return {f.ring().reduce(plus), f.ring().reduce(minus)};
}

namespace detail
{

inline Int pollard_brent(const Int& n, Rng& rng)
{
    if (mpz_even_p(n.get_mpz_t()))
        return Int(2);
    for (;;) {
        const Int c = random_range(rng, Int(1), Int(n - 1));
        Int y = random_range(rng, Int(0), Int(n - 1));
        Int g = 1, q = 1, x, ys;
        const std::size_t m = 128;
        std::size_t r = 1;
        auto f = [&](const Int& v) { return Int((v * v + c) % n); };
        while (g == 1) {
            x = y;
            for (std::size_t i = 0; i < r; ++i)
                y = f(y);
            for (std::size_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(Int(x - y)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                mpz_gcd(g.get_mpz_t(), Int(abs(Int(x - ys))).get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(const Int& n, Rng& rng, std::map<Int, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n, &rng)) {
        ++out[n];
        return;
    }
    const Int d = pollard_brent(n, rng);
    factor_into(d, rng, out);
    factor_into(Int(n / d), rng, out);
}

} // namespace detail

// Prime factorization of |n| > 0: trial division, then Pollard-Brent.
inline std::map<Int, unsigned> factor_integer(const Int& n, Rng& rng)
{
    Int m = abs(n);
    if (sgn(m) == 0)
        fail(ErrorKind::Precondition, "cannot factor zero");
    std::map<Int, unsigned> out;
    for (unsigned long d = 2; d < 10000 && m > 1; d += (d == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            ++out[Int(d)];
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        }
    }
    detail::factor_into(m, rng, out);
    return out;
}

inline std::size_t divisor_count(const std::map<Int, unsigned>& fac)
{
    std::size_t c = 1;
    for (const auto& [p, e] : fac)
        c *= e + 1;
    return c;
}

// Positive divisors in increasing order.
inline std::vector<Int> divisors(const std::map<Int, unsigned>& fac)
{
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : fac) {
        const std::size_t base = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Root a/b of f, i.e. (b x - a) divides f; gcd(a, b) = 1 and b > 0.
struct RationalRoot {
    Int a;
    Int b;
    friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

struct LinearFactorOptions {
    std::size_t candidate_budget = 10000;
    std::size_t screen_primes = 3;
    DividesOptions divides{};
};

//
// All rational roots of f over Z. Candidates a/b have a dividing the lowest
// and b the highest coefficient; they are screened modulo random primes and
// every survivor is confirmed exactly by divisibility by b x - a.
//
inline std::vector<RationalRoot> linear_rational_factors(const SparsePoly& f, Rng& rng,
                                                         const LinearFactorOptions& opt = {})
{
    f.require_univariate("linear_rational_factors");
    if (!f.ring().is_integers())
        fail(ErrorKind::UnsupportedRing, "linear_rational_factors works over Z");
    if (f.is_zero())
        fail(ErrorKind::Precondition, "the zero polynomial has every root");
    std::vector<RationalRoot> roots;
    if (!f.exponent(0).is_zero())
        roots.push_back({Int(0), Int(1)});
    if (f.size() == 1)
        return roots;

    const SparsePoly pp = primitive_part(f);
    const auto tfac = factor_integer(pp.coeff(0), rng);
    const auto lfac = factor_integer(pp.coeff(pp.size() - 1), rng);
    const std::size_t count = 2 * divisor_count(tfac) * divisor_count(lfac);
    if (count > opt.candidate_budget)
        fail(ErrorKind::CandidateBudget, std::to_string(count) + " rational-root candidates exceed the budget of " +
                                             std::to_string(opt.candidate_budget));
    const auto [at_one, at_minus_one] = eval_at_pm_one(pp);
    std::vector<Int> primes;
    for (std::size_t i = 0; i < opt.screen_primes; ++i)
        primes.push_back(random_prime(rng, 62));

    for (const Int& b : divisors(lfac)) {
        for (const Int& aa : divisors(tfac)) {
            Int g;
            mpz_gcd(g.get_mpz_t(), aa.get_mpz_t(), b.get_mpz_t());
            if (g != 1)
                continue;
            for (const Int& a : {aa, Int(-aa)}) {
                if (b == 1 && aa == 1) {
                    if (sgn(a > 0 ? at_one : at_minus_one) == 0)
                        roots.push_back({a, b});
                    continue;
                }
                bool alive = true;
                for (const Int& p : primes) {
                    if (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
                        continue;
                    const RingSpec fp = RingSpec::prime_field(p);
                    const Int r = fp.mul(a, fp.inv(fp.reduce(b)));
                    if (sgn(eval(pp, std::span<const Int>(&r, 1), fp)) != 0) {
                        alive = false;
                        break;
                    }
                }
                if (!alive)
                    continue;
                const SparsePoly lin = SparsePoly::univariate({{b, Natural(1)}, {Int(-a), Natural(0)}}, f.ring());
                if (divides(pp, lin, opt.divides))
                    roots.push_back({a, b});
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RationalRoot& x, const RationalRoot& y) {
        return cmp(Int(x.a * y.b), Int(y.a * x.b)) < 0;
    });
    return roots;
}

struct PowerWitness {
    Int prime;
    Int point;
};

struct PowerReport {
    Natural k{1};
    // Heuristic bound on the probability that k is too large.
    double error_bound = 0.0;
    std::vector<PowerWitness> witnesses;
    Int content = 1;
};

struct PowerOptions {
    double confidence = 1e-9; // target error probability
    // Largest prime exponent tried; 0 selects 64 * (1 + log2 log2 max(deg f, 4)).
    std::size_t prime_bound = 0;
};

namespace detail
{

// Is c a perfect n-th power in Z (negative allowed only for odd n)?
inline bool is_perfect_power_of(const Int& c, unsigned long n)
{
    if (sgn(c) < 0 && n % 2 == 0)
        return false;
    Int r;
    return mpz_root(r.get_mpz_t(), Int(abs(c)).get_mpz_t(), n) != 0;
}

inline std::vector<unsigned long> primes_up_to(unsigned long bound)
{
    std::vector<bool> sieve(bound + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= bound; ++i) {
        if (!sieve[i])
            continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i)
            sieve[j] = false;
    }
    return out;
}

// Random prime p = m * d + 1 of roughly 62 bits.
inline Int prime_one_mod(const Int& d, Rng& rng)
{
    const std::size_t db = bit_length(d);
    const std::size_t mb = db < 56 ? 62 - db : 8;
    for (;;) {
        Int m = random_below(rng, Int(Int(1) << mb)) + (Int(1) << mb);
        const Int p = m * d + 1;
        if (is_prime(p, &rng))
            return p;
    }
}

} // namespace detail

//
// Largest k for which f (content removed) appears to be a k-th power.
//
// k must divide both the lowest exponent and the degree span. For each small
// prime q dividing their gcd, the leading and trailing coefficients must be
// exact q^m-th powers, and f(a) must be a q^m-th power residue modulo random
// primes p = 1 mod q^m. A non-power passes one residue test with probability
// about 1/q, so the number of trials follows from the confidence target.
//
inline PowerReport detect_perfect_power(const SparsePoly& f, Rng& rng, const PowerOptions& opt = {})
{
    f.require_univariate("detect_perfect_power");
    if (!f.ring().is_integers())
        fail(ErrorKind::UnsupportedRing, "detect_perfect_power works over Z");
    if (f.is_zero() || f.is_constant())
        fail(ErrorKind::Precondition, "perfect power detection needs a nonconstant polynomial");
    PowerReport rep;
    rep.content = content(f);
    SparsePoly h(f.ring(), 1);
    h.reserve(f.size());
    const Natural& emin = f.exponent(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int c;
        mpz_divexact(c.get_mpz_t(), f.coeff(i).get_mpz_t(), rep.content.get_mpz_t());
        h.push_back(std::move(c), f.exponent(i) - emin);
    }
    const Natural span = *h.degree();
    const Natural g = gcd(emin, span);
    const Int& lc = h.coeff(h.size() - 1);
    const Int& tc = h.coeff(0);

    std::size_t qbound = opt.prime_bound;
    if (qbound == 0) {
        const Natural& deg = *f.degree();
        const double log2deg = deg.is_small() ? std::log2(std::max(4.0, static_cast<double>(deg.word())))
                                              : static_cast<double>(deg.bit_length());
        qbound = static_cast<std::size_t>(64.0 * (1.0 + std::log2(log2deg)));
    }
    const double target = std::clamp(opt.confidence, 1e-300, 0.5);

    for (unsigned long q : detail::primes_up_to(qbound)) {
        if (!(g % Natural(q)).is_zero())
            continue;
        // largest m with q^m | g
        std::size_t m = 0;
        Natural rest = g;
        Int qm = 1;
        while ((rest % Natural(q)).is_zero()) {
            rest = rest / Natural(q);
            ++m;
        }
        // exact screen on the end coefficients decides the highest level worth testing
        std::size_t level = 0;
        for (std::size_t l = 1; l <= m; ++l) {
            mpz_ui_pow_ui(qm.get_mpz_t(), q, l);
            if (!qm.fits_ulong_p() || !detail::is_perfect_power_of(lc, qm.get_ui()) ||
                !detail::is_perfect_power_of(tc, qm.get_ui()))
                break;
            level = l;
        }
        if (level == 0)
            continue;
        const std::size_t trials =
            static_cast<std::size_t>(std::ceil(std::log(1.0 / target) / std::log(static_cast<double>(q))));
        Int top;
        mpz_ui_pow_ui(top.get_mpz_t(), q, level);
        std::size_t passed = level;
        for (std::size_t trial = 0; trial < trials && passed > 0; ++trial) {
            const Int p = detail::prime_one_mod(top, rng);
            const RingSpec fp = RingSpec::prime_field(p);
            Int a, v;
            do {
                a = random_range(rng, Int(1), Int(p - 1));
                v = eval(h, std::span<const Int>(&a, 1), fp);
            } while (sgn(v) == 0);
            rep.witnesses.push_back({p, a});
            std::size_t ok = 0;
            Int d = 1;
            for (std::size_t l = 1; l <= passed; ++l) {
                d *= q;
                if (!power_residue(p, v, d))
                    break;
                ok = l;
            }
            passed = ok;
        }
        if (passed > 0) {
            rep.k *= pow(Natural(q), passed);
            rep.error_bound += std::pow(1.0 / static_cast<double>(q), static_cast<double>(trials));
        }
    }
    return rep;
}

// Deterministic certificate: pow(g, k) == f.
inline bool certify_power(const SparsePoly& f, const SparsePoly& g, const Natural& k,
                          std::size_t term_budget = std::size_t{1} << 22)
{
    require_compatible(f, g);
    if (k.is_zero())
        fail(ErrorKind::Precondition, "power must be at least 1");
    if (!f.is_zero() && !g.is_zero() && g.size() > 1) {
        // cheap degree check before powering
        if (!(*g.degree() * k == *f.degree()))
            return false;
    }
    return pow(g, k, term_budget) == f;
}

} // namespace lacunary

#endif

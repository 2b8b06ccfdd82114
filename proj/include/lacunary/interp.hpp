#ifndef LACUNARY_INTERP_HPP
#define LACUNARY_INTERP_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "kronecker.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

// Black-box evaluator: value at `point` reduced into the prime field `field`.
using Evaluator = std::function<Int(std::span<const Int> point, const RingSpec& field)>;

//
// Black box with a probe counter. An oracle over Z answers modulo any prime
// it is asked about; an oracle over Zp only in its own field.
//
class ProbeCountingOracle
{
public:
    ProbeCountingOracle(RingSpec ring, std::size_t nvars, Evaluator fn)
        : ring_(std::move(ring)), nvars_(nvars), fn_(std::move(fn))
    {
        if (nvars_ == 0)
            fail(ErrorKind::Arity, "oracle needs at least one variable");
    }

    static ProbeCountingOracle from_reference(SparsePoly f)
    {
        const RingSpec ring = f.ring();
        const std::size_t n = f.nvars();
        return ProbeCountingOracle(ring, n, [f = std::move(f)](std::span<const Int> pt, const RingSpec& field) {
            return eval(f, pt, field);
        });
    }

    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t probes() const noexcept { return probes_; }
    void reset_probes() noexcept { probes_ = 0; }

    Int evaluate(std::span<const Int> point, const RingSpec& field)
    {
        if (point.size() != nvars_)
            fail(ErrorKind::Arity, "oracle point has the wrong number of coordinates");
        require_field(field, "oracle evaluation");
        if (ring_.is_field() && !(ring_ == field))
            fail(ErrorKind::RingMismatch, "oracle over " + ring_.to_string() + " asked for values in " + field.to_string());
        ++probes_;
        return field.reduce(fn_(point, field));
    }

    Int evaluate(const Int& x, const RingSpec& field) { return evaluate(std::span<const Int>(&x, 1), field); }

private:
    RingSpec ring_;
    std::size_t nvars_;
    Evaluator fn_;
    std::size_t probes_ = 0;
};

struct InterpConfig {
    std::size_t T = 1;       // bound on the number of terms
    Natural D{1};            // exponents (per variable) are below D
    std::optional<Int> H;    // height bound, integers only
    bool early_termination = false;
    std::size_t lambda = 2;  // early termination waits for 2*lambda quiet values
    std::size_t verify_trials = 0;
    std::uint64_t seed = 0;
    std::size_t min_prime_bits = 62;
    std::size_t root_retries = 256;
};

struct RecurrenceMinPoly {
    DensePoly lambda;
};

//
// Incremental Berlekamp-Massey over a prime field.
//
// Maintains the connection polynomial C (C_0 = 1) of the shortest linear
// recurrence generating the values pushed so far.
//
class BerlekampMassey
{
public:
    explicit BerlekampMassey(RingSpec field) : field_(std::move(field)), c_{Int(1)}, b_{Int(1)}
    {
        require_field(field_, "berlekamp_massey");
    }

    // Appends a value; returns true if the recurrence had to change.
    bool push(const Int& value)
    {
        const Int& p = field_.modulus();
        seq_.push_back(field_.reduce(value));
        const std::size_t n = seq_.size() - 1;
        Int d = seq_[n];
        for (std::size_t i = 1; i <= len_ && i < c_.size(); ++i)
            mpz_addmul(d.get_mpz_t(), c_[i].get_mpz_t(), seq_[n - i].get_mpz_t());
        d %= p;
        if (sgn(d) == 0) {
            ++shift_;
            return false;
        }
        const Int coef = d * field_.inv(bdisc_) % p;
        std::vector<Int> next = c_;
        if (next.size() < b_.size() + shift_)
            next.resize(b_.size() + shift_, Int(0));
        for (std::size_t i = 0; i < b_.size(); ++i) {
            next[i + shift_] -= coef * b_[i];
            field_.reduce_in_place(next[i + shift_]);
        }
        if (2 * len_ <= n) {
            b_ = std::move(c_);
            len_ = n + 1 - len_;
            bdisc_ = d;
            shift_ = 1;
        } else {
            ++shift_;
        }
        c_ = std::move(next);
        return true;
    }

    std::size_t length() const noexcept { return len_; }
    std::size_t size() const noexcept { return seq_.size(); }

    // Lambda(z) = z^L C(1/z), monic of degree L.
    RecurrenceMinPoly min_poly() const
    {
        std::vector<Int> lam(len_ + 1, Int(0));
        for (std::size_t j = 0; j <= len_; ++j) {
            const std::size_t i = len_ - j;
            if (i < c_.size())
                lam[j] = c_[i];
        }
        return {DensePoly(field_, std::move(lam))};
    }

private:
    RingSpec field_;
    std::vector<Int> seq_;
    std::vector<Int> c_, b_;
    Int bdisc_ = 1;
    std::size_t len_ = 0;
    std::size_t shift_ = 1;
};

inline RecurrenceMinPoly berlekamp_massey(std::span<const Int> seq, const RingSpec& field)
{
    BerlekampMassey bm(field);
    for (const Int& v : seq)
        bm.push(v);
    return bm.min_poly();
}

namespace detail
{

inline void split_roots(const DensePoly& g, const RingSpec& field, Rng& rng, std::size_t retries, std::vector<Int>& out)
{
    const std::size_t deg = *g.degree();
    if (deg == 0)
        return;
    if (deg == 1) {
        out.push_back(field.neg(field.mul(g[0], field.inv(g[1]))));
        return;
    }
    const Int& p = field.modulus();
    const Natural half(Int((p - 1) / 2));
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        const Int delta = random_below(rng, p);
        const DensePoly shifted(field, {delta, Int(1)});
        DensePoly h = dense::powmod(shifted, half, g);
        h = dense::sub(h, DensePoly::constant(field, Int(1)));
        const DensePoly d = dense::gcd(g, h);
        const std::size_t dd = d.degree().value_or(0);
        if (dd > 0 && dd < deg) {
            split_roots(d, field, rng, retries, out);
            split_roots(dense::divrem(g, d).first, field, rng, retries, out);
            return;
        }
    }
    fail(ErrorKind::NonSplit, "random splitting did not separate the roots");
}

} // namespace detail

//
// All roots of Lambda, which must divide z^(2^k) - 1. That product has 2^k
// distinct roots in the subgroup, so the check guarantees a complete set of
// simple roots; they are then separated by gcds with (z + delta)^((p-1)/2) - 1.
//
inline std::vector<Int> find_roots_subgroup(const RecurrenceMinPoly& rec, const SmoothPrimeContext& ctx, Rng& rng,
                                            std::size_t retries = 256)
{
    const RingSpec field = ctx.field();
    const DensePoly lam = dense::monic(rec.lambda);
    if (!(lam.ring() == field))
        fail(ErrorKind::RingMismatch, "recurrence polynomial over a different field");
    if (lam.is_zero())
        fail(ErrorKind::NonSplit, "zero recurrence polynomial");
    std::vector<Int> roots;
    if (*lam.degree() == 0)
        return roots;
    if (sgn(lam[0]) == 0)
        fail(ErrorKind::NonSplit, "recurrence polynomial has the root 0");
    const DensePoly cycle = dense::powmod(DensePoly::x(field), ctx.subgroup_order(), lam);
    if (!(cycle == DensePoly::constant(field, Int(1))))
        fail(ErrorKind::NonSplit, "recurrence polynomial does not divide z^(2^k) - 1");
    detail::split_roots(lam, field, rng, retries, roots);
    return roots;
}

//
// Coefficients c with sum_i c_i r_i^j = v_j for j < t, via the master
// polynomial M = prod (z - r_i): the quotient q_i = M / (z - r_i) dotted with
// v gives c_i * q_i(r_i).
//
inline std::vector<Int> solve_transposed_vandermonde(std::span<const Int> roots, std::span<const Int> values,
                                                     const RingSpec& field)
{
    require_field(field, "solve_transposed_vandermonde");
    const std::size_t t = roots.size();
    if (values.size() < t)
        fail(ErrorKind::Precondition, "need as many values as roots");
    std::vector<Int> r(t);
    for (std::size_t i = 0; i < t; ++i)
        r[i] = field.reduce(roots[i]);
    {
        std::vector<Int> sorted = r;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(ErrorKind::DuplicateRoot, "Vandermonde nodes are not distinct");
    }
    const Int& p = field.modulus();
    // M(z), coefficients low to high, length t + 1
    std::vector<Int> m{Int(1)};
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<Int> next(m.size() + 1, Int(0));
        for (std::size_t j = 0; j < m.size(); ++j) {
            next[j + 1] += m[j];
            next[j] -= r[i] * m[j];
        }
        for (Int& v : next)
            field.reduce_in_place(v);
        m = std::move(next);
    }
    std::vector<Int> c(t);
    std::vector<Int> q(t);
    for (std::size_t i = 0; i < t; ++i) {
        // synthetic division of M by (z - r_i)
        // q_(t-1) = m_t, q_j = m_(j+1) + r_i q_(j+1)
        Int carry = 0;
        for (std::size_t j = t; j-- > 0;) {
            carry = (m[j + 1] + carry * r[i]) % p;
            q[j] = carry;
        }
        Int num = 0, den = 0;
        for (std::size_t j = t; j-- > 0;) {
            mpz_addmul(num.get_mpz_t(), q[j].get_mpz_t(), values[j].get_mpz_t());
            den = (den * r[i] + q[j]) % p;
        }
        c[i] = field.reduce(num) * field.inv(field.reduce(den)) % p;
    }
    return c;
}

namespace detail
{

struct SupportResult {
    std::vector<Natural> exponents;
    std::vector<Int> coeffs; // modulo the smooth prime
};

//
// Prony pipeline modulo the smooth prime of ctx: 2T values at powers of omega
// (fewer with early termination), recurrence, roots, discrete logs, and the
// Vandermonde solve.
//
inline SupportResult prony_support(ProbeCountingOracle& bb, const SmoothPrimeContext& ctx, const InterpConfig& cfg,
                                   Rng& rng)
{
    if (cfg.T == 0)
        fail(ErrorKind::Precondition, "term bound T must be at least 1");
    if (cfg.D < Natural(1))
        fail(ErrorKind::Precondition, "degree bound D must be at least 1");
    if (ctx.subgroup_order() < cfg.D)
        fail(ErrorKind::Precondition, "smooth prime subgroup 2^" + std::to_string(ctx.k) + " is smaller than D = " +
                                          cfg.D.to_string());
    const RingSpec field = ctx.field();
    const Int& p = ctx.p;
    BerlekampMassey bm(field);
    std::vector<Int> seq;
    const std::size_t cap = 2 * cfg.T;
    std::size_t quiet = 0;
    Int point = 1;
    while (seq.size() < cap) {
        seq.push_back(bb.evaluate(point, field));
        point = point * ctx.omega % p;
        quiet = bm.push(seq.back()) ? 0 : quiet + 1;
        if (cfg.early_termination) {
            const std::size_t n = seq.size();
            const std::size_t window = 2 * cfg.lambda;
            if (n % 2 == 0 && quiet >= window && n >= 2 * bm.length() + window)
                break;
        }
    }
    const RecurrenceMinPoly rec = bm.min_poly();
    const std::size_t t = bm.length();
    if (t > cfg.T)
        fail(ErrorKind::NonSplit, "recurrence of length " + std::to_string(t) + " exceeds T");
    SupportResult res;
    if (t == 0)
        return res;
    const std::vector<Int> roots = find_roots_subgroup(rec, ctx, rng, cfg.root_retries);
    res.exponents.reserve(t);
    for (const Int& r : roots) {
        Natural e = discrete_log_pow2(ctx, r);
        if (e >= cfg.D)
            fail(ErrorKind::ExponentOutOfRange, "recovered exponent " + e.to_string() + " is not below D");
        res.exponents.push_back(std::move(e));
    }
    res.coeffs = solve_transposed_vandermonde(roots, std::span<const Int>(seq.data(), t), field);
    return res;
}

inline SparsePoly assemble(const std::vector<Natural>& exps, const std::vector<Int>& coeffs, const RingSpec& ring)
{
    std::vector<Term> raw;
    raw.reserve(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i)
        raw.push_back(Term{coeffs[i], {exps[i]}});
    return SparsePoly::canonicalize(std::move(raw), 1, ring);
}

} // namespace detail

//
// Univariate interpolation over the smooth prime field of ctx. With early
// termination off the oracle is probed exactly 2T times.
//
inline SparsePoly interpolate_prony(ProbeCountingOracle& bb, const SmoothPrimeContext& ctx, const InterpConfig& cfg,
                                    Rng& rng)
{
    if (bb.nvars() != 1)
        fail(ErrorKind::Arity, "interpolate_prony expects a univariate oracle");
    auto s = detail::prony_support(bb, ctx, cfg, rng);
    return detail::assemble(s.exponents, s.coeffs, ctx.field());
}

inline SparsePoly interpolate_early_termination(ProbeCountingOracle& bb, const SmoothPrimeContext& ctx,
                                                InterpConfig cfg, Rng& rng)
{
    cfg.early_termination = true;
    return interpolate_prony(bb, ctx, cfg, rng);
}

//
// Integer coefficients: the support comes from one smooth prime with
// 2^k >= D; coefficients are then re-solved modulo ordinary primes at a
// random base zeta (t probes each) and combined by CRT until the modulus
// exceeds 2H + 1. Without H the smooth prime alone fixes the symmetric range.
//
inline SparsePoly interpolate_integer(ProbeCountingOracle& bb, const InterpConfig& cfg, Rng& rng)
{
    if (!bb.ring().is_integers())
        fail(ErrorKind::UnsupportedRing, "interpolate_integer needs an oracle over Z");
    if (bb.nvars() != 1)
        fail(ErrorKind::Arity, "interpolate_integer expects a univariate oracle");
    if (cfg.H && sgn(*cfg.H) <= 0)
        fail(ErrorKind::Precondition, "height bound must be at least 1");
    Int min_mod = 0;
    mpz_setbit(min_mod.get_mpz_t(), cfg.min_prime_bits);
    const Natural sub = std::max(cfg.D, Natural(2));
    const SmoothPrimeContext ctx = find_smooth_prime(sub, min_mod, rng);
    auto s = detail::prony_support(bb, ctx, cfg, rng);
    const std::size_t t = s.exponents.size();
    RingSpec Z = RingSpec::integers();
    if (t == 0)
        return SparsePoly(Z, 1);

    std::vector<Int> residues = s.coeffs;
    Int modulus = ctx.p;
    std::vector<Int> used{ctx.p};
    const Int need = cfg.H ? Int(2 * *cfg.H + 1) : Int(0);
    while (cfg.H && modulus <= need) {
        Int q;
        do {
            q = random_prime(rng, 62);
        } while (std::find(used.begin(), used.end(), q) != used.end());
        used.push_back(q);
        const RingSpec fq = RingSpec::prime_field(q);
        // base with distinct powers zeta^e_i
        std::vector<Int> nodes(t);
        Int zeta;
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 64)
                fail(ErrorKind::ResourceLimit, "no base with distinct powers modulo " + q.get_str());
            zeta = random_range(rng, Int(2), Int(q - 1));
            for (std::size_t i = 0; i < t; ++i)
                nodes[i] = pow_mod(zeta, s.exponents[i], fq);
            std::vector<Int> sorted = nodes;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
                break;
        }
        std::vector<Int> vals(t);
        Int pt = 1;
        for (std::size_t j = 0; j < t; ++j) {
            vals[j] = bb.evaluate(pt, fq);
            pt = pt * zeta % q;
        }
        const std::vector<Int> cq = solve_transposed_vandermonde(nodes, vals, fq);
        // CRT: x = r + modulus * ((cq - r) * modulus^-1 mod q)
        const Int minv = fq.inv(modulus);
        for (std::size_t i = 0; i < t; ++i) {
            Int k = fq.mul(fq.sub(cq[i], residues[i]), minv);
            residues[i] += modulus * k;
        }
        modulus *= q;
    }
    const Int half = modulus / 2;
    for (Int& c : residues) {
        if (c > half)
            c -= modulus;
        if (cfg.H && cmpabs(c, *cfg.H) > 0)
            fail(ErrorKind::HeightBound, "recovered coefficient exceeds the height bound");
    }
    return detail::assemble(s.exponents, residues, Z);
}

// Monte Carlo identity test of candidate against the oracle at random points.
inline bool verify(const SparsePoly& candidate, ProbeCountingOracle& bb, std::size_t trials, Rng& rng,
                   const Natural& degree_bound = Natural(std::uint64_t{1} << 62))
{
    if (candidate.nvars() != bb.nvars())
        fail(ErrorKind::Arity, "candidate and oracle differ in variable count");
    std::vector<Int> pt(bb.nvars());
    for (std::size_t trial = 0; trial < trials; ++trial) {
        RingSpec field = bb.ring();
        if (bb.ring().is_integers()) {
            const std::size_t bits = std::max<std::size_t>(64, degree_bound.bit_length() + 32);
            field = RingSpec::prime_field(random_prime(rng, bits));
        }
        for (Int& v : pt)
            v = random_below(rng, field.modulus());
        if (eval(candidate, pt, field) != bb.evaluate(pt, field))
            return false;
    }
    return true;
}

// Univariate dispatch on the oracle's ring.
inline SparsePoly interpolate_univariate(ProbeCountingOracle& bb, const InterpConfig& cfg, Rng& rng)
{
    if (bb.ring().is_integers())
        return interpolate_integer(bb, cfg, rng);
    const SmoothPrimeContext ctx = smooth_context_for_prime(bb.ring().modulus(), rng);
    return interpolate_prony(bb, ctx, cfg, rng);
}

//
// n-variate interpolation through the Kronecker point (z, z^D, ..., z^(D^(n-1)))
// and univariate recovery with degree bound D^n.
//
inline SparsePoly interpolate_multivariate(ProbeCountingOracle& bb, const InterpConfig& cfg, Rng& rng)
{
    const std::size_t n = bb.nvars();
    if (n == 1)
        return interpolate_univariate(bb, cfg, rng);
    std::vector<Natural> powers(n);
    powers[0] = Natural(1);
    for (std::size_t v = 1; v < n; ++v)
        powers[v] = powers[v - 1] * cfg.D;
    ProbeCountingOracle packed(bb.ring(), 1, [&bb, powers](std::span<const Int> z, const RingSpec& field) {
        std::vector<Int> pt(powers.size());
        for (std::size_t v = 0; v < powers.size(); ++v)
            pt[v] = pow_mod(z[0], powers[v], field);
        return bb.evaluate(pt, field);
    });
    InterpConfig ucfg = cfg;
    ucfg.D = powers[n - 1] * cfg.D;
    const SparsePoly g = interpolate_univariate(packed, ucfg, rng);
    return kronecker_unpack(g, cfg.D, n);
}

//
// Entry point: multivariate reduction when needed, then the ring-specific
// univariate path, then optional verification probes.
//
inline SparsePoly interpolate(ProbeCountingOracle& bb, const InterpConfig& cfg)
{
    Rng rng(cfg.seed);
    SparsePoly f = interpolate_multivariate(bb, cfg, rng);
    if (cfg.verify_trials > 0) {
        const Natural bound = pow(cfg.D, bb.nvars());
        if (!verify(f, bb, cfg.verify_trials, rng, bound))
            fail(ErrorKind::VerificationFailed, "interpolant disagrees with the oracle");
    }
    return f;
}

} // namespace lacunary

#endif

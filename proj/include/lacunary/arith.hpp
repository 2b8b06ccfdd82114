#ifndef LACUNARY_ARITH_HPP
#define LACUNARY_ARITH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "kronecker.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

struct ArithStats {
    std::uint64_t ring_ops = 0;
    std::uint64_t comparisons = 0;
    std::size_t peak_heap = 0;
    std::size_t output_terms = 0;
    bool pseudo_division = false; // divmod fell back to pseudo-division
    bool quadratic_path = false;  // divisor too large for the dense path
};

namespace detail
{

//
// Binary heap of ids with equal-key chaining.
//
// An id inserted with the same key as an id already on its sift-up path is
// linked into that id's chain instead of occupying a heap slot, so one
// extraction returns every chained id at once. `order(a, b)` returns the
// ordering of the keys of ids a and b; the smallest key is on top.
//
template <typename Order>
class ChainedHeap
{
public:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    ChainedHeap(Order order, std::uint64_t& comparisons) : order_(std::move(order)), comparisons_(comparisons) {}

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t top() const { return heap_.front(); }
    std::size_t entries() const noexcept { return entries_; }
    std::size_t peak() const noexcept { return peak_; }

    void push(std::size_t id)
    {
        if (id >= next_.size())
            next_.resize(id + 1, none);
        next_[id] = none;
        ++entries_;
        peak_ = std::max(peak_, entries_);
        // find the final slot before moving anything so a chain hit needs no undo
        std::size_t pos = heap_.size();
        while (pos > 0) {
            const std::size_t parent = (pos - 1) / 2;
            ++comparisons_;
            const auto c = order_(id, heap_[parent]);
            if (c == 0) {
                next_[id] = next_[heap_[parent]];
                next_[heap_[parent]] = id;
                return;
            }
            if (c > 0)
                break;
            pos = parent;
        }
        heap_.push_back(id);
        for (std::size_t q = heap_.size() - 1; q > pos;) {
            const std::size_t parent = (q - 1) / 2;
            heap_[q] = heap_[parent];
            q = parent;
        }
        heap_[pos] = id;
    }

    // Removes the top slot and calls visit(id) for each id in its chain.
    template <typename Visit>
    void pop_chain(Visit&& visit)
    {
        const std::size_t head = heap_.front();
        const std::size_t last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            std::size_t pos = 0;
            const std::size_t n = heap_.size();
            for (;;) {
                std::size_t child = 2 * pos + 1;
                if (child >= n)
                    break;
                if (child + 1 < n) {
                    ++comparisons_;
                    if (order_(heap_[child + 1], heap_[child]) < 0)
                        ++child;
                }
                ++comparisons_;
                if (order_(heap_[child], last) >= 0)
                    break;
                heap_[pos] = heap_[child];
                pos = child;
            }
            heap_[pos] = last;
        }
        for (std::size_t id = head; id != none;) {
            const std::size_t nx = next_[id];
            --entries_;
            visit(id);
            id = nx;
        }
    }

private:
    Order order_;
    std::uint64_t& comparisons_;
    std::vector<std::size_t> heap_;
    std::vector<std::size_t> next_;
    std::size_t entries_ = 0;
    std::size_t peak_ = 0;
};

template <typename Order>
ChainedHeap(Order, std::uint64_t&) -> ChainedHeap<Order>;

inline void add_exponents(std::span<const Natural> a, std::span<const Natural> b, std::span<Natural> out)
{
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = a[v] + b[v];
}

// Merge of two canonical polynomials, g scaled by sign (+1 or -1).
inline SparsePoly merge(const SparsePoly& f, const SparsePoly& g, int sign, ArithStats* stats)
{
    require_compatible(f, g);
    const RingSpec& ring = f.ring();
    SparsePoly out(ring, f.nvars());
    out.reserve(f.size() + g.size());
    std::uint64_t ops = 0, cmps = 0;
    std::size_t i = 0, j = 0;
    auto g_coeff = [&](std::size_t k) { return sign > 0 ? g.coeff(k) : ring.neg(g.coeff(k)); };
    while (i < f.size() && j < g.size()) {
        ++cmps;
        const auto c = colex_compare(f.exponents(i), g.exponents(j));
        if (c < 0) {
            out.push_back(f.coeff(i), f.exponents(i));
            ++i;
        } else if (c > 0) {
            out.push_back(g_coeff(j), g.exponents(j));
            ++j;
        } else {
            ++ops;
            Int s = sign > 0 ? ring.add(f.coeff(i), g.coeff(j)) : ring.sub(f.coeff(i), g.coeff(j));
            if (sgn(s) != 0)
                out.push_back(std::move(s), f.exponents(i));
            ++i;
            ++j;
        }
    }
    for (; i < f.size(); ++i)
        out.push_back(f.coeff(i), f.exponents(i));
    for (; j < g.size(); ++j)
        out.push_back(g_coeff(j), g.exponents(j));
    if (stats) {
        stats->ring_ops += ops;
        stats->comparisons += cmps;
        stats->output_terms = out.size();
    }
    return out;
}

} // namespace detail

// One linear merge: O(t_f + t_g) comparisons and ring additions.
inline SparsePoly add(const SparsePoly& f, const SparsePoly& g, ArithStats* stats = nullptr)
{
    return detail::merge(f, g, +1, stats);
}

inline SparsePoly sub(const SparsePoly& f, const SparsePoly& g, ArithStats* stats = nullptr)
{
    return detail::merge(f, g, -1, stats);
}

inline SparsePoly negate(const SparsePoly& f)
{
    SparsePoly out(f.ring(), f.nvars());
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out.push_back(f.ring().neg(f.coeff(i)), f.exponents(i));
    return out;
}

// c * x^e * f for a single monomial; c must be nonzero in the ring.
inline SparsePoly mul_term(const SparsePoly& f, const Int& c, std::span<const Natural> e, ArithStats* stats = nullptr)
{
    SparsePoly out(f.ring(), f.nvars());
    out.reserve(f.size());
    std::vector<Natural> ex(f.nvars());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int p = f.ring().mul(f.coeff(i), c);
        detail::add_exponents(f.exponents(i), e, ex);
        if (sgn(p) != 0)
            out.push_back(std::move(p), ex);
    }
    if (stats)
        stats->ring_ops += f.size();
    return out;
}

inline SparsePoly scale(const SparsePoly& f, const Int& c)
{
    return mul_term(f, c, std::vector<Natural>(f.nvars()));
}

//
// Classical product: all t_f * t_g monomial products, one sorted row per
// term of f, combined by a balanced tournament of merges. Used as the
// reference for the heap algorithm.
//
inline SparsePoly mul_naive(const SparsePoly& f, const SparsePoly& g, ArithStats* stats = nullptr)
{
    require_compatible(f, g);
    ArithStats local;
    std::deque<SparsePoly> rows;
    for (std::size_t i = 0; i < f.size(); ++i)
        rows.push_back(mul_term(g, f.coeff(i), f.exponents(i), &local));
    if (rows.empty())
        rows.emplace_back(f.ring(), f.nvars());
    while (rows.size() > 1) {
        std::deque<SparsePoly> next;
        while (rows.size() >= 2) {
            SparsePoly a = std::move(rows.front());
            rows.pop_front();
            SparsePoly b = std::move(rows.front());
            rows.pop_front();
            next.push_back(add(a, b, &local));
        }
        if (!rows.empty())
            next.push_back(std::move(rows.front()));
        rows = std::move(next);
    }
    local.output_terms = rows.front().size();
    if (stats)
        *stats = local;
    return std::move(rows.front());
}

struct MulResult {
    SparsePoly product;
    ArithStats stats;
};

//
// Heap multiplication.
//
// The heap holds one entry per term f_i of the smaller operand, keyed by the
// exponent of the next unmerged product f_i * g_j. Products leave the heap in
// ascending order, like terms are summed as they are extracted, and the
// successor f_i * g_(j+1) is pushed back. Intermediate space stays
// O(min(t_f, t_g)) regardless of the size of the product.
//
inline MulResult mul_heap(const SparsePoly& a, const SparsePoly& b)
{
    require_compatible(a, b);
    const SparsePoly& f = a.size() <= b.size() ? a : b;
    const SparsePoly& g = a.size() <= b.size() ? b : a;
    const RingSpec& ring = f.ring();
    const std::size_t n = f.nvars();
    MulResult res{SparsePoly(ring, n), {}};
    if (f.is_zero())
        return res;

    ArithStats& st = res.stats;
    const std::size_t tf = f.size(), tg = g.size();
    std::vector<std::size_t> col(tf, 0);
    std::vector<Natural> keys(tf * n);
    auto key = [&](std::size_t i) { return std::span<const Natural>(keys.data() + i * n, n); };
    auto set_key = [&](std::size_t i) {
        detail::add_exponents(f.exponents(i), g.exponents(col[i]), std::span<Natural>(keys.data() + i * n, n));
    };
    detail::ChainedHeap heap([&](std::size_t x, std::size_t y) { return colex_compare(key(x), key(y)); },
                             st.comparisons);
    for (std::size_t i = 0; i < tf; ++i) {
        set_key(i);
        heap.push(i);
    }

    std::vector<std::size_t> advance;
    advance.reserve(tf);
    std::vector<Natural> cur(n);
    Int acc;
    while (!heap.empty()) {
        const std::size_t head = heap.top();
        std::copy(key(head).begin(), key(head).end(), cur.begin());
        acc = 0;
        std::size_t products = 0;
        auto take = [&](std::size_t i) {
            mpz_addmul(acc.get_mpz_t(), f.coeff(i).get_mpz_t(), g.coeff(col[i]).get_mpz_t());
            ++products;
            advance.push_back(i);
        };
        heap.pop_chain(take);
        while (!heap.empty()) {
            ++st.comparisons;
            if (colex_compare(key(heap.top()), cur) != 0)
                break;
            heap.pop_chain(take);
        }
        st.ring_ops += 2 * products - 1; // products plus the additions combining them
        ring.reduce_in_place(acc);
        if (sgn(acc) != 0)
            res.product.push_back(acc, cur);
        for (std::size_t i : advance) {
            if (++col[i] < tg) {
                set_key(i);
                heap.push(i);
            }
        }
        advance.clear();
    }
    st.peak_heap = heap.peak();
    st.output_terms = res.product.size();
    return res;
}

inline SparsePoly mul(const SparsePoly& f, const SparsePoly& g, ArithStats* stats = nullptr)
{
    auto r = mul_heap(f, g);
    if (stats)
        *stats = r.stats;
    return std::move(r.product);
}

//
// Product through Kronecker packing with per-variable bound
// D = max_v(deg_v f + deg_v g) + 1. When the packed degree fits the dense
// budget the packed product is computed densely, otherwise by the heap.
//
inline SparsePoly mul_kronecker(const SparsePoly& f, const SparsePoly& g, std::size_t dense_budget = 1u << 16,
                                ArithStats* stats = nullptr)
{
    require_compatible(f, g);
    if (f.is_zero() || g.is_zero())
        return SparsePoly(f.ring(), f.nvars());
    const std::size_t n = f.nvars();
    Natural bound(1);
    for (std::size_t v = 0; v < n; ++v) {
        Natural df(0), dg(0);
        for (std::size_t i = 0; i < f.size(); ++i)
            df = std::max(df, f.exponents(i)[v]);
        for (std::size_t i = 0; i < g.size(); ++i)
            dg = std::max(dg, g.exponents(i)[v]);
        bound = std::max(bound, df + dg + Natural(1));
    }
    const SparsePoly pf = kronecker_pack(f, bound), pg = kronecker_pack(g, bound);
    const Natural packed_deg = *pf.degree() + *pg.degree();
    SparsePoly prod(f.ring(), 1);
    if (packed_deg < Natural(dense_budget)) {
        std::uint64_t ops = 0;
        prod = from_dense(dense::mul(to_dense(pf, dense_budget), to_dense(pg, dense_budget), &ops));
        if (stats) {
            *stats = ArithStats{};
            stats->ring_ops = ops;
        }
    } else {
        prod = mul(pf, pg, stats);
    }
    SparsePoly out = kronecker_unpack(prod, bound, n);
    if (stats)
        stats->output_terms = out.size();
    return out;
}

struct DivOptions {
    // Over Z: scale by lc(g) when a quotient coefficient is inexact instead of failing.
    bool allow_pseudo = false;
    // Refuse to produce more than this many quotient plus remainder terms.
    std::size_t term_budget = std::numeric_limits<std::size_t>::max();
};

struct DivResult {
    SparsePoly quotient;
    SparsePoly remainder;
    ArithStats stats;
    // m with m*f = q*g + r; 1 unless pseudo-division was used.
    Int multiplier = 1;
};

namespace detail
{

// Sparse pseudo-division: scales by lc(g) only when a step is inexact.
inline DivResult pseudo_divmod(const SparsePoly& f, const SparsePoly& g, const DivOptions& opt)
{
    const RingSpec& ring = f.ring();
    DivResult res{SparsePoly(ring, 1), SparsePoly(ring, 1), {}, Int(1)};
    res.stats.pseudo_division = true;
    const Natural dg = *g.degree();
    const Int& lc = g.coeff(g.size() - 1);
    SparsePoly rem = f;
    SparsePoly q(ring, 1);
    while (!rem.is_zero() && *rem.degree() >= dg) {
        const std::size_t top = rem.size() - 1;
        Int c = rem.coeff(top);
        const Natural shift = rem.exponent(top) - dg;
        if (!ring.divides(lc, c)) {
            rem = scale(rem, lc);
            q = scale(q, lc);
            res.multiplier *= lc;
            c = rem.coeff(top);
        }
        const Int qc = ring.divexact(c, lc);
        q = add(q, SparsePoly::monomial(qc, {shift}, ring));
        rem = sub(rem, mul_term(g, qc, std::span<const Natural>(&shift, 1), &res.stats), &res.stats);
        if (q.size() + rem.size() > opt.term_budget)
            fail(ErrorKind::Budget, "pseudo-division exceeds the term budget");
    }
    res.quotient = std::move(q);
    res.remainder = std::move(rem);
    res.stats.output_terms = res.quotient.size() + res.remainder.size();
    return res;
}

} // namespace detail

//
// Heap division with remainder for univariate polynomials.
//
// Terms of f are consumed from the top down. Pending products q_k * g_j
// (g_j ranging over the non-leading terms of g) sit in a max-heap with one
// entry per quotient term. Each step combines the next term of f with all
// products of the same exponent; a result at or above deg g becomes a
// quotient term, anything lower is a remainder term.
//
inline DivResult divmod_heap(const SparsePoly& f, const SparsePoly& g, const DivOptions& opt = {})
{
    require_compatible(f, g);
    f.require_univariate("divmod_heap");
    if (g.is_zero())
        fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    const RingSpec& ring = f.ring();
    const Natural dg = *g.degree();
    const Int& lc = g.coeff(g.size() - 1);
    const std::size_t tg = g.size();

    DivResult res{SparsePoly(ring, 1), SparsePoly(ring, 1), {}, Int(1)};
    ArithStats& st = res.stats;
    // quotient and remainder are produced in descending order; reversed at the end
    std::vector<Int> qc, rc;
    std::vector<Natural> qe, re;
    std::vector<std::size_t> gidx; // next term of g (descending) for each quotient term
    std::vector<Natural> keys;
    auto order = [&](std::size_t x, std::size_t y) { return keys[y] <=> keys[x]; }; // max on top
    detail::ChainedHeap heap(order, st.comparisons);
    const Int lc_inv = ring.is_field() ? ring.inv(lc) : Int(0);

    std::size_t fi = f.size();
    std::vector<std::size_t> advance;
    Int c;
    while (fi > 0 || !heap.empty()) {
        Natural key;
        if (fi > 0 && (heap.empty() || (++st.comparisons, f.exponent(fi - 1) >= keys[heap.top()])))
            key = f.exponent(fi - 1);
        else
            key = keys[heap.top()];
        c = 0;
        if (fi > 0 && f.exponent(fi - 1) == key) {
            c = f.coeff(fi - 1);
            --fi;
        }
        auto take = [&](std::size_t k) {
            mpz_submul(c.get_mpz_t(), qc[k].get_mpz_t(), g.coeff(gidx[k]).get_mpz_t());
            st.ring_ops += 2;
            advance.push_back(k);
        };
        while (!heap.empty()) {
            ++st.comparisons;
            if (!(keys[heap.top()] == key))
                break;
            heap.pop_chain(take);
        }
        for (std::size_t k : advance) {
            if (gidx[k]-- > 0) {
                keys[k] = qe[k] + g.exponent(gidx[k]);
                heap.push(k);
            }
        }
        advance.clear();
        ring.reduce_in_place(c);
        if (sgn(c) == 0)
            continue;
        if (key >= dg) {
            Int q;
            if (ring.is_field()) {
                q = c * lc_inv % ring.modulus();
            } else if (mpz_divisible_p(c.get_mpz_t(), lc.get_mpz_t())) {
                q = 0;
                mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), lc.get_mpz_t());
            } else if (opt.allow_pseudo) {
                return detail::pseudo_divmod(f, g, opt);
            } else {
                fail(ErrorKind::InexactDivision, "leading coefficient " + lc.get_str() + " does not divide " + c.get_str());
            }
            ++st.ring_ops;
            const std::size_t k = qc.size();
            qc.push_back(std::move(q));
            qe.push_back(key - dg);
            gidx.push_back(tg - 1);
            keys.emplace_back();
            if (tg > 1) {
                gidx[k] = tg - 2;
                keys[k] = qe[k] + g.exponent(tg - 2);
                heap.push(k);
            }
        } else {
            rc.push_back(c);
            re.push_back(std::move(key));
        }
        if (qc.size() + rc.size() > opt.term_budget)
            fail(ErrorKind::Budget, "division exceeds the term budget of " + std::to_string(opt.term_budget) + " terms");
    }
    res.quotient.reserve(qc.size());
    for (std::size_t k = qc.size(); k-- > 0;)
        res.quotient.push_back(std::move(qc[k]), qe[k]);
    res.remainder.reserve(rc.size());
    for (std::size_t k = rc.size(); k-- > 0;)
        res.remainder.push_back(std::move(rc[k]), re[k]);
    st.peak_heap = heap.peak();
    st.output_terms = res.quotient.size() + res.remainder.size();
    return res;
}

// |content|: gcd of the coefficients over Z, 1 over a field, 0 for zero.
inline Int content(const SparsePoly& f)
{
    if (f.is_zero())
        return Int(0);
    if (f.ring().is_field())
        return Int(1);
    Int g = 0;
    for (const Int& c : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

// f / content(f), with a positive leading coefficient over Z.
inline SparsePoly primitive_part(const SparsePoly& f)
{
    if (f.is_zero() || f.ring().is_field())
        return f;
    Int c = content(f);
    if (sgn(f.coeff(f.size() - 1)) < 0)
        c = -c;
    SparsePoly out(f.ring(), f.nvars());
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int q;
        mpz_divexact(q.get_mpz_t(), f.coeff(i).get_mpz_t(), c.get_mpz_t());
        out.push_back(std::move(q), f.exponents(i));
    }
    return out;
}

namespace detail
{

// Smallest prime factor of |n| found by trial division below 2^20, or 0.
inline unsigned long small_prime_factor(const Int& n)
{
    const Int a = abs(n);
    if (a < 2)
        return 0;
    if (mpz_even_p(a.get_mpz_t()))
        return 2;
    for (unsigned long d = 3; d < (1ul << 20); d += 2) {
        if (a < Int(d) * d)
            return a.get_ui();
        if (mpz_divisible_ui_p(a.get_mpz_t(), d))
            return d;
    }
    return 0;
}

} // namespace detail

struct RationalEvalOptions {
    // Largest exact block evaluation attempted, in bits.
    std::size_t bit_budget = std::size_t{1} << 24;
};

//
// Exact test of f(a/b) = 0 for univariate f over Z, gcd(a, b) = 1, b > 0.
//
// Powers of a/b for huge exponents are never formed. With s = N/M and a prime
// p dividing N but not M, term i of sum c_i s^d_i has p-adic valuation at
// least d_i * v_p(N). Terms are grouped into blocks; once the valuation jump
// to the next term exceeds the largest valuation a nonzero block sum could
// have, the block must vanish on its own for the whole sum to vanish. Each
// block is evaluated exactly over its (small) exponent span. When |a| = 1 the
// roles of a and b are swapped by reversing the exponents.
//
inline bool vanishes_at_rational(const SparsePoly& f, const Int& a, const Int& b, const RationalEvalOptions& opt = {})
{
    f.require_univariate("vanishes_at_rational");
    if (!f.ring().is_integers())
        fail(ErrorKind::UnsupportedRing, "vanishes_at_rational works over Z");
    if (sgn(b) <= 0)
        fail(ErrorKind::Precondition, "denominator must be positive");
    if (f.is_zero())
        return true;
    if (sgn(a) == 0)
        return !f.exponent(0).is_zero();
    if (cmpabs(a, 1) == 0 && b == 1) {
        Int s = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            s += (sgn(a) < 0 && f.exponent(i).is_odd()) ? Int(-f.coeff(i)) : f.coeff(i);
        return sgn(s) == 0;
    }

    // orient so that the numerator N carries the prime
    const bool forward = cmpabs(a, 1) > 0;
    const Int num = forward ? a : b;
    const Int den = forward ? b : a;
    const std::size_t t = f.size();
    std::vector<Natural> d(t);
    std::vector<const Int*> c(t);
    const Natural& emin = f.exponent(0);
    const Natural& emax = f.exponent(t - 1);
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t src = forward ? i : t - 1 - i;
        d[i] = forward ? f.exponent(src) - emin : emax - f.exponent(src);
        c[i] = &f.coeff(src);
    }

    unsigned long p = detail::small_prime_factor(num);
    std::size_t v = 1;
    std::size_t log2p = 19; // an unfound factor of |N| exceeds 2^20
    if (p != 0) {
        v = 0;
        Int tmp = abs(num);
        while (mpz_divisible_ui_p(tmp.get_mpz_t(), p)) {
            mpz_divexact_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), p);
            ++v;
        }
        log2p = 63 - static_cast<std::size_t>(__builtin_clzl(p));
    }
    const std::size_t mbits = std::max(bit_length(num), bit_length(den));

    auto block_value = [&](std::size_t lo, std::size_t hi) {
        const Natural span = d[hi] - d[lo];
        if (span > Natural(opt.bit_budget / std::max<std::size_t>(mbits, 1)))
            fail(ErrorKind::Budget, "exact rational evaluation block exceeds the bit budget");
        Int s = 0, pw;
        for (std::size_t i = lo; i <= hi; ++i) {
            const unsigned long up = (d[i] - d[lo]).word();
            const unsigned long down = (d[hi] - d[i]).word();
            Int term = *c[i];
            mpz_pow_ui(pw.get_mpz_t(), num.get_mpz_t(), up);
            term *= pw;
            mpz_pow_ui(pw.get_mpz_t(), den.get_mpz_t(), down);
            term *= pw;
            s += term;
        }
        return s;
    };

    std::size_t start = 0;
    Int abs_sum = 0;
    for (std::size_t j = 0; j < t; ++j) {
        abs_sum += abs(*c[j]);
        bool close = j + 1 == t;
        if (!close) {
            const Natural jump = (d[j + 1] - d[start]) * Natural(v) * Natural(log2p);
            const Natural need = Natural(bit_length(abs_sum)) + (d[j] - d[start]) * Natural(mbits);
            close = jump > need;
        }
        if (close) {
            if (sgn(block_value(start, j)) != 0)
                return false;
            start = j + 1;
            abs_sum = 0;
        }
    }
    return true;
}

struct DividesOptions {
    // Divisors up to this degree take the dense remainder path.
    std::size_t dense_budget = std::size_t{1} << 16;
    // Random primes used to screen integer inputs before exact confirmation.
    std::size_t screen_primes = 3;
    // Term budget for the sparse-division fallback.
    std::size_t term_budget = std::size_t{1} << 22;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    RationalEvalOptions rational{};
};

namespace detail
{

// f mod g over a prime field via sum c_i (x^e_i mod g).
inline DensePoly dense_remainder(const SparsePoly& f, const DensePoly& g, std::uint64_t* ops)
{
    const DensePoly h = dense::rem(DensePoly::x(g.ring()), g, ops);
    return eval_mod(f, h, g, ops);
}

} // namespace detail

//
// Does g divide f? (univariate)
//
// For deg g within the dense budget the remainder is sum c_i (x^e_i mod g),
// with every power found by repeated squaring modulo g: the cost depends on
// t, deg g and log deg f only. Over Z this runs modulo random primes first
// (a nonzero image proves g does not divide f) and is then confirmed
// exactly: linear divisors by exact rational evaluation, others by sparse
// division. Larger divisors always use sparse division.
//
inline bool divides(const SparsePoly& f, const SparsePoly& g, const DividesOptions& opt = {}, ArithStats* stats = nullptr)
{
    require_compatible(f, g);
    f.require_univariate("divides");
    if (g.is_zero())
        fail(ErrorKind::DivisionByZero, "divisibility by the zero polynomial");
    ArithStats local;
    auto finish = [&](bool r) {
        if (stats)
            *stats = local;
        return r;
    };
    if (f.is_zero())
        return finish(true);
    const RingSpec& ring = f.ring();
    const Natural dg = *g.degree();

    if (dg.is_zero()) {
        const Int& c = g.coeff(0);
        if (ring.is_field())
            return finish(true);
        for (const Int& fc : f.coeffs())
            if (!mpz_divisible_p(fc.get_mpz_t(), c.get_mpz_t()))
                return finish(false);
        return finish(true);
    }

    auto sparse_path = [&]() {
        DivOptions dopt;
        dopt.term_budget = opt.term_budget;
        try {
            DivResult d = divmod_heap(f, g, dopt);
            local.ring_ops += d.stats.ring_ops;
            local.comparisons += d.stats.comparisons;
            local.peak_heap = d.stats.peak_heap;
            return d.remainder.is_zero();
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InexactDivision)
                return false;
            throw;
        }
    };

    if (!dg.is_small() || dg.word() > opt.dense_budget) {
        local.quadratic_path = true;
        return finish(sparse_path());
    }

    if (ring.is_field()) {
        const DensePoly r = detail::dense_remainder(f, to_dense(g, opt.dense_budget + 1), &local.ring_ops);
        return finish(r.is_zero());
    }

    // integers: modular screen
    Rng rng(opt.seed);
    const Int& lc = g.coeff(g.size() - 1);
    for (std::size_t s = 0; s < opt.screen_primes; ++s) {
        Int p;
        do {
            p = random_prime(rng, 62);
        } while (mpz_divisible_p(lc.get_mpz_t(), p.get_mpz_t()));
        const RingSpec fp = RingSpec::prime_field(p);
        const SparsePoly fp_f = change_ring(f, fp);
        const DensePoly fp_g = to_dense(change_ring(g, fp), opt.dense_budget + 1);
        if (!detail::dense_remainder(fp_f, fp_g, &local.ring_ops).is_zero())
            return finish(false);
    }

    // exact confirmation: g | f iff pp(g) | f over Q and cont(g) | cont(f)
    const Int cg = content(g);
    if (!mpz_divisible_p(content(f).get_mpz_t(), cg.get_mpz_t()))
        return finish(false);
    if (dg == Natural(1)) {
        const SparsePoly pg = primitive_part(g);
        // pg = b x - a with b > 0
        const Int b = pg.coeff(pg.size() - 1);
        const Int a = pg.size() == 2 ? Int(-pg.coeff(0)) : Int(0);
        return finish(vanishes_at_rational(f, a, b, opt.rational));
    }
    return finish(sparse_path());
}

// f^k by binary powering with heap products; zero-th power is 1.
inline SparsePoly pow(const SparsePoly& f, const Natural& k, std::size_t term_budget = std::size_t{1} << 22,
                      ArithStats* stats = nullptr)
{
    SparsePoly result = SparsePoly::constant(Int(1), f.ring(), f.nvars());
    if (k.is_zero())
        return result;
    if (f.is_zero())
        return SparsePoly(f.ring(), f.nvars());
    if (f.size() == 1) {
        // monomial: c^k x^(k e)
        std::vector<Natural> e(f.nvars());
        for (std::size_t v = 0; v < f.nvars(); ++v)
            e[v] = f.exponents(0)[v] * k;
        Int c;
        if (f.ring().is_field())
            c = pow_mod(f.coeff(0), k, f.ring());
        else if (cmpabs(f.coeff(0), 1) == 0)
            c = (sgn(f.coeff(0)) < 0 && k.is_odd()) ? -1 : 1;
        else if (!k.is_small() || k.word() * bit_length(f.coeff(0)) > (std::size_t{1} << 24))
            fail(ErrorKind::Budget, "coefficient of the power exceeds the bit budget");
        else
            mpz_pow_ui(c.get_mpz_t(), f.coeff(0).get_mpz_t(), k.word());
        return SparsePoly::monomial(c, std::move(e), f.ring());
    }
    if (!k.is_small() || k.word() > (std::uint64_t{1} << 32))
        fail(ErrorKind::Budget, "power " + k.to_string() + " of a polynomial with several terms is too large");
    ArithStats local;
    SparsePoly base = f;
    std::uint64_t e = k.word();
    auto step = [&](const SparsePoly& x, const SparsePoly& y) {
        MulResult m = mul_heap(x, y);
        local.ring_ops += m.stats.ring_ops;
        local.comparisons += m.stats.comparisons;
        local.peak_heap = std::max(local.peak_heap, m.stats.peak_heap);
        if (m.product.size() > term_budget)
            fail(ErrorKind::Budget, "power exceeds the term budget of " + std::to_string(term_budget));
        return std::move(m.product);
    };
    bool first = true;
    while (e > 0) {
        if (e & 1u) {
            result = first ? base : step(result, base);
            first = false;
        }
        e >>= 1;
        if (e > 0)
            base = step(base, base);
    }
    local.output_terms = result.size();
    if (stats)
        *stats = local;
    return result;
}

} // namespace lacunary

#endif

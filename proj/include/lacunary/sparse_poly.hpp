#ifndef LACUNARY_SPARSE_POLY_HPP
#define LACUNARY_SPARSE_POLY_HPP

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "natural.hpp"
#include "ring.hpp"

namespace lacunary
{

// A single nonzero term c * x1^e1 * ... * xn^en.
struct Term {
    Int coeff;
    std::vector<Natural> exponents;
};

// Colexicographic order: the last variable is most significant. For
// univariate exponents this is plain numeric order, and it agrees with the
// order of Kronecker-packed exponents.
inline std::strong_ordering colex_compare(std::span<const Natural> a, std::span<const Natural> b)
{
    for (std::size_t v = a.size(); v-- > 0;) {
        const auto c = a[v] <=> b[v];
        if (c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

//
// Polynomial in the distributed sparse representation.
//
// Terms are stored as two flat arrays: t coefficients and t*n exponents,
// sorted strictly ascending in colex order. No zero coefficient and no
// duplicate exponent tuple is ever stored; the zero polynomial has no terms.
//
class SparsePoly
{
public:
    SparsePoly() = default;

    SparsePoly(RingSpec ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars)
    {
        if (nvars_ == 0)
            fail(ErrorKind::Arity, "polynomials need at least one variable");
    }

    // Sorts, merges like terms and drops zeros.
    static SparsePoly canonicalize(std::vector<Term> raw, std::size_t nvars, const RingSpec& ring)
    {
        SparsePoly out(ring, nvars);
        for (const Term& t : raw)
            if (t.exponents.size() != nvars)
                fail(ErrorKind::Arity, "term has " + std::to_string(t.exponents.size()) + " exponents, expected " +
                                           std::to_string(nvars));
        std::sort(raw.begin(), raw.end(),
                  [](const Term& a, const Term& b) { return colex_compare(a.exponents, b.exponents) < 0; });
        out.coeffs_.reserve(raw.size());
        out.exps_.reserve(raw.size() * nvars);
        for (std::size_t i = 0; i < raw.size();) {
            Int c = ring.reduce(raw[i].coeff);
            std::size_t j = i + 1;
            while (j < raw.size() && colex_compare(raw[i].exponents, raw[j].exponents) == 0) {
                c += raw[j].coeff;
                ++j;
            }
            ring.reduce_in_place(c);
            if (sgn(c) != 0)
                out.push_back(std::move(c), raw[i].exponents);
            i = j;
        }
        return out;
    }

    static SparsePoly constant(const Int& c, const RingSpec& ring, std::size_t nvars = 1)
    {
        SparsePoly out(ring, nvars);
        Int r = ring.reduce(c);
        if (sgn(r) != 0)
            out.push_back(std::move(r), std::vector<Natural>(nvars));
        return out;
    }

    static SparsePoly monomial(const Int& c, std::vector<Natural> exps, const RingSpec& ring)
    {
        const std::size_t n = exps.size();
        return canonicalize({Term{c, std::move(exps)}}, n, ring);
    }

    // Univariate convenience: sum of c_i x^e_i.
    static SparsePoly univariate(const std::vector<std::pair<Int, Natural>>& terms, const RingSpec& ring)
    {
        std::vector<Term> raw;
        raw.reserve(terms.size());
        for (const auto& [c, e] : terms)
            raw.push_back(Term{c, {e}});
        return canonicalize(std::move(raw), 1, ring);
    }

    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    const Int& coeff(std::size_t i) const { return coeffs_[i]; }
    std::span<const Natural> exponents(std::size_t i) const { return {exps_.data() + i * nvars_, nvars_}; }
    // Univariate shorthand.
    const Natural& exponent(std::size_t i) const { return exps_[i * nvars_]; }

    Term term(std::size_t i) const
    {
        auto e = exponents(i);
        return Term{coeffs_[i], std::vector<Natural>(e.begin(), e.end())};
    }

    const std::vector<Int>& coeffs() const noexcept { return coeffs_; }
    const std::vector<Natural>& flat_exponents() const noexcept { return exps_; }

    // Degree of a univariate polynomial; nullopt stands for deg 0 = -infinity.
    std::optional<Natural> degree() const
    {
        require_univariate("degree");
        if (is_zero())
            return std::nullopt;
        return exps_.back();
    }

    // Largest exponent of any variable in any term; nullopt for zero.
    std::optional<Natural> max_degree() const
    {
        if (is_zero())
            return std::nullopt;
        return *std::max_element(exps_.begin(), exps_.end());
    }

    bool is_constant() const
    {
        return is_zero() || (size() == 1 && std::all_of(exps_.begin(), exps_.end(), [](const Natural& e) { return e.is_zero(); }));
    }

    // Appends a term that must sort after every stored term. Builders in the
    // arithmetic code use this to emit results in order.
    void push_back(Int c, std::span<const Natural> exps)
    {
        exps_.insert(exps_.end(), exps.begin(), exps.end());
        coeffs_.push_back(std::move(c));
    }

    void push_back(Int c, const Natural& e)
    {
        exps_.push_back(e);
        coeffs_.push_back(std::move(c));
    }

    void reserve(std::size_t t)
    {
        coeffs_.reserve(t);
        exps_.reserve(t * nvars_);
    }

    // Throws Precondition if any representation invariant is broken.
    void check_invariants() const
    {
        if (exps_.size() != coeffs_.size() * nvars_)
            fail(ErrorKind::Precondition, "exponent storage does not match term count");
        for (std::size_t i = 0; i < size(); ++i) {
            if (sgn(coeffs_[i]) == 0)
                fail(ErrorKind::Precondition, "zero coefficient stored");
            if (ring_.is_field() && (sgn(coeffs_[i]) < 0 || coeffs_[i] >= ring_.modulus()))
                fail(ErrorKind::Precondition, "non-canonical field element stored");
            if (i > 0 && colex_compare(exponents(i - 1), exponents(i)) >= 0)
                fail(ErrorKind::Precondition, "terms not strictly ascending");
        }
    }

    void require_univariate(const char* what) const
    {
        if (nvars_ != 1)
            fail(ErrorKind::Arity, std::string(what) + " requires a univariate polynomial");
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b)
    {
        return a.ring_ == b.ring_ && a.nvars_ == b.nvars_ && a.coeffs_ == b.coeffs_ && a.exps_ == b.exps_;
    }

private:
    RingSpec ring_;
    std::size_t nvars_ = 1;
    std::vector<Int> coeffs_;
    std::vector<Natural> exps_;
};

inline void require_compatible(const SparsePoly& f, const SparsePoly& g)
{
    if (!(f.ring() == g.ring()))
        fail(ErrorKind::RingMismatch, "operands over " + f.ring().to_string() + " and " + g.ring().to_string());
    if (f.nvars() != g.nvars())
        fail(ErrorKind::Arity, "operands with " + std::to_string(f.nvars()) + " and " + std::to_string(g.nvars()) +
                                   " variables");
}

// max |c_i|; zero for the zero polynomial.
inline Int height(const SparsePoly& f)
{
    if (!f.ring().is_integers())
        fail(ErrorKind::UnsupportedRing, "height is defined over Z only");
    Int h = 0;
    for (const Int& c : f.coeffs())
        if (cmpabs(c, h) > 0)
            h = abs(c);
    return h;
}

// Map coefficients into another ring (Z -> Z/pZ, or identity).
inline SparsePoly change_ring(const SparsePoly& f, const RingSpec& target)
{
    if (f.ring() == target)
        return f;
    if (f.ring().is_field())
        fail(ErrorKind::RingMismatch, "cannot map " + f.ring().to_string() + " into " + target.to_string());
    SparsePoly out(target, f.nvars());
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int c = target.reduce(f.coeff(i));
        if (sgn(c) != 0)
            out.push_back(std::move(c), f.exponents(i));
    }
    return out;
}

struct EvalOptions {
    // Largest result size, in bits, attempted for exact integer evaluation.
    std::size_t integer_bit_budget = std::size_t{1} << 24;
};

//
// Value of f at a point.
//
// With target = a prime field, coefficients and point are reduced into it
// (f may be over Z or over that same field) and powers use Fermat exponent
// reduction. With target = Z the evaluation is exact and refused when the
// estimated result size exceeds the bit budget.
//
inline Int eval(const SparsePoly& f, std::span<const Int> point, const RingSpec& target, const EvalOptions& opt = {})
{
    if (point.size() != f.nvars())
        fail(ErrorKind::Arity, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                   std::to_string(f.nvars()));
    if (f.ring().is_field() && !(f.ring() == target))
        fail(ErrorKind::RingMismatch, "cannot evaluate " + f.ring().to_string() + " polynomial in " + target.to_string());

    if (target.is_field()) {
        std::vector<Int> pt(point.size());
        for (std::size_t v = 0; v < point.size(); ++v)
            pt[v] = target.reduce(point[v]);
        Int acc = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Int term = target.reduce(f.coeff(i));
            auto e = f.exponents(i);
            for (std::size_t v = 0; v < pt.size(); ++v)
                if (!e[v].is_zero())
                    term = term * pow_mod(pt[v], e[v], target) % target.modulus();
            acc += term;
        }
        return target.reduce(acc);
    }

    // exact integer evaluation with a size guard
    std::vector<std::size_t> bits(point.size());
    for (std::size_t v = 0; v < point.size(); ++v)
        bits[v] = bit_length(point[v]);
    Int acc = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto e = f.exponents(i);
        Natural est(bit_length(f.coeff(i)));
        bool zero_term = false;
        for (std::size_t v = 0; v < point.size(); ++v) {
            if (e[v].is_zero())
                continue;
            if (sgn(point[v]) == 0) {
                zero_term = true;
                break;
            }
            if (bits[v] > 1 || cmpabs(point[v], 1) > 0)
                est += e[v] * Natural(bits[v]);
        }
        if (zero_term)
            continue;
        if (est > Natural(opt.integer_bit_budget))
            fail(ErrorKind::Budget, "exact evaluation would need about " + est.to_string() + " bits");
        Int term = f.coeff(i);
        for (std::size_t v = 0; v < point.size(); ++v) {
            if (e[v].is_zero())
                continue;
            Int pw;
            if (cmpabs(point[v], 1) == 0) {
                // +-1 to a possibly huge exponent
                pw = (sgn(point[v]) < 0 && e[v].is_odd()) ? -1 : 1;
            } else {
                mpz_pow_ui(pw.get_mpz_t(), point[v].get_mpz_t(), e[v].word());
            }
            term *= pw;
        }
        acc += term;
    }
    return acc;
}

inline Int eval(const SparsePoly& f, std::span<const Int> point, const EvalOptions& opt = {})
{
    return eval(f, point, f.ring(), opt);
}

//
// (f(w^0), f(w^1), ..., f(w^(m-1))) in a prime field: one exponentiation per
// term for rho_i = w^e_i, then m running products per term.
//
inline std::vector<Int> eval_geometric(const SparsePoly& f, const Int& w, std::size_t m, const RingSpec& target)
{
    f.require_univariate("eval_geometric");
    require_field(target, "eval_geometric");
    if (f.ring().is_field() && !(f.ring() == target))
        fail(ErrorKind::RingMismatch, "eval_geometric ring mismatch");
    const Int& p = target.modulus();
    std::vector<Int> out(m, Int(0));
    const Int wr = target.reduce(w);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Int rho = pow_mod(wr, f.exponent(i), target);
        Int run = target.reduce(f.coeff(i));
        for (std::size_t j = 0; j < m; ++j) {
            out[j] += run;
            run = run * rho % p;
        }
    }
    for (Int& v : out)
        target.reduce_in_place(v);
    return out;
}

inline std::vector<Int> eval_geometric(const SparsePoly& f, const Int& w, std::size_t m)
{
    return eval_geometric(f, w, m, f.ring());
}

} // namespace lacunary

#endif

#ifndef LACUNARY_DENSE_POLY_HPP
#define LACUNARY_DENSE_POLY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

//
// Dense univariate polynomial: coeffs[i] is the coefficient of x^i. The
// leading stored coefficient is nonzero; zero is the empty vector.
//
class DensePoly
{
public:
    DensePoly() = default;
    explicit DensePoly(RingSpec ring) : ring_(std::move(ring)) {}
    DensePoly(RingSpec ring, std::vector<Int> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs))
    {
        for (Int& c : coeffs_)
            ring_.reduce_in_place(c);
        trim();
    }

    static DensePoly constant(const RingSpec& ring, const Int& c) { return DensePoly(ring, {c}); }

    static DensePoly x(const RingSpec& ring) { return DensePoly(ring, {Int(0), Int(1)}); }

    const RingSpec& ring() const noexcept { return ring_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::optional<std::size_t> degree() const
    {
        if (coeffs_.empty())
            return std::nullopt;
        return coeffs_.size() - 1;
    }
    // Number of stored coefficients (deg + 1, or 0).
    std::size_t length() const noexcept { return coeffs_.size(); }

    const Int& operator[](std::size_t i) const { return coeffs_[i]; }
    Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
    const Int& leading() const { return coeffs_.back(); }
    const std::vector<Int>& coeffs() const noexcept { return coeffs_; }

    friend bool operator==(const DensePoly& a, const DensePoly& b)
    {
        return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
            coeffs_.pop_back();
    }

    RingSpec ring_;
    std::vector<Int> coeffs_;
};

// Ring-operation counter threaded through dense arithmetic; may be null.
using OpCounter = std::uint64_t*;

namespace dense
{

inline void count(OpCounter ops, std::uint64_t n)
{
    if (ops)
        *ops += n;
}

inline DensePoly add(const DensePoly& a, const DensePoly& b, OpCounter ops = nullptr)
{
    std::vector<Int> c(std::max(a.length(), b.length()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) + b.coeff(i);
    count(ops, std::min(a.length(), b.length()));
    return DensePoly(a.ring(), std::move(c));
}

inline DensePoly sub(const DensePoly& a, const DensePoly& b, OpCounter ops = nullptr)
{
    std::vector<Int> c(std::max(a.length(), b.length()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(i) - b.coeff(i);
    count(ops, std::min(a.length(), b.length()));
    return DensePoly(a.ring(), std::move(c));
}

inline DensePoly scale(const DensePoly& a, const Int& s, OpCounter ops = nullptr)
{
    std::vector<Int> c(a.coeffs());
    for (Int& v : c)
        v *= s;
    count(ops, c.size());
    return DensePoly(a.ring(), std::move(c));
}

// Schoolbook product; each output coefficient is reduced once.
inline DensePoly mul(const DensePoly& a, const DensePoly& b, OpCounter ops = nullptr)
{
    if (a.is_zero() || b.is_zero())
        return DensePoly(a.ring());
    std::vector<Int> c(a.length() + b.length() - 1, Int(0));
    for (std::size_t i = 0; i < a.length(); ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < b.length(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    count(ops, 2 * a.length() * b.length());
    return DensePoly(a.ring(), std::move(c));
}

//
// Quotient and remainder with deg r < deg b. Over Z every quotient
// coefficient must divide exactly by lc(b), otherwise InexactDivision.
//
inline std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b, OpCounter ops = nullptr)
{
    if (b.is_zero())
        fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
    const RingSpec& ring = a.ring();
    if (a.length() < b.length())
        return {DensePoly(ring), a};
    const std::size_t db = b.length() - 1;
    std::vector<Int> r(a.coeffs());
    std::vector<Int> q(a.length() - db, Int(0));
    const bool unit_lc = b.leading() == 1;
    const Int lc_inv = ring.is_field() ? ring.inv(b.leading()) : Int(0);
    for (std::size_t i = a.length(); i-- > db;) {
        ring.reduce_in_place(r[i]);
        if (sgn(r[i]) == 0)
            continue;
        Int qc;
        if (unit_lc)
            qc = r[i];
        else if (ring.is_field())
            qc = r[i] * lc_inv % ring.modulus();
        else
            qc = ring.divexact(r[i], b.leading());
        const std::size_t shift = i - db;
        for (std::size_t j = 0; j < db; ++j)
            mpz_submul(r[shift + j].get_mpz_t(), qc.get_mpz_t(), b[j].get_mpz_t());
        count(ops, 2 * db + 1);
        r[i] = 0;
        q[shift] = std::move(qc);
    }
    r.resize(db);
    return {DensePoly(ring, std::move(q)), DensePoly(ring, std::move(r))};
}

inline DensePoly rem(const DensePoly& a, const DensePoly& b, OpCounter ops = nullptr)
{
    return divrem(a, b, ops).second;
}

inline DensePoly mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& m, OpCounter ops = nullptr)
{
    return rem(mul(a, b, ops), m, ops);
}

// Integer coefficients above this size abort powering over Z.
inline constexpr std::size_t integer_coeff_bit_budget = std::size_t{1} << 24;

inline void check_coeff_bits(const DensePoly& a)
{
    if (a.ring().is_field())
        return;
    for (const Int& c : a.coeffs())
        if (bit_length(c) > integer_coeff_bit_budget)
            fail(ErrorKind::Budget, "integer coefficient growth exceeds the bit budget");
}

// base^e mod m by left-to-right binary powering.
inline DensePoly powmod(const DensePoly& base, const Natural& e, const DensePoly& m, OpCounter ops = nullptr)
{
    DensePoly b = rem(base, m, ops);
    DensePoly r = rem(DensePoly::constant(base.ring(), Int(1)), m, ops);
    for (std::size_t i = e.bit_length(); i-- > 0;) {
        r = mulmod(r, r, m, ops);
        if (e.bit(i))
            r = mulmod(r, b, m, ops);
        check_coeff_bits(r);
    }
    return r;
}

inline DensePoly monic(const DensePoly& a)
{
    if (a.is_zero())
        return a;
    require_field(a.ring(), "monic");
    return scale(a, a.ring().inv(a.leading()));
}

// Monic gcd over a prime field.
inline DensePoly gcd(DensePoly a, DensePoly b, OpCounter ops = nullptr)
{
    require_field(a.ring(), "gcd");
    while (!b.is_zero()) {
        DensePoly r = rem(a, b, ops);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline Int eval(const DensePoly& a, const Int& x)
{
    Int acc = 0;
    for (std::size_t i = a.length(); i-- > 0;) {
        acc = acc * x + a[i];
        a.ring().reduce_in_place(acc);
    }
    return acc;
}

inline DensePoly derivative(const DensePoly& a)
{
    if (a.length() <= 1)
        return DensePoly(a.ring());
    std::vector<Int> c(a.length() - 1);
    for (std::size_t i = 1; i < a.length(); ++i)
        c[i - 1] = a[i] * static_cast<unsigned long>(i);
    return DensePoly(a.ring(), std::move(c));
}

} // namespace dense

// Dense conversions refuse degrees at or above this many coefficients unless told otherwise.
inline constexpr std::size_t default_dense_budget = std::size_t{1} << 24;

inline DensePoly to_dense(const SparsePoly& f, std::size_t budget = default_dense_budget)
{
    f.require_univariate("to_dense");
    if (f.is_zero())
        return DensePoly(f.ring());
    const Natural& deg = f.exponent(f.size() - 1);
    if (!deg.is_small() || deg.word() >= budget)
        fail(ErrorKind::Budget, "degree " + deg.to_string() + " exceeds the dense budget of " + std::to_string(budget));
    std::vector<Int> c(deg.word() + 1, Int(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        c[f.exponent(i).word()] = f.coeff(i);
    return DensePoly(f.ring(), std::move(c));
}

inline SparsePoly from_dense(const DensePoly& d)
{
    SparsePoly out(d.ring(), 1);
    for (std::size_t i = 0; i < d.length(); ++i)
        if (sgn(d[i]) != 0)
            out.push_back(d[i], Natural(i));
    return out;
}

//
// f(h) mod g as sum_i c_i * (h^e_i mod g). Each power is computed by binary
// powering modulo g, so the cost is polynomial in t, deg g and log deg f.
//
inline DensePoly eval_mod(const SparsePoly& f, const DensePoly& h, const DensePoly& g, OpCounter ops = nullptr)
{
    f.require_univariate("eval_mod");
    if (g.is_zero())
        fail(ErrorKind::DivisionByZero, "eval_mod modulus is the zero polynomial");
    if (!(f.ring() == g.ring()) || !(h.ring() == g.ring()))
        fail(ErrorKind::RingMismatch, "eval_mod operands over different rings");
    if (h.length() >= g.length() && !h.is_zero())
        fail(ErrorKind::Degree, "eval_mod requires deg h < deg g");
    if (g.ring().is_integers() && cmpabs(g.leading(), 1) != 0)
        fail(ErrorKind::InexactDivision, "eval_mod over Z needs a divisor with unit leading coefficient");
    std::vector<Int> acc(g.length() > 0 ? g.length() - 1 : 0, Int(0));
    // Consecutive exponents share powering work: h^e_{i+1} = h^e_i * h^(e_{i+1}-e_i).
    DensePoly cur = dense::rem(DensePoly::constant(g.ring(), Int(1)), g, ops);
    Natural prev(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Natural& e = f.exponent(i);
        cur = dense::mulmod(cur, dense::powmod(h, e - prev, g, ops), g, ops);
        prev = e;
        for (std::size_t j = 0; j < cur.length(); ++j)
            mpz_addmul(acc[j].get_mpz_t(), f.coeff(i).get_mpz_t(), cur[j].get_mpz_t());
        dense::count(ops, 2 * cur.length());
    }
    return DensePoly(g.ring(), std::move(acc));
}

} // namespace lacunary

#endif

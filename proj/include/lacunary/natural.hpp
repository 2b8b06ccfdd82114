#ifndef LACUNARY_NATURAL_HPP
#define LACUNARY_NATURAL_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace lacunary
{

static_assert(sizeof(unsigned long) == 8, "mpz word conversions assume LP64");

using Int = mpz_class;

inline std::size_t bit_length(const Int& v)
{
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Sign of |a| - |b|.
inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const Int& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }
inline int cmpabs(const Int& a, int b) { return mpz_cmpabs_ui(a.get_mpz_t(), static_cast<unsigned long>(b < 0 ? -b : b)); }

//
// Arbitrary-precision natural number used for exponents.
//
// Values below 2^64 live in a machine word; anything larger is promoted to a
// heap-allocated mpz. The representation is normalized: big_ is set iff the
// value does not fit in 64 bits, so equality can compare representations.
//
class Natural
{
public:
    Natural() noexcept = default;

    template <std::integral I>
    Natural(I v) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<I>) {
            if (v < 0)
                fail(ErrorKind::Precondition, "negative value for a natural number");
        }
        small_ = static_cast<std::uint64_t>(v);
    }

    explicit Natural(const Int& v)
    {
        if (sgn(v) < 0)
            fail(ErrorKind::Precondition, "negative value for a natural number");
        if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 64)
            small_ = mpz_get_ui(v.get_mpz_t());
        else
            big_ = std::make_unique<Int>(v);
    }

    Natural(const Natural& o) : small_(o.small_), big_(o.big_ ? std::make_unique<Int>(*o.big_) : nullptr) {}
    Natural(Natural&&) noexcept = default;
    Natural& operator=(const Natural& o)
    {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<Int>(*o.big_) : nullptr;
        }
        return *this;
    }
    Natural& operator=(Natural&&) noexcept = default;
    ~Natural() = default;

    static Natural from_string(std::string_view s)
    {
        if (s.empty())
            fail(ErrorKind::Parse, "empty natural number");
        for (char c : s)
            if (c < '0' || c > '9')
                fail(ErrorKind::Parse, "invalid natural number '" + std::string(s) + "'");
        return Natural(Int(std::string(s)));
    }

    static Natural pow2(std::size_t k)
    {
        if (k < 64)
            return Natural(std::uint64_t{1} << k);
        Int v;
        mpz_setbit(v.get_mpz_t(), k);
        return Natural(v);
    }

    bool is_small() const noexcept { return !big_; }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }

    // Only valid when is_small().
    std::uint64_t word() const noexcept { return small_; }

    Int to_int() const
    {
        if (big_)
            return *big_;
        return Int(static_cast<unsigned long>(small_));
    }

    std::size_t bit_length() const
    {
        if (big_)
            return mpz_sizeinbase(big_->get_mpz_t(), 2);
        return small_ == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(small_));
    }

    bool bit(std::size_t i) const
    {
        if (big_)
            return mpz_tstbit(big_->get_mpz_t(), i) != 0;
        return i < 64 && ((small_ >> i) & 1u);
    }

    bool is_odd() const { return bit(0); }

    std::string to_string() const
    {
        if (big_)
            return big_->get_str();
        return std::to_string(small_);
    }

    friend bool operator==(const Natural& a, const Natural& b) noexcept
    {
        if (a.big_ || b.big_)
            return a.big_ && b.big_ && cmp(*a.big_, *b.big_) == 0;
        return a.small_ == b.small_;
    }

    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept
    {
        if (!a.big_ && !b.big_)
            return a.small_ <=> b.small_;
        if (!a.big_)
            return std::strong_ordering::less;
        if (!b.big_)
            return std::strong_ordering::greater;
        const int c = cmp(*a.big_, *b.big_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend Natural operator+(const Natural& a, const Natural& b)
    {
        if (!a.big_ && !b.big_) {
            std::uint64_t s;
            if (!__builtin_add_overflow(a.small_, b.small_, &s))
                return Natural(s);
        }
        return Natural(Int(a.to_int() + b.to_int()));
    }

    // Throws Precondition when b > a.
    friend Natural operator-(const Natural& a, const Natural& b)
    {
        if (!a.big_ && !b.big_) {
            if (b.small_ > a.small_)
                fail(ErrorKind::Precondition, "natural subtraction underflow");
            return Natural(a.small_ - b.small_);
        }
        return Natural(Int(a.to_int() - b.to_int()));
    }

    friend Natural operator*(const Natural& a, const Natural& b)
    {
        if (!a.big_ && !b.big_) {
            std::uint64_t p;
            if (!__builtin_mul_overflow(a.small_, b.small_, &p))
                return Natural(p);
        }
        return Natural(Int(a.to_int() * b.to_int()));
    }

    friend Natural operator/(const Natural& a, const Natural& b)
    {
        if (b.is_zero())
            fail(ErrorKind::Precondition, "natural division by zero");
        if (!a.big_ && !b.big_)
            return Natural(a.small_ / b.small_);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.to_int().get_mpz_t(), b.to_int().get_mpz_t());
        return Natural(q);
    }

    friend Natural operator%(const Natural& a, const Natural& b)
    {
        if (b.is_zero())
            fail(ErrorKind::Precondition, "natural division by zero");
        if (!a.big_ && !b.big_)
            return Natural(a.small_ % b.small_);
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), a.to_int().get_mpz_t(), b.to_int().get_mpz_t());
        return Natural(r);
    }

    Natural& operator+=(const Natural& o) { return *this = *this + o; }
    Natural& operator-=(const Natural& o) { return *this = *this - o; }
    Natural& operator*=(const Natural& o) { return *this = *this * o; }

    friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

private:
    std::uint64_t small_ = 0;
    std::unique_ptr<Int> big_;
};

inline Natural gcd(const Natural& a, const Natural& b)
{
    if (a.is_small() && b.is_small()) {
        std::uint64_t x = a.word(), y = b.word();
        while (y != 0) {
            const std::uint64_t r = x % y;
            x = y;
            y = r;
        }
        return Natural(x);
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), a.to_int().get_mpz_t(), b.to_int().get_mpz_t());
    return Natural(g);
}

inline Natural pow(const Natural& base, std::size_t k)
{
    Natural r(1), b(base);
    while (k > 0) {
        if (k & 1u)
            r *= b;
        k >>= 1;
        if (k > 0)
            b *= b;
    }
    return r;
}

} // namespace lacunary

#endif

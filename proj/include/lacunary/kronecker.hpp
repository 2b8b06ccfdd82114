#ifndef LACUNARY_KRONECKER_HPP
#define LACUNARY_KRONECKER_HPP

#include <vector>

#include "error.hpp"
#include "natural.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

// e_1 + e_2*D + ... + e_n*D^(n-1); every e_v must be below D.
inline Natural kronecker_pack_exponent(std::span<const Natural> e, const Natural& bound)
{
    Natural acc(0);
    for (std::size_t v = e.size(); v-- > 0;) {
        if (e[v] >= bound)
            fail(ErrorKind::Bound, "exponent " + e[v].to_string() + " is not below the packing bound " + bound.to_string());
        acc = acc * bound + e[v];
    }
    return acc;
}

//
// f(z, z^D, ..., z^(D^(n-1))). Colex order on tuples with entries below D
// coincides with numeric order on the packed exponents, so terms are
// copied over without re-sorting.
//
inline SparsePoly kronecker_pack(const SparsePoly& f, const Natural& bound)
{
    if (bound < Natural(1))
        fail(ErrorKind::Bound, "packing bound must be positive");
    SparsePoly out(f.ring(), 1);
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out.push_back(f.coeff(i), kronecker_pack_exponent(f.exponents(i), bound));
    return out;
}

// Inverse map by D-adic expansion of each exponent.
inline SparsePoly kronecker_unpack(const SparsePoly& g, const Natural& bound, std::size_t nvars)
{
    g.require_univariate("kronecker_unpack");
    if (bound < Natural(1))
        fail(ErrorKind::Bound, "packing bound must be positive");
    SparsePoly out(g.ring(), nvars);
    out.reserve(g.size());
    if (g.is_zero())
        return out;
    const Natural limit = pow(bound, nvars);
    std::vector<Natural> e(nvars);
    for (std::size_t i = 0; i < g.size(); ++i) {
        Natural rest = g.exponent(i);
        if (rest >= limit)
            fail(ErrorKind::Bound, "exponent " + rest.to_string() + " is not below D^n = " + limit.to_string());
        for (std::size_t v = 0; v < nvars; ++v) {
            if (v + 1 == nvars) {
                e[v] = std::move(rest);
                rest = Natural(0);
            } else {
                e[v] = rest % bound;
                rest = rest / bound;
            }
        }
        out.push_back(g.coeff(i), e);
    }
    return out;
}

} // namespace lacunary

#endif

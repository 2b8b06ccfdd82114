// Conversions between library polynomials and the oracle representation.

#ifndef LACUNARY_TEST_SUPPORT_HPP
#define LACUNARY_TEST_SUPPORT_HPP

#include "lacunary/lacunary.hpp"
#include "oracles.hpp"

namespace support
{

inline oracle::PolyMap to_map(const lacunary::SparsePoly& f)
{
    oracle::PolyMap m;
    for (std::size_t i = 0; i < f.size(); ++i) {
        oracle::Exps e;
        for (const auto& x : f.exponents(i))
            e.push_back(x.to_int());
        m[e] = f.coeff(i);
    }
    return m;
}

inline lacunary::SparsePoly from_map(const oracle::PolyMap& m, const lacunary::RingSpec& ring, std::size_t nvars)
{
    std::vector<lacunary::Term> raw;
    for (const auto& [e, c] : m) {
        lacunary::Term t{c, {}};
        for (const auto& x : e)
            t.exponents.emplace_back(x);
        raw.push_back(std::move(t));
    }
    return lacunary::SparsePoly::canonicalize(std::move(raw), nvars, ring);
}

inline lacunary::SparsePoly uni(std::initializer_list<std::pair<long, unsigned long>> terms,
                                const lacunary::RingSpec& ring = lacunary::RingSpec::integers())
{
    std::vector<std::pair<lacunary::Int, lacunary::Natural>> t;
    for (const auto& [c, e] : terms)
        t.emplace_back(lacunary::Int(c), lacunary::Natural(e));
    return lacunary::SparsePoly::univariate(t, ring);
}

} // namespace support

#endif

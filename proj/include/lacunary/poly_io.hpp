#ifndef LACUNARY_POLY_IO_HPP
#define LACUNARY_POLY_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

//
// Text format:
//
//   sp 1
//   ring Z            (or: ring Zp <p>)
//   nvars <n>
//   terms <t>
//   <coeff> <e1> ... <en>     (t lines)
//
// Reading canonicalizes; writing emits canonical order, so a canonical file
// round-trips byte for byte.
//
namespace detail
{

inline std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        const std::size_t j = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (j < i)
            out.push_back(line.substr(j, i - j));
    }
    return out;
}

inline Int parse_int(const std::string& s, std::size_t line)
{
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size())
        fail(ErrorKind::Parse, "line " + std::to_string(line) + ": empty integer");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            fail(ErrorKind::Parse, "line " + std::to_string(line) + ": invalid integer '" + s + "'");
    return Int(s);
}

inline std::size_t parse_count(const std::string& s, std::size_t line)
{
    const Natural n = Natural::from_string(s);
    if (!n.is_small() || n.word() > (std::uint64_t{1} << 40))
        fail(ErrorKind::Parse, "line " + std::to_string(line) + ": count too large");
    return static_cast<std::size_t>(n.word());
}

} // namespace detail

inline SparsePoly read_poly(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    auto next = [&](const char* what) {
        while (std::getline(in, line)) {
            ++lineno;
            auto tok = detail::split_ws(line);
            if (!tok.empty())
                return tok;
        }
        fail(ErrorKind::Parse, std::string("unexpected end of input, expected ") + what);
    };

    auto magic = next("header");
    if (magic.size() != 2 || magic[0] != "sp" || magic[1] != "1")
        fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'sp 1'");

    auto ring_tok = next("ring");
    RingSpec ring;
    if (ring_tok.size() == 2 && ring_tok[0] == "ring" && ring_tok[1] == "Z") {
        ring = RingSpec::integers();
    } else if (ring_tok.size() == 3 && ring_tok[0] == "ring" && ring_tok[1] == "Zp") {
        const Int p = detail::parse_int(ring_tok[2], lineno);
        try {
            ring = RingSpec::prime_field(p);
        } catch (const Error& e) {
            fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + e.what());
        }
    } else {
        fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'ring Z' or 'ring Zp <p>'");
    }

    auto nv = next("nvars");
    if (nv.size() != 2 || nv[0] != "nvars")
        fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'nvars <n>'");
    const std::size_t n = detail::parse_count(nv[1], lineno);
    if (n == 0)
        fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": nvars must be positive");

    auto tt = next("terms");
    if (tt.size() != 2 || tt[0] != "terms")
        fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 'terms <t>'");
    const std::size_t t = detail::parse_count(tt[1], lineno);

    std::vector<Term> raw;
    raw.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        auto tok = next("term");
        if (tok.size() != n + 1)
            fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(n + 1) + " fields");
        Term term{detail::parse_int(tok[0], lineno), {}};
        term.exponents.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            try {
                term.exponents.push_back(Natural::from_string(tok[v + 1]));
            } catch (const Error&) {
                fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": invalid exponent '" + tok[v + 1] + "'");
            }
        }
        raw.push_back(std::move(term));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::split_ws(line).empty())
            fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": trailing content");
    }
    return SparsePoly::canonicalize(std::move(raw), n, ring);
}

inline SparsePoly parse_poly(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return read_poly(in);
}

inline void write_poly(std::ostream& out, const SparsePoly& f)
{
    out << "sp 1\n";
    out << "ring " << f.ring().to_string() << "\n";
    out << "nvars " << f.nvars() << "\n";
    out << "terms " << f.size() << "\n";
    std::string buf;
    for (std::size_t i = 0; i < f.size(); ++i) {
        buf = f.coeff(i).get_str();
        for (const Natural& e : f.exponents(i)) {
            buf += ' ';
            buf += e.to_string();
        }
        buf += '\n';
        out << buf;
    }
}

inline std::string to_text(const SparsePoly& f)
{
    std::ostringstream out;
    write_poly(out, f);
    return out.str();
}

inline SparsePoly read_poly_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path);
    return read_poly(in);
}

inline void write_poly_file(const std::string& path, const SparsePoly& f)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + path);
    write_poly(out, f);
}

} // namespace lacunary

#endif

#ifndef LACUNARY_BENCH_HPP
#define LACUNARY_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "interp.hpp"
#include "natural.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

namespace lacunary
{

struct BenchRecord {
    std::string operation;
    std::size_t t_f = 0;
    std::size_t t_g = 0;
    std::size_t t_out = 0;
    std::size_t log2_degree_bound = 0;
    std::uint64_t ring_ops = 0;
    std::uint64_t comparisons = 0;
    std::size_t peak_heap = 0;
    std::size_t probes = 0;
    std::uint64_t wall_nanoseconds = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::string_view bench_csv_header =
    "operation,t_f,t_g,t_out,log2_degree_bound,ring_ops,comparisons,peak_heap,probes,wall_nanoseconds,seed";

inline std::string to_csv(const BenchRecord& r)
{
    std::string s = r.operation;
    for (std::uint64_t v : {std::uint64_t(r.t_f), std::uint64_t(r.t_g), std::uint64_t(r.t_out),
                            std::uint64_t(r.log2_degree_bound), r.ring_ops, r.comparisons, std::uint64_t(r.peak_heap),
                            std::uint64_t(r.probes), r.wall_nanoseconds, r.seed}) {
        s += ',';
        s += std::to_string(v);
    }
    return s;
}

// splitmix64 step: per-trial seeds independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

//
// Random polynomial with exactly `terms` distinct monomials, each exponent
// below `bound`, and nonzero coefficients of magnitude below 2^coeff_bits
// (uniform nonzero residues over Zp).
//
inline SparsePoly random_poly(Rng& rng, const RingSpec& ring, std::size_t nvars, std::size_t terms, const Natural& bound,
                              std::size_t coeff_bits = 16)
{
    if (nvars == 0)
        fail(ErrorKind::Arity, "random_poly needs at least one variable");
    const Natural space = pow(bound, nvars);
    if (Natural(terms) > space)
        fail(ErrorKind::Precondition, "more terms requested than monomials below the bound");
    const Int b = bound.to_int();
    std::set<std::vector<Natural>, decltype([](const std::vector<Natural>& x, const std::vector<Natural>& y) {
                 return colex_compare(x, y) < 0;
             })>
        seen;
    std::vector<Term> raw;
    raw.reserve(terms);
    Int cb = 1;
    mpz_mul_2exp(cb.get_mpz_t(), cb.get_mpz_t(), coeff_bits);
    while (raw.size() < terms) {
        std::vector<Natural> e(nvars);
        for (auto& v : e)
            v = Natural(random_below(rng, b));
        if (!seen.insert(e).second)
            continue;
        Int c;
        if (ring.is_field()) {
            c = random_range(rng, Int(1), Int(ring.modulus() - 1));
        } else {
            do {
                c = random_below(rng, Int(2 * cb - 1)) - (cb - 1);
            } while (sgn(c) == 0);
        }
        raw.push_back(Term{std::move(c), std::move(e)});
    }
    return SparsePoly::canonicalize(std::move(raw), nvars, ring);
}

struct BenchOptions {
    std::size_t terms = 100;
    std::size_t degbits = 60;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

inline const std::vector<std::string>& bench_operations()
{
    static const std::vector<std::string> ops{"add", "mul", "mul-naive", "mul-kronecker", "divmod", "divides", "interp",
                                              "interp-early"};
    return ops;
}

// One trial of `op` with inputs drawn from the trial seed.
inline BenchRecord bench_trial(const std::string& op, const BenchOptions& opt, std::uint64_t trial_seed)
{
    Rng rng(trial_seed);
    const RingSpec Z = RingSpec::integers();
    const Natural bound = Natural::pow2(opt.degbits);
    BenchRecord rec;
    rec.operation = op;
    rec.log2_degree_bound = opt.degbits;
    rec.seed = trial_seed;
    using clock = std::chrono::steady_clock;
    clock::time_point start;
    auto stop = [&]() {
        rec.wall_nanoseconds =
            static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
    };
    auto fill = [&](const ArithStats& st) {
        rec.ring_ops = st.ring_ops;
        rec.comparisons = st.comparisons;
        rec.peak_heap = st.peak_heap;
    };

    if (op == "add" || op == "mul" || op == "mul-naive" || op == "mul-kronecker") {
        const SparsePoly f = random_poly(rng, Z, 1, opt.terms, bound);
        const SparsePoly g = random_poly(rng, Z, 1, opt.terms, bound);
        rec.t_f = f.size();
        rec.t_g = g.size();
        ArithStats st;
        start = clock::now();
        SparsePoly h(Z, 1);
        if (op == "add")
            h = add(f, g, &st);
        else if (op == "mul")
            h = mul(f, g, &st);
        else if (op == "mul-naive")
            h = mul_naive(f, g, &st);
        else
            h = mul_kronecker(f, g, std::size_t{1} << 16, &st);
        stop();
        fill(st);
        rec.t_out = h.size();
    } else if (op == "divmod") {
        const SparsePoly q = random_poly(rng, Z, 1, opt.terms, bound);
        SparsePoly g = random_poly(rng, Z, 1, opt.terms, bound);
        // unit leading coefficient keeps the division exact over Z
        std::vector<Term> raw;
        for (std::size_t i = 0; i < g.size(); ++i)
            raw.push_back(g.term(i));
        raw.back().coeff = 1;
        g = SparsePoly::canonicalize(std::move(raw), 1, Z);
        const SparsePoly f = mul(q, g);
        rec.t_f = f.size();
        rec.t_g = g.size();
        start = clock::now();
        DivResult d = divmod_heap(f, g);
        stop();
        fill(d.stats);
        rec.t_out = d.quotient.size() + d.remainder.size();
    } else if (op == "divides") {
        // dense divisor of degree below 32, supersparse cofactor
        SparsePoly g = random_poly(rng, Z, 1, 4, Natural(31));
        g = add(g, SparsePoly::univariate({{Int(1), Natural(31)}}, Z));
        const SparsePoly s = random_poly(rng, Z, 1, std::max<std::size_t>(1, opt.terms / 4), bound);
        const SparsePoly f = mul(g, s);
        rec.t_f = f.size();
        rec.t_g = g.size();
        ArithStats st;
        start = clock::now();
        const bool r = divides(f, g, {}, &st);
        stop();
        fill(st);
        rec.t_out = r ? 1 : 0;
    } else if (op == "interp" || op == "interp-early") {
        const SparsePoly f = random_poly(rng, Z, 1, opt.terms, bound, 32);
        rec.t_f = f.size();
        ProbeCountingOracle bb = ProbeCountingOracle::from_reference(f);
        InterpConfig cfg;
        cfg.T = opt.terms;
        cfg.D = bound;
        cfg.H = Int(1) << 32;
        cfg.seed = trial_seed;
        cfg.early_termination = op == "interp-early";
        start = clock::now();
        const SparsePoly g = interpolate(bb, cfg);
        stop();
        if (!(g == f))
            fail(ErrorKind::VerificationFailed, "benchmark interpolation did not reproduce its input");
        rec.t_out = g.size();
        rec.probes = bb.probes();
    } else {
        fail(ErrorKind::Precondition, "unknown benchmark operation '" + op + "'");
    }
    return rec;
}

// Trials run on `jobs` threads; records come back in trial order.
inline std::vector<BenchRecord> run_bench(const std::string& op, const BenchOptions& opt)
{
    if (std::find(bench_operations().begin(), bench_operations().end(), op) == bench_operations().end())
        fail(ErrorKind::Precondition, "unknown benchmark operation '" + op + "'");
    std::vector<BenchRecord> out(opt.trials);
    std::vector<std::exception_ptr> errors(opt.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < opt.trials;) {
            try {
                out[i] = bench_trial(op, opt, derive_seed(opt.seed, i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, opt.trials));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace lacunary

#endif

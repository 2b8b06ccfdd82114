// Command-line front end for the lacunary library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacunary/lacunary.hpp"

using namespace lacunary;

namespace
{

struct Common {
    std::string output;
    bool stats = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("-o,--output", c.output, "Write the result here instead of standard output");
    cmd->add_flag("--stats", c.stats, "Print key=value statistics on standard error");
}

void emit_poly(const Common& c, const SparsePoly& f)
{
    if (c.output.empty())
        write_poly(std::cout, f);
    else
        write_poly_file(c.output, f);
}

void emit_text(const Common& c, const std::string& text)
{
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + c.output);
    out << text;
}

void print_stats(const Common& c, const ArithStats& st)
{
    if (!c.stats)
        return;
    std::cerr << "ring_ops=" << st.ring_ops << "\n"
              << "comparisons=" << st.comparisons << "\n"
              << "peak_heap=" << st.peak_heap << "\n"
              << "output_terms=" << st.output_terms << "\n";
    if (st.pseudo_division)
        std::cerr << "pseudo_division=1\n";
    if (st.quadratic_path)
        std::cerr << "quadratic_path=1\n";
}

// Accepts decimal or 2^k.
Natural parse_natural_arg(const std::string& s)
{
    const auto caret = s.find('^');
    if (caret != std::string::npos && s.substr(0, caret) == "2") {
        const Natural k = Natural::from_string(s.substr(caret + 1));
        if (!k.is_small() || k.word() > (1u << 24))
            fail(ErrorKind::Parse, "exponent in '" + s + "' too large");
        return Natural::pow2(k.word());
    }
    return Natural::from_string(s);
}

Int parse_int_arg(const std::string& s)
{
    const auto caret = s.find('^');
    if (caret != std::string::npos)
        return parse_natural_arg(s).to_int();
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0)
        fail(ErrorKind::Parse, "invalid integer '" + s + "'");
    return v;
}

std::size_t dense_budget_default()
{
    if (const char* env = std::getenv("LACUNARY_DENSE_BUDGET")) {
        const Natural n = Natural::from_string(env);
        if (!n.is_small())
            fail(ErrorKind::Parse, "LACUNARY_DENSE_BUDGET is too large");
        return static_cast<std::size_t>(n.word());
    }
    return std::size_t{1} << 16;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Arithmetic, interpolation and factoring fragments for supersparse polynomials"};
    app.require_subcommand(1);

    Common common;
    std::string file_a, file_b;
    std::string algo = "heap";

    auto binary = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("f", file_a, "First operand")->required();
        cmd->add_option("g", file_b, "Second operand")->required();
        add_common(cmd, common);
        return cmd;
    };
    auto unary = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("f", file_a, "Input polynomial")->required();
        add_common(cmd, common);
        return cmd;
    };

    CLI::App* c_add = binary("add", "f + g");
    CLI::App* c_sub = binary("sub", "f - g");
    CLI::App* c_mul = binary("mul", "f * g");
    c_mul->add_option("--algo", algo, "heap, naive or kronecker")->check(CLI::IsMember({"heap", "naive", "kronecker"}));

    CLI::App* c_divmod = binary("divmod", "Quotient and remainder of univariate f by g");
    std::string rem_file;
    bool pseudo = false;
    c_divmod->add_option("--remainder", rem_file, "Write the remainder here");
    c_divmod->add_flag("--pseudo", pseudo, "Allow pseudo-division over Z");

    CLI::App* c_divides = binary("divides", "Does g divide f?");
    std::optional<std::size_t> dense_budget;
    c_divides->add_option("--dense-budget", dense_budget, "Largest divisor degree for the dense path");

    CLI::App* c_eval = unary("eval", "Value at a point");
    std::vector<std::string> point;
    std::string modulus;
    c_eval->add_option("--point", point, "Coordinates")->required()->delimiter(',');
    c_eval->add_option("--mod", modulus, "Evaluate modulo this prime");

    CLI::App* c_evalmod = unary("evalmod", "f(h) mod g for dense univariate h, g");
    c_evalmod->set_help_flag("--help", "Print this help message and exit");
    std::string file_h, file_g;
    c_evalmod->add_option("--h", file_h, "Polynomial h")->required();
    c_evalmod->add_option("--g", file_g, "Modulus polynomial g")->required();

    std::string bound_str;
    std::size_t nvars = 1;
    CLI::App* c_pack = unary("pack", "Kronecker substitution");
    c_pack->add_option("--bound", bound_str, "Per-variable bound D")->required();
    CLI::App* c_unpack = unary("unpack", "Inverse Kronecker substitution");
    c_unpack->add_option("--bound", bound_str, "Per-variable bound D")->required();
    c_unpack->add_option("--nvars", nvars, "Number of variables")->required();

    CLI::App* c_interp = app.add_subcommand("interp", "Sparse interpolation of a reference polynomial black box");
    std::string oracle_file, d_str, h_str;
    std::size_t T = 0, lambda = 2, verify_trials = 0;
    std::uint64_t seed = 1;
    bool early = false;
    c_interp->add_option("--oracle", oracle_file, "Reference polynomial")->required();
    c_interp->add_option("--T", T, "Term bound")->required();
    c_interp->add_option("--D", d_str, "Degree bound (decimal or 2^k)")->required();
    c_interp->add_option("--H", h_str, "Height bound");
    c_interp->add_flag("--early", early, "Early termination");
    c_interp->add_option("--lambda", lambda, "Early termination window");
    c_interp->add_option("--verify", verify_trials, "Verification trials");
    c_interp->add_option("--seed", seed, "Random seed");
    add_common(c_interp, common);

    CLI::App* c_gap = unary("gapsplit", "Split at large exponent gaps");
    std::string gamma_str;
    c_gap->add_option("--gamma", gamma_str, "Gap threshold");

    CLI::App* c_roots = unary("roots-linear", "Rational roots (linear factors) over Z");
    c_roots->add_option("--seed", seed, "Random seed");

    CLI::App* c_pp = unary("perfect-power", "Detect f = g^k");
    double confidence = 1e-9;
    c_pp->add_option("--confidence", confidence, "Target error probability");
    c_pp->add_option("--seed", seed, "Random seed");

    CLI::App* c_cert = unary("certify-power", "Check f = g^k exactly");
    std::string k_str;
    c_cert->add_option("--g", file_g, "Candidate root")->required();
    c_cert->add_option("--k", k_str, "Power")->required();

    CLI::App* c_bench = app.add_subcommand("bench", "Benchmark harness emitting CSV");
    std::string bench_op;
    BenchOptions bopt;
    c_bench->add_option("op", bench_op, "Operation")->required()->check(CLI::IsMember(bench_operations()));
    c_bench->add_option("--terms", bopt.terms, "Terms per operand");
    c_bench->add_option("--degbits", bopt.degbits, "log2 of the degree bound");
    c_bench->add_option("--trials", bopt.trials, "Number of trials");
    c_bench->add_option("--seed", bopt.seed, "Base seed");
    c_bench->add_option("--jobs", bopt.jobs, "Concurrent trials");
    add_common(c_bench, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_add->parsed() || c_sub->parsed() || c_mul->parsed()) {
            const SparsePoly f = read_poly_file(file_a), g = read_poly_file(file_b);
            ArithStats st;
            SparsePoly h(f.ring(), f.nvars());
            if (c_add->parsed())
                h = add(f, g, &st);
            else if (c_sub->parsed())
                h = sub(f, g, &st);
            else if (algo == "naive")
                h = mul_naive(f, g, &st);
            else if (algo == "kronecker")
                h = mul_kronecker(f, g, dense_budget_default(), &st);
            else
                h = mul(f, g, &st);
            emit_poly(common, h);
            print_stats(common, st);
        } else if (c_divmod->parsed()) {
            const SparsePoly f = read_poly_file(file_a), g = read_poly_file(file_b);
            DivOptions opt;
            opt.allow_pseudo = pseudo;
            const DivResult d = divmod_heap(f, g, opt);
            emit_poly(common, d.quotient);
            if (!rem_file.empty())
                write_poly_file(rem_file, d.remainder);
            else
                write_poly(std::cout, d.remainder);
            print_stats(common, d.stats);
            if (common.stats && d.multiplier != 1)
                std::cerr << "multiplier=" << d.multiplier.get_str() << "\n";
        } else if (c_divides->parsed()) {
            const SparsePoly f = read_poly_file(file_a), g = read_poly_file(file_b);
            DividesOptions opt;
            opt.dense_budget = dense_budget.value_or(dense_budget_default());
            ArithStats st;
            const bool r = divides(f, g, opt, &st);
            emit_text(common, r ? "true\n" : "false\n");
            print_stats(common, st);
        } else if (c_eval->parsed()) {
            const SparsePoly f = read_poly_file(file_a);
            std::vector<Int> pt;
            for (const auto& s : point)
                pt.push_back(parse_int_arg(s));
            Int v;
            if (!modulus.empty())
                v = eval(f, pt, RingSpec::prime_field(parse_int_arg(modulus)));
            else
                v = eval(f, pt);
            emit_text(common, v.get_str() + "\n");
        } else if (c_evalmod->parsed()) {
            const SparsePoly f = read_poly_file(file_a);
            const SparsePoly h = read_poly_file(file_h), g = read_poly_file(file_g);
            std::uint64_t ops = 0;
            const std::size_t budget = dense_budget_default() + 1;
            const DensePoly r = eval_mod(f, to_dense(h, budget), to_dense(g, budget), &ops);
            emit_poly(common, from_dense(r));
            if (common.stats)
                std::cerr << "ring_ops=" << ops << "\n";
        } else if (c_pack->parsed()) {
            emit_poly(common, kronecker_pack(read_poly_file(file_a), parse_natural_arg(bound_str)));
        } else if (c_unpack->parsed()) {
            emit_poly(common, kronecker_unpack(read_poly_file(file_a), parse_natural_arg(bound_str), nvars));
        } else if (c_interp->parsed()) {
            ProbeCountingOracle bb = ProbeCountingOracle::from_reference(read_poly_file(oracle_file));
            InterpConfig cfg;
            cfg.T = T;
            cfg.D = parse_natural_arg(d_str);
            if (!h_str.empty())
                cfg.H = parse_int_arg(h_str);
            cfg.early_termination = early;
            cfg.lambda = lambda;
            cfg.verify_trials = verify_trials;
            cfg.seed = seed;
            const SparsePoly f = interpolate(bb, cfg);
            emit_poly(common, f);
            if (common.stats)
                std::cerr << "probes=" << bb.probes() << "\n" << "terms=" << f.size() << "\n";
        } else if (c_gap->parsed()) {
            const SparsePoly f = read_poly_file(file_a);
            const Natural gamma = gamma_str.empty() ? default_gap(f) : parse_natural_arg(gamma_str);
            const GapSplit s = gap_split(f, gamma);
            std::ostringstream out;
            out << "blocks " << s.blocks.size() << "\n";
            for (const GapBlock& b : s.blocks) {
                out << "shift " << b.shift << "\n";
                write_poly(out, b.poly);
            }
            emit_text(common, out.str());
        } else if (c_roots->parsed()) {
            Rng rng(seed);
            std::ostringstream out;
            for (const RationalRoot& r : linear_rational_factors(read_poly_file(file_a), rng))
                out << r.a.get_str() << " " << r.b.get_str() << "\n";
            emit_text(common, out.str());
        } else if (c_pp->parsed()) {
            Rng rng(seed);
            PowerOptions opt;
            opt.confidence = confidence;
            const PowerReport rep = detect_perfect_power(read_poly_file(file_a), rng, opt);
            std::ostringstream out;
            out << "k=" << rep.k << "\n"
                << "error_bound=" << rep.error_bound << "\n"
                << "content=" << rep.content.get_str() << "\n"
                << "witnesses=" << rep.witnesses.size() << "\n";
            emit_text(common, out.str());
        } else if (c_cert->parsed()) {
            const bool ok = certify_power(read_poly_file(file_a), read_poly_file(file_g), parse_natural_arg(k_str));
            emit_text(common, ok ? "true\n" : "false\n");
        } else if (c_bench->parsed()) {
            std::ostringstream out;
            out << bench_csv_header << "\n";
            for (const BenchRecord& r : run_bench(bench_op, bopt))
                out << to_csv(r) << "\n";
            emit_text(common, out.str());
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "lacunary/lacunary.hpp"
#include "support.hpp"

using namespace lacunary;
using support::uni;
namespace fs = std::filesystem;

namespace
{

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test
{
protected:
    fs::path dir;

    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("sparsepoly_cli_" + std::to_string(::getpid()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name, const SparsePoly& f)
    {
        const std::string p = (dir / name).string();
        write_poly_file(p, f);
        return p;
    }

    static std::string slurp(const std::string& p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    CliRun run(const std::string& args)
    {
        const std::string out = (dir / "stdout.txt").string(), err = (dir / "stderr.txt").string();
        const std::string cmd = std::string(SPARSEPOLY_BIN) + " " + args + " >" + out + " 2>" + err;
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }
};

} // namespace

TEST_F(CliTest, MulWritesOutputFile)
{
    const std::string a = file("a.sp", uni({{1, 1}, {1, 0}})), b = file("b.sp", uni({{1, 1}, {-1, 0}}));
    const std::string c = (dir / "c.sp").string();
    for (const char* algo : {"heap", "naive", "kronecker"}) {
        const CliRun r = run("mul " + a + " " + b + " --algo " + algo + " -o " + c);
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(read_poly_file(c), uni({{1, 2}, {-1, 0}}));
    }
}

TEST_F(CliTest, MatchesLibraryOnRandomInputs)
{
    Rng rng(91);
    for (int trial = 0; trial < 5; ++trial) {
        const SparsePoly f = random_poly(rng, RingSpec::integers(), 1, 30, Natural::pow2(60));
        const SparsePoly g = random_poly(rng, RingSpec::integers(), 1, 30, Natural::pow2(60));
        const std::string a = file("f.sp", f), b = file("g.sp", g);
        EXPECT_EQ(run("add " + a + " " + b).out, to_text(add(f, g)));
        EXPECT_EQ(run("sub " + a + " " + b).out, to_text(sub(f, g)));
        EXPECT_EQ(run("mul " + a + " " + b).out, to_text(mul(f, g)));
    }
}

TEST_F(CliTest, InterpReportsTwoTProbes)
{
    Rng rng(92);
    const SparsePoly f = random_poly(rng, RingSpec::integers(), 1, 50, Natural::pow2(62), 30);
    const std::string fp = file("f.sp", f);
    const CliRun r = run("interp --oracle " + fp + " --T 50 --D 2^62 --seed 7 --stats");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, to_text(f));
    EXPECT_NE(r.err.find("probes=100\n"), std::string::npos) << r.err;
    const CliRun early = run("interp --oracle " + fp + " --T 200 --D 2^62 --early --stats --seed 3");
    ASSERT_EQ(early.code, 0) << early.err;
    EXPECT_EQ(early.out, to_text(f));
}

TEST_F(CliTest, DivmodQuotientBlowUp)
{
    const SparsePoly f = SparsePoly::univariate({{Int(1), Natural(100000)}, {Int(-1), Natural(0)}}, RingSpec::integers());
    const std::string fp = file("f.sp", f), gp = file("g.sp", uni({{1, 1}, {-1, 0}}));
    const std::string q = (dir / "q.sp").string(), r = (dir / "r.sp").string();
    const CliRun res = run("divmod " + fp + " " + gp + " -o " + q + " --remainder " + r);
    ASSERT_EQ(res.code, 0) << res.err;
    const SparsePoly quo = read_poly_file(q);
    EXPECT_EQ(quo.size(), 100000u);
    EXPECT_TRUE(read_poly_file(r).is_zero());
}

TEST_F(CliTest, OtherSubcommands)
{
    const std::string f = file("f.sp", uni({{1, 1000}, {1, 999}, {1, 1}, {1, 0}}));
    EXPECT_EQ(run("divides " + f + " " + file("g.sp", uni({{1, 1}, {1, 0}}))).out, "true\n");
    const Int at2 = (Int(1) << 1000) + (Int(1) << 999) + 3;
    EXPECT_EQ(run("eval " + f + " --point 2").out, at2.get_str() + "\n");
    EXPECT_EQ(run("eval " + f + " --point 2 --mod 101").out,
              eval(read_poly_file(f), std::vector<Int>{Int(2)}, RingSpec::prime_field(Int(101))).get_str() + "\n");
    EXPECT_EQ(run("gapsplit " + f + " --gamma 500").out.substr(0, 9), "blocks 2\n");
    EXPECT_EQ(run("roots-linear " + f).out, "-1 1\n");
    const std::string sq = file("sq.sp", uni({{1, 2}, {2, 1}, {1, 0}}));
    EXPECT_EQ(run("perfect-power " + sq).out.substr(0, 4), "k=2\n");
    EXPECT_EQ(run("certify-power " + sq + " --g " + file("r.sp", uni({{1, 1}, {1, 0}})) + " --k 2").out, "true\n");

    std::vector<Term> raw{{Int(1), {Natural(1), Natural(0)}}, {Int(1), {Natural(0), Natural(2)}}};
    const std::string mv = file("mv.sp", SparsePoly::canonicalize(raw, 2, RingSpec::integers()));
    const CliRun packed = run("pack " + mv + " --bound 3");
    EXPECT_EQ(packed.out, to_text(uni({{1, 1}, {1, 6}})));
    const std::string pk = (dir / "pk.sp").string();
    run("pack " + mv + " --bound 3 -o " + pk);
    EXPECT_EQ(run("unpack " + pk + " --bound 3 --nvars 2").out, slurp(mv));
}

TEST_F(CliTest, BenchIsDeterministicApartFromWallTime)
{
    auto strip = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string line, out;
        while (std::getline(in, line)) {
            // drop wall_nanoseconds (second-to-last field)
            const auto last = line.rfind(','), prev = line.rfind(',', last - 1);
            out += line.substr(0, prev) + line.substr(last) + "\n";
        }
        return out;
    };
    const CliRun a = run("bench mul --terms 20 --degbits 40 --trials 4 --seed 5 --jobs 2");
    const CliRun b = run("bench mul --terms 20 --degbits 40 --trials 4 --seed 5 --jobs 1");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out.substr(0, bench_csv_header.size()), bench_csv_header);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 5);
    EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST_F(CliTest, ExitCodes)
{
    const std::string f = file("f.sp", uni({{1, 1}}));
    const std::string zero = file("z.sp", SparsePoly(RingSpec::integers(), 1));
    const CliRun div0 = run("divmod " + f + " " + zero);
    EXPECT_EQ(div0.code, 1);
    EXPECT_EQ(div0.err.rfind("error: ", 0), 0u);
    EXPECT_EQ(std::count(div0.err.begin(), div0.err.end(), '\n'), 1);
    EXPECT_EQ(run("add " + f + " " + (dir / "missing.sp").string()).code, 1);
    {
        std::ofstream bad(dir / "bad.sp");
        bad << "sp 1\nring Z\n";
    }
    EXPECT_EQ(run("add " + f + " " + (dir / "bad.sp").string()).code, 1);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("mul " + f).code, 2);
    EXPECT_EQ(run("mul " + f + " " + f + " --algo quantum").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

// End-to-end runs of the command-line front end.
#include <cstdlib>
#include <filesystem>
#include <gtest/gtest.h>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "urnwalk/io.hpp"
#include "urnwalk/urn_core.hpp"

using namespace urnwalk;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("urnwalk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        old_ = fs::current_path();
        fs::current_path(dir_);
    }
    void TearDown() override {
        fs::current_path(old_);
        fs::remove_all(dir_);
    }

    static Result run(std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }
    static std::string slurp(const std::string& path) { return io::read_file(path); }
    static void write(const std::string& path, const std::string& text) { io::write_file_atomic(path, text); }

    fs::path dir_, old_;
};

}  // namespace

// ---- evolve ------------------------------------------------------------------------

TEST_F(Cli, EvolveTwoSteps) {
    const auto r = run({"evolve", "--n", "2", "--kappa", "0.1", "--out", "pmf.csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp("pmf.csv"), "x,p\n-2,0.275\n0,0.45\n2,0.275\n");
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["variance"].get<double>(), 2.2, 1e-12);
    EXPECT_TRUE(fs::exists("pmf.csv.manifest.json"));
}

TEST_F(Cli, EvolveBernoulliAndEdge) {
    ASSERT_EQ(run({"evolve", "--n", "3", "--kappa", "0", "--out", "b.csv"}).code, 0);
    EXPECT_EQ(slurp("b.csv"), "x,p\n-3,0.125\n-1,0.375\n1,0.375\n3,0.125\n");
    ASSERT_EQ(run({"evolve", "--n", "1", "--kappa", "0.5", "--out", "e.csv"}).code, 0);
    EXPECT_EQ(slurp("e.csv"), "x,p\n-1,0.5\n1,0.5\n");
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"evolve", "--n", "2", "--kappa", "0.7", "--out", "x.csv"}).code, 2);
    EXPECT_EQ(run({"evolve", "--n", "0", "--kappa", "0.1", "--out", "x.csv"}).code, 2);
    EXPECT_EQ(run({"evolve", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"simulate", "--n", "10,x", "--kappa", "0", "--out", "s.csv"}).code, 2);
    EXPECT_EQ(run({"simulate", "--n", "10", "--kappa", "0", "--paths", "1", "--out", "s.csv"}).code, 2);
    EXPECT_FALSE(fs::exists("x.csv"));
    EXPECT_EQ(run({"--help"}).code, 0);
}

// ---- simulate ------------------------------------------------------------------------

TEST_F(Cli, SimulateBernoulliVariance) {
    const auto r = run({"simulate", "--n", "100", "--kappa", "0", "--paths", "100000", "--seed", "1", "--out", "s.csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    const double v = j["variance"]["value"], e = j["variance"]["err"];
    EXPECT_LE(std::fabs(v - 100.0), 3 * e);
}

TEST_F(Cli, SimulateLargeNKurtosisAndVariance) {
    for (const char* kappa : {"0.4", "-0.4"}) {
        const auto r =
            run({"simulate", "--n", "10000", "--kappa", kappa, "--paths", "100000", "--seed", "2", "--out", "s.csv"});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = json::parse(r.out);
        const double k = j["kurtosis"]["value"];
        EXPECT_GE(k, 2.9) << kappa;
        EXPECT_LE(k, 3.1) << kappa;
        // Against the exact finite-N second moment.
        const ProcessParams p(10000, std::stod(kappa));
        const double exact = second_moment(p, 10000) / 10000;
        EXPECT_LE(std::fabs(j["variance_per_n"]["value"].get<double>() - exact),
                  3 * j["variance_per_n"]["err"].get<double>())
            << kappa;
    }
}

TEST_F(Cli, SimulateSweepAndAcfFiles) {
    ASSERT_EQ(run({"simulate", "--n", "10,20,40", "--kappa", "0.2", "--paths", "500", "--out", "sw.csv"}).code, 0);
    std::istringstream in(slurp("sw.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 4);

    ASSERT_EQ(run({"simulate", "--n", "20", "--kappa", "0.45", "--paths", "500", "--acf", "10,10", "--out", "a.csv"}).code,
              0);
    EXPECT_TRUE(fs::exists("a_acf.csv"));
    const auto m = json::parse(slurp("a.csv.manifest.json"));
    EXPECT_EQ(m["outputs"].size(), 2U);
    EXPECT_EQ(run({"simulate", "--n", "20", "--kappa", "0.4", "--acf", "15,10", "--out", "b.csv"}).code, 2);
}

// ---- ingest ---------------------------------------------------------------------------

TEST_F(Cli, IngestWorkedExampleByteExact) {
    write("p.csv", "price,time\n1463.7,1\n1463.9,2\n1464.0,3\n1463.8,4\n");
    const auto r = run({"ingest", "--prices", "p.csv", "--tick", "0.1", "--out", "t.csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp("t.csv"), "1\n1\n1\n-1\n-1\n");
}

TEST_F(Cli, IngestConstantPricesWarns) {
    write("p.csv", "5.0\n5.0\n5.0\n");
    const auto r = run({"ingest", "--prices", "p.csv", "--out", "t.csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(slurp("t.csv"), "");
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(Cli, IngestDataErrorsExitThree) {
    write("p.csv", "price\n1463.7\n1463.75\n");
    auto r = run({"ingest", "--prices", "p.csv", "--tick", "0.1", "--out", "t.csv"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists("t.csv"));
    EXPECT_EQ(run({"ingest", "--prices", "missing.csv", "--out", "t.csv"}).code, 3);
    EXPECT_EQ(run({"ingest", "--prices", "p.csv", "--tick", "0", "--out", "t.csv"}).code, 2);
}

// ---- fit ----------------------------------------------------------------------------------

TEST_F(Cli, FitRecoversKappa) {
    ASSERT_EQ(run({"synth", "--n", "20", "--kappa", "0.45", "--blocks", "10000", "--seed", "5", "--out", "s.csv"}).code, 0);
    const auto r = run({"fit", "--ticks", "s.csv", "--n", "20", "--mode", "hist", "--seed", "1", "--out", "f.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp("f.json"));
    EXPECT_NEAR(j["kappa_mean"].get<double>(), 0.45, 0.05);
    for (const char* key : {"eps_mean", "eps_std", "kappa_mean", "acceptance_rate", "log_evidence", "ln_bayes_factor"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(fs::exists("f_samples.csv"));

    const auto a = run({"fit", "--ticks", "s.csv", "--n", "20", "--mode", "acf", "--acf-n", "10", "--acf-lags", "10",
                        "--mcmc-steps", "20000", "--out", "fa.json"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_GT(json::parse(a.out)["ln_bayes_factor"].get<double>(), 10.0);
}

TEST_F(Cli, FitNullData) {
    ASSERT_EQ(run({"synth", "--n", "20", "--kappa", "0", "--blocks", "10000", "--seed", "6", "--out", "s.csv"}).code, 0);
    const auto r = run({"fit", "--ticks", "s.csv", "--n", "20", "--mode", "hist", "--out", "f.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["kappa_mean"].get<double>(), 0.0, 0.05);
    EXPECT_LT(j["ln_bayes_factor"].get<double>(), 2.0);
}

TEST_F(Cli, FitFromStatsFiles) {
    ASSERT_EQ(run({"synth", "--n", "20", "--kappa", "0.45", "--blocks", "10000", "--seed", "7", "--out", "s.csv"}).code, 0);
    ASSERT_EQ(run({"stats", "--ticks", "s.csv", "--mode", "hist", "--n", "20", "--out", "h.csv"}).code, 0);
    ASSERT_EQ(run({"stats", "--ticks", "s.csv", "--mode", "acf", "--acf-n", "10", "--acf-lags", "10", "--out", "c.csv"}).code,
              0);
    const auto a = run({"fit", "--ticks", "s.csv", "--n", "20", "--mcmc-steps", "5000", "--out", "a.json"});
    const auto b = run({"fit", "--hist", "h.csv", "--n", "20", "--mcmc-steps", "5000", "--out", "b.json"});
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(json::parse(a.out)["kappa_mean"], json::parse(b.out)["kappa_mean"]);
    const auto c = run({"fit", "--acf-data", "c.csv", "--n", "20", "--acf-n", "10", "--mcmc-steps", "5000", "--out", "c.json"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NEAR(json::parse(c.out)["kappa_mean"].get<double>(), 0.45, 0.1);
}

TEST_F(Cli, FitAcfWindowMustSpanN) {
    ASSERT_EQ(run({"synth", "--n", "20", "--kappa", "0.3", "--blocks", "1000", "--out", "s.csv"}).code, 0);
    const auto r = run({"fit", "--ticks", "s.csv", "--n", "20", "--mode", "acf", "--acf-n", "10", "--acf-lags", "9",
                        "--out", "f.json"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("n + L"), std::string::npos) << r.err;
    EXPECT_EQ(run({"fit", "--ticks", "s.csv", "--n", "20", "--out", "f.json", "--hist", "h.csv"}).code, 2);
    ASSERT_EQ(run({"stats", "--ticks", "s.csv", "--mode", "hist", "--n", "20", "--subensembles", "10", "--out", "h.csv"}).code, 0);
    EXPECT_EQ(run({"fit", "--hist", "h.csv", "--n", "21", "--out", "f.json"}).code, 2);
}

// ---- reproducibility ----------------------------------------------------------------------

TEST_F(Cli, ThreadCountDoesNotChangeOutputs) {
    std::string first;
    for (const char* threads : {"1", "3", "8"}) {
        ASSERT_EQ(run({"simulate", "--n", "50", "--kappa", "0.3", "--paths", "3000", "--acf", "10,20", "--seed", "9",
                       "--threads", threads, "--out", "s.csv"})
                      .code,
                  0);
        ASSERT_EQ(run({"synth", "--n", "20", "--kappa", "0.45", "--blocks", "500", "--seed", "9", "--threads", threads,
                       "--out", "t.csv"})
                      .code,
                  0);
        const std::string all = slurp("s.csv") + slurp("s_acf.csv") + slurp("t.csv") + slurp("s.csv.manifest.json");
        if (first.empty()) first = all;
        EXPECT_EQ(all, first) << threads;
    }
}

TEST_F(Cli, EnvironmentThreadCount) {
    ::setenv("URNWALK_THREADS", "1", 1);
    ASSERT_EQ(run({"simulate", "--n", "30", "--kappa", "0.2", "--paths", "1000", "--out", "a.csv"}).code, 0);
    ::setenv("URNWALK_THREADS", "5", 1);
    ASSERT_EQ(run({"simulate", "--n", "30", "--kappa", "0.2", "--paths", "1000", "--out", "b.csv"}).code, 0);
    ::unsetenv("URNWALK_THREADS");
    EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
}

TEST_F(Cli, ReplayReproducesEveryCommand) {
    write("p.csv", "1.0\n1.3\n1.1\n1.2\n");
    const std::vector<std::vector<std::string>> runs = {
        {"evolve", "--n", "7", "--kappa", "-0.2", "--out", "e.csv"},
        {"simulate", "--n", "20", "--kappa", "0.1", "--paths", "400", "--acf", "5,5", "--out", "s.csv"},
        {"ingest", "--prices", "p.csv", "--out", "i.csv"},
        {"synth", "--n", "20", "--kappa", "0.45", "--blocks", "300", "--out", "y.csv"},
        {"stats", "--ticks", "y.csv", "--mode", "hist", "--n", "20", "--out", "h.csv"},
        {"fit", "--hist", "h.csv", "--n", "20", "--mcmc-steps", "2000", "--burnin", "500", "--out", "f.json"},
    };
    for (const auto& args : runs) {
        ASSERT_EQ(run(args).code, 0) << args[0];
        const std::string primary = args[args.size() - 1];
        const auto manifest = json::parse(slurp(primary + ".manifest.json"));
        std::vector<std::string> before;
        for (const auto& o : manifest["outputs"]) before.push_back(slurp(o["path"]));
        for (const auto& o : manifest["outputs"]) fs::remove(o["path"].get<std::string>());

        const auto r = run({"replay", "--manifest", primary + ".manifest.json", "--threads", "2"});
        ASSERT_EQ(r.code, 0) << args[0] << ": " << r.err;
        EXPECT_TRUE(json::parse(r.out)["identical"].get<bool>());
        std::size_t k = 0;
        for (const auto& o : manifest["outputs"]) EXPECT_EQ(slurp(o["path"]), before[k++]) << args[0];
    }
}

TEST_F(Cli, ReplayDetectsChangedInput) {
    write("p.csv", "1.0\n1.3\n");
    ASSERT_EQ(run({"ingest", "--prices", "p.csv", "--out", "i.csv"}).code, 0);
    write("p.csv", "1.0\n1.4\n");
    EXPECT_EQ(run({"replay", "--manifest", "i.csv.manifest.json"}).code, 3);
    write("junk.json", "{not json");
    EXPECT_EQ(run({"replay", "--manifest", "junk.json"}).code, 3);
}

TEST_F(Cli, ManifestListsDigests) {
    write("p.csv", "1.0\n1.3\n");
    ASSERT_EQ(run({"ingest", "--prices", "p.csv", "--out", "i.csv"}).code, 0);
    const auto m = json::parse(slurp("i.csv.manifest.json"));
    EXPECT_EQ(m["command"], "ingest");
    EXPECT_EQ(m["version"], cli::kToolVersion);
    EXPECT_EQ(m["inputs"][0]["fnv1a64"], io::hex64(io::fnv1a64(slurp("p.csv"))));
    EXPECT_EQ(m["outputs"][0]["fnv1a64"], io::hex64(io::fnv1a64(slurp("i.csv"))));
}

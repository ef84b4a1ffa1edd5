// Drives the installed command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pogs/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pogs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(POGS_CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void simulate(int seed) const {
    const Outcome r = run("simulate --seed " + std::to_string(seed) + " --out-clean " + path("clean.csv") +
                      " --out-noisy " + path("noisy.csv") + " --out-labels " + path("labels.json"));
    ASSERT_EQ(r.code, 0) << slurp(path("stderr.txt"));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SimulateDenoiseEvaluatePipeline) {
  simulate(7);
  Outcome d = run("denoise --input " + path("noisy.csv") + " --output " + path("x.csv") +
              " --auto-lambda --fault-freq 80 --fs 6400 --n1 4 --m 4");
  ASSERT_EQ(d.code, 0) << slurp(path("stderr.txt"));
  const json report = json::parse(d.out);
  EXPECT_EQ(report["schema_version"], 1);
  EXPECT_EQ(report["command"], "denoise");
  const auto& p = report["parameters"];
  EXPECT_GT(p["lambda"].get<double>(), 0.0);
  EXPECT_EQ(p["penalty"], "atan");
  EXPECT_NEAR(p["a"].get<double>(), 0.99 * p["convexity_bound_a"].get<double>(), 1e-12);
  EXPECT_EQ(p["pattern"]["k1"], 16);
  EXPECT_TRUE(report["solver"].contains("iterations"));
  EXPECT_TRUE(report["solver"].contains("final_objective"));

  Outcome e = run("evaluate --estimate " + path("x.csv") + " --clean " + path("clean.csv") + " --labels " +
              path("labels.json") + " --out " + path("eval.json"));
  ASSERT_EQ(e.code, 0) << slurp(path("stderr.txt"));
  const json eval = json::parse(slurp(path("eval.json")));
  EXPECT_GT(eval["auc"].get<double>(), 0.95);
  EXPECT_EQ(eval["roc"]["threshold"].size(), 256u);
  EXPECT_EQ(eval["roc"]["detection_prob"].size(), 256u);
}

TEST_F(Cli, DeterministicOutputs) {
  simulate(11);
  const std::string clean = slurp(path("clean.csv"));
  const std::string noisy = slurp(path("noisy.csv"));
  const std::string labels = slurp(path("labels.json"));
  const std::string args = "--report " + path("rep.json") + " denoise --input " + path("noisy.csv") +
                           " --output " + path("x.csv") + " --auto-lambda --fault-freq 80 --n1 2 --m 4";
  ASSERT_EQ(run(args).code, 0);
  const std::string x1 = slurp(path("x.csv"));
  const std::string rep1 = slurp(path("rep.json"));
  simulate(11);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(path("clean.csv")), clean);
  EXPECT_EQ(slurp(path("noisy.csv")), noisy);
  EXPECT_EQ(slurp(path("labels.json")), labels);
  EXPECT_EQ(slurp(path("x.csv")), x1);
  EXPECT_EQ(slurp(path("rep.json")), rep1);
  EXPECT_FALSE(rep1.empty());
}

TEST_F(Cli, UsageErrors) {
  simulate(1);
  const std::string base = "denoise --input " + path("noisy.csv") + " --output " + path("x.csv");
  EXPECT_EQ(run(base + " --lambda 0 --group-size 4").code, 2);
  EXPECT_EQ(run(base + " --lambda 1 --auto-lambda --group-size 4").code, 2);
  EXPECT_EQ(run(base + " --lambda 1 --group-size 4 --pattern 101").code, 2);
  EXPECT_EQ(run(base + " --auto-lambda --fault-freq 80 --n1 5 --m 4").code, 2);
  EXPECT_EQ(run(base + " --lambda 1 --fault-freq 80 --n1 80 --m 4").code, 2);
  EXPECT_EQ(run(base + " --lambda 1 --group-size 4 --penalty huber").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, DataAndNumericalErrors) {
  {
    std::ofstream bad(path("bad.csv"));
    bad << "# fs=100\n1.0\nabc\n";
  }
  EXPECT_EQ(run("denoise --input " + path("bad.csv") + " --output " + path("x.csv") + " --lambda 1 --group-size 2").code,
            3);
  EXPECT_EQ(run("denoise --input " + path("missing.csv") + " --output " + path("x.csv") + " --lambda 1 --group-size 2")
                .code,
            3);
  {
    std::ofstream nofs(path("nofs.csv"));
    nofs << "1.0\n2.0\n";
  }
  EXPECT_EQ(run("estimate-noise --input " + path("nofs.csv")).code, 3);
  {
    std::ofstream nan(path("nan.csv"));
    nan << "# fs=100\n1.0\nnan\n2.0\n";
  }
  EXPECT_EQ(run("denoise --input " + path("nan.csv") + " --output " + path("x.csv") + " --lambda 1 --group-size 2").code,
            4);

  simulate(2);
  EXPECT_EQ(run("denoise --input " + path("noisy.csv") + " --output " + path("x.csv") +
                " --lambda 1 --group-size 8 --max-iters 1 --strict")
                .code,
            4);
}

TEST_F(Cli, CompoundFanOut) {
  simulate(5);
  Outcome r = run("compound --input " + path("noisy.csv") + " --out-dir " + path("cmp") +
              " --fault-freq 73.2 --fault-freq 117.8 --auto-lambda");
  ASSERT_EQ(r.code, 0) << slurp(path("stderr.txt"));
  for (const char* f : {"denoised_73.2Hz.csv", "denoised_117.8Hz.csv", "envelope_73.2Hz.csv",
                        "envelope_117.8Hz.csv"})
    EXPECT_TRUE(fs::exists(fs::path(path("cmp")) / f)) << f;
  const json report = json::parse(r.out);
  ASSERT_EQ(report["runs"].size(), 2u);
  EXPECT_EQ(report["runs"][0]["fault_freq_hz"], 73.2);
  EXPECT_EQ(report["runs"][1]["parameters"]["pattern"]["period_samples"], 54);
  const std::string header = slurp(path("cmp") + "/envelope_73.2Hz.csv").substr(0, 26);
  EXPECT_EQ(header, "freq_hz,magnitude,smoothed");
}

TEST_F(Cli, SpectrumEstimateNoiseAndFaultFreqs) {
  simulate(3);
  Outcome s = run("spectrum --input " + path("clean.csv") + " --mode envelope --out " + path("env.csv"));
  ASSERT_EQ(s.code, 0) << slurp(path("stderr.txt"));
  const json sr = json::parse(s.out);
  EXPECT_NEAR(sr["peak_excluding_dc"]["freq_hz"].get<double>(), 80.0, 1.0);

  Outcome e = run("estimate-noise --input " + path("noisy.csv") + " --m 4 --n1 2");
  ASSERT_EQ(e.code, 0);
  const json er = json::parse(e.out);
  EXPECT_NEAR(er["sigma"].get<double>(), 2.5, 0.25);
  EXPECT_DOUBLE_EQ(er["lambda"].get<double>(), 0.475 * er["sigma"].get<double>());
  EXPECT_EQ(run("estimate-noise --input " + path("noisy.csv") + " --m 5 --n1 2").code, 2);

  Outcome f = run("fault-freqs --rpm 1433 --orders ftf=0.384,bpfo=3.066,bpfi=4.932,bsf=2.03");
  ASSERT_EQ(f.code, 0);
  const json fr = json::parse(f.out);
  EXPECT_NEAR(fr["frequencies_hz"]["bpfo"].get<double>(), 73.2, 0.05);
  EXPECT_NEAR(fr["frequencies_hz"]["bpfi"].get<double>(), 117.8, 0.05);
  EXPECT_EQ(run("fault-freqs --rpm 1433 --orders bpfo=-1").code, 2);
}

TEST_F(Cli, ReportFileAndQuiet) {
  simulate(4);
  Outcome r = run("--quiet --report " + path("r.json") + " denoise --input " + path("noisy.csv") + " --output " +
              path("x.csv") + " --lambda 2 --group-size 4 --a 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(slurp(path("stderr.txt")).empty());
  const json rep = json::parse(slurp(path("r.json")));
  EXPECT_EQ(rep["solver"]["convexity_status"], "violated");
  EXPECT_FALSE(rep["solver"]["warnings"].empty());
  const auto x = pogs::read_signal(fs::path(path("x.csv")));
  EXPECT_EQ(x.samples.size(), 6400u);
  EXPECT_EQ(x.fs, 6400.0);
}

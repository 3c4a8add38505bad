#include <gtest/gtest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entrosig/cli/commands.hpp"
#include "entrosig/cli/wav.hpp"

using namespace entrosig;
using namespace entrosig::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double num(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  EXPECT_TRUE(ec == std::errc{} && ptr == s.data() + s.size()) << s;
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("entrosig_test_" + std::to_string(::getpid()) + "_" + name);
}

// 20480 Hz, 1 s: exactly ten 2048-sample frames.
const std::string kTenFrames = "kind=tone_burst,carrier=1000,amplitude=800,rate=20480,duration=1,bursts=0.4-0.7";

}  // namespace

TEST(Cli, AnalyzeShape) {
  const auto r = run({"analyze", "--synth", kTenFrames, "--sigma", "300", "--criteria", "h_s,c_sq"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"frame_start_s", "frame_end_s", "h_s", "h_s_norm", "c_sq", "c_sq_norm"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].size(), 6u);
}

TEST(Cli, AnalyzeMatchesLibrary) {
  const auto r = run({"analyze", "--synth", kTenFrames, "--sigma", "300", "--seed", "9", "--criteria", "h_t,c_sq,lh"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);

  const auto synth = parse_synth_spec(kTenFrames);
  const auto clean = synthesize(synth.spec, synth.sample_rate, synth.duration_s);
  const auto noise = generate_white_noise({300.0, 9}, clean.size(), clean.sample_rate);
  const auto mixed = mix(clean, noise).mixture;
  AnalysisConfig cfg;
  cfg.noise = lh_reference(mixed, 3.0);
  const std::vector<Criterion> which = {Criterion::h_t, Criterion::c_sq, Criterion::lh};
  const auto tracks = run_criteria(mixed, which, cfg);
  ASSERT_EQ(rows.size(), tracks[0].size() + 1);
  for (std::size_t i = 0; i < tracks[0].size(); ++i) {
    const auto& row = rows[i + 1];
    EXPECT_EQ(num(row[0]), tracks[0].frame_times[i]);
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      EXPECT_EQ(num(row[2 + 2 * k]), tracks[k].values[i]) << "row " << i << " criterion " << k;
      EXPECT_EQ(num(row[3 + 2 * k]), normalize_track(tracks[k]).values[i]);
    }
  }
}

TEST(Cli, OutputsAreDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"analyze", "--synth", kTenFrames, "--sigma", "500", "--criteria", "h_t,h_0,h_s,sid"},
        std::vector<std::string>{"detect", "--synth", "preset=benchmark,amplitude=900", "--sigma", "2000"},
        std::vector<std::string>{"sweep", "--synth", "preset=benchmark", "--sigma", "1000,2000"}}) {
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args = {"analyze", "--synth", kTenFrames, "--sigma", "500", "--criteria", "h_t"};
  const auto explicit_seed = run({"analyze", "--synth", kTenFrames, "--sigma", "500", "--criteria", "h_t", "--seed", "77"});
  ::setenv("ENTROSIG_SEED", "77", 1);
  const auto from_env = run(args);
  ::unsetenv("ENTROSIG_SEED");
  const auto fallback = run(args);
  EXPECT_EQ(explicit_seed.out, from_env.out);
  EXPECT_NE(explicit_seed.out, fallback.out);
}

TEST(Cli, DetectSilenceHasNoEvents) {
  const auto r = run({"detect", "--synth", "amplitude=0,duration=10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  ASSERT_EQ(doc["reports"].size(), 1u);
  EXPECT_TRUE(doc["reports"][0]["events"].empty());
  EXPECT_EQ(doc["reports"][0]["criterion"], "c_sq");
  EXPECT_EQ(doc["config"]["window"], 2048);
}

TEST(Cli, DetectKnownBurstFromWav) {
  const auto wav = temp_path("burst.wav");
  const auto made = run({"synth", "--synth", "amplitude=3000,duration=10,bursts=5-7", "--sigma", "500", "--output", wav.string()});
  ASSERT_EQ(made.code, 0) << made.err;
  const auto r = run({"detect", "--input", wav.string()});
  std::filesystem::remove(wav);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& events = doc["reports"][0]["events"];
  ASSERT_EQ(events.size(), 1u);
  const double frame = 2048.0 / 48000.0;
  EXPECT_NEAR(events[0]["start_s"].get<double>(), 5.0, frame);
  EXPECT_NEAR(events[0]["end_s"].get<double>(), 7.0, frame);
}

TEST(Cli, SweepRows) {
  const auto r = run({"sweep", "--synth", "preset=benchmark,amplitude=900", "--sigma", "500,2000,4000", "--criteria",
                      "h_t,h_0,h_s,c_sq"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"sigma", "criterion", "snr_db", "separation_margin", "detected"}));
  std::size_t at_2000 = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) at_2000 += rows[i][0] == "2000" ? 1 : 0;
  EXPECT_EQ(at_2000, 4u);
  const auto defaults = parse_csv(run({"sweep", "--synth", "preset=benchmark"}).out);
  EXPECT_EQ(defaults.size(), 17u);
}

TEST(Cli, VerifyReportsSlopes) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("slope_n64_7"), std::string::npos);
  const auto j = run({"verify", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(Cli, VerifyCatchesMutations) {
  VerifyHooks bad_dsq;
  bad_dsq.d_sq = [](const DiscreteDistribution& p) {
    double s = 0.0;
    for (double v : p.probs()) s += v * v;
    return s - 1.0 / static_cast<double>(p.size() + 1);
  };
  EXPECT_FALSE(run_verification(bad_dsq).all_passed());

  VerifyHooks bad_jsd;
  bad_jsd.jsd = [](const DiscreteDistribution& p, const DiscreteDistribution& q) { return 0.5 * jsd(p, q); };
  EXPECT_FALSE(run_verification(bad_jsd).all_passed());

  VerifyHooks bad_gauss;
  bad_gauss.gaussian_disequilibrium = [](const GaussianParams& p, const GaussianParams& q) {
    return gaussian_disequilibrium(p, q) * (1.0 + 1e-4);
  };
  EXPECT_FALSE(run_verification(bad_gauss).all_passed());

  VerifyHooks bad_diseq;
  bad_diseq.disequilibrium = [](const DiscreteDistribution& p, const DiscreteDistribution& q) {
    return disequilibrium(p, q) * static_cast<double>(p.size());
  };
  EXPECT_FALSE(run_verification(bad_diseq).all_passed());
}

TEST(Cli, SynthRoundTrip) {
  const auto wav = temp_path("roundtrip.wav");
  const auto r = run({"synth", "--synth", "preset=benchmark,amplitude=900", "--sigma", "2000", "--seed", "5", "--output",
                      wav.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto back = ingest_wav(wav);
  std::filesystem::remove(wav);
  EXPECT_EQ(back.buffer.sample_rate, 48000u);

  const auto bench = tone_burst_benchmark(900.0, 2000.0, 5);
  const auto want = sweep_mixture(bench, 2000.0).mixture;
  ASSERT_EQ(back.buffer.size(), want.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (std::abs(want.samples[i]) < 32767.0) worst = std::max(worst, std::abs(back.buffer.samples[i] - want.samples[i]));
  }
  EXPECT_LE(worst, 1.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"detect", "--synth", kTenFrames, "--criteria", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", "--synth", kTenFrames, "--window", "1000"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", "--synth", kTenFrames, "--window", "1000", "--allow-non-pow2"}).code, kExitOk);
  EXPECT_EQ(run({"synth", "--synth", "duration=0", "--output", temp_path("x.wav").string()}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", "--input", "/nonexistent.wav"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep"}).code, kExitUsage);
  EXPECT_EQ(run({"detect", "--synth", kTenFrames, "--calib-secs", "0.2"}).code, kExitPolicyFailure);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream f(cfg);
    f << "synth=\"" << kTenFrames << "\"\n"
      << "sigma=300\n"
      << "criteria=h_s\n"
      << "seed=4\n";
  }
  const auto from_file = run({"analyze", "--config", cfg.string()});
  const auto from_flags = run({"analyze", "--synth", kTenFrames, "--sigma", "300", "--criteria", "h_s", "--seed", "4"});
  const auto overridden = run({"analyze", "--config", cfg.string(), "--seed", "5"});
  const auto flags_5 = run({"analyze", "--synth", kTenFrames, "--sigma", "300", "--criteria", "h_s", "--seed", "5"});
  std::filesystem::remove(cfg);
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, from_flags.out);
  EXPECT_EQ(overridden.out, flags_5.out);
  EXPECT_NE(overridden.out, from_file.out);
}

TEST(Cli, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(json_number(1.0 / 3.0).get<double>(), 0.333333333333);
  EXPECT_TRUE(json_number(std::numeric_limits<double>::quiet_NaN()).is_null());
}

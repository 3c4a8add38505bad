#include "entrosig/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "entrosig/cli/wav.hpp"
#include "entrosig/errors.hpp"

namespace entrosig::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double rounded = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), rounded);
  return rounded;
}

namespace {

std::string polarity_name(Polarity p) {
  return p == Polarity::rises_on_signal ? "rises_on_signal" : "falls_on_signal";
}

/// RFC 4180: quote cells holding separators, quotes or line breaks.
std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

PreparedInput prepare_input(const RunConfig& cfg) {
  PreparedInput in;
  const double sigma = cfg.sigmas.empty() ? 0.0 : cfg.sigmas.front();
  if (cfg.input) {
    auto wav = ingest_wav(*cfg.input);
    in.warnings = std::move(wav.warnings);
    in.source = cfg.input->string();
    in.buffer = std::move(wav.buffer);
    if (sigma > 0.0) {
      const auto noise = generate_white_noise(NoiseSpec{sigma, cfg.seed}, in.buffer.size(), in.buffer.sample_rate);
      in.buffer = mix(in.buffer, noise).mixture;
    }
  } else if (cfg.synth) {
    const auto clean = synthesize(cfg.synth->spec, cfg.synth->sample_rate, cfg.synth->duration_s);
    const auto noise = generate_white_noise(NoiseSpec{sigma, cfg.seed}, clean.size(), clean.sample_rate);
    auto mixed = mix(clean, noise, cfg.synth->spec.bursts);
    in.buffer = std::move(mixed.mixture);
    in.truth = cfg.synth->spec.bursts;
    in.snr_db = mixed.snr_db;
    in.snr_unbounded = mixed.snr_unbounded;
    in.source = "synth";
  } else {
    throw UsageError("one of --input or --synth is required");
  }
  if (in.buffer.size() < cfg.window) {
    throw UsageError("input is shorter than one window");
  }
  return in;
}

std::vector<CriterionTrack> analyze_tracks(const RunConfig& cfg, const PreparedInput& in) {
  AnalysisConfig acfg = cfg.analysis();
  if (std::find(cfg.criteria.begin(), cfg.criteria.end(), Criterion::lh) != cfg.criteria.end()) {
    acfg.noise = lh_reference(in.buffer, cfg.calib_secs);
  }
  return run_criteria(in.buffer, cfg.criteria, acfg);
}

std::string analyze_csv(const RunConfig& cfg, const PreparedInput& in) {
  const auto tracks = analyze_tracks(cfg, in);
  std::vector<CriterionTrack> normalized;
  for (const auto& t : tracks) normalized.push_back(normalize_track(t));

  std::ostringstream os;
  os << "frame_start_s,frame_end_s";
  for (const auto& t : tracks) {
    const std::string name(criterion_info(t.id).name);
    os << ',' << csv_cell(name) << ',' << csv_cell(name + "_norm");
  }
  os << '\n';
  const std::size_t frames = tracks.empty() ? 0 : tracks.front().size();
  for (std::size_t i = 0; i < frames; ++i) {
    const auto& ref = tracks.front();
    os << format_number(ref.frame_times[i]) << ',' << format_number(ref.frame_times[i] + ref.frame_duration());
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      os << ',' << format_number(tracks[k].values[i]) << ',' << format_number(normalized[k].values[i]);
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json detect_json(const RunConfig& cfg, const PreparedInput& in) {
  const auto tracks = analyze_tracks(cfg, in);
  const auto policy = cfg.policy();

  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;

  nlohmann::json input;
  input["source"] = in.source;
  input["sample_rate"] = in.buffer.sample_rate;
  input["samples"] = in.buffer.size();
  input["duration_s"] = json_number(in.buffer.duration());
  if (in.snr_db) {
    input["snr_db"] = json_number(*in.snr_db);
    input["snr_unbounded"] = in.snr_unbounded;
    input["snr_scope"] = "burst intervals";
  }
  input["warnings"] = in.warnings;
  doc["input"] = input;

  nlohmann::json config;
  config["window"] = cfg.window;
  config["hop"] = cfg.hop.value_or(cfg.window);
  config["n_fft"] = cfg.n_fft.value_or(cfg.window);
  config["levels"] = cfg.levels;
  config["k_sigma"] = json_number(cfg.k_sigma);
  config["calib_secs"] = json_number(cfg.calib_secs);
  config["min_event_frames"] = cfg.min_event_frames;
  config["seed"] = cfg.seed;
  config["sigma"] = json_number(cfg.sigmas.empty() ? 0.0 : cfg.sigmas.front());
  nlohmann::json names = nlohmann::json::array();
  for (Criterion c : cfg.criteria) names.push_back(criterion_info(c).name);
  config["criteria"] = names;
  doc["config"] = config;

  nlohmann::json reports = nlohmann::json::array();
  for (const auto& track : tracks) {
    const auto rep = detect(track, policy);
    nlohmann::json r;
    r["criterion"] = criterion_info(rep.criterion).name;
    r["polarity"] = polarity_name(track.polarity);
    r["calibration_mean"] = json_number(rep.calibration_mean);
    r["calibration_std"] = json_number(rep.calibration_std);
    r["calibration_frames"] = rep.calibration_frame_count;
    r["threshold"] = json_number(rep.threshold_used);
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : rep.events) {
      events.push_back({{"start_s", json_number(e.start_s)},
                        {"end_s", json_number(e.end_s)},
                        {"peak_value", json_number(e.peak_value)},
                        {"criterion", criterion_info(e.criterion).name},
                        {"first_frame", e.first_frame},
                        {"last_frame", e.last_frame}});
    }
    r["events"] = events;
    if (!in.truth.empty()) {
      r["detects_truth"] = detects_truth(rep, in.truth);
    }
    reports.push_back(r);
  }
  doc["reports"] = reports;
  return doc;
}

std::string sweep_csv(const RunConfig& cfg) {
  if (!cfg.synth) {
    throw UsageError("sweep needs --synth (ground-truth bursts are required)");
  }
  SweepSpec spec;
  spec.signal = cfg.synth->spec;
  spec.sample_rate = cfg.synth->sample_rate;
  spec.duration_s = cfg.synth->duration_s;
  spec.sigmas = cfg.sigmas;
  spec.criteria = cfg.criteria;
  spec.seed = cfg.seed;
  spec.analysis = cfg.analysis();
  spec.policy = cfg.policy();
  const auto rows = sweep(spec);

  std::ostringstream os;
  os << "sigma,criterion,snr_db,separation_margin,detected\n";
  for (const auto& r : rows) {
    os << format_number(r.sigma) << ',' << criterion_info(r.criterion).name << ','
       << format_number(r.snr_db) << ',' << format_number(r.separation_margin) << ','
       << (r.detected ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string verify_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << c.detail << '\n';
    if (c.name.find("third order") != std::string::npos) {
      for (const auto& [k, v] : c.metrics) os << "        " << k << " = " << format_number(v) << '\n';
    }
  }
  os << (report.all_passed() ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

nlohmann::json verify_json(const VerifyReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["passed"] = report.all_passed();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : c.metrics) m[k] = json_number(v);
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"metrics", m}});
  }
  doc["checks"] = checks;
  return doc;
}

std::size_t synth_to_wav(const RunConfig& cfg) {
  if (!cfg.synth) throw UsageError("synth needs --synth");
  if (!cfg.output) throw UsageError("synth needs --output");
  return write_wav_pcm16(*cfg.output, prepare_input(cfg).buffer);
}

namespace {

void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.output->string());
    f << payload;
    return;
  }
  out << payload;
}

std::vector<Criterion> default_criteria(std::string_view command) {
  if (command == "detect") return {Criterion::c_sq};
  if (command == "sweep") return {Criterion::h_t, Criterion::h_0, Criterion::h_s, Criterion::c_sq};
  return {Criterion::h_s, Criterion::c_sq};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entrosig: information criteria for detecting signals in white noise"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the flags; flags take precedence");

  RunConfig cfg;
  std::string input;
  std::string synth;
  std::vector<std::string> criteria;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_fft;
  std::optional<std::size_t> hop;
  std::string format;
  std::string output;

  app.add_option("--input", input, "PCM WAV file to analyze");
  app.add_option("--synth", synth,
                 "synthetic signal, e.g. kind=tone_burst,carrier=1000,amplitude=500,bursts=4-6;9-11,duration=20,rate=48000");
  app.add_option("--window", cfg.window, "frame length W in samples")->capture_default_str();
  app.add_option("--n-fft", n_fft, "FFT size (default: window)");
  app.add_option("--hop", hop, "frame advance in samples (default: window)");
  app.add_option("--levels", cfg.levels, "alphabet size for amplitude levels")->capture_default_str();
  app.add_flag("--allow-non-pow2", cfg.allow_non_pow2, "accept window/n-fft that are not powers of two");
  app.add_option("--criteria", criteria, "comma-separated criterion names")->delimiter(',');
  app.add_option("--sigma", cfg.sigmas, "white-noise standard deviation(s), comma-separated")->delimiter(',');
  app.add_option("--seed", seed, "noise seed (falls back to ENTROSIG_SEED, then 1)");
  app.add_option("--k-sigma", cfg.k_sigma, "threshold multiplier")->capture_default_str();
  app.add_option("--calib-secs", cfg.calib_secs, "leading noise-only calibration seconds")->capture_default_str();
  app.add_option("--min-event-frames", cfg.min_event_frames, "minimum supra-threshold run")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--output", output, "output path (default: stdout)");

  auto* analyze = app.add_subcommand("analyze", "per-frame criterion tracks as CSV");
  auto* detect_cmd = app.add_subcommand("detect", "threshold detection report as JSON");
  auto* sweep_cmd = app.add_subcommand("sweep", "noise-level sweep over a synthetic benchmark as CSV");
  auto* verify_cmd = app.add_subcommand("verify", "run the analytical identity and expansion checks");
  auto* synth_cmd = app.add_subcommand("synth", "write the synthetic mixture as 16-bit WAV");
  for (auto* sub : {analyze, detect_cmd, sweep_cmd, verify_cmd, synth_cmd}) sub->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!input.empty()) cfg.input = input;
    if (!synth.empty()) cfg.synth = parse_synth_spec(synth);
    if (!output.empty()) cfg.output = output;
    cfg.n_fft = n_fft;
    cfg.hop = hop;
    cfg.seed = resolve_seed(seed);
    cfg.criteria = criteria.empty() ? default_criteria(command) : parse_criteria_list(criteria);
    if (command == "sweep" && cfg.sigmas.empty()) cfg.sigmas = {500.0, 1000.0, 2000.0, 4000.0};
    if (format == "csv") cfg.format = OutputFormat::csv;
    if (format == "json") cfg.format = OutputFormat::json;
    if (format == "text") cfg.format = OutputFormat::text;
    cfg.validate();

    if (command == "analyze" || command == "detect") {
      const auto in = prepare_input(cfg);
      for (const auto& w : in.warnings) err << "warning: " << w << '\n';
      if (command == "analyze") emit(cfg, analyze_csv(cfg, in), out);
      else emit(cfg, detect_json(cfg, in).dump(2) + "\n", out);
    } else if (command == "sweep") {
      emit(cfg, sweep_csv(cfg), out);
    } else if (command == "verify") {
      const auto report = run_verification({}, cfg.seed);
      const bool json = cfg.format == OutputFormat::json;
      emit(cfg, json ? verify_json(report).dump(2) + "\n" : verify_text(report), out);
      return report.all_passed() ? kExitOk : kExitPolicyFailure;
    } else if (command == "synth") {
      const std::size_t clipped = synth_to_wav(cfg);
      if (clipped > 0) err << "warning: " << clipped << " samples clipped to the 16-bit range\n";
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WavError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPolicyFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPolicyFailure;
  }
}

}  // namespace entrosig::cli

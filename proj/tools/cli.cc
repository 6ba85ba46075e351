// Copyright 2026 The astar-mle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mle/batch.h"
#include "mle/dem.h"
#include "mle/ensemble.h"
#include "mle/errors.h"
#include "mle/generators.h"
#include "mle/shots_io.h"
#include "mle/simulator.h"

namespace mle::cli {

namespace {

using Json = nlohmann::ordered_json;

// Thrown for bad files or flag values; reported on stderr with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::optional<size_t> parse_limit(const std::string& text, const char* flag) {
  if (text == "inf") return std::nullopt;
  size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw InputError(std::string(flag) + " expects a non-negative integer or 'inf', got '" +
                     text + "'");
  }
  return static_cast<size_t>(v);
}

ErrorModel load_model(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return canonicalize(instantiate(parse_dem(text)));
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct DecoderFlags {
  std::string beam = "inf";
  std::string pqlimit = "inf";
  double det_penalty = 0.0;
  bool no_revisit = false;
  bool at_most_two = false;
  size_t beam_climbing = 0;
  size_t num_orderings = 1;
  std::string preset;
  uint64_t seed = 0;
  int threads = 1;

  CLI::Option* beam_opt = nullptr;
  CLI::Option* pqlimit_opt = nullptr;
  CLI::Option* climbing_opt = nullptr;
  CLI::Option* orderings_opt = nullptr;

  void attach(CLI::App* app) {
    beam_opt = app->add_option("--beam", beam, "Beam cutoff (integer or 'inf')");
    pqlimit_opt = app->add_option("--pqlimit", pqlimit,
                                  "Maximum nodes pushed before giving up (integer or 'inf')");
    app->add_option("--det-penalty", det_penalty, "Queue penalty per residual detection event")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--no-revisit", no_revisit, "Skip nodes whose residual was already visited");
    app->add_flag("--at-most-two", at_most_two,
                  "Forbid a third chosen error on any detector (inexact)");
    climbing_opt = app->add_option("--beam-climbing", beam_climbing,
                                   "Beam climbing over beams 0..B");
    orderings_opt = app->add_option("--num-orderings", num_orderings,
                                    "Number of detector orderings in the ensemble")
                        ->check(CLI::PositiveNumber);
    app->add_option("--preset", preset, "Parameter preset")
        ->check(CLI::IsMember({"short-beam", "long-beam"}));
    app->add_option("--seed", seed, "Seed for orderings and sampling");
    app->add_option("--threads", threads, "Worker threads (shot-parallel)")
        ->check(CLI::PositiveNumber);
  }

  DecoderSpec build() const {
    SearchConfig search;
    search.beam = parse_limit(beam, "--beam");
    search.pqlimit = parse_limit(pqlimit, "--pqlimit");
    if (search.pqlimit && *search.pqlimit == 0) throw InputError("--pqlimit must be positive");
    search.det_penalty = det_penalty;
    search.no_revisit = no_revisit;
    search.at_most_two = at_most_two;
    search.rng_seed = seed;

    DecoderSpec spec;
    const bool ensemble = !preset.empty() || climbing_opt->count() > 0 || num_orderings > 1;
    if (!ensemble) {
      spec.kind = DecoderKind::kAStar;
      spec.search = search;
      return spec;
    }
    spec.kind = DecoderKind::kEnsemble;
    EnsembleConfig e;
    if (preset == "short-beam") e = short_beam_preset();
    if (preset == "long-beam") e = long_beam_preset();
    // Explicit flags override the preset.
    if (preset.empty() || beam_opt->count()) e.base.beam = search.beam;
    if (preset.empty() || pqlimit_opt->count()) e.base.pqlimit = search.pqlimit;
    e.base.det_penalty = det_penalty;
    e.base.no_revisit = e.base.no_revisit || no_revisit;
    e.base.at_most_two = at_most_two;
    e.base.rng_seed = seed;
    if (climbing_opt->count()) {
      e.beam_climbing = true;
      e.max_beam = beam_climbing;
    }
    if (orderings_opt->count() || preset.empty()) e.num_orderings = num_orderings;
    e.seed = seed;
    spec.ensemble = e;
    return spec;
  }
};

Json pair_json(const std::optional<std::pair<double, double>>& p) {
  if (!p) return nullptr;
  return Json::array({p->first, p->second});
}

Json stats_json(const ShotStats& s, bool with_errors, bool with_timing) {
  Json j;
  j["shots"] = s.shots;
  if (with_errors) {
    j["errors"] = s.errors;
  } else {
    j["errors"] = nullptr;
  }
  j["low_confidence"] = s.low_confidence;
  if (with_errors) {
    j["per_shot"] = s.per_shot;
    j["per_round"] = s.per_round ? Json(*s.per_round) : Json(nullptr);
    j["ci90_per_shot"] = pair_json(s.ci90_per_shot);
    j["ci90_per_round"] = pair_json(s.ci90_per_round);
  } else {
    j["per_shot"] = nullptr;
    j["per_round"] = nullptr;
    j["ci90_per_shot"] = nullptr;
    j["ci90_per_round"] = nullptr;
  }
  j["nodes_expanded_total"] = s.nodes_expanded_total;
  // Wall time varies run to run, so sample output leaves it null unless
  // asked for and stays byte-reproducible.
  j["wall_time_us_total"] = with_timing ? Json(s.wall_time_us_total) : Json(nullptr);
  if (!s.valid) {
    j["valid"] = false;
    j["failure"] = s.failure;
  }
  return j;
}

int cmd_decode(const std::string& dem_path, const std::string& in_path,
               const std::string& in_format, const std::string& out_path,
               const std::string& stats_path, const std::string& obs_path, size_t rounds,
               const DecoderFlags& flags, std::ostream& out) {
  const ErrorModel model = load_model(dem_path);
  const DecoderSpec spec = flags.build();
  std::vector<Syndrome> shots;
  try {
    shots = parse_shots(read_file(in_path), parse_shot_format(in_format), model.num_detectors());
  } catch (const ShotFormatError& e) {
    throw InputError(in_path + ": " + e.what());
  }
  std::vector<BitVec> truth;
  if (!obs_path.empty()) {
    try {
      truth = parse_observable_lines(read_file(obs_path), model.num_observables());
    } catch (const ShotFormatError& e) {
      throw InputError(obs_path + ": " + e.what());
    }
    if (truth.size() != shots.size()) {
      throw InputError("--obs-in has " + std::to_string(truth.size()) + " lines but there are " +
                       std::to_string(shots.size()) + " shots");
    }
  }

  std::vector<DecodeOutcome> results;
  try {
    results = decode_batch_parallel(model, shots, spec, flags.threads);
  } catch (const Unsatisfiable& e) {
    throw InputError(std::string("unsatisfiable shot: ") + e.what());
  }

  std::string lines;
  uint64_t errors = 0, low = 0, nodes = 0;
  double wall = 0.0;
  for (size_t i = 0; i < results.size(); ++i) {
    const DecodeOutcome& r = results[i];
    lines += format_prediction(r);
    lines += '\n';
    low += r.low_confidence;
    nodes += r.stats.nodes_expanded;
    wall += r.stats.wall_time_us;
    if (!truth.empty()) errors += r.low_confidence || r.predicted_observables != truth[i];
  }
  write_file(out_path, lines, out);

  if (!stats_path.empty()) {
    ShotStats s;
    if (!shots.empty()) s = summarize(shots.size(), errors, low, rounds);
    s.shots = shots.size();
    s.low_confidence = low;
    s.rounds = rounds;
    s.nodes_expanded_total = nodes;
    s.wall_time_us_total = wall;
    const bool with_errors = !truth.empty() && !shots.empty();
    write_file(stats_path, stats_json(s, with_errors, true).dump(2) + "\n", out);
  }
  return kExitOk;
}

// Shortest text that reads back to the same double.
std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int cmd_sample(const std::string& dem_path, uint64_t shots, size_t rounds,
               const std::string& oracle, const std::string& csv_path,
               const std::string& model_name, std::optional<double> p_label, bool timing,
               const DecoderFlags& flags, std::ostream& out) {
  const ErrorModel model = load_model(dem_path);
  DecoderSpec spec;
  if (oracle == "brute") {
    spec.kind = DecoderKind::kBruteForce;
  } else if (oracle == "dijkstra") {
    spec.kind = DecoderKind::kDijkstra;
  } else {
    spec = flags.build();
  }
  ExperimentConfig config;
  config.num_shots = shots;
  config.rounds = rounds;
  config.seed = flags.seed;
  config.threads = flags.threads;
  const ShotStats s = run_experiment(model, config, spec);
  out << stats_json(s, true, timing).dump(2) << "\n";

  if (!csv_path.empty()) {
    const bool fresh = !std::filesystem::exists(csv_path) ||
                       std::filesystem::file_size(csv_path) == 0;
    std::ofstream csv(csv_path, std::ios::app);
    if (!csv) throw InputError("cannot write '" + csv_path + "'");
    if (fresh) {
      csv << "model,p,decoder,shots,errors,per_shot,per_round,ci_lo,ci_hi,mean_decode_us\n";
    }
    double p = 0.0;
    for (const auto& ch : model.channels()) p = std::max(p, ch.probability);
    const std::string name =
        model_name.empty() ? std::filesystem::path(dem_path).stem().string() : model_name;
    const std::string decoder =
        oracle != "astar" ? oracle
                          : (spec.kind == DecoderKind::kEnsemble ? "astar-ensemble" : "astar");
    csv << name << ',' << format_real(p_label.value_or(p)) << ',' << decoder << ','
        << s.shots << ',' << s.errors << ',' << format_real(s.per_shot) << ','
        << (s.per_round ? format_real(*s.per_round) : "") << ','
        << format_real(s.ci90_per_shot.first) << ',' << format_real(s.ci90_per_shot.second)
        << ',' << format_real(s.shots ? s.wall_time_us_total / static_cast<double>(s.shots) : 0.0)
        << '\n';
  }
  return s.valid ? kExitOk : kExitInputError;
}

int cmd_gen(const std::string& family, size_t distance, double p,
            const RandomLdpcParams& random_params, uint64_t seed,
            const std::string& out_path, std::ostream& out) {
  ErrorModel model;
  try {
    if (family == "rep") {
      model = gen_repetition_code(distance, p);
    } else if (family == "surface") {
      model = gen_surface_code_capacity(distance, p);
    } else {
      Rng rng(seed);
      model = gen_random_ldpc(random_params, rng);
    }
  } catch (const InvalidParams& e) {
    throw InputError(e.what());
  }
  write_file(out_path, serialize_dem(to_program(model)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Most-likely-error decoding of detector error models by A* search"};
  app.require_subcommand(1);

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a file of shots against a DEM");
  std::string dem_path, in_path = "-", in_format = "dets", out_path = "-", stats_path,
                        obs_path;
  size_t rounds = 1;
  DecoderFlags decode_flags;
  decode->add_option("--dem", dem_path, "Detector error model file")->required();
  decode->add_option("--in", in_path, "Shot file ('-' for stdin)");
  decode->add_option("--in-format", in_format, "Shot file format")
      ->check(CLI::IsMember({"dets", "b01"}));
  decode->add_option("--out", out_path, "Prediction output ('-' for stdout)");
  decode->add_option("--stats", stats_path, "Write aggregate statistics JSON here");
  decode->add_option("--obs-in", obs_path,
                     "Actual observable flips, one 01 line per shot, for error counting");
  decode->add_option("--rounds", rounds, "Rounds per shot for per-round rates")
      ->check(CLI::PositiveNumber);
  decode_flags.attach(decode);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample shots, decode them, report error rates");
  std::string sample_dem, oracle = "astar", csv_path, model_name;
  uint64_t shots = 1000;
  size_t sample_rounds = 1;
  std::optional<double> p_label;
  bool timing = false;
  DecoderFlags sample_flags;
  sample->add_option("--dem", sample_dem, "Detector error model file")->required();
  sample->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
  sample->add_option("--rounds", sample_rounds, "Rounds per shot")->check(CLI::PositiveNumber);
  sample->add_option("--oracle", oracle, "Decoder")
      ->check(CLI::IsMember({"brute", "dijkstra", "astar"}));
  sample->add_option("--csv", csv_path, "Append a CSV row to this file");
  sample->add_option("--model-name", model_name, "Model label for the CSV row");
  sample->add_option("--p", p_label, "Physical error rate label for the CSV row");
  sample->add_flag("--timing", timing, "Include wall time in the JSON output");
  sample_flags.attach(sample);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark DEM");
  std::string family, gen_out = "-";
  size_t distance = 3;
  double gen_p = 0.1;
  uint64_t gen_seed = 0;
  RandomLdpcParams rp;
  gen->add_option("--family", family, "Model family")
      ->required()
      ->check(CLI::IsMember({"rep", "surface", "random"}));
  gen->add_option("--distance", distance, "Code distance (rep, surface)");
  gen->add_option("--p", gen_p, "Channel probability (rep, surface)");
  gen->add_option("--num-errors", rp.num_errors, "Channels (random)");
  gen->add_option("--num-detectors", rp.num_detectors, "Detectors (random)");
  gen->add_option("--max-row-weight", rp.max_row_weight, "Max detectors per channel (random)");
  gen->add_option("--p-min", rp.p_min, "Lowest channel probability (random)");
  gen->add_option("--p-max", rp.p_max, "Highest channel probability (random)");
  gen->add_option("--seed", gen_seed, "Seed (random)");
  gen->add_option("--out", gen_out, "Output path ('-' for stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (decode->parsed()) {
      return cmd_decode(dem_path, in_path, in_format, out_path, stats_path, obs_path, rounds,
                        decode_flags, out);
    }
    if (sample->parsed()) {
      return cmd_sample(sample_dem, shots, sample_rounds, oracle, csv_path, model_name,
                        p_label, timing, sample_flags, out);
    }
    return cmd_gen(family, distance, gen_p, rp, gen_seed, gen_out, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace mle::cli

// Copyright 2026 The eqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "eqlab/adversary.hpp"
#include "eqlab/codebook.hpp"
#include "eqlab/decoder.hpp"
#include "eqlab/experiments.hpp"
#include "eqlab/serialize.hpp"

namespace {

using namespace eqlab;

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error(ErrorCode::kIoFailure, "write to '" + path + "' failed");
}

struct CommonFlags {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultScenarioBudget;
  std::string format = "json";
  std::string out = "-";
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--prime", flags.prime, "Field modulus (prime, 2^16 <= p < 2^32)");
  app->add_option("--seed", flags.seed, "Master seed");
  app->add_option("--budget", flags.budget, "Scenario budget per decode");
  app->add_option("--format", flags.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", flags.out, "Output path, '-' for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivocation-tolerant linear coding lab"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  std::size_t gen_n = 0, gen_k = 0;
  std::string gen_kind = "random";
  auto* gen = app.add_subcommand("gen-code", "Emit an MDS generator matrix as JSON");
  add_common(gen, gen_flags);
  gen->add_option("-N,--encoders", gen_n, "Number of encoders")->required();
  gen->add_option("-K,--sources", gen_k, "Number of sources")->required();
  gen->add_option("--kind", gen_kind, "random, systematic or reed_solomon");

  CommonFlags atk_flags;
  std::string atk_code;
  std::size_t atk_beta = 1, atk_v = 2;
  auto* atk = app.add_subcommand("attack", "Build and verify a converse attack; emit JSON");
  add_common(atk, atk_flags);
  atk->add_option("--code", atk_code, "GeneratorMatrix JSON file")->required();
  atk->add_option("--beta", atk_beta, "Number of adversarial sources")->required();
  atk->add_option("--v", atk_v, "Versions per adversary")->required();

  CommonFlags dec_flags;
  std::string dec_code, dec_transcript, dec_mode = "fast";
  std::size_t dec_beta = 1, dec_v = 2;
  bool dec_solutions = false;
  auto* dec = app.add_subcommand("decode", "Decode a transcript JSON; emit DecodeResult JSON");
  add_common(dec, dec_flags);
  dec->add_option("--code", dec_code, "GeneratorMatrix JSON file")->required();
  dec->add_option("--transcript", dec_transcript, "Transcript JSON {node_set, values}")
      ->required();
  dec->add_option("--beta", dec_beta, "Number of adversarial sources")->required();
  dec->add_option("--v", dec_v, "Versions per adversary")->required();
  dec->add_option("--mode", dec_mode, "fast or strict")
      ->check(CLI::IsMember({"fast", "strict"}));
  dec->add_flag("--solutions", dec_solutions, "Include one solution per feasible scenario");

  CommonFlags sw_flags;
  sw_flags.format = "csv";
  std::string sw_spec;
  std::size_t sw_trials = 0;
  bool sw_timing = false;
  auto* sw = app.add_subcommand("sweep", "Run an experiment sweep; emit CSV or JSON results");
  add_common(sw, sw_flags);
  sw->add_option("--spec", sw_spec, "ExperimentSpec JSON file (default sweep when omitted)");
  sw->add_option("--trials", sw_trials, "Override trials per row");
  sw->add_flag("--timing", sw_timing, "Record wall time per row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Field f = Field::create(gen_flags.prime);
      const CodeDraw draw =
          generate_mds_code(f, code_kind_from_string(gen_kind), gen_n, gen_k, gen_flags.seed);
      write_text(gen_flags.out, to_json(draw.code, f).dump(2) + "\n");
    } else if (*atk) {
      Field f = Field::create(atk_flags.prime);
      const GeneratorMatrix gm = code_from_json(read_json_file(atk_code), f);
      const SystemConfig cfg{gm.n, gm.k, atk_beta, atk_v, f.modulus()};
      cfg.validate();
      const AttackInstance attack = converse_attack(f, gm, cfg, atk_flags.seed);
      if (!verify_attack(f, gm, cfg, attack)) {
        throw Error(ErrorCode::kAttackConstructionFailed, "attack failed verification");
      }
      write_text(atk_flags.out, to_json(attack).dump(2) + "\n");
    } else if (*dec) {
      Field f = Field::create(dec_flags.prime);
      const GeneratorMatrix gm = code_from_json(read_json_file(dec_code), f);
      const Transcript transcript = transcript_from_json(read_json_file(dec_transcript), f);
      const SystemConfig cfg{gm.n, gm.k, dec_beta, dec_v, f.modulus()};
      cfg.validate();
      DecodeOptions opts;
      opts.mode = dec_mode == "strict" ? DecodeMode::kStrict : DecodeMode::kFast;
      opts.budget = dec_flags.budget;
      opts.collect_solutions = dec_solutions;
      write_text(dec_flags.out, to_json(decode(f, gm, transcript, cfg, opts)).dump(2) + "\n");
    } else if (*sw) {
      ExperimentSpec spec = sw_spec.empty() ? ExperimentSpec::default_sweep()
                                            : experiment_spec_from_json(read_json_file(sw_spec));
      if (sw->count("--seed")) spec.seed = sw_flags.seed;
      if (sw->count("--budget")) spec.budget = sw_flags.budget;
      if (sw->count("--prime")) spec.prime = Field::create(sw_flags.prime).modulus();
      if (sw_trials > 0) spec.trials = sw_trials;
      if (sw_timing) spec.record_wall_time = true;
      const auto results = run_sweep(spec);
      const auto format = output_format_from_string(sw_flags.format);
      if (sw_flags.out.empty() || sw_flags.out == "-") {
        std::cout << (format == OutputFormat::kCsv ? results_csv(results)
                                                   : results_json(results));
      } else {
        emit_results(results, format, sw_flags.out);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

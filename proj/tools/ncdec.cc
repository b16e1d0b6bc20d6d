// tools/ncdec.cc

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command line for the noisy-channel decoding toolkit: train toy models,
// decode in the four modes, random-search tune the combination weights,
// score BLEU, and run the speed/cost benchmark grid.
//
// Exit codes: 0 success, 2 bad flags, 3 model/mode mismatch, 4 IO failure.

#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nc/bench.h"
#include "nc/bleu.h"
#include "nc/decoder.h"
#include "nc/model_file.h"
#include "nc/text_io.h"
#include "nc/tuner.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadFlags = 2;
constexpr int kExitModelMismatch = 3;
constexpr int kExitIoFailure = 4;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_in, const std::string& message)
      : std::runtime_error(message), code(code_in) {}
};

std::vector<nc::StringSentence> read_lines_or_die(const std::string& path) {
  try {
    return nc::read_token_lines(path);
  } catch (const std::exception& e) {
    throw CliError(kExitIoFailure, e.what());
  }
}

nc::ModelFile load_model_or_die(const std::string& path) {
  try {
    return nc::load_model_file(path);
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.rfind("cannot open", 0) == 0) throw CliError(kExitIoFailure, what);
    throw CliError(kExitModelMismatch, what);
  } catch (const std::exception& e) {
    throw CliError(kExitModelMismatch, e.what());
  }
}

nc::Mode parse_mode_or_die(const std::string& name) {
  try {
    return nc::parse_mode(name);
  } catch (const std::exception& e) {
    throw CliError(kExitModelMismatch, e.what());
  }
}

struct DecodeFlags {
  std::string mode = "dir";
  int32_t beam = 5;
  int32_t k2 = 3;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lenpen = 0.0;
  int32_t topf = 500;
  bool full_vocab = false;
  bool lm_div_by_t = false;
  int32_t workers = 1;
  int32_t max_len_a = 2;
  int32_t max_len_b = 20;

  void add_to(CLI::App& app, bool with_weights = true) {
    app.add_option("--mode", mode, "Decode mode")
        ->check(CLI::IsMember({"dir", "dir+lm", "naive-nc", "fast-nc"}))
        ->capture_default_str();
    app.add_option("--beam", beam, "Beam size k1")->capture_default_str();
    app.add_option("--k2", k2, "Rescoring candidates per beam")
        ->capture_default_str();
    if (with_weights) {
      app.add_option("--lambda1", lambda1, "Channel model weight")
          ->capture_default_str();
      app.add_option("--lambda2", lambda2, "Language model weight")
          ->capture_default_str();
      app.add_option("--lenpen", lenpen, "Length reward weight")
          ->capture_default_str();
    }
    app.add_option("--topf", topf, "Frequent types added to the reduced vocab")
        ->capture_default_str();
    app.add_flag("--full-vocab", full_vocab,
                 "Disable vocabulary reduction in fast-nc");
    app.add_flag("--lm-div-by-t", lm_div_by_t,
                 "Divide the LM term by t instead of s");
    app.add_option("--workers", workers, "Worker threads over sentences")
        ->capture_default_str();
    app.add_option("--max-len-a", max_len_a, "Length cap slope (a*s + b)")
        ->capture_default_str();
    app.add_option("--max-len-b", max_len_b, "Length cap offset (a*s + b)")
        ->capture_default_str();
  }

  nc::DecodeConfig config(nc::Mode parsed_mode) const {
    nc::DecodeConfig cfg;
    cfg.mode = parsed_mode;
    cfg.k1 = beam;
    cfg.k2 = k2;
    cfg.top_f = topf;
    cfg.full_vocab = full_vocab;
    cfg.lm_div_by_t = lm_div_by_t;
    cfg.max_len_a = max_len_a;
    cfg.max_len_b = max_len_b;
    return cfg;
  }

  nc::CombinationWeights weights() const {
    return nc::CombinationWeights{lambda1, lambda2, lenpen};
  }

  json to_json() const {
    return json{{"mode", mode},
                {"beam", beam},
                {"k2", k2},
                {"lambda1", lambda1},
                {"lambda2", lambda2},
                {"lenpen", lenpen},
                {"topf", topf},
                {"full_vocab", full_vocab},
                {"lm_div_by_t", lm_div_by_t},
                {"workers", workers},
                {"max_len_a", max_len_a},
                {"max_len_b", max_len_b}};
  }
};

json counters_json(const nc::CostCounters& c) {
  return json{{"direct_evals", c.direct_evals},
              {"lm_evals", c.lm_evals},
              {"channel_evals", c.channel_evals},
              {"channel_calls", c.channel_calls}};
}

int run_train(const std::string& src_path, const std::string& tgt_path,
              const std::string& out_path, const nc::TrainOptions& options) {
  const auto src = read_lines_or_die(src_path);
  const auto tgt = read_lines_or_die(tgt_path);
  if (src.size() != tgt.size()) {
    throw CliError(kExitIoFailure, "misaligned corpora: " +
                                       std::to_string(src.size()) + " vs " +
                                       std::to_string(tgt.size()) + " lines");
  }
  nc::ModelFile model;
  try {
    model = nc::train_model_file(src, tgt, options);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitIoFailure, e.what());
  }
  try {
    nc::save_model_file(model, out_path);
  } catch (const std::exception& e) {
    throw CliError(kExitIoFailure, e.what());
  }
  std::cerr << "trained model: |V_src|=" << model.src_vocab->size()
            << " |V_tgt|=" << model.tgt_vocab->size()
            << " members=" << model.direct_members.size() << "\n";
  return kExitOk;
}

int run_decode(const std::string& model_path, const DecodeFlags& flags,
               const std::string& input_path, const std::string& output_path,
               const std::string& diag_path) {
  const nc::ModelFile model = load_model_or_die(model_path);
  const nc::Mode mode = parse_mode_or_die(flags.mode);
  const auto input = read_lines_or_die(input_path);

  std::vector<nc::TokenIds> sources;
  sources.reserve(input.size());
  for (const auto& sent : input) {
    sources.push_back(nc::encode_source(*model.src_vocab, sent));
  }

  std::vector<nc::DecodeResult> results;
  try {
    results = nc::decode_batch(sources, model.models(), flags.weights(),
                               flags.config(mode), flags.workers);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitModelMismatch, e.what());
  }

  std::vector<std::string> lines;
  lines.reserve(results.size());
  for (const auto& result : results) {
    lines.push_back(
        nc::join_tokens(nc::output_tokens(*model.tgt_vocab, result.best)));
  }
  try {
    nc::write_lines(output_path, lines);
  } catch (const std::exception& e) {
    throw CliError(kExitIoFailure, e.what());
  }

  if (!diag_path.empty()) {
    json sentences = json::array();
    nc::CostCounters totals;
    for (size_t i = 0; i < results.size(); ++i) {
      const nc::DecodeResult& r = results[i];
      totals.merge(r.counters);
      json steps = json::array();
      for (const nc::StepCost& step : r.steps) {
        json sj = counters_json(step.delta);
        sj["step"] = step.step;
        sj["num_candidates"] = step.num_candidates;
        steps.push_back(std::move(sj));
      }
      json finished = json::array();
      for (const nc::FinishedHypothesis& fin : r.finished) {
        finished.push_back(json{
            {"output", nc::join_tokens(
                           nc::output_tokens(*model.tgt_vocab, fin.hyp.prefix))},
            {"direct_lp", fin.hyp.direct_lp},
            {"lm_lp", fin.hyp.lm_lp},
            {"channel_lp", fin.hyp.channel_lp},
            {"combined", fin.hyp.combined},
            {"final", fin.final_score}});
      }
      sentences.push_back(json{{"index", i},
                               {"source", nc::join_tokens(input[i])},
                               {"output", lines[i]},
                               {"combined", r.best_combined},
                               {"final", r.best_final},
                               {"degenerate", r.degenerate},
                               {"support_size", r.support_size},
                               {"counters", counters_json(r.counters)},
                               {"steps", std::move(steps)},
                               {"finished", std::move(finished)}});
    }
    const json diag{{"mode", flags.mode},
                    {"config", flags.to_json()},
                    {"totals", counters_json(totals)},
                    {"sentences", std::move(sentences)}};
    try {
      nc::write_text_file(diag_path, diag.dump(1) + "\n");
    } catch (const std::exception& e) {
      throw CliError(kExitIoFailure, e.what());
    }
  }
  return kExitOk;
}

int run_tune(const std::string& model_path, const DecodeFlags& flags,
             const std::string& dev_src_path, const std::string& dev_ref_path,
             int32_t samples, double lo, double hi, uint64_t seed,
             const std::string& table_path) {
  const nc::ModelFile model = load_model_or_die(model_path);
  const nc::Mode mode = parse_mode_or_die(flags.mode);
  const auto dev_src = read_lines_or_die(dev_src_path);
  const auto dev_ref = read_lines_or_die(dev_ref_path);

  nc::TuneSpec spec;
  spec.mode = mode;
  if (samples > 0) spec.samples = samples;
  spec.lo = lo;
  spec.hi = hi;
  spec.seed = seed;

  std::vector<nc::TokenIds> sources;
  sources.reserve(dev_src.size());
  for (const auto& sent : dev_src) {
    sources.push_back(nc::encode_source(*model.src_vocab, sent));
  }

  nc::TuneResult result;
  try {
    result = nc::tune(spec, sources, dev_ref, model.models(), flags.config(mode),
                      *model.tgt_vocab, flags.workers);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitIoFailure, e.what());
  }

  if (!table_path.empty()) {
    try {
      nc::write_text_file(table_path, nc::tune_table_tsv(mode, result));
    } catch (const std::exception& e) {
      throw CliError(kExitIoFailure, e.what());
    }
  }
  const json best{{"index", result.best_index},
                  {"mode", flags.mode},
                  {"lambda1", result.best.lambda1},
                  {"lambda2", result.best.lambda2},
                  {"len_reward", result.best.len_reward},
                  {"bleu", result.best_bleu}};
  std::cout << best.dump() << "\n";
  return kExitOk;
}

int run_bleu(const std::string& hyp_path, const std::string& ref_path,
             bool smooth) {
  const auto hyps = read_lines_or_die(hyp_path);
  const auto refs = read_lines_or_die(ref_path);
  nc::BleuReport report;
  try {
    report = nc::corpus_bleu(hyps, refs, smooth);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitIoFailure, e.what());
  }
  std::printf(
      "BLEU = %.2f  %.1f/%.1f/%.1f/%.1f  (BP = %.3f, hyp_len = %lld, "
      "ref_len = %lld)\n",
      report.bleu, 100.0 * report.precisions[0], 100.0 * report.precisions[1],
      100.0 * report.precisions[2], 100.0 * report.precisions[3],
      report.brevity_penalty, static_cast<long long>(report.hyp_len),
      static_cast<long long>(report.ref_len));
  return kExitOk;
}

int run_bench(const std::string& model_path, const DecodeFlags& flags,
              const std::string& input_path,
              const std::vector<std::string>& mode_names,
              const std::vector<int32_t>& beams,
              const std::vector<int32_t>& batch_sizes, int32_t trials,
              uint64_t mem_budget_mb, const std::string& tsv_path,
              const std::string& json_path) {
  const nc::ModelFile model = load_model_or_die(model_path);
  const auto input = read_lines_or_die(input_path);

  std::vector<nc::TokenIds> sources;
  sources.reserve(input.size());
  for (const auto& sent : input) {
    sources.push_back(nc::encode_source(*model.src_vocab, sent));
  }

  nc::BenchOptions options;
  options.modes.clear();
  for (const std::string& name : mode_names) {
    options.modes.push_back(parse_mode_or_die(name));
  }
  options.beams = beams;
  options.batch_sizes = batch_sizes;
  options.trials = trials;
  options.mem_budget_bytes = mem_budget_mb << 20;
  options.workers = flags.workers;

  nc::BenchReport report;
  try {
    report = nc::bench(sources, model.models(), flags.weights(),
                       flags.config(nc::Mode::kDirect), options);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitModelMismatch, e.what());
  }

  try {
    if (!tsv_path.empty()) nc::write_text_file(tsv_path, nc::bench_tsv(report));
    if (!json_path.empty()) {
      nc::write_text_file(json_path, nc::bench_json(report) + "\n");
    }
    if (tsv_path.empty() && json_path.empty()) {
      nc::write_text_file("-", nc::bench_tsv(report));
    }
  } catch (const std::exception& e) {
    throw CliError(kExitIoFailure, e.what());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy-channel beam-search decoding toolkit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train toy models from a parallel corpus");
  std::string train_src, train_tgt, train_out;
  nc::TrainOptions train_options;
  train->add_option("--src", train_src, "Source corpus file")->required();
  train->add_option("--tgt", train_tgt, "Target corpus file")->required();
  train->add_option("--out", train_out, "Output model file")->required();
  train->add_option("--em-iters", train_options.em_iters, "EM iterations")
      ->capture_default_str();
  train->add_option("--ngram-order", train_options.ngram_order, "LM order")
      ->capture_default_str();
  train->add_option("--alpha", train_options.alpha, "Add-alpha smoothing")
      ->capture_default_str();
  train->add_option("--mu", train_options.mu, "Direct-model lexical mixture weight")
      ->capture_default_str();
  train->add_option("--smoothing", train_options.smoothing,
                    "Uniform floor mixed into lexical tables")
      ->capture_default_str();
  train->add_option("--ensemble", train_options.ensemble,
                    "Number of direct-model ensemble members")
      ->capture_default_str();
  train->add_option("--seed", train_options.seed, "Training seed")
      ->capture_default_str();

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a file of source sentences");
  std::string decode_model, decode_input, decode_output = "-", decode_diag;
  DecodeFlags decode_flags;
  bool decode_print_config = false;
  decode->add_option("--model", decode_model, "Model file");
  decode->add_option("--input", decode_input, "Source sentences (- for stdin)");
  decode->add_option("--output", decode_output, "Hypotheses out (- for stdout)")
      ->capture_default_str();
  decode->add_option("--diag", decode_diag, "Per-sentence diagnostics JSON");
  decode_flags.add_to(*decode);
  decode->add_flag("--print-config", decode_print_config,
                   "Print the resolved configuration as JSON and exit");

  // tune
  auto* tune = app.add_subcommand("tune", "Random-search the combination weights");
  std::string tune_model, tune_dev_src, tune_dev_ref, tune_table;
  int32_t tune_samples = 0;  // 0: mode default (10 / 100 / 1000)
  double tune_lo = 0.0, tune_hi = 2.0;
  uint64_t tune_seed = 0;
  DecodeFlags tune_flags;
  bool tune_print_config = false;
  tune->add_option("--model", tune_model, "Model file");
  tune->add_option("--dev-src", tune_dev_src, "Dev source sentences");
  tune->add_option("--dev-ref", tune_dev_ref, "Dev reference sentences");
  tune->add_option("--samples", tune_samples,
                   "Sampled configs (default 10/100/1000 by mode)");
  tune->add_option("--lo", tune_lo, "Sampling interval lower bound")
      ->capture_default_str();
  tune->add_option("--hi", tune_hi, "Sampling interval upper bound")
      ->capture_default_str();
  tune->add_option("--seed", tune_seed, "Sampling seed")->capture_default_str();
  tune->add_option("--table", tune_table, "Per-config BLEU table (TSV)");
  tune_flags.add_to(*tune, /*with_weights=*/false);
  tune->add_flag("--print-config", tune_print_config,
                 "Print the resolved configuration as JSON and exit");

  // bleu
  auto* bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis file");
  std::string bleu_hyp, bleu_ref;
  bool bleu_smooth = false;
  bool bleu_print_config = false;
  bleu->add_option("--hyp", bleu_hyp, "Hypotheses file");
  bleu->add_option("--ref", bleu_ref, "References file");
  bleu->add_flag("--smooth", bleu_smooth, "Add-one smoothing for n >= 2");
  bleu->add_flag("--print-config", bleu_print_config,
                 "Print the resolved configuration as JSON and exit");

  // bench
  auto* bench = app.add_subcommand("bench", "Speed/cost benchmark grid");
  std::string bench_model, bench_input, bench_tsv_path, bench_json_path;
  std::vector<std::string> bench_modes{"dir", "naive-nc", "fast-nc"};
  std::vector<int32_t> bench_beams{5, 10, 25, 50};
  std::vector<int32_t> bench_batches{1, 10, 25, 50, 75, 100, 125, 150, 200, 300};
  int32_t bench_trials = 3;
  uint64_t bench_mem_mb = 4096;
  DecodeFlags bench_flags;
  bool bench_print_config = false;
  bench->add_option("--model", bench_model, "Model file");
  bench->add_option("--input", bench_input, "Source sentences");
  bench->add_option("--modes", bench_modes, "Modes to benchmark")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--beams", bench_beams, "Beam sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--batch-sizes", bench_batches, "Batch size candidates")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--trials", bench_trials, "Timing trials per cell")
      ->capture_default_str();
  bench->add_option("--mem-budget-mb", bench_mem_mb,
                    "Memory budget for the score-buffer estimate")
      ->capture_default_str();
  bench->add_option("--tsv", bench_tsv_path, "Report TSV path");
  bench->add_option("--json", bench_json_path, "Report JSON path");
  bench_flags.add_to(*bench);
  bench->add_flag("--print-config", bench_print_config,
                  "Print the resolved configuration as JSON and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  try {
    if (train->parsed()) {
      return run_train(train_src, train_tgt, train_out, train_options);
    }
    if (decode->parsed()) {
      if (decode_print_config) {
        std::cout << decode_flags.to_json().dump() << "\n";
        return kExitOk;
      }
      if (decode_model.empty() || decode_input.empty()) {
        std::cerr << "decode requires --model and --input\n";
        return kExitBadFlags;
      }
      return run_decode(decode_model, decode_flags, decode_input, decode_output,
                        decode_diag);
    }
    if (tune->parsed()) {
      if (tune_print_config) {
        json j = tune_flags.to_json();
        const nc::Mode mode = parse_mode_or_die(tune_flags.mode);
        j["samples"] =
            tune_samples > 0 ? tune_samples : nc::default_samples(mode);
        j["lo"] = tune_lo;
        j["hi"] = tune_hi;
        j["seed"] = tune_seed;
        std::cout << j.dump() << "\n";
        return kExitOk;
      }
      if (tune_model.empty() || tune_dev_src.empty() || tune_dev_ref.empty()) {
        std::cerr << "tune requires --model, --dev-src and --dev-ref\n";
        return kExitBadFlags;
      }
      return run_tune(tune_model, tune_flags, tune_dev_src, tune_dev_ref,
                      tune_samples, tune_lo, tune_hi, tune_seed, tune_table);
    }
    if (bleu->parsed()) {
      if (bleu_print_config) {
        std::cout << json{{"smooth", bleu_smooth}}.dump() << "\n";
        return kExitOk;
      }
      if (bleu_hyp.empty() || bleu_ref.empty()) {
        std::cerr << "bleu requires --hyp and --ref\n";
        return kExitBadFlags;
      }
      return run_bleu(bleu_hyp, bleu_ref, bleu_smooth);
    }
    if (bench->parsed()) {
      if (bench_print_config) {
        json j = bench_flags.to_json();
        j["modes"] = bench_modes;
        j["beams"] = bench_beams;
        j["batch_sizes"] = bench_batches;
        j["trials"] = bench_trials;
        j["mem_budget_mb"] = bench_mem_mb;
        std::cout << j.dump() << "\n";
        return kExitOk;
      }
      if (bench_model.empty() || bench_input.empty()) {
        std::cerr << "bench requires --model and --input\n";
        return kExitBadFlags;
      }
      return run_bench(bench_model, bench_flags, bench_input, bench_modes,
                       bench_beams, bench_batches, bench_trials, bench_mem_mb,
                       bench_tsv_path, bench_json_path);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

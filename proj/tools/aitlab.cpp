// aitlab: command-line frontend over the laboratory library. Every command
// prints JSON lines: first a meta record naming the machine and generator
// versions plus the calibration constants, then one record per result.
// Exit codes: 0 success, 2 bad usage or bad input, 3 internal failure.

#include <CLI11.hpp>
#include <cstdint>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/chaos.hpp"
#include "ait/config.hpp"
#include "ait/dyadic.hpp"
#include "ait/enumerate.hpp"
#include "ait/machine.hpp"
#include "ait/mltests.hpp"
#include "ait/omega.hpp"
#include "ait/predictor.hpp"
#include "ait/selection.hpp"
#include "ait/sources.hpp"
#include "ait/tourney.hpp"

using ait::BitString;
using ait::Dyadic;
using ait::config::RunConfig;
using nlohmann::json;

namespace {

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json meta_line(const RunConfig& cfg) {
  json j;
  j["c"] = cfg.c;
  j["c1"] = cfg.c1;
  j["kind"] = "meta";
  j["machine"] = ait::machine::kMachineVersion;
  j["prng"] = ait::sources::kPrngVersion;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  if (!cfg.deterministic) j["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
  return j;
}

// One input choice shared by the bit-consuming commands.
struct SourceOpts {
  std::string in_path;
  bool use_prng = false;
  bool use_champernowne = false;
  std::string periodic;
  std::string constant;
  std::uint64_t count = 0;
};

void add_source_options(CLI::App* cmd, SourceOpts* s) {
  cmd->add_option("--in", s->in_path, "read bits from a file (ascii or packed)");
  cmd->add_flag("--prng", s->use_prng, "fair-coin bits from the seeded generator");
  cmd->add_flag("--champernowne", s->use_champernowne, "base-2 digit-concatenation bits");
  cmd->add_option("--periodic", s->periodic, "repeat this bit pattern");
  cmd->add_option("--constant", s->constant, "repeat this single bit");
  cmd->add_option("--count", s->count, "how many bits to take");
}

std::unique_ptr<ait::sources::BitSource> open_source(const SourceOpts& s, const RunConfig& cfg) {
  const int picked = int(!s.in_path.empty()) + int(s.use_prng) + int(s.use_champernowne) +
                     int(!s.periodic.empty()) + int(!s.constant.empty());
  if (picked != 1)
    throw std::invalid_argument("pick exactly one of --in/--prng/--champernowne/--periodic/--constant");
  if (!s.in_path.empty())
    return ait::sources::buffer_source(ait::sources::read_bits_file(s.in_path));
  if (s.use_prng) return ait::sources::prng_stream(cfg.seed);
  if (s.use_champernowne) return ait::sources::champernowne_source();
  if (!s.periodic.empty()) return ait::sources::periodic_source(BitString(s.periodic));
  if (s.constant != "0" && s.constant != "1")
    throw std::invalid_argument("--constant takes 0 or 1");
  return ait::sources::constant_source(s.constant == "1");
}

BitString materialize(const SourceOpts& s, const RunConfig& cfg) {
  if (!s.in_path.empty()) {
    BitString bits = ait::sources::read_bits_file(s.in_path);
    if (s.count == 0) return bits;
    if (s.count > bits.size())
      throw std::invalid_argument("file holds fewer bits than --count asks for");
    return bits.prefix(s.count);
  }
  if (s.count == 0) throw std::invalid_argument("generated input needs --count");
  auto src = open_source(s, cfg);
  BitString bits;
  for (std::uint64_t i = 0; i < s.count; ++i) bits.push_back(src->next());
  return bits;
}

void write_artifact(const std::string& path, const BitString& bits, const std::string& format) {
  if (format == "packed")
    ait::sources::write_bits_packed(path, bits);
  else
    ait::sources::write_bits_ascii(path, bits);
}

int run_gen(const SourceOpts& src, unsigned base, const std::string& out_path,
            const RunConfig& cfg) {
  emit(meta_line(cfg));
  if (src.use_champernowne && base != 2) {
    if (src.count == 0) throw std::invalid_argument("gen needs --count");
    const std::string digits = ait::sources::champernowne_digits(base, src.count);
    json j;
    j["base"] = base;
    j["count"] = src.count;
    j["digits"] = digits;
    j["kind"] = "gen";
    j["source"] = "champernowne";
    emit(j);
    if (!out_path.empty()) {
      if (cfg.format == "packed")
        throw std::invalid_argument("packed output is for bits; base " + std::to_string(base) +
                                    " digits want format=ascii");
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
      out << digits << "\n";
    }
    return 0;
  }
  auto source = open_source(src, cfg);
  const std::string name = source->describe();
  const BitString bits = materialize(src, cfg);
  json j;
  j["count"] = bits.size();
  j["kind"] = "gen";
  j["source"] = name;
  if (bits.size() <= 4096) j["bits"] = bits.str();
  emit(j);
  if (!out_path.empty()) write_artifact(out_path, bits, cfg.format);
  return 0;
}

int run_test(const SourceOpts& src, const RunConfig& cfg) {
  emit(meta_line(cfg));
  const BitString bits = materialize(src, cfg);
  std::vector<std::unique_ptr<ait::mltests::FiniteTest>> battery;
  battery.push_back(ait::mltests::leading_zeros_test());
  battery.push_back(ait::mltests::odd_positions_test());
  if (bits.size() <= ait::mltests::kFrequencyExactCap)
    battery.push_back(ait::mltests::frequency_test());
  else {
    json note;
    note["kind"] = "note";
    note["text"] = "frequency test skipped: input longer than its exact-tail cap";
    emit(note);
  }
  if (cfg.battery == "universal")
    battery.push_back(ait::mltests::universal_test_lower(cfg.steps, cfg.max_len, cfg.threads));
  for (const auto& test : battery) {
    const auto rec = ait::mltests::record_of(*test, bits);
    json j;
    j["certificate"] = rec.certificate;
    j["kind"] = "test";
    j["length"] = rec.length;
    j["level"] = rec.level;
    j["test"] = rec.test_name;
    emit(j);
  }
  return 0;
}

int run_complexity(const std::string& value, const std::string& cond, const std::string& kind,
                   const std::string& codec, const RunConfig& cfg) {
  emit(meta_line(cfg));
  const BitString x(value);
  const BitString condition(cond);
  const auto want = (kind == "K") ? ait::machine::Kind::K : ait::machine::Kind::C;
  const auto est = ait::machine::ComplexityTable({condition, cfg.steps, cfg.max_len}, cfg.threads)
                       .estimate(x, want);
  json j;
  j["budget"] = est.step_budget;
  j["complexity"] = est.value;
  j["conditioned_on"] = est.conditioned_on.str();
  j["kind"] = "complexity";
  j["machine"] = est.machine_version;
  j["max_len"] = est.max_len;
  j["self_delimiting"] = (want == ait::machine::Kind::K);
  j["target_length"] = x.size();
  j["witness"] = est.witness.str();
  emit(j);
  if (!codec.empty()) {
    const auto comp = ait::machine::compressor_bound(x, codec);
    json c;
    c["codec"] = comp.codec;
    c["kind"] = "compressor";
    c["value"] = comp.value;
    emit(c);
  }
  return 0;
}

int run_omega(unsigned max_len, std::uint64_t phases, bool with_trace, const RunConfig& cfg) {
  emit(meta_line(cfg));
  const auto approx = ait::omega::dovetail_omega(max_len, phases, cfg.threads);
  if (with_trace) {
    for (const auto& point : ait::omega::trace_of(approx)) {
      json j;
      j["halted"] = point.halted;
      j["kind"] = "omega_trace";
      j["phase"] = point.phase;
      j["value_exponent"] = point.value.exponent();
      j["value_numerator"] = point.value.hex_numerator();
      emit(j);
    }
  }
  json j;
  j["contributors"] = approx.contributors.size();
  j["kind"] = "omega";
  j["max_len"] = approx.max_len;
  j["phases"] = approx.phases;
  j["value"] = approx.value.to_double();
  j["value_bits"] = approx.value.binary_string(std::min(max_len, 32u));
  j["value_exponent"] = approx.value.exponent();
  j["value_numerator"] = approx.value.hex_numerator();
  emit(j);
  return 0;
}

int run_select(const SourceOpts& src, const std::string& rule_text, double eps,
               const std::string& out_path, const RunConfig& cfg) {
  emit(meta_line(cfg));
  const BitString window = materialize(src, cfg);
  const auto rule = ait::selection::parse_rule(rule_text);
  const auto sel = ait::selection::select_mwc(*rule, window);
  json j;
  j["kind"] = "selection";
  j["rule"] = rule->describe();
  j["scanned"] = sel.scanned;
  j["selected"] = sel.indices.size();
  j["truncated"] = sel.truncated;
  j["window"] = window.size();
  emit(j);
  const auto report = ait::selection::stability_report(sel.subsequence, eps);
  json s;
  s["eps"] = eps;
  s["final_excursion"] = report.final_excursion;
  s["final_fraction"] = report.final_fraction;
  s["kind"] = "stability";
  s["last_outside"] = report.last_outside;
  s["length"] = report.length;
  s["majority_throughout"] = report.majority_throughout;
  s["max_excursion"] = report.max_excursion;
  s["ones"] = report.ones;
  emit(s);
  if (!out_path.empty()) write_artifact(out_path, sel.subsequence, cfg.format);
  return 0;
}

int run_tourney(unsigned players, std::uint64_t trials, unsigned vmax_opt, const RunConfig& cfg) {
  emit(meta_line(cfg));
  if (trials == 0) {
    const auto t = ait::tourney::Tournament::random(players, cfg.seed);
    const auto witness = ait::tourney::largest_transitive(t);
    const auto packed = ait::tourney::compress_with_witness(t, witness);
    json j;
    j["encoded_bits"] = t.bits().size();
    j["kind"] = "tourney";
    j["players"] = players;
    j["rewritten_bits"] = packed.bits.size();
    j["savings"] = ait::tourney::savings(players, static_cast<unsigned>(witness.size()));
    j["witness_size"] = witness.size();
    emit(j);
    return 0;
  }
  unsigned vmax = vmax_opt;
  if (vmax == 0) {
    unsigned lg = 0;
    while ((1u << lg) < players) ++lg;  // ceil(log2 players)
    vmax = 1 + 4 * lg;                  // 1 + 2 * ceil(2 log2 n)
  }
  const auto r = ait::tourney::sample_and_check(players, vmax, trials, cfg.seed, cfg.threads);
  json j;
  j["fraction"] = r.fraction;
  j["kind"] = "tourney_sample";
  j["players"] = players;
  j["trials"] = r.trials;
  j["vmax"] = vmax;
  j["wilson_high"] = r.wilson_high;
  j["wilson_low"] = r.wilson_low;
  j["within"] = r.within;
  emit(j);
  return 0;
}

std::unique_ptr<ait::chaos::Predictor> make_predictor(const std::string& name) {
  if (name == "constant0") return ait::chaos::constant_predictor(false);
  if (name == "constant1") return ait::chaos::constant_predictor(true);
  if (name == "copy-last") return ait::chaos::copy_last_predictor();
  if (name == "majority") return ait::chaos::majority_predictor();
  if (name.rfind("markov:", 0) == 0) {
    const int k = std::stoi(name.substr(7));
    if (k < 0) throw std::invalid_argument("markov order must be >= 0");
    return ait::chaos::markov_predictor(static_cast<unsigned>(k));
  }
  throw std::invalid_argument("unknown predictor '" + name + "'");
}

// Finite inputs name dyadic rationals, whose expansions end in zeros, so a
// file-backed state pads with zeros instead of running dry.
ait::chaos::MicroState chaos_state(const SourceOpts& src, const RunConfig& cfg) {
  if (!src.in_path.empty())
    return ait::chaos::MicroState::from_bits(ait::sources::read_bits_file(src.in_path));
  return ait::chaos::MicroState(open_source(src, cfg));
}

int run_chaos(const SourceOpts& src, std::uint64_t steps, const std::string& predictor,
              std::uint64_t sweep_seeds, bool orbit_only, const std::string& out_path,
              const RunConfig& cfg) {
  emit(meta_line(cfg));
  if (orbit_only) {
    ait::chaos::MicroState state = chaos_state(src, cfg);
    const BitString orbit = ait::chaos::orbit_observables(state, steps);
    json j;
    j["kind"] = "orbit";
    j["steps"] = orbit.size();
    if (orbit.size() <= 4096) j["bits"] = orbit.str();
    emit(j);
    if (!out_path.empty()) write_artifact(out_path, orbit, cfg.format);
    return 0;
  }
  if (sweep_seeds > 0) {
    const auto r = ait::chaos::accuracy_over_seeds([&] { return make_predictor(predictor); },
                                                   sweep_seeds, cfg.seed, steps, cfg.threads);
    json j;
    j["kind"] = "chaos_sweep";
    j["max"] = r.max;
    j["mean"] = r.mean;
    j["min"] = r.min;
    j["predictor"] = predictor;
    j["seeds"] = r.seeds;
    j["steps"] = steps;
    emit(j);
    return 0;
  }
  ait::chaos::MicroState state = chaos_state(src, cfg);
  auto pred = make_predictor(predictor);
  const double accuracy = ait::chaos::evaluate_predictor(*pred, state, steps);
  json j;
  j["accuracy"] = accuracy;
  j["kind"] = "chaos";
  j["predictor"] = pred->describe();
  j["steps"] = steps;
  emit(j);
  return 0;
}

ait::predictor::ModelClass library_class() {
  using ait::mltests::bernoulli_measure;
  using ait::mltests::point_mass_zeros;
  using ait::mltests::uniform_measure;
  return ait::predictor::ModelClass({{uniform_measure(), Dyadic::pow2_neg(1)},
                                     {point_mass_zeros(), Dyadic::pow2_neg(2)},
                                     {bernoulli_measure(3, 2), Dyadic::pow2_neg(3)}});
}

int run_predict(const std::string& truth, std::uint64_t horizon, std::uint64_t seeds,
                bool prior_mode, const std::string& value, const RunConfig& cfg) {
  emit(meta_line(cfg));
  if (prior_mode) {
    const ait::predictor::AlgorithmicPrior prior({BitString(), cfg.steps, cfg.max_len},
                                                 cfg.threads);
    const Dyadic low = prior.lower(BitString(value));
    json j;
    j["kind"] = "prior";
    j["prefix"] = value;
    j["programs"] = prior.program_count();
    j["value"] = low.to_double();
    j["value_exponent"] = low.exponent();
    j["value_numerator"] = low.hex_numerator();
    emit(j);
    return 0;
  }
  std::size_t index = 0;
  if (truth == "uniform")
    index = 0;
  else if (truth == "point")
    index = 1;
  else if (truth == "bern")
    index = 2;
  else
    throw std::invalid_argument("truth must be uniform, point, or bern");
  const auto cls = library_class();
  const auto r =
      ait::predictor::convergence_report(cls, index, seeds, cfg.seed, horizon, cfg.threads);
  json j;
  j["horizon"] = horizon;
  j["kind"] = "predict";
  j["max_total"] = r.max_total;
  j["mean_total"] = r.mean_total;
  j["reference"] = r.reference;
  j["seeds"] = r.seeds;
  j["truth"] = truth;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for algorithmic randomness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  RunConfig cfg;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  auto* opt_seed = app.add_option("--seed", cfg.seed, "base seed");
  auto* opt_threads = app.add_option("--threads", cfg.threads, "0 = all cores, 1 = serial");
  auto* opt_max_len = app.add_option("--max-len", cfg.max_len, "program length cap");
  auto* opt_steps = app.add_option("--steps-budget", cfg.steps, "machine step budget");
  auto* opt_trials = app.add_option("--trials", cfg.trials, "Monte Carlo trials");
  auto* opt_battery = app.add_option("--battery", cfg.battery, "default | universal");
  auto* opt_format = app.add_option("--format", cfg.format, "ascii | packed artifacts");
  auto* opt_det = app.add_flag("--deterministic", cfg.deterministic, "suppress timestamps");

  SourceOpts gen_src;
  unsigned gen_base = 2;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate digit or bit streams");
  add_source_options(gen, &gen_src);
  gen->add_option("--base", gen_base, "digit base for --champernowne");
  gen->add_option("--out", gen_out, "write the bits to this file");

  SourceOpts test_src;
  auto* test = app.add_subcommand("test", "run the randomness test battery");
  add_source_options(test, &test_src);

  std::string cx_value, cx_cond, cx_kind = "C", cx_codec;
  auto* cx = app.add_subcommand("complexity", "shortest-description upper bounds");
  cx->add_option("--value", cx_value, "target bit string")->required();
  cx->add_option("--cond", cx_cond, "conditioning bit string");
  cx->add_option("--kind", cx_kind)->check(CLI::IsMember({"C", "K"}));
  cx->add_option("--codec", cx_codec, "also report a compressor bound (rle)");

  unsigned om_len = 10;
  std::uint64_t om_phases = 10000;
  bool om_trace = false;
  auto* om = app.add_subcommand("omega", "dovetailed halting-weight approximation");
  om->add_option("--max-len", om_len, "program length cap");
  om->add_option("--phases", om_phases, "dovetail phases");
  om->add_flag("--trace", om_trace, "emit one record per new halt");

  SourceOpts sel_src;
  std::string sel_rule = "all", sel_out;
  double sel_eps = 0.05;
  auto* sel = app.add_subcommand("select", "place-selection stability checks");
  add_source_options(sel, &sel_src);
  sel->add_option("--rule", sel_rule, "selection rule expression");
  sel->add_option("--eps", sel_eps, "excursion band for the stability report");
  sel->add_option("--out", sel_out, "write the selected subsequence");

  unsigned ty_players = 8, ty_vmax = 0;
  std::uint64_t ty_trials = 0;
  auto* ty = app.add_subcommand("tourney", "tournament coding and transitive search");
  ty->add_option("--players", ty_players, "tournament size");
  ty->add_option("--sample-trials", ty_trials, "Monte Carlo sample size (0 = single run)");
  ty->add_option("--vmax", ty_vmax, "transitive-size cap for sampling (0 = classic bound)");

  SourceOpts ch_src;
  std::uint64_t ch_steps = 1000, ch_sweep = 0;
  std::string ch_pred = "majority", ch_out;
  bool ch_orbit = false;
  auto* ch = app.add_subcommand("chaos", "doubling-map orbits and prediction");
  add_source_options(ch, &ch_src);
  ch->add_option("--steps", ch_steps, "orbit length / prediction rounds");
  ch->add_option("--predictor", ch_pred, "constant0|constant1|copy-last|majority|markov:K");
  ch->add_option("--sweep-seeds", ch_sweep, "average accuracy over this many seeded orbits");
  ch->add_flag("--orbit", ch_orbit, "dump the observable orbit instead of predicting");
  ch->add_option("--out", ch_out, "write orbit or bits to this file");

  std::string pr_truth = "uniform", pr_value;
  std::uint64_t pr_horizon = 1000, pr_seeds = 10;
  bool pr_prior = false;
  auto* pr = app.add_subcommand("predict", "mixture prediction and enumerated prior");
  pr->add_option("--truth", pr_truth, "uniform | point | bern");
  pr->add_option("--horizon", pr_horizon, "steps per run");
  pr->add_option("--seeds", pr_seeds, "number of sampled runs");
  pr->add_flag("--prior", pr_prior, "report the enumerated prior lower bound");
  pr->add_option("--value", pr_value, "prefix for --prior");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      RunConfig from_file = RunConfig::load(config_path);
      // Command-line flags beat the file; untouched fields come from it.
      if (opt_seed->count()) from_file.seed = cfg.seed;
      if (opt_threads->count()) from_file.threads = cfg.threads;
      if (opt_max_len->count()) from_file.max_len = cfg.max_len;
      if (opt_steps->count()) from_file.steps = cfg.steps;
      if (opt_trials->count()) from_file.trials = cfg.trials;
      if (opt_battery->count()) from_file.battery = cfg.battery;
      if (opt_format->count()) from_file.format = cfg.format;
      if (opt_det->count()) from_file.deterministic = cfg.deterministic;
      cfg = from_file;
    }
    cfg.validate();

    if (gen->parsed()) return run_gen(gen_src, gen_base, gen_out, cfg);
    if (test->parsed()) return run_test(test_src, cfg);
    if (cx->parsed()) return run_complexity(cx_value, cx_cond, cx_kind, cx_codec, cfg);
    if (om->parsed()) return run_omega(om_len, om_phases, om_trace, cfg);
    if (sel->parsed()) return run_select(sel_src, sel_rule, sel_eps, sel_out, cfg);
    if (ty->parsed()) return run_tourney(ty_players, ty_trials, ty_vmax, cfg);
    if (ch->parsed()) return run_chaos(ch_src, ch_steps, ch_pred, ch_sweep, ch_orbit, ch_out, cfg);
    if (pr->parsed()) return run_predict(pr_truth, pr_horizon, pr_seeds, pr_prior, pr_value, cfg);
    return 2;
  } catch (const std::invalid_argument& e) {
    json j;
    j["error"] = e.what();
    j["kind"] = "error";
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json j;
    j["error"] = e.what();
    j["kind"] = "internal_error";
    std::cerr << j.dump() << "\n";
    return 3;
  }
}

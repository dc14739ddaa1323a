// infocausal command-line harness.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 invalid
// input, 5 internal error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "infocausal/concrete_measures.hpp"
#include "infocausal/errors.hpp"
#include "infocausal/experiments.hpp"
#include "infocausal/markov.hpp"
#include "infocausal/models.hpp"
#include "infocausal/pc.hpp"
#include "infocausal/verify.hpp"

#ifndef INFOCAUSAL_DEFAULT_CORPUS
#define INFOCAUSAL_DEFAULT_CORPUS "data/corpus/moby_dick.txt"
#endif

namespace ic = infocausal;
using nlohmann::json;

namespace {

struct Common {
  std::string measure = "lz";
  std::optional<double> threshold;
  std::uint64_t seed = 1;
  std::string corpus;
  std::size_t jobs = 0;
  std::string out;
  std::size_t max_match = 30;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ic::IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ic::IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ic::IoError("error writing '" + path + "'");
}

std::string corpus_path(const Common& c) {
  if (!c.corpus.empty()) return c.corpus;
  if (const char* env = std::getenv("INFOCAUSAL_CORPUS"); env && *env) return env;
  return INFOCAUSAL_DEFAULT_CORPUS;
}

std::size_t job_count(const Common& c) {
  if (c.jobs > 0) return c.jobs;
  if (const char* env = std::getenv("INFOCAUSAL_JOBS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ic::ConfigError(std::string("invalid INFOCAUSAL_JOBS '") + env + "'");
  }
  return 1;
}

ic::LzConfig lz_config(const Common& c) {
  if (c.max_match == 0) throw ic::ConfigError("--max-match must be positive");
  ic::LzConfig cfg;
  cfg.max_match_length = c.max_match;
  return cfg;
}

/// Measure over the given files; returns measure and per-file labels.
std::shared_ptr<ic::InformationMeasure> file_measure(ic::MeasureKind kind,
                                                     const std::vector<std::string>& files,
                                                     const ic::LzConfig& lz) {
  switch (kind) {
    case ic::MeasureKind::kLz:
    case ic::MeasureKind::kGrammar: {
      std::vector<ic::SymbolString> strings;
      for (const auto& f : files) strings.push_back(ic::encode_text(read_file(f)));
      return ic::make_string_measure(kind, std::move(strings), lz);
    }
    case ic::MeasureKind::kVocab: {
      std::vector<std::string> texts;
      for (const auto& f : files) texts.push_back(read_file(f));
      return std::make_shared<ic::VocabMeasure>(
          ic::WordSetObservations::from_texts(texts, ic::default_stopwords()));
    }
    case ic::MeasureKind::kLcm: {
      ic::PeriodObservations obs;
      for (const auto& f : files) {
        std::istringstream in(read_file(f));
        std::string tok;
        in >> tok;
        try {
          obs.values.emplace_back(tok);
        } catch (const std::exception&) {
          throw ic::InputError("'" + f + "' does not hold an integer");
        }
      }
      return std::make_shared<ic::LcmMeasure>(std::move(obs));
    }
    case ic::MeasureKind::kShannon:
      throw ic::ConfigError("the shannon measure reads a single table file (use --table)");
  }
  throw ic::ConfigError("unsupported measure");
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) return;
  write_file(path, j.dump(2) + "\n");
}

int cmd_info(const Common& c, const std::vector<std::string>& files,
             const std::vector<std::string>& given, const std::string& table) {
  const ic::MeasureKind kind = ic::parse_measure(c.measure);
  std::shared_ptr<ic::InformationMeasure> m;
  std::vector<std::string> labels;
  ic::Element given_el;
  if (kind == ic::MeasureKind::kShannon) {
    if (table.empty()) throw ic::ConfigError("shannon needs --table");
    auto t = ic::JointTable::load(table);
    for (const auto& v : t.variables()) labels.push_back(v.name);
    m = std::make_shared<ic::ShannonMeasure>(std::move(t));
  } else {
    if (files.empty()) throw ic::ConfigError("info needs at least one file");
    std::vector<std::string> all = files;
    all.insert(all.end(), given.begin(), given.end());
    m = file_measure(kind, all, lz_config(c));
    labels = files;
    given_el = ic::IndexSet::range(all.size()).minus(ic::IndexSet::range(files.size()));
  }
  const std::size_t n = labels.size();
  json out{{"measure", m->name()}, {"given", given}, {"files", labels}};
  json values = json::array();
  std::cout << std::setprecision(10);
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = ic::Element::single(i);
    const double r = ic::joint_info(*m, e);
    const double rc = ic::cond_info(*m, e, given_el);
    std::cout << "R(" << labels[i] << ") = " << r;
    if (!given_el.empty()) std::cout << "   R(" << labels[i] << " | given) = " << rc;
    std::cout << '\n';
    values.push_back({{"file", labels[i]}, {"R", r}, {"R_given", rc}});
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = ic::cond_mutual_info(*m, ic::Element::single(i), ic::Element::single(j),
                                            given_el);
      std::cout << "I(" << labels[i] << " : " << labels[j] << (given_el.empty() ? "" : " | given")
                << ") = " << v << '\n';
      pairs.push_back({{"a", labels[i]}, {"b", labels[j]}, {"I", v}});
    }
  }
  out["values"] = values;
  out["pairs"] = pairs;
  emit_json(out, c.out);
  return 0;
}

int cmd_pc(const Common& c, const std::vector<std::string>& files, const std::string& background,
           const std::string& log_path, bool restricted) {
  const ic::MeasureKind kind = ic::parse_measure(c.measure);
  if (files.size() < 3) throw ic::ConfigError("pc needs at least three files");
  if (!c.threshold) throw ic::ConfigError("pc needs --threshold");
  std::vector<std::string> all = files;
  if (!background.empty()) all.push_back(background);
  auto m = file_measure(kind, all, lz_config(c));
  const ic::Element bg =
      background.empty() ? ic::Element{} : ic::Element::single(files.size());
  const ic::MeasureOracle oracle(m, ic::identity_map(files.size()), *c.threshold, bg);
  ic::LoggingOracle logged(oracle);
  ic::SkeletonOptions opts;
  opts.adjacency_restricted = restricted;
  const ic::PcResult r = ic::run_pc(logged, opts);
  std::cout << (r.pattern.edge_count() == 0 ? "no edges\n" : r.pattern.to_string(files));
  json out{{"measure", m->name()},
           {"threshold", *c.threshold},
           {"pattern", r.pattern.to_json(files)},
           {"oracle_calls", logged.log().size()}};
  json seps = json::array();
  for (const auto& [pair, set] : r.skeleton.sepsets.entries()) {
    json names = json::array();
    for (std::size_t v : set) names.push_back(files[v]);
    seps.push_back({{"a", files[pair.first]}, {"b", files[pair.second]}, {"sepset", names}});
  }
  out["sepsets"] = seps;
  emit_json(out, c.out);
  if (!log_path.empty()) {
    std::ostringstream csv;
    ic::write_call_log_csv(csv, logged.log(), files);
    write_file(log_path, csv.str());
  }
  return 0;
}

void report_experiment(const ic::ExperimentResult& r, const std::string& out) {
  std::cout << r.name << ": " << r.correct_count() << "/" << r.trials.size() << " correct ("
            << std::fixed << std::setprecision(1) << 100.0 * r.correct_fraction() << "%)\n";
  if (out.empty()) {
    r.write_csv(std::cout);
    return;
  }
  std::ostringstream csv;
  r.write_csv(csv);
  write_file(out + ".csv", csv.str());
  emit_json(r.to_json(), out + ".json");
}

int cmd_exp1(const Common& c, ic::Exp1Config cfg, const std::string& source, const std::string& rate,
             const std::string& command) {
  cfg.measure = ic::parse_measure(c.measure);
  cfg.threshold = c.threshold;
  cfg.seed = c.seed;
  cfg.jobs = job_count(c);
  cfg.lz = lz_config(c);
  cfg.params.clear();
  if (!rate.empty()) cfg.params["rate"] = rate;
  if (!command.empty()) cfg.params["command"] = command;
  ic::make_transformer(cfg.transformer, cfg.params);
  if (!source.empty()) cfg.source_text = read_file(source);
  const ic::Corpus corpus = cfg.source_text ? ic::Corpus::from_text(*cfg.source_text)
                                            : ic::Corpus::load(corpus_path(c));
  report_experiment(ic::run_experiment1(cfg, corpus), c.out);
  return 0;
}

int cmd_exp2(const Common& c, ic::Exp2Config cfg, const std::string& graph,
             const std::string& nrange, const std::string& order) {
  cfg.measure = ic::parse_measure(c.measure);
  cfg.threshold = c.threshold;
  cfg.seed = c.seed;
  cfg.jobs = job_count(c);
  cfg.lz = lz_config(c);
  if (graph != "a" && graph != "b") throw ic::ConfigError("--graph must be 'a' or 'b'");
  cfg.graph = graph[0];
  cfg.nrange = ic::LengthRange::parse(nrange);
  if (order != "sorted" && order != "shuffled") throw ic::ConfigError("--order must be sorted or shuffled");
  cfg.order = order == "sorted" ? ic::ConcatOrder::kSorted : ic::ConcatOrder::kShuffled;
  if (cfg.measure != ic::MeasureKind::kLz && cfg.measure != ic::MeasureKind::kGrammar) {
    throw ic::ConfigError("exp2 supports --measure lz or grammar");
  }
  const ic::Corpus corpus = ic::Corpus::load(corpus_path(c));
  report_experiment(ic::run_experiment2(cfg, corpus), c.out);
  return 0;
}

int cmd_calibrate(const Common& c, ic::CalibrationConfig cfg, const std::string& nrange) {
  cfg.measure = ic::parse_measure(c.measure);
  cfg.seed = c.seed;
  cfg.jobs = job_count(c);
  cfg.lz = lz_config(c);
  cfg.nrange = ic::LengthRange::parse(nrange);
  const ic::Corpus corpus = ic::Corpus::load(corpus_path(c));
  const ic::CalibrationResult r = ic::calibrate(cfg, corpus);
  std::cout << "threshold = " << r.threshold << "  (quantile " << cfg.quantile << ", power "
            << r.power << ")\n";
  json out = r.to_json();
  out["measure"] = ic::to_string(cfg.measure);
  out["nrange"] = {cfg.nrange.min, cfg.nrange.max};
  out["quantile"] = cfg.quantile;
  out["corpus_hash"] = corpus.hash;
  emit_json(out, c.out);
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, std::size_t count) {
  if (suite != "all" && suite != "axioms" && suite != "semigraphoid" && suite != "markov") {
    throw ic::ConfigError("unknown suite '" + suite + "'");
  }
  const bool all = suite == "all";
  ic::Rng rng(c.seed);
  json out{{"seed", c.seed}};
  bool ok = true;
  if (all || suite == "axioms" || suite == "semigraphoid") {
    std::size_t axiom_fail = 0, graphoid_fail = 0;
    for (std::size_t i = 0; i < count; ++i) {
      ic::ShannonMeasure m(ic::random_joint_table({2, 2, 3, 2}, rng));
      if ((all || suite == "axioms") && !ic::verify_axioms(m, 4).violations.empty()) ++axiom_fail;
      if ((all || suite == "semigraphoid") && !ic::verify_semigraphoid(m, 4, 1e-9).violations.empty()) {
        ++graphoid_fail;
      }
    }
    std::cout << "shannon tables: " << count << ", axiom failures " << axiom_fail
              << ", semi-graphoid failures " << graphoid_fail << '\n';
    out["axiom_failures"] = axiom_fail;
    out["semigraphoid_failures"] = graphoid_fail;
    ok = ok && axiom_fail == 0 && graphoid_fail == 0;
  }
  if (all || suite == "markov") {
    std::size_t disagree = 0, checked = 0;
    const auto dags = ic::enumerate_dags(4);
    for (std::size_t i = 0; i < dags.size() && checked < count; ++i, ++checked) {
      ic::ShannonMeasure m(ic::structural_model(dags[i], rng));
      const auto rep = ic::markov_report(dags[i], m, ic::identity_map(4), 1e-9);
      const bool l = rep.local.pass(), d = rep.decomposition.pass(), g = rep.global_pass();
      if (!(l && d && g)) ++disagree;
    }
    std::cout << "structural models: " << checked << ", Markov check failures " << disagree
              << '\n';
    out["markov_checked"] = checked;
    out["markov_failures"] = disagree;
    ok = ok && disagree == 0;
  }
  out["pass"] = ok;
  emit_json(out, c.out);
  return ok ? 0 : 1;
}

void add_common(CLI::App* cmd, Common& c, bool with_threshold = true) {
  cmd->add_option("--measure", c.measure, "shannon, lcm, vocab, lz or grammar")
      ->capture_default_str();
  if (with_threshold) cmd->add_option("--threshold", c.threshold, "independence threshold");
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--corpus", c.corpus, "corpus text file (env INFOCAUSAL_CORPUS)");
  cmd->add_option("--jobs", c.jobs, "worker threads (env INFOCAUSAL_JOBS)");
  cmd->add_option("--out", c.out, "output path (prefix for exp1/exp2)");
  cmd->add_option("--max-match", c.max_match, "LZ match-length cap")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal inference with information measures"};
  app.require_subcommand(1);
  Common common;

  std::vector<std::string> files, given;
  std::string table, background, log_path, graph = "a", nrange = "100,200", order = "sorted";
  std::string source, rate = "0.3", command, suite = "all";
  bool restricted = false;
  std::size_t verify_count = 100;
  ic::Exp1Config e1;
  ic::Exp2Config e2;
  ic::CalibrationConfig cal;

  auto* info = app.add_subcommand("info", "information values of files");
  add_common(info, common, false);
  info->add_option("files", files, "input files");
  info->add_option("--given", given, "files to condition on");
  info->add_option("--table", table, "joint table file (shannon)");

  auto* pc = app.add_subcommand("pc", "run the PC algorithm on files");
  add_common(pc, common);
  pc->add_option("files", files, "input files")->required();
  pc->add_option("--background", background, "file joined into every conditioning set");
  pc->add_option("--log", log_path, "oracle call log (CSV)");
  pc->add_flag("--adjacency-restricted", restricted, "draw conditioning sets from neighbours");

  auto* exp1 = app.add_subcommand("exp1", "Markov chains of transformed texts");
  add_common(exp1, common);
  exp1->add_option("--trials", e1.trials)->capture_default_str();
  exp1->add_option("--k", e1.k, "chain length")->capture_default_str();
  exp1->add_option("--transformer", e1.transformer, "identity, perturb or external")
      ->capture_default_str();
  exp1->add_option("--rate", rate, "perturbation rate")->capture_default_str();
  exp1->add_option("--command", command, "shell command for the external transformer");
  exp1->add_option("--source", source, "fixed starting text instead of corpus excerpts");

  auto* exp2 = app.add_subcommand("exp2", "four-node network trials");
  add_common(exp2, common);
  exp2->add_option("--graph", graph, "reference graph a or b")->capture_default_str();
  exp2->add_option("--nrange", nrange, "segment length range lo,hi")->capture_default_str();
  exp2->add_option("--trials", e2.trials)->capture_default_str();
  exp2->add_option("--background-len", e2.background_len)->capture_default_str();
  exp2->add_option("--order", order, "sorted or shuffled segment order")->capture_default_str();
  exp2->add_flag("--adjacency-restricted", e2.adjacency_restricted);

  auto* calib = app.add_subcommand("calibrate", "estimate an independence threshold");
  add_common(calib, common, false);
  calib->add_option("--nrange", nrange)->capture_default_str();
  calib->add_option("--samples", cal.samples)->capture_default_str();
  calib->add_option("--quantile", cal.quantile)->capture_default_str();
  calib->add_option("--background-len", cal.background_len)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "axiom, semi-graphoid and Markov checks");
  add_common(verify, common, false);
  verify->add_option("--suite", suite, "all, axioms, semigraphoid or markov")
      ->capture_default_str();
  verify->add_option("--count", verify_count, "instances per suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*info) return cmd_info(common, files, given, table);
    if (*pc) return cmd_pc(common, files, background, log_path, restricted);
    if (*exp1) return cmd_exp1(common, e1, source, rate, command);
    if (*exp2) return cmd_exp2(common, e2, graph, nrange, order);
    if (*calib) return cmd_calibrate(common, cal, nrange);
    if (*verify) return cmd_verify(common, suite, verify_count);
  } catch (const ic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ic::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const ic::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 4;
  } catch (const ic::SizeGuardError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 5;
  }
  return 5;
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "infocausal/lz.hpp"
#include "infocausal/measure.hpp"
#include "infocausal/pc.hpp"
#include "infocausal/textpipe.hpp"

namespace infocausal {

enum class MeasureKind { kShannon, kLcm, kVocab, kLz, kGrammar };

/// Throws ConfigError for unknown names.
MeasureKind parse_measure(const std::string& name);
std::string to_string(MeasureKind kind);

/// Set measure over encoded strings. Only lz and grammar apply.
std::shared_ptr<InformationMeasure> make_string_measure(MeasureKind kind,
                                                        std::vector<SymbolString> strings,
                                                        const LzConfig& lz = {});

/// Built-in thresholds from calibration runs on the bundled corpus.
double default_exp2_threshold(MeasureKind kind, LengthRange range);
double default_exp1_threshold(MeasureKind kind);

/// Runs fn(0..count-1) on up to `jobs` threads. The first exception thrown
/// by any call is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string graph;
  LengthRange nrange;
  std::string measure;
  double threshold = 0.0;
  std::string pattern;  // edges as "a->b;b--c", or "inconsistent"
  bool correct = false;
  std::size_t oracle_calls = 0;
  double wall_ms = 0.0;

  static std::string csv_header();
  /// Everything except wall time, so rows are reproducible.
  std::string csv_row() const;
  nlohmann::json to_json() const;
};

struct ExperimentResult {
  std::string name;
  std::vector<TrialRecord> trials;
  nlohmann::json parameters;

  std::size_t correct_count() const;
  double correct_fraction() const;
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// Compact single-line rendering of a pattern, e.g. "a->b;a--c".
std::string pattern_signature(const Pattern& p, const std::vector<std::string>& names);

struct Exp2Config {
  char graph = 'a';
  LengthRange nrange{100, 200};
  MeasureKind measure = MeasureKind::kLz;
  std::optional<double> threshold;  // default_exp2_threshold when unset
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  std::size_t jobs = 1;
  std::size_t background_len = 5000;
  ConcatOrder order = ConcatOrder::kSorted;
  bool adjacency_restricted = false;
  LzConfig lz;
};

/// Four-node network trials with background conditioning. The background is
/// drawn once from derive_seed(seed, 0); trial i uses derive_seed(seed, i + 1).
ExperimentResult run_experiment2(const Exp2Config& cfg, const Corpus& corpus);

struct Exp1Config {
  MeasureKind measure = MeasureKind::kLz;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  std::size_t k = 3;
  LengthRange source_len{1000, 5000};
  std::string transformer = "perturb";
  std::map<std::string, std::string> params{{"rate", "0.3"}};
  std::optional<std::string> source_text;  // fixed s_0 instead of corpus excerpts
  std::size_t jobs = 1;
  LzConfig lz;
};

/// Chains s_0 -> ... -> s_k; correct when PC returns the undirected chain.
ExperimentResult run_experiment1(const Exp1Config& cfg, const Corpus& corpus);

struct CalibrationConfig {
  MeasureKind measure = MeasureKind::kLz;
  LengthRange nrange{100, 200};
  std::size_t samples = 200;
  double quantile = 0.99;
  std::size_t segments_per_node = 5;
  std::size_t background_len = 5000;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  LzConfig lz;
};

struct CalibrationResult {
  double threshold = 0.0;
  std::vector<double> null_sample;       // CMI of independent node-like strings
  std::vector<double> dependent_sample;  // same with one shared segment
  double power = 0.0;                    // fraction of dependent_sample above threshold

  nlohmann::json to_json() const;
};

/// Null distribution of I(x : y | u, background) for node-like strings
/// built from disjoint segments, where u holds zero to two further
/// independent node-like strings. threshold is the requested quantile.
CalibrationResult calibrate(const CalibrationConfig& cfg, const Corpus& corpus);

/// Empirical quantile with linear interpolation (q in [0, 1]).
double quantile(std::vector<double> values, double q);

}  // namespace infocausal

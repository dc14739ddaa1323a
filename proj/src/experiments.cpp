#include "infocausal/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "infocausal/errors.hpp"
#include "infocausal/grammar.hpp"

namespace infocausal {

MeasureKind parse_measure(const std::string& name) {
  if (name == "shannon") return MeasureKind::kShannon;
  if (name == "lcm") return MeasureKind::kLcm;
  if (name == "vocab") return MeasureKind::kVocab;
  if (name == "lz") return MeasureKind::kLz;
  if (name == "grammar" || name == "gr") return MeasureKind::kGrammar;
  throw ConfigError("unknown measure '" + name + "'");
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kShannon: return "shannon";
    case MeasureKind::kLcm: return "lcm";
    case MeasureKind::kVocab: return "vocab";
    case MeasureKind::kLz: return "lz";
    case MeasureKind::kGrammar: return "grammar";
  }
  return "?";
}

std::shared_ptr<InformationMeasure> make_string_measure(MeasureKind kind,
                                                        std::vector<SymbolString> strings,
                                                        const LzConfig& lz) {
  std::shared_ptr<const InformationMeasure> inner;
  if (kind == MeasureKind::kLz) {
    inner = std::make_shared<LzSetMeasure>(std::move(strings), lz);
  } else if (kind == MeasureKind::kGrammar) {
    inner = std::make_shared<GrammarSetMeasure>(std::move(strings), lz.alphabet_size);
  } else {
    throw ConfigError("measure '" + to_string(kind) + "' does not apply to encoded strings");
  }
  return std::make_shared<CachedMeasure>(std::move(inner));
}

double default_exp2_threshold(MeasureKind kind, LengthRange range) {
  const bool short_range = range.max <= 250;
  switch (kind) {
    case MeasureKind::kLz: return short_range ? 15.0 : 30.0;
    case MeasureKind::kGrammar: return short_range ? 138.0 : 180.0;
    default: throw ConfigError("no default threshold for measure '" + to_string(kind) + "'");
  }
}

double default_exp1_threshold(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kLz: return 12.0;
    case MeasureKind::kGrammar: return 40.0;
    default: throw ConfigError("no default threshold for measure '" + to_string(kind) + "'");
  }
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string TrialRecord::csv_header() {
  return "trial,seed,graph,nrange,measure,threshold,pattern,correct,oracle_calls";
}

std::string TrialRecord::csv_row() const {
  std::ostringstream os;
  os << trial << ',' << seed << ',' << graph << ',' << nrange.to_string() << ',' << measure << ','
     << format_double(threshold) << ',' << pattern << ',' << (correct ? 1 : 0) << ','
     << oracle_calls;
  return os.str();
}

nlohmann::json TrialRecord::to_json() const {
  return {{"trial", trial},          {"seed", seed},
          {"graph", graph},          {"nrange", {nrange.min, nrange.max}},
          {"measure", measure},      {"threshold", threshold},
          {"pattern", pattern},      {"correct", correct},
          {"oracle_calls", oracle_calls}, {"wall_ms", wall_ms}};
}

std::size_t ExperimentResult::correct_count() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.correct; }));
}

double ExperimentResult::correct_fraction() const {
  return trials.empty() ? 0.0
                        : static_cast<double>(correct_count()) / static_cast<double>(trials.size());
}

void ExperimentResult::write_csv(std::ostream& out) const {
  out << TrialRecord::csv_header() << '\n';
  for (const auto& t : trials) out << t.csv_row() << '\n';
}

nlohmann::json ExperimentResult::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : trials) rows.push_back(t.to_json());
  return {{"experiment", name},
          {"parameters", parameters},
          {"trials", rows},
          {"correct", correct_count()},
          {"total", trials.size()},
          {"correct_fraction", correct_fraction()}};
}

std::string pattern_signature(const Pattern& p, const std::vector<std::string>& names) {
  std::string out;
  auto name = [&](std::size_t v) { return v < names.size() ? names[v] : std::to_string(v); };
  for (std::size_t a = 0; a < p.node_count(); ++a) {
    for (std::size_t b = a + 1; b < p.node_count(); ++b) {
      if (!p.adjacent(a, b)) continue;
      if (!out.empty()) out += ';';
      if (p.directed(a, b)) {
        out += name(a) + "->" + name(b);
      } else if (p.directed(b, a)) {
        out += name(b) + "->" + name(a);
      } else {
        out += name(a) + "--" + name(b);
      }
    }
  }
  return out.empty() ? "empty" : out;
}

namespace {

struct PcOutcome {
  std::string pattern;
  bool correct = false;
  std::size_t calls = 0;
};

PcOutcome run_and_compare(const IndependenceOracle& oracle, const Pattern& expected,
                          const std::vector<std::string>& names, bool adjacency_restricted) {
  LoggingOracle logged(oracle);
  PcOutcome out;
  try {
    SkeletonOptions opts;
    opts.adjacency_restricted = adjacency_restricted;
    const PcResult r = run_pc(logged, opts);
    out.pattern = pattern_signature(r.pattern, names);
    out.correct = r.pattern == expected;
  } catch (const InconsistencyError&) {
    out.pattern = "inconsistent";
    out.correct = false;
  }
  out.calls = logged.log().size();
  return out;
}

void require_string_measure(MeasureKind kind) {
  if (kind != MeasureKind::kLz && kind != MeasureKind::kGrammar) {
    throw ConfigError("experiments support the lz and grammar measures only");
  }
}

}  // namespace

ExperimentResult run_experiment2(const Exp2Config& cfg, const Corpus& corpus) {
  require_string_measure(cfg.measure);
  const double threshold = cfg.threshold.value_or(default_exp2_threshold(cfg.measure, cfg.nrange));
  make_decision(0.0, threshold);
  if (cfg.trials == 0) throw ConfigError("trial count must be positive");
  const SegmentSpec spec = SegmentSpec::for_graph(reference_graph(cfg.graph), cfg.nrange, cfg.order);
  const Pattern expected = cpdag(spec.graph.graph);
  const std::size_t n = spec.graph.graph.node_count();

  Rng bg_rng(derive_seed(cfg.seed, 0));
  const Segment background = background_element(corpus.symbols, cfg.background_len, bg_rng);
  const SymbolString background_str = background.slice(corpus.symbols);

  ExperimentResult result;
  result.name = "exp2";
  result.parameters = {{"graph", std::string(1, cfg.graph)},
                       {"nrange", {cfg.nrange.min, cfg.nrange.max}},
                       {"measure", to_string(cfg.measure)},
                       {"threshold", threshold},
                       {"seed", cfg.seed},
                       {"trials", cfg.trials},
                       {"background_len", cfg.background_len},
                       {"background_offset", background.offset},
                       {"order", cfg.order == ConcatOrder::kSorted ? "sorted" : "shuffled"},
                       {"adjacency_restricted", cfg.adjacency_restricted},
                       {"max_match_length", cfg.lz.max_match_length},
                       {"corpus_hash", corpus.hash},
                       {"expected", pattern_signature(expected, spec.graph.names)}};
  result.trials.resize(cfg.trials);

  parallel_for(cfg.trials, cfg.jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = i;
    rec.seed = derive_seed(cfg.seed, i + 1);
    rec.graph = std::string(1, cfg.graph);
    rec.nrange = cfg.nrange;
    rec.measure = to_string(cfg.measure);
    rec.threshold = threshold;

    Rng rng(rec.seed);
    FourNodeSample sample = build_fournode(spec, corpus.symbols, rng, {background});
    std::vector<SymbolString> strings = std::move(sample.nodes);
    strings.push_back(background_str);
    auto measure = make_string_measure(cfg.measure, std::move(strings), cfg.lz);
    const MeasureOracle oracle(measure, identity_map(n), threshold, Element::single(n));
    const PcOutcome out = run_and_compare(oracle, expected, spec.graph.names,
                                          cfg.adjacency_restricted);
    rec.pattern = out.pattern;
    rec.correct = out.correct;
    rec.oracle_calls = out.calls;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
    result.trials[i] = rec;
  });
  return result;
}

ExperimentResult run_experiment1(const Exp1Config& cfg, const Corpus& corpus) {
  require_string_measure(cfg.measure);
  if (cfg.k < 1) throw ConfigError("chain length k must be at least 1");
  if (cfg.trials == 0) throw ConfigError("trial count must be positive");
  const double threshold = cfg.threshold.value_or(default_exp1_threshold(cfg.measure));
  make_decision(0.0, threshold);
  make_transformer(cfg.transformer, cfg.params);  // fail before any trial runs

  const std::size_t n = cfg.k + 1;
  Dag chain(n);
  for (std::size_t i = 0; i + 1 < n; ++i) chain.add_edge(i, i + 1);
  const Pattern expected = cpdag(chain);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));

  ExperimentResult result;
  result.name = "exp1";
  result.parameters = {{"measure", to_string(cfg.measure)},
                       {"threshold", threshold},
                       {"seed", cfg.seed},
                       {"trials", cfg.trials},
                       {"k", cfg.k},
                       {"source_len", {cfg.source_len.min, cfg.source_len.max}},
                       {"transformer", cfg.transformer},
                       {"params", cfg.params},
                       {"fixed_source", cfg.source_text.has_value()},
                       {"max_match_length", cfg.lz.max_match_length},
                       {"corpus_hash", corpus.hash},
                       {"expected", pattern_signature(expected, names)}};
  result.trials.resize(cfg.trials);

  parallel_for(cfg.trials, cfg.jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = i;
    rec.seed = derive_seed(cfg.seed, i + 1);
    rec.graph = "chain" + std::to_string(cfg.k);
    rec.nrange = cfg.source_len;
    rec.measure = to_string(cfg.measure);
    rec.threshold = threshold;

    Rng rng(rec.seed);
    ChainSpec spec;
    spec.source = cfg.source_text ? *cfg.source_text
                                  : sample_source_text(corpus, cfg.source_len, rng);
    spec.k = cfg.k;
    spec.transformer = cfg.transformer;
    spec.params = cfg.params;
    spec.seed = derive_seed(rec.seed, 1);
    auto measure = make_string_measure(cfg.measure, build_chain(spec), cfg.lz);
    const MeasureOracle oracle(measure, identity_map(n), threshold);
    const PcOutcome out = run_and_compare(oracle, expected, names, false);
    rec.pattern = out.pattern;
    rec.correct = out.correct;
    rec.oracle_calls = out.calls;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
    result.trials[i] = rec;
  });
  return result;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

nlohmann::json CalibrationResult::to_json() const {
  return {{"threshold", threshold},
          {"power", power},
          {"null_sample", null_sample},
          {"dependent_sample", dependent_sample}};
}

CalibrationResult calibrate(const CalibrationConfig& cfg, const Corpus& corpus) {
  require_string_measure(cfg.measure);
  if (cfg.samples == 0) throw ConfigError("calibration needs at least one sample");
  if (cfg.segments_per_node == 0) throw ConfigError("segments per node must be positive");
  Rng bg_rng(derive_seed(cfg.seed, 0));
  const Segment background = background_element(corpus.symbols, cfg.background_len, bg_rng);
  const SymbolString background_str = background.slice(corpus.symbols);

  CalibrationResult result;
  result.null_sample.resize(cfg.samples);
  result.dependent_sample.resize(cfg.samples);
  parallel_for(cfg.samples, cfg.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i + 1));
    const std::size_t cond = i % 3;
    const std::size_t node_count = 2 + cond;
    std::vector<Segment> taken{background};
    auto fresh = [&] {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        const Segment s = sample_segment(corpus.symbols, cfg.nrange, rng);
        if (std::none_of(taken.begin(), taken.end(), [&](const Segment& t) { return t.overlaps(s); })) {
          taken.push_back(s);
          return s.slice(corpus.symbols);
        }
      }
      throw InputError("corpus too small for disjoint calibration segments");
    };
    std::vector<SymbolString> nodes(node_count);
    for (auto& node : nodes) {
      for (std::size_t j = 0; j < cfg.segments_per_node; ++j) {
        const SymbolString seg = fresh();
        node.insert(node.end(), seg.begin(), seg.end());
      }
    }
    const SymbolString shared = fresh();
    std::vector<SymbolString> dep = nodes;
    dep[0].insert(dep[0].end(), shared.begin(), shared.end());
    dep[1].insert(dep[1].begin(), shared.begin(), shared.end());

    const Element x = Element::single(0), y = Element::single(1);
    const Element u = IndexSet::range(node_count).minus(IndexSet::range(2)).with(node_count);
    nodes.push_back(background_str);
    dep.push_back(background_str);
    const auto m_null = make_string_measure(cfg.measure, std::move(nodes), cfg.lz);
    const auto m_dep = make_string_measure(cfg.measure, std::move(dep), cfg.lz);
    result.null_sample[i] = cond_mutual_info(*m_null, x, y, u);
    result.dependent_sample[i] = cond_mutual_info(*m_dep, x, y, u);
  });
  result.threshold = quantile(result.null_sample, cfg.quantile);
  const auto above = std::count_if(result.dependent_sample.begin(), result.dependent_sample.end(),
                                   [&](double v) { return v > result.threshold; });
  result.power = static_cast<double>(above) / static_cast<double>(cfg.samples);
  return result;
}

}  // namespace infocausal

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infocausal/dag.hpp"
#include "infocausal/symbols.hpp"

namespace infocausal {

/// Symbol used for a run of whitespace; data bytes map to 0..8.
inline constexpr Symbol kSpaceSymbol = 9;

/// Non-whitespace byte b -> b mod 9; each whitespace run -> one 9.
SymbolString encode_text(std::string_view raw);

struct Corpus {
  std::string raw;
  SymbolString symbols;
  std::string hash;  // FNV-1a 64 of the raw bytes, hex

  static Corpus from_text(std::string raw);
  /// Throws IoError when the file cannot be read, InputError when it is empty.
  static Corpus load(const std::string& path);
};

struct LengthRange {
  std::size_t min = 100;
  std::size_t max = 200;

  /// Parses "lo,hi" or "lo-hi". Throws ConfigError.
  static LengthRange parse(const std::string& text);
  std::string to_string() const;
};

/// Half-open span [offset, offset + length) of the encoded corpus.
struct Segment {
  std::size_t offset = 0;
  std::size_t length = 0;

  bool overlaps(const Segment& o) const {
    return offset < o.offset + o.length && o.offset < offset + length;
  }
  SymbolString slice(const SymbolString& corpus) const;
};

/// Uniform length in the range, then uniform offset. Throws InputError when
/// the corpus is shorter than range.max.
Segment sample_segment(const SymbolString& corpus, LengthRange range, Rng& rng);

/// One segment of exactly `length` symbols.
Segment background_element(const SymbolString& corpus, std::size_t length, Rng& rng);

// ---- Experiment 1: chains of transformed texts -------------------------------

/// Maps a raw text to a derived raw text.
class TextTransformer {
 public:
  virtual ~TextTransformer() = default;
  virtual std::string name() const = 0;
  virtual std::string apply(const std::string& text, Rng& rng) const = 0;
};

class IdentityTransformer final : public TextTransformer {
 public:
  std::string name() const override { return "identity"; }
  std::string apply(const std::string& text, Rng&) const override { return text; }
};

/// Word-level degradation: each word is, with probability `rate`, deleted,
/// replaced by another word of the same text, letter-shuffled, or swapped
/// with its successor.
class PerturbTransformer final : public TextTransformer {
 public:
  explicit PerturbTransformer(double rate);
  std::string name() const override { return "perturb"; }
  std::string apply(const std::string& text, Rng& rng) const override;

 private:
  double rate_;
};

/// Pipes the text through a shell command (stdin -> stdout).
class ExternalTransformer final : public TextTransformer {
 public:
  explicit ExternalTransformer(std::string command);
  std::string name() const override { return "external"; }
  std::string apply(const std::string& text, Rng& rng) const override;

 private:
  std::string command_;
};

/// Known ids: identity, perturb (param "rate"), external (param "command").
/// Throws ConfigError for anything else.
std::unique_ptr<TextTransformer> make_transformer(const std::string& id,
                                                  const std::map<std::string, std::string>& params);

struct ChainSpec {
  std::string source;  // raw text of s_0
  std::size_t k = 3;
  std::string transformer = "perturb";
  std::map<std::string, std::string> params{{"rate", "0.3"}};
  std::uint64_t seed = 1;
};

/// k + 1 encoded strings s_0 .. s_k with s_{i+1} derived from s_i.
std::vector<SymbolString> build_chain(const ChainSpec& spec);

/// Random excerpt of the raw corpus whose encoding has between
/// range.min and range.max symbols, cut at whitespace.
std::string sample_source_text(const Corpus& corpus, LengthRange range, Rng& rng);

// ---- Experiment 2: four-node networks ----------------------------------------

/// A node (1 member), an edge (2, ascending) or a non-collider path x - y - z
/// with x < z (3 members stored as x, y, z).
struct SegmentLabel {
  std::vector<std::size_t> nodes;

  bool mentions(std::size_t v) const;
  std::string name(const std::vector<std::string>& names) const;
  friend bool operator==(const SegmentLabel&, const SegmentLabel&) = default;
};

/// Every label implied by the graph: nodes, edges, then non-collider paths.
std::vector<SegmentLabel> segment_labels(const Dag& g);

/// Throws InputError listing each offending or missing label.
void validate_labels(const NamedDag& g, const std::vector<SegmentLabel>& labels);

/// Labels of node v in concatenation order: the node, its edges by partner,
/// then its paths ordered by (middle, first, last).
std::vector<SegmentLabel> labels_for_node(const std::vector<SegmentLabel>& labels, std::size_t v);

enum class ConcatOrder { kSorted, kShuffled };

struct SegmentSpec {
  NamedDag graph;
  std::vector<SegmentLabel> labels;
  LengthRange lengths{100, 200};
  ConcatOrder order = ConcatOrder::kSorted;

  /// Derives the labels from the graph.
  static SegmentSpec for_graph(NamedDag graph, LengthRange lengths,
                               ConcatOrder order = ConcatOrder::kSorted);
};

struct FourNodeSample {
  std::vector<SymbolString> nodes;      // one string per graph node
  std::vector<Segment> segments;        // one per label, in spec order
};

/// Samples one corpus segment per label, pairwise disjoint and disjoint from
/// `exclude`, then concatenates per node. Resamples on overlap; throws
/// InputError after too many failed attempts.
FourNodeSample build_fournode(const SegmentSpec& spec, const SymbolString& corpus, Rng& rng,
                              const std::vector<Segment>& exclude = {});

/// Reference graphs: 'a' is a->b, a->c, b->d, c->d; 'b' is a->c, b->c, a->d, b->d.
NamedDag reference_graph(char id);

// ---- Config files ----------------------------------------------------------

/// Lines "key = value"; '#' starts a comment; later keys override earlier.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Keys: graph ("a", "b" or edges "x->y, y->z"), nrange, order (sorted|shuffled),
/// labels (optional, space-separated, e.g. "a b ab bac").
SegmentSpec segment_spec_from_config(const KeyValueConfig& cfg);

/// Keys: source (path), k, transformer, rate, command, seed.
ChainSpec chain_spec_from_config(const KeyValueConfig& cfg);

}  // namespace infocausal

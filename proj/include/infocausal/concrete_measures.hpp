#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infocausal/lattice.hpp"
#include "infocausal/measure.hpp"

namespace infocausal {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Shannon entropy over a finite joint distribution.

struct Variable {
  std::string name;
  std::size_t cardinality = 2;
};

/// Joint pmf over finitely many discrete variables, stored densely in
/// mixed-radix order with the first variable varying slowest.
class JointTable {
 public:
  /// Throws InputError unless all entries are >= 0 and sum to 1 within 1e-12.
  JointTable(std::vector<Variable> variables, std::vector<double> probabilities);

  /// Plain-text format: a header line "variables NAME:CARD ...", then one line
  /// per assignment "v1 v2 ... p". Unlisted assignments have probability 0.
  static JointTable parse(std::istream& in);
  static JointTable load(const std::string& path);

  std::size_t variable_count() const { return variables_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<double>& probabilities() const { return probabilities_; }

  std::size_t index_of(const std::vector<std::size_t>& assignment) const;
  std::vector<std::size_t> assignment_of(std::size_t index) const;

  /// Marginal pmf of the variables in `subset`, in mixed-radix order.
  std::vector<double> marginal(IndexSet subset) const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> probabilities_;
};

/// H(A) in bits for subsets A of the table's variables.
double shannon_info(const JointTable& table, IndexSet subset);

class ShannonMeasure final : public InformationMeasure {
 public:
  explicit ShannonMeasure(JointTable table) : table_(std::move(table)) {}

  std::string name() const override { return "shannon"; }
  std::size_t ground_size() const override { return table_.variable_count(); }
  Exactness exactness() const override { return Exactness::exact(); }
  double evaluate(Element s) const override { return shannon_info(table_, s); }

  const JointTable& table() const { return table_; }

 private:
  JointTable table_;
};

// ---------------------------------------------------------------------------
// Period lengths on the divisibility lattice: join = lcm, meet = gcd.

struct PeriodObservations {
  std::vector<BigInt> values;
};

/// lcm of the selected values (1 for the empty subset). Throws InputError on
/// values < 1.
BigInt lcm_of(const PeriodObservations& obs, IndexSet subset);

/// Natural log of lcm of the selected values; 0 for the empty subset.
double lcm_info(const PeriodObservations& obs, IndexSet subset);

/// log(BigInt) without overflow for arbitrarily large values.
double big_log(const BigInt& value);

/// Exact test of R(a) + R(b) == R(a v b) + R(a ^ b) in the divisor lattice,
/// i.e. lcm(a) * lcm(b) == lcm(lcm a, lcm b) * gcd(lcm a, lcm b).
bool lcm_modular_identity(const PeriodObservations& obs, IndexSet a, IndexSet b);

class LcmMeasure final : public InformationMeasure {
 public:
  explicit LcmMeasure(PeriodObservations obs);

  std::string name() const override { return "lcm"; }
  std::size_t ground_size() const override { return obs_.values.size(); }
  Exactness exactness() const override { return Exactness::exact(); }
  double evaluate(Element s) const override { return lcm_info(obs_, s); }
  /// lcm(S,U) * lcm(T,U) == lcm(S,T,U) * lcm(U) on integers.
  std::optional<bool> exactly_independent(Element s, Element t, Element u) const override;

  const PeriodObservations& observations() const { return obs_; }

 private:
  PeriodObservations obs_;
};

// ---------------------------------------------------------------------------
// Vocabulary size: number of distinct meaningful words in a collection.

using WordSet = std::set<std::string>;

/// Lowercased alphabetic tokens (split on every non-letter byte).
std::vector<std::string> tokenize_words(const std::string& text);

/// Reads one stopword per line; blank lines and '#' comments are ignored.
std::set<std::string> load_stopwords(const std::string& path);
std::set<std::string> default_stopwords();

struct WordSetObservations {
  std::vector<WordSet> texts;

  /// Tokenizes every text and drops the same stopwords from each.
  static WordSetObservations from_texts(const std::vector<std::string>& texts,
                                        const std::set<std::string>& stopwords);
};

std::size_t vocab_info(const WordSetObservations& obs, IndexSet subset);

class VocabMeasure final : public InformationMeasure {
 public:
  explicit VocabMeasure(WordSetObservations obs) : obs_(std::move(obs)) {}

  std::string name() const override { return "vocab"; }
  std::size_t ground_size() const override { return obs_.texts.size(); }
  Exactness exactness() const override { return Exactness::exact(); }
  double evaluate(Element s) const override { return static_cast<double>(vocab_info(obs_, s)); }
  std::optional<bool> exactly_independent(Element s, Element t, Element u) const override;

 private:
  WordSetObservations obs_;
};

// ---------------------------------------------------------------------------
// Orthogonal-subspace dependence. Symmetric and nonnegative but not derived
// from any submodular R, so the chain rule can fail.

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

struct SubspaceFixture {
  std::size_t ambient_dimension = 0;
  /// Each subspace is given by a list of basis vectors.
  std::vector<std::vector<RationalVector>> subspaces;

  /// Throws InputError on wrong vector lengths or linearly dependent bases.
  void validate() const;
};

/// Rank of a list of vectors, exact.
std::size_t rational_rank(const std::vector<RationalVector>& vectors);

/// I(a:b|c) = dim of the projection of a|c-perp onto b|c-perp, where a, b, c
/// are joins (spans) of the selected fixture subspaces.
std::size_t subspace_cmi(const SubspaceFixture& f, IndexSet a, IndexSet b, IndexSet c);

/// Chain-rule counterexample in R^3: e1, e1+e2, e2.
SubspaceFixture chain_rule_counterexample();

}  // namespace infocausal

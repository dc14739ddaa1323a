#include "infocausal/concrete_measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "infocausal/errors.hpp"

namespace infocausal {

// ---------------------------------------------------------------------------
// JointTable

JointTable::JointTable(std::vector<Variable> variables, std::vector<double> probabilities)
    : variables_(std::move(variables)), probabilities_(std::move(probabilities)) {
  if (variables_.size() > IndexSet::kCapacity) throw InputError("too many variables");
  std::size_t cells = 1;
  std::set<std::string> names;
  for (const auto& v : variables_) {
    if (v.cardinality == 0) throw InputError("variable '" + v.name + "' has cardinality 0");
    if (!names.insert(v.name).second) throw InputError("duplicate variable '" + v.name + "'");
    cells *= v.cardinality;
  }
  if (probabilities_.size() != cells) {
    throw InputError("joint table has " + std::to_string(probabilities_.size()) +
                     " entries, expected " + std::to_string(cells));
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw InputError("negative or NaN probability in joint table");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InputError("joint table probabilities sum to " + std::to_string(total));
  }
}

std::size_t JointTable::index_of(const std::vector<std::size_t>& assignment) const {
  if (assignment.size() != variables_.size()) throw InputError("assignment arity mismatch");
  std::size_t index = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (assignment[i] >= variables_[i].cardinality) {
      throw InputError("value " + std::to_string(assignment[i]) + " out of range for '" +
                       variables_[i].name + "'");
    }
    index = index * variables_[i].cardinality + assignment[i];
  }
  return index;
}

std::vector<std::size_t> JointTable::assignment_of(std::size_t index) const {
  std::vector<std::size_t> out(variables_.size());
  for (std::size_t i = variables_.size(); i-- > 0;) {
    out[i] = index % variables_[i].cardinality;
    index /= variables_[i].cardinality;
  }
  return out;
}

std::vector<double> JointTable::marginal(IndexSet subset) const {
  if (subset.span() > variables_.size()) throw InputError("subset names unknown variable");
  std::size_t cells = 1;
  for (std::size_t v : subset) cells *= variables_[v].cardinality;
  std::vector<double> out(cells, 0.0);
  const std::vector<std::size_t> chosen = subset.members();
  for (std::size_t cell = 0; cell < probabilities_.size(); ++cell) {
    const double p = probabilities_[cell];
    if (p == 0.0) continue;
    const std::vector<std::size_t> a = assignment_of(cell);
    std::size_t idx = 0;
    for (std::size_t v : chosen) idx = idx * variables_[v].cardinality + a[v];
    out[idx] += p;
  }
  return out;
}

JointTable JointTable::parse(std::istream& in) {
  std::vector<Variable> vars;
  std::vector<double> probs;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("joint table line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      if (first != "variables") fail("expected header 'variables NAME:CARD ...'");
      std::string spec;
      while (ls >> spec) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos || colon == 0) fail("bad variable spec '" + spec + "'");
        std::size_t card = 0;
        try {
          card = std::stoul(spec.substr(colon + 1));
        } catch (const std::exception&) {
          fail("bad cardinality in '" + spec + "'");
        }
        vars.push_back({spec.substr(0, colon), card});
      }
      if (vars.empty()) fail("no variables declared");
      std::size_t cells = 1;
      for (const auto& v : vars) cells *= v.cardinality;
      probs.assign(cells, 0.0);
      have_header = true;
      continue;
    }
    std::vector<std::string> fields{first};
    std::string f;
    while (ls >> f) fields.push_back(f);
    if (fields.size() != vars.size() + 1) fail("expected " + std::to_string(vars.size()) +
                                               " values and a probability");
    std::size_t index = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::size_t value = 0;
      try {
        value = std::stoul(fields[i]);
      } catch (const std::exception&) {
        fail("bad value '" + fields[i] + "'");
      }
      if (value >= vars[i].cardinality) fail("value out of range for " + vars[i].name);
      index = index * vars[i].cardinality + value;
    }
    try {
      probs[index] += std::stod(fields.back());
    } catch (const std::exception&) {
      fail("bad probability '" + fields.back() + "'");
    }
  }
  if (!have_header) throw InputError("joint table: missing header");
  return JointTable(std::move(vars), std::move(probs));
}

JointTable JointTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open joint table '" + path + "'");
  return parse(in);
}

double shannon_info(const JointTable& table, IndexSet subset) {
  if (subset.empty()) return 0.0;
  double h = 0.0;
  for (double p : table.marginal(subset)) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Period lengths

BigInt lcm_of(const PeriodObservations& obs, IndexSet subset) {
  BigInt acc = 1;
  for (std::size_t i : subset) {
    if (i >= obs.values.size()) throw InputError("unknown observation index " + std::to_string(i));
    const BigInt& v = obs.values[i];
    if (v < 1) throw InputError("period lengths must be positive integers");
    acc = boost::multiprecision::lcm(acc, v);
  }
  return acc;
}

double big_log(const BigInt& value) {
  if (value < 1) throw InputError("log of non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 60) return std::log(value.convert_to<double>());
  // Keep the top 60 bits as mantissa.
  const std::size_t shift = bits - 60;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double lcm_info(const PeriodObservations& obs, IndexSet subset) {
  return big_log(lcm_of(obs, subset));
}

bool lcm_modular_identity(const PeriodObservations& obs, IndexSet a, IndexSet b) {
  const BigInt la = lcm_of(obs, a);
  const BigInt lb = lcm_of(obs, b);
  return la * lb == boost::multiprecision::lcm(la, lb) * boost::multiprecision::gcd(la, lb);
}

LcmMeasure::LcmMeasure(PeriodObservations obs) : obs_(std::move(obs)) {
  for (const auto& v : obs_.values) {
    if (v < 1) throw InputError("period lengths must be positive integers");
  }
}

std::optional<bool> LcmMeasure::exactly_independent(Element s, Element t, Element u) const {
  return lcm_of(obs_, s | u) * lcm_of(obs_, t | u) == lcm_of(obs_, s | t | u) * lcm_of(obs_, u);
}

// ---------------------------------------------------------------------------
// Vocabulary

std::vector<std::string> tokenize_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char ch : text) {
    if (std::isalpha(ch)) {
      cur.push_back(static_cast<char>(std::tolower(ch)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file '" + path + "'");
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& w : tokenize_words(line)) out.insert(std::move(w));
  }
  return out;
}

std::set<std::string> default_stopwords() {
  return {"a",    "an",   "the",  "and",  "or",   "but",  "of",   "in",    "on",
          "at",   "to",   "for",  "from", "by",   "with", "about", "into", "over",
          "under", "up",  "down", "off",  "out",  "as",   "than", "through", "between",
          "after", "before", "against", "among", "during", "without", "within", "upon"};
}

WordSetObservations WordSetObservations::from_texts(const std::vector<std::string>& texts,
                                                    const std::set<std::string>& stopwords) {
  WordSetObservations obs;
  for (const auto& text : texts) {
    WordSet words;
    for (auto& w : tokenize_words(text)) {
      if (!stopwords.contains(w)) words.insert(std::move(w));
    }
    obs.texts.push_back(std::move(words));
  }
  return obs;
}

std::size_t vocab_info(const WordSetObservations& obs, IndexSet subset) {
  WordSet all;
  for (std::size_t i : subset) {
    if (i >= obs.texts.size()) throw InputError("unknown observation index " + std::to_string(i));
    all.insert(obs.texts[i].begin(), obs.texts[i].end());
  }
  return all.size();
}

std::optional<bool> VocabMeasure::exactly_independent(Element s, Element t, Element u) const {
  return vocab_info(obs_, s | u) + vocab_info(obs_, t | u) ==
         vocab_info(obs_, s | t | u) + vocab_info(obs_, u);
}

// ---------------------------------------------------------------------------
// Subspaces

namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Orthogonal (not normalized) basis of span(vectors), by Gram-Schmidt.
std::vector<RationalVector> orthogonal_basis(const std::vector<RationalVector>& vectors) {
  std::vector<RationalVector> basis;
  for (RationalVector v : vectors) {
    for (const auto& q : basis) {
      const Rational c = dot(v, q) / dot(q, q);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
    if (!is_zero(v)) basis.push_back(std::move(v));
  }
  return basis;
}

RationalVector project_out(RationalVector v, const std::vector<RationalVector>& ortho) {
  for (const auto& q : ortho) {
    const Rational c = dot(v, q) / dot(q, q);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
  }
  return v;
}

std::vector<RationalVector> gather(const SubspaceFixture& f, IndexSet which) {
  std::vector<RationalVector> out;
  for (std::size_t i : which) {
    if (i >= f.subspaces.size()) throw InputError("unknown subspace index " + std::to_string(i));
    out.insert(out.end(), f.subspaces[i].begin(), f.subspaces[i].end());
  }
  return out;
}

}  // namespace

std::size_t rational_rank(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RationalVector> m = vectors;
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

void SubspaceFixture::validate() const {
  if (ambient_dimension == 0) throw InputError("ambient dimension must be positive");
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    for (const auto& v : subspaces[i]) {
      if (v.size() != ambient_dimension) {
        throw InputError("subspace " + std::to_string(i) + " has a vector of wrong length");
      }
    }
    if (rational_rank(subspaces[i]) != subspaces[i].size()) {
      throw InputError("subspace " + std::to_string(i) + " has a degenerate basis");
    }
  }
}

std::size_t subspace_cmi(const SubspaceFixture& f, IndexSet a, IndexSet b, IndexSet c) {
  f.validate();
  const auto c_ortho = orthogonal_basis(gather(f, c));
  std::vector<RationalVector> a_proj, b_proj;
  for (const auto& v : gather(f, a)) a_proj.push_back(project_out(v, c_ortho));
  for (const auto& v : gather(f, b)) b_proj.push_back(project_out(v, c_ortho));
  const auto b_basis = orthogonal_basis(b_proj);
  if (b_basis.empty() || a_proj.empty()) return 0;
  // dim of the projection of span(a') onto span(b') = rank(B^T A').
  std::vector<RationalVector> gram;
  for (const auto& av : a_proj) {
    RationalVector row;
    for (const auto& bv : b_basis) row.push_back(dot(av, bv));
    gram.push_back(std::move(row));
  }
  return rational_rank(gram);
}

SubspaceFixture chain_rule_counterexample() {
  SubspaceFixture f;
  f.ambient_dimension = 3;
  f.subspaces = {
      {{Rational(1), Rational(0), Rational(0)}},  // span(e1)
      {{Rational(1), Rational(1), Rational(0)}},  // span(e1 + e2)
      {{Rational(0), Rational(1), Rational(0)}},  // span(e2)
  };
  return f;
}

}  // namespace infocausal

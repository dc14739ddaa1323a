#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "infocausal/lattice.hpp"
#include "infocausal/measure.hpp"

namespace infocausal {

// Exhaustive checkers for the information-measure axioms and the properties
// derived from them. All of them enumerate subsets, hence the size guards.

inline constexpr std::size_t kAxiomGroundLimit = 12;
inline constexpr std::size_t kSemigraphoidGroundLimit = 8;

struct AxiomViolation {
  enum class Kind { kNormalization, kMonotonicity, kSubmodularity };
  Kind kind;
  Element s;
  Element t;
  /// How far past zero the offending inequality went (always > tolerance).
  double magnitude;
};

struct AxiomReport {
  std::size_t ground_size = 0;
  double tolerance = 0.0;
  std::size_t checked = 0;
  /// Largest submodularity slack R(s)+R(t)-R(s|t)-R(s&t) seen; 0 means tight.
  double max_submodular_gap = 0.0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks normalization, monotonicity over all s <= t and submodularity over
/// all pairs, against `tolerance`. Throws SizeGuardError past 12 observations.
AxiomReport verify_axioms(const InformationMeasure& m, std::size_t ground_size,
                          double tolerance);
/// Tolerance from the measure: 1e-9 when exact, the declared slack otherwise.
AxiomReport verify_axioms(const InformationMeasure& m, std::size_t ground_size);

struct SemigraphoidViolation {
  enum class Axiom { kSymmetry, kDecomposition, kWeakUnion, kContraction };
  Axiom axiom;
  Element x, y, w, z;
  /// CMI value of the conclusion that should have been independent.
  double magnitude;
};

struct SemigraphoidReport {
  std::size_t ground_size = 0;
  double tolerance = 0.0;
  std::size_t quadruples = 0;
  std::vector<SemigraphoidViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Symmetry, decomposition, weak union and contraction over every quadruple of
/// pairwise disjoint elements (x, y, w nonempty). Independence uses the
/// measure's exact test when it has one, else CMI <= tolerance.
SemigraphoidReport verify_semigraphoid(const InformationMeasure& m, std::size_t ground_size,
                                       double tolerance);

using CmiFunction = std::function<double(Element, Element, Element)>;

/// I(s:t v u|x) - I(s:t|x) - I(s:u|t v x) for an arbitrary dependence function.
double chain_rule_residual(const CmiFunction& cmi, Element s, Element t, Element u, Element x);
double verify_chain_rule(const InformationMeasure& m, Element s, Element t, Element u,
                         Element x);

struct DataProcessingReport {
  double r_s_given_t = 0.0;   // R(s|t)
  double i_s_x_given_t = 0.0; // I(s:x|t)
  double i_s_x = 0.0;         // I(s:x)
  double i_t_x = 0.0;         // I(t:x)
  bool premise = false;       // R(s|t) <= tol
  bool pass = true;           // premise => both consequences within tol'
};

DataProcessingReport verify_data_processing(const InformationMeasure& m, Element s, Element t,
                                            Element x, double premise_tol = 1e-9,
                                            double conclusion_tol = 1e-9);

std::string to_string(AxiomViolation::Kind kind);
std::string to_string(SemigraphoidViolation::Axiom axiom);

}  // namespace infocausal

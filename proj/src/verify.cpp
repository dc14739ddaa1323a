#include "infocausal/verify.hpp"

#include <algorithm>
#include <cmath>

#include "infocausal/errors.hpp"

namespace infocausal {
namespace {

void check_guard(std::size_t ground_size, std::size_t limit, const InformationMeasure& m,
                 const char* what) {
  if (ground_size > limit) {
    throw SizeGuardError(std::string(what) + ": ground set of size " +
                         std::to_string(ground_size) + " exceeds limit " +
                         std::to_string(limit));
  }
  if (ground_size > m.ground_size()) {
    throw InputError(std::string(what) + ": measure has only " +
                     std::to_string(m.ground_size()) + " observations");
  }
}

// R over every subset of {0..n-1}, indexed by mask.
std::vector<double> tabulate(const InformationMeasure& m, std::size_t n) {
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (std::uint64_t mask = 1; mask < table.size(); ++mask) {
    table[mask] = joint_info(m, Element(mask));
  }
  return table;
}

}  // namespace

AxiomReport verify_axioms(const InformationMeasure& m, std::size_t ground_size,
                          double tolerance) {
  check_guard(ground_size, kAxiomGroundLimit, m, "verify_axioms");
  AxiomReport report;
  report.ground_size = ground_size;
  report.tolerance = tolerance;

  const double r0 = m.evaluate(Element{});
  ++report.checked;
  if (std::abs(r0) > tolerance) {
    report.violations.push_back(
        {AxiomViolation::Kind::kNormalization, Element{}, Element{}, std::abs(r0)});
  }

  const std::vector<double> r = tabulate(m, ground_size);
  const std::uint64_t count = r.size();

  for (std::uint64_t t = 0; t < count; ++t) {
    // Every s <= t, via submask enumeration.
    for (std::uint64_t s = t;; s = (s - 1) & t) {
      if (s != t) {
        ++report.checked;
        const double drop = r[s] - r[t];
        if (drop > tolerance) {
          report.violations.push_back(
              {AxiomViolation::Kind::kMonotonicity, Element(s), Element(t), drop});
        }
      }
      if (s == 0) break;
    }
  }

  for (std::uint64_t s = 0; s < count; ++s) {
    for (std::uint64_t t = s + 1; t < count; ++t) {
      ++report.checked;
      const double gap = r[s] + r[t] - r[s | t] - r[s & t];
      report.max_submodular_gap = std::max(report.max_submodular_gap, std::abs(gap));
      if (-gap > tolerance) {
        report.violations.push_back(
            {AxiomViolation::Kind::kSubmodularity, Element(s), Element(t), -gap});
      }
    }
  }
  return report;
}

AxiomReport verify_axioms(const InformationMeasure& m, std::size_t ground_size) {
  const Exactness e = m.exactness();
  return verify_axioms(m, ground_size, e.is_exact() ? 1e-9 : e.slack);
}

SemigraphoidReport verify_semigraphoid(const InformationMeasure& m, std::size_t ground_size,
                                       double tolerance) {
  check_guard(ground_size, kSemigraphoidGroundLimit, m, "verify_semigraphoid");
  SemigraphoidReport report;
  report.ground_size = ground_size;
  report.tolerance = tolerance;

  const std::vector<double> r = tabulate(m, ground_size);
  auto cmi = [&](Element s, Element t, Element u) {
    return r[(s | u).mask()] + r[(t | u).mask()] - r[(s | t | u).mask()] - r[u.mask()];
  };
  auto independent = [&](Element s, Element t, Element u) {
    if (auto exact = m.exactly_independent(s, t, u)) return *exact;
    return cmi(s, t, u) <= tolerance;
  };
  auto flag = [&](SemigraphoidViolation::Axiom axiom, Element x, Element y, Element w,
                  Element z, double value) {
    report.violations.push_back({axiom, x, y, w, z, value});
  };

  // Assign every observation to one of: unused, x, y, w, z.
  std::size_t total = 1;
  for (std::size_t i = 0; i < ground_size; ++i) total *= 5;
  for (std::size_t code = 0; code < total; ++code) {
    std::uint64_t part[5] = {0, 0, 0, 0, 0};
    std::size_t rest = code;
    for (std::size_t i = 0; i < ground_size; ++i) {
      part[rest % 5] |= std::uint64_t{1} << i;
      rest /= 5;
    }
    const Element x(part[1]), y(part[2]), w(part[3]), z(part[4]);
    if (x.empty() || y.empty()) continue;

    // Symmetry needs only (x, y, z); count it once, with w empty.
    if (w.empty()) {
      ++report.quadruples;
      if (independent(x, y, z) && !independent(y, x, z)) {
        flag(SemigraphoidViolation::Axiom::kSymmetry, x, y, w, z, cmi(y, x, z));
      }
      continue;
    }
    ++report.quadruples;

    if (independent(x, y | w, z)) {
      if (!independent(x, y, z)) {
        flag(SemigraphoidViolation::Axiom::kDecomposition, x, y, w, z, cmi(x, y, z));
      }
      if (!independent(x, w, z)) {
        flag(SemigraphoidViolation::Axiom::kDecomposition, x, y, w, z, cmi(x, w, z));
      }
      if (!independent(x, y, z | w)) {
        flag(SemigraphoidViolation::Axiom::kWeakUnion, x, y, w, z, cmi(x, y, z | w));
      }
    }
    if (independent(x, w, z | y) && independent(x, y, z) && !independent(x, w | y, z)) {
      flag(SemigraphoidViolation::Axiom::kContraction, x, y, w, z, cmi(x, w | y, z));
    }
  }
  return report;
}

double chain_rule_residual(const CmiFunction& cmi, Element s, Element t, Element u, Element x) {
  return cmi(s, t | u, x) - (cmi(s, t, x) + cmi(s, u, t | x));
}

double verify_chain_rule(const InformationMeasure& m, Element s, Element t, Element u,
                         Element x) {
  return chain_rule_residual(
      [&m](Element a, Element b, Element c) { return cond_mutual_info(m, a, b, c); }, s, t, u,
      x);
}

DataProcessingReport verify_data_processing(const InformationMeasure& m, Element s, Element t,
                                            Element x, double premise_tol,
                                            double conclusion_tol) {
  DataProcessingReport rep;
  rep.r_s_given_t = cond_info(m, s, t);
  rep.i_s_x_given_t = cond_mutual_info(m, s, x, t);
  rep.i_s_x = mutual_info(m, s, x);
  rep.i_t_x = mutual_info(m, t, x);
  rep.premise = rep.r_s_given_t <= premise_tol;
  if (rep.premise) {
    rep.pass = rep.i_s_x_given_t <= conclusion_tol && rep.i_s_x <= rep.i_t_x + conclusion_tol;
  }
  return rep;
}

std::string to_string(AxiomViolation::Kind kind) {
  switch (kind) {
    case AxiomViolation::Kind::kNormalization: return "normalization";
    case AxiomViolation::Kind::kMonotonicity: return "monotonicity";
    case AxiomViolation::Kind::kSubmodularity: return "submodularity";
  }
  return "?";
}

std::string to_string(SemigraphoidViolation::Axiom axiom) {
  switch (axiom) {
    case SemigraphoidViolation::Axiom::kSymmetry: return "symmetry";
    case SemigraphoidViolation::Axiom::kDecomposition: return "decomposition";
    case SemigraphoidViolation::Axiom::kWeakUnion: return "weak-union";
    case SemigraphoidViolation::Axiom::kContraction: return "contraction";
  }
  return "?";
}

}  // namespace infocausal

#pragma once

#include <cstddef>
#include <vector>

#include "infocausal/concrete_measures.hpp"
#include "infocausal/dag.hpp"
#include "infocausal/lz.hpp"
#include "infocausal/symbols.hpp"

namespace infocausal {

// Generators of measures with known graph structure, shared by the verify
// command and the test suites.

/// Random pmf over variables of the given cardinalities. About a tenth of
/// the cells are zeroed to exercise degenerate supports.
JointTable random_joint_table(const std::vector<std::size_t>& cardinalities, Rng& rng);

/// P(x) = prod_j P(x_j | pa_j) with random conditionals; Markov to g.
JointTable structural_model(const Dag& g, Rng& rng, std::size_t cardinality = 2);

/// Structural model over g plus a latent binary parent shared by `left`
/// and `right`, marginalized out.
JointTable confounded_model(const Dag& g, std::size_t left, std::size_t right, Rng& rng,
                            std::size_t cardinality = 2);

/// Variables x_0..x_{k-1}, n_0..n_{k-1}: independent random noises and
/// x_j = f_j(pa_j, n_j) for random functions f_j.
JointTable functional_shannon_model(const Dag& g, Rng& rng, std::size_t cardinality = 2);

/// Observations x_0..x_{k-1}, n_0..n_{k-1}. Each noise draws exponents of
/// its own primes; x_j is a random divisor of lcm(pa_j, n_j).
PeriodObservations functional_lcm_model(const Dag& g, Rng& rng);

/// Strings x_0..x_{k-1}, n_0..n_{k-1}: independent random noises and
/// x_j = functional_concat(concatenated parents, n_j, k_j).
std::vector<SymbolString> functional_lz_model(const Dag& g, Rng& rng, std::size_t max_pieces,
                                              std::size_t noise_min, std::size_t noise_max,
                                              std::size_t alphabet = 10);

/// Random DAG on n nodes: each forward pair (in a random order) gets an
/// edge with probability p.
Dag random_dag(std::size_t n, double p, Rng& rng);

}  // namespace infocausal

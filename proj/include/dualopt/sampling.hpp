/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dualopt/dataset.hpp"
#include "dualopt/frames.hpp"
#include "dualopt/statevector.hpp"

namespace dualopt {

/// Simulates randomized-Pauli (Pauli-6) measurements of every qubit: per
/// shot and qubit, a basis in {Z, X, Y} is drawn uniformly, the qubit is
/// measured projectively in that basis with sequential collapse, and the
/// outcome index 2*basis + result is recorded (ordering of
/// build_pauli6_povm).
///
/// Deterministic: shot s consumes counters [s*2N, (s+1)*2N) of the
/// counter-based stream derived from `seed` (see rng.hpp), so any
/// partitioning of shots across workers merges byte-identically.
ShotDataset sample_pauli6_shots(const StateVector& state, std::int64_t n_shots, std::uint64_t seed);

/// Joint probabilities p(i_0..i_{N-1}) = <psi| (x)_n Pi_{i_n} |psi> for all
/// r^N outcome tuples. Index is qubit-0 major: linear = sum_n i_n * r^(N-1-n).
struct OutcomeDistribution {
    int n_qubits = 0;
    int n_outcomes = 0;  // r, per qubit
    std::vector<double> probs;

    std::size_t linear_index(std::span<const int> outcome) const;
    double prob(std::span<const int> outcome) const { return probs[linear_index(outcome)]; }
};

inline constexpr int kDefaultOracleCap = 8;

/// Brute-force oracle over all r^N tuples. Throws if N exceeds n_max.
OutcomeDistribution exact_outcome_distribution(const StateVector& state,
                                               const SingleQubitPovm& povm,
                                               int n_max = kDefaultOracleCap);

/// Single-qubit marginal outcome probabilities, one vector of length r per
/// qubit, from the reduced state of each qubit. For a product state these
/// factorize the joint distribution.
std::vector<std::vector<double>> qubit_outcome_probs(const StateVector& state,
                                                     const SingleQubitPovm& povm);

}  // namespace dualopt

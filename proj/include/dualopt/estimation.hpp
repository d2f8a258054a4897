/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualopt/dataset.hpp"
#include "dualopt/frames.hpp"
#include "dualopt/observable.hpp"
#include "dualopt/sampling.hpp"

namespace dualopt {

/// Estimator weight of one outcome tuple: Tr[O D_{i_0} (x) ... (x) D_{i_{N-1}}]
/// = sum_terms c * prod_n Tr[P_n D^{(n)}_{i_n}], from the per-qubit weight
/// tables cached in the dual sets.
double shot_weight(const PauliObservable& obs, const ProductDualSet& duals,
                   const std::uint8_t* outcome);

/// Shot-averaged mean (1/S) sum_s w_s, summed sequentially by shot index so
/// repeated runs are bit-identical.
double mean_estimate(const ShotDataset& data, const PauliObservable& obs,
                     const ProductDualSet& duals);

/// Shot-averaged second moment (1/S) sum_s w_s^2; the optimization objective.
double empirical_second_moment(const ShotDataset& data, const PauliObservable& obs,
                               const ProductDualSet& duals);

struct EstimationReport {
    double mean = 0.0;
    double second_moment = 0.0;
    double std_error = 0.0;
    std::int64_t n_shots_used = 0;
    std::optional<double> abs_error;  // |<O> - mean|, only when truth is known
};

/// Mean, second moment and standard error in one pass. The standard error is
/// sigma = sqrt(max(0, m2 - mean^2) / S); negative round-off at zero sample
/// variance clamps to 0. Requires S >= 2.
EstimationReport estimate_with_error(const ShotDataset& data, const PauliObservable& obs,
                                     const ProductDualSet& duals);

/// Exact mean sum_i p_i w_i over the full joint distribution.
double exact_mean(const OutcomeDistribution& dist, const PauliObservable& obs,
                  const ProductDualSet& duals);

/// Exact per-shot variance sum_i p_i w_i^2 - (sum_i p_i w_i)^2, brute force
/// over all r^N outcome tuples.
double exact_variance(const OutcomeDistribution& dist, const PauliObservable& obs,
                      const ProductDualSet& duals);

/// Tensor-factored mean for a product state, given per-qubit outcome
/// probabilities (e.g. from qubit_outcome_probs): O(N r) per term.
double exact_mean_product(const std::vector<std::vector<double>>& qubit_probs,
                          const PauliObservable& obs, const ProductDualSet& duals);

/// Tensor-factored per-shot variance for a product state: cross moments
/// factorize as prod_n sum_i p^(n)_i w_i[a_n] w_i[b_n] over term pairs.
double exact_variance_product(const std::vector<std::vector<double>>& qubit_probs,
                              const PauliObservable& obs, const ProductDualSet& duals);

}  // namespace dualopt

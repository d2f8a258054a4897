/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dualopt/dataset.hpp"
#include "dualopt/estimation.hpp"
#include "dualopt/frames.hpp"
#include "dualopt/observable.hpp"

namespace dualopt {

struct OptimizerConfig {
    int n_sweeps = 20;
    int max_inner_iters = 50;
    double grad_tol = 1e-8;
    int overfit_patience = 1;
    double overfit_ratio = 1.02;
    std::uint64_t rng_seed = 0;
    /// Solve each per-qubit convex quadratic by a minimum-norm least-squares
    /// step instead of L-BFGS. Both routes agree to 1e-6 in objective; the
    /// quasi-Newton route is the default.
    bool exact_inner_solve = false;

    void validate() const;
};

/// Empirical second moment of the shot weights and its analytic gradient
/// with respect to the free parameters of one qubit (all other qubits
/// fixed). Each shot weight is affine in those parameters, so the objective
/// is a convex quadratic. The gradient is flattened row-major over
/// (redundant index, Pauli letter): 4*(r-4) entries, 8 for Pauli-6.
std::pair<double, std::vector<double>> objective_and_gradient(const ShotDataset& data,
                                                              const PauliObservable& obs,
                                                              const ProductDualSet& duals,
                                                              int qubit);

/// Replaces one qubit's parameters with the minimizer of the per-qubit
/// objective (L-BFGS, or the exact step when configured). The training
/// objective never increases. Identity-only observables are returned
/// unchanged.
ProductDualSet optimize_qubit(const ShotDataset& data, const PauliObservable& obs,
                              const ProductDualSet& duals, int qubit, const OptimizerConfig& cfg);

struct SweepTrace {
    std::vector<double> train_objective;       // after each completed sweep
    std::vector<double> validation_objective;  // after each completed sweep
    double initial_validation = 0.0;
    int best_sweep = 0;  // 0 = the starting duals
    bool stopped_early = false;
};

/// Coordinate sweeps over the qubits, minimizing the training second moment
/// starting from `init`, with the validation second moment monitored after
/// every sweep. Stops early once the validation objective has exceeded
/// best * overfit_ratio for overfit_patience consecutive sweeps, and always
/// returns the duals with the lowest recorded validation objective (which is
/// never worse than init's). The duality identity is asserted after every
/// qubit update.
ProductDualSet sweep_optimize(const ShotDataset& train, const ShotDataset& validation,
                              const PauliObservable& obs, const ProductDualSet& init,
                              const OptimizerConfig& cfg, SweepTrace* trace = nullptr);

/// Deterministic half/half partition: a seeded Fisher-Yates permutation of
/// the shot indices, then even positions vs odd positions. Sizes differ by
/// at most one.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> split_shot_indices(
    std::int64_t n_shots, std::uint64_t seed);

struct DirectionReport {
    EstimationReport estimate;   // on the estimation half, with the selected duals
    EstimationReport canonical;  // on the estimation half, with canonical duals
    std::string selection;       // "optimized" or "canonical"
    SweepTrace trace;
};

struct SplitResult {
    DirectionReport ab;  // trained on A, estimated on B
    DirectionReport ba;  // trained on B, estimated on A
    EstimationReport combined;
    ProductDualSet trained_on_a;
    ProductDualSet trained_on_b;
};

/// The full protocol: split the shots into disjoint halves A and B, train
/// duals on one half, estimate on the other with whichever of
/// {optimized, canonical} duals has the smaller standard error there, swap
/// the roles and combine. Combined mean is the average of the two
/// directional means; combined sigma is sqrt(s_ab^2 + s_ba^2)/2, treating
/// the directions as independent. Requires S >= 4.
SplitResult split_estimate(const ShotDataset& data, const PauliObservable& obs,
                           const OptimizerConfig& cfg);

}  // namespace dualopt

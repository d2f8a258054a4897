/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dualopt {

/// Measurement shots: one outcome index per qubit per shot, stored row-major
/// (shot-major), plus the provenance needed to reproduce the dataset.
struct ShotDataset {
    int n_qubits = 0;
    std::int64_t n_shots = 0;
    std::vector<std::uint8_t> outcomes;  // n_shots * n_qubits

    std::uint64_t seed = 0;
    std::string generator;
    std::string povm_label;
    std::string provenance;  // machine-readable state spec, e.g. "zero" or "tfim;J=...;..."

    std::uint8_t outcome(std::int64_t shot, int qubit) const {
        return outcomes[static_cast<std::size_t>(shot) * n_qubits + qubit];
    }

    const std::uint8_t* shot(std::int64_t s) const {
        return outcomes.data() + static_cast<std::size_t>(s) * n_qubits;
    }

    /// Checks shape consistency and that every index is below n_outcomes.
    void validate(int n_outcomes) const;

    /// New dataset holding the given shots (by index, in the given order).
    ShotDataset subset(std::span<const std::int64_t> shot_indices) const;

    /// First `count` shots.
    ShotDataset head(std::int64_t count) const;
};

}  // namespace dualopt

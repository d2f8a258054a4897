/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/dataset.hpp"

#include <stdexcept>

namespace dualopt {

void ShotDataset::validate(int n_outcomes) const {
    if (n_qubits < 1) throw std::invalid_argument("shot dataset needs at least one qubit");
    if (n_shots < 1) throw std::invalid_argument("shot dataset needs at least one shot");
    if (outcomes.size() != static_cast<std::size_t>(n_shots) * n_qubits)
        throw std::invalid_argument("shot dataset outcome array has the wrong size");
    for (std::uint8_t v : outcomes)
        if (v >= n_outcomes)
            throw std::invalid_argument("shot dataset contains outcome index " +
                                        std::to_string(int(v)) + " >= " + std::to_string(n_outcomes));
}

ShotDataset ShotDataset::subset(std::span<const std::int64_t> shot_indices) const {
    ShotDataset out;
    out.n_qubits = n_qubits;
    out.n_shots = static_cast<std::int64_t>(shot_indices.size());
    out.outcomes.reserve(shot_indices.size() * n_qubits);
    for (std::int64_t s : shot_indices) {
        if (s < 0 || s >= n_shots) throw std::out_of_range("shot index out of range");
        const std::uint8_t* row = shot(s);
        out.outcomes.insert(out.outcomes.end(), row, row + n_qubits);
    }
    out.seed = seed;
    out.generator = generator;
    out.povm_label = povm_label;
    out.provenance = provenance;
    return out;
}

ShotDataset ShotDataset::head(std::int64_t count) const {
    if (count < 1 || count > n_shots) throw std::out_of_range("shot count out of range");
    ShotDataset out = *this;
    out.n_shots = count;
    out.outcomes.resize(static_cast<std::size_t>(count) * n_qubits);
    return out;
}

}  // namespace dualopt

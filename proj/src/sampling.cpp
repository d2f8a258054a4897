/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dualopt/rng.hpp"

namespace dualopt {

namespace {

using cd = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rotations mapping the measured basis onto the computational one:
// H for X (|+> -> |0>), H S^dagger for Y (|+i> -> |0>).
const std::array<cd, 4> kHadamard{cd(kInvSqrt2, 0), cd(kInvSqrt2, 0), cd(kInvSqrt2, 0),
                                  cd(-kInvSqrt2, 0)};
const std::array<cd, 4> kHadamardSdg{cd(kInvSqrt2, 0), cd(0, -kInvSqrt2), cd(kInvSqrt2, 0),
                                     cd(0, kInvSqrt2)};
// Their inverses restore the frame after the collapse.
const std::array<cd, 4> kHadamardInv = kHadamard;
const std::array<cd, 4> kSHadamard{cd(kInvSqrt2, 0), cd(kInvSqrt2, 0), cd(0, kInvSqrt2),
                                   cd(0, -kInvSqrt2)};

}  // namespace

ShotDataset sample_pauli6_shots(const StateVector& state, std::int64_t n_shots, std::uint64_t seed) {
    if (n_shots < 1) throw std::invalid_argument("need at least one shot");
    const int n = state.n_qubits();
    const CounterRng rng(seed);

    ShotDataset data;
    data.n_qubits = n;
    data.n_shots = n_shots;
    data.outcomes.resize(static_cast<std::size_t>(n_shots) * n);
    data.seed = seed;
    data.generator = kGeneratorId;
    data.povm_label = "pauli6";

    StateVector scratch = state;
    for (std::int64_t s = 0; s < n_shots; ++s) {
        scratch = state;
        const std::uint64_t shot_base = static_cast<std::uint64_t>(s) * 2 * n;
        for (int q = 0; q < n; ++q) {
            const int basis =
                static_cast<int>(rng.below(shot_base + 2 * static_cast<std::uint64_t>(q), 3));
            if (basis == 1)
                scratch.apply_one_qubit(q, kHadamard);
            else if (basis == 2)
                scratch.apply_one_qubit(q, kHadamardSdg);
            double p0 = std::clamp(scratch.prob_zero(q), 0.0, 1.0);
            const double u = rng.uniform(shot_base + 2 * static_cast<std::uint64_t>(q) + 1);
            const int result = (u < p0) ? 0 : 1;
            scratch.project(q, result);
            if (basis == 1)
                scratch.apply_one_qubit(q, kHadamardInv);
            else if (basis == 2)
                scratch.apply_one_qubit(q, kSHadamard);
            data.outcomes[static_cast<std::size_t>(s) * n + q] =
                static_cast<std::uint8_t>(2 * basis + result);
        }
    }
    return data;
}

std::size_t OutcomeDistribution::linear_index(std::span<const int> outcome) const {
    if (static_cast<int>(outcome.size()) != n_qubits)
        throw std::invalid_argument("outcome tuple length does not match qubit count");
    std::size_t idx = 0;
    for (int v : outcome) {
        if (v < 0 || v >= n_outcomes) throw std::out_of_range("outcome index out of range");
        idx = idx * n_outcomes + static_cast<std::size_t>(v);
    }
    return idx;
}

OutcomeDistribution exact_outcome_distribution(const StateVector& state,
                                               const SingleQubitPovm& povm, int n_max) {
    const int n = state.n_qubits();
    if (n > n_max)
        throw std::invalid_argument("exact outcome distribution limited to " +
                                    std::to_string(n_max) + " qubits");
    const int r = povm.size();
    std::vector<std::array<cd, 4>> effect_mats(r);
    for (int i = 0; i < r; ++i) effect_mats[i] = povm.effects[i].to_matrix();

    OutcomeDistribution dist;
    dist.n_qubits = n;
    dist.n_outcomes = r;
    std::size_t total = 1;
    for (int q = 0; q < n; ++q) total *= static_cast<std::size_t>(r);
    dist.probs.assign(total, 0.0);

    const auto& ref = state.amplitudes();
    std::size_t linear = 0;

    // Depth-first over qubits on raw amplitude buffers (effects are not
    // unitary, so StateVector cannot hold the intermediate vectors); the
    // leaf value is <psi| (applied effects) |psi>.
    std::vector<std::vector<cd>> buffers(static_cast<std::size_t>(n) + 1);
    buffers[0] = ref;
    auto apply_effect = [&](const std::vector<cd>& src, std::vector<cd>& dst, int q, int effect) {
        dst = src;
        const std::int64_t stride = std::int64_t{1} << q;
        const std::int64_t dim = static_cast<std::int64_t>(dst.size());
        const auto& m = effect_mats[static_cast<std::size_t>(effect)];
        for (std::int64_t base = 0; base < dim; base += 2 * stride)
            for (std::int64_t off = 0; off < stride; ++off) {
                const std::int64_t i0 = base + off;
                const std::int64_t i1 = i0 + stride;
                const cd a0 = dst[static_cast<std::size_t>(i0)];
                const cd a1 = dst[static_cast<std::size_t>(i1)];
                dst[static_cast<std::size_t>(i0)] = m[0] * a0 + m[1] * a1;
                dst[static_cast<std::size_t>(i1)] = m[2] * a0 + m[3] * a1;
            }
    };
    std::function<void(int)> walk = [&](int q) {
        if (q == n) {
            cd acc(0.0, 0.0);
            const auto& v = buffers[static_cast<std::size_t>(n)];
            for (std::size_t k = 0; k < v.size(); ++k) acc += std::conj(ref[k]) * v[k];
            dist.probs[linear] = acc.real();
            ++linear;
            return;
        }
        for (int i = 0; i < r; ++i) {
            apply_effect(buffers[static_cast<std::size_t>(q)], buffers[static_cast<std::size_t>(q) + 1],
                         q, i);
            walk(q + 1);
        }
    };
    walk(0);
    return dist;
}

std::vector<std::vector<double>> qubit_outcome_probs(const StateVector& state,
                                                     const SingleQubitPovm& povm) {
    const int n = state.n_qubits();
    const int r = povm.size();
    std::vector<std::vector<double>> probs(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(r), 0.0));
    for (int q = 0; q < n; ++q) {
        // Single-qubit reduced state in Pauli coordinates: (1, <X>, <Y>, <Z>)/2.
        HermitianOp rho{{0.5, 0.0, 0.0, 0.0}};
        for (int p = 1; p < 4; ++p) {
            std::string word(static_cast<std::size_t>(n), 'I');
            word[static_cast<std::size_t>(q)] = pauli_letter(p);
            rho.c[static_cast<std::size_t>(p)] =
                0.5 * exact_expectation(state, PauliObservable(n, {{1.0, word}}));
        }
        for (int i = 0; i < r; ++i)
            probs[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)] =
                povm.effects[static_cast<std::size_t>(i)].trace_with(rho);
    }
    return probs;
}

}  // namespace dualopt

/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "dualopt/observable.hpp"

namespace dualopt {

/// Desk-scale guardrail on statevector size. Estimation and optimization
/// never touch a statevector, so they carry no such cap.
inline constexpr int kDefaultQubitCap = 14;

/// A pure N-qubit state. Qubit q maps to bit q of the amplitude index
/// (qubit 0 is the least significant bit).
class StateVector {
  public:
    using cd = std::complex<double>;

    /// Validates the norm (|| |psi> ||^2 = 1 within 1e-10) and the size.
    StateVector(int n_qubits, std::vector<cd> amplitudes);

    static StateVector zero_state(int n_qubits, int cap = kDefaultQubitCap);

    int n_qubits() const { return n_qubits_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(amps_.size()); }
    const std::vector<cd>& amplitudes() const { return amps_; }
    double norm_sq() const;

    /// Applies a 2x2 matrix {m00, m01, m10, m11} to qubit q.
    void apply_one_qubit(int q, const std::array<cd, 4>& m);

    /// Applies exp(i theta Z_a Z_b): phase e^{i theta} where bits agree,
    /// e^{-i theta} where they differ.
    void apply_zz_phase(int a, int b, double theta);

    /// Probability of reading 0 on qubit q in the computational basis.
    double prob_zero(int q) const;

    /// Projects qubit q onto computational outcome 0/1 and renormalizes.
    void project(int q, int outcome);

  private:
    int n_qubits_;
    std::vector<cd> amps_;
};

/// Returns |0...0> on n qubits. Throws if n is outside [1, cap].
StateVector prepare_zero_state(int n_qubits, int cap = kDefaultQubitCap);

/// Transverse-field Ising chain H = -J sum_i Z_i Z_{i+1} + h sum_i X_i with
/// open boundary, evolved by first-order Trotter steps of duration dt.
struct TfimParams {
    int n_qubits = 2;
    double coupling = 0.5236;
    double field = 1.0;
    double dt = 0.1;
    int steps = 0;

    void validate() const;
};

/// Per step: exp(+i J dt Z_i Z_{i+1}) on every bond, then exp(-i h dt X_i)
/// on every site. Norm is preserved to 1e-10.
StateVector trotter_evolve(const StateVector& state, const TfimParams& params);

/// <psi|O|psi> by applying each Pauli string directly to the amplitudes.
double exact_expectation(const StateVector& state, const PauliObservable& obs);

}  // namespace dualopt

/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <array>
#include <string>
#include <vector>

#include "dualopt/pauli.hpp"

namespace dualopt {

/// An informationally complete single-qubit POVM: r >= 4 positive effects
/// that sum to the identity and span the operator space.
struct SingleQubitPovm {
    std::vector<HermitianOp> effects;
    std::string label;

    int size() const { return static_cast<int>(effects.size()); }

    /// Throws std::invalid_argument if any invariant fails: r >= 4, effects
    /// positive semidefinite (min eigenvalue >= -1e-10), completeness within
    /// 1e-12 per coordinate, coordinate matrix of rank 4.
    void validate() const;
};

/// The 6-outcome randomized-Pauli POVM. Outcome order: 0:|0>, 1:|1>,
/// 2:|+>, 3:|->, 4:|+i>, 5:|-i>; effect i is the projector scaled by 1/3.
SingleQubitPovm build_pauli6_povm();

/// A dual set {D_i} for a POVM {Pi_i}: any operator O decomposes as
/// O = sum_i Tr[O Pi_i] D_i.  `weights[i][p] = Tr[P_p D_i]` caches the
/// per-outcome estimator factors for the four Pauli letters.
struct QubitDualSet {
    std::vector<HermitianOp> duals;
    std::vector<std::array<double, 4>> weights;

    static QubitDualSet from_duals(std::vector<HermitianOp> duals);

    int size() const { return static_cast<int>(duals.size()); }

    /// Sup-norm violation of the duality identity over P in {I, X, Y, Z}:
    /// max_P || sum_i Tr[P Pi_i] D_i - P ||_inf in Pauli coordinates.
    double duality_residual(const SingleQubitPovm& povm) const;
};

/// Duals from inverting the frame superoperator F(A) = sum_j Pi_j Tr[Pi_j A],
/// a 4x4 real linear map in Pauli coordinates. Throws std::invalid_argument
/// if F is singular (POVM not informationally complete).
QubitDualSet canonical_duals(const SingleQubitPovm& povm);

/// The free parameters of a dual family: one Hermitian operator per
/// redundant effect, as Pauli coordinate rows. (r-4) x 4 reals.
struct QubitDualParams {
    std::vector<std::array<double, 4>> theta;

    int n_redundant() const { return static_cast<int>(theta.size()); }
    int dim() const { return 4 * n_redundant(); }
    bool is_finite() const;

    static QubitDualParams zeros(int n_redundant);

    std::vector<double> flatten() const;
    static QubitDualParams from_flat(const std::vector<double>& x);
};

/// A choice of 4 linearly independent "basis" effects and the data derived
/// from it: the unique duals D*_i of the basis sub-frame and the overlap
/// coefficients Tr[D*_i Pi~_j] that expand each redundant effect in the
/// basis effects.
struct MinimalBasisSelection {
    SingleQubitPovm povm;
    std::array<int, 4> basis_indices{};
    std::vector<int> redundant_indices;
    std::array<HermitianOp, 4> star_duals{};
    /// overlap[j][i] = Tr[D*_i Pi~_j], row j per redundant effect (in
    /// redundant_indices order), column i per basis slot.
    std::vector<std::array<double, 4>> overlap;

    int n_outcomes() const { return povm.size(); }
    int n_redundant() const { return static_cast<int>(redundant_indices.size()); }
};

/// Deterministic basis choice: greedy pivoted elimination over the r x 4
/// coordinate matrix, largest residual norm first, lowest index on ties.
/// Throws std::invalid_argument if no 4 independent effects exist.
MinimalBasisSelection select_minimal_basis(const SingleQubitPovm& povm);

/// Builds the full dual set from free parameters: redundant-index duals are
/// the free operators themselves, basis-index duals are
/// D*_i - sum_j Tr[D*_i Pi~_j] theta_j. The result satisfies the duality
/// identity for every parameter value.
QubitDualSet assemble_duals(const MinimalBasisSelection& sel, const QubitDualParams& params);

/// Reads the parameters off an existing dual set (the redundant-index duals
/// are the free operators). Throws std::invalid_argument if the basis-index
/// duals are inconsistent with the dual constraint, i.e. the input is not a
/// dual set of this POVM.
QubitDualParams params_for_canonical(const MinimalBasisSelection& sel, const QubitDualSet& duals);

/// Per-qubit dual sets for an N-qubit product POVM, together with the basis
/// selection and free parameters each one was assembled from. The per-qubit
/// dual set is always consistent with its parameters via assemble_duals.
struct ProductDualSet {
    struct Qubit {
        MinimalBasisSelection selection;
        QubitDualParams params;
        QubitDualSet duals;
    };
    std::vector<Qubit> qubits;

    int n_qubits() const { return static_cast<int>(qubits.size()); }

    /// Canonical starting point: every qubit carries the frame-inverse duals.
    static ProductDualSet canonical(const SingleQubitPovm& povm, int n_qubits);

    /// Replaces one qubit's parameters and reassembles its dual set.
    void set_params(int qubit, QubitDualParams params);

    double max_duality_residual() const;
};

}  // namespace dualopt

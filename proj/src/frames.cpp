/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/frames.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dualopt {

namespace {

Eigen::Vector4d to_vec(const HermitianOp& op) {
    return Eigen::Vector4d(op.c[0], op.c[1], op.c[2], op.c[3]);
}

HermitianOp from_vec(const Eigen::Vector4d& v) {
    return HermitianOp{{v[0], v[1], v[2], v[3]}};
}

}  // namespace

void SingleQubitPovm::validate() const {
    const int r = size();
    if (r < 4)
        throw std::invalid_argument("POVM '" + label + "' has " + std::to_string(r) +
                                    " effects; informational completeness needs at least 4");
    HermitianOp sum;
    for (const auto& e : effects) {
        if (!e.is_finite())
            throw std::invalid_argument("POVM '" + label + "' has a non-finite effect");
        if (e.min_eigenvalue() < -1e-10)
            throw std::invalid_argument("POVM '" + label + "' has a non-positive effect");
        sum += e;
    }
    if (coord_distance(sum, HermitianOp::identity()) > 1e-12)
        throw std::invalid_argument("POVM '" + label + "' effects do not sum to the identity");

    Eigen::MatrixXd coords(r, 4);
    for (int i = 0; i < r; ++i) coords.row(i) = to_vec(effects[i]).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords);
    const auto& sv = svd.singularValues();
    if (sv.size() < 4 || sv[3] <= 1e-12 * sv[0])
        throw std::invalid_argument("POVM '" + label + "' is not informationally complete");
}

SingleQubitPovm build_pauli6_povm() {
    const double s = 1.0 / 6.0;
    SingleQubitPovm povm;
    povm.label = "pauli6";
    povm.effects = {
        HermitianOp{{s, 0.0, 0.0, s}},   // (1/3)|0><0|
        HermitianOp{{s, 0.0, 0.0, -s}},  // (1/3)|1><1|
        HermitianOp{{s, s, 0.0, 0.0}},   // (1/3)|+><+|
        HermitianOp{{s, -s, 0.0, 0.0}},  // (1/3)|-><-|
        HermitianOp{{s, 0.0, s, 0.0}},   // (1/3)|+i><+i|
        HermitianOp{{s, 0.0, -s, 0.0}},  // (1/3)|-i><-i|
    };
    return povm;
}

QubitDualSet QubitDualSet::from_duals(std::vector<HermitianOp> duals) {
    QubitDualSet set;
    set.weights.reserve(duals.size());
    for (const auto& d : duals) {
        if (!d.is_finite()) throw std::invalid_argument("dual set has a non-finite operator");
        set.weights.push_back({2.0 * d.c[0], 2.0 * d.c[1], 2.0 * d.c[2], 2.0 * d.c[3]});
    }
    set.duals = std::move(duals);
    return set;
}

double QubitDualSet::duality_residual(const SingleQubitPovm& povm) const {
    if (povm.size() != size())
        throw std::invalid_argument("dual set size does not match POVM outcome count");
    // sum_i Tr[P Pi_i] D_i = P for all P  <=>  2 * D * Pi^T = I4 in coordinates.
    double res = 0.0;
    for (int p = 0; p < 4; ++p) {
        HermitianOp acc;
        for (int i = 0; i < size(); ++i) acc += (2.0 * povm.effects[i].c[p]) * duals[i];
        HermitianOp target;
        target.c[p] = 1.0;
        res = std::max(res, coord_distance(acc, target));
    }
    return res;
}

QubitDualSet canonical_duals(const SingleQubitPovm& povm) {
    povm.validate();
    const int r = povm.size();
    // F(A) = sum_j Pi_j Tr[Pi_j A] is 2 * sum_j pi_j pi_j^T in coordinates.
    Eigen::Matrix4d frame = Eigen::Matrix4d::Zero();
    for (const auto& e : povm.effects) {
        Eigen::Vector4d v = to_vec(e);
        frame += 2.0 * v * v.transpose();
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(frame);
    if (!lu.isInvertible())
        throw std::invalid_argument("frame superoperator is singular; POVM is not informationally complete");
    std::vector<HermitianOp> duals(r);
    for (int i = 0; i < r; ++i) duals[i] = from_vec(lu.solve(to_vec(povm.effects[i])));
    return QubitDualSet::from_duals(std::move(duals));
}

bool QubitDualParams::is_finite() const {
    for (const auto& row : theta)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

QubitDualParams QubitDualParams::zeros(int n_redundant) {
    QubitDualParams p;
    p.theta.assign(static_cast<std::size_t>(n_redundant), {0.0, 0.0, 0.0, 0.0});
    return p;
}

std::vector<double> QubitDualParams::flatten() const {
    std::vector<double> x;
    x.reserve(theta.size() * 4);
    for (const auto& row : theta) x.insert(x.end(), row.begin(), row.end());
    return x;
}

QubitDualParams QubitDualParams::from_flat(const std::vector<double>& x) {
    if (x.size() % 4 != 0) throw std::invalid_argument("flat parameter vector length must be a multiple of 4");
    QubitDualParams p;
    p.theta.resize(x.size() / 4);
    for (std::size_t j = 0; j < p.theta.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) p.theta[j][k] = x[4 * j + k];
    return p;
}

MinimalBasisSelection select_minimal_basis(const SingleQubitPovm& povm) {
    povm.validate();
    const int r = povm.size();

    // Greedy pivoted elimination over the effect coordinate vectors: pick the
    // largest residual after projecting out the already-chosen span; lowest
    // index wins ties (strict > keeps the first maximum).
    std::vector<Eigen::Vector4d> residual(r);
    double max_norm = 0.0;
    for (int i = 0; i < r; ++i) {
        residual[i] = to_vec(povm.effects[i]);
        max_norm = std::max(max_norm, residual[i].norm());
    }
    std::vector<bool> chosen(r, false);
    MinimalBasisSelection sel;
    sel.povm = povm;
    for (int round = 0; round < 4; ++round) {
        int pivot = -1;
        double best = 0.0;
        for (int i = 0; i < r; ++i) {
            if (chosen[i]) continue;
            double n = residual[i].norm();
            if (n > best * (1.0 + 1e-12)) {
                best = n;
                pivot = i;
            }
        }
        if (pivot < 0 || best <= 1e-12 * max_norm)
            throw std::invalid_argument("POVM has no 4 linearly independent effects");
        chosen[pivot] = true;
        sel.basis_indices[round] = pivot;
        Eigen::Vector4d q = residual[pivot].normalized();
        for (int i = 0; i < r; ++i)
            if (!chosen[i]) residual[i] -= q.dot(residual[i]) * q;
    }

    for (int i = 0; i < r; ++i)
        if (!chosen[i]) sel.redundant_indices.push_back(i);

    // Unique duals of the basis sub-frame: O = sum_i Tr[O D*_i] PiBar_i for
    // all O gives 2 B Dstar^T = I4 with B the 4x4 matrix of basis columns.
    Eigen::Matrix4d basis;
    for (int i = 0; i < 4; ++i) basis.col(i) = to_vec(povm.effects[sel.basis_indices[i]]);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(basis);
    if (!lu.isInvertible()) throw std::invalid_argument("selected basis effects are singular");
    Eigen::Matrix4d star = 0.5 * lu.inverse().transpose();
    for (int i = 0; i < 4; ++i) sel.star_duals[i] = from_vec(star.col(i));

    sel.overlap.resize(sel.redundant_indices.size());
    for (std::size_t j = 0; j < sel.redundant_indices.size(); ++j) {
        const HermitianOp& red = povm.effects[sel.redundant_indices[j]];
        for (int i = 0; i < 4; ++i) sel.overlap[j][i] = sel.star_duals[i].trace_with(red);
    }
    return sel;
}

QubitDualSet assemble_duals(const MinimalBasisSelection& sel, const QubitDualParams& params) {
    if (params.n_redundant() != sel.n_redundant())
        throw std::invalid_argument("parameter rows do not match the number of redundant effects");
    if (!params.is_finite()) throw std::invalid_argument("dual parameters must be finite");

    std::vector<HermitianOp> duals(sel.n_outcomes());
    for (int j = 0; j < sel.n_redundant(); ++j)
        duals[sel.redundant_indices[j]] = HermitianOp{params.theta[j]};
    for (int i = 0; i < 4; ++i) {
        HermitianOp d = sel.star_duals[i];
        for (int j = 0; j < sel.n_redundant(); ++j)
            d -= sel.overlap[j][i] * HermitianOp{params.theta[j]};
        duals[sel.basis_indices[i]] = d;
    }
    return QubitDualSet::from_duals(std::move(duals));
}

QubitDualParams params_for_canonical(const MinimalBasisSelection& sel, const QubitDualSet& duals) {
    if (duals.size() != sel.n_outcomes())
        throw std::invalid_argument("dual set size does not match POVM outcome count");
    QubitDualParams params;
    params.theta.resize(sel.redundant_indices.size());
    for (std::size_t j = 0; j < sel.redundant_indices.size(); ++j)
        params.theta[j] = duals.duals[sel.redundant_indices[j]].c;

    // The basis duals must satisfy DBar_i + sum_j Tr[D*_i Pi~_j] D~_j = D*_i;
    // otherwise the input is not a dual set of this POVM.
    for (int i = 0; i < 4; ++i) {
        HermitianOp lhs = duals.duals[sel.basis_indices[i]];
        for (std::size_t j = 0; j < sel.redundant_indices.size(); ++j)
            lhs += sel.overlap[j][i] * HermitianOp{params.theta[j]};
        if (coord_distance(lhs, sel.star_duals[i]) > 1e-8)
            throw std::invalid_argument("input operators violate the dual constraint; not a dual set");
    }
    return params;
}

ProductDualSet ProductDualSet::canonical(const SingleQubitPovm& povm, int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    Qubit q;
    q.selection = select_minimal_basis(povm);
    q.params = params_for_canonical(q.selection, canonical_duals(povm));
    q.duals = assemble_duals(q.selection, q.params);
    ProductDualSet set;
    set.qubits.assign(static_cast<std::size_t>(n_qubits), q);
    return set;
}

void ProductDualSet::set_params(int qubit, QubitDualParams params) {
    auto& q = qubits.at(static_cast<std::size_t>(qubit));
    q.duals = assemble_duals(q.selection, params);
    q.params = std::move(params);
}

double ProductDualSet::max_duality_residual() const {
    double res = 0.0;
    for (const auto& q : qubits) res = std::max(res, q.duals.duality_residual(q.selection.povm));
    return res;
}

}  // namespace dualopt

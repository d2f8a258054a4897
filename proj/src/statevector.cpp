/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "dualopt/pauli.hpp"

namespace dualopt {

StateVector::StateVector(int n_qubits, std::vector<cd> amplitudes) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("statevector needs at least one qubit");
    const auto dim = std::size_t{1} << n_qubits;
    if (amplitudes.size() != dim)
        throw std::invalid_argument("amplitude count does not match 2^n_qubits");
    amps_ = std::move(amplitudes);
    double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > 1e-10) throw std::invalid_argument("statevector is not normalized");
}

StateVector StateVector::zero_state(int n_qubits, int cap) {
    if (n_qubits < 1 || n_qubits > cap)
        throw std::invalid_argument("qubit count " + std::to_string(n_qubits) +
                                    " outside supported range [1, " + std::to_string(cap) + "]");
    std::vector<cd> amps(std::size_t{1} << n_qubits, cd(0.0, 0.0));
    amps[0] = cd(1.0, 0.0);
    return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm_sq() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return n2;
}

void StateVector::apply_one_qubit(int q, const std::array<cd, 4>& m) {
    const std::int64_t stride = std::int64_t{1} << q;
    const std::int64_t dim = this->dim();
    for (std::int64_t base = 0; base < dim; base += 2 * stride) {
        for (std::int64_t off = 0; off < stride; ++off) {
            const std::int64_t i0 = base + off;
            const std::int64_t i1 = i0 + stride;
            const cd a0 = amps_[i0];
            const cd a1 = amps_[i1];
            amps_[i0] = m[0] * a0 + m[1] * a1;
            amps_[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_zz_phase(int a, int b, double theta) {
    const cd same = std::polar(1.0, theta);
    const cd diff = std::polar(1.0, -theta);
    const std::int64_t dim = this->dim();
    for (std::int64_t i = 0; i < dim; ++i) {
        const int za = static_cast<int>((i >> a) & 1);
        const int zb = static_cast<int>((i >> b) & 1);
        amps_[i] *= (za == zb) ? same : diff;
    }
}

double StateVector::prob_zero(int q) const {
    const std::int64_t stride = std::int64_t{1} << q;
    const std::int64_t dim = this->dim();
    double p = 0.0;
    for (std::int64_t base = 0; base < dim; base += 2 * stride)
        for (std::int64_t off = 0; off < stride; ++off) p += std::norm(amps_[base + off]);
    return p;
}

void StateVector::project(int q, int outcome) {
    const std::int64_t stride = std::int64_t{1} << q;
    const std::int64_t dim = this->dim();
    double kept = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
        const int bit = static_cast<int>((i >> q) & 1);
        if (bit != outcome)
            amps_[i] = cd(0.0, 0.0);
        else
            kept += std::norm(amps_[i]);
    }
    if (kept <= 0.0) throw std::runtime_error("projection onto a zero-probability outcome");
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& a : amps_) a *= scale;
}

StateVector prepare_zero_state(int n_qubits, int cap) { return StateVector::zero_state(n_qubits, cap); }

void TfimParams::validate() const {
    if (n_qubits < 2) throw std::invalid_argument("TFIM chain needs at least 2 qubits");
    if (!(dt > 0.0)) throw std::invalid_argument("Trotter step duration must be positive");
    if (steps < 0) throw std::invalid_argument("Trotter step count must be nonnegative");
    if (!std::isfinite(coupling) || !std::isfinite(field))
        throw std::invalid_argument("TFIM parameters must be finite");
}

StateVector trotter_evolve(const StateVector& state, const TfimParams& params) {
    params.validate();
    if (state.n_qubits() != params.n_qubits)
        throw std::invalid_argument("state size does not match TFIM parameters");
    StateVector out = state;
    const int n = params.n_qubits;
    const double zz_angle = params.coupling * params.dt;
    const double x_angle = params.field * params.dt;
    const std::complex<double> c(std::cos(x_angle), 0.0);
    const std::complex<double> s(0.0, -std::sin(x_angle));
    const std::array<std::complex<double>, 4> x_rot{c, s, s, c};  // exp(-i h dt X)
    for (int step = 0; step < params.steps; ++step) {
        for (int i = 0; i + 1 < n; ++i) out.apply_zz_phase(i, i + 1, zz_angle);
        for (int i = 0; i < n; ++i) out.apply_one_qubit(i, x_rot);
    }
    return out;
}

double exact_expectation(const StateVector& state, const PauliObservable& obs) {
    if (state.n_qubits() != obs.n_qubits)
        throw std::invalid_argument("state size does not match observable");
    using cd = std::complex<double>;
    const auto& amps = state.amplitudes();
    const std::int64_t dim = state.dim();
    double total = 0.0;
    for (const auto& term : obs.terms) {
        // P|z> = phase(z) |z ^ flip_mask>, with phase from Y and Z letters.
        std::int64_t flip_mask = 0;
        std::int64_t y_mask = 0;
        std::int64_t z_mask = 0;
        for (int q = 0; q < obs.n_qubits; ++q) {
            switch (term.word[static_cast<std::size_t>(q)]) {
                case 'X': flip_mask |= std::int64_t{1} << q; break;
                case 'Y':
                    flip_mask |= std::int64_t{1} << q;
                    y_mask |= std::int64_t{1} << q;
                    break;
                case 'Z': z_mask |= std::int64_t{1} << q; break;
                default: break;
            }
        }
        const int n_y = static_cast<int>(std::popcount(static_cast<std::uint64_t>(y_mask)));
        cd acc(0.0, 0.0);
        for (std::int64_t z = 0; z < dim; ++z) {
            // sign (-1)^{|z & (y|z_mask)|}, phase i^{n_y}
            const auto neg =
                std::popcount(static_cast<std::uint64_t>(z & (y_mask | z_mask))) & 1;
            cd phase = neg ? cd(-1.0, 0.0) : cd(1.0, 0.0);
            acc += std::conj(amps[static_cast<std::size_t>(z ^ flip_mask)]) * phase *
                   amps[static_cast<std::size_t>(z)];
        }
        // fold in the global i^{n_y} factor once per term
        cd iy(1.0, 0.0);
        for (int k = 0; k < (n_y & 3); ++k) iy *= cd(0.0, 1.0);
        total += term.coeff * (iy * acc).real();
    }
    return total;
}

}  // namespace dualopt

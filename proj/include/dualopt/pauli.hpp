/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace dualopt {

/// A single-qubit Hermitian operator stored as real Pauli coordinates,
///   A = c[0] I + c[1] X + c[2] Y + c[3] Z.
/// Traces of products reduce to inner products of the coordinate vectors,
/// and Hermiticity is structural; the dense 2x2 form is only materialized
/// where a statevector needs it.
struct HermitianOp {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    static constexpr HermitianOp zero() { return {}; }
    static constexpr HermitianOp identity() { return {{1.0, 0.0, 0.0, 0.0}}; }

    double trace() const { return 2.0 * c[0]; }

    /// Tr[A B] = 2 (a . b) for Hermitian A, B in Pauli coordinates.
    double trace_with(const HermitianOp& o) const {
        return 2.0 * (c[0] * o.c[0] + c[1] * o.c[1] + c[2] * o.c[2] + c[3] * o.c[3]);
    }

    /// Eigenvalues of a 2x2 Hermitian are c0 +/- |(c1,c2,c3)|.
    double min_eigenvalue() const {
        return c[0] - std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    }

    bool is_finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Dense row-major 2x2 form {m00, m01, m10, m11}.
    std::array<std::complex<double>, 4> to_matrix() const {
        using cd = std::complex<double>;
        return {cd(c[0] + c[3], 0.0), cd(c[1], -c[2]), cd(c[1], c[2]), cd(c[0] - c[3], 0.0)};
    }

    HermitianOp& operator+=(const HermitianOp& o) {
        for (std::size_t k = 0; k < 4; ++k) c[k] += o.c[k];
        return *this;
    }
    HermitianOp& operator-=(const HermitianOp& o) {
        for (std::size_t k = 0; k < 4; ++k) c[k] -= o.c[k];
        return *this;
    }
    HermitianOp& operator*=(double s) {
        for (std::size_t k = 0; k < 4; ++k) c[k] *= s;
        return *this;
    }

    friend HermitianOp operator+(HermitianOp a, const HermitianOp& b) { return a += b; }
    friend HermitianOp operator-(HermitianOp a, const HermitianOp& b) { return a -= b; }
    friend HermitianOp operator*(double s, HermitianOp a) { return a *= s; }
    friend HermitianOp operator*(HermitianOp a, double s) { return a *= s; }
};

/// Max absolute difference between coordinate vectors.
inline double coord_distance(const HermitianOp& a, const HermitianOp& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(a.c[k] - b.c[k]));
    return m;
}

/// Pauli letters are indexed I=0, X=1, Y=2, Z=3 throughout, matching the
/// coordinate layout of HermitianOp.
inline int pauli_index(char letter) {
    switch (letter) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: return -1;
    }
}

inline char pauli_letter(int index) {
    constexpr const char* letters = "IXYZ";
    return (index >= 0 && index < 4) ? letters[index] : '?';
}

}  // namespace dualopt

/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <string>
#include <vector>

namespace dualopt {

/// A real-weighted sum of N-qubit Pauli strings. Words are length-N strings
/// over {I, X, Y, Z}, qubit 0 leftmost. Duplicate words are merged on
/// construction.
struct PauliObservable {
    struct Term {
        double coeff = 0.0;
        std::string word;
    };

    int n_qubits = 0;
    std::vector<Term> terms;

    PauliObservable() = default;
    PauliObservable(int n_qubits, std::vector<Term> terms);

    /// Parses expressions like "ZZZ", "0.5*ZIX + XIZ" or "ZZ - 0.25*XY".
    /// The qubit count is the word length; all words must agree.
    static PauliObservable parse(const std::string& text);

    int n_terms() const { return static_cast<int>(terms.size()); }

    /// True when every term acts as the identity on every qubit.
    bool identity_only() const;

    std::string to_string() const;
};

}  // namespace dualopt

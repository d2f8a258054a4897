/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/observable.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "dualopt/pauli.hpp"

namespace dualopt {

namespace {

void check_word(const std::string& word, int n_qubits) {
    if (static_cast<int>(word.size()) != n_qubits)
        throw std::invalid_argument("Pauli word '" + word + "' does not have length " +
                                    std::to_string(n_qubits));
    for (char ch : word)
        if (pauli_index(ch) < 0)
            throw std::invalid_argument("Pauli word '" + word + "' contains invalid letter '" +
                                        std::string(1, ch) + "'");
}

std::string format_coeff(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

PauliObservable::PauliObservable(int n, std::vector<Term> input) : n_qubits(n) {
    if (n < 1) throw std::invalid_argument("observable needs at least one qubit");
    if (input.empty()) throw std::invalid_argument("observable needs at least one term");
    std::map<std::string, double> merged;
    for (auto& t : input) {
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("observable coefficient must be finite");
        check_word(t.word, n);
        merged[t.word] += t.coeff;
    }
    terms.reserve(merged.size());
    for (auto& [word, coeff] : merged) terms.push_back({coeff, word});
}

PauliObservable PauliObservable::parse(const std::string& text) {
    std::vector<Term> terms;
    std::size_t pos = 0;
    double sign = 1.0;
    bool expect_term = true;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("empty observable expression");
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        char ch = text[pos];
        if (ch == '+' || ch == '-') {
            if (expect_term && terms.empty() && ch == '-') {
                sign = -sign;  // leading minus
            } else if (expect_term) {
                throw std::invalid_argument("unexpected sign in observable expression");
            } else {
                sign = (ch == '-') ? -1.0 : 1.0;
                expect_term = true;
            }
            ++pos;
            continue;
        }
        if (!expect_term)
            throw std::invalid_argument("expected '+' or '-' before next observable term");
        double coeff = sign;
        // optional numeric prefix, optionally followed by '*'
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t used = 0;
            coeff = sign * std::stod(text.substr(pos), &used);
            pos += used;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        std::size_t start = pos;
        while (pos < text.size() && pauli_index(text[pos]) >= 0) ++pos;
        if (pos == start) throw std::invalid_argument("expected a Pauli word in observable expression");
        terms.push_back({coeff, text.substr(start, pos - start)});
        sign = 1.0;
        expect_term = false;
    }
    if (expect_term && !terms.empty())
        throw std::invalid_argument("dangling sign at end of observable expression");
    if (terms.empty()) throw std::invalid_argument("empty observable expression");
    const int n = static_cast<int>(terms.front().word.size());
    return PauliObservable(n, std::move(terms));
}

bool PauliObservable::identity_only() const {
    for (const auto& t : terms)
        for (char ch : t.word)
            if (ch != 'I') return false;
    return true;
}

std::string PauliObservable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i == 0) {
            if (t.coeff < 0) out += "-";
        } else {
            out += (t.coeff < 0) ? " - " : " + ";
        }
        double mag = std::abs(t.coeff);
        if (mag != 1.0) out += format_coeff(mag) + "*";
        out += t.word;
    }
    return out;
}

}  // namespace dualopt

/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "dualopt/pauli.hpp"

namespace dualopt {

namespace {

void check_sizes(const PauliObservable& obs, const ProductDualSet& duals) {
    if (obs.n_qubits != duals.n_qubits())
        throw std::invalid_argument("observable and dual set qubit counts differ");
}

void check_sizes(const ShotDataset& data, const PauliObservable& obs,
                 const ProductDualSet& duals) {
    check_sizes(obs, duals);
    if (data.n_qubits != obs.n_qubits)
        throw std::invalid_argument("dataset and observable qubit counts differ");
    if (data.n_shots < 1) throw std::invalid_argument("dataset is empty");
}

// Per-term letter indices resolved once; the hot loop is then table lookups.
std::vector<std::vector<int>> term_letters(const PauliObservable& obs) {
    std::vector<std::vector<int>> letters(obs.terms.size());
    for (std::size_t t = 0; t < obs.terms.size(); ++t) {
        letters[t].resize(static_cast<std::size_t>(obs.n_qubits));
        for (int q = 0; q < obs.n_qubits; ++q)
            letters[t][static_cast<std::size_t>(q)] =
                pauli_index(obs.terms[t].word[static_cast<std::size_t>(q)]);
    }
    return letters;
}

double weight_of(const PauliObservable& obs, const ProductDualSet& duals,
                 const std::vector<std::vector<int>>& letters, const std::uint8_t* outcome) {
    double w = 0.0;
    for (std::size_t t = 0; t < obs.terms.size(); ++t) {
        double prod = obs.terms[t].coeff;
        for (int q = 0; q < obs.n_qubits; ++q)
            prod *= duals.qubits[static_cast<std::size_t>(q)]
                        .duals.weights[outcome[q]][static_cast<std::size_t>(letters[t][q])];
        w += prod;
    }
    return w;
}

}  // namespace

double shot_weight(const PauliObservable& obs, const ProductDualSet& duals,
                   const std::uint8_t* outcome) {
    check_sizes(obs, duals);
    const auto letters = term_letters(obs);
    return weight_of(obs, duals, letters, outcome);
}

double mean_estimate(const ShotDataset& data, const PauliObservable& obs,
                     const ProductDualSet& duals) {
    check_sizes(data, obs, duals);
    const auto letters = term_letters(obs);
    double sum = 0.0;
    for (std::int64_t s = 0; s < data.n_shots; ++s)
        sum += weight_of(obs, duals, letters, data.shot(s));
    return sum / static_cast<double>(data.n_shots);
}

double empirical_second_moment(const ShotDataset& data, const PauliObservable& obs,
                               const ProductDualSet& duals) {
    check_sizes(data, obs, duals);
    const auto letters = term_letters(obs);
    double sum = 0.0;
    for (std::int64_t s = 0; s < data.n_shots; ++s) {
        const double w = weight_of(obs, duals, letters, data.shot(s));
        sum += w * w;
    }
    return sum / static_cast<double>(data.n_shots);
}

EstimationReport estimate_with_error(const ShotDataset& data, const PauliObservable& obs,
                                     const ProductDualSet& duals) {
    check_sizes(data, obs, duals);
    if (data.n_shots < 2) throw std::invalid_argument("standard error needs at least 2 shots");
    const auto letters = term_letters(obs);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t s = 0; s < data.n_shots; ++s) {
        const double w = weight_of(obs, duals, letters, data.shot(s));
        sum += w;
        sum_sq += w * w;
    }
    EstimationReport rep;
    rep.n_shots_used = data.n_shots;
    rep.mean = sum / static_cast<double>(data.n_shots);
    rep.second_moment = sum_sq / static_cast<double>(data.n_shots);
    if (rep.second_moment < rep.mean * rep.mean - 1e-9)
        throw std::logic_error("second moment below squared mean; corrupt weights");
    const double var = std::max(0.0, rep.second_moment - rep.mean * rep.mean);
    rep.std_error = std::sqrt(var / static_cast<double>(data.n_shots));
    return rep;
}

namespace {

void check_dist(const OutcomeDistribution& dist, const PauliObservable& obs,
                const ProductDualSet& duals) {
    check_sizes(obs, duals);
    if (dist.n_qubits != obs.n_qubits)
        throw std::invalid_argument("distribution and observable qubit counts differ");
    for (const auto& q : duals.qubits)
        if (q.duals.size() != dist.n_outcomes)
            throw std::invalid_argument("distribution outcome count does not match dual sets");
}

template <typename Fn>
void for_each_outcome(int n_qubits, int r, Fn&& fn) {
    std::vector<std::uint8_t> tuple(static_cast<std::size_t>(n_qubits), 0);
    std::size_t linear = 0;
    while (true) {
        fn(linear, tuple.data());
        ++linear;
        int q = n_qubits - 1;
        while (q >= 0) {
            if (++tuple[static_cast<std::size_t>(q)] < r) break;
            tuple[static_cast<std::size_t>(q)] = 0;
            --q;
        }
        if (q < 0) break;
    }
}

}  // namespace

double exact_mean(const OutcomeDistribution& dist, const PauliObservable& obs,
                  const ProductDualSet& duals) {
    check_dist(dist, obs, duals);
    const auto letters = term_letters(obs);
    double mean = 0.0;
    for_each_outcome(dist.n_qubits, dist.n_outcomes, [&](std::size_t linear, const std::uint8_t* tuple) {
        mean += dist.probs[linear] * weight_of(obs, duals, letters, tuple);
    });
    return mean;
}

double exact_variance(const OutcomeDistribution& dist, const PauliObservable& obs,
                      const ProductDualSet& duals) {
    check_dist(dist, obs, duals);
    const auto letters = term_letters(obs);
    double mean = 0.0;
    double second = 0.0;
    for_each_outcome(dist.n_qubits, dist.n_outcomes, [&](std::size_t linear, const std::uint8_t* tuple) {
        const double w = weight_of(obs, duals, letters, tuple);
        mean += dist.probs[linear] * w;
        second += dist.probs[linear] * w * w;
    });
    return second - mean * mean;
}

namespace {

void check_product(const std::vector<std::vector<double>>& qubit_probs, const PauliObservable& obs,
                   const ProductDualSet& duals) {
    check_sizes(obs, duals);
    if (static_cast<int>(qubit_probs.size()) != obs.n_qubits)
        throw std::invalid_argument("per-qubit probability count does not match observable");
    for (int q = 0; q < obs.n_qubits; ++q)
        if (qubit_probs[static_cast<std::size_t>(q)].size() !=
            static_cast<std::size_t>(duals.qubits[static_cast<std::size_t>(q)].duals.size()))
            throw std::invalid_argument("per-qubit probability vector has wrong length");
}

}  // namespace

double exact_mean_product(const std::vector<std::vector<double>>& qubit_probs,
                          const PauliObservable& obs, const ProductDualSet& duals) {
    check_product(qubit_probs, obs, duals);
    const auto letters = term_letters(obs);
    double mean = 0.0;
    for (std::size_t t = 0; t < obs.terms.size(); ++t) {
        double prod = obs.terms[t].coeff;
        for (int q = 0; q < obs.n_qubits; ++q) {
            const auto& probs = qubit_probs[static_cast<std::size_t>(q)];
            const auto& weights = duals.qubits[static_cast<std::size_t>(q)].duals.weights;
            const int p = letters[t][static_cast<std::size_t>(q)];
            double m = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i)
                m += probs[i] * weights[i][static_cast<std::size_t>(p)];
            prod *= m;
        }
        mean += prod;
    }
    return mean;
}

double exact_variance_product(const std::vector<std::vector<double>>& qubit_probs,
                              const PauliObservable& obs, const ProductDualSet& duals) {
    check_product(qubit_probs, obs, duals);
    const auto letters = term_letters(obs);
    // E[w^2] = sum_{t,u} c_t c_u prod_n sum_i p^(n)_i w_i[t_n] w_i[u_n]
    double second = 0.0;
    for (std::size_t t = 0; t < obs.terms.size(); ++t) {
        for (std::size_t u = 0; u < obs.terms.size(); ++u) {
            double prod = obs.terms[t].coeff * obs.terms[u].coeff;
            for (int q = 0; q < obs.n_qubits; ++q) {
                const auto& probs = qubit_probs[static_cast<std::size_t>(q)];
                const auto& weights = duals.qubits[static_cast<std::size_t>(q)].duals.weights;
                const int a = letters[t][static_cast<std::size_t>(q)];
                const int b = letters[u][static_cast<std::size_t>(q)];
                double m = 0.0;
                for (std::size_t i = 0; i < probs.size(); ++i)
                    m += probs[i] * weights[i][static_cast<std::size_t>(a)] *
                         weights[i][static_cast<std::size_t>(b)];
                prod *= m;
            }
            second += prod;
        }
    }
    const double mean = exact_mean_product(qubit_probs, obs, duals);
    return second - mean * mean;
}

}  // namespace dualopt

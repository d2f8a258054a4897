/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include "dualopt/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dualopt/lbfgs.hpp"
#include "dualopt/pauli.hpp"
#include "dualopt/rng.hpp"

namespace dualopt {

namespace {

constexpr double kDualityTol = 1e-10;
// Suffix-product cache limit, in doubles; beyond this the per-qubit products
// are recomputed instead of cached (same arithmetic order, same results).
constexpr std::int64_t kSuffixCacheCap = 150'000'000;
constexpr std::uint64_t kSplitStreamTag = 0x53504c4954ULL;

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

/// The per-qubit objective in closed quadratic form. With the other qubits
/// fixed, every shot weight is w_s = 2 beta_s . d_{i_s}(theta) where
/// d_i(theta) = base_i + Theta^T kappa_i, so the second moment reduces to
/// per-outcome moment matrices M_i of the beta vectors:
///   obj(Theta)  = 4 sum_i u_i^T M_i u_i,      u_i = base_i + Theta^T kappa_i
///   grad(Theta) = 8 sum_i kappa_i (M_i u_i)^T
struct QubitQuadratic {
    int n_outcomes = 0;
    int n_redundant = 0;
    std::vector<Eigen::Matrix4d> moments;  // (1/S)-scaled scatter of beta per outcome
    std::vector<Eigen::Vector4d> base;
    std::vector<Eigen::VectorXd> kappa;

    double eval(const std::vector<double>& x, std::vector<double>* grad) const {
        const int k = n_redundant;
        if (static_cast<int>(x.size()) != 4 * k)
            throw std::invalid_argument("parameter vector has the wrong length");
        if (grad) grad->assign(static_cast<std::size_t>(4 * k), 0.0);
        double obj = 0.0;
        for (int i = 0; i < n_outcomes; ++i) {
            Eigen::Vector4d u = base[static_cast<std::size_t>(i)];
            const auto& kap = kappa[static_cast<std::size_t>(i)];
            for (int j = 0; j < k; ++j)
                for (int m = 0; m < 4; ++m)
                    u[m] += kap[j] * x[static_cast<std::size_t>(4 * j + m)];
            const Eigen::Vector4d mu = moments[static_cast<std::size_t>(i)] * u;
            obj += 4.0 * u.dot(mu);
            if (grad)
                for (int j = 0; j < k; ++j)
                    for (int m = 0; m < 4; ++m)
                        (*grad)[static_cast<std::size_t>(4 * j + m)] += 8.0 * kap[j] * mu[m];
        }
        return obj;
    }

    Eigen::MatrixXd hessian() const {
        const int dim = 4 * n_redundant;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < n_outcomes; ++i) {
            const auto& kap = kappa[static_cast<std::size_t>(i)];
            const auto& mom = moments[static_cast<std::size_t>(i)];
            for (int j = 0; j < n_redundant; ++j)
                for (int jp = 0; jp < n_redundant; ++jp) {
                    const double kk = 8.0 * kap[j] * kap[jp];
                    if (kk == 0.0) continue;
                    h.block<4, 4>(4 * j, 4 * jp) += kk * mom;
                }
        }
        return h;
    }
};

/// Accumulates the per-outcome moment matrices for one qubit. `prefix` and
/// `suffix` are (shot, term) partial products over the other qubits; null
/// pointers mean "compute directly" (identical multiplication order).
QubitQuadratic build_qubit_quadratic(const ShotDataset& data, const PauliObservable& obs,
                                     const ProductDualSet& duals, int qubit,
                                     const std::vector<std::vector<int>>& letters,
                                     const double* prefix, const double* suffix) {
    const int n = obs.n_qubits;
    const std::size_t n_terms = obs.terms.size();
    const auto& sel = duals.qubits[static_cast<std::size_t>(qubit)].selection;
    const int r = sel.n_outcomes();
    const int k = sel.n_redundant();

    QubitQuadratic quad;
    quad.n_outcomes = r;
    quad.n_redundant = k;
    quad.moments.assign(static_cast<std::size_t>(r), Eigen::Matrix4d::Zero());
    quad.base.assign(static_cast<std::size_t>(r), Eigen::Vector4d::Zero());
    quad.kappa.assign(static_cast<std::size_t>(r), Eigen::VectorXd::Zero(k));
    for (int j = 0; j < k; ++j) {
        quad.kappa[static_cast<std::size_t>(sel.redundant_indices[static_cast<std::size_t>(j)])][j] =
            1.0;
    }
    for (int b = 0; b < 4; ++b) {
        const int i = sel.basis_indices[static_cast<std::size_t>(b)];
        quad.base[static_cast<std::size_t>(i)] =
            Eigen::Vector4d(sel.star_duals[static_cast<std::size_t>(b)].c.data());
        for (int j = 0; j < k; ++j)
            quad.kappa[static_cast<std::size_t>(i)][j] =
                -sel.overlap[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
    }

    std::vector<double> scratch(n_terms);
    Eigen::Vector4d beta;
    for (std::int64_t s = 0; s < data.n_shots; ++s) {
        const std::uint8_t* shot = data.shot(s);
        beta.setZero();
        for (std::size_t t = 0; t < n_terms; ++t) {
            double other;
            if (prefix && suffix) {
                other = prefix[static_cast<std::size_t>(s) * n_terms + t] *
                        suffix[static_cast<std::size_t>(s) * n_terms + t];
            } else {
                double pre = 1.0;
                for (int m = 0; m < qubit; ++m)
                    pre *= duals.qubits[static_cast<std::size_t>(m)]
                               .duals.weights[shot[m]][static_cast<std::size_t>(letters[t][m])];
                double suf = 1.0;
                for (int m = n - 1; m > qubit; --m)
                    suf *= duals.qubits[static_cast<std::size_t>(m)]
                               .duals.weights[shot[m]][static_cast<std::size_t>(letters[t][m])];
                other = pre * suf;
            }
            beta[letters[t][static_cast<std::size_t>(qubit)]] += obs.terms[t].coeff * other;
        }
        quad.moments[shot[qubit]] += beta * beta.transpose();
    }
    const double inv_s = 1.0 / static_cast<double>(data.n_shots);
    for (auto& m : quad.moments) m *= inv_s;
    return quad;
}

/// Minimizes the quadratic from theta0 with the configured inner solver.
/// Returns the new point and its objective; never worse than the start.
std::pair<std::vector<double>, double> minimize_quadratic(const QubitQuadratic& quad,
                                                          std::vector<double> theta0,
                                                          const OptimizerConfig& cfg) {
    const double f0 = quad.eval(theta0, nullptr);
    if (cfg.exact_inner_solve) {
        std::vector<double> grad0;
        quad.eval(theta0, &grad0);
        const int dim = static_cast<int>(theta0.size());
        Eigen::VectorXd g(dim);
        for (int i = 0; i < dim; ++i) g[i] = grad0[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(quad.hessian());
        const auto& vals = eig.eigenvalues();
        const double cutoff = 1e-12 * std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
        Eigen::VectorXd proj = eig.eigenvectors().transpose() * (-g);
        for (int i = 0; i < dim; ++i) proj[i] = (vals[i] > cutoff) ? proj[i] / vals[i] : 0.0;
        const Eigen::VectorXd delta = eig.eigenvectors() * proj;
        std::vector<double> x = theta0;
        for (int i = 0; i < dim; ++i) x[static_cast<std::size_t>(i)] += delta[i];
        const double fx = quad.eval(x, nullptr);
        if (std::isfinite(fx) && fx <= f0) return {std::move(x), fx};
        return {std::move(theta0), f0};
    }
    LbfgsOptions opts;
    opts.max_iters = cfg.max_inner_iters;
    opts.grad_tol = cfg.grad_tol;
    auto res = LbfgsMinimizer::minimize(
        [&quad](const std::vector<double>& x, std::vector<double>& grad) {
            return quad.eval(x, &grad);
        },
        std::move(theta0), opts);
    return {std::move(res.x), res.fx};
}

void check_optimizer_inputs(const ShotDataset& data, const PauliObservable& obs,
                            const ProductDualSet& duals, int qubit) {
    if (obs.n_qubits != duals.n_qubits() || data.n_qubits != obs.n_qubits)
        throw std::invalid_argument("dataset, observable and dual set sizes differ");
    if (qubit < 0 || qubit >= obs.n_qubits) throw std::invalid_argument("qubit index out of range");
    if (data.n_shots < 1) throw std::invalid_argument("dataset is empty");
}

}  // namespace

void OptimizerConfig::validate() const {
    if (n_sweeps < 0) throw std::invalid_argument("sweep count must be nonnegative");
    if (max_inner_iters < 1) throw std::invalid_argument("inner iteration cap must be positive");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("gradient tolerance must be positive");
    if (overfit_patience < 1) throw std::invalid_argument("overfit patience must be positive");
    if (!(overfit_ratio > 1.0)) throw std::invalid_argument("overfit ratio must exceed 1");
}

std::pair<double, std::vector<double>> objective_and_gradient(const ShotDataset& data,
                                                              const PauliObservable& obs,
                                                              const ProductDualSet& duals,
                                                              int qubit) {
    check_optimizer_inputs(data, obs, duals, qubit);
    const auto letters = term_letters(obs);
    const auto quad = build_qubit_quadratic(data, obs, duals, qubit, letters, nullptr, nullptr);
    std::vector<double> grad;
    const double obj =
        quad.eval(duals.qubits[static_cast<std::size_t>(qubit)].params.flatten(), &grad);
    if (!std::isfinite(obj)) throw std::runtime_error("objective is not finite");
    for (double g : grad)
        if (!std::isfinite(g)) throw std::runtime_error("gradient is not finite");
    return {obj, std::move(grad)};
}

ProductDualSet optimize_qubit(const ShotDataset& data, const PauliObservable& obs,
                              const ProductDualSet& duals, int qubit, const OptimizerConfig& cfg) {
    check_optimizer_inputs(data, obs, duals, qubit);
    cfg.validate();
    if (obs.identity_only()) return duals;
    const auto& entry = duals.qubits[static_cast<std::size_t>(qubit)];
    if (entry.selection.n_redundant() == 0) return duals;  // minimal POVM, nothing free

    const auto letters = term_letters(obs);
    const auto quad = build_qubit_quadratic(data, obs, duals, qubit, letters, nullptr, nullptr);
    const auto theta0 = entry.params.flatten();
    const double f0 = quad.eval(theta0, nullptr);
    auto [theta, fx] = minimize_quadratic(quad, theta0, cfg);
    if (!(fx < f0)) return duals;
    ProductDualSet out = duals;
    out.set_params(qubit, QubitDualParams::from_flat(theta));
    if (out.qubits[static_cast<std::size_t>(qubit)].duals.duality_residual(entry.selection.povm) >
        kDualityTol)
        throw std::logic_error("optimizer step broke the duality identity");
    return out;
}

ProductDualSet sweep_optimize(const ShotDataset& train, const ShotDataset& validation,
                              const PauliObservable& obs, const ProductDualSet& init,
                              const OptimizerConfig& cfg, SweepTrace* trace) {
    cfg.validate();
    if (train.n_qubits != validation.n_qubits)
        throw std::invalid_argument("training and validation sets have different qubit counts");
    check_optimizer_inputs(train, obs, init, 0);
    if (validation.n_shots < 1) throw std::invalid_argument("validation set is empty");

    SweepTrace local;
    SweepTrace& tr = trace ? *trace : local;
    tr = SweepTrace{};
    tr.initial_validation = empirical_second_moment(validation, obs, init);

    if (cfg.n_sweeps == 0 || obs.identity_only()) return init;

    const int n = obs.n_qubits;
    const std::size_t n_terms = obs.terms.size();
    const std::int64_t s_train = train.n_shots;
    const auto letters = term_letters(obs);

    ProductDualSet current = init;
    ProductDualSet best = init;
    double best_val = tr.initial_validation;
    int bad_streak = 0;

    const std::int64_t cache_size =
        static_cast<std::int64_t>(n + 1) * s_train * static_cast<std::int64_t>(n_terms);
    const bool use_cache = cache_size <= kSuffixCacheCap;
    std::vector<double> suffix;  // [(qubit)][shot][term], qubit-major, n+1 slabs
    if (use_cache) suffix.resize(static_cast<std::size_t>(cache_size));
    std::vector<double> prefix(static_cast<std::size_t>(s_train) * n_terms);
    std::vector<double> scratch;
    if (!use_cache) scratch.resize(static_cast<std::size_t>(s_train) * n_terms);

    const std::size_t slab = static_cast<std::size_t>(s_train) * n_terms;

    for (int sweep = 1; sweep <= cfg.n_sweeps; ++sweep) {
        if (use_cache) {
            std::fill(suffix.begin() + static_cast<std::ptrdiff_t>(slab * n),
                      suffix.begin() + static_cast<std::ptrdiff_t>(slab * (n + 1)), 1.0);
            for (int q = n - 1; q >= 0; --q) {
                const auto& weights = current.qubits[static_cast<std::size_t>(q)].duals.weights;
                for (std::int64_t s = 0; s < s_train; ++s) {
                    const std::uint8_t o = train.outcome(s, q);
                    for (std::size_t t = 0; t < n_terms; ++t) {
                        const std::size_t idx = static_cast<std::size_t>(s) * n_terms + t;
                        suffix[slab * static_cast<std::size_t>(q) + idx] =
                            suffix[slab * static_cast<std::size_t>(q + 1) + idx] *
                            weights[o][static_cast<std::size_t>(letters[t][q])];
                    }
                }
            }
        }
        std::fill(prefix.begin(), prefix.end(), 1.0);

        double train_obj = 0.0;
        for (int q = 0; q < n; ++q) {
            const double* suffix_q;
            if (use_cache) {
                suffix_q = suffix.data() + slab * static_cast<std::size_t>(q + 1);
            } else {
                // same backward multiplication order as the cached slabs
                std::fill(scratch.begin(), scratch.end(), 1.0);
                for (int m = n - 1; m > q; --m) {
                    const auto& weights = current.qubits[static_cast<std::size_t>(m)].duals.weights;
                    for (std::int64_t s = 0; s < s_train; ++s) {
                        const std::uint8_t o = train.outcome(s, m);
                        for (std::size_t t = 0; t < n_terms; ++t)
                            scratch[static_cast<std::size_t>(s) * n_terms + t] *=
                                weights[o][static_cast<std::size_t>(letters[t][m])];
                    }
                }
                suffix_q = scratch.data();
            }

            const auto quad =
                build_qubit_quadratic(train, obs, current, q, letters, prefix.data(), suffix_q);
            const auto& entry = current.qubits[static_cast<std::size_t>(q)];
            const auto theta0 = entry.params.flatten();
            const double f0 = quad.eval(theta0, nullptr);
            train_obj = f0;
            if (entry.selection.n_redundant() > 0) {
                auto [theta, fx] = minimize_quadratic(quad, theta0, cfg);
                if (fx < f0) {
                    current.set_params(q, QubitDualParams::from_flat(theta));
                    train_obj = fx;
                }
            }
            if (current.qubits[static_cast<std::size_t>(q)].duals.duality_residual(
                    entry.selection.povm) > kDualityTol)
                throw std::logic_error("optimizer sweep broke the duality identity");

            const auto& new_weights = current.qubits[static_cast<std::size_t>(q)].duals.weights;
            for (std::int64_t s = 0; s < s_train; ++s) {
                const std::uint8_t o = train.outcome(s, q);
                for (std::size_t t = 0; t < n_terms; ++t)
                    prefix[static_cast<std::size_t>(s) * n_terms + t] *=
                        new_weights[o][static_cast<std::size_t>(letters[t][q])];
            }
        }

        const double val = empirical_second_moment(validation, obs, current);
        tr.train_objective.push_back(train_obj);
        tr.validation_objective.push_back(val);

        if (val < best_val) {
            best_val = val;
            best = current;
            tr.best_sweep = sweep;
            bad_streak = 0;
        } else if (val > best_val * cfg.overfit_ratio) {
            if (++bad_streak >= cfg.overfit_patience) {
                tr.stopped_early = true;
                break;
            }
        } else {
            bad_streak = 0;
        }
    }
    return best;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> split_shot_indices(
    std::int64_t n_shots, std::uint64_t seed) {
    if (n_shots < 2) throw std::invalid_argument("need at least 2 shots to split");
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n_shots));
    std::iota(perm.begin(), perm.end(), std::int64_t{0});
    const CounterRng rng(seed ^ kSplitStreamTag);
    std::uint64_t counter = 0;
    for (std::int64_t i = n_shots - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(
            rng.below(counter++, static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<std::int64_t> a, b;
    a.reserve(static_cast<std::size_t>((n_shots + 1) / 2));
    b.reserve(static_cast<std::size_t>(n_shots / 2));
    for (std::int64_t pos = 0; pos < n_shots; ++pos)
        ((pos % 2 == 0) ? a : b).push_back(perm[static_cast<std::size_t>(pos)]);
    return {std::move(a), std::move(b)};
}

SplitResult split_estimate(const ShotDataset& data, const PauliObservable& obs,
                           const OptimizerConfig& cfg) {
    cfg.validate();
    if (data.n_shots < 4) throw std::invalid_argument("split estimation needs at least 4 shots");
    if (!data.povm_label.empty() && data.povm_label != "pauli6")
        throw std::invalid_argument("unsupported POVM label '" + data.povm_label + "'");
    const SingleQubitPovm povm = build_pauli6_povm();
    data.validate(povm.size());

    auto [idx_a, idx_b] = split_shot_indices(data.n_shots, cfg.rng_seed);
    {
        // training shots must never enter the estimation half
        std::vector<bool> seen(static_cast<std::size_t>(data.n_shots), false);
        for (std::int64_t i : idx_a) seen[static_cast<std::size_t>(i)] = true;
        for (std::int64_t i : idx_b) {
            if (seen[static_cast<std::size_t>(i)])
                throw std::logic_error("split halves are not disjoint");
            seen[static_cast<std::size_t>(i)] = true;
        }
    }
    const ShotDataset half_a = data.subset(idx_a);
    const ShotDataset half_b = data.subset(idx_b);
    const ProductDualSet canonical = ProductDualSet::canonical(povm, data.n_qubits);

    auto run_direction = [&](const ShotDataset& train, const ShotDataset& estimation,
                             ProductDualSet& trained_out) {
        DirectionReport dir;
        trained_out = sweep_optimize(train, estimation, obs, canonical, cfg, &dir.trace);
        const EstimationReport optimized = estimate_with_error(estimation, obs, trained_out);
        dir.canonical = estimate_with_error(estimation, obs, canonical);
        if (optimized.std_error < dir.canonical.std_error) {
            dir.selection = "optimized";
            dir.estimate = optimized;
        } else {
            dir.selection = "canonical";
            dir.estimate = dir.canonical;
        }
        return dir;
    };

    SplitResult result;
    result.ab = run_direction(half_a, half_b, result.trained_on_a);
    result.ba = run_direction(half_b, half_a, result.trained_on_b);

    result.combined.mean = 0.5 * (result.ab.estimate.mean + result.ba.estimate.mean);
    result.combined.second_moment =
        0.5 * (result.ab.estimate.second_moment + result.ba.estimate.second_moment);
    result.combined.std_error = 0.5 * std::sqrt(result.ab.estimate.std_error *
                                                    result.ab.estimate.std_error +
                                                result.ba.estimate.std_error *
                                                    result.ba.estimate.std_error);
    result.combined.n_shots_used = data.n_shots;
    return result;
}

}  // namespace dualopt

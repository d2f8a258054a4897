/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dualopt {

struct LbfgsOptions {
    int max_iters = 50;
    double grad_tol = 1e-8;  // sup-norm of the gradient
    int history = 8;
};

struct LbfgsResult {
    std::vector<double> x;
    double fx = 0.0;
    int iters = 0;
    bool converged = false;  // gradient tolerance reached
};

/// Limited-memory BFGS with a strong-Wolfe line search (two-loop recursion,
/// Nocedal-Wright style bracket and zoom). The objective callback evaluates
/// f(x) and fills the gradient. Iterates are monotone: a step is taken only
/// if the line search finds sufficient decrease, so the returned point never
/// has a larger objective than the start.
class LbfgsMinimizer {
  public:
    using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

    static LbfgsResult minimize(const Objective& f, std::vector<double> x0,
                                const LbfgsOptions& opts) {
        const std::size_t n = x0.size();
        LbfgsResult res;
        res.x = std::move(x0);
        std::vector<double> grad(n, 0.0);
        res.fx = f(res.x, grad);
        check_finite(res.fx, grad);
        if (sup_norm(grad) < opts.grad_tol) {
            res.converged = true;
            return res;
        }

        std::deque<std::pair<std::vector<double>, std::vector<double>>> pairs;  // (s, y)
        std::vector<double> dir(n), x_new(n), grad_new(n);

        for (int iter = 0; iter < opts.max_iters; ++iter) {
            two_loop_direction(grad, pairs, dir);
            double dg = dot(dir, grad);
            if (dg >= 0.0) {  // not a descent direction; restart from steepest descent
                for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
                dg = dot(dir, grad);
                pairs.clear();
            }

            double step = (iter == 0 && pairs.empty())
                              ? std::min(1.0, 1.0 / std::max(1e-12, sup_norm(grad)))
                              : 1.0;
            double f_new = res.fx;
            if (!wolfe_line_search(f, res.x, res.fx, grad, dir, dg, step, x_new, grad_new, f_new))
                break;  // no acceptable decrease; stop at the current iterate

            // curvature pair
            std::vector<double> s(n), y(n);
            for (std::size_t i = 0; i < n; ++i) {
                s[i] = x_new[i] - res.x[i];
                y[i] = grad_new[i] - grad[i];
            }
            if (dot(s, y) > 1e-12 * norm(s) * norm(y)) {
                pairs.emplace_back(std::move(s), std::move(y));
                if (static_cast<int>(pairs.size()) > opts.history) pairs.pop_front();
            }

            res.x = x_new;
            res.fx = f_new;
            grad = grad_new;
            res.iters = iter + 1;
            if (sup_norm(grad) < opts.grad_tol) {
                res.converged = true;
                break;
            }
        }
        return res;
    }

  private:
    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
    static double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
    static double sup_norm(const std::vector<double>& a) {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }
    static void check_finite(double fx, const std::vector<double>& grad) {
        if (!std::isfinite(fx)) throw std::runtime_error("objective is not finite");
        for (double v : grad)
            if (!std::isfinite(v)) throw std::runtime_error("gradient is not finite");
    }

    static void two_loop_direction(
        const std::vector<double>& grad,
        const std::deque<std::pair<std::vector<double>, std::vector<double>>>& pairs,
        std::vector<double>& dir) {
        dir.assign(grad.size(), 0.0);
        for (std::size_t i = 0; i < grad.size(); ++i) dir[i] = -grad[i];
        if (pairs.empty()) return;
        std::vector<double> alpha(pairs.size());
        for (std::size_t k = pairs.size(); k-- > 0;) {
            const auto& [s, y] = pairs[k];
            const double rho = 1.0 / dot(y, s);
            alpha[k] = rho * dot(s, dir);
            for (std::size_t i = 0; i < dir.size(); ++i) dir[i] -= alpha[k] * y[i];
        }
        const auto& [s_last, y_last] = pairs.back();
        const double gamma = dot(s_last, y_last) / dot(y_last, y_last);
        for (double& v : dir) v *= gamma;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& [s, y] = pairs[k];
            const double rho = 1.0 / dot(y, s);
            const double beta = rho * dot(y, dir);
            for (std::size_t i = 0; i < dir.size(); ++i) dir[i] += (alpha[k] - beta) * s[i];
        }
    }

    /// Strong-Wolfe search along dir from x. On success fills x_new/grad_new/
    /// f_new and returns true. c1 = 1e-4, c2 = 0.9.
    static bool wolfe_line_search(const Objective& f, const std::vector<double>& x, double fx,
                                  const std::vector<double>& grad, const std::vector<double>& dir,
                                  double dg0, double step, std::vector<double>& x_new,
                                  std::vector<double>& grad_new, double& f_new) {
        constexpr double c1 = 1e-4;
        constexpr double c2 = 0.9;
        constexpr int max_ls = 30;

        auto eval = [&](double t, double& df) {
            for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + t * dir[i];
            const double ft = f(x_new, grad_new);
            check_finite(ft, grad_new);
            df = dot(grad_new, dir);
            return ft;
        };

        double t_prev = 0.0, f_prev = fx, df_prev = dg0;
        double t = step;
        for (int i = 0; i < max_ls; ++i) {
            double df = 0.0;
            const double ft = eval(t, df);
            if (ft > fx + c1 * t * dg0 || (i > 0 && ft >= f_prev))
                return zoom(f, x, fx, dg0, dir, t_prev, f_prev, df_prev, t, ft, df, c1, c2, x_new,
                            grad_new, f_new);
            if (std::abs(df) <= -c2 * dg0) {
                f_new = ft;
                return true;
            }
            if (df >= 0.0)
                return zoom(f, x, fx, dg0, dir, t, ft, df, t_prev, f_prev, df_prev, c1, c2, x_new,
                            grad_new, f_new);
            t_prev = t;
            f_prev = ft;
            df_prev = df;
            t *= 2.0;
        }
        return false;
    }

    static bool zoom(const Objective& f, const std::vector<double>& x, double fx, double dg0,
                     const std::vector<double>& dir, double lo, double f_lo, double df_lo,
                     double hi, double f_hi, double df_hi, double c1, double c2,
                     std::vector<double>& x_new, std::vector<double>& grad_new, double& f_new) {
        (void)df_hi;
        constexpr int max_zoom = 30;
        auto eval = [&](double t, double& df) {
            for (std::size_t i = 0; i < x.size(); ++i) x_new[i] = x[i] + t * dir[i];
            const double ft = f(x_new, grad_new);
            check_finite(ft, grad_new);
            df = dot(grad_new, dir);
            return ft;
        };
        for (int i = 0; i < max_zoom; ++i) {
            const double t = 0.5 * (lo + hi);
            double df = 0.0;
            const double ft = eval(t, df);
            if (ft > fx + c1 * t * dg0 || ft >= f_lo) {
                hi = t;
                f_hi = ft;
            } else {
                if (std::abs(df) <= -c2 * dg0) {
                    f_new = ft;
                    return true;
                }
                if (df * (hi - lo) >= 0.0) {
                    hi = lo;
                    f_hi = f_lo;
                }
                lo = t;
                f_lo = ft;
                df_lo = df;
            }
            if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) break;
        }
        // fall back to the best sufficient-decrease point found, if any
        if (f_lo < fx + c1 * lo * dg0 && lo > 0.0) {
            double df = 0.0;
            f_new = eval(lo, df);
            return true;
        }
        return false;
    }
};

}  // namespace dualopt

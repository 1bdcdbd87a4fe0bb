#pragma once

// Minimization of positive exponential sums f(t) = sum_k w_k exp(<a_k, t>).
//
// Substituting x = exp(t) turns an inventory (a posynomial with positive
// coefficients) into such a sum, which is convex in t. Both solvers work with
// F = log f, whose gradient is the w-weighted mean of the exponent vectors
// under the tilt exp(<a,t>) and whose Hessian is the corresponding covariance.
// Every evaluation is shifted by the largest exponent, so no overflow occurs
// for any finite t.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "walkgrowth/errors.hpp"

namespace walkgrowth::logconvex {

struct Term1D {
  double exponent;
  double weight;
};

struct Eval1D {
  double log_value;  // log f(t)
  double slope;      // F'(t): tilted mean exponent
  double curvature;  // F''(t): tilted variance
};

inline Eval1D evaluate(std::span<const Term1D> terms, double t) {
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms) shift = std::max(shift, term.exponent * t);
  double sum = 0.0, first = 0.0;
  for (const auto& term : terms) {
    const double w = term.weight * std::exp(term.exponent * t - shift);
    sum += w;
    first += w * term.exponent;
  }
  const double mean = first / sum;
  double second = 0.0;
  for (const auto& term : terms) {
    const double w = term.weight * std::exp(term.exponent * t - shift);
    second += w * (term.exponent - mean) * (term.exponent - mean);
  }
  return {shift + std::log(sum), mean, second / sum};
}

/// f(t) itself, accurate to a few ulps for moderate values.
inline double value(std::span<const Term1D> terms, double t) {
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms) shift = std::max(shift, term.exponent * t);
  double sum = 0.0;
  for (const auto& term : terms) sum += term.weight * std::exp(term.exponent * t - shift);
  return std::exp(shift) * sum;
}

struct Minimum1D {
  double t;
  double slope;  // F'(t) at the returned point
  int iterations;
};

/// Unique minimizer of a one-dimensional exponential sum with exponents of both signs.
///
/// Newton's method on F' with a bisection fallback whenever the Newton step leaves
/// the current sign-change bracket. The bracket is seeded from the sign of F'(0),
/// which is the sign of the drift, and expanded geometrically.
inline Minimum1D minimize_1d(std::span<const Term1D> terms, double rel_tol = 1e-12, int max_iter = 200) {
  double amax = 0.0;
  bool pos = false, neg = false;
  for (const auto& term : terms) {
    if (term.weight <= 0.0) continue;
    amax = std::max(amax, std::abs(term.exponent));
    pos |= term.exponent > 0.0;
    neg |= term.exponent < 0.0;
  }
  if (!pos || !neg) throw no_critical_point("exponent multiset has no strictly positive or no strictly negative value");

  const double tol = rel_tol * amax;
  auto e0 = evaluate(terms, 0.0);
  if (e0.slope == 0.0) return {0.0, 0.0, 0};

  double lo, hi;
  int iterations = 0;
  const double dir = e0.slope < 0.0 ? 1.0 : -1.0;
  double far = dir / amax;
  while (true) {
    auto e = evaluate(terms, far);
    if (dir * e.slope > 0.0) break;
    far *= 2.0;
    if (++iterations > max_iter || std::abs(far) > 1e300) throw convergence_error("could not bracket the critical point");
  }
  lo = std::min(0.0, far);
  hi = std::max(0.0, far);

  double t = 0.0;
  Eval1D e = e0;
  for (; iterations < max_iter; ++iterations) {
    if (std::abs(e.slope) <= 0.25 * std::numeric_limits<double>::epsilon() * amax) break;
    if (e.slope < 0.0)
      lo = t;
    else
      hi = t;
    double next = e.curvature > 0.0 ? t - e.slope / e.curvature : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t || hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
    t = next;
    e = evaluate(terms, t);
  }
  if (std::abs(e.slope) > tol)
    throw convergence_error("one-dimensional solver did not reach relative slope " + std::to_string(rel_tol));
  return {t, e.slope, iterations};
}

// ---------------------------------------------------------------------------
// Several variables
// ---------------------------------------------------------------------------

struct Options {
  double gradient_tol = 1e-12;  // on |grad F|_inf, i.e. relative to f
  double step_tol = 1e-7;       // Newton step must also be this short
  double escape_norm = 60.0;    // |t|_2 beyond this certifies an infimum at the boundary
  double curvature_tol = 1e-9;  // smallest Hessian eigenvalue relative to its trace
  int max_iter = 200;
};

struct Minimum {
  Eigen::VectorXd t;
  double log_value = 0.0;
  double gradient_norm = 0.0;  // |grad F|_inf at t
  bool converged = false;
  bool escaped = false;  // iterate left the ball of radius escape_norm
  int iterations = 0;
};

/// Minimize sum_k w_k exp(<a_k, t>) for exponent rows a_k (one per row of `exponents`).
///
/// Damped Newton on F = log f: the step solves (H + mu I) s = -g with mu = 1e-3 |g|,
/// which reduces to Newton near a minimizer but keeps steps of order one along
/// directions where the tilted distribution has collapsed onto a face. An Armijo
/// backtracking search keeps every step a descent step. A run is declared
/// converged only when both the gradient and the undamped-length Newton step are
/// small, so slow drifts toward the boundary of the positive orthant (where the
/// curvature vanishes and the step grows) are not mistaken for minima.
inline Minimum minimize(const Eigen::MatrixXd& exponents, const Eigen::VectorXd& weights,
                        const Options& opt = {}) {
  const Eigen::Index n = exponents.rows();
  const Eigen::Index d = exponents.cols();

  auto eval = [&](const Eigen::VectorXd& t, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) {
    Eigen::VectorXd lin = exponents * t;
    const double shift = lin.maxCoeff();
    Eigen::VectorXd w = (weights.array() * (lin.array() - shift).exp()).matrix();
    const double sum = w.sum();
    if (grad || hess) {
      w /= sum;
      Eigen::VectorXd mean = exponents.transpose() * w;
      if (grad) *grad = mean;
      if (hess) {
        Eigen::MatrixXd centered = exponents.rowwise() - mean.transpose();
        *hess = centered.transpose() * w.asDiagonal() * centered;
      }
    }
    return shift + std::log(sum);
  };

  // Near a face of the orthant the tilted distribution collapses onto a lower-dimensional
  // set: the gradient can round to zero while the curvature vanishes in some direction.
  auto nondegenerate = [&](const Eigen::MatrixXd& hess) {
    const double trace = hess.trace();
    if (!(trace > 0.0)) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= opt.curvature_tol * trace;
  };

  Minimum out;
  out.t = Eigen::VectorXd::Zero(d);
  if (n == 0) return out;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
  double fval = eval(out.t, &g, &h);
  for (out.iterations = 0; out.iterations < opt.max_iter; ++out.iterations) {
    const double gnorm = g.lpNorm<Eigen::Infinity>();
    if (gnorm == 0.0) {
      out.converged = nondegenerate(h);
      break;
    }
    const double mu = 1e-3 * g.norm();
    Eigen::MatrixXd damped = h + mu * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd step = damped.ldlt().solve(-g);
    if (!step.allFinite()) step = -g;

    const double slope = g.dot(step);
    double alpha = 1.0;
    Eigen::VectorXd trial;
    double ftrial = fval;
    while (true) {
      trial = out.t + alpha * step;
      ftrial = eval(trial, nullptr, nullptr);
      if (ftrial <= fval + 1e-4 * alpha * slope || alpha < 1e-12) break;
      alpha *= 0.5;
    }
    const double full_step = step.norm();
    out.t = trial;
    fval = eval(out.t, &g, &h);
    if (out.t.norm() > opt.escape_norm) {
      out.escaped = true;
      break;
    }
    if (g.lpNorm<Eigen::Infinity>() <= opt.gradient_tol && full_step <= opt.step_tol) {
      out.converged = nondegenerate(h);
      break;
    }
  }
  out.log_value = fval;
  out.gradient_norm = g.lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace walkgrowth::logconvex

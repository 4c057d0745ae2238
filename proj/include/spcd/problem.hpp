#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace spcd {

/// Scalar coefficient or source term sampled pointwise on [0, 1].
using ScalarFn = std::function<double(double)>;

/**
 * @brief Two-point boundary value problem
 *
 *   -epsilon * u'' + a(x) * u' = f(x)   on (0, 1),
 *   u(0) = u_left,  u(1) = u_right,
 *
 * with 0 < epsilon <= 1 and a convection coefficient bounded below by
 * alpha > 0. The lower bound is what pushes the boundary layer to x = 1 and
 * is spot-checked at construction; assembly re-checks it at every mesh node.
 */
class Problem {
public:
  Problem(double epsilon, ScalarFn coeff_a, double alpha, ScalarFn source_f,
          double u_left = 0.0, double u_right = 0.0)
      : epsilon_(epsilon),
        alpha_(alpha),
        coeff_a_(std::move(coeff_a)),
        source_f_(std::move(source_f)),
        u_left_(u_left),
        u_right_(u_right) {
    if (!(epsilon_ > 0.0) || epsilon_ > 1.0)
      throw std::invalid_argument("Problem: epsilon must lie in (0, 1]");
    if (!(alpha_ > 0.0))
      throw std::invalid_argument("Problem: alpha must be positive");
    if (!coeff_a_ || !source_f_)
      throw std::invalid_argument("Problem: coefficient callbacks must be set");
    for (int i = 0; i <= 32; ++i) {
      const double x = static_cast<double>(i) / 32.0;
      if (!(coeff_a_(x) >= alpha_))
        throw std::invalid_argument(
            "Problem: coeff_a(x) < alpha at a sampled point");
    }
  }

  /// Constant-convection model problem: a == 1, f(x) = x, zero boundary data.
  static Problem model(double epsilon, double alpha = 1.0) {
    return Problem(
        epsilon, [](double) { return 1.0; }, alpha, [](double x) { return x; });
  }

  double epsilon() const { return epsilon_; }
  double alpha() const { return alpha_; }
  double coeff_a(double x) const { return coeff_a_(x); }
  double source_f(double x) const { return source_f_(x); }
  double u_left() const { return u_left_; }
  double u_right() const { return u_right_; }

private:
  double epsilon_;
  double alpha_;
  ScalarFn coeff_a_;
  ScalarFn source_f_;
  double u_left_;
  double u_right_;
};

/**
 * @brief Closed-form solution of the model problem (a == 1, f(x) = x, zero
 *        boundary values):
 *
 *   u(x) = x*(x/2 + eps) - (1/2 + eps) * (e^{(x-1)/eps} - e^{-1/eps})
 *                                      / (1 - e^{-1/eps}).
 *
 * Every exponent is <= 0, so evaluation cannot overflow however small eps
 * gets; away from x = 1 the layer factor underflows to zero, which is the
 * correct limit. At x = 0 and x = 1 the two terms cancel exactly in floating
 * point, so the boundary values come out as exact zeros.
 */
class ExactSolution {
public:
  /// Throws std::invalid_argument when the problem is not the model problem.
  explicit ExactSolution(const Problem& problem) : epsilon_(problem.epsilon()) {
    if (!is_model_problem(problem))
      throw std::invalid_argument(
          "ExactSolution: closed form needs a == 1, f(x) = x, zero boundaries");
  }

  /// Non-throwing variant: empty when no closed form applies.
  static std::optional<ExactSolution> try_create(const Problem& problem) {
    if (!is_model_problem(problem)) return std::nullopt;
    return ExactSolution(problem.epsilon(), PrivateTag{});
  }

  double epsilon() const { return epsilon_; }

  double operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0))
      throw std::domain_error("ExactSolution: x outside [0, 1]");
    const double layer = std::exp((x - 1.0) / epsilon_);
    const double foot = std::exp(-1.0 / epsilon_);
    return x * (0.5 * x + epsilon_) -
           (0.5 + epsilon_) * ((layer - foot) / (1.0 - foot));
  }

private:
  struct PrivateTag {};
  ExactSolution(double epsilon, PrivateTag) : epsilon_(epsilon) {}

  static bool is_model_problem(const Problem& p) {
    if (p.u_left() != 0.0 || p.u_right() != 0.0) return false;
    for (int i = 0; i <= 16; ++i) {
      const double x = static_cast<double>(i) / 16.0;
      if (std::abs(p.coeff_a(x) - 1.0) > 1e-12) return false;
      if (std::abs(p.source_f(x) - x) > 1e-12) return false;
    }
    return true;
  }

  double epsilon_;
};

/// Solution x^2/2 of the reduced problem u' = x, u(0) = 0 obtained by setting
/// eps = 0 and dropping the outflow condition. Matches the full solution away
/// from the layer but misses u(1) = 0: the limits x -> 1 and eps -> 0 do not
/// commute.
inline double reduced_solution(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("reduced_solution: x outside [0, 1]");
  return 0.5 * x * x;
}

/// Envelope C * eps^{-j} * exp(-alpha * (1 - x) / eps) bounding the j-th
/// derivative of the layer component of the solution.
inline double layer_envelope(double x, double epsilon, double alpha,
                             unsigned deriv_order, double c_const) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("layer_envelope: x outside [0, 1]");
  if (!(epsilon > 0.0) || !(alpha > 0.0) || !(c_const > 0.0))
    throw std::domain_error("layer_envelope: epsilon, alpha, C must be positive");
  return c_const * std::pow(epsilon, -static_cast<double>(deriv_order)) *
         std::exp(-alpha * (1.0 - x) / epsilon);
}

}  // namespace spcd

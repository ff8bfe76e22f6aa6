#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace gainprophet {

// ---------------------------------------------------------------------------
// Delta-average next-gain predictor
// ---------------------------------------------------------------------------

/// Absolute year-over-year differences |g[i+1] - g[i]|. Needs >= 2 gains.
std::vector<double> delta_gaps(std::span<const double> gains);

/// Mean of delta_gaps, summed left to right. Needs >= 2 gains.
double delta_avg(std::span<const double> gains);

enum class StepPolicy {
  /// Step up when the last gain is below the average gap, otherwise step down.
  /// A tie steps down.
  PaperLiteral,
  /// Step in the direction of the last raw difference; a flat last step goes up.
  Trend,
};

struct DeltaReport {
  std::vector<double> gaps;
  double delta_avg = 0.0;
  double predicted_gain = 0.0;
  /// Largest observed gain and the first position holding it.
  double optimum_gain = 0.0;
  std::size_t optimum_index = 0;
  /// predicted_gain - optimum_gain; the factor by which the driving
  /// parameters would have to be rescaled.
  double normalization_factor = 0.0;
};

/// Needs >= 2 gains for PaperLiteral and >= 3 for Trend.
DeltaReport predict_next(std::span<const double> gains, StepPolicy policy);

// ---------------------------------------------------------------------------
// Maximum-likelihood expected gain
// ---------------------------------------------------------------------------

/// Gaussian observations with known spread; the parameter is the location.
struct NormalLocation {
  double sigma = 1.0;
};

/// Exponential observations; the parameter is the (positive) mean.
struct ExponentialMean {};

/// d/dtheta log f(observation, theta). Must be free of side effects.
struct CustomScore {
  std::function<double(double observation, double parameter)> score;
};

using LikelihoodFamily = std::variant<NormalLocation, ExponentialMean, CustomScore>;

struct ScoreProblem {
  std::vector<double> observations;
  LikelihoodFamily family;
  double lo = 0.0;
  double hi = 0.0;
};

/// Summed score S(theta) = sum_i d/dtheta log f(g_i, theta).
/// Throws DomainError on a non-finite evaluation.
double score_sum(const ScoreProblem& problem, double parameter);

/// Root of the summed score by bisection over [lo, hi], stopping once the
/// bracket is narrower than `tol`. A non-positive `tol` bisects until the
/// bracket spans adjacent doubles. Throws NoRootError when S has the same
/// strict sign at both ends.
double mle_expected_gain(const ScoreProblem& problem, double tol = 0.0);

// ---------------------------------------------------------------------------
// Autoregressive and moving-average forecasts
// ---------------------------------------------------------------------------

/// coefficients[j] multiplies the value j steps back from the newest one
/// (coefficients[0] pairs with the most recent observation).
struct ARModel {
  double intercept = 0.0;
  std::vector<double> coefficients;
};

/// coefficients[j] multiplies the shock j steps back from the newest one.
/// The number of past shocks used is q = coefficients.size() - 1.
struct MAModel {
  std::vector<double> coefficients;

  std::size_t q() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// intercept + c[0]*h[n-1] + c[1]*h[n-2] + ... + shock, accumulated in that order.
double ar_forecast(const ARModel& model, std::span<const double> history, double shock = 0.0);

/// next_shock + t[0]*a[n-1] + t[1]*a[n-2] + ..., accumulated in that order.
double ma_forecast(const MAModel& model, std::span<const double> shocks, double next_shock = 0.0);

struct ARFit {
  ARModel model;
  /// Set when the lagged design is rank deficient. A constant series yields
  /// intercept = that constant and all-zero coefficients.
  bool degenerate = false;
  /// Residual sum of squares of the one-step-ahead fit.
  double rss = 0.0;
};

/// Ordinary least squares on one-step-ahead errors with an intercept.
/// Needs at least 2*order + 1 gains.
ARFit fit_ar_least_squares(std::span<const double> gains, std::size_t order);

}  // namespace gainprophet

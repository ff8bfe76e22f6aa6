#include "gainprophet/predictors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "gainprophet/errors.hpp"

namespace gainprophet {

namespace {

void require_size(std::size_t have, std::size_t need, const char* what) {
  if (have < need) {
    throw SizeError(std::string(what) + " needs at least " + std::to_string(need) +
                    " values, got " + std::to_string(have));
  }
}

}  // namespace

std::vector<double> delta_gaps(std::span<const double> gains) {
  require_size(gains.size(), 2, "delta_gaps");
  std::vector<double> gaps;
  gaps.reserve(gains.size() - 1);
  for (std::size_t i = 0; i + 1 < gains.size(); ++i) {
    gaps.push_back(std::abs(gains[i + 1] - gains[i]));
  }
  return gaps;
}

double delta_avg(std::span<const double> gains) {
  const auto gaps = delta_gaps(gains);
  double sum = 0.0;
  for (double g : gaps) sum += g;
  return sum / static_cast<double>(gaps.size());
}

DeltaReport predict_next(std::span<const double> gains, StepPolicy policy) {
  require_size(gains.size(), policy == StepPolicy::Trend ? 3 : 2, "predict_next");

  DeltaReport r;
  r.gaps = delta_gaps(gains);
  double sum = 0.0;
  for (double g : r.gaps) sum += g;
  r.delta_avg = sum / static_cast<double>(r.gaps.size());

  const auto best = std::max_element(gains.begin(), gains.end());
  r.optimum_index = static_cast<std::size_t>(best - gains.begin());
  r.optimum_gain = *best;

  const double last = gains.back();
  bool step_up = false;
  switch (policy) {
    case StepPolicy::PaperLiteral:
      step_up = last < r.delta_avg;
      break;
    case StepPolicy::Trend:
      step_up = gains[gains.size() - 1] - gains[gains.size() - 2] >= 0.0;
      break;
  }
  r.predicted_gain = step_up ? last + r.delta_avg : last - r.delta_avg;
  r.normalization_factor = r.predicted_gain - r.optimum_gain;
  return r;
}

double score_sum(const ScoreProblem& problem, double parameter) {
  double total = 0.0;
  std::visit(
      [&](const auto& family) {
        using T = std::decay_t<decltype(family)>;
        for (double g : problem.observations) {
          if constexpr (std::is_same_v<T, NormalLocation>) {
            total += (g - parameter) / (family.sigma * family.sigma);
          } else if constexpr (std::is_same_v<T, ExponentialMean>) {
            if (parameter <= 0.0) {
              throw DomainError("exponential mean must be positive, got " +
                                std::to_string(parameter));
            }
            total += -1.0 / parameter + g / (parameter * parameter);
          } else {
            total += family.score(g, parameter);
          }
        }
      },
      problem.family);
  if (!std::isfinite(total)) {
    throw DomainError("score is not finite at " + std::to_string(parameter));
  }
  return total;
}

double mle_expected_gain(const ScoreProblem& problem, double tol) {
  if (problem.observations.empty()) {
    throw SizeError("maximum-likelihood estimate needs at least one observation");
  }
  if (!(problem.lo < problem.hi)) {
    throw ValidationError("bracket must satisfy lo < hi");
  }
  if (const auto* normal = std::get_if<NormalLocation>(&problem.family);
      normal && !(normal->sigma > 0.0)) {
    throw ValidationError("sigma must be positive");
  }
  if (const auto* custom = std::get_if<CustomScore>(&problem.family); custom && !custom->score) {
    throw ValidationError("custom family has no score function");
  }

  double lo = problem.lo;
  double hi = problem.hi;
  // Without an explicit tolerance, bisect down to adjacent doubles; that is
  // always narrower than 1e-12 of the starting bracket.
  if (!(tol > 0.0)) tol = 0.0;

  const double s_lo = score_sum(problem, lo);
  if (s_lo == 0.0) return lo;
  const double s_hi = score_sum(problem, hi);
  if (s_hi == 0.0) return hi;
  if ((s_lo > 0.0) == (s_hi > 0.0)) {
    throw NoRootError("score has the same sign at both ends of [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }

  const bool lo_positive = s_lo > 0.0;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket is down to adjacent doubles
    const double s_mid = score_sum(problem, mid);
    if (s_mid == 0.0) return mid;
    if ((s_mid > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

double ar_forecast(const ARModel& model, std::span<const double> history, double shock) {
  if (model.coefficients.empty()) {
    throw ValidationError("autoregressive model needs at least one coefficient");
  }
  require_size(history.size(), model.coefficients.size(), "ar_forecast history");
  const std::size_t n = history.size();
  double acc = model.intercept;
  for (std::size_t j = 0; j < model.coefficients.size(); ++j) {
    acc += model.coefficients[j] * history[n - 1 - j];
  }
  return acc + shock;
}

double ma_forecast(const MAModel& model, std::span<const double> shocks, double next_shock) {
  if (model.coefficients.empty()) {
    throw ValidationError("moving-average model needs at least one coefficient");
  }
  require_size(shocks.size(), model.q() + 1, "ma_forecast shocks");
  const std::size_t n = shocks.size();
  double acc = next_shock;
  for (std::size_t j = 0; j < model.coefficients.size(); ++j) {
    acc += model.coefficients[j] * shocks[n - 1 - j];
  }
  return acc;
}

ARFit fit_ar_least_squares(std::span<const double> gains, std::size_t order) {
  if (order == 0) {
    throw ValidationError("autoregressive order must be positive");
  }
  require_size(gains.size(), 2 * order + 1, "fit_ar_least_squares");

  ARFit fit;
  fit.model.coefficients.assign(order, 0.0);

  const bool constant =
      std::all_of(gains.begin(), gains.end(), [&](double g) { return g == gains.front(); });
  if (constant) {
    fit.model.intercept = gains.front();
    fit.degenerate = true;
    return fit;
  }

  const auto rows = static_cast<Eigen::Index>(gains.size() - order);
  const auto cols = static_cast<Eigen::Index>(order + 1);
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = order + static_cast<std::size_t>(r);
    design(r, 0) = 1.0;
    for (std::size_t j = 0; j < order; ++j) {
      design(r, static_cast<Eigen::Index>(j + 1)) = gains[t - 1 - j];
    }
    target(r) = gains[t];
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  const Eigen::VectorXd beta = cod.solve(target);
  fit.degenerate = cod.rank() < cols;
  fit.model.intercept = beta(0);
  for (std::size_t j = 0; j < order; ++j) {
    fit.model.coefficients[j] = beta(static_cast<Eigen::Index>(j + 1));
  }
  fit.rss = (design * beta - target).squaredNorm();
  return fit;
}

}  // namespace gainprophet

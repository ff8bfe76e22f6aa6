#include "gainprophet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gainprophet/errors.hpp"

namespace gainprophet {

namespace {

void require_nonempty(std::span<const double> values, const char* what) {
  if (values.empty()) throw SizeError(std::string(what) + " needs at least one value");
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
  }
}

// Validates a probability vector and rescales it to unit mass.
void normalize_mass(std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("probability " + std::to_string(p) + " is outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
  if (total != 1.0) {
    for (double& p : probs) p /= total;
  }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> outcomes,
                                           std::vector<double> probabilities)
    : outcomes_(std::move(outcomes)), probabilities_(std::move(probabilities)) {
  if (outcomes_.size() != probabilities_.size()) {
    throw ValidationError("outcome and probability counts differ");
  }
  require_nonempty(outcomes_, "distribution");
  require_finite(outcomes_, "outcomes");
  normalize_mass(probabilities_);
}

JointDistribution::JointDistribution(std::vector<double> g_outcomes,
                                     std::vector<double> q_outcomes, std::vector<double> pmf)
    : g_(std::move(g_outcomes)), q_(std::move(q_outcomes)), pmf_(std::move(pmf)) {
  require_nonempty(g_, "joint distribution");
  require_nonempty(q_, "joint distribution");
  if (pmf_.size() != g_.size() * q_.size()) {
    throw ValidationError("joint pmf has " + std::to_string(pmf_.size()) + " cells, expected " +
                          std::to_string(g_.size() * q_.size()));
  }
  require_finite(g_, "outcomes");
  require_finite(q_, "outcomes");
  normalize_mass(pmf_);
}

double expectation(const DiscreteDistribution& dist) {
  const auto g = dist.outcomes();
  const auto p = dist.probabilities();
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) e += g[i] * p[i];
  return e;
}

JointExpectation joint_expectation_sum(const JointDistribution& joint) {
  const auto g = joint.g_outcomes();
  const auto q = joint.q_outcomes();
  JointExpectation out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out.e_sum += (g[i] + q[j]) * joint.p(i, j);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) row += joint.p(i, j);
    out.e_g += g[i] * row;
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) col += joint.p(i, j);
    out.e_q += q[j] * col;
  }
  return out;
}

double arithmetic_mean(std::span<const double> values) {
  require_nonempty(values, "mean");
  const double base = values.front();
  double shift = 0.0;
  for (double v : values) shift += v - base;
  return base + shift / static_cast<double>(values.size());
}

double geometric_mean(std::span<const double> values) {
  require_nonempty(values, "geometric mean");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("geometric mean needs strictly positive values, got " +
                        std::to_string(v));
    }
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double harmonic_mean(std::span<const double> values) {
  require_nonempty(values, "harmonic mean");
  double inv_sum = 0.0;
  for (double v : values) {
    if (v == 0.0) throw DomainError("harmonic mean is undefined for a zero value");
    inv_sum += 1.0 / v;
  }
  if (inv_sum == 0.0) throw DomainError("reciprocals sum to zero");
  return static_cast<double>(values.size()) / inv_sum;
}

MidpointCheck exponential_midpoint_check(double m, double n, double a1, double a2) {
  if (!(m > 0.0) || !(n > 0.0)) {
    throw DomainError("exponential growth needs m > 0 and n > 0");
  }
  MidpointCheck c;
  c.lhs = m * std::pow(n, (a1 + a2) / 2.0);
  c.rhs = std::sqrt((m * std::pow(n, a1)) * (m * std::pow(n, a2)));
  c.holds = std::abs(c.lhs - c.rhs) <= 1e-9 * std::max(1.0, std::abs(c.lhs));
  return c;
}

double mean_deviation(std::span<const double> values, double center) {
  require_nonempty(values, "mean deviation");
  double sum = 0.0;
  for (double v : values) sum += std::abs(v - center);
  return sum / static_cast<double>(values.size());
}

double mean_deviation_about_mean(std::span<const double> values) {
  return mean_deviation(values, arithmetic_mean(values));
}

}  // namespace gainprophet

#pragma once

#include <span>
#include <vector>

namespace gainprophet {

/// Total probability mass may differ from 1 by at most this much; within it
/// the probabilities are rescaled to sum to 1.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Finite discrete distribution over gain outcomes.
class DiscreteDistribution {
 public:
  /// Throws ValidationError on mismatched lengths, probabilities outside
  /// [0, 1], non-finite outcomes, or total mass off by more than the tolerance.
  DiscreteDistribution(std::vector<double> outcomes, std::vector<double> probabilities);

  std::span<const double> outcomes() const noexcept { return outcomes_; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }

 private:
  std::vector<double> outcomes_;
  std::vector<double> probabilities_;
};

/// Joint pmf of observed gain G and predicted gain Q. `pmf` is row-major:
/// pmf[i * q_outcomes.size() + j] = P(G = g_i, Q = q_j).
class JointDistribution {
 public:
  JointDistribution(std::vector<double> g_outcomes, std::vector<double> q_outcomes,
                    std::vector<double> pmf);

  std::span<const double> g_outcomes() const noexcept { return g_; }
  std::span<const double> q_outcomes() const noexcept { return q_; }
  double p(std::size_t i, std::size_t j) const { return pmf_[i * q_.size() + j]; }

 private:
  std::vector<double> g_;
  std::vector<double> q_;
  std::vector<double> pmf_;
};

/// sum_i g_i p_i
double expectation(const DiscreteDistribution& dist);

struct JointExpectation {
  /// sum_i sum_j (g_i + q_j) p_ij
  double e_sum = 0.0;
  /// Expectations taken through the marginals.
  double e_g = 0.0;
  double e_q = 0.0;
};

JointExpectation joint_expectation_sum(const JointDistribution& joint);

/// Mean computed as v[0] + mean(v[i] - v[0]); exact for constant input.
double arithmetic_mean(std::span<const double> values);

/// exp(mean(log v)). Values must be strictly positive.
double geometric_mean(std::span<const double> values);

/// count / sum(1 / v). Values may be negative but not zero.
double harmonic_mean(std::span<const double> values);

struct MidpointCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// For G(a) = m * n^a compares G((a1 + a2) / 2) with sqrt(G(a1) * G(a2)).
/// Holds when |lhs - rhs| <= 1e-9 * max(1, |lhs|). Requires m, n > 0.
MidpointCheck exponential_midpoint_check(double m, double n, double a1, double a2);

/// mean(|v_i - center|). Needs at least one value.
double mean_deviation(std::span<const double> values, double center);

double mean_deviation_about_mean(std::span<const double> values);

}  // namespace gainprophet

#include <catch_amalgamated.hpp>

#include "gainprophet/errors.hpp"
#include "gainprophet/predictors.hpp"
#include "gainprophet/stats.hpp"
#include "support/oracles.hpp"

using namespace gainprophet;
using Catch::Approx;
using Vec = std::vector<double>;

TEST_CASE("delta_gaps", "[predictors]") {
  CHECK(delta_gaps(Vec{10, 12, 9}) == Vec{2, 3});
  CHECK(delta_gaps(Vec{5, 5, 5}) == Vec{0, 0});
  CHECK(delta_gaps(Vec{1.5, 4.0, 2.5, 2.5}) == Vec{2.5, 1.5, 0.0});
  CHECK_THROWS_AS(delta_gaps(Vec{1}), SizeError);
  CHECK_THROWS_AS(delta_gaps(Vec{}), SizeError);
}

TEST_CASE("delta_avg", "[predictors]") {
  CHECK(delta_avg(Vec{10, 12, 9}) == 2.5);
  CHECK(delta_avg(Vec{7, 7, 7, 7}) == 0.0);
  CHECK(delta_avg(Vec{3, -4}) == 7.0);
  CHECK_THROWS_AS(delta_avg(Vec{1}), SizeError);
}

TEST_CASE("predict_next, literal branch rule", "[predictors]") {
  const auto r = predict_next(Vec{10, 12, 9}, StepPolicy::PaperLiteral);
  CHECK(r.gaps == Vec{2, 3});
  CHECK(r.delta_avg == 2.5);
  CHECK(r.predicted_gain == 6.5);
  CHECK(r.optimum_gain == 12.0);
  CHECK(r.optimum_index == 1);
  CHECK(r.normalization_factor == -5.5);

  CHECK(predict_next(Vec{0.5, 1.0}, StepPolicy::PaperLiteral).predicted_gain == 0.5);

  // Last gain below the average gap steps up.
  CHECK(predict_next(Vec{10, 1}, StepPolicy::PaperLiteral).predicted_gain == 10.0);
  // A tie between last gain and average gap steps down.
  CHECK(predict_next(Vec{0, 2, 2}, StepPolicy::PaperLiteral).delta_avg == 1.0);
  CHECK(predict_next(Vec{2, 4, 2, 1}, StepPolicy::PaperLiteral).predicted_gain ==
        1.0 + 5.0 / 3.0);
  CHECK(predict_next(Vec{1, 2, 1}, StepPolicy::PaperLiteral).predicted_gain == 0.0);
}

TEST_CASE("predict_next, trend rule", "[predictors]") {
  CHECK(predict_next(Vec{10, 12, 9}, StepPolicy::Trend).predicted_gain == 6.5);
  CHECK(predict_next(Vec{10, 9, 12}, StepPolicy::Trend).predicted_gain == 14.0);
  // Flat last step goes up.
  CHECK(predict_next(Vec{1, 3, 3}, StepPolicy::Trend).predicted_gain == 4.0);
  CHECK_THROWS_AS(predict_next(Vec{1, 2}, StepPolicy::Trend), SizeError);
  CHECK_THROWS_AS(predict_next(Vec{1}, StepPolicy::PaperLiteral), SizeError);
}

TEST_CASE("predict_next fixed point on constant series", "[predictors]") {
  for (auto policy : {StepPolicy::PaperLiteral, StepPolicy::Trend}) {
    const auto r = predict_next(Vec{5, 5, 5}, policy);
    CHECK(r.predicted_gain == 5.0);
    CHECK(r.normalization_factor == 0.0);
    CHECK(r.optimum_index == 0);
  }
}

TEST_CASE("optimum index is the first maximum", "[predictors]") {
  CHECK(predict_next(Vec{1, 9, 3, 9}, StepPolicy::PaperLiteral).optimum_index == 1);
}

TEST_CASE("delta statistics properties", "[predictors][property]") {
  oracle::Rng rng(7);
  std::uniform_real_distribution<double> shift(-1e3, 1e3);
  std::uniform_real_distribution<double> scale(-50.0, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    // Integer-valued gains keep translated differences exact.
    auto g = oracle::uniform_vector(rng, 2 + trial % 30, -1e4, 1e4);
    for (double& v : g) v = std::round(v);
    const double c = std::round(shift(rng));
    Vec moved = g;
    for (double& v : moved) v += c;
    REQUIRE(delta_gaps(moved) == delta_gaps(g));

    const double k = scale(rng);
    Vec scaled = g;
    for (double& v : scaled) v *= k;
    REQUIRE(oracle::rel_err(delta_avg(scaled), std::abs(k) * delta_avg(g)) <= 1e-12);

    const auto r = predict_next(g, StepPolicy::PaperLiteral);
    const double last = g.back();
    const bool up = r.predicted_gain == last + r.delta_avg;
    const bool down = r.predicted_gain == last - r.delta_avg;
    REQUIRE((up || down));
    if (r.delta_avg != 0.0) REQUIRE(up != down);

    if (std::all_of(g.begin(), g.end(), [&](double v) { return r.predicted_gain <= v; })) {
      REQUIRE(r.normalization_factor <= 0.0);
    }
  }
}

TEST_CASE("mle_expected_gain, closed-form families", "[predictors]") {
  ScoreProblem normal{{2, 4, 9}, NormalLocation{1.0}, -100.0, 100.0};
  CHECK(mle_expected_gain(normal) == Approx(5.0).margin(1e-9));

  ScoreProblem single{{7}, NormalLocation{2.5}, 0.0, 20.0};
  CHECK(mle_expected_gain(single) == Approx(7.0).margin(1e-9));

  ScoreProblem expo{{1, 3}, ExponentialMean{}, 0.1, 10.0};
  CHECK(mle_expected_gain(expo) == Approx(2.0).margin(1e-9));
}

TEST_CASE("mle_expected_gain, custom score", "[predictors]") {
  // Laplace location: score is sign(g - theta); the root set is the median.
  ScoreProblem laplace{{1, 2, 10}, CustomScore{[](double g, double t) {
                         return g > t ? 1.0 : g < t ? -1.0 : 0.0;
                       }},
                       -50.0, 50.0};
  CHECK(mle_expected_gain(laplace) == Approx(2.0).margin(1e-9));

  // Poisson rate: g / t - 1, root at the mean.
  ScoreProblem poisson{{3, 4, 8}, CustomScore{[](double g, double t) { return g / t - 1.0; }}, 0.5,
                       100.0};
  const double est = mle_expected_gain(poisson, 1e-13);
  CHECK(est == Approx(5.0).margin(1e-9));
  CHECK(std::abs(score_sum(poisson, est)) < 1e-6);
}

TEST_CASE("mle_expected_gain errors", "[predictors]") {
  ScoreProblem no_root{{2, 4}, NormalLocation{1.0}, 10.0, 20.0};
  CHECK_THROWS_AS(mle_expected_gain(no_root), NoRootError);

  ScoreProblem bad_bracket{{2, 4}, NormalLocation{1.0}, 5.0, 5.0};
  CHECK_THROWS_AS(mle_expected_gain(bad_bracket), ValidationError);

  ScoreProblem bad_sigma{{2, 4}, NormalLocation{0.0}, 0.0, 5.0};
  CHECK_THROWS_AS(mle_expected_gain(bad_sigma), ValidationError);

  ScoreProblem nonpositive{{1, 3}, ExponentialMean{}, -1.0, 10.0};
  CHECK_THROWS_AS(mle_expected_gain(nonpositive), DomainError);

  ScoreProblem nan_score{{1}, CustomScore{[](double, double) { return std::nan(""); }}, 0.0, 1.0};
  CHECK_THROWS_AS(mle_expected_gain(nan_score), DomainError);

  ScoreProblem empty{{}, NormalLocation{1.0}, 0.0, 1.0};
  CHECK_THROWS_AS(mle_expected_gain(empty), SizeError);
}

TEST_CASE("normal-location MLE is the sample mean", "[predictors][property]") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = oracle::uniform_vector(rng, 1 + trial % 50, -1000.0, 1000.0);
    ScoreProblem p{g, NormalLocation{1.0}, -2000.0, 2000.0};
    REQUIRE(std::abs(mle_expected_gain(p) - arithmetic_mean(g)) <= 1e-9);
  }
}

TEST_CASE("ar_forecast", "[predictors]") {
  CHECK(ar_forecast({0.0, {1.0}}, Vec{3, 5, 8}) == 8.0);
  // Coefficient 0.5 pairs with the newest value 8, 0.25 with 4.
  CHECK(ar_forecast({1.0, {0.5, 0.25}}, Vec{4, 8}) == 6.0);
  CHECK(ar_forecast({3.0, {0.0, 0.0}}, Vec{100, -100}, 0.5) == 3.5);
  CHECK_THROWS_AS(ar_forecast({0.0, {1.0, 1.0}}, Vec{1}), SizeError);
  CHECK_THROWS_AS(ar_forecast({0.0, {}}, Vec{1}), ValidationError);
}

TEST_CASE("ma_forecast", "[predictors]") {
  CHECK(ma_forecast({{0.0, 0.0}}, Vec{9, 9}, 1.25) == 1.25);
  CHECK(ma_forecast({{1.0}}, Vec{3}, 2.0) == 5.0);
  CHECK(ma_forecast({{0.5, -0.25}}, Vec{2, 4}, 1.0) == 2.5);
  CHECK(MAModel{{0.5, -0.25}}.q() == 1);
  CHECK_THROWS_AS(ma_forecast({{1.0, 1.0}}, Vec{1}), SizeError);
}

TEST_CASE("forecasts match the dot-product oracle bit for bit", "[predictors][property]") {
  oracle::Rng rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t p = 1 + trial % 6;
    const auto coeffs = oracle::uniform_vector(rng, p, -2.0, 2.0);
    const auto hist = oracle::uniform_vector(rng, p + trial % 4, -100.0, 100.0);
    const double intercept = oracle::uniform_vector(rng, 1, -10.0, 10.0)[0];
    const double shock = oracle::uniform_vector(rng, 1, -1.0, 1.0)[0];
    REQUIRE(ar_forecast({intercept, coeffs}, hist, shock) ==
            oracle::ar_dot(intercept, coeffs, hist, shock));
    REQUIRE(ma_forecast({coeffs}, hist, shock) == oracle::ma_dot(coeffs, hist, shock));
  }
}

TEST_CASE("fit_ar_least_squares recovers a noiseless AR(1)", "[predictors]") {
  const auto g = oracle::simulate_ar(2.0, {0.5}, {10.0}, 10);
  const auto fit = fit_ar_least_squares(g, 1);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.model.intercept == Approx(2.0).margin(1e-9));
  CHECK(fit.model.coefficients[0] == Approx(0.5).margin(1e-9));
  CHECK(fit.rss < 1e-18);
}

TEST_CASE("fit_ar_least_squares on a pure trend", "[predictors]") {
  Vec g;
  for (int t = 0; t < 8; ++t) g.push_back(t);
  const auto fit = fit_ar_least_squares(g, 1);
  CHECK(ar_forecast(fit.model, g) == Approx(8.0).margin(1e-9));
  for (std::size_t t = 1; t < g.size(); ++t) {
    const Vec prefix(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(t));
    CHECK(ar_forecast(fit.model, prefix) == Approx(g[t]).margin(1e-9));
  }
}

TEST_CASE("fit_ar_least_squares degenerate and error cases", "[predictors]") {
  const auto fit = fit_ar_least_squares(Vec{4, 4, 4, 4, 4}, 2);
  CHECK(fit.degenerate);
  CHECK(fit.model.intercept == 4.0);
  CHECK(fit.model.coefficients == Vec{0.0, 0.0});
  CHECK(fit.rss == 0.0);

  // A line cannot identify two lags plus an intercept.
  CHECK(fit_ar_least_squares(Vec{0, 1, 2, 3, 4, 5, 6}, 2).degenerate);

  CHECK_THROWS_AS(fit_ar_least_squares(Vec{1, 2}, 1), SizeError);
  CHECK_THROWS_AS(fit_ar_least_squares(Vec{1, 2, 3}, 0), ValidationError);
}

TEST_CASE("least squares never does worse than the zero-coefficient model",
          "[predictors][property]") {
  oracle::Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t order = 1 + trial % 3;
    const auto g = oracle::uniform_vector(rng, 2 * order + 1 + trial % 20, -50.0, 50.0);
    const auto fit = fit_ar_least_squares(g, order);
    // Best zero-coefficient model predicts the mean of the fitted targets.
    const Vec targets(g.begin() + static_cast<std::ptrdiff_t>(order), g.end());
    const double mean = arithmetic_mean(targets);
    double rss0 = 0.0;
    for (double t : targets) rss0 += (t - mean) * (t - mean);
    REQUIRE(fit.rss <= rss0 * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("fit_ar_least_squares recovers AR(p) for p <= 3", "[predictors][property]") {
  oracle::Rng rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t p = 1 + trial % 3;
    auto coeffs = oracle::uniform_vector(rng, p, -0.9 / p, 0.9 / p);
    const double intercept = oracle::uniform_vector(rng, 1, -5.0, 5.0)[0];
    const auto g = oracle::simulate_ar(intercept, coeffs, oracle::uniform_vector(rng, p, -10, 10),
                                       4 * p + 8);
    const auto fit = fit_ar_least_squares(g, p);
    REQUIRE(std::abs(fit.model.intercept - intercept) <= 1e-6);
    for (std::size_t j = 0; j < p; ++j) {
      REQUIRE(std::abs(fit.model.coefficients[j] - coeffs[j]) <= 1e-6);
    }
  }
}

#include "djwalk/epsilon_variant.hpp"

#include <cmath>
#include <stdexcept>

#include "djwalk/ensemble_stats.hpp"
#include "djwalk/walk_core.hpp"

namespace djwalk {

MissProbability quantum_miss_probability(int m, double epsilon, double nu) {
  if (m < 0) throw std::invalid_argument("quantum_miss_probability: m must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("quantum_miss_probability: eps must lie in (0,1)");
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("quantum_miss_probability: nu must lie in [0,1]");
  const double hit = nu * epsilon * epsilon;
  const double exact = std::exp(static_cast<double>(m) * std::log1p(-hit));
  const double approx = std::exp(-static_cast<double>(m) * hit);
  return {exact, approx, approx - exact};
}

double y_statistic(std::span<const int> samples) {
  if (samples.empty()) throw std::invalid_argument("y_statistic: no samples");
  long long total = 0;
  for (int y : samples) {
    if (y != 1 && y != -1) throw std::invalid_argument("y_statistic: samples must be +1 or -1");
    total += y;
  }
  return static_cast<double>(total) / static_cast<double>(samples.size());
}

double chernoff_upper(double mu, double delta) {
  if (!(mu > 0.0)) throw std::invalid_argument("chernoff_upper: mu must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("chernoff_upper: delta must be > 0");
  return std::exp(mu * (delta - (1.0 + delta) * std::log1p(delta)));
}

double chernoff_lower(double mu, double delta) {
  if (!(mu > 0.0)) throw std::invalid_argument("chernoff_lower: mu must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("chernoff_lower: delta must lie in (0,1)");
  return std::exp(-mu * delta * delta / 2.0);
}

ChernoffParams balanced_side_params(int m, double epsilon) { return {m / 2.0, epsilon / 2.0}; }

ChernoffParams epsilon_side_params(int m, double epsilon) {
  return {m * (1.0 + epsilon) / 2.0, epsilon / (2.0 * (1.0 + epsilon))};
}

ClassicalBounds classical_error_bounds(int m, double epsilon) {
  if (m < 1) throw std::invalid_argument("classical_error_bounds: m must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::invalid_argument("classical_error_bounds: eps must lie in (0, 0.5]");
  const ChernoffParams up = balanced_side_params(m, epsilon);
  const ChernoffParams lo = epsilon_side_params(m, epsilon);
  const double e2m = epsilon * epsilon * m;
  return {chernoff_upper(up.mu, up.delta), chernoff_lower(lo.mu, lo.delta), std::exp(-e2m / 8.0),
          std::exp(-e2m / 16.0)};
}

namespace {

// Mass of k plus-ones among m samples.
double sample_mass(int m, int k, double p_plus, long long n_paths, long long n_plus, SamplingModel sampling) {
  if (sampling == SamplingModel::IID) return binomial_prob(m, k, p_plus);
  return hypergeometric_prob({n_paths, n_plus, m, k});
}

}  // namespace

ExactTails exact_tail_probabilities(int m, double epsilon, const TailModel& model) {
  if (m < 1) throw std::invalid_argument("exact_tail_probabilities: m must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("exact_tail_probabilities: eps must lie in (0,1]");

  long long n_plus_bal = 0;
  long long n_plus_eps = 0;
  if (model.sampling == SamplingModel::IID) {
    if (m > kMaxExactTailTrials) throw std::invalid_argument("exact_tail_probabilities: m too large for summation");
  } else {
    const long long n = model.n_paths;
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("exact_tail_probabilities: hypergeometric model needs even N");
    if (m > n) throw std::invalid_argument("exact_tail_probabilities: m must be <= N without replacement");
    n_plus_bal = n / 2;
    n_plus_eps = PhasePattern::epsilon_plus_count(static_cast<int>(n), epsilon);
  }

  // Y is computed from the integer sample sum exactly as the rule sees it.
  auto calls_epsilon = [&](int k) { return decide_epsilon_case(static_cast<double>(2 * k - m) / m, epsilon); };

  // Rejection region of the balanced hypothesis is an upper tail and that of
  // the epsilon hypothesis a lower tail; both sums start at the extreme end.
  ExactTails t{0.0, 0.0};
  for (int k = m; k >= 0 && calls_epsilon(k); --k) {
    t.false_eps += sample_mass(m, k, 0.5, model.n_paths, n_plus_bal, model.sampling);
  }
  const double p_eps = (1.0 + epsilon) / 2.0;
  for (int k = 0; k <= m && !calls_epsilon(k); ++k) {
    t.false_bal += sample_mass(m, k, p_eps, model.n_paths, n_plus_eps, model.sampling);
  }
  return t;
}

}  // namespace djwalk

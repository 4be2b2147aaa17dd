#include "djwalk/decision_dj.hpp"

#include <cmath>
#include <stdexcept>

namespace djwalk {

namespace {

void require_trials(int m) {
  if (m < 1) throw std::invalid_argument("decision: m must be >= 1");
}

void require_nu(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("decision: nu must lie in [0,1]");
}

Rational pow_rational(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

void PriorSpec::validate() const {
  for (double p : {constant_plus, constant_minus, balanced}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("PriorSpec: probabilities must lie in [0,1]");
  }
  if (std::abs(constant_plus + constant_minus + balanced - 1.0) > 1e-12) {
    throw std::invalid_argument("PriorSpec: probabilities must sum to 1");
  }
}

// ---------------------------------------------------------------------------
// Classical sampling

double classical_all_plus_likelihood(int m, SamplingModel model, long long n_paths) {
  require_trials(m);
  if (model == SamplingModel::IID) return std::ldexp(1.0, -m);
  if (n_paths < 2 || n_paths % 2 != 0) throw std::invalid_argument("decision: without-replacement model needs even N >= 2");
  if (m > n_paths) throw std::invalid_argument("decision: cannot sample more than N shifters without replacement");
  return hypergeometric_prob({n_paths, n_paths / 2, m, m});
}

double classical_posterior_all_same(int m, const PriorSpec& prior, SamplingModel model, long long n_paths) {
  prior.validate();
  const double lik = classical_all_plus_likelihood(m, model, n_paths);
  const double evidence = prior.constant_plus + prior.balanced * lik;
  if (evidence == 0.0) return 0.0;
  return prior.constant_plus / evidence;
}

double classical_error(int m, const PriorSpec& prior, SamplingModel model, long long n_paths) {
  prior.validate();
  // Constant patterns always yield agreeing samples, so only a balanced
  // pattern that happens to look constant is misjudged.
  return prior.balanced * 2.0 * classical_all_plus_likelihood(m, model, n_paths);
}

Rational classical_posterior_all_same_exact(int m) {
  require_trials(m);
  const Rational quarter(1, 4);
  const Rational evidence = quarter + Rational(1, 2) / Rational(BigInt(1) << m);
  return quarter / evidence;
}

Rational classical_error_exact(int m) {
  require_trials(m);
  return Rational(1) / Rational(BigInt(1) << m);
}

// ---------------------------------------------------------------------------
// Quantum runs

QuantumLikelihood QuantumLikelihood::make(double nu, LikelihoodMode mode, long long n_paths) {
  require_nu(nu);
  if (mode == LikelihoodMode::Idealized) return {nu, 0.0};
  if (n_paths < 2) throw std::invalid_argument("decision: exact-N likelihoods need N >= 2");
  const double n = static_cast<double>(n_paths);
  const double d = (n + 1) * (n + 1);
  return {(n + nu * n * (n - 1)) / d, (1.0 - nu) * n / d};
}

Posterior quantum_posterior_all_zero(int m, const QuantumLikelihood& lik) {
  require_trials(m);
  const double miss_c = std::pow(1.0 - lik.constant, m);
  const double miss_b = std::pow(1.0 - lik.balanced, m);
  const double evidence = 0.5 * miss_c + 0.5 * miss_b;
  return {0.5 * miss_c / evidence, 0.5 * miss_b / evidence};
}

Posterior quantum_posterior_all_zero(int m, double nu) {
  return quantum_posterior_all_zero(m, QuantumLikelihood::make(nu));
}

double quantum_error(int m, const QuantumLikelihood& lik) {
  require_trials(m);
  return 0.5 * std::pow(1.0 - lik.constant, m) + 0.5 * (1.0 - std::pow(1.0 - lik.balanced, m));
}

double quantum_error(int m, double nu, LikelihoodMode mode, long long n_paths) {
  return quantum_error(m, QuantumLikelihood::make(nu, mode, n_paths));
}

Rational quantum_error_exact(int m, const Rational& nu) {
  require_trials(m);
  if (nu < 0 || nu > 1) throw std::invalid_argument("decision: nu must lie in [0,1]");
  return Rational(1, 2) * pow_rational(1 - nu, m);
}

double coherence_threshold(int m) {
  require_trials(m);
  return 1.0 - std::exp2(1.0 / m) / 2.0;
}

// ---------------------------------------------------------------------------
// Tables and reports

std::string to_string(Strategy s) { return s == Strategy::Classical ? "classical" : "quantum"; }
std::string to_string(Hypothesis h) { return h == Hypothesis::Constant ? "constant" : "balanced"; }

std::vector<TwoTrialRow> enumerate_two_trial_table(double nu) {
  require_nu(nu);
  std::vector<TwoTrialRow> rows;
  const PriorSpec prior;

  for (int y1 : {1, -1}) {
    for (int y2 : {1, -1}) {
      const double joint_c = (y1 == 1 && y2 == 1 ? prior.constant_plus : 0.0) +
                             (y1 == -1 && y2 == -1 ? prior.constant_minus : 0.0);
      const double joint_b = prior.balanced * 0.25;
      const double p = joint_c + joint_b;
      const double pc = joint_c / p;
      rows.push_back({Strategy::Classical, y1, y2, p, pc, 1.0 - pc,
                      pc >= 0.5 ? Hypothesis::Constant : Hypothesis::Balanced});
    }
  }

  for (int d1 : {0, 1}) {
    for (int d2 : {0, 1}) {
      const int hits = d1 + d2;
      const double lik_c = std::pow(nu, hits) * std::pow(1.0 - nu, 2 - hits);
      const double lik_b = hits == 0 ? 1.0 : 0.0;
      const double p = 0.5 * lik_c + 0.5 * lik_b;
      double pc = 0.0;
      if (p > 0.0) {
        pc = 0.5 * lik_c / p;
      } else {
        pc = lik_b == 0.0 ? 1.0 : 0.0;
      }
      // Ties at nu = 0 fall to balanced, matching the no-detection rule.
      rows.push_back({Strategy::Quantum, d1, d2, p, pc, 1.0 - pc,
                      pc > 0.5 ? Hypothesis::Constant : Hypothesis::Balanced});
    }
  }
  return rows;
}

DecisionReport classical_report(int m, const PriorSpec& prior, SamplingModel model, long long n_paths) {
  return {Strategy::Classical, m, std::nullopt, classical_posterior_all_same(m, prior, model, n_paths),
          "guess constant iff all sampled shifters agree", classical_error(m, prior, model, n_paths)};
}

DecisionReport quantum_report(int m, double nu, LikelihoodMode mode, long long n_paths) {
  const QuantumLikelihood lik = QuantumLikelihood::make(nu, mode, n_paths);
  return {Strategy::Quantum, m, nu, quantum_posterior_all_zero(m, lik).constant,
          "guess balanced iff the particle never exits on |B,N+1>", quantum_error(m, lik)};
}

}  // namespace djwalk

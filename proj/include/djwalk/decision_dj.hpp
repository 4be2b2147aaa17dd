// Bayesian m-trial analysis of the constant-vs-balanced problem.
//
// Classical strategy: sample m phase shifters, guess constant iff all
// samples agree. Quantum strategy: run the walk m times, guess balanced iff
// the particle never exits on |B,N+1>.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "djwalk/ensemble_stats.hpp"
#include "djwalk/models.hpp"

namespace djwalk {

struct PriorSpec {
  double constant_plus = 0.25;
  double constant_minus = 0.25;
  double balanced = 0.5;

  double constant() const { return constant_plus + constant_minus; }
  void validate() const;
};

/// P(all m samples = +1 | balanced) under the sampling model. The
/// without-replacement model needs the (even) number of paths.
double classical_all_plus_likelihood(int m, SamplingModel model = SamplingModel::IID, long long n_paths = 0);

/// P(c=+1 | m samples all +1). Default prior gives 2^(m-1) / (1 + 2^(m-1)).
double classical_posterior_all_same(int m, const PriorSpec& prior = {}, SamplingModel model = SamplingModel::IID,
                                    long long n_paths = 0);

/// Error of "guess constant iff all samples agree". Default prior: 2^-m.
double classical_error(int m, const PriorSpec& prior = {}, SamplingModel model = SamplingModel::IID,
                       long long n_paths = 0);

Rational classical_posterior_all_same_exact(int m);
Rational classical_error_exact(int m);

/// Per-run probabilities of finding the particle on |B,N+1>.
struct QuantumLikelihood {
  double constant = 1.0;
  double balanced = 0.0;

  /// Idealized: (nu, 0). ExactN: ([N + nu N(N-1)]/(N+1)^2, (1-nu)N/(N+1)^2).
  static QuantumLikelihood make(double nu, LikelihoodMode mode = LikelihoodMode::Idealized, long long n_paths = 0);
};

struct Posterior {
  double constant;
  double balanced;
};

/// Posterior after m runs without a detection, equal priors 1/2 and 1/2.
Posterior quantum_posterior_all_zero(int m, double nu);
Posterior quantum_posterior_all_zero(int m, const QuantumLikelihood& lik);

/// Error of "guess balanced iff no detection in m runs". Idealized: (1/2)(1-nu)^m.
double quantum_error(int m, double nu, LikelihoodMode mode = LikelihoodMode::Idealized, long long n_paths = 0);
double quantum_error(int m, const QuantumLikelihood& lik);
Rational quantum_error_exact(int m, const Rational& nu);

/// nu* = 1 - 2^(1/m)/2: quantum beats classical for nu > nu*.
double coherence_threshold(int m);

enum class Strategy : std::uint8_t { Classical, Quantum };
enum class Hypothesis : std::uint8_t { Constant, Balanced };

std::string to_string(Strategy s);
std::string to_string(Hypothesis h);

/// One outcome of a two-trial experiment. Classical outcomes are samples
/// (+-1, +-1); quantum outcomes are detections (0/1, 0/1). For an outcome
/// of probability zero the posterior is set from likelihood support.
struct TwoTrialRow {
  Strategy strategy;
  int first;
  int second;
  double outcome_probability;
  double p_constant;
  double p_balanced;
  Hypothesis guess;
};

/// Classical rows use the default prior; quantum rows use equal priors and
/// idealized likelihoods at the given nu.
std::vector<TwoTrialRow> enumerate_two_trial_table(double nu);

struct DecisionReport {
  Strategy strategy;
  int m;
  std::optional<double> nu;
  double posterior_ambiguous;  // P(constant | ambiguous outcome)
  std::string guess_rule;
  double error_probability;
};

DecisionReport classical_report(int m, const PriorSpec& prior = {}, SamplingModel model = SamplingModel::IID,
                                long long n_paths = 0);
DecisionReport quantum_report(int m, double nu, LikelihoodMode mode = LikelihoodMode::Idealized,
                              long long n_paths = 0);

}  // namespace djwalk

// Balanced versus epsilon-biased phase patterns.
//
// Quantum: run the walk m times and call the epsilon case iff the particle
// is ever detected on |B,N+1>. Classical: sample m shifters and call the
// epsilon case iff Y = mean(y) >= eps/2.
#pragma once

#include <span>

#include "djwalk/models.hpp"

namespace djwalk {

struct MissProbability {
  double exact;        // (1 - nu eps^2)^m
  double exponential;  // exp(-m nu eps^2)
  double gap;          // exponential - exact
};

/// Probability that m runs never detect the particle in the epsilon case.
/// m = 0 is allowed and gives 1.
MissProbability quantum_miss_probability(int m, double epsilon, double nu);

/// Sample mean of +-1 samples. Throws on empty input or entries other than +-1.
double y_statistic(std::span<const int> samples);

/// Threshold rule; Y exactly at eps/2 is classified as the epsilon case.
inline bool decide_epsilon_case(double y, double epsilon) { return y >= epsilon / 2.0; }

/// [e^delta / (1+delta)^(1+delta)]^mu, evaluated in log space.
double chernoff_upper(double mu, double delta);
/// exp(-mu delta^2 / 2); requires 0 < delta < 1.
double chernoff_lower(double mu, double delta);

struct ChernoffParams {
  double mu;
  double delta;
};

/// Upper-tail parameters for a false epsilon call under the balanced
/// hypothesis: mu = m/2, delta = eps/2.
ChernoffParams balanced_side_params(int m, double epsilon);
/// Lower-tail parameters for a false balanced call under the epsilon
/// hypothesis: mu = m(1+eps)/2, delta = eps / (2(1+eps)).
ChernoffParams epsilon_side_params(int m, double epsilon);

struct ClassicalBounds {
  double false_eps;         // Chernoff bound on P(Y >= eps/2 | balanced)
  double false_bal;         // Chernoff bound on P(Y <  eps/2 | epsilon)
  double stated_approx;     // exp(-eps^2 m / 8)
  double lowest_order;      // exp(-eps^2 m / 16), leading small-eps term of both bounds
};

/// Requires eps in (0, 0.5] and m >= 1.
ClassicalBounds classical_error_bounds(int m, double epsilon);

struct TailModel {
  SamplingModel sampling = SamplingModel::IID;
  long long n_paths = 0;  // WithoutReplacement only

  static TailModel iid() { return {}; }
  static TailModel hypergeometric(long long n) { return {SamplingModel::WithoutReplacement, n}; }
};

struct ExactTails {
  double false_eps;  // P(Y >= eps/2 | balanced)
  double false_bal;  // P(Y <  eps/2 | epsilon)
};

/// Largest m accepted by exact_tail_probabilities in the IID model.
inline constexpr int kMaxExactTailTrials = 10000;

/// Exact error probabilities of the threshold rule by direct summation of
/// binomial (IID) or hypergeometric masses. Accepts eps in (0, 1].
ExactTails exact_tail_probabilities(int m, double epsilon, const TailModel& model = TailModel::iid());

}  // namespace djwalk

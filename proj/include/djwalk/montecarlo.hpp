// Monte Carlo estimates of the error rates of all four strategies.
//
// Experiments are grouped into fixed blocks of kExperimentsPerStream; each
// block draws its own generator from (seed, block index), so results do not
// depend on how blocks are scheduled across threads. run_experiment is the
// OpenMP kernel; run_experiment_serial is the reference loop it must
// reproduce exactly.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "djwalk/decision_dj.hpp"
#include "djwalk/models.hpp"
#include "djwalk/walk_core.hpp"

namespace djwalk {

using Rng = std::mt19937_64;

inline constexpr long long kExperimentsPerStream = 4096;

/// Generator for one block of experiments, seeded from (seed, block) through std::seed_seq.
Rng experiment_stream(std::uint64_t seed, std::uint64_t block);

enum class McStrategy : std::uint8_t { ClassicalDJ, QuantumDJ, ClassicalEps, QuantumEps };

/// Hidden truth for the epsilon strategies; errors there are reported per hypothesis.
enum class EpsTruth : std::uint8_t { Balanced, Epsilon };

std::string to_string(McStrategy s);
std::string to_string(EpsTruth t);

struct TrialConfig {
  int n_paths = 100;
  int m = 2;
  double nu = 1.0;
  double epsilon = 0.0;  // epsilon strategies only
  McStrategy strategy = McStrategy::QuantumDJ;
  EpsTruth truth = EpsTruth::Epsilon;
  long long experiments = 1000;
  std::uint64_t seed = 0;
  LikelihoodMode likelihood = LikelihoodMode::Idealized;
  SamplingModel sampling = SamplingModel::IID;
  PriorSpec prior{};  // DJ strategies

  void validate() const;
};

struct MCResult {
  long long errors = 0;
  long long experiments = 0;
  double empirical_error = 0.0;
  double std_error = 0.0;      // sqrt(e(1-e)/experiments)
  double analytic_error = 0.0;
  double z_score = 0.0;        // (empirical - analytic) / std_error
};

/// Uniform draw from the promise ensemble: a random permutation of the
/// class's fixed composition.
PhasePattern sample_pattern(const Promise& promise, int n_paths, Rng& rng);

/// Per-run detection probability for a pattern. Idealized mode uses nu, 0
/// or nu*eps^2 by promise class; ExactN uses the finite-N exit probability.
double detection_probability(const PhasePattern& pattern, double nu, LikelihoodMode mode);

/// m independent detections (1) or misses (0).
std::vector<std::uint8_t> simulate_quantum_trials(const PhasePattern& pattern, double nu, int m, LikelihoodMode mode,
                                                  Rng& rng);

/// m sampled shifter values. Throws if m > N without replacement.
std::vector<int> simulate_classical_trials(const PhasePattern& pattern, int m, SamplingModel sampling, Rng& rng);

/// Closed-form error rate matching the configuration.
double analytic_error(const TrialConfig& config);

/// Combines an error count with its analytic target.
MCResult summarize(long long errors, long long experiments, double analytic);

MCResult run_experiment(const TrialConfig& config);
MCResult run_experiment_serial(const TrialConfig& config);

}  // namespace djwalk

#include "djwalk/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "djwalk/decoherence.hpp"
#include "djwalk/epsilon_variant.hpp"

namespace djwalk {

Rng experiment_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return Rng(seq);
}

std::string to_string(McStrategy s) {
  switch (s) {
    case McStrategy::ClassicalDJ: return "classical-dj";
    case McStrategy::QuantumDJ: return "quantum-dj";
    case McStrategy::ClassicalEps: return "classical-eps";
    case McStrategy::QuantumEps: return "quantum-eps";
  }
  return "?";
}

std::string to_string(EpsTruth t) { return t == EpsTruth::Balanced ? "balanced" : "epsilon"; }

namespace {

bool is_eps_strategy(McStrategy s) { return s == McStrategy::ClassicalEps || s == McStrategy::QuantumEps; }

}  // namespace

void TrialConfig::validate() const {
  if (experiments < 1) throw std::invalid_argument("TrialConfig: experiments must be >= 1");
  if (m < 1) throw std::invalid_argument("TrialConfig: m must be >= 1");
  if (n_paths < 2 || n_paths % 2 != 0) throw std::invalid_argument("TrialConfig: n_paths must be even and >= 2");
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("TrialConfig: nu must lie in [0,1]");
  if (sampling == SamplingModel::WithoutReplacement && m > n_paths) {
    throw std::invalid_argument("TrialConfig: m must be <= N without replacement");
  }
  prior.validate();
  if (is_eps_strategy(strategy)) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("TrialConfig: epsilon must lie in (0,1)");
    PhasePattern::epsilon_plus_count(n_paths, epsilon);
  }
}

PhasePattern sample_pattern(const Promise& promise, int n_paths, Rng& rng) {
  switch (promise.kind) {
    case Promise::Kind::ConstantPlus: return PhasePattern::constant(n_paths, +1);
    case Promise::Kind::ConstantMinus: return PhasePattern::constant(n_paths, -1);
    case Promise::Kind::Balanced:
    case Promise::Kind::EpsilonBiased: {
      PhasePattern canonical = promise.kind == Promise::Kind::Balanced
                                   ? PhasePattern::balanced(n_paths)
                                   : PhasePattern::epsilon_biased(n_paths, promise.epsilon);
      std::vector<int> signs(canonical.signs().begin(), canonical.signs().end());
      std::shuffle(signs.begin(), signs.end(), rng);
      return PhasePattern(std::move(signs), promise);
    }
  }
  throw std::invalid_argument("sample_pattern: unknown promise");
}

double detection_probability(const PhasePattern& pattern, double nu, LikelihoodMode mode) {
  if (mode == LikelihoodMode::ExactN) return exit_probability_uniform(pattern, nu);
  const Promise& p = pattern.promise();
  switch (p.kind) {
    case Promise::Kind::ConstantPlus:
    case Promise::Kind::ConstantMinus: return nu;
    case Promise::Kind::Balanced: return 0.0;
    case Promise::Kind::EpsilonBiased: return nu * p.epsilon * p.epsilon;
  }
  return 0.0;
}

std::vector<std::uint8_t> simulate_quantum_trials(const PhasePattern& pattern, double nu, int m, LikelihoodMode mode,
                                                  Rng& rng) {
  if (m < 0) throw std::invalid_argument("simulate_quantum_trials: m must be >= 0");
  std::bernoulli_distribution detect(detection_probability(pattern, nu, mode));
  std::vector<std::uint8_t> out(static_cast<std::size_t>(m));
  for (auto& o : out) o = detect(rng) ? 1 : 0;
  return out;
}

std::vector<int> simulate_classical_trials(const PhasePattern& pattern, int m, SamplingModel sampling, Rng& rng) {
  if (m < 0) throw std::invalid_argument("simulate_classical_trials: m must be >= 0");
  const auto signs = pattern.signs();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(m));
  if (sampling == SamplingModel::IID) {
    std::uniform_int_distribution<std::size_t> pick(0, signs.size() - 1);
    for (int i = 0; i < m; ++i) out.push_back(signs[pick(rng)]);
    return out;
  }
  if (static_cast<std::size_t>(m) > signs.size()) {
    throw std::invalid_argument("simulate_classical_trials: m exceeds N without replacement");
  }
  std::sample(signs.begin(), signs.end(), std::back_inserter(out), m, rng);
  return out;
}

double analytic_error(const TrialConfig& c) {
  c.validate();
  switch (c.strategy) {
    case McStrategy::ClassicalDJ: return classical_error(c.m, c.prior, c.sampling, c.n_paths);
    case McStrategy::QuantumDJ: return quantum_error(c.m, c.nu, c.likelihood, c.n_paths);
    case McStrategy::ClassicalEps: {
      const TailModel model = c.sampling == SamplingModel::IID ? TailModel::iid() : TailModel::hypergeometric(c.n_paths);
      const ExactTails t = exact_tail_probabilities(c.m, c.epsilon, model);
      return c.truth == EpsTruth::Balanced ? t.false_eps : t.false_bal;
    }
    case McStrategy::QuantumEps: {
      const PhasePattern pattern = c.truth == EpsTruth::Balanced ? PhasePattern::balanced(c.n_paths)
                                                                 : PhasePattern::epsilon_biased(c.n_paths, c.epsilon);
      const double p = detection_probability(pattern, c.nu, c.likelihood);
      const double miss = std::pow(1.0 - p, c.m);
      return c.truth == EpsTruth::Balanced ? 1.0 - miss : miss;
    }
  }
  return 0.0;
}

MCResult summarize(long long errors, long long experiments, double analytic) {
  MCResult r;
  r.errors = errors;
  r.experiments = experiments;
  r.empirical_error = static_cast<double>(errors) / static_cast<double>(experiments);
  r.std_error = std::sqrt(r.empirical_error * (1.0 - r.empirical_error) / static_cast<double>(experiments));
  r.analytic_error = analytic;
  const double diff = r.empirical_error - analytic;
  if (r.std_error > 0.0) {
    r.z_score = diff / r.std_error;
  } else {
    r.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return r;
}

namespace {

Promise draw_dj_hypothesis(const PriorSpec& prior, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < prior.constant_plus) return Promise::constant(+1);
  if (u < prior.constant_plus + prior.constant_minus) return Promise::constant(-1);
  return Promise::balanced();
}

// One complete experiment; true if the strategy's guess is wrong.
bool experiment_errs(const TrialConfig& c, Rng& rng) {
  switch (c.strategy) {
    case McStrategy::ClassicalDJ: {
      const Promise truth = draw_dj_hypothesis(c.prior, rng);
      const PhasePattern pattern = sample_pattern(truth, c.n_paths, rng);
      const auto samples = simulate_classical_trials(pattern, c.m, c.sampling, rng);
      const bool all_same = std::all_of(samples.begin(), samples.end(), [&](int y) { return y == samples.front(); });
      return all_same != truth.is_constant();
    }
    case McStrategy::QuantumDJ: {
      const Promise truth = draw_dj_hypothesis(c.prior, rng);
      const PhasePattern pattern = sample_pattern(truth, c.n_paths, rng);
      const auto runs = simulate_quantum_trials(pattern, c.nu, c.m, c.likelihood, rng);
      const bool any_hit = std::any_of(runs.begin(), runs.end(), [](std::uint8_t r) { return r != 0; });
      return any_hit != truth.is_constant();
    }
    case McStrategy::ClassicalEps:
    case McStrategy::QuantumEps: {
      const bool eps_truth = c.truth == EpsTruth::Epsilon;
      const Promise truth = eps_truth ? Promise::epsilon_biased(c.epsilon) : Promise::balanced();
      const PhasePattern pattern = sample_pattern(truth, c.n_paths, rng);
      bool call_eps = false;
      if (c.strategy == McStrategy::ClassicalEps) {
        const auto samples = simulate_classical_trials(pattern, c.m, c.sampling, rng);
        call_eps = decide_epsilon_case(y_statistic(samples), c.epsilon);
      } else {
        const auto runs = simulate_quantum_trials(pattern, c.nu, c.m, c.likelihood, rng);
        call_eps = std::any_of(runs.begin(), runs.end(), [](std::uint8_t r) { return r != 0; });
      }
      return call_eps != eps_truth;
    }
  }
  return false;
}

// Error count of one block of experiments.
long long run_block(const TrialConfig& c, long long block) {
  Rng rng = experiment_stream(c.seed, static_cast<std::uint64_t>(block));
  const long long first = block * kExperimentsPerStream;
  const long long last = std::min(c.experiments, first + kExperimentsPerStream);
  long long errors = 0;
  for (long long i = first; i < last; ++i) {
    if (experiment_errs(c, rng)) ++errors;
  }
  return errors;
}

long long block_count(const TrialConfig& c) {
  return (c.experiments + kExperimentsPerStream - 1) / kExperimentsPerStream;
}

}  // namespace

MCResult run_experiment_serial(const TrialConfig& config) {
  const double analytic = analytic_error(config);
  long long errors = 0;
  for (long long b = 0; b < block_count(config); ++b) errors += run_block(config, b);
  return summarize(errors, config.experiments, analytic);
}

MCResult run_experiment(const TrialConfig& config) {
  const double analytic = analytic_error(config);
  const long long blocks = block_count(config);
  long long errors = 0;
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) reduction(+ : errors)
  for (long long b = 0; b < blocks; ++b) {
    try {
      errors += run_block(config, b);
    } catch (...) {
      failed.store(true, std::memory_order_relaxed);
    }
  }
  // The configuration was validated above, so this only fires on a bug.
  if (failed.load()) throw std::logic_error("run_experiment: experiment failed after validation");
  return summarize(errors, config.experiments, analytic);
}

}  // namespace djwalk

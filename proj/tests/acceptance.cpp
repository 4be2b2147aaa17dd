// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "djwalk/cli.hpp"
#include "djwalk/decision_dj.hpp"
#include "djwalk/decoherence.hpp"
#include "djwalk/ensemble_stats.hpp"
#include "djwalk/epsilon_variant.hpp"
#include "djwalk/montecarlo.hpp"
#include "djwalk/walk_core.hpp"

using namespace djwalk;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<QubitParams> random_qubits(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<QubitParams> out;
  for (int j = 0; j < n; ++j) {
    const Complex a{gauss(rng), gauss(rng)};
    const Complex b{gauss(rng), gauss(rng)};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    out.push_back({a / norm, b / norm});
  }
  return out;
}

PhasePattern random_pattern(int n, std::mt19937_64& rng) {
  std::vector<int> s(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(0.5);
  int plus = 0;
  for (int& x : s) {
    x = coin(rng) ? 1 : -1;
    plus += x > 0;
  }
  if (plus == 0 || plus == n) return PhasePattern::constant(n, s.front());
  if (2 * plus == n) return PhasePattern(s, Promise::balanced());
  return PhasePattern(s, Promise::epsilon_biased((2.0 * plus - n) / n));
}

Outcome ideal_walk() {
  double worst = 0.0;
  for (int n = 2; n <= 32; n += 2) {
    const double c = run_walk(PhasePattern::constant(n), 3).probability(exit_edge(n));
    const double b = run_walk(PhasePattern::balanced(n), 3).probability(exit_edge(n));
    worst = std::max({worst, std::abs(c - static_cast<double>(n * n) / ((n + 1.0) * (n + 1.0))), std::abs(b)});
  }
  return {worst <= 1e-12, fmt("max deviation %.2e (tol 1e-12)", worst)};
}

Outcome decoherence_formulas() {
  double worst = 0.0;
  for (int n = 2; n <= 32; ++n) {
    const double n1 = n + 1.0;
    for (int t = 0; t <= 10; ++t) {
      const double nu = t / 10.0;
      const OverlapMatrix g = overlaps(AncillaSpec::uniform(nu), n);
      worst = std::max(worst, std::abs(exit_probability(PhasePattern::constant(n), g) -
                                       (n + nu * n * (n - 1)) / (n1 * n1)));
      if (n % 2 == 0) {
        worst = std::max(worst, std::abs(exit_probability(PhasePattern::balanced(n), g) - (1 - nu) * n / (n1 * n1)));
      }
    }
  }
  return {worst <= 1e-12, fmt("max deviation %.2e (tol 1e-12)", worst)};
}

Outcome tensor_oracle() {
  std::mt19937_64 rng(20240601);
  const int sizes[] = {4, 6, 8, 10};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = sizes[i % 4];
    const PhasePattern p = random_pattern(n, rng);
    const AncillaSpec spec = AncillaSpec::per_path(random_qubits(n, rng));
    worst = std::max(worst, std::abs(full_tensor_oracle(p, spec) - exit_probability(p, overlaps(spec, n))));
  }
  return {worst <= 1e-10, fmt("100 cases, max deviation %.2e (tol 1e-10)", worst)};
}

Outcome coherence_identity() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  double tightest = -1.0;  // max of probability - bound
  for (int i = 0; i < 500; ++i) {
    const int n = std::uniform_int_distribution<int>(2, 32)(rng);
    const PhasePattern p = random_pattern(n, rng);
    const OverlapMatrix g = overlaps(AncillaSpec::per_path(random_qubits(n, rng)), n);
    worst = std::max(worst, std::abs(coherence_l1(rho_int(p, g)) - (n + 1) * compute_X(g)));
    const ExitBound b = exit_probability_bound(p, g);
    tightest = std::max(tightest, b.probability - b.bound);
  }
  const bool ok = worst <= 1e-12 && tightest <= 1e-12;
  return {ok, fmt("500 cases, |C_l1 - (N+1)X| <= %.2e", worst) + fmt(", max(P - bound) = %.3e", tightest)};
}

Outcome decision_closed_forms() {
  bool ok = true;
  for (int m = 1; m <= 16; ++m) {
    // Joint masses of all 2^m sequences; prior (1/4, 1/4, 1/2).
    const unsigned long long all = (1ull << m) - 1;
    Rational err = 0;
    for (unsigned long long bits = 0; bits <= all; ++bits) {
      const Rational joint_b = Rational(1, 2) * Rational(1, BigInt(1) << m);
      const Rational joint_c = (bits == all || bits == 0) ? Rational(1, 4) : Rational(0);
      err += (bits == all || bits == 0) ? joint_b : joint_c;
    }
    ok = ok && err == Rational(1, BigInt(1) << m) && classical_error_exact(m) == err;
  }
  const double star = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
  const double cross = std::abs(quantum_error(2, star) - classical_error(2));
  ok = ok && cross <= 1e-12;
  int flips = 0;
  for (int m = 1; m <= 10; ++m) {
    const double t = coherence_threshold(m);
    const bool above = quantum_error(m, t + 0.01) < classical_error(m);
    const bool below = t - 0.01 < 0.0 || quantum_error(m, t - 0.01) > classical_error(m);
    flips += above && below;
  }
  ok = ok && flips == 10;
  return {ok, "enumeration m<=16 exact" + fmt(", crossing gap %.2e", cross) + ", sign flips " +
                  std::to_string(flips) + "/10"};
}

Outcome epsilon_variant() {
  std::mt19937_64 rng(31);
  int dominated = 0;
  for (int i = 0; i < 200; ++i) {
    const int m = std::uniform_int_distribution<int>(10, 2000)(rng);
    const double eps = std::uniform_int_distribution<int>(5, 50)(rng) / 100.0;
    const ExactTails t = exact_tail_probabilities(m, eps);
    const ClassicalBounds b = classical_error_bounds(m, eps);
    dominated += t.false_eps <= b.false_eps + 1e-12 && t.false_bal <= b.false_bal + 1e-12;
  }
  // Both Chernoff expressions against exp(-eps^2 m / 8) at m eps^2 = 8.
  double worst_rel = 0.0;
  for (double eps : {0.02, 0.05, 0.1}) {
    const int m = static_cast<int>(std::lround(8.0 / (eps * eps)));
    const ClassicalBounds b = classical_error_bounds(m, eps);
    worst_rel = std::max({worst_rel, std::abs(b.false_eps / b.stated_approx - 1.0),
                          std::abs(b.false_bal / b.stated_approx - 1.0)});
  }
  const bool ok = dominated == 200 && worst_rel <= 0.15;
  return {ok, "dominance " + std::to_string(dominated) + "/200" +
                  fmt(", approximation rel. error %.3f (tol 0.15)", worst_rel)};
}

Outcome window_law_convergence() {
  bool monotone = true;
  for (double p : {0.5, 0.55}) {
    const double g2 = convergence_gap(100, p, 10);
    const double g3 = convergence_gap(1000, p, 10);
    const double g4 = convergence_gap(10000, p, 10);
    monotone = monotone && g2 > g3 && g3 > g4;
  }
  int checked = 0;
  bool normalized = true;
  for (long long n = 1; n <= 200; ++n) {
    for (long long n_plus : {n / 2, (11 * n) / 20, 0LL, n}) {
      for (long long m : {0LL, 1LL, 2LL, 10LL, n / 4, n / 2, n}) {
        if (m > n) continue;
        normalized = normalized && hypergeometric_total_exact(n, n_plus, m) == 1;
        ++checked;
      }
    }
  }
  return {monotone && normalized, std::string("gap monotone: ") + (monotone ? "yes" : "no") + ", " +
                                       std::to_string(checked) + " exact normalizations"};
}

Outcome montecarlo_calibration() {
  auto base = [] {
    TrialConfig c;
    c.experiments = 1000000;
    c.n_paths = 100;
    return c;
  };
  TrialConfig cdj = base();
  cdj.strategy = McStrategy::ClassicalDJ;
  cdj.m = 3;
  cdj.seed = 101;
  TrialConfig qdj = base();
  qdj.strategy = McStrategy::QuantumDJ;
  qdj.m = 2;
  qdj.nu = 0.5;
  qdj.seed = 102;
  TrialConfig qeps = base();
  qeps.strategy = McStrategy::QuantumEps;
  qeps.m = 100;
  qeps.nu = 1.0;
  qeps.epsilon = 0.1;
  qeps.truth = EpsTruth::Epsilon;
  qeps.seed = 103;

  double worst_z = 0.0;
  for (const TrialConfig& c : {cdj, qdj, qeps}) worst_z = std::max(worst_z, std::abs(run_experiment(c).z_score));
  const bool miss_target = std::abs(analytic_error(qeps) - quantum_miss_probability(100, 0.1, 1.0).exact) < 1e-15;

  const std::vector<std::string> args = {"mc", "--strategy", "quantum-dj", "--m", "2", "--nu", "0.5",
                                         "--experiments", "1000000", "--seed", "104", "--strict"};
  std::ostringstream a;
  std::ostringstream b;
  std::ostringstream err;
  const int ca = cli::run_cli(args, a, err);
  const int cb = cli::run_cli(args, b, err);
  const bool repeat = ca == 0 && cb == 0 && a.str() == b.str();

  return {worst_z <= 4.0 && miss_target && repeat,
          fmt("max |z| %.2f (tol 4)", worst_z) + ", seed repeat " + (repeat ? "identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ideal walk exit probabilities", 1.0, ideal_walk},
      {2, "decoherence exit-probability formulas", 1.0, decoherence_formulas},
      {3, "tensor oracle agreement", 30.0, tensor_oracle},
      {4, "coherence identity and exit bound", 5.0, coherence_identity},
      {5, "decision closed forms and threshold", 5.0, decision_closed_forms},
      {6, "epsilon variant bounds", 10.0, epsilon_variant},
      {7, "window-law convergence and normalization", 10.0, window_law_convergence},
      {8, "Monte Carlo calibration and determinism", 120.0, montecarlo_calibration},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("[%s] criterion %d: %s | %s | %.3f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "djwalk/decoherence.hpp"

using namespace djwalk;

namespace {

std::vector<QubitParams> random_qubits(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<QubitParams> out;
  for (int j = 0; j < n; ++j) {
    Complex a{gauss(rng), gauss(rng)};
    Complex b{gauss(rng), gauss(rng)};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    out.push_back({a / norm, b / norm});
  }
  return out;
}

PhasePattern random_signs(int n, std::mt19937_64& rng) {
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

PhasePattern random_balanced(int n, std::mt19937_64& rng) {
  std::vector<int> s(static_cast<std::size_t>(n), -1);
  std::fill(s.begin(), s.begin() + n / 2, 1);
  std::shuffle(s.begin(), s.end(), rng);
  return PhasePattern(s, Promise::balanced());
}

// The ancilla record |eta_j> as an explicit 2^N vector, qubit j on bit j-1.
std::vector<Complex> record(const std::vector<QubitParams>& q, int j) {
  std::vector<Complex> v(std::size_t{1} << q.size());
  v[0] = q[static_cast<std::size_t>(j - 1)].alpha;
  v[std::size_t{1} << (j - 1)] = q[static_cast<std::size_t>(j - 1)].beta;
  return v;
}

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

// Brute-force exit probability: path j reaches |B,N+1> with amplitude
// s_j/(N+1) carrying the record |eta_j>; the norm of the sum is the answer.
double brute_exit_probability(const PhasePattern& p, const std::vector<QubitParams>& q) {
  const int n = p.n_paths();
  std::vector<Complex> psi(std::size_t{1} << n);
  for (int j = 1; j <= n; ++j) {
    const auto r = record(q, j);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += static_cast<double>(p.sign(j)) / (n + 1.0) * r[i];
  }
  return inner(psi, psi).real();
}

}  // namespace

TEST_CASE("overlaps for the standard ancilla specs") {
  const OverlapMatrix ones = overlaps(AncillaSpec::uniform(1.0), 4);
  const OverlapMatrix id = overlaps(AncillaSpec::uniform(0.0), 4);
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(ones(k, j) - Complex{1.0, 0.0}) < 1e-15);
      CHECK(std::abs(id(k, j) - Complex{k == j ? 1.0 : 0.0, 0.0}) < 1e-15);
    }
  }
  const double a = 0.6;
  const OverlapMatrix g = overlaps(AncillaSpec::per_path(std::vector<QubitParams>(5, {a, 0.8})), 5);
  CHECK(std::abs(g(0, 3) - Complex{a * a, 0.0}) < 1e-15);
  CHECK(std::abs(g(2, 2) - Complex{1.0, 0.0}) < 1e-15);

  CHECK_THROWS(AncillaSpec::uniform(1.5));
  CHECK_THROWS(AncillaSpec::per_path({{1.0, 1.0}}));
  CHECK_THROWS(overlaps(AncillaSpec::per_path(std::vector<QubitParams>(3, {1.0, 0.0})), 4));

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = Complex{0.5, 0.1};
  bad(1, 0) = Complex{0.5, 0.1};
  CHECK_THROWS(OverlapMatrix(bad));
}

TEST_CASE("overlaps agree with explicit product-state inner products") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const auto q = random_qubits(n, rng);
    const OverlapMatrix g = overlaps(AncillaSpec::per_path(q), n);
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= n; ++j) {
        CHECK(std::abs(g(k - 1, j - 1) - inner(record(q, k), record(q, j))) < 1e-14);
      }
    }
  }
}

TEST_CASE("rho_int examples") {
  const PathDensityMatrix r = rho_int(PhasePattern::constant(2), overlaps(AncillaSpec::uniform(1.0), 2));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) CHECK(std::abs(r(j, k) - Complex{1.0 / 3.0, 0.0}) < 1e-15);
  }
  CHECK(coherence_l1(r) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const PathDensityMatrix d = rho_int(PhasePattern::balanced(4), overlaps(AncillaSpec::uniform(0.0), 4));
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) CHECK(std::abs(d(j, k) - Complex{j == k ? 0.2 : 0.0, 0.0}) < 1e-15);
  }
  CHECK(d.trace() == doctest::Approx(0.8));
  CHECK(coherence_l1(d) == 0.0);
  CHECK(coherence_l1(ComplexMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("X and exit probabilities for uniform overlaps") {
  CHECK(compute_X(overlaps(AncillaSpec::uniform(0.5), 4)) == doctest::Approx(0.24).epsilon(1e-14));
  CHECK(compute_X(overlaps(AncillaSpec::uniform(0.0), 4)) == 0.0);
  CHECK(compute_X(overlaps(AncillaSpec::uniform(1.0), 2)) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

  const OverlapMatrix half = overlaps(AncillaSpec::uniform(0.5), 4);
  CHECK(exit_probability(PhasePattern::constant(4), half) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(exit_probability(PhasePattern::balanced(4), half) == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(exit_probability(PhasePattern::epsilon_biased(100, 0.1), overlaps(AncillaSpec::uniform(1.0), 100)) ==
        doctest::Approx((10.0 / 101.0) * (10.0 / 101.0)).epsilon(1e-12));

  for (int n = 2; n <= 32; ++n) {
    const double n1 = n + 1.0;
    for (int t = 0; t <= 10; ++t) {
      const double nu = t / 10.0;
      const OverlapMatrix g = overlaps(AncillaSpec::uniform(nu), n);
      const double c = (n + nu * n * (n - 1)) / (n1 * n1);
      CHECK(std::abs(exit_probability(PhasePattern::constant(n), g) - c) < 1e-12);
      CHECK(std::abs(exit_probability_uniform(PhasePattern::constant(n), nu) - c) < 1e-12);
      if (n % 2 == 0) {
        const double b = (1.0 - nu) * n / (n1 * n1);
        CHECK(std::abs(exit_probability(PhasePattern::balanced(n), g) - b) < 1e-12);
        CHECK(std::abs(exit_probability_uniform(PhasePattern::balanced(n), nu) - b) < 1e-12);
      }
      CHECK(std::abs(compute_X(g) - nu * n * (n - 1) / (n1 * n1)) < 1e-12);
    }
  }
}

TEST_CASE("coherence bound examples") {
  const ExitBound tight = exit_probability_bound(PhasePattern::constant(4), overlaps(AncillaSpec::uniform(1.0), 4));
  CHECK(tight.probability == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(tight.bound == doctest::Approx(0.64).epsilon(1e-14));
  // Balanced: strict for nu > 0; at nu = 0 both sides equal N/(N+1)^2.
  for (double nu : {0.3, 1.0}) {
    const ExitBound b = exit_probability_bound(PhasePattern::balanced(6), overlaps(AncillaSpec::uniform(nu), 6));
    CHECK(b.probability < b.bound);
  }
  const ExitBound flat = exit_probability_bound(PhasePattern::balanced(6), overlaps(AncillaSpec::uniform(0.0), 6));
  CHECK(flat.probability == doctest::Approx(6.0 / 49.0).epsilon(1e-14));
  CHECK(flat.bound == doctest::Approx(6.0 / 49.0).epsilon(1e-14));
}

TEST_CASE("property: C_l1 = (N+1) X and the exit bound on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 32)(rng);
    const PhasePattern p = random_signs(n, rng);
    const OverlapMatrix g = trial % 3 == 0
                                ? overlaps(AncillaSpec::uniform(std::uniform_real_distribution<double>(0, 1)(rng)), n)
                                : overlaps(AncillaSpec::per_path(random_qubits(n, rng)), n);
    const double l1 = coherence_l1(rho_int(p, g));
    CHECK(std::abs(l1 - (n + 1) * compute_X(g)) < 1e-12);
    if (n <= 16) {
      const ExitBound b = exit_probability_bound(p, g);
      CHECK(b.probability <= b.bound + 1e-12);
    }
  }
}

TEST_CASE("property: exit probability matches the explicit ancilla state") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const auto q = random_qubits(n, rng);
    const PhasePattern p = random_signs(n, rng);
    const double f = exit_probability(p, overlaps(AncillaSpec::per_path(q), n));
    CHECK(std::abs(f - brute_exit_probability(p, q)) < 1e-12);
  }
}

TEST_CASE("rho_int is PSD for Gram overlaps") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 16)(rng);
    const PathDensityMatrix r = rho_int(random_signs(n, rng), overlaps(AncillaSpec::per_path(random_qubits(n, rng)), n));
    CHECK(r.is_psd(1e-10));
    CHECK(r.trace() == doctest::Approx(n / (n + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("exit probability is monotone in nu") {
  for (int n : {2, 4, 10, 32}) {
    double prev_c = -1.0;
    double prev_b = 2.0;
    for (int t = 0; t <= 20; ++t) {
      const double nu = t / 20.0;
      const double c = exit_probability(PhasePattern::constant(n), overlaps(AncillaSpec::uniform(nu), n));
      const double b = exit_probability(PhasePattern::balanced(n), overlaps(AncillaSpec::uniform(nu), n));
      CHECK(c > prev_c);
      CHECK(b < prev_b);
      prev_c = c;
      prev_b = b;
    }
  }
}

TEST_CASE("full tensor oracle") {
  CHECK(full_tensor_oracle(PhasePattern::constant(4), AncillaSpec::uniform(1.0)) ==
        doctest::Approx(16.0 / 25.0).epsilon(1e-12));
  CHECK(full_tensor_oracle(PhasePattern::balanced(4), AncillaSpec::uniform(0.5)) ==
        doctest::Approx(0.08).epsilon(1e-12));
  CHECK(full_tensor_oracle(PhasePattern::constant(4), AncillaSpec::uniform(0.5)) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS(full_tensor_oracle(PhasePattern::constant(kMaxOraclePaths + 1), AncillaSpec::uniform(1.0)));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial < 20 ? 6 : std::uniform_int_distribution<int>(2, 10)(rng);
    const PhasePattern p = trial < 20 ? random_balanced(n, rng) : random_signs(n, rng);
    const auto q = random_qubits(n, rng);
    const double oracle = full_tensor_oracle(p, AncillaSpec::per_path(q));
    CHECK(std::abs(oracle - exit_probability(p, overlaps(AncillaSpec::per_path(q), n))) < 1e-10);
  }
}

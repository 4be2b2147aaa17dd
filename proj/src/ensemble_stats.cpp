#include "djwalk/ensemble_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace djwalk {

EnsembleParams EnsembleParams::from_fraction(long long n, double p, long long m, long long m_plus) {
  if (n < 1) throw std::invalid_argument("EnsembleParams: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("EnsembleParams: p must lie in [0,1]");
  const double plus = p * static_cast<double>(n);
  const double rounded = std::round(plus);
  if (std::abs(plus - rounded) > 1e-9 * std::max(1.0, plus)) {
    throw std::invalid_argument("EnsembleParams: p*N must be an integer");
  }
  EnsembleParams e{n, static_cast<long long>(rounded), m, m_plus};
  e.validate();
  return e;
}

void EnsembleParams::validate() const {
  if (n < 1) throw std::invalid_argument("EnsembleParams: n must be >= 1");
  if (n_plus < 0 || n_plus > n) throw std::invalid_argument("EnsembleParams: n_plus out of range");
  if (m < 0 || m > n) throw std::invalid_argument("EnsembleParams: m must satisfy 0 <= m <= n");
}

BigInt binomial_coefficient(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

bool feasible(const EnsembleParams& e) {
  const long long m_minus = e.m - e.m_plus;
  return e.m_plus >= 0 && m_minus >= 0 && e.m_plus <= e.n_plus && m_minus <= e.n - e.n_plus;
}

double log_binomial(long long n, long long k) {
  return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
         std::lgamma(static_cast<double>(n - k + 1));
}

}  // namespace

Rational hypergeometric_prob_exact(const EnsembleParams& e) {
  e.validate();
  if (!feasible(e)) return 0;
  return Rational(binomial_coefficient(e.m, e.m_plus) * binomial_coefficient(e.n - e.m, e.n_plus - e.m_plus),
                  binomial_coefficient(e.n, e.n_plus));
}

double hypergeometric_prob(const EnsembleParams& e) {
  e.validate();
  if (!feasible(e)) return 0.0;
  if (e.n <= kExactEnsembleLimit) return static_cast<double>(hypergeometric_prob_exact(e));
  // Probability of one particular ordering of the window, drawn without
  // replacement, times the number of orderings.
  const long long m_minus = e.m - e.m_plus;
  const long long n_minus = e.n - e.n_plus;
  double log_p = log_binomial(e.m, e.m_plus);
  for (long long i = 0; i < e.m_plus; ++i) {
    log_p += std::log(static_cast<double>(e.n_plus - i) / static_cast<double>(e.n - i));
  }
  for (long long i = 0; i < m_minus; ++i) {
    log_p += std::log(static_cast<double>(n_minus - i) / static_cast<double>(e.n - e.m_plus - i));
  }
  return std::exp(log_p);
}

double binomial_prob(long long m, long long m_plus, double p) {
  if (m < 0 || m_plus < 0 || m_plus > m) throw std::invalid_argument("binomial_prob: need 0 <= m_plus <= m");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_prob: p must lie in [0,1]");
  const long long m_minus = m - m_plus;
  if (p == 0.0) return m_plus == 0 ? 1.0 : 0.0;
  if (p == 1.0) return m_minus == 0 ? 1.0 : 0.0;
  return std::exp(log_binomial(m, m_plus) + static_cast<double>(m_plus) * std::log(p) +
                  static_cast<double>(m_minus) * std::log1p(-p));
}

Rational hypergeometric_total_exact(long long n, long long n_plus, long long m) {
  Rational total = 0;
  for (long long k = 0; k <= m; ++k) total += hypergeometric_prob_exact({n, n_plus, m, k});
  return total;
}

double convergence_gap(long long n, double p, long long m) {
  if (m < 0) throw std::invalid_argument("convergence_gap: m must be >= 0");
  if (10 * m > n) throw std::invalid_argument("convergence_gap: requires m <= N/10");
  const EnsembleParams base = EnsembleParams::from_fraction(n, p, m, 0);
  double gap = 0.0;
  for (long long k = 0; k <= m; ++k) {
    EnsembleParams e = base;
    e.m_plus = k;
    gap = std::max(gap, std::abs(hypergeometric_prob(e) - binomial_prob(m, k, p)));
  }
  return gap;
}

}  // namespace djwalk

// Composition law of a length-m window drawn from a uniformly random
// +-1 sequence of fixed composition, and its binomial limit.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace djwalk {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Sequence of length n with n_plus entries equal to +1; window of length m
/// with m_plus entries equal to +1.
struct EnsembleParams {
  long long n = 0;
  long long n_plus = 0;
  long long m = 0;
  long long m_plus = 0;

  /// Builds the params from a fraction p; throws unless p*n is an integer.
  static EnsembleParams from_fraction(long long n, double p, long long m, long long m_plus);
  double p() const { return static_cast<double>(n_plus) / static_cast<double>(n); }
  /// 0 <= m <= n and 0 <= n_plus <= n. Composition feasibility is not
  /// required: infeasible windows simply have probability zero.
  void validate() const;
};

/// Sequences up to this length are evaluated in exact rational arithmetic.
inline constexpr long long kExactEnsembleLimit = 200;

BigInt binomial_coefficient(long long n, long long k);

/// C(m, m+) C(n-m, n+ - m+) / C(n, n+) exactly.
Rational hypergeometric_prob_exact(const EnsembleParams& params);

/// Same probability as a double: exact for n <= kExactEnsembleLimit,
/// otherwise via the sequential-draw product in log space.
double hypergeometric_prob(const EnsembleParams& params);

/// C(m, m+) p^m+ (1-p)^(m - m+).
double binomial_prob(long long m, long long m_plus, double p);

/// Sum over m+ of the hypergeometric masses (exactly 1 for valid params).
Rational hypergeometric_total_exact(long long n, long long n_plus, long long m);

/// max over m+ of |hypergeometric - binomial|. Requires m <= n/10 and p*n integral.
double convergence_gap(long long n, double p, long long m);

}  // namespace djwalk

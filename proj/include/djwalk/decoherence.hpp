// Which-path ancillas, the reduced path density matrix and the l1 coherence.
//
// Each path j carries a qubit that starts in |0> and is rotated to
// |mu_j> = alpha_j|0> + beta_j|1> when the particle passes through vertex j.
// The ancilla record of path j is |eta_j> = |mu_j>_j (x) |0>_{k != j}, so for
// j != k the overlap is <eta_k|eta_j> = conj(alpha_k) alpha_j.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "djwalk/walk_core.hpp"

namespace djwalk {

using ComplexMatrix = Eigen::MatrixXcd;

/// Raised when a result contradicts an identity the model guarantees.
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct QubitParams {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
};

class AncillaSpec {
 public:
  enum class Mode { Uniform, PerPath };

  /// Common real overlap nu in [0,1] between distinct path records.
  static AncillaSpec uniform(double nu);
  /// One (alpha_j, beta_j) pair per path; each must be normalized.
  static AncillaSpec per_path(std::vector<QubitParams> params);

  Mode mode() const { return mode_; }
  double nu() const { return nu_; }
  const std::vector<QubitParams>& params() const { return params_; }

  /// Qubit parameters realizing this spec on n paths. Uniform(nu) maps to
  /// alpha = sqrt(nu), beta = sqrt(1 - nu) on every path.
  std::vector<QubitParams> qubit_params(int n_paths) const;

 private:
  Mode mode_ = Mode::Uniform;
  double nu_ = 1.0;
  std::vector<QubitParams> params_;
};

/// G[k][j] = <eta_k|eta_j>. Hermitian with unit diagonal.
class OverlapMatrix {
 public:
  explicit OverlapMatrix(ComplexMatrix g);
  int size() const { return static_cast<int>(g_.rows()); }
  const ComplexMatrix& matrix() const { return g_; }
  Complex operator()(int k, int j) const { return g_(k, j); }

 private:
  ComplexMatrix g_;
};

/// rho_int restricted to the N path states |j,B>.
class PathDensityMatrix {
 public:
  explicit PathDensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {}
  int size() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  Complex operator()(int j, int k) const { return rho_(j, k); }
  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;
  bool is_psd(double tol = 1e-10) const { return min_eigenvalue() >= -tol; }

 private:
  ComplexMatrix rho_;
};

OverlapMatrix overlaps(const AncillaSpec& spec, int n_paths);

PathDensityMatrix rho_int(const PhasePattern& pattern, const OverlapMatrix& g);

/// Sum of absolute values of the off-diagonal entries.
double coherence_l1(const ComplexMatrix& rho);
inline double coherence_l1(const PathDensityMatrix& rho) { return coherence_l1(rho.matrix()); }

/// X = (1/(N+1)^2) sum_{j != k} |G[k][j]|.
double compute_X(const OverlapMatrix& g);

/// <B,N+1| rho_out |B,N+1> = (1/(N+1)^2) sum_{j,k} s_j s_k G[k][j].
/// Throws TheoryViolation if the imaginary part exceeds 1e-10 or the value
/// falls outside [0,1] by more than 1e-12.
double exit_probability(const PhasePattern& pattern, const OverlapMatrix& g);

/// Same quantity for Uniform(nu) in O(N): [(1-nu)N + nu (sum s_j)^2] / (N+1)^2.
double exit_probability_uniform(const PhasePattern& pattern, double nu);

struct ExitBound {
  double probability;
  double bound;  // N/(N+1)^2 + X
};

/// Exit probability together with its coherence bound; throws
/// TheoryViolation if probability > bound + 1e-12.
ExitBound exit_probability_bound(const PhasePattern& pattern, const OverlapMatrix& g);

/// Largest N accepted by full_tensor_oracle.
inline constexpr int kMaxOraclePaths = 12;

/// Exit probability from explicit evolution of the joint particle (x) ancilla
/// state, tracing out the ancillas at the end.
double full_tensor_oracle(const PhasePattern& pattern, const AncillaSpec& spec, int tail_depth = 4);

}  // namespace djwalk

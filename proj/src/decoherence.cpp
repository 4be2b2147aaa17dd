#include "djwalk/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace djwalk {

namespace {

constexpr double kNormTol = 1e-12;

void check_normalized(const QubitParams& q, std::size_t j) {
  const double n = std::norm(q.alpha) + std::norm(q.beta);
  if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("ancilla qubit " + std::to_string(j + 1) + " is not normalized");
  }
}

}  // namespace

AncillaSpec AncillaSpec::uniform(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("AncillaSpec::uniform: nu must lie in [0,1]");
  AncillaSpec s;
  s.mode_ = Mode::Uniform;
  s.nu_ = nu;
  return s;
}

AncillaSpec AncillaSpec::per_path(std::vector<QubitParams> params) {
  for (std::size_t j = 0; j < params.size(); ++j) check_normalized(params[j], j);
  AncillaSpec s;
  s.mode_ = Mode::PerPath;
  s.params_ = std::move(params);
  return s;
}

std::vector<QubitParams> AncillaSpec::qubit_params(int n_paths) const {
  if (mode_ == Mode::Uniform) {
    return std::vector<QubitParams>(static_cast<std::size_t>(n_paths),
                                    QubitParams{Complex{std::sqrt(nu_), 0.0}, Complex{std::sqrt(1.0 - nu_), 0.0}});
  }
  if (static_cast<int>(params_.size()) != n_paths) {
    throw std::invalid_argument("AncillaSpec: expected " + std::to_string(n_paths) + " qubit parameter pairs");
  }
  return params_;
}

OverlapMatrix::OverlapMatrix(ComplexMatrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) throw std::invalid_argument("OverlapMatrix: not square");
  for (Eigen::Index k = 0; k < g_.rows(); ++k) {
    if (std::abs(g_(k, k) - Complex{1.0, 0.0}) > 1e-12) throw std::invalid_argument("OverlapMatrix: diagonal must be 1");
    for (Eigen::Index j = 0; j < k; ++j) {
      if (std::abs(g_(k, j) - std::conj(g_(j, k))) > 1e-12) throw std::invalid_argument("OverlapMatrix: not Hermitian");
    }
  }
}

double PathDensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

OverlapMatrix overlaps(const AncillaSpec& spec, int n_paths) {
  if (n_paths < 1) throw std::invalid_argument("overlaps: n_paths must be >= 1");
  ComplexMatrix g(n_paths, n_paths);
  if (spec.mode() == AncillaSpec::Mode::Uniform) {
    g.setConstant(Complex{spec.nu(), 0.0});
    g.diagonal().setOnes();
    return OverlapMatrix(std::move(g));
  }
  const auto q = spec.qubit_params(n_paths);
  for (int k = 0; k < n_paths; ++k) {
    for (int j = 0; j < n_paths; ++j) {
      g(k, j) = k == j ? Complex{1.0, 0.0} : std::conj(q[k].alpha) * q[j].alpha;
    }
  }
  return OverlapMatrix(std::move(g));
}

PathDensityMatrix rho_int(const PhasePattern& pattern, const OverlapMatrix& g) {
  const int n = pattern.n_paths();
  if (g.size() != n) throw std::invalid_argument("rho_int: overlap matrix size does not match pattern");
  const double scale = 1.0 / (n + 1);
  ComplexMatrix rho(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // s_j conj(s_k) = e^{i(phi_j - phi_k)} for real signs.
      rho(j, k) = scale * static_cast<double>(pattern.sign(j + 1) * pattern.sign(k + 1)) * g(k, j);
    }
  }
  return PathDensityMatrix(std::move(rho));
}

double coherence_l1(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("coherence_l1: matrix must be square");
  double total = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (i != j) total += std::abs(rho(i, j));
    }
  }
  return total;
}

double compute_X(const OverlapMatrix& g) {
  const int n = g.size();
  return coherence_l1(g.matrix()) / (static_cast<double>(n + 1) * (n + 1));
}

double exit_probability(const PhasePattern& pattern, const OverlapMatrix& g) {
  const int n = pattern.n_paths();
  if (g.size() != n) throw std::invalid_argument("exit_probability: overlap matrix size does not match pattern");
  Complex total{};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      total += static_cast<double>(pattern.sign(j + 1) * pattern.sign(k + 1)) * g(k, j);
    }
  }
  total /= static_cast<double>(n + 1) * (n + 1);
  if (std::abs(total.imag()) > 1e-10) throw TheoryViolation("exit_probability: imaginary part, overlap matrix not Hermitian");
  double p = total.real();
  if (p < -1e-12 || p > 1.0 + 1e-12) throw TheoryViolation("exit_probability: value outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

double exit_probability_uniform(const PhasePattern& pattern, double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("exit_probability_uniform: nu must lie in [0,1]");
  const double n = pattern.n_paths();
  const double s = pattern.sum();
  return ((1.0 - nu) * n + nu * s * s) / ((n + 1) * (n + 1));
}

ExitBound exit_probability_bound(const PhasePattern& pattern, const OverlapMatrix& g) {
  const int n = pattern.n_paths();
  ExitBound r{exit_probability(pattern, g), n / (static_cast<double>(n + 1) * (n + 1)) + compute_X(g)};
  if (r.probability > r.bound + 1e-12) throw TheoryViolation("exit_probability_bound: coherence bound violated");
  return r;
}

// ---------------------------------------------------------------------------
// Joint particle (x) ancilla evolution.

namespace {

using AncillaVector = std::vector<Complex>;  // 2^N amplitudes, bit j-1 = qubit j

// Apply [[a, -conj(b)], [b, conj(a)]] to one qubit; maps |0> -> a|0> + b|1>.
void apply_rotation(AncillaVector& v, int qubit, const QubitParams& q) {
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const Complex v0 = v[i];
    const Complex v1 = v[i | bit];
    v[i] = q.alpha * v0 - std::conj(q.beta) * v1;
    v[i | bit] = q.beta * v0 + std::conj(q.alpha) * v1;
  }
}

}  // namespace

double full_tensor_oracle(const PhasePattern& pattern, const AncillaSpec& spec, int tail_depth) {
  const int n = pattern.n_paths();
  if (n > kMaxOraclePaths) {
    throw std::invalid_argument("full_tensor_oracle: N too large (max " + std::to_string(kMaxOraclePaths) + ")");
  }
  const auto qubits = spec.qubit_params(n);
  const Graph graph(n, tail_depth);
  const std::size_t dim = std::size_t{1} << n;

  std::map<EdgeState, AncillaVector> joint;
  joint[start_edge()] = AncillaVector(dim);
  joint[start_edge()][0] = 1.0;

  for (int t = 0; t < 3; ++t) {
    std::map<EdgeState, AncillaVector> next;
    for (const auto& [edge, anc] : joint) {
      // Particle transitions from this edge; path vertices also rotate their qubit.
      const WalkState moved = step(graph, WalkState::basis(edge), pattern);
      AncillaVector record = anc;
      const Vertex& v = edge.to;
      if (v.kind == Vertex::Kind::Site && v.site >= 1 && v.site <= n) {
        apply_rotation(record, v.site - 1, qubits[static_cast<std::size_t>(v.site - 1)]);
      }
      for (const auto& [out_edge, coeff] : moved.amplitudes()) {
        auto& target = next[out_edge];
        if (target.empty()) target.assign(dim, Complex{});
        for (std::size_t i = 0; i < dim; ++i) target[i] += coeff * record[i];
      }
    }
    joint = std::move(next);
  }

  auto it = joint.find(exit_edge(n));
  if (it == joint.end()) return 0.0;
  double p = 0.0;
  for (const Complex& a : it->second) p += std::norm(a);
  return p;
}

}  // namespace djwalk

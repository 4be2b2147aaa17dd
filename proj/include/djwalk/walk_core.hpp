// Scattering quantum walk on the multi-path interferometer graph.
//
// The particle lives on directed edges. Vertices A and B are Fourier
// vertices over their N+1 incident edges; path vertices 1..N carry a phase
// shifter with sign s_j = exp(i phi_j), phi_j in {0, pi}; tail vertices
// transmit. Tails are truncated at a finite depth, and any amplitude that
// would leave the truncation raises BoundaryError.
#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace djwalk {

using Complex = std::complex<double>;

/// Vertex label: the two Fourier vertices or an integer site.
/// Sites <= 0 form the left tail, 1..N are the path vertices and
/// N+1.. form the right tail.
struct Vertex {
  enum class Kind : std::uint8_t { A, B, Site };
  Kind kind = Kind::Site;
  int site = 0;

  static constexpr Vertex a() { return {Kind::A, 0}; }
  static constexpr Vertex b() { return {Kind::B, 0}; }
  static constexpr Vertex at(int s) { return {Kind::Site, s}; }

  auto operator<=>(const Vertex&) const = default;
  std::string to_string() const;
};

/// |from, to>: particle on the edge {from, to} moving toward `to`.
struct EdgeState {
  Vertex from;
  Vertex to;
  auto operator<=>(const EdgeState&) const = default;
  std::string to_string() const;
};

class BoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated interferometer graph.
class Graph {
 public:
  Graph(int n_paths, int tail_depth = 4);

  int n_paths() const { return n_paths_; }
  int tail_depth() const { return tail_depth_; }

  /// Every directed edge state, in a fixed canonical order.
  const std::vector<EdgeState>& edge_states() const { return edges_; }
  bool contains(const EdgeState& e) const;

  /// Neighbours of v in the truncated graph.
  std::vector<Vertex> neighbours(const Vertex& v) const;
  bool has_vertex(const Vertex& v) const;

  /// Last vertices of each truncated tail (degree one).
  Vertex left_end() const { return Vertex::at(-(tail_depth_ - 1)); }
  Vertex right_end() const { return Vertex::at(n_paths_ + tail_depth_); }

  /// Minimum number of hops between two undirected edges
  /// (edges sharing a vertex are one hop apart).
  int edge_distance(const EdgeState& x, const EdgeState& y) const;

 private:
  int n_paths_;
  int tail_depth_;
  std::vector<EdgeState> edges_;
};

Graph build_graph(int n_paths, int tail_depth = 4);

/// Promise class of a phase pattern.
struct Promise {
  enum class Kind : std::uint8_t { ConstantPlus, ConstantMinus, Balanced, EpsilonBiased };
  Kind kind = Kind::Balanced;
  double epsilon = 0.0;  // EpsilonBiased only

  static Promise constant(int sign);
  static Promise balanced() { return {Kind::Balanced, 0.0}; }
  static Promise epsilon_biased(double eps) { return {Kind::EpsilonBiased, eps}; }

  bool is_constant() const { return kind == Kind::ConstantPlus || kind == Kind::ConstantMinus; }
  std::string to_string() const;
};

/// Phase-shifter signs s_j in {+1,-1} together with their promise class.
/// The constructor validates the composition against the promise.
class PhasePattern {
 public:
  PhasePattern(std::vector<int> signs, Promise promise);

  /// Canonical arrangements: constant, first half +1 (balanced), or
  /// first (1+eps)N/2 entries +1 (epsilon-biased).
  static PhasePattern constant(int n_paths, int sign = +1);
  static PhasePattern balanced(int n_paths);
  static PhasePattern epsilon_biased(int n_paths, double epsilon);

  /// Number of +1 entries required for an epsilon-biased pattern of length n.
  /// Throws if (1+eps)n/2 is not an integer.
  static int epsilon_plus_count(int n_paths, double epsilon);

  int n_paths() const { return static_cast<int>(signs_.size()); }
  std::span<const int> signs() const { return signs_; }
  int sign(int path) const { return signs_.at(static_cast<std::size_t>(path - 1)); }  // path in 1..N
  const Promise& promise() const { return promise_; }
  int sum() const;

 private:
  std::vector<int> signs_;
  Promise promise_;
};

/// Sparse amplitude map over edge states.
class WalkState {
 public:
  using Map = std::map<EdgeState, Complex>;

  WalkState() = default;
  explicit WalkState(Map amplitudes) : amps_(std::move(amplitudes)) {}
  static WalkState basis(const EdgeState& e) { return WalkState(Map{{e, Complex{1.0, 0.0}}}); }

  Complex amplitude(const EdgeState& e) const;
  double probability(const EdgeState& e) const { return std::norm(amplitude(e)); }
  double norm_squared() const;
  const Map& amplitudes() const { return amps_; }
  std::size_t support_size() const { return amps_.size(); }

 private:
  Map amps_;
};

/// Initial edge |0,A>.
inline EdgeState start_edge() { return {Vertex::at(0), Vertex::a()}; }
/// Exit edge |B,N+1>.
inline EdgeState exit_edge(int n_paths) { return {Vertex::b(), Vertex::at(n_paths + 1)}; }

/// One application of the walk unitary. Throws BoundaryError if amplitude
/// reaches the end of a truncated tail, std::invalid_argument if the state
/// or pattern do not fit the graph.
WalkState step(const Graph& graph, const WalkState& state, const PhasePattern& pattern);
WalkState step(const WalkState& state, const PhasePattern& pattern, int tail_depth = 4);

/// Evolve |0,A> for `steps` steps. Requires steps <= tail_depth - 1.
WalkState run_walk(const PhasePattern& pattern, int steps, int tail_depth = 4);

/// |(1/(N+1)) sum_j s_j|^2, the coherent probability of |B,N+1> after 3 steps.
double exit_probability_ideal(const PhasePattern& pattern);

}  // namespace djwalk

#include "djwalk/walk_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace djwalk {

std::string Vertex::to_string() const {
  switch (kind) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::Site: return std::to_string(site);
  }
  return "?";
}

std::string EdgeState::to_string() const {
  return "|" + from.to_string() + "," + to.to_string() + ">";
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n_paths, int tail_depth) : n_paths_(n_paths), tail_depth_(tail_depth) {
  if (n_paths < 2) throw std::invalid_argument("build_graph: n_paths must be >= 2");
  if (tail_depth < 4) throw std::invalid_argument("build_graph: tail_depth must be >= 4");

  std::vector<std::pair<Vertex, Vertex>> undirected;
  undirected.emplace_back(Vertex::a(), Vertex::at(0));
  for (int k = 0; k < tail_depth - 1; ++k) undirected.emplace_back(Vertex::at(-k), Vertex::at(-k - 1));
  for (int j = 1; j <= n_paths; ++j) {
    undirected.emplace_back(Vertex::a(), Vertex::at(j));
    undirected.emplace_back(Vertex::at(j), Vertex::b());
  }
  undirected.emplace_back(Vertex::b(), Vertex::at(n_paths + 1));
  for (int k = 1; k < tail_depth; ++k) undirected.emplace_back(Vertex::at(n_paths + k), Vertex::at(n_paths + k + 1));

  edges_.reserve(2 * undirected.size());
  for (const auto& [u, v] : undirected) {
    edges_.push_back({u, v});
    edges_.push_back({v, u});
  }
}

Graph build_graph(int n_paths, int tail_depth) { return Graph(n_paths, tail_depth); }

bool Graph::has_vertex(const Vertex& v) const {
  if (v.kind != Vertex::Kind::Site) return true;
  return v.site >= -(tail_depth_ - 1) && v.site <= n_paths_ + tail_depth_;
}

bool Graph::contains(const EdgeState& e) const {
  if (!has_vertex(e.from) || !has_vertex(e.to)) return false;
  const auto nb = neighbours(e.from);
  return std::find(nb.begin(), nb.end(), e.to) != nb.end();
}

std::vector<Vertex> Graph::neighbours(const Vertex& v) const {
  std::vector<Vertex> out;
  const int n = n_paths_;
  switch (v.kind) {
    case Vertex::Kind::A:
      out.push_back(Vertex::at(0));
      for (int j = 1; j <= n; ++j) out.push_back(Vertex::at(j));
      return out;
    case Vertex::Kind::B:
      for (int j = 1; j <= n; ++j) out.push_back(Vertex::at(j));
      out.push_back(Vertex::at(n + 1));
      return out;
    case Vertex::Kind::Site:
      break;
  }
  const int s = v.site;
  if (!has_vertex(v)) return out;
  if (s >= 1 && s <= n) return {Vertex::a(), Vertex::b()};
  if (s == 0) {
    out.push_back(Vertex::a());
  } else if (s < 0) {
    out.push_back(Vertex::at(s + 1));
  } else if (s == n + 1) {
    out.push_back(Vertex::b());
  } else {
    out.push_back(Vertex::at(s - 1));
  }
  if (s <= 0 && s > left_end().site) out.push_back(Vertex::at(s - 1));
  if (s > n && s < right_end().site) out.push_back(Vertex::at(s + 1));
  return out;
}

int Graph::edge_distance(const EdgeState& x, const EdgeState& y) const {
  using Undirected = std::pair<Vertex, Vertex>;
  auto canon = [](const EdgeState& e) {
    return e.from < e.to ? Undirected{e.from, e.to} : Undirected{e.to, e.from};
  };
  const Undirected target = canon(y);
  std::set<Undirected> seen{canon(x)};
  std::deque<std::pair<Undirected, int>> queue{{canon(x), 0}};
  while (!queue.empty()) {
    auto [edge, dist] = queue.front();
    queue.pop_front();
    if (edge == target) return dist;
    for (const Vertex& end : {edge.first, edge.second}) {
      for (const Vertex& nb : neighbours(end)) {
        Undirected next = end < nb ? Undirected{end, nb} : Undirected{nb, end};
        if (seen.insert(next).second) queue.emplace_back(next, dist + 1);
      }
    }
  }
  throw std::invalid_argument("edge_distance: edge not in graph");
}

// ---------------------------------------------------------------------------
// Promise / PhasePattern

Promise Promise::constant(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("Promise::constant: sign must be +1 or -1");
  return {sign > 0 ? Kind::ConstantPlus : Kind::ConstantMinus, 0.0};
}

std::string Promise::to_string() const {
  switch (kind) {
    case Kind::ConstantPlus: return "constant(+1)";
    case Kind::ConstantMinus: return "constant(-1)";
    case Kind::Balanced: return "balanced";
    case Kind::EpsilonBiased: {
      std::ostringstream os;
      os << "epsilon(" << epsilon << ")";
      return os.str();
    }
  }
  return "?";
}

int PhasePattern::epsilon_plus_count(int n_paths, double epsilon) {
  if (n_paths < 1) throw std::invalid_argument("epsilon pattern: n_paths must be >= 1");
  if (!(epsilon > -1.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon pattern: epsilon must lie in (-1, 1)");
  const double plus = (1.0 + epsilon) * n_paths / 2.0;
  const double rounded = std::round(plus);
  if (std::abs(plus - rounded) > 1e-9) {
    throw std::invalid_argument("epsilon pattern: (1+eps)N/2 must be an integer");
  }
  return static_cast<int>(rounded);
}

PhasePattern::PhasePattern(std::vector<int> signs, Promise promise)
    : signs_(std::move(signs)), promise_(promise) {
  const int n = n_paths();
  if (n < 1) throw std::invalid_argument("PhasePattern: empty pattern");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("PhasePattern: signs must be +1 or -1");
  }
  const int total = sum();
  switch (promise_.kind) {
    case Promise::Kind::ConstantPlus:
      if (total != n) throw std::invalid_argument("PhasePattern: constant(+1) requires all +1");
      break;
    case Promise::Kind::ConstantMinus:
      if (total != -n) throw std::invalid_argument("PhasePattern: constant(-1) requires all -1");
      break;
    case Promise::Kind::Balanced:
      if (n % 2 != 0) throw std::invalid_argument("PhasePattern: balanced requires even N");
      if (total != 0) throw std::invalid_argument("PhasePattern: balanced requires N/2 entries +1");
      break;
    case Promise::Kind::EpsilonBiased: {
      const int plus = epsilon_plus_count(n, promise_.epsilon);
      if ((total + n) / 2 != plus) throw std::invalid_argument("PhasePattern: sum of signs must equal eps*N");
      break;
    }
  }
}

PhasePattern PhasePattern::constant(int n_paths, int sign) {
  if (n_paths < 1) throw std::invalid_argument("PhasePattern: n_paths must be >= 1");
  return PhasePattern(std::vector<int>(static_cast<std::size_t>(n_paths), sign), Promise::constant(sign));
}

PhasePattern PhasePattern::balanced(int n_paths) {
  if (n_paths < 2 || n_paths % 2 != 0) throw std::invalid_argument("PhasePattern: balanced requires even N >= 2");
  std::vector<int> s(static_cast<std::size_t>(n_paths), -1);
  std::fill(s.begin(), s.begin() + n_paths / 2, 1);
  return PhasePattern(std::move(s), Promise::balanced());
}

PhasePattern PhasePattern::epsilon_biased(int n_paths, double epsilon) {
  const int plus = epsilon_plus_count(n_paths, epsilon);
  std::vector<int> s(static_cast<std::size_t>(n_paths), -1);
  std::fill(s.begin(), s.begin() + plus, 1);
  return PhasePattern(std::move(s), Promise::epsilon_biased(epsilon));
}

int PhasePattern::sum() const { return std::accumulate(signs_.begin(), signs_.end(), 0); }

// ---------------------------------------------------------------------------
// WalkState

Complex WalkState::amplitude(const EdgeState& e) const {
  auto it = amps_.find(e);
  return it == amps_.end() ? Complex{} : it->second;
}

double WalkState::norm_squared() const {
  double total = 0.0;
  for (const auto& [e, a] : amps_) total += std::norm(a);
  return total;
}

// ---------------------------------------------------------------------------
// Evolution

namespace {

Complex fourier_phase(long long j, long long k, int dim) {
  const long long r = (j * k) % dim;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / dim;
  return {std::cos(angle), std::sin(angle)};
}

// Scatter `amp` arriving on edge `in` into `out`.
void scatter(const Graph& g, const PhasePattern& pattern, const EdgeState& in, Complex amp, WalkState::Map& out) {
  const int n = g.n_paths();
  const int dim = n + 1;
  const Vertex& v = in.to;
  const Vertex& u = in.from;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));

  if (v.kind == Vertex::Kind::A) {
    const int j = u.site;  // 0 for the tail edge, 1..N for the paths
    for (int k = 0; k <= n; ++k) out[{Vertex::a(), Vertex::at(k)}] += amp * norm * fourier_phase(j, k, dim);
    return;
  }
  if (v.kind == Vertex::Kind::B) {
    const int j = u.site;  // 1..N+1
    for (int k = 1; k <= n + 1; ++k) out[{Vertex::b(), Vertex::at(k)}] += amp * norm * fourier_phase(j, k, dim);
    return;
  }
  const int s = v.site;
  if (s >= 1 && s <= n) {
    const double phase = pattern.sign(s);
    const Vertex next = u.kind == Vertex::Kind::A ? Vertex::b() : Vertex::a();
    out[{v, next}] += amp * phase;
    return;
  }
  const auto nb = g.neighbours(v);
  if (nb.size() < 2) {
    throw BoundaryError("walk step: amplitude on " + in.to_string() + " would leave the truncated tail; increase tail_depth");
  }
  const Vertex& next = nb[0] == u ? nb[1] : nb[0];
  out[{v, next}] += amp;
}

}  // namespace

WalkState step(const Graph& graph, const WalkState& state, const PhasePattern& pattern) {
  if (pattern.n_paths() != graph.n_paths()) throw std::invalid_argument("step: pattern size does not match graph");
  WalkState::Map out;
  for (const auto& [edge, amp] : state.amplitudes()) {
    if (amp == Complex{}) continue;
    if (!graph.contains(edge)) throw std::invalid_argument("step: edge " + edge.to_string() + " is not in the graph");
    scatter(graph, pattern, edge, amp, out);
  }
  return WalkState(std::move(out));
}

WalkState step(const WalkState& state, const PhasePattern& pattern, int tail_depth) {
  return step(Graph(pattern.n_paths(), tail_depth), state, pattern);
}

WalkState run_walk(const PhasePattern& pattern, int steps, int tail_depth) {
  if (steps < 0) throw std::invalid_argument("run_walk: steps must be non-negative");
  if (steps > tail_depth - 1) throw std::invalid_argument("run_walk: steps must be <= tail_depth - 1");
  const Graph graph(pattern.n_paths(), tail_depth);
  WalkState state = WalkState::basis(start_edge());
  for (int t = 0; t < steps; ++t) state = step(graph, state, pattern);
  return state;
}

double exit_probability_ideal(const PhasePattern& pattern) {
  const double amp = static_cast<double>(pattern.sum()) / (pattern.n_paths() + 1);
  return amp * amp;
}

}  // namespace djwalk

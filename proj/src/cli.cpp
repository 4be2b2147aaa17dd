#include "djwalk/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "djwalk/decision_dj.hpp"
#include "djwalk/decoherence.hpp"
#include "djwalk/ensemble_stats.hpp"
#include "djwalk/epsilon_variant.hpp"

namespace djwalk::cli {

namespace {

constexpr double kStatevectorTol = 1e-12;
constexpr double kOracleTol = 1e-10;
constexpr double kNormalizationTol = 1e-12;

std::string bool_str(bool b) { return b ? "true" : "false"; }

OutputTable make_table(const std::string& command, std::vector<std::string> columns) {
  OutputTable t(std::move(columns));
  t.set_meta("command", command);
  t.set_meta("version", kVersion);
  return t;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

long long to_int(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

PhasePattern walk_pattern(const WalkOptions& o) {
  if (o.promise == "constant") return PhasePattern::constant(o.n, o.sign);
  if (o.promise == "balanced") return PhasePattern::balanced(o.n);
  if (o.promise == "epsilon") return PhasePattern::epsilon_biased(o.n, o.epsilon);
  throw std::invalid_argument("unknown promise '" + o.promise + "'");
}

LikelihoodMode parse_likelihood(const std::string& s) {
  if (s == "idealized") return LikelihoodMode::Idealized;
  if (s == "exact-n") return LikelihoodMode::ExactN;
  throw std::invalid_argument("unknown likelihood mode '" + s + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Ranges

std::vector<long long> parse_int_range(const std::string& spec) {
  if (spec.find(',') != std::string::npos) {
    std::vector<long long> out;
    for (const auto& p : split(spec, ',')) out.push_back(to_int(p));
    return out;
  }
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {to_int(parts[0])};
  if (parts.size() > 3) throw std::invalid_argument("bad range '" + spec + "'");
  const long long lo = to_int(parts[0]);
  const long long hi = to_int(parts[1]);
  const long long stepv = parts.size() == 3 ? to_int(parts[2]) : 1;
  if (stepv <= 0 || hi < lo) throw std::invalid_argument("bad range '" + spec + "'");
  std::vector<long long> out;
  for (long long v = lo; v <= hi; v += stepv) out.push_back(v);
  return out;
}

std::vector<double> parse_real_range(const std::string& spec) {
  if (spec.find(',') != std::string::npos) {
    std::vector<double> out;
    for (const auto& p : split(spec, ',')) out.push_back(to_real(p));
    return out;
  }
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {to_real(parts[0])};
  if (parts.size() != 3) throw std::invalid_argument("real range needs start:stop:step, got '" + spec + "'");
  const double lo = to_real(parts[0]);
  const double hi = to_real(parts[1]);
  const double stepv = to_real(parts[2]);
  if (!(stepv > 0.0) || hi < lo) throw std::invalid_argument("bad range '" + spec + "'");
  const auto count = static_cast<long long>(std::floor((hi - lo) / stepv + 1e-9)) + 1;
  std::vector<double> out;
  for (long long i = 0; i < count; ++i) {
    // Snap to 12 decimals so 0.1-steps print as 0.3, not 0.30000000000000004.
    out.push_back(std::round((lo + static_cast<double>(i) * stepv) * 1e12) / 1e12);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

CommandResult cmd_walk(const WalkOptions& o) {
  const PhasePattern pattern = walk_pattern(o);
  const OverlapMatrix g = overlaps(AncillaSpec::uniform(o.nu), o.n);

  OutputTable t = make_table("walk", {"n", "promise", "epsilon", "nu", "exit_probability", "bound", "bound_holds",
                                      "coherence_l1", "X", "ideal_analytic", "ideal_statevector",
                                      "statevector_agrees", "oracle", "oracle_agrees"});
  t.set_meta("n", std::to_string(o.n));
  t.set_meta("promise", o.promise);
  t.set_meta("sign", std::to_string(o.sign));
  t.set_meta("epsilon", format_double(o.epsilon));
  t.set_meta("nu", format_double(o.nu));
  t.set_meta("exact-oracle", bool_str(o.exact_oracle));
  t.set_meta("tail-depth", std::to_string(o.tail_depth));

  const double exit = exit_probability(pattern, g);
  const double bound = o.n / (static_cast<double>(o.n + 1) * (o.n + 1)) + compute_X(g);
  const bool bound_holds = exit <= bound + 1e-12;
  const double ideal = exit_probability_ideal(pattern);
  const double statevector = run_walk(pattern, 3, o.tail_depth).probability(exit_edge(o.n));
  const bool sv_ok = std::abs(ideal - statevector) <= kStatevectorTol;

  Cell oracle_cell;
  Cell oracle_ok_cell;
  bool oracle_ok = true;
  if (o.exact_oracle) {
    const double oracle = full_tensor_oracle(pattern, AncillaSpec::uniform(o.nu), o.tail_depth);
    oracle_ok = std::abs(oracle - exit) <= kOracleTol;
    oracle_cell = oracle;
    oracle_ok_cell = oracle_ok;
  }

  t.add_row({static_cast<long long>(o.n), pattern.promise().to_string(), o.epsilon, o.nu, exit, bound, bound_holds,
             coherence_l1(rho_int(pattern, g)), compute_X(g), ideal, statevector, sv_ok, oracle_cell,
             oracle_ok_cell});
  return {std::move(t), bound_holds && sv_ok && oracle_ok};
}

CommandResult cmd_decide(const DecideOptions& o) {
  const LikelihoodMode mode = parse_likelihood(o.mode);
  OutputTable t = make_table("decide", {"m", "nu", "classical_error", "quantum_error", "nu_threshold",
                                        "quantum_better", "posterior_constant_all_zero"});
  t.set_meta("m-range", o.m_range);
  t.set_meta("nu-range", o.nu_range);
  t.set_meta("mode", o.mode);
  t.set_meta("n", std::to_string(o.n));

  for (long long m : parse_int_range(o.m_range)) {
    const int mi = static_cast<int>(m);
    for (double nu : parse_real_range(o.nu_range)) {
      const double ce = classical_error(mi);
      const QuantumLikelihood lik = QuantumLikelihood::make(nu, mode, o.n);
      const double qe = quantum_error(mi, lik);
      t.add_row({m, nu, ce, qe, coherence_threshold(mi), qe < ce, quantum_posterior_all_zero(mi, lik).constant});
    }
  }
  return {std::move(t), true};
}

CommandResult cmd_epsilon(const EpsilonOptions& o) {
  std::vector<std::string> cols{"m", "epsilon", "nu", "quantum_miss", "quantum_miss_exp", "chernoff_false_eps",
                                "chernoff_false_bal", "approx_bound", "lowest_order"};
  if (o.exact_tails) {
    for (const char* c : {"exact_false_eps", "exact_false_bal", "exact_le_bound"}) cols.emplace_back(c);
  }
  OutputTable t = make_table("epsilon", std::move(cols));
  t.set_meta("epsilon", format_double(o.epsilon));
  t.set_meta("m-range", o.m_range);
  t.set_meta("nu", format_double(o.nu));
  t.set_meta("exact-tails", bool_str(o.exact_tails));

  bool ok = true;
  for (long long m : parse_int_range(o.m_range)) {
    const int mi = static_cast<int>(m);
    const MissProbability miss = quantum_miss_probability(mi, o.epsilon, o.nu);
    const ClassicalBounds b = classical_error_bounds(mi, o.epsilon);
    std::vector<Cell> row{m, o.epsilon, o.nu, miss.exact, miss.exponential, b.false_eps, b.false_bal,
                          b.stated_approx, b.lowest_order};
    if (o.exact_tails) {
      const ExactTails e = exact_tail_probabilities(mi, o.epsilon);
      const bool dominated = e.false_eps <= b.false_eps + 1e-12 && e.false_bal <= b.false_bal + 1e-12;
      ok = ok && dominated;
      row.insert(row.end(), {e.false_eps, e.false_bal, dominated});
    }
    t.add_row(std::move(row));
  }
  return {std::move(t), ok};
}

CommandResult cmd_ensemble(const EnsembleOptions& o) {
  OutputTable t = make_table("ensemble", {"n", "p", "m", "gap", "gap_ratio", "decreasing", "sqrt_bound",
                                          "normalization", "normalized"});
  t.set_meta("n-list", o.n_list);
  t.set_meta("p", format_double(o.p));
  t.set_meta("m", std::to_string(o.m));

  bool ok = true;
  std::optional<double> previous;
  for (long long n : parse_int_range(o.n_list)) {
    const double gap = convergence_gap(n, o.p, o.m);
    const EnsembleParams base = EnsembleParams::from_fraction(n, o.p, o.m, 0);
    double total = 0.0;
    if (n <= kExactEnsembleLimit) {
      total = static_cast<double>(hypergeometric_total_exact(n, base.n_plus, o.m));
    } else {
      for (long long k = 0; k <= o.m; ++k) total += hypergeometric_prob({n, base.n_plus, o.m, k});
    }
    const bool normalized = std::abs(total - 1.0) <= kNormalizationTol;
    ok = ok && normalized;
    Cell ratio;
    Cell decreasing;
    if (previous) {
      ratio = *previous > 0.0 ? gap / *previous : std::nan("");
      decreasing = gap < *previous;
    }
    t.add_row({n, o.p, o.m, gap, ratio, decreasing, static_cast<double>(o.m) / std::sqrt(static_cast<double>(n)),
               total, normalized});
    previous = gap;
  }
  return {std::move(t), ok};
}

TrialConfig to_trial_config(const McOptions& o) {
  TrialConfig c;
  if (o.strategy == "classical-dj") {
    c.strategy = McStrategy::ClassicalDJ;
  } else if (o.strategy == "quantum-dj") {
    c.strategy = McStrategy::QuantumDJ;
  } else if (o.strategy == "classical-eps") {
    c.strategy = McStrategy::ClassicalEps;
  } else if (o.strategy == "quantum-eps") {
    c.strategy = McStrategy::QuantumEps;
  } else {
    throw std::invalid_argument("unknown strategy '" + o.strategy + "'");
  }
  if (o.truth == "balanced") {
    c.truth = EpsTruth::Balanced;
  } else if (o.truth == "epsilon") {
    c.truth = EpsTruth::Epsilon;
  } else {
    throw std::invalid_argument("unknown truth '" + o.truth + "'");
  }
  if (o.sampling == "iid") {
    c.sampling = SamplingModel::IID;
  } else if (o.sampling == "hypergeom") {
    c.sampling = SamplingModel::WithoutReplacement;
  } else {
    throw std::invalid_argument("unknown sampling mode '" + o.sampling + "'");
  }
  c.likelihood = parse_likelihood(o.likelihood);
  c.n_paths = o.n;
  c.m = o.m;
  c.nu = o.nu;
  c.epsilon = o.epsilon;
  c.experiments = o.experiments;
  c.seed = o.seed;
  c.validate();
  return c;
}

CommandResult cmd_mc(const McOptions& o) {
  const TrialConfig c = to_trial_config(o);
  const MCResult r = o.serial ? run_experiment_serial(c) : run_experiment(c);

  OutputTable t = make_table("mc", {"strategy", "n", "m", "nu", "epsilon", "truth", "sampling", "likelihood",
                                    "experiments", "seed", "errors", "empirical_error", "std_error",
                                    "analytic_error", "z_score"});
  t.set_meta("strategy", o.strategy);
  t.set_meta("n", std::to_string(o.n));
  t.set_meta("m", std::to_string(o.m));
  t.set_meta("nu", format_double(o.nu));
  t.set_meta("epsilon", format_double(o.epsilon));
  t.set_meta("truth", o.truth);
  t.set_meta("experiments", std::to_string(o.experiments));
  t.set_meta("seed", std::to_string(o.seed));
  t.set_meta("sampling", o.sampling);
  t.set_meta("likelihood", o.likelihood);

  t.add_row({o.strategy, static_cast<long long>(o.n), static_cast<long long>(o.m), o.nu, o.epsilon, o.truth,
             o.sampling, o.likelihood, r.experiments, std::to_string(o.seed), r.errors, r.empirical_error,
             r.std_error, r.analytic_error, r.z_score});
  return {std::move(t), true};
}

// ---------------------------------------------------------------------------
// Argument handling

std::vector<std::string> metadata_to_args(const Metadata& meta) {
  std::vector<std::string> args;
  for (const auto& [k, v] : meta) {
    if (k == "command") args.insert(args.begin(), v);
  }
  if (args.empty()) throw std::invalid_argument("metadata_to_args: no command recorded");
  for (const auto& [k, v] : meta) {
    if (k == "command" || k == "version") continue;
    args.push_back("--" + k + "=" + v);
  }
  return args;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence and decision errors of the quantum-walk Deutsch-Jozsa problem", "djwalk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  bool strict = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Write the table to this path instead of stdout");
    sub->add_flag("--strict", strict, "Require explicit seeds for randomized commands");
  };

  WalkOptions wo;
  auto* walk = app.add_subcommand("walk", "Exit probability of one phase pattern");
  walk->add_option("--n", wo.n, "Number of paths")->check(CLI::Range(2, 1 << 20));
  walk->add_option("--promise", wo.promise)->check(CLI::IsMember({"constant", "balanced", "epsilon"}));
  walk->add_option("--sign", wo.sign, "Sign of a constant pattern")->check(CLI::IsMember({1, -1}));
  walk->add_option("--epsilon", wo.epsilon, "Bias of an epsilon pattern");
  walk->add_option("--nu", wo.nu, "Uniform ancilla overlap")->check(CLI::Range(0.0, 1.0));
  walk->add_flag("--exact-oracle", wo.exact_oracle, "Also run the joint particle-ancilla simulation (N <= 12)");
  walk->add_option("--tail-depth", wo.tail_depth)->check(CLI::Range(4, 1 << 20));
  add_common(walk);

  DecideOptions dopt;
  auto* decide = app.add_subcommand("decide", "Classical vs quantum error for m trials");
  decide->add_option("--m-range", dopt.m_range);
  decide->add_option("--nu-range", dopt.nu_range);
  decide->add_option("--mode", dopt.mode)->check(CLI::IsMember({"idealized", "exact-n"}));
  decide->add_option("--n", dopt.n, "Number of paths (exact-n mode)");
  add_common(decide);

  EpsilonOptions eo;
  auto* eps = app.add_subcommand("epsilon", "Balanced vs epsilon-biased errors and bounds");
  eps->add_option("--epsilon", eo.epsilon)->required();
  eps->add_option("--m-range", eo.m_range);
  eps->add_option("--nu", eo.nu)->check(CLI::Range(0.0, 1.0));
  eps->add_flag("--exact-tails", eo.exact_tails, "Add exact binomial tails and dominance check");
  add_common(eps);

  EnsembleOptions en;
  auto* ens = app.add_subcommand("ensemble", "Hypergeometric vs binomial window law");
  ens->add_option("--n-list", en.n_list);
  ens->add_option("--p", en.p);
  ens->add_option("--m", en.m);
  add_common(ens);

  McOptions mo;
  auto* mc = app.add_subcommand("mc", "Monte Carlo error estimate");
  mc->add_option("--strategy", mo.strategy)
      ->check(CLI::IsMember({"classical-dj", "quantum-dj", "classical-eps", "quantum-eps"}));
  mc->add_option("--n", mo.n);
  mc->add_option("--m", mo.m);
  mc->add_option("--nu", mo.nu)->check(CLI::Range(0.0, 1.0));
  mc->add_option("--epsilon", mo.epsilon);
  mc->add_option("--truth", mo.truth)->check(CLI::IsMember({"balanced", "epsilon"}));
  mc->add_option("--experiments", mo.experiments);
  auto* seed_opt = mc->add_option("--seed", mo.seed);
  mc->add_option("--sampling", mo.sampling)->check(CLI::IsMember({"iid", "hypergeom"}));
  mc->add_option("--likelihood", mo.likelihood)->check(CLI::IsMember({"idealized", "exact-n"}));
  mc->add_flag("--serial", mo.serial, "Use the single-threaded reference loop");
  add_common(mc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (strict && mc->parsed() && seed_opt->count() == 0) {
      throw std::invalid_argument("--strict requires an explicit --seed");
    }
    CommandResult result = [&] {
      if (walk->parsed()) return cmd_walk(wo);
      if (decide->parsed()) return cmd_decide(dopt);
      if (eps->parsed()) return cmd_epsilon(eo);
      if (ens->parsed()) return cmd_ensemble(en);
      return cmd_mc(mo);
    }();
    result.table.set_meta("format", format);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!output.empty()) {
      file.open(output);
      if (!file) throw std::runtime_error("cannot open output file " + output);
      sink = &file;
    }
    if (format == "json") {
      *sink << result.table.to_json().dump(2) << '\n';
    } else {
      result.table.write_csv(*sink);
    }
    if (!result.assertions_ok) {
      err << "djwalk: internal check failed (see *_agrees / *_holds / *_le_bound / normalized columns)\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "djwalk: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace djwalk::cli

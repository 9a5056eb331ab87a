// monolab: command-line driver for the retraction-induced operator family.
//
//   monolab apply   --e 1,0 --op Ae --x 1,1
//   monolab iterate --e 1,0 --x0 0,1 --max-iter 200
//   monolab certify --e-norm 0.5 --seed 7 --property strong
//   monolab average --dirs "1,0;0,1" --weights 0.5,0.5
//
// Exit codes: 0 completed, 1 unexpected certificate verdict, 2 malformed
// input, 3 dimension mismatch, 4 property not defined in this regime.

#include "monolab/certify.hpp"
#include "monolab/iterate.hpp"
#include "monolab/operators.hpp"
#include "monolab/sampling.hpp"
#include "monolab/serialize.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace monolab;

enum ExitCode : int {
  kOk = 0,
  kUnexpectedVerdict = 1,
  kMalformed = 2,
  kDimension = 3,
  kRegime = 4,
};

struct RunConfig
{
  std::optional<std::size_t> dim;
  std::string e_spec;
  std::optional<double> e_norm;
  std::uint64_t seed = 0;
  std::string x_spec;
  std::string op = "Ae";
  std::string property;
  std::optional<double> alpha;
  std::optional<std::size_t> samples;
  std::size_t max_iter = kDefaultMaxSteps;
  double tol = kDefaultStopTol;
  std::string format = "json";
  std::string out_path;
  std::string f_spec;
  std::size_t cycle_len = 3;
  std::size_t restarts = 64;
  std::string dirs_spec;
  std::string weights_spec;
};

std::vector<double> parse_numbers(const std::string& text, const char* what)
{
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token = text.substr(pos, comma - pos);
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw InvalidInput(std::string("empty entry in ") + what);
    }
    token = token.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw InvalidInput(std::string("cannot parse '") + token + "' in " + what);
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

Vector parse_vector(const std::string& text, const char* what)
{
  if (text.empty()) {
    throw InvalidInput(std::string("missing ") + what);
  }
  return Vector(parse_numbers(text, what));
}

OperatorFamily resolve_family(const RunConfig& cfg)
{
  const bool explicit_e = !cfg.e_spec.empty();
  if (explicit_e == cfg.e_norm.has_value()) {
    throw InvalidInput("give exactly one of --e or --e-norm");
  }
  if (explicit_e) {
    Vector e = parse_vector(cfg.e_spec, "--e");
    if (cfg.dim && *cfg.dim != e.dim()) {
      throw DimensionMismatch("--dim disagrees with the length of --e");
    }
    return OperatorFamily(std::move(e));
  }
  return OperatorFamily(random_direction(cfg.dim.value_or(2), *cfg.e_norm, cfg.seed));
}

void emit(const RunConfig& cfg, const std::string& text)
{
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) {
    throw InvalidInput("cannot open output file " + cfg.out_path);
  }
  out << text;
}

int cmd_apply(const RunConfig& cfg)
{
  const OperatorFamily fam = resolve_family(cfg);
  const Vector x = parse_vector(cfg.x_spec, "--x");
  json result;
  if (cfg.op == "Re") {
    result = fam.retract(x);
  } else if (cfg.op == "Te") {
    result = fam.resolve(x);
  } else if (cfg.op == "Ae") {
    result = fam.evaluate(x);
  } else {
    throw InvalidInput("--op must be one of Re, Te, Ae");
  }
  emit(cfg, result.dump() + "\n");
  return kOk;
}

int cmd_iterate(const RunConfig& cfg)
{
  const OperatorFamily fam = resolve_family(cfg);
  const Vector x0 = parse_vector(cfg.x_spec, "--x0");
  const IterationTrace trace = run_iteration(fam, x0, cfg.max_iter, cfg.tol);

  const Vector predicted = predicted_limit(fam, x0);
  const Vector& observed = trace.iterates.back();
  json summary{{"regime", to_string(fam.regime())},
               {"e_norm", fam.e_norm()},
               {"n_steps", trace.n_steps},
               {"converged", trace.converged},
               {"predicted_limit", predicted},
               {"observed_limit", observed},
               {"limit_error", distance(predicted, observed)}};
  try {
    summary["estimated_rate"] = estimate_rate(trace);
  } catch (const InvalidInput&) {
    summary["estimated_rate"] = nullptr;
  }
  summary["claimed_rate"] =
    fam.regime() == Regime::SubUnit ? json(claimed_rate(fam)) : json(nullptr);

  if (cfg.format == "csv") {
    emit(cfg, trace_to_csv(trace));
  } else {
    emit(cfg, json(trace).dump() + "\n");
  }
  (cfg.out_path.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
  return kOk;
}

std::optional<Vector> optional_f(const RunConfig& cfg)
{
  if (cfg.f_spec.empty()) {
    return std::nullopt;
  }
  return parse_vector(cfg.f_spec, "--f");
}

int cmd_certify(const RunConfig& cfg)
{
  const OperatorFamily fam = resolve_family(cfg);
  const std::size_t n = cfg.samples.value_or(10000);
  const std::string& p = cfg.property;
  const auto f = optional_f(cfg);

  Certificate cert{.property = Property::Monotone};
  // Properties whose verdict is itself the answer (a predicate or an
  // exploratory search) never count as unexpected.
  bool any_verdict = false;
  Verdict expected = Verdict::Pass;
  if (p == "monotone") {
    cert = check_monotone(fam, n, cfg.seed);
  } else if (p == "firm") {
    cert = check_firm_nonexpansiveness(fam, n, cfg.seed);
  } else if (p == "strong") {
    cert = estimate_strong_monotonicity(fam, n, cfg.seed);
  } else if (p == "cocoercive") {
    cert = estimate_cocoercivity(fam, n, cfg.seed);
  } else if (p == "lipschitz") {
    cert = estimate_lipschitz_retraction(fam, n, cfg.seed);
  } else if (p == "displacement") {
    cert = displacement_map_predicate(fam);
    any_verdict = true;
  } else if (p == "paramonotone") {
    if (fam.regime() == Regime::Unit) {
      cert = paramonotone_witness(fam, cfg.alpha.value_or(2.0), cfg.seed);
      expected = Verdict::WitnessFound;
    } else {
      cert = check_paramonotone(fam, n, cfg.seed);
    }
  } else if (p == "three-star") {
    const double alpha = cfg.alpha.value_or(1.0);
    cert = f ? three_star_witness(fam, *f, alpha) : three_star_witness(fam, alpha);
    expected = Verdict::WitnessFound;
  } else if (p == "sunny") {
    cert = f ? sunny_witness(fam, *f) : sunny_witness(fam);
    expected = Verdict::WitnessFound;
  } else if (p == "cyclic") {
    cert = cyclic_violation_search(fam, cfg.cycle_len, cfg.restarts, cfg.seed);
    any_verdict = true;
  } else if (p == "one-dim-cone") {
    cert = check_one_dim_normal_cone(fam);
  } else {
    throw InvalidInput("unknown property '" + p + "'");
  }

  emit(cfg, json(cert).dump() + "\n");
  if (!any_verdict && cert.verdict != expected) {
    std::cerr << "unexpected verdict: " << to_string(cert.verdict) << " (expected "
              << to_string(expected) << ")\n";
    return kUnexpectedVerdict;
  }
  return kOk;
}

int cmd_average(const RunConfig& cfg)
{
  if (cfg.dirs_spec.empty() || cfg.weights_spec.empty()) {
    throw InvalidInput("average needs --dirs and --weights");
  }
  std::vector<Direction> dirs;
  std::size_t pos = 0;
  while (pos <= cfg.dirs_spec.size()) {
    const std::size_t semi = std::min(cfg.dirs_spec.find(';', pos), cfg.dirs_spec.size());
    dirs.emplace_back(parse_vector(cfg.dirs_spec.substr(pos, semi - pos), "--dirs"));
    pos = semi + 1;
  }
  const std::vector<double> weights = parse_numbers(cfg.weights_spec, "--weights");
  const Direction avg = resolvent_average(dirs, weights);
  const OperatorFamily fam(avg);

  const std::size_t n_check = cfg.samples.value_or(1000);
  double worst = 0.0;
  for (std::size_t i = 0; i < n_check; ++i) {
    SampleStream rng(cfg.seed, i, 9);
    const Vector x = rng.gaussian(avg.dim());
    const double dev = distance(weighted_retraction(dirs, weights, x), fam.retract(x));
    worst = std::max(worst, dev / (1.0 + norm(x)));
  }
  const json report{{"e_bar", avg.e()},
                    {"e_bar_norm", avg.norm()},
                    {"regime", to_string(avg.regime())},
                    {"n_check", n_check},
                    {"max_deviation", worst},
                    {"within_tolerance", worst <= 1e-12}};
  emit(cfg, report.dump() + "\n");
  return kOk;
}

void add_family_options(CLI::App& sub, RunConfig& cfg)
{
  sub.add_option("--dim", cfg.dim, "Dimension (with --e-norm; default 2)")->check(CLI::PositiveNumber);
  auto* e = sub.add_option("--e", cfg.e_spec, "Direction e as comma-separated floats, |e| <= 1");
  auto* en = sub.add_option("--e-norm", cfg.e_norm, "Norm of a random direction e")
               ->check(CLI::Range(0.0, 1.0));
  e->excludes(en);
  sub.add_option("--seed", cfg.seed, "Random seed")->envname("MONOLAB_SEED");
  sub.add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
}

} // namespace

int main(int argc, char** argv)
{
  RunConfig cfg;
  CLI::App app{"Evaluate, iterate and certify the operator family induced by R_e(x) = |x| e.\n"
               "Negative leading coordinates need '=': --x=-1,1"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto* apply = app.add_subcommand("apply", "Evaluate R_e, T_e or A_e at a point");
  add_family_options(*apply, cfg);
  apply->add_option("--op", cfg.op, "Re | Te | Ae")
    ->check(CLI::IsMember({"Re", "Te", "Ae"}))
    ->capture_default_str();
  apply->add_option("--x", cfg.x_spec, "Point x (comma-separated)")->required();

  auto* iterate = app.add_subcommand("iterate", "Run the resolvent iteration x_{n+1} = T_e x_n");
  add_family_options(*iterate, cfg);
  iterate->add_option("--x0", cfg.x_spec, "Starting point")->required();
  iterate->add_option("--max-iter", cfg.max_iter, "Maximum number of steps")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  iterate->add_option("--tol", cfg.tol, "Relative stopping tolerance on |x_{n+1} - x_n|")
    ->check(CLI::NonNegativeNumber)
    ->capture_default_str();
  iterate->add_option("--format", cfg.format, "Trace format")
    ->check(CLI::IsMember({"json", "csv"}))
    ->capture_default_str();

  auto* certify = app.add_subcommand("certify", "Run a property check and print its certificate");
  add_family_options(*certify, cfg);
  certify
    ->add_option("--property", cfg.property,
                 "monotone | firm | strong | cocoercive | lipschitz | displacement | "
                 "paramonotone | three-star | sunny | cyclic | one-dim-cone")
    ->required();
  certify->add_option("--samples", cfg.samples, "Number of sampled pairs (default 10000)");
  certify->add_option("--alpha", cfg.alpha, "Witness scale (paramonotone: 2, three-star: 1)");
  certify->add_option("--f", cfg.f_spec, "Unit vector orthogonal to e for witnesses");
  certify->add_option("--cycle-len", cfg.cycle_len, "Cycle length for cyclic")->capture_default_str();
  certify->add_option("--restarts", cfg.restarts, "Restarts for cyclic")->capture_default_str();

  auto* average = app.add_subcommand("average", "Resolvent average of several directions");
  average->add_option("--dirs", cfg.dirs_spec, "Directions separated by ';', e.g. \"1,0;0,1\"")
    ->required();
  average->add_option("--weights", cfg.weights_spec, "Weights summing to 1")->required();
  average->add_option("--samples", cfg.samples, "Random points for the check (default 1000)");
  average->add_option("--seed", cfg.seed, "Random seed")->envname("MONOLAB_SEED");
  average->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*apply) {
      return cmd_apply(cfg);
    }
    if (*iterate) {
      return cmd_iterate(cfg);
    }
    if (*certify) {
      return cmd_certify(cfg);
    }
    return cmd_average(cfg);
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kDimension;
  } catch (const RegimeMismatch& e) {
    std::cerr << "regime mismatch: " << e.what() << "\n";
    return kRegime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
}

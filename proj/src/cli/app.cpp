#include "monobound/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "monobound/bounds.hpp"
#include "monobound/cli/json_writer.hpp"
#include "monobound/cli/specs.hpp"
#include "monobound/error.hpp"
#include "monobound/majorization.hpp"
#include "monobound/transform.hpp"

namespace monobound::cli {
namespace {

constexpr std::size_t kGeneratedPairSize = 8;
constexpr std::size_t kGeneratedPairTransfers = 32;

struct RunConfig {
  std::string weights_path;
  std::size_t uniform_n = 0;
  bool normalize = false;
  std::string fn_spec;
  std::string density_spec;
  double tol = kDefaultQuadratureTolerance;
  std::size_t depth = 3;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::string x_path;
  std::string y_path;
};

// Invalid command-line usage detected after CLI11 has parsed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) { return format_number(v); }

void row(std::ostream& out, std::string_view key, std::string_view value) {
  out << fmt::format("{:<16}{}\n", key, value);
}

std::string strict_json(Strictness s) {
  switch (s) {
    case Strictness::strict: return "true";
    case Strictness::equal: return "false";
    case Strictness::indeterminate: return "null";
  }
  return "null";
}

CumulativePartition load_partition(const RunConfig& cfg) {
  if (cfg.uniform_n > 0) return cumulative(WeightVector::uniform(cfg.uniform_n));
  if (cfg.weights_path.empty()) throw UsageError("one of --weights or --uniform is required");
  const auto values = read_numbers_file(cfg.weights_path);
  return cumulative(WeightVector::from_weights(values, cfg.normalize));
}

MonotoneFunction load_function(const RunConfig& cfg) {
  if (cfg.fn_spec.empty()) throw UsageError("--fn is required");
  return parse_function_spec(cfg.fn_spec);
}

std::pair<RealVector, RealVector> load_pair(const RunConfig& cfg) {
  if (!cfg.x_path.empty() || !cfg.y_path.empty()) {
    if (cfg.x_path.empty() || cfg.y_path.empty()) {
      throw UsageError("--x and --y must be given together");
    }
    return {RealVector(read_numbers_file(cfg.x_path)), RealVector(read_numbers_file(cfg.y_path))};
  }
  if (!cfg.seed) throw UsageError("give --x and --y, or --seed to generate a pair");
  return generate_majorized_pair(kGeneratedPairSize, kGeneratedPairTransfers, *cfg.seed);
}

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = load_partition(cfg);
  const auto g = load_function(cfg);
  const auto r = bound_report(g, p, cfg.tol);
  if (cfg.json) {
    out << JsonObject()
               .number("t_n", r.t_n)
               .number("integral", r.integral)
               .string("integral_source", to_string(r.integral_source))
               .number("gap", r.gap)
               .number("gap_bound", r.gap_bound)
               .raw("strict", strict_json(r.strict))
               .number("abel_value", r.abel_value)
               .integer("n", static_cast<long long>(r.n))
               .str()
        << '\n';
  } else {
    row(out, "function", g.formula());
    row(out, "direction", to_string(r.direction));
    row(out, "n", std::to_string(r.n));
    row(out, "t_n", num(r.t_n));
    row(out, "integral", num(r.integral));
    row(out, "integral_source", to_string(r.integral_source));
    row(out, "gap", num(r.gap));
    row(out, "gap_bound", num(r.gap_bound));
    row(out, "strict", to_string(r.strict));
    row(out, "abel_value", num(r.abel_value));
    row(out, "evaluations", std::to_string(r.evaluation_count));
  }
  const auto violations = invariant_violations(r, cfg.tol);
  for (const auto& v : violations) err << "invariant violation: " << v << '\n';
  return violations.empty() ? kExitOk : kExitInvariantViolation;
}

int cmd_enclose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = load_partition(cfg);
  const auto g = load_function(cfg);
  const auto r = bound_report(g, p, cfg.tol);
  const double right = r.t_n;
  const double left = riemann_sum_left(g, p);
  const double lower = std::min(left, right);
  const double upper = std::max(left, right);
  const double slack =
      kIdentityTolerance + (r.integral_source == IntegralSource::quadrature ? cfg.tol : 0.0);
  const bool decreasing = g.direction() != Direction::increasing;
  const bool holds = decreasing ? (right <= r.integral + slack && r.integral <= left + slack)
                                : (left <= r.integral + slack && r.integral <= right + slack);
  if (cfg.json) {
    out << JsonObject()
               .number("lower", lower)
               .number("upper", upper)
               .number("left_sum", left)
               .number("right_sum", right)
               .number("integral", r.integral)
               .string("integral_source", to_string(r.integral_source))
               .number("width", upper - lower)
               .boolean("holds", holds)
               .integer("n", static_cast<long long>(r.n))
               .str()
        << '\n';
  } else {
    row(out, "n", std::to_string(r.n));
    row(out, "lower", num(lower));
    row(out, "integral", num(r.integral));
    row(out, "upper", num(upper));
    row(out, "width", num(upper - lower));
    row(out, "holds", holds ? "yes" : "no");
  }
  if (!holds) {
    err << "invariant violation: integral lies outside the left/right sum enclosure\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int cmd_abel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = load_partition(cfg);
  const auto g = load_function(cfg);
  const double direct = riemann_sum_right(g, p);
  const double abel = abel_sum(g, p);
  const auto terms = abel_terms(g, p);
  const double diff = abel - direct;
  bool ok = std::abs(diff) <= kIdentityTolerance * std::max(1.0, std::abs(direct));
  if (!ok) err << "invariant violation: Abel form disagrees with the direct sum\n";
  if (g.direction() == Direction::decreasing &&
      std::any_of(terms.begin(), terms.end(), [](double t) { return t < -1e-14; })) {
    err << "invariant violation: negative Abel term for decreasing g\n";
    ok = false;
  }
  if (cfg.json) {
    out << JsonObject()
               .number("abel_value", abel)
               .number("t_n", direct)
               .number("difference", diff)
               .raw("terms", json_array(terms))
               .integer("n", static_cast<long long>(p.intervals()))
               .str()
        << '\n';
  } else {
    row(out, "n", std::to_string(p.intervals()));
    row(out, "abel_value", num(abel));
    row(out, "t_n", num(direct));
    row(out, "difference", num(diff));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      row(out, fmt::format("term[{}]", i + 1), num(terms[i]));
    }
  }
  return ok ? kExitOk : kExitInvariantViolation;
}

int cmd_transform_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.density_spec.empty()) throw UsageError("--density is required");
  const auto f = parse_density_spec(cfg.density_spec);
  const auto g = load_function(cfg);
  const auto r = pit_identity_check(f, g, cfg.tol);
  if (cfg.json) {
    out << JsonObject()
               .number("lhs", r.lhs)
               .number("rhs", r.rhs)
               .number("residual", r.residual)
               .number("tol", r.tol)
               .boolean("pass", r.pass)
               .str()
        << '\n';
  } else {
    row(out, "density", f.describe());
    row(out, "function", g.formula());
    row(out, "lhs", num(r.lhs));
    row(out, "rhs", num(r.rhs));
    row(out, "residual", num(r.residual));
    row(out, "tol", num(r.tol));
    row(out, "pass", r.pass ? "yes" : "no");
  }
  if (!r.pass) {
    err << "invariant violation: substitution identity residual exceeds tolerance\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

std::string relation_text(MajorizationRelation r) {
  switch (r) {
    case MajorizationRelation::x_majorized_by_y: return "x ≺ y";
    case MajorizationRelation::y_majorized_by_x: return "y ≺ x";
    case MajorizationRelation::both: return "x ≺ y and y ≺ x";
    case MajorizationRelation::incomparable: return "incomparable";
    case MajorizationRelation::total_mismatch: return "totals differ";
  }
  return "unknown";
}

int cmd_majorize(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto [x, y] = load_pair(cfg);
  const auto v = is_majorized(x, y);
  if (cfg.json) {
    out << JsonObject()
               .string("relation", to_string(v.relation))
               .raw("prefix_margins", json_array(v.prefix_margins))
               .str()
        << '\n';
  } else {
    row(out, "relation", relation_text(v.relation));
    for (std::size_t k = 0; k < v.prefix_margins.size(); ++k) {
      row(out, fmt::format("margin[{}]", k + 1), num(v.prefix_margins[k]));
    }
  }
  return kExitOk;
}

int cmd_karamata(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto [x, y] = load_pair(cfg);
  if (cfg.fn_spec.empty()) throw UsageError("--fn is required");
  const auto g = parse_convex_spec(cfg.fn_spec);
  const auto r = karamata_check(g, x, y);
  if (cfg.json) {
    out << JsonObject().number("margin", r.margin).boolean("pass", r.pass).str() << '\n';
  } else {
    row(out, "function", g.name());
    row(out, "margin", num(r.margin));
    row(out, "pass", r.pass ? "yes" : "no");
  }
  if (!r.pass) {
    err << "invariant violation: convex sums violate the majorization inequality\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int cmd_refine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = load_partition(cfg);
  const auto g = load_function(cfg);
  const auto chain = refinement_chain(g, p, cfg.depth);
  double integral = 0.0;
  double slack = kIdentityTolerance;
  if (auto exact = closed_form_integral(g)) {
    integral = *exact;
  } else {
    integral = quadrature_integral(g, cfg.tol);
    slack += cfg.tol;
  }
  const bool increasing = g.direction() == Direction::increasing;
  bool ok = true;
  std::string rows = "[";
  if (!cfg.json) out << fmt::format("{:>10}  {:<24}  {}\n", "n", "t_n", "gap");
  for (std::size_t level = 0; level < chain.size(); ++level) {
    const auto n = static_cast<long long>(p.intervals() << level);
    const double gap = increasing ? chain[level] - integral : integral - chain[level];
    ok &= gap >= -slack;
    if (level > 0) {
      const double step = increasing ? chain[level - 1] - chain[level]
                                     : chain[level] - chain[level - 1];
      ok &= step >= -kIdentityTolerance;
      rows += ',';
    }
    rows += JsonObject().integer("n", n).number("t_n", chain[level]).number("gap", gap).str();
    if (!cfg.json) out << fmt::format("{:>10}  {:<24}  {}\n", n, num(chain[level]), num(gap));
  }
  rows += ']';
  if (cfg.json) out << JsonObject().number("integral", integral).raw("rows", rows).str() << '\n';
  if (!ok) {
    err << "invariant violation: refinement sums are not monotone toward the integral\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<MonotoneFunction> entries;
  if (cfg.fn_spec.empty()) {
    entries = catalog_entries();
  } else {
    entries.push_back(parse_function_spec(cfg.fn_spec));
  }
  std::string rows = "[";
  if (!cfg.json) {
    out << fmt::format("{:<22}{:<22}{:<12}{}\n", "spec", "formula", "direction", "integral");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& g = entries[i];
    const auto spec = to_spec(g);
    const auto exact = closed_form_integral(g);
    const double value = exact ? *exact : quadrature_integral(g, cfg.tol);
    if (i) rows += ',';
    rows += JsonObject()
                .string("spec", spec)
                .string("formula", g.formula())
                .string("direction", to_string(g.direction()))
                .number("integral", value)
                .str();
    if (!cfg.json) {
      out << fmt::format("{:<22}{:<22}{:<12}{}\n", spec, g.formula(), to_string(g.direction()),
                         num(value));
    }
  }
  rows += ']';
  if (cfg.json) out << rows << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Guaranteed bounds on integrals of monotone functions from cumulative-weight sums",
               "monobound"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_weights = [&cfg](CLI::App* sub) {
    auto* w = sub->add_option("--weights", cfg.weights_path, "weight file (CSV or JSON array)");
    auto* u = sub->add_option("--uniform", cfg.uniform_n, "use N equal weights 1/N")
                  ->check(CLI::PositiveNumber);
    w->excludes(u);
    sub->add_flag("--normalize", cfg.normalize, "rescale weights to sum to 1");
  };
  auto add_fn = [&cfg](CLI::App* sub) {
    sub->add_option("--fn", cfg.fn_spec, "function spec, e.g. power:k=2");
  };
  auto add_tol = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  };
  auto add_json = [&cfg](CLI::App* sub) { sub->add_flag("--json", cfg.json, "JSON output"); };
  auto add_pair = [&cfg](CLI::App* sub) {
    sub->add_option("--x", cfg.x_path, "vector x (CSV or JSON array)");
    sub->add_option("--y", cfg.y_path, "vector y (CSV or JSON array)");
    sub->add_option("--seed", cfg.seed, "generate a majorized pair from this seed");
  };

  auto* bound = app.add_subcommand("bound", "sum, integral, gap and gap bound");
  auto* enclose = app.add_subcommand("enclose", "left/right sum enclosure of the integral");
  auto* abel = app.add_subcommand("abel", "Abel-summation form of the sum");
  auto* refine = app.add_subcommand("refine", "sums over successive bisections");
  for (auto* sub : {bound, enclose, abel, refine}) {
    add_weights(sub);
    add_fn(sub);
    add_tol(sub);
    add_json(sub);
    sub->add_option("--seed", cfg.seed, "unused; accepted for uniformity");
  }
  refine->add_option("--depth", cfg.depth, "number of bisection rounds")
      ->check(CLI::Range(1, 23));

  auto* transform = app.add_subcommand("transform-check", "substitution identity check");
  transform->add_option("--density", cfg.density_spec, "density spec, e.g. poly:0,2");
  add_fn(transform);
  add_tol(transform);
  add_json(transform);

  auto* majorize = app.add_subcommand("majorize", "majorization verdict for x and y");
  add_pair(majorize);
  add_json(majorize);

  auto* karamata = app.add_subcommand("karamata", "convex-sum inequality for x majorized by y");
  add_pair(karamata);
  add_fn(karamata);
  add_json(karamata);

  auto* catalog = app.add_subcommand("catalog", "catalog functions and their integrals");
  add_fn(catalog);
  add_tol(catalog);
  add_json(catalog);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  try {
    if (bound->parsed()) return cmd_bound(cfg, out, err);
    if (enclose->parsed()) return cmd_enclose(cfg, out, err);
    if (abel->parsed()) return cmd_abel(cfg, out, err);
    if (refine->parsed()) return cmd_refine(cfg, out, err);
    if (transform->parsed()) return cmd_transform_check(cfg, out, err);
    if (majorize->parsed()) return cmd_majorize(cfg, out, err);
    if (karamata->parsed()) return cmd_karamata(cfg, out, err);
    if (catalog->parsed()) return cmd_catalog(cfg, out, err);
    err << "error: no command given\n";
    return kExitParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kExitParseError : kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace monobound::cli

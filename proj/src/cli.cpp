#include "mmp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmp/errors.hpp"
#include "mmp/problem.hpp"

namespace mmp::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string input = "-";
  std::string output;
  std::string format = "json";
  std::string f_spec;
  std::vector<std::string> z_list;
  std::string delta_spec;
  std::string measure_path;
  int budget = 1000;
  std::uint64_t seed = 20240607;
  Tolerances tol;
};

// Raised for infeasible or out-of-domain requests that are not exceptions of
// the library itself (e.g. "solve" on an indeterminate problem).
struct Infeasible {
  json diagnostic;
};

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

cplx parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw InputError("");
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw InputError("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw InputError("");
    return {re, im};
  } catch (const std::exception&) {
    throw InputError("cannot parse point '" + text + "'; expected \"re,im\"");
  }
}

// Accepts a number, an [re, im] pair, or a matrix of numbers / [re, im]
// entries. For a 1 x 1 parameter the row [[re, im]] is read as one entry.
CMatrix parse_parameter(const std::string& text, int delta) {
  const json doc = parse_json(text, "--F");
  try {
    if (doc.is_number()) return CMatrix::Constant(1, 1, doc.get<double>());
    if (doc.is_array() && doc.size() == 2 && doc[0].is_number() && doc[1].is_number())
      return CMatrix::Constant(1, 1, complex_from_json(doc));
    CMatrix f = matrix_from_json(doc);
    if (delta == 1 && f.rows() == 1 && f.cols() == 2 && f.imag().cwiseAbs().maxCoeff() == 0.0)
      return CMatrix::Constant(1, 1, cplx(f(0, 0).real(), f(0, 1).real()));
    return f;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed parameter: ") + e.what());
  }
}

MomentProblem load_problem(const Config& cfg, std::istream& in) {
  const json doc = parse_json(read_all(cfg.input, in), "moment input");
  return MomentProblem(parse_moments(doc, cfg.tol), cfg.tol);
}

void require_solvable(const MomentProblem& p) {
  if (!p.solvable())
    throw Infeasible{{{"error", "moment problem is not solvable"},
                      {"solvability", to_json(p.solvability())}}};
}

void require_indeterminate(const MomentProblem& p) {
  require_solvable(p);
  if (p.determinate())
    throw Infeasible{{{"error", "moment problem is determinate; use 'solve'"},
                      {"dimensions", p.dimensions()}}};
}

void emit_measure(std::ostream& out, const Config& cfg, const AtomicMeasure& m, json extra) {
  if (cfg.format == "csv") {
    const std::vector<double> grid = default_distribution_grid(m);
    write_distribution_csv(out, m, grid);
    return;
  }
  json doc = to_json(m);
  for (auto& [key, value] : extra.items()) doc[key] = value;
  out << doc.dump(2) << '\n';
}

int cmd_check(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  out << to_json(p.solvability()).dump(2) << '\n';
  return p.solvable() ? kOk : kInfeasible;
}

int cmd_inspect(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  require_solvable(p);
  out << p.dimensions().dump(2) << '\n';
  return kOk;
}

int cmd_solve(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  require_solvable(p);
  if (!p.determinate())
    throw Infeasible{{{"error", "moment problem is indeterminate; use 'parametrize' or 'canonical'"},
                      {"dimensions", p.dimensions()}}};
  const AtomicMeasure m = p.solve();
  const MomentReport report = verify_moments(m, p.moments(), cfg.tol.moment_tol);
  emit_measure(out, cfg, m, {{"moment_check", to_json(report)}});
  return kOk;
}

int cmd_parametrize(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  require_indeterminate(p);
  out << to_json(p.coefficients()).dump(2) << '\n';
  return kOk;
}

int cmd_evaluate(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  require_solvable(p);
  if (cfg.z_list.empty()) throw InputError("evaluate needs at least one --z");
  json values = json::array();
  if (p.determinate()) {
    if (!cfg.f_spec.empty()) throw InputError("a determinate problem takes no parameter --F");
    for (const auto& zs : cfg.z_list) {
      const cplx z = parse_point(zs);
      values.push_back({{"z", complex_to_json(z)},
                        {"value", matrix_to_json(p.determinate_transform(z))}});
    }
  } else {
    if (cfg.f_spec.empty()) throw InputError("evaluate needs --F for an indeterminate problem");
    const int delta = p.bases().delta();
    const CMatrix f = parse_parameter(cfg.f_spec, delta);
    if (f.rows() != delta || f.cols() != delta)
      throw InputError("parameter must be " + std::to_string(delta) + "x" + std::to_string(delta));
    const ParameterValue pv(f, cfg.tol.psd_tol);
    for (const auto& zs : cfg.z_list) {
      const cplx z = parse_point(zs);
      values.push_back({{"z", complex_to_json(z)}, {"value", matrix_to_json(p.transform(f, z))}});
    }
  }
  out << json{{"values", std::move(values)}}.dump(2) << '\n';
  return kOk;
}

int cmd_canonical(const Config& cfg, std::istream& in, std::ostream& out) {
  const MomentProblem p = load_problem(cfg, in);
  require_indeterminate(p);
  if (cfg.f_spec.empty()) throw InputError("canonical needs --F");
  const CMatrix f = parse_parameter(cfg.f_spec, p.bases().delta());
  const CanonicalSolution sol = p.canonical(f);
  const MomentReport report = verify_moments(sol.measure, p.moments(), cfg.tol.moment_tol);
  emit_measure(out, cfg, sol.measure,
               {{"F", matrix_to_json(f)},
                {"admissible", sol.admissible},
                {"fixed_point_free", sol.fixed_point_free},
                {"diagnostic_disagreement", sol.diagnostic_disagreement},
                {"moment_check", to_json(report)}});
  return kOk;
}

int cmd_gap_check(const Config& cfg, std::istream& in, std::ostream& out) {
  const GapSpec gap = GapSpec::parse(cfg.delta_spec);
  const MomentProblem p = load_problem(cfg, in);
  require_indeterminate(p);
  const GapAnalysis an = p.analyze_gap(gap);
  json doc = {{"delta", cfg.delta_spec}, {"analysis", to_json(an)}};
  int status = an.regular_type ? kOk : kInfeasible;
  if (!cfg.f_spec.empty()) {
    const CMatrix f = parse_parameter(cfg.f_spec, p.bases().delta());
    const GapVerdict v = check_gap_class(f, p.coefficients().xi, an);
    doc["F"] = matrix_to_json(f);
    doc["verdict"] = to_json(v);
    if (!v.accepted) status = kInfeasible;
  }
  doc["note"] = "condition C is checked on a finite grid with bisection between grid points";
  out << doc.dump(2) << '\n';
  return status;
}

int cmd_gap_solve(const Config& cfg, std::istream& in, std::ostream& out) {
  const GapSpec gap = GapSpec::parse(cfg.delta_spec);
  const MomentProblem p = load_problem(cfg, in);
  require_indeterminate(p);
  const GapAnalysis an = p.analyze_gap(gap);
  const GapSearchResult res = gap_solvable_search(p.coefficients().xi, an, cfg.budget, cfg.seed);
  if (!res.found)
    throw Infeasible{{{"error", res.note},
                      {"found", false},
                      {"candidates_tried", res.candidates_tried}}};
  const MomentReport report = verify_moments(res.measure, p.moments(), cfg.tol.moment_tol);
  emit_measure(out, cfg, res.measure,
               {{"found", true},
                {"F", matrix_to_json(res.f)},
                {"delta", cfg.delta_spec},
                {"gap_verified", verify_gap(res.measure, gap, cfg.tol.gap_tol)},
                {"candidates_tried", res.candidates_tried},
                {"moment_check", to_json(report)}});
  return kOk;
}

int cmd_verify(const Config& cfg, std::istream& in, std::ostream& out) {
  if (cfg.measure_path.empty()) throw InputError("verify needs --measure");
  if (cfg.input == "-" && cfg.measure_path == "-")
    throw InputError("moments and measure cannot both come from stdin");
  const json doc = parse_json(read_all(cfg.input, in), "moment input");
  const MomentSequence ms = parse_moments(doc, cfg.tol);
  const json mdoc = parse_json(read_all(cfg.measure_path, in), "measure input");
  const AtomicMeasure m = measure_from_json(mdoc, ms.matrix_size(), cfg.tol.psd_tol);
  const MomentReport report = verify_moments(m, ms, cfg.tol.moment_tol);
  out << to_json(report).dump(2) << '\n';
  return report.pass ? kOk : kInfeasible;
}

void emit_error(std::ostream& out, std::ostream& err, const std::string& kind,
                const std::string& message, json extra = json::object()) {
  json doc = {{"error", message}, {"kind", kind}};
  for (auto& [key, value] : extra.items())
    if (key != "error") doc[key] = value;
  out << doc.dump(2) << '\n';
  err << "error: " << message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  CLI::App app{"Truncated matrix Hamburger moment problem solver", "mmp-cli"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--hermitian-tol", cfg.tol.hermitian_tol, "Hermitian symmetry tolerance");
  app.add_option("--psd-tol", cfg.tol.psd_tol, "Positive semidefiniteness tolerance");
  app.add_option("--rank-tol", cfg.tol.rank_tol, "Relative rank cutoff");
  app.add_option("--inv-tol", cfg.tol.inv_tol, "Invertibility threshold");
  app.add_option("--moment-tol", cfg.tol.moment_tol, "Moment reconstruction tolerance");
  app.add_option("--gap-tol", cfg.tol.gap_tol, "Weight threshold for atoms in the gap");
  app.add_option("-o,--output", cfg.output, "Write the result to this file instead of stdout");

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "Moment document (JSON), '-' for stdin");
    return sub;
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* check = add("check", "Solvability report");
  CLI::App* inspect = add("inspect", "Dimensions and determinacy");
  CLI::App* solve = add("solve", "Unique solution of a determinate problem");
  add_format(solve);
  CLI::App* parametrize = add("parametrize", "Coefficients of the parametrization");
  CLI::App* evaluate = add("evaluate", "Stieltjes transform of the solution for a parameter");
  evaluate->add_option("--F", cfg.f_spec, "Constant parameter (JSON)");
  evaluate->add_option("--z", cfg.z_list, "Evaluation point \"re,im\"")->allow_extra_args(false);
  CLI::App* canonical = add("canonical", "Atomic solution for a unitary parameter");
  canonical->add_option("--F", cfg.f_spec, "Unitary parameter (JSON)")->required();
  add_format(canonical);
  CLI::App* gap_check = add("gap-check", "Regular type on a gap and optional parameter check");
  gap_check->add_option("--delta", cfg.delta_spec, "Open intervals, e.g. \"(-1,1),(3,inf)\"")
      ->required();
  gap_check->add_option("--F", cfg.f_spec, "Constant parameter to test (JSON)");
  CLI::App* gap_solve = add("gap-solve", "Search a solution vanishing on a gap");
  gap_solve->add_option("--delta", cfg.delta_spec, "Open intervals, e.g. \"(-1,1),(3,inf)\"")
      ->required();
  gap_solve->add_option("--budget", cfg.budget, "Number of candidate parameters");
  gap_solve->add_option("--seed", cfg.seed, "Seed for random unitary candidates");
  add_format(gap_solve);
  CLI::App* verify = add("verify", "Compare the moments of a measure with the input");
  verify->add_option("--measure", cfg.measure_path, "Measure document (JSON)")->required();

  std::vector<std::string> argv_store{"mmp-cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::ostringstream buffer;
  int status = kOk;
  try {
    cfg.tol.validate();
    if (check->parsed()) status = cmd_check(cfg, in, buffer);
    else if (inspect->parsed()) status = cmd_inspect(cfg, in, buffer);
    else if (solve->parsed()) status = cmd_solve(cfg, in, buffer);
    else if (parametrize->parsed()) status = cmd_parametrize(cfg, in, buffer);
    else if (evaluate->parsed()) status = cmd_evaluate(cfg, in, buffer);
    else if (canonical->parsed()) status = cmd_canonical(cfg, in, buffer);
    else if (gap_check->parsed()) status = cmd_gap_check(cfg, in, buffer);
    else if (gap_solve->parsed()) status = cmd_gap_solve(cfg, in, buffer);
    else if (verify->parsed()) status = cmd_verify(cfg, in, buffer);
  } catch (const Infeasible& e) {
    emit_error(buffer, err, "infeasible", e.diagnostic.value("error", ""), e.diagnostic);
    status = kInfeasible;
  } catch (const InputError& e) {
    emit_error(buffer, err, "input", e.what());
    status = kInputError;
  } catch (const DomainError& e) {
    emit_error(buffer, err, "domain", e.what());
    status = kInfeasible;
  } catch (const InconsistencyError& e) {
    emit_error(buffer, err, "inconsistency", e.what());
    status = kInfeasible;
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kInputError;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace mmp::cli

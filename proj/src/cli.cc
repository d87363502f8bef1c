#include "spca/cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spca/oracle.h"
#include "spca/spca_ds.h"
#include "timer.h"

namespace spca::cli {

using nlohmann::ordered_json;

const char* command_name(Command command) {
  switch (command) {
    case Command::kSolveSpca: return "solve-spca";
    case Command::kSolveSpcaDs: return "solve-spca-ds";
    case Command::kOracleSpca: return "oracle-spca";
    case Command::kOracleSpcaDs: return "oracle-spca-ds";
    case Command::kFactor: return "factor";
    case Command::kBench: return "bench";
  }
  return "unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameters:
    case ErrorCode::kTooLarge:
      return kExitInvalidParameters;
    case ErrorCode::kParseError:
    case ErrorCode::kNotSquare:
    case ErrorCode::kAsymmetryTooLarge:
    case ErrorCode::kNotSymmetric:
    case ErrorCode::kNotPositiveSemidefinite:
      return kExitInputError;
    default:
      return kExitSolverFailure;
  }
}

namespace {

ordered_json to_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

ordered_json one_based(const Support& s) {
  auto out = ordered_json::array();
  for (std::size_t j : s) out.push_back(j + 1);
  return out;
}

ordered_json one_based(const SupportFamily& family) {
  auto out = ordered_json::array();
  for (const auto& s : family) out.push_back(one_based(s));
  return out;
}

ordered_json signs_json(const SignVector& signs) {
  auto out = ordered_json::array();
  for (auto v : signs) out.push_back(static_cast<int>(v));
  return out;
}

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions o;
  o.tol_rank = config.tol_rank;
  o.execution = config.execution;
  o.cell_mode = config.mode;
  o.random_samples = config.samples;
  o.seed = config.seed;
  return o;
}

ordered_json header(const RunConfig& config, const SymmetricMatrix& k,
                    std::size_t rank) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["solver"] = {{"command", command_name(config.command)},
                   {"mode", config.mode == CellMode::kExact ? "exact" : "randomized-cells"}};
  if (config.mode == CellMode::kRandomized) {
    doc["solver"]["seed"] = config.seed;
    doc["solver"]["samples"] = config.samples;
  }
  doc["problem"] = {{"n", k.dim()}, {"d", config.d}, {"s", config.s}, {"rank", rank}};
  return doc;
}

ordered_json spca_document(const RunConfig& config, const SymmetricMatrix& k,
                           double* solve_ms = nullptr) {
  detail::Stopwatch watch;
  const SpcaInstance instance(k, config.d, config.s, config.tol_rank);
  const double factor_ms = watch.elapsed_ms();
  const SpcaSolution sol = solve_spca(instance, solver_options(config));
  if (solve_ms) *solve_ms = watch.elapsed_ms();
  const auto& diag = sol.diagnostics;

  ordered_json doc = header(config, k, instance.rank());
  doc["objective"] = sol.objective;
  doc["supports"] = one_based(SupportFamily{sol.support});
  doc["components"] = to_json(sol.x);
  doc["diagnostics"] = {
      {"extension_dim", diag.extension_dim},
      {"hyperplanes", diag.hyperplanes},
      {"identical_row_pairs", diag.identical_row_pairs},
      {"cells", diag.cells_enumerated},
      {"candidates", diag.candidates_evaluated},
      {"nonzero_rows", diag.nonzero_rows},
      {"shortcut", diag.shortcut},
      {"best_cell_signs", signs_json(diag.best_cell_signs)},
      {"timings_ms",
       {{"factor", factor_ms},
        {"arrangement", diag.timings.arrangement_ms},
        {"evaluation", diag.timings.evaluation_ms},
        {"recovery", diag.timings.recovery_ms}}}};
  return doc;
}

ordered_json spca_ds_document(const RunConfig& config, const SymmetricMatrix& k,
                              double* solve_ms = nullptr) {
  detail::Stopwatch watch;
  const SpcaDsInstance instance(k, config.d, config.s, config.tol_rank);
  const double factor_ms = watch.elapsed_ms();
  SpcaDsOptions options;
  static_cast<SolverOptions&>(options) = solver_options(config);
  options.cells = config.ds_cells;
  const SpcaDsSolution sol = solve_spca_ds(instance, options);
  if (solve_ms) *solve_ms = watch.elapsed_ms();
  const auto& diag = sol.diagnostics;

  ordered_json doc = header(config, k, instance.rank());
  if (config.mode == CellMode::kExact) {
    doc["solver"]["cells"] =
        config.ds_cells == DsCellStrategy::kOptimalityFan ? "fan" : "arrangement";
  }
  doc["objective"] = sol.objective;
  doc["supports"] = one_based(sol.supports);
  doc["components"] = to_json(sol.x);
  doc["diagnostics"] = {
      {"extension_dim", diag.extension_dim},
      {"circuits", diag.circuits_enumerated},
      {"zero_circuits", diag.zero_circuits},
      {"hyperplanes", diag.hyperplanes},
      {"cells", diag.cells_enumerated},
      {"circulation_solves", diag.circulation_solves},
      {"unresolved_facets", diag.unresolved_facets},
      {"candidates", diag.candidates_evaluated},
      {"completed_families", diag.completed_families},
      {"completion_triggered", diag.completion_triggered},
      {"best_cell_signs", signs_json(diag.best_cell_signs)},
      {"timings_ms",
       {{"factor", factor_ms},
        {"cells", diag.timings.cells_ms},
        {"evaluation", diag.timings.evaluation_ms},
        {"recovery", diag.timings.recovery_ms}}}};
  return doc;
}

// Components for an oracle maximizer: top eigenvectors of each K_{S_i S_i}
// (jointly top-d for plain SPCA).
Matrix oracle_components(const SymmetricMatrix& k, const SupportFamily& family,
                         std::size_t d) {
  Matrix x(k.dim(), d);
  std::size_t col = 0;
  for (const auto& s : family) {
    const std::size_t width = family.size() == 1 ? d : 1;
    const PcaResult pca = solve_pca(k.principal(s), width);
    for (std::size_t c = 0; c < width; ++c, ++col)
      for (std::size_t a = 0; a < s.size(); ++a) x(s[a], col) = pca.components(a, c);
  }
  return x;
}

ordered_json oracle_document(const RunConfig& config, const SymmetricMatrix& k) {
  detail::Stopwatch watch;
  const bool ds = config.command == Command::kOracleSpcaDs;
  const OracleReport report = ds
      ? brute_force_spca_ds(k, config.d, config.s, config.execution)
      : brute_force_spca(k, config.d, config.s, config.execution);
  const double enumerate_ms = watch.elapsed_ms();

  ordered_json doc = header(config, k, pivoted_cholesky(k, config.tol_rank).rank());
  doc["objective"] = report.objective;
  const SupportFamily& first = report.argmax_supports.front();
  doc["supports"] = one_based(first);
  doc["components"] = to_json(oracle_components(k, first, config.d));
  auto all = ordered_json::array();
  for (const auto& f : report.argmax_supports) all.push_back(one_based(f));
  doc["diagnostics"] = {{"instances_enumerated", report.instances_enumerated},
                        {"maximizers", report.argmax_supports.size()},
                        {"argmax_supports", std::move(all)},
                        {"timings_ms", {{"enumeration", enumerate_ms}}}};
  return doc;
}

ordered_json factor_document(const RunConfig& config, const SymmetricMatrix& k) {
  detail::Stopwatch watch;
  const PsdFactor f = pivoted_cholesky(k, config.tol_rank);
  const double factor_ms = watch.elapsed_ms();
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["solver"] = {{"command", command_name(config.command)}};
  doc["problem"] = {{"n", k.dim()}, {"rank", f.rank()}};
  doc["rank"] = f.rank();
  doc["pivots"] = one_based(Support(f.pivots()));
  doc["factor"] = to_json(f.factor());
  doc["diagnostics"] = {{"timings_ms", {{"factor", factor_ms}}}};
  return doc;
}

ordered_json bench_document(const RunConfig& config, const SymmetricMatrix& k) {
  const bool ds = config.bench_problem == BenchProblem::kSpcaDs;
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["solver"] = {{"command", command_name(config.command)},
                   {"problem", ds ? "spca-ds" : "spca"},
                   {"mode", config.mode == CellMode::kExact ? "exact" : "randomized-cells"}};
  doc["problem"] = {{"n", k.dim()}, {"d", config.d}, {"s", config.s}};
  ordered_json runs = ordered_json::object();
  for (Execution e : {Execution::kSerial, Execution::kParallel}) {
    RunConfig c = config;
    c.execution = e;
    double total_ms = 0.0;
    ordered_json r = ds ? spca_ds_document(c, k, &total_ms) : spca_document(c, k, &total_ms);
    r["diagnostics"]["timings_ms"]["total"] = total_ms;
    runs[e == Execution::kSerial ? "serial" : "parallel"] = {
        {"objective", r["objective"]},
        {"supports", r["supports"]},
        {"diagnostics", r["diagnostics"]}};
  }
  doc["runs"] = runs;
  doc["agree"] = runs["serial"]["objective"] == runs["parallel"]["objective"] &&
                 runs["serial"]["supports"] == runs["parallel"]["supports"];
  return doc;
}

}  // namespace

ordered_json run(const RunConfig& config, const SymmetricMatrix& k) {
  switch (config.command) {
    case Command::kSolveSpca: return spca_document(config, k);
    case Command::kSolveSpcaDs: return spca_ds_document(config, k);
    case Command::kOracleSpca:
    case Command::kOracleSpcaDs: return oracle_document(config, k);
    case Command::kFactor: return factor_document(config, k);
    case Command::kBench: return bench_document(config, k);
  }
  throw Error(ErrorCode::kInvalidParameters, "unknown command");
}

ordered_json run(const RunConfig& config) {
  return run(config, ingest(config.input_path, config.input_kind));
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sparse PCA by hyperplane-arrangement support enumeration"};
  app.require_subcommand(1);
  RunConfig config;
  std::string kind = "covariance";
  std::string mode = "exact";
  std::string problem = "spca";
  std::string ds_cells = "fan";
  bool serial = false;

  const std::pair<Command, const char*> commands[] = {
      {Command::kSolveSpca, "solve sparse PCA exactly"},
      {Command::kSolveSpcaDs, "solve sparse PCA with disjoint supports exactly"},
      {Command::kOracleSpca, "brute-force sparse PCA over all supports"},
      {Command::kOracleSpcaDs, "brute-force disjoint-support sparse PCA"},
      {Command::kFactor, "pivoted Cholesky factor and numerical rank"},
      {Command::kBench, "time serial against parallel kernels"}};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(command), help);
    sub->add_option("--input", config.input_path, "CSV file")->required();
    sub->add_option("--kind", kind, "covariance | samples")
        ->check(CLI::IsMember({"covariance", "samples"}));
    sub->add_option("--tol-rank", config.tol_rank, "relative pivot threshold")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", config.output_path, "output JSON path (default stdout)");
    if (command != Command::kFactor) {
      sub->add_option("--d", config.d, "number of components")->check(CLI::PositiveNumber);
      sub->add_option("--s", config.s, "support size bound")->check(CLI::PositiveNumber);
      sub->add_flag("--serial", serial, "disable threading");
    }
    if (command == Command::kSolveSpca || command == Command::kSolveSpcaDs ||
        command == Command::kBench) {
      sub->add_option("--mode", mode, "exact | randomized-cells")
          ->check(CLI::IsMember({"exact", "randomized-cells"}));
      sub->add_option("--seed", config.seed, "randomized-cells seed");
      sub->add_option("--samples", config.samples, "randomized-cells sample count")
          ->check(CLI::PositiveNumber);
    }
    if (command == Command::kSolveSpcaDs || command == Command::kBench) {
      sub->add_option("--ds-cells", ds_cells, "fan | arrangement")
          ->check(CLI::IsMember({"fan", "arrangement"}));
    }
    if (command == Command::kBench) {
      sub->add_option("--problem", problem, "spca | spca-ds")
          ->check(CLI::IsMember({"spca", "spca-ds"}));
    }
    subs.emplace_back(sub, command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidParameters;
  }
  for (const auto& [sub, command] : subs)
    if (sub->parsed()) config.command = command;
  config.input_kind = kind == "samples" ? InputKind::kSamples : InputKind::kCovariance;
  config.mode = mode == "exact" ? CellMode::kExact : CellMode::kRandomized;
  config.execution = serial ? Execution::kSerial : Execution::kParallel;
  config.ds_cells =
      ds_cells == "fan" ? DsCellStrategy::kOptimalityFan : DsCellStrategy::kArrangement;
  config.bench_problem = problem == "spca" ? BenchProblem::kSpca : BenchProblem::kSpcaDs;

  ordered_json doc;
  try {
    doc = run(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }

  const std::string text = doc.dump(2) + "\n";
  if (config.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output_path);
    file << text;
    if (!file) {
      err << "error: cannot write " << config.output_path << "\n";
      return kExitInputError;
    }
  }
  return kExitOk;
}

}  // namespace spca::cli

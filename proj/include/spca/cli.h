#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "spca/errors.h"
#include "spca/io.h"
#include "spca/spca.h"
#include "spca/spca_ds.h"

namespace spca::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidParameters = 2;
inline constexpr int kExitInputError = 3;
inline constexpr int kExitSolverFailure = 4;

enum class Command { kSolveSpca, kSolveSpcaDs, kOracleSpca, kOracleSpcaDs, kFactor, kBench };
enum class BenchProblem { kSpca, kSpcaDs };

struct RunConfig {
  Command command = Command::kSolveSpca;
  std::string input_path;
  InputKind input_kind = InputKind::kCovariance;
  std::size_t d = 1;
  std::size_t s = 1;
  double tol_rank = kDefaultTolRank;
  CellMode mode = CellMode::kExact;
  std::uint64_t seed = 0;
  std::size_t samples = 20000;
  Execution execution = Execution::kParallel;
  BenchProblem bench_problem = BenchProblem::kSpca;
  DsCellStrategy ds_cells = DsCellStrategy::kOptimalityFan;
  std::string output_path;  // empty: stdout
};

const char* command_name(Command command);
int exit_code(ErrorCode code);

nlohmann::ordered_json run(const RunConfig& config, const SymmetricMatrix& k);
// Reads the input named in the config, then dispatches.
nlohmann::ordered_json run(const RunConfig& config);

// Parses argv, runs, writes the document. Returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spca::cli

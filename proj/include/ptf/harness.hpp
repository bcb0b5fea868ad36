#pragma once

#include <ptf/shape.hpp>
#include <ptf/threshold_analysis.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptf::harness
{

enum class Mode
{
  VerifyGate,
  SignDegree,
  MinWeightLp,
  MinWeightExact,
  Lemmas,
  Theorem,
  K5Table
};

std::string_view to_string( Mode m );
Mode parse_mode( std::string_view name );

struct Budgets
{
  std::size_t max_vars = 16;      ///< exhaustive checks and LP row generation
  std::size_t max_columns = 600;  ///< monomial columns of an LP
  std::size_t node_budget = 20'000;
  int dmax = 3;
};

struct ExperimentSpec
{
  std::string name;
  Variant variant = Variant::Weak;
  std::vector<std::vector<int>> shapes;
  std::vector<Mode> modes;
  std::vector<CoefficientLemma> lemmas;
  std::vector<int> lemma_ks;
  int table_n = 105;              ///< K5Table: n for the (k-1)^(n/k) rows
  Budgets budgets;
  std::string out;                ///< output directory, empty for none

  /// Throws std::invalid_argument for non-positive budgets or shapes that cannot be built.
  void validate() const;
};

std::string to_json( ExperimentSpec const& spec );
ExperimentSpec spec_from_json( std::string_view text );

std::vector<std::string> preset_names();
ExperimentSpec preset( std::string_view name );

struct ResultRow
{
  std::string experiment;
  std::string shape;
  std::string metric;
  std::string value;       ///< exact decimal or p/q string
  std::string verdict;     ///< PASS, FAIL, CERTIFIED, SKIPPED, NOT_ASSERTED or INFO
  std::string certificate; ///< SHA-256 of the stored certificate, empty for none
  double seconds = 0.0;
};

struct RunOptions
{
  std::size_t workers = 1;
  std::uint64_t seed = 0; ///< permutes scheduling only
};

struct RunResult
{
  std::string experiment;
  std::vector<ResultRow> rows;
  std::map<std::string, std::string> certificates; ///< hash -> JSON document

  bool failed() const;
  int exit_status() const { return failed() ? 1 : 0; }
};

RunResult run( ExperimentSpec const& spec, RunOptions const& options = {} );

std::string csv_header( bool with_timing = true );
std::string to_csv( RunResult const& result, bool with_timing = true );
std::string to_json( RunResult const& result );

/// Writes <dir>/<name>.csv, <dir>/<name>.json and <dir>/certificates/<hash>.json.
void write_outputs( RunResult const& result, std::string const& dir );

std::string sha256_hex( std::string_view data );

/// Re-verifies a stored certificate document from scratch.
lp::CheckResult replay_certificate( std::string_view json_text );

} // namespace ptf::harness

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptf::lp
{

using Rational = mpq_class;

/// (variable index, coefficient) pairs; duplicates are summed on insertion.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

enum class Relation
{
  LessEq,
  GreaterEq,
  Equal
};

enum class VarDomain
{
  Free,
  NonNegative
};

enum class ObjectiveKind
{
  Feasibility, ///< no objective
  Linear,      ///< minimize objective . x
  L1           ///< minimize sum |x_v|
};

struct Constraint
{
  SparseRow row;
  Relation rel = Relation::LessEq;
  Rational rhs;
  /// Lazy rows are only brought into the tableau once a candidate violates them.
  bool lazy = false;
};

class dimension_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class resource_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct LpProblem
{
  std::vector<std::string> names;
  std::vector<VarDomain> domains;
  ObjectiveKind objective_kind = ObjectiveKind::Feasibility;
  SparseRow objective;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const { return names.size(); }
  std::size_t add_var( std::string name, VarDomain domain = VarDomain::Free );
  std::size_t add_constraint( SparseRow row, Relation rel, Rational rhs, bool lazy = false );
  void minimize( SparseRow objective_row );

  /// Throws dimension_error on inconsistent sizes or out-of-range indices.
  void validate() const;
};

/// Sorts by index, merges duplicates and drops zeros.
SparseRow normalized( SparseRow row );

Rational dot( SparseRow const& row, std::vector<Rational> const& x );

enum class LpStatus
{
  Optimal,
  Feasible,
  Infeasible,
  Unbounded
};

std::string_view to_string( LpStatus status );

/*! \brief Solver result with its certificate.

  Multipliers (farkas, dual) are indexed by constraint and refer to the
  normalized row s*row <= s*rhs with s = -1 for GreaterEq and s = 1
  otherwise. They are nonnegative on inequalities and free on equalities.
*/
struct LpOutcome
{
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> witness;
  Rational value;
  std::vector<Rational> farkas;
  std::vector<Rational> dual;
  std::vector<Rational> ray;
  std::size_t pivots = 0;
  std::size_t rounds = 0;      ///< separation rounds
  std::size_t active_rows = 0; ///< constraints in the final tableau
};

enum class PivotRule
{
  Bland,  ///< least index, anti-cycling
  Dantzig ///< steepest reduced cost or most infeasible row, Bland after a degenerate streak
};

struct SolveOptions
{
  PivotRule rule = PivotRule::Dantzig;
  std::size_t max_pivots = 20'000'000;
  std::size_t lazy_batch = 64;
};

/// Certified solve. Lazy constraints are separated against each candidate.
LpOutcome solve( LpProblem const& problem, SolveOptions const& options = {} );

/// Minimizes sum |x_v| under the constraints of `problem` (its objective is ignored).
LpOutcome min_l1( LpProblem problem, SolveOptions const& options = {} );

enum class IlpStatus
{
  Optimal,
  Infeasible,
  BudgetExhausted
};

std::string_view to_string( IlpStatus status );

struct IlpOptions
{
  std::size_t node_budget = 200'000;
  SolveOptions lp;
};

struct IlpOutcome
{
  IlpStatus status = IlpStatus::Infeasible;
  std::optional<Rational> value; ///< best integer objective found
  std::vector<Rational> witness;
  Rational lower_bound;          ///< proven lower bound on the integer optimum
  Rational relaxation;           ///< root LP optimum
  LpOutcome root;
  std::size_t nodes = 0;
  std::size_t pivots = 0;
};

/// Integer minimum of a Linear or L1 objective with all variables integral.
IlpOutcome ilp_min( LpProblem const& problem, IlpOptions const& options = {} );

struct CheckResult
{
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static CheckResult fail( std::string why ) { return { false, std::move( why ) }; }
};

Rational objective_value( LpProblem const& problem, std::vector<Rational> const& x );
CheckResult check_witness( LpProblem const& problem, std::vector<Rational> const& x );
CheckResult check_farkas( LpProblem const& problem, std::vector<Rational> const& farkas );
CheckResult check_dual( LpProblem const& problem, std::vector<Rational> const& dual, Rational const& value );
CheckResult check_ray( LpProblem const& problem, std::vector<Rational> const& ray );
/// Re-verifies whatever certificate the outcome's status calls for.
CheckResult check_outcome( LpProblem const& problem, LpOutcome const& outcome );

/// Plain-text form, one declaration per line, rationals written as p/q.
std::string to_text( LpProblem const& problem );
LpProblem parse_text( std::string_view text );

} // namespace ptf::lp

#pragma once

#include <ptf/bool_function.hpp>
#include <ptf/exact_lp.hpp>
#include <ptf/polynomial.hpp>
#include <ptf/shape.hpp>
#include <ptf/tuple_order.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptf
{

using lp::Rational;

/* Sign representation */

struct SignCheck
{
  bool pass = true;
  std::optional<std::uint64_t> counterexample; ///< first failing input index
  mpz_class value;                             ///< p at the counterexample
  std::uint64_t inputs_checked = 0;
};

/// Exhaustive check of f(x) = 1 iff p(x) >= 0. UV polynomials are evaluated
/// at the derived u/v values of each input.
SignCheck check_sign_representation( IntPolynomial const& p, BoolFun const& f, std::size_t max_vars = 24 );

enum class RepBasis
{
  XY,            ///< all multilinear monomials of degree <= d in the inputs
  UvSymmetrized, ///< the |K| products u^1_{a_1} ... u^d_{a_d}
  LinearU        ///< sum_j w_j u_j for a single GT or g block
};

/*! \brief Linear constraints whose integer solutions are exactly the gates.

  One row per input (rows repeating the same coefficient pattern are
  dropped): positive inputs give p >= 0, negative inputs p <= -1. Rows are
  lazy, so the solver only materializes the ones it needs.
*/
struct RepresentationProblem
{
  RepBasis basis = RepBasis::XY;
  int degree = 0;
  std::size_t num_inputs = 0;            ///< number of Boolean input variables
  std::optional<GroupShape> shape;
  std::vector<Monomial> monomials;       ///< column meaning (XY ids or UV ids)
  std::vector<TupleIndex> tuples;        ///< UvSymmetrized: tuple of each column
  std::vector<int> labels;               ///< LinearU: index j of each column
  lp::LpProblem lp;
  std::vector<std::uint64_t> row_input;  ///< a representative input per row
};

RepresentationProblem xy_representation( BoolFun const& f, int degree,
                                         std::optional<GroupShape> shape = std::nullopt );
RepresentationProblem uv_representation( GroupShape const& shape );
/// Degree 1 gates sum_{j=1..k} w_j u_j for GT on u = x - y in {-1,0,1}^k.
RepresentationProblem gt_linear_representation( int k, MsbPosition msb );
/// Degree 1 gates sum_{j=0..k-1} w_j L_j(x) for g on x in {-1,1}^k.
RepresentationProblem g_linear_representation( int k, GVariant variant );

/// Smallest positive integer multiple of a rational vector.
std::vector<mpz_class> primitive_integer_vector( std::vector<Rational> const& x );

/// The gate polynomial with column coefficients `coeffs` (XY or UvSymmetrized only).
IntPolynomial gate_polynomial( RepresentationProblem const& problem, std::vector<mpz_class> const& coeffs );

/* Sign degree */

struct DegreeAttempt
{
  int degree = 0;
  std::size_t columns = 0;
  lp::LpOutcome outcome;
  bool certificate_ok = false;
};

struct SignDegreeResult
{
  std::optional<int> degree; ///< empty when > dmax
  std::vector<DegreeAttempt> attempts;
  std::optional<IntPolynomial> gate;
  bool gate_verified = false;
};

SignDegreeResult sign_degree( BoolFun const& f, int dmax, std::optional<GroupShape> shape = std::nullopt,
                              lp::SolveOptions const& options = {} );

/* Minimal weight */

enum class WeightMode
{
  LP,
  Exact
};

enum class WeightStatus
{
  Solved,
  Infeasible,
  BudgetExhausted
};

std::string_view to_string( WeightStatus s );

struct WeightOptions
{
  std::size_t node_budget = 200'000;
  lp::SolveOptions lp;
};

struct WeightResult
{
  WeightMode mode = WeightMode::LP;
  WeightStatus status = WeightStatus::Infeasible;
  Rational lp_value;                 ///< certified L1 optimum of the relaxation
  bool lp_certificate_ok = false;
  std::vector<Rational> lp_witness;
  lp::LpOutcome lp;
  std::optional<mpz_class> exact;    ///< W(f,d) in exact mode
  mpz_class lower_bound;             ///< best proven integer lower bound
  std::optional<IntPolynomial> gate; ///< integer gate of minimal (or best found) weight
  bool gate_verified = false;
  std::size_t nodes = 0;
  std::size_t pivots = 0;
};

WeightResult min_weight( BoolFun const& f, int degree, WeightMode mode, std::optional<GroupShape> shape = std::nullopt,
                         WeightOptions const& options = {} );
WeightResult min_weight( RepresentationProblem const& problem, WeightMode mode, BoolFun const* f,
                         WeightOptions const& options = {} );

/* Coefficient inequalities */

/// sum lhs . w >= rhs, or > rhs when strict; indices are columns of a representation problem.
struct Inequality
{
  lp::SparseRow lhs;
  Rational rhs;
  bool strict = false;
  std::string text;
};

struct InequalityVerdict
{
  Inequality target;
  bool certified = false;
  lp::LpProblem problem; ///< base rows plus the negated target
  lp::LpOutcome outcome;
  bool certificate_ok = false;           ///< Farkas re-check when certified
  std::vector<mpz_class> violating_gate; ///< integer witness when not certified
  bool witness_ok = false;               ///< witness re-checked by substitution
};

/// Adjoins the integer negation of `target` and decides feasibility.
InequalityVerdict certify_inequality( RepresentationProblem const& base, Inequality const& target,
                                      lp::SolveOptions const& options = {} );

enum class CoefficientLemma
{
  GtExp,  ///< w_j >= 2^{j-2} w_1 (j = 2..k) and w_1 > 0
  GtStep, ///< w_j >= w_{j-1} (j = 2..k)
  Gt0Exp, ///< GT with x_1 most significant: w_{k-j+1} >= 2^{j-2} w_k (j = 2..k) and w_k > 0
  Gt0Step,///< w_{j-1} >= w_j (j = 2..k)
  G1Pos,  ///< w_j > 0 (j = 0..k-1) for g_1
  G1Mono, ///< w_j > w_{j-1} (j = 2..k-1) for g_1
  G0All   ///< w_0 < 0, w_j > 0 (j >= 1), w_{j-1} > w_j (j = 2..k-1) for g_0
};

std::string_view to_string( CoefficientLemma lemma );
CoefficientLemma parse_lemma( std::string_view name );
std::vector<CoefficientLemma> all_lemmas();

RepresentationProblem lemma_base( CoefficientLemma lemma, int k );
std::vector<Inequality> lemma_targets( CoefficientLemma lemma, int k );

struct LemmaReport
{
  CoefficientLemma lemma;
  int k = 0;
  std::vector<InequalityVerdict> items;

  bool certified() const;
};

LemmaReport certify_coefficient_lemma( CoefficientLemma lemma, int k, lp::SolveOptions const& options = {} );

/* Theorem bound */

struct TheoremBound
{
  bool asserted = false; ///< hypotheses hold
  long long exponent = 0;
  mpz_class value;       ///< 2^exponent, or 1 when the exponent is negative
  std::string formula;
};

TheoremBound theorem_bound( GroupShape const& shape );

/* Instance report */

enum class Verdict
{
  Pass,
  Fail,
  Skipped,
  NotAsserted
};

std::string_view to_string( Verdict v );

struct ChainCheck
{
  TupleIndex alpha;
  TupleIndex beta;
  long long exponent = 0;
  mpz_class w_alpha;
  mpz_class w_beta;
  bool holds = false;          ///< on the solver witness
  std::optional<bool> lp_certified; ///< for every gate, via the symmetrized problem
  std::optional<InequalityVerdict> certificate;
};

struct ReportOptions
{
  WeightMode mode = WeightMode::Exact;
  WeightOptions weight;
  bool certify_chain = true;
  std::optional<WeightResult> weight_result; ///< reused instead of solving again
};

struct BoundReport
{
  GroupShape shape;
  std::size_t n = 0;
  int d = 0;
  TheoremBound bound;
  std::optional<Rational> lp_lower_bound;
  bool lp_certificate_ok = false;
  WeightStatus weight_status = WeightStatus::Infeasible;
  std::optional<mpz_class> exact_weight;
  mpz_class weight_lower_bound;
  std::size_t nodes = 0;
  mpz_class witness_gate_weight;
  bool witness_gate_pass = false;
  mpz_class uv_weight;        ///< W(to_uv(witness gate))
  mpz_class uv_limit;         ///< 2^d W or n^d W
  WeightResult weight;
  std::optional<ChainCheck> chain;
  std::vector<std::pair<std::string, Verdict>> verdicts;

  bool failed() const;
};

BoundReport verify_theorem_instance( GroupShape const& shape, ReportOptions const& options = {} );

/// Limit in W(to_uv(p)) <= limit * W(p): 2^d for weak shapes, n^d for strong ones.
mpz_class basis_change_factor( GroupShape const& shape );

std::string to_json( BoundReport const& report );
std::string bound_csv_header();
std::string to_csv_row( BoundReport const& report );

} // namespace ptf

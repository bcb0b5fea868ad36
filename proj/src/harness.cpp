#include <ptf/harness.hpp>

#include <ptf/bool_function.hpp>
#include <ptf/polynomial.hpp>
#include <ptf/tuple_order.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace ptf::harness
{

using json = nlohmann::ordered_json;

namespace
{

struct ModeName
{
  Mode mode;
  std::string_view name;
};

constexpr ModeName mode_names[] = { { Mode::VerifyGate, "verify-gate" },       { Mode::SignDegree, "signdeg" },
                                    { Mode::MinWeightLp, "minweight-lp" },     { Mode::MinWeightExact, "minweight-exact" },
                                    { Mode::Lemmas, "lemmas" },                { Mode::Theorem, "theorem" },
                                    { Mode::K5Table, "k5-table" } };

bool has_mode( ExperimentSpec const& spec, Mode m )
{
  return std::find( spec.modes.begin(), spec.modes.end(), m ) != spec.modes.end();
}

} // namespace

std::string_view to_string( Mode m )
{
  for ( auto const& [mode, name] : mode_names )
    if ( mode == m )
      return name;
  return "?";
}

Mode parse_mode( std::string_view name )
{
  for ( auto const& [mode, mode_name] : mode_names )
    if ( mode_name == name )
      return mode;
  throw std::invalid_argument( "unknown mode '" + std::string( name ) + "'" );
}

void ExperimentSpec::validate() const
{
  if ( name.empty() )
    throw std::invalid_argument( "experiment name is empty" );
  if ( budgets.max_vars == 0 || budgets.max_columns == 0 || budgets.node_budget == 0 || budgets.dmax <= 0 )
    throw std::invalid_argument( "budgets must be positive" );
  if ( budgets.max_vars > BoolFun::max_vars )
    throw std::invalid_argument( "max_vars cannot exceed " + std::to_string( BoolFun::max_vars ) );
  for ( auto const& ks : shapes )
  {
    GroupShape const shape( ks, variant );
    if ( !shape.constructible() )
      throw std::invalid_argument( "shape " + shape.to_string() + " is not constructible" );
  }
  if ( has_mode( *this, Mode::Lemmas ) && lemmas.empty() )
    throw std::invalid_argument( "lemmas mode needs at least one lemma" );
  for ( int k : lemma_ks )
    if ( k < 1 )
      throw std::invalid_argument( "lemma sizes must be positive" );
  if ( has_mode( *this, Mode::K5Table ) && table_n < 2 )
    throw std::invalid_argument( "table_n must be at least 2" );
}

std::string to_json( ExperimentSpec const& spec )
{
  json j;
  j["name"] = spec.name;
  j["variant"] = std::string( to_string( spec.variant ) );
  j["shapes"] = spec.shapes;
  json modes = json::array();
  for ( auto m : spec.modes )
    modes.push_back( std::string( to_string( m ) ) );
  j["modes"] = std::move( modes );
  json lemmas = json::array();
  for ( auto l : spec.lemmas )
    lemmas.push_back( std::string( to_string( l ) ) );
  j["lemmas"] = std::move( lemmas );
  j["lemma_ks"] = spec.lemma_ks;
  j["table_n"] = spec.table_n;
  j["budgets"] = { { "max_vars", spec.budgets.max_vars },
                   { "max_columns", spec.budgets.max_columns },
                   { "node_budget", spec.budgets.node_budget },
                   { "dmax", spec.budgets.dmax } };
  j["out"] = spec.out;
  return j.dump( 2 );
}

ExperimentSpec spec_from_json( std::string_view text )
{
  json j;
  try
  {
    j = json::parse( text );
  }
  catch ( json::parse_error const& e )
  {
    throw std::invalid_argument( std::string( "spec is not valid JSON: " ) + e.what() );
  }
  if ( !j.is_object() )
    throw std::invalid_argument( "spec must be a JSON object" );
  try
  {
    ExperimentSpec spec;
    spec.name = j.at( "name" ).get<std::string>();
    spec.variant = parse_variant( j.value( "variant", std::string( "weak" ) ) );
    spec.shapes = j.value( "shapes", std::vector<std::vector<int>>{} );
    for ( auto const& m : j.value( "modes", std::vector<std::string>{} ) )
      spec.modes.push_back( parse_mode( m ) );
    for ( auto const& l : j.value( "lemmas", std::vector<std::string>{} ) )
      spec.lemmas.push_back( parse_lemma( l ) );
    spec.lemma_ks = j.value( "lemma_ks", std::vector<int>{} );
    spec.table_n = j.value( "table_n", spec.table_n );
    if ( j.contains( "budgets" ) )
    {
      auto const& b = j.at( "budgets" );
      spec.budgets.max_vars = b.value( "max_vars", spec.budgets.max_vars );
      spec.budgets.max_columns = b.value( "max_columns", spec.budgets.max_columns );
      spec.budgets.node_budget = b.value( "node_budget", spec.budgets.node_budget );
      spec.budgets.dmax = b.value( "dmax", spec.budgets.dmax );
    }
    spec.out = j.value( "out", std::string{} );
    return spec;
  }
  catch ( json::exception const& e )
  {
    throw std::invalid_argument( std::string( "malformed spec: " ) + e.what() );
  }
}

std::vector<std::string> preset_names()
{
  return { "weak-2-3",      "strong-3-3",  "gt-lemmas-k6", "strong-lemmas",
           "weak-gates",    "strong-gates", "k5-optimal",   "gt-k4" };
}

ExperimentSpec preset( std::string_view name )
{
  ExperimentSpec s;
  s.name = std::string( name );
  if ( name == "weak-2-3" )
  {
    s.variant = Variant::Weak;
    s.shapes = { { 2, 3 } };
    s.modes = { Mode::VerifyGate, Mode::SignDegree, Mode::MinWeightLp, Mode::MinWeightExact, Mode::Theorem,
                Mode::Lemmas };
    s.lemmas = { CoefficientLemma::GtExp, CoefficientLemma::GtStep };
    s.lemma_ks = { 3 };
  }
  else if ( name == "strong-3-3" )
  {
    s.variant = Variant::Strong;
    s.shapes = { { 3, 3 } };
    s.modes = { Mode::VerifyGate, Mode::SignDegree };
  }
  else if ( name == "gt-lemmas-k6" )
  {
    s.modes = { Mode::Lemmas };
    s.lemmas = { CoefficientLemma::GtExp, CoefficientLemma::GtStep };
    s.lemma_ks = { 2, 3, 4, 5, 6 };
  }
  else if ( name == "strong-lemmas" )
  {
    s.variant = Variant::Strong;
    s.modes = { Mode::Lemmas };
    s.lemmas = { CoefficientLemma::G1Pos, CoefficientLemma::G1Mono, CoefficientLemma::G0All };
    s.lemma_ks = { 3, 5 };
  }
  else if ( name == "weak-gates" )
  {
    s.shapes = { { 2, 3 }, { 2, 2, 3 }, { 4, 3 } };
    s.modes = { Mode::VerifyGate };
  }
  else if ( name == "strong-gates" )
  {
    s.variant = Variant::Strong;
    s.shapes = { { 3, 3 }, { 5, 3 } };
    s.modes = { Mode::VerifyGate };
  }
  else if ( name == "k5-optimal" )
  {
    s.variant = Variant::Strong;
    s.modes = { Mode::K5Table };
    s.table_n = 105;
  }
  else if ( name == "gt-k4" )
  {
    s.modes = { Mode::Lemmas };
    s.lemmas = { CoefficientLemma::GtExp, CoefficientLemma::GtStep, CoefficientLemma::Gt0Exp,
                 CoefficientLemma::Gt0Step };
    s.lemma_ks = { 4 };
  }
  else
    throw std::invalid_argument( "unknown preset '" + std::string( name ) + "'" );
  return s;
}

bool RunResult::failed() const
{
  return std::any_of( rows.begin(), rows.end(), []( ResultRow const& r ) { return r.verdict == "FAIL"; } );
}

std::string sha256_hex( std::string_view data )
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if ( EVP_Digest( data.data(), data.size(), digest, &len, EVP_sha256(), nullptr ) != 1 )
    throw std::runtime_error( "SHA-256 computation failed" );
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve( 2 * len );
  for ( unsigned int i = 0; i < len; ++i )
  {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace
{

/* Certificate documents */

json rationals( std::vector<Rational> const& v )
{
  json a = json::array();
  for ( auto const& q : v )
    a.push_back( q.get_str() );
  return a;
}

std::vector<Rational> parse_rationals( json const& a )
{
  std::vector<Rational> v;
  for ( auto const& s : a )
  {
    Rational q( s.get<std::string>() );
    q.canonicalize();
    v.push_back( q );
  }
  return v;
}

json shape_json( GroupShape const& shape )
{
  return { { "variant", std::string( to_string( shape.variant ) ) }, { "ks", shape.ks } };
}

GroupShape shape_from( json const& j )
{
  GroupShape shape( j.at( "ks" ).get<std::vector<int>>(), parse_variant( j.at( "variant" ).get<std::string>() ) );
  shape.validate();
  return shape;
}

json sign_rep_doc( BoolFun const& f, IntPolynomial const& p )
{
  json j;
  j["kind"] = "sign_representation";
  j["function"] = json::parse( to_json( f ) );
  j["polynomial"] = json::parse( to_json( p ) );
  j["weight"] = p.weight().get_str();
  return j;
}

json lp_infeasible_doc( lp::LpProblem const& problem, lp::LpOutcome const& outcome, std::string claim )
{
  json j;
  j["kind"] = "lp_infeasible";
  j["claim"] = std::move( claim );
  j["lp"] = lp::to_text( problem );
  j["farkas"] = rationals( outcome.farkas );
  return j;
}

json lp_optimum_doc( lp::LpProblem const& problem, lp::LpOutcome const& outcome )
{
  json j;
  j["kind"] = "lp_optimum";
  j["lp"] = lp::to_text( problem );
  j["value"] = outcome.value.get_str();
  j["witness"] = rationals( outcome.witness );
  j["dual"] = rationals( outcome.dual );
  return j;
}

lp::LpProblem l1_relaxation( RepresentationProblem const& problem )
{
  auto relaxation = problem.lp;
  relaxation.objective_kind = lp::ObjectiveKind::L1;
  relaxation.objective.clear();
  return relaxation;
}

std::vector<mpz_class> gate_columns( RepresentationProblem const& problem, IntPolynomial const& gate )
{
  std::vector<mpz_class> coeffs;
  for ( auto const& m : problem.monomials )
    coeffs.push_back( gate.coefficient( m ) );
  return coeffs;
}

json integer_optimum_doc( RepresentationProblem const& problem, WeightResult const& w )
{
  json j;
  j["kind"] = "integer_optimum";
  j["lp"] = lp::to_text( l1_relaxation( problem ) );
  j["value"] = w.exact->get_str();
  json witness = json::array();
  for ( auto const& c : gate_columns( problem, *w.gate ) )
    witness.push_back( c.get_str() );
  j["witness"] = std::move( witness );
  j["relaxation_value"] = w.lp_value.get_str();
  j["relaxation_dual"] = rationals( w.lp.dual );
  j["nodes"] = w.nodes;
  j["note"] = "replay checks integrality, feasibility, the objective value and the relaxation dual bound; "
              "minimality rests on the branch-and-bound search";
  return j;
}

json witness_gate_doc( GroupShape const& shape, BoolFun const& f, IntPolynomial const& gate )
{
  json j = sign_rep_doc( f, gate );
  j["kind"] = "witness_gate";
  j["shape"] = shape_json( shape );
  if ( shape.variant == Variant::Weak )
  {
    auto const size = static_cast<mp_bitcnt_t>( shape.index_set_size() );
    mpz_class const expected = ( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( shape.depth() ) ) *
                               ( ( mpz_class( 1 ) << ( size + 1 ) ) - 2 );
    j["expected_weight"] = expected.get_str();
  }
  return j;
}

mpz_class weak_formula( GroupShape const& shape )
{
  auto const size = static_cast<mp_bitcnt_t>( shape.index_set_size() );
  return ( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( shape.depth() ) ) * ( ( mpz_class( 1 ) << ( size + 1 ) ) - 2 );
}

/* k5 table */

struct K5Table
{
  std::vector<std::pair<int, mpz_class>> rows; ///< k, (k-1)^(n/k) for k | n, k in {3,5,7}
  int table_argmax = 0;
  int integer_argmax = 0; ///< argmax of (k-1)^(1/k) over k = 2..12
};

K5Table k5_table( int n )
{
  K5Table t;
  for ( int k : { 3, 5, 7 } )
  {
    if ( n % k != 0 )
      continue;
    mpz_class v;
    mpz_ui_pow_ui( v.get_mpz_t(), static_cast<unsigned long>( k - 1 ), static_cast<unsigned long>( n / k ) );
    t.rows.emplace_back( k, v );
  }
  mpz_class best_value = -1;
  for ( auto const& [k, v] : t.rows )
    if ( v > best_value )
    {
      best_value = v;
      t.table_argmax = k;
    }
  // (a-1)^(1/a) > (b-1)^(1/b)  iff  (a-1)^b > (b-1)^a
  int best = 2;
  for ( int k = 3; k <= 12; ++k )
  {
    mpz_class lhs, rhs;
    mpz_ui_pow_ui( lhs.get_mpz_t(), static_cast<unsigned long>( k - 1 ), static_cast<unsigned long>( best ) );
    mpz_ui_pow_ui( rhs.get_mpz_t(), static_cast<unsigned long>( best - 1 ), static_cast<unsigned long>( k ) );
    if ( lhs > rhs )
      best = k;
  }
  t.integer_argmax = best;
  return t;
}

json k5_doc( int n, K5Table const& t )
{
  json j;
  j["kind"] = "k5_table";
  j["n"] = n;
  json rows = json::array();
  for ( auto const& [k, v] : t.rows )
    rows.push_back( { { "k", k }, { "value", v.get_str() } } );
  j["rows"] = std::move( rows );
  j["table_argmax"] = t.table_argmax;
  j["integer_argmax"] = t.integer_argmax;
  return j;
}

/* Replay */

lp::CheckResult replay( json const& doc );

lp::CheckResult replay_sign_rep( json const& doc )
{
  auto const f = bool_fun_from_json( doc.at( "function" ).dump() );
  auto const p = polynomial_from_json( doc.at( "polynomial" ).dump() );
  if ( doc.contains( "weight" ) && p.weight().get_str() != doc.at( "weight" ).get<std::string>() )
    return lp::CheckResult::fail( "stored weight does not match the polynomial" );
  auto const check = check_sign_representation( p, f, BoolFun::max_vars );
  if ( !check.pass )
    return lp::CheckResult::fail( "polynomial disagrees with the function on input " +
                                  std::to_string( *check.counterexample ) );
  return {};
}

lp::CheckResult replay_witness_gate( json const& doc )
{
  auto const shape = shape_from( doc.at( "shape" ) );
  auto const f = bool_fun_from_json( doc.at( "function" ).dump() );
  auto const p = polynomial_from_json( doc.at( "polynomial" ).dump() );
  if ( !( f == make_hard( shape ) ) )
    return lp::CheckResult::fail( "function is not the hard function of the shape" );
  if ( !( p == witness_gate( shape ) ) )
    return lp::CheckResult::fail( "polynomial is not the witness gate of the shape" );
  if ( doc.contains( "expected_weight" ) && p.weight() != weak_formula( shape ) )
    return lp::CheckResult::fail( "witness gate weight differs from the closed form" );
  return replay_sign_rep( doc );
}

lp::CheckResult replay_basis_change( json const& doc )
{
  auto const shape = shape_from( doc.at( "shape" ) );
  auto const p = polynomial_from_json( doc.at( "polynomial" ).dump() );
  mpz_class const uv_weight = to_uv( p ).weight();
  if ( uv_weight.get_str() != doc.at( "uv_weight" ).get<std::string>() )
    return lp::CheckResult::fail( "stored W(to_uv(p)) does not match" );
  if ( uv_weight > basis_change_factor( shape ) * p.weight() )
    return lp::CheckResult::fail( "W(to_uv(p)) exceeds the basis-change limit" );
  return {};
}

lp::CheckResult replay_lp_infeasible( json const& doc )
{
  auto const problem = lp::parse_text( doc.at( "lp" ).get<std::string>() );
  return lp::check_farkas( problem, parse_rationals( doc.at( "farkas" ) ) );
}

lp::CheckResult replay_lp_optimum( json const& doc )
{
  auto const problem = lp::parse_text( doc.at( "lp" ).get<std::string>() );
  lp::LpOutcome outcome;
  outcome.status = lp::LpStatus::Optimal;
  outcome.value = Rational( doc.at( "value" ).get<std::string>() );
  outcome.value.canonicalize();
  outcome.witness = parse_rationals( doc.at( "witness" ) );
  outcome.dual = parse_rationals( doc.at( "dual" ) );
  return lp::check_outcome( problem, outcome );
}

lp::CheckResult replay_integer_optimum( json const& doc )
{
  auto const problem = lp::parse_text( doc.at( "lp" ).get<std::string>() );
  auto const witness = parse_rationals( doc.at( "witness" ) );
  for ( auto const& q : witness )
    if ( q.get_den() != 1 )
      return lp::CheckResult::fail( "witness is not integral" );
  if ( auto r = lp::check_witness( problem, witness ); !r )
    return r;
  Rational value( doc.at( "value" ).get<std::string>() );
  if ( lp::objective_value( problem, witness ) != value )
    return lp::CheckResult::fail( "witness objective differs from the stored value" );
  Rational relaxation( doc.at( "relaxation_value" ).get<std::string>() );
  relaxation.canonicalize();
  if ( auto r = lp::check_dual( problem, parse_rationals( doc.at( "relaxation_dual" ) ), relaxation ); !r )
    return r;
  if ( relaxation > value )
    return lp::CheckResult::fail( "integer value is below the relaxation bound" );
  return {};
}

// Certified lower bound on the integer optimum carried by an evidence document.
std::optional<mpz_class> evidence_lower_bound( json const& doc )
{
  auto const kind = doc.at( "kind" ).get<std::string>();
  if ( kind == "integer_optimum" )
    return mpz_class( doc.at( "value" ).get<std::string>() );
  if ( kind == "lp_optimum" )
  {
    Rational q( doc.at( "value" ).get<std::string>() );
    q.canonicalize();
    mpz_class z;
    mpz_cdiv_q( z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t() );
    return z;
  }
  return std::nullopt;
}

lp::CheckResult replay_theorem_bound( json const& doc )
{
  auto const shape = shape_from( doc.at( "shape" ) );
  auto const bound = theorem_bound( shape );
  if ( bound.value.get_str() != doc.at( "bound" ).get<std::string>() )
    return lp::CheckResult::fail( "stored bound differs from the recomputed bound" );
  if ( !doc.contains( "evidence" ) )
    return {};
  auto const& evidence = doc.at( "evidence" );
  if ( auto r = replay( evidence ); !r )
    return r;
  auto const lower = evidence_lower_bound( evidence );
  if ( !lower )
    return lp::CheckResult::fail( "evidence carries no lower bound" );
  if ( bound.asserted && *lower < bound.value )
    return lp::CheckResult::fail( "certified weight " + lower->get_str() + " is below the bound" );
  return {};
}

lp::CheckResult replay_chain( json const& doc )
{
  auto const shape = shape_from( doc.at( "shape" ) );
  auto const p = polynomial_from_json( doc.at( "polynomial" ).dump() );
  OrderContext const ctx( shape );
  auto const alpha = chain_start( ctx, TupleIndex{ std::vector<int>( shape.depth(), 0 ) }, 0 );
  auto const chain = lemma_chain( ctx, alpha, 0 );
  if ( alpha.to_string() != doc.at( "alpha" ).get<std::string>() ||
       chain.end.to_string() != doc.at( "beta" ).get<std::string>() ||
       chain.exponent != doc.at( "exponent" ).get<long long>() )
    return lp::CheckResult::fail( "stored chain endpoints differ from the recomputed chain" );
  auto const w = tuple_coefficients( symmetrize( to_uv( p ) ) );
  auto lookup = [&]( TupleIndex const& t ) {
    auto it = w.find( t );
    return it == w.end() ? mpz_class( 0 ) : it->second;
  };
  auto const wa = lookup( alpha );
  auto const wb = lookup( chain.end );
  if ( wa.get_str() != doc.at( "w_alpha" ).get<std::string>() || wb.get_str() != doc.at( "w_beta" ).get<std::string>() )
    return lp::CheckResult::fail( "stored coefficients differ from the symmetrized gate" );
  if ( wb < ( wa << static_cast<mp_bitcnt_t>( chain.exponent ) ) )
    return lp::CheckResult::fail( "chain inequality fails on the gate" );
  return {};
}

lp::CheckResult replay_sign_degree( json const& doc )
{
  auto const f = bool_fun_from_json( doc.at( "function" ).dump() );
  int const degree = doc.at( "degree" ).get<int>();
  auto const& gate = doc.at( "gate" );
  if ( auto r = replay_sign_rep( gate ); !r )
    return r;
  auto const p = polynomial_from_json( gate.at( "polynomial" ).dump() );
  if ( !( bool_fun_from_json( gate.at( "function" ).dump() ) == f ) )
    return lp::CheckResult::fail( "gate certificate is for a different function" );
  if ( p.degree() > degree )
    return lp::CheckResult::fail( "gate degree exceeds the claimed sign degree" );
  if ( degree == 0 )
    return {};
  auto const& lower = doc.at( "lower" );
  if ( auto r = replay_lp_infeasible( lower ); !r )
    return r;
  // The refuted LP must be the degree-(d-1) representation problem of f.
  auto const expected = xy_representation( f, degree - 1 ).lp;
  if ( lp::to_text( expected ) != lower.at( "lp" ).get<std::string>() )
    return lp::CheckResult::fail( "refuted LP is not the degree " + std::to_string( degree - 1 ) + " problem of f" );
  return {};
}

lp::CheckResult replay_violation( json const& doc )
{
  auto const problem = lp::parse_text( doc.at( "lp" ).get<std::string>() );
  return lp::check_witness( problem, parse_rationals( doc.at( "witness" ) ) );
}

lp::CheckResult replay_k5( json const& doc )
{
  int const n = doc.at( "n" ).get<int>();
  if ( k5_doc( n, k5_table( n ) ) != doc )
    return lp::CheckResult::fail( "table differs from the recomputed table" );
  return {};
}

lp::CheckResult replay( json const& doc )
{
  auto const kind = doc.at( "kind" ).get<std::string>();
  if ( kind == "sign_representation" )
    return replay_sign_rep( doc );
  if ( kind == "witness_gate" )
    return replay_witness_gate( doc );
  if ( kind == "basis_change" )
    return replay_basis_change( doc );
  if ( kind == "lp_infeasible" )
    return replay_lp_infeasible( doc );
  if ( kind == "lp_optimum" )
    return replay_lp_optimum( doc );
  if ( kind == "integer_optimum" )
    return replay_integer_optimum( doc );
  if ( kind == "theorem_bound" )
    return replay_theorem_bound( doc );
  if ( kind == "chain" )
    return replay_chain( doc );
  if ( kind == "sign_degree" )
    return replay_sign_degree( doc );
  if ( kind == "inequality_violation" )
    return replay_violation( doc );
  if ( kind == "k5_table" )
    return replay_k5( doc );
  return lp::CheckResult::fail( "unknown certificate kind '" + kind + "'" );
}

/* Tasks */

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
  return std::chrono::duration<double>( Clock::now() - start ).count();
}

// Rows and certificates produced by one task, merged in task order.
struct TaskOutput
{
  std::vector<ResultRow> rows;
  std::vector<std::pair<std::string, std::string>> certificates;
};

class Emitter
{
public:
  Emitter( std::string experiment, std::string shape, TaskOutput& out )
      : experiment_( std::move( experiment ) ), shape_( std::move( shape ) ), out_( out )
  {
  }

  std::string store( json const& doc )
  {
    auto text = doc.dump();
    auto hash = sha256_hex( text );
    out_.certificates.emplace_back( hash, std::move( text ) );
    return hash;
  }

  void row( std::string metric, std::string value, std::string verdict, std::string certificate, double seconds )
  {
    out_.rows.push_back( { experiment_, shape_, std::move( metric ), std::move( value ), std::move( verdict ),
                           std::move( certificate ), seconds } );
  }

  void set_shape( std::string shape ) { shape_ = std::move( shape ); }

private:
  std::string experiment_;
  std::string shape_;
  TaskOutput& out_;
};

std::string pass_fail( bool ok )
{
  return ok ? "PASS" : "FAIL";
}

std::string verdict_string( Verdict v )
{
  switch ( v )
  {
  case Verdict::Pass:
    return "PASS";
  case Verdict::Fail:
    return "FAIL";
  case Verdict::Skipped:
    return "SKIPPED";
  case Verdict::NotAsserted:
    return "NOT_ASSERTED";
  }
  return "FAIL";
}

std::size_t xy_columns( std::size_t n, int degree )
{
  std::size_t total = 0;
  mpz_class c = 1;
  for ( int i = 0; i <= degree && static_cast<std::size_t>( i ) <= n; ++i )
  {
    if ( i > 0 )
      c = c * static_cast<unsigned long>( n - static_cast<std::size_t>( i ) + 1 ) / static_cast<unsigned long>( i );
    if ( c > 1'000'000'000 )
      return SIZE_MAX;
    total += c.get_ui();
  }
  return total;
}

lp::SolveOptions solve_options()
{
  return {};
}

void gate_rows( GroupShape const& shape, BoolFun const& f, Emitter& e )
{
  auto start = Clock::now();
  auto const gate = witness_gate( shape );
  bool const pass = check_sign_representation( gate, f ).pass;
  auto const doc = witness_gate_doc( shape, f, gate );
  auto const hash = e.store( doc );
  double const t_gate = seconds_since( start );
  e.row( "witness_gate", gate.weight().get_str(), pass_fail( pass ), hash, t_gate );
  if ( shape.variant == Variant::Weak )
    e.row( "witness_weight_formula", gate.weight().get_str(), pass_fail( gate.weight() == weak_formula( shape ) ), hash,
           t_gate );

  start = Clock::now();
  auto const uv = to_uv( gate );
  mpz_class const limit = basis_change_factor( shape ) * gate.weight();
  json bc;
  bc["kind"] = "basis_change";
  bc["shape"] = shape_json( shape );
  bc["polynomial"] = json::parse( to_json( gate ) );
  bc["uv_weight"] = uv.weight().get_str();
  bc["factor"] = basis_change_factor( shape ).get_str();
  bc["limit"] = limit.get_str();
  e.row( "basis_change", uv.weight().get_str() + " <= " + limit.get_str(), pass_fail( uv.weight() <= limit ),
         e.store( bc ), seconds_since( start ) );

  start = Clock::now();
  auto const q = symmetrize( uv );
  bool const sym_pass = check_sign_representation( q, f ).pass;
  e.row( "symmetrized_gate", q.weight().get_str(), pass_fail( sym_pass ), e.store( sign_rep_doc( f, q ) ),
         seconds_since( start ) );
}

void sign_degree_rows( GroupShape const& shape, BoolFun const& f, Budgets const& budgets, Emitter& e )
{
  int dmax = budgets.dmax;
  while ( dmax > 0 && xy_columns( f.num_vars(), dmax ) > budgets.max_columns )
    --dmax;
  auto const start = Clock::now();
  auto const result = sign_degree( f, dmax, shape, solve_options() );
  double const elapsed = seconds_since( start );

  std::optional<json> lower;
  for ( auto const& a : result.attempts )
  {
    auto const metric = "degree_" + std::to_string( a.degree ) + "_lp";
    if ( a.outcome.status == lp::LpStatus::Infeasible )
    {
      auto const problem = xy_representation( f, a.degree, shape ).lp;
      auto doc = lp_infeasible_doc( problem, a.outcome,
                                    "no degree " + std::to_string( a.degree ) + " sign representation" );
      e.row( metric, "infeasible", a.certificate_ok ? "CERTIFIED" : "FAIL", e.store( doc ), elapsed );
      lower = std::move( doc );
    }
    else if ( result.gate )
      e.row( metric, "feasible", pass_fail( result.gate_verified ), e.store( sign_rep_doc( f, *result.gate ) ),
             elapsed );
  }

  if ( !result.degree )
  {
    bool const budget_limited = dmax < static_cast<int>( shape.depth() );
    e.row( "sign_degree", "> " + std::to_string( dmax ), budget_limited ? "SKIPPED" : "FAIL", "", elapsed );
    return;
  }
  json doc;
  doc["kind"] = "sign_degree";
  doc["function"] = json::parse( to_json( f ) );
  doc["degree"] = *result.degree;
  doc["gate"] = sign_rep_doc( f, *result.gate );
  if ( *result.degree > 0 )
    doc["lower"] = *lower;
  bool const certified = result.gate_verified && std::all_of( result.attempts.begin(), result.attempts.end(),
                                                               []( DegreeAttempt const& a ) {
                                                                 return a.outcome.status != lp::LpStatus::Infeasible ||
                                                                        a.certificate_ok;
                                                               } );
  bool const matches = *result.degree == static_cast<int>( shape.depth() );
  e.row( "sign_degree", std::to_string( *result.degree ), pass_fail( certified && matches ), e.store( doc ), elapsed );
}

struct WeightRun
{
  RepresentationProblem problem;
  WeightResult result;
  double seconds = 0.0;
};

WeightRun compute_weight( GroupShape const& shape, BoolFun const& f, WeightMode mode, Budgets const& budgets )
{
  WeightRun run;
  auto const start = Clock::now();
  run.problem = xy_representation( f, static_cast<int>( shape.depth() ), shape );
  WeightOptions options;
  options.node_budget = budgets.node_budget;
  options.lp = solve_options();
  run.result = min_weight( run.problem, mode, &f, options );
  run.seconds = seconds_since( start );
  return run;
}

void lp_weight_rows( WeightRun const& w, BoolFun const& f, Emitter& e )
{
  auto const& r = w.result;
  if ( r.status == WeightStatus::Infeasible )
  {
    e.row( "W_lp", "infeasible", "FAIL",
           e.store( lp_infeasible_doc( w.problem.lp, r.lp, "no representation of degree d" ) ), w.seconds );
    return;
  }
  e.row( "W_lp", r.lp_value.get_str(), pass_fail( r.lp_certificate_ok ),
         e.store( lp_optimum_doc( l1_relaxation( w.problem ), r.lp ) ), w.seconds );
  if ( r.mode == WeightMode::LP && r.gate )
    e.row( "W_lp_rounded_gate", r.gate->weight().get_str(), pass_fail( r.gate_verified ),
           e.store( sign_rep_doc( f, *r.gate ) ), w.seconds );
}

void exact_weight_rows( WeightRun const& w, BoolFun const& f, Emitter& e )
{
  auto const& r = w.result;
  if ( r.status == WeightStatus::Infeasible )
    return;
  if ( r.exact && r.gate )
  {
    e.row( "W_exact", r.exact->get_str(), pass_fail( r.gate_verified && r.lp_certificate_ok ),
           e.store( integer_optimum_doc( w.problem, r ) ), w.seconds );
    e.row( "W_exact_gate", r.gate->weight().get_str(), pass_fail( r.gate_verified ),
           e.store( sign_rep_doc( f, *r.gate ) ), w.seconds );
    return;
  }
  e.row( "W_exact_lower_bound", r.lower_bound.get_str(), "SKIPPED", "", w.seconds );
  if ( r.gate )
    e.row( "W_best_gate", r.gate->weight().get_str(), pass_fail( r.gate_verified ),
           e.store( sign_rep_doc( f, *r.gate ) ), w.seconds );
}

void theorem_rows( GroupShape const& shape, BoolFun const& f, WeightRun const& w, Emitter& e )
{
  auto const start = Clock::now();
  ReportOptions options;
  options.mode = w.result.mode;
  options.weight_result = w.result;
  options.weight.lp = solve_options();
  auto const report = verify_theorem_instance( shape, options );
  double const elapsed = seconds_since( start ) + w.seconds;

  json evidence = w.result.exact && w.result.gate ? integer_optimum_doc( w.problem, w.result )
                                                  : lp_optimum_doc( l1_relaxation( w.problem ), w.result.lp );
  for ( auto const& [name, verdict] : report.verdicts )
  {
    auto const v = verdict_string( verdict );
    if ( name == "theorem_bound" )
    {
      json doc;
      doc["kind"] = "theorem_bound";
      doc["shape"] = shape_json( shape );
      doc["formula"] = report.bound.formula;
      doc["exponent"] = report.bound.exponent;
      doc["bound"] = report.bound.value.get_str();
      doc["hypotheses"] = report.bound.asserted;
      if ( verdict == Verdict::Pass )
        doc["evidence"] = evidence;
      e.row( "theorem_bound", report.weight_lower_bound.get_str() + " >= " + report.bound.value.get_str(), v,
             e.store( doc ), elapsed );
    }
    else if ( name == "chain_witness" && report.chain && w.result.gate )
    {
      auto const& c = *report.chain;
      json doc;
      doc["kind"] = "chain";
      doc["shape"] = shape_json( shape );
      doc["alpha"] = c.alpha.to_string();
      doc["beta"] = c.beta.to_string();
      doc["exponent"] = c.exponent;
      doc["w_alpha"] = c.w_alpha.get_str();
      doc["w_beta"] = c.w_beta.get_str();
      doc["polynomial"] = json::parse( to_json( *w.result.gate ) );
      e.row( "chain_witness", "w" + c.beta.to_string() + "=" + c.w_beta.get_str() + " >= 2^" +
                                  std::to_string( c.exponent ) + "*w" + c.alpha.to_string() + "=" +
                                  mpz_class( c.w_alpha << static_cast<mp_bitcnt_t>( c.exponent ) ).get_str(),
             v, e.store( doc ), elapsed );
    }
    else if ( name == "chain_lp" && report.chain && report.chain->certificate )
    {
      auto const& item = *report.chain->certificate;
      if ( item.certified )
        e.row( "chain_lp", item.target.text, verdict == Verdict::Pass ? "CERTIFIED" : v,
               e.store( lp_infeasible_doc( item.problem, item.outcome, item.target.text ) ), elapsed );
      else
      {
        json doc;
        doc["kind"] = "inequality_violation";
        doc["claim"] = item.target.text;
        doc["lp"] = lp::to_text( item.problem );
        doc["witness"] = rationals( std::vector<Rational>( item.violating_gate.begin(), item.violating_gate.end() ) );
        e.row( "chain_lp", item.target.text, v, e.store( doc ), elapsed );
      }
    }
    else if ( name == "lp_certificate" )
      e.row( "theorem_lp_bound", w.result.lp_value.get_str(), v,
             e.store( lp_optimum_doc( l1_relaxation( w.problem ), w.result.lp ) ), elapsed );
    else if ( name == "weight_gate" && w.result.gate )
      e.row( "theorem_weight_gate", w.result.gate->weight().get_str(), v, e.store( sign_rep_doc( f, *w.result.gate ) ),
             elapsed );
    else if ( name == "representable" )
      e.row( "representable", "infeasible", v, "", elapsed );
  }
}

void shape_task( ExperimentSpec const& spec, GroupShape const& shape, Emitter& e )
{
  if ( shape.num_vars() > spec.budgets.max_vars )
  {
    e.row( "budget", "n=" + std::to_string( shape.num_vars() ) + " exceeds max_vars=" +
                         std::to_string( spec.budgets.max_vars ),
           "SKIPPED", "", 0.0 );
    return;
  }
  auto const f = make_hard( shape );
  if ( has_mode( spec, Mode::VerifyGate ) || has_mode( spec, Mode::Theorem ) )
    gate_rows( shape, f, e );
  if ( has_mode( spec, Mode::SignDegree ) )
    sign_degree_rows( shape, f, spec.budgets, e );

  bool const want_lp = has_mode( spec, Mode::MinWeightLp );
  bool const want_exact = has_mode( spec, Mode::MinWeightExact );
  bool const want_theorem = has_mode( spec, Mode::Theorem );
  if ( !want_lp && !want_exact && !want_theorem )
    return;
  auto const columns = xy_columns( shape.num_vars(), static_cast<int>( shape.depth() ) );
  if ( columns > spec.budgets.max_columns )
  {
    e.row( "budget", std::to_string( columns ) + " columns exceed max_columns=" +
                         std::to_string( spec.budgets.max_columns ),
           "SKIPPED", "", 0.0 );
    return;
  }
  std::optional<WeightRun> lp_run, exact_run;
  if ( want_lp || ( want_theorem && !want_exact ) )
  {
    lp_run = compute_weight( shape, f, WeightMode::LP, spec.budgets );
    if ( want_lp )
      lp_weight_rows( *lp_run, f, e );
  }
  if ( want_exact )
  {
    exact_run = compute_weight( shape, f, WeightMode::Exact, spec.budgets );
    exact_weight_rows( *exact_run, f, e );
  }
  if ( want_theorem )
    theorem_rows( shape, f, exact_run ? *exact_run : *lp_run, e );
}

void lemma_task( CoefficientLemma lemma, int k, Emitter& e )
{
  auto const start = Clock::now();
  auto const report = certify_coefficient_lemma( lemma, k, solve_options() );
  double const elapsed = seconds_since( start );
  if ( report.items.empty() )
  {
    e.row( "inequalities", "0", "SKIPPED", "", elapsed );
    return;
  }
  for ( auto const& item : report.items )
  {
    if ( item.certified )
      e.row( item.target.text, "infeasible", item.certificate_ok ? "CERTIFIED" : "FAIL",
             e.store( lp_infeasible_doc( item.problem, item.outcome, item.target.text ) ), elapsed );
    else
    {
      json doc;
      doc["kind"] = "inequality_violation";
      doc["claim"] = item.target.text;
      doc["lp"] = lp::to_text( item.problem );
      doc["witness"] = rationals( std::vector<Rational>( item.violating_gate.begin(), item.violating_gate.end() ) );
      e.row( item.target.text, "violated", "FAIL", e.store( doc ), elapsed );
    }
  }
}

void table_task( int n, Emitter& e )
{
  auto const start = Clock::now();
  auto const t = k5_table( n );
  double const elapsed = seconds_since( start );
  auto const hash = e.store( k5_doc( n, t ) );
  for ( auto const& [k, v] : t.rows )
  {
    e.set_shape( "n=" + std::to_string( n ) + " k=" + std::to_string( k ) );
    e.row( "(k-1)^(n/k)", v.get_str(), "INFO", hash, elapsed );
  }
  e.set_shape( "n=" + std::to_string( n ) );
  if ( !t.rows.empty() )
    e.row( "argmax_k_table", std::to_string( t.table_argmax ), pass_fail( t.table_argmax == 5 ), hash, elapsed );
  e.set_shape( "k=2..12" );
  e.row( "argmax_k_(k-1)^(1/k)", std::to_string( t.integer_argmax ), pass_fail( t.integer_argmax == 5 ), hash, elapsed );
}

struct Task
{
  std::string shape;
  std::function<void( Emitter& )> body;
};

} // namespace

lp::CheckResult replay_certificate( std::string_view json_text )
{
  try
  {
    return replay( json::parse( json_text ) );
  }
  catch ( std::exception const& ex )
  {
    return lp::CheckResult::fail( std::string( "malformed certificate: " ) + ex.what() );
  }
}

RunResult run( ExperimentSpec const& spec, RunOptions const& options )
{
  spec.validate();
  std::vector<Task> tasks;
  for ( auto const& ks : spec.shapes )
  {
    GroupShape const shape( ks, spec.variant );
    tasks.push_back( { shape.to_string(), [&spec, shape]( Emitter& e ) { shape_task( spec, shape, e ); } } );
  }
  if ( has_mode( spec, Mode::Lemmas ) )
    for ( auto lemma : spec.lemmas )
      for ( int k : spec.lemma_ks )
        tasks.push_back( { std::string( to_string( lemma ) ) + " k=" + std::to_string( k ),
                           [lemma, k]( Emitter& e ) { lemma_task( lemma, k, e ); } } );
  if ( has_mode( spec, Mode::K5Table ) )
    tasks.push_back( { "n=" + std::to_string( spec.table_n ), [n = spec.table_n]( Emitter& e ) { table_task( n, e ); } } );

  std::vector<TaskOutput> outputs( tasks.size() );
  std::vector<std::size_t> schedule( tasks.size() );
  std::iota( schedule.begin(), schedule.end(), std::size_t{ 0 } );
  std::mt19937_64 rng( options.seed );
  std::shuffle( schedule.begin(), schedule.end(), rng );

  auto execute = [&]( std::size_t index ) {
    auto& out = outputs[index];
    Emitter e( spec.name, tasks[index].shape, out );
    auto const start = Clock::now();
    try
    {
      tasks[index].body( e );
    }
    catch ( lp::resource_error const& ex )
    {
      e.row( "budget", ex.what(), "SKIPPED", "", seconds_since( start ) );
    }
    catch ( std::length_error const& ex )
    {
      e.row( "budget", ex.what(), "SKIPPED", "", seconds_since( start ) );
    }
    catch ( std::exception const& ex )
    {
      e.row( "error", ex.what(), "FAIL", "", seconds_since( start ) );
    }
  };

  std::size_t const workers = std::max<std::size_t>( 1, std::min( options.workers, tasks.size() ) );
  if ( workers <= 1 )
    for ( auto index : schedule )
      execute( index );
  else
  {
    std::atomic<std::size_t> next{ 0 };
    std::vector<std::jthread> pool;
    for ( std::size_t w = 0; w < workers; ++w )
      pool.emplace_back( [&] {
        for ( std::size_t i = next++; i < schedule.size(); i = next++ )
          execute( schedule[i] );
      } );
  }

  RunResult result;
  result.experiment = spec.name;
  for ( auto& out : outputs )
  {
    for ( auto& row : out.rows )
      result.rows.push_back( std::move( row ) );
    for ( auto& [hash, doc] : out.certificates )
      result.certificates.emplace( std::move( hash ), std::move( doc ) );
  }
  return result;
}

namespace
{

std::string csv_field( std::string const& s )
{
  if ( s.find_first_of( ",\"\n" ) == std::string::npos )
    return s;
  std::string out = "\"";
  for ( char c : s )
  {
    if ( c == '"' )
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_seconds( double s )
{
  std::ostringstream os;
  os.setf( std::ios::fixed );
  os.precision( 3 );
  os << s;
  return os.str();
}

} // namespace

std::string csv_header( bool with_timing )
{
  return with_timing ? "experiment,shape,metric,value,verdict,certificate,seconds"
                     : "experiment,shape,metric,value,verdict,certificate";
}

std::string to_csv( RunResult const& result, bool with_timing )
{
  std::string out = csv_header( with_timing ) + "\n";
  for ( auto const& r : result.rows )
  {
    out += csv_field( r.experiment ) + "," + csv_field( r.shape ) + "," + csv_field( r.metric ) + "," +
           csv_field( r.value ) + "," + csv_field( r.verdict ) + "," + csv_field( r.certificate );
    if ( with_timing )
      out += "," + format_seconds( r.seconds );
    out += "\n";
  }
  return out;
}

std::string to_json( RunResult const& result )
{
  json j;
  j["experiment"] = result.experiment;
  j["status"] = result.failed() ? "FAIL" : "PASS";
  json rows = json::array();
  for ( auto const& r : result.rows )
    rows.push_back( { { "shape", r.shape },
                      { "metric", r.metric },
                      { "value", r.value },
                      { "verdict", r.verdict },
                      { "certificate", r.certificate },
                      { "seconds", format_seconds( r.seconds ) } } );
  j["rows"] = std::move( rows );
  json hashes = json::array();
  for ( auto const& [hash, doc] : result.certificates )
    hashes.push_back( hash );
  j["certificates"] = std::move( hashes );
  return j.dump( 2 );
}

void write_outputs( RunResult const& result, std::string const& dir )
{
  namespace fs = std::filesystem;
  fs::path const root( dir );
  fs::create_directories( root / "certificates" );
  auto write = []( fs::path const& path, std::string const& text ) {
    std::ofstream os( path, std::ios::binary );
    if ( !os )
      throw std::runtime_error( "cannot open " + path.string() + " for writing" );
    os << text;
    if ( !os )
      throw std::runtime_error( "write to " + path.string() + " failed" );
  };
  write( root / ( result.experiment + ".csv" ), to_csv( result, true ) );
  write( root / ( result.experiment + ".json" ), to_json( result ) + "\n" );
  for ( auto const& [hash, doc] : result.certificates )
    write( root / "certificates" / ( hash + ".json" ), doc );
}

} // namespace ptf::harness

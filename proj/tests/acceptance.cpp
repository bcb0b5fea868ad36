#include <ptf/bool_function.hpp>
#include <ptf/harness.hpp>
#include <ptf/polynomial.hpp>
#include <ptf/threshold_analysis.hpp>
#include <ptf/tuple_order.hpp>

#include <oracles/order_oracle.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ptf;

namespace
{

using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void require( bool ok, std::string const& what )
  {
    if ( !ok )
    {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<GroupShape> weak_shapes()
{
  return { GroupShape( { 2, 3 }, Variant::Weak ), GroupShape( { 2, 2, 3 }, Variant::Weak ),
           GroupShape( { 4, 3 }, Variant::Weak ) };
}

std::vector<GroupShape> strong_shapes()
{
  return { GroupShape( { 3, 3 }, Variant::Strong ), GroupShape( { 5, 3 }, Variant::Strong ) };
}

double elapsed( Clock::time_point start )
{
  return std::chrono::duration<double>( Clock::now() - start ).count();
}

void gate_correctness( std::vector<GroupShape> const& shapes, Outcome& out )
{
  for ( auto const& shape : shapes )
  {
    auto const start = Clock::now();
    auto const f = make_hard( shape );
    auto const gate = witness_gate( shape );
    auto const check = check_sign_representation( gate, f );
    double const s = elapsed( start );
    out.require( check.pass && check.inputs_checked == f.num_inputs(), shape.to_string() + " sign representation" );
    out.require( s < 5.0, shape.to_string() + " took " + std::to_string( s ) + " s" );
    out.detail << " " << shape.to_string() << " n=" << f.num_vars() << " inputs=" << check.inputs_checked;
  }
}

void sign_degree_exact( Outcome& out )
{
  for ( auto const& shape : { GroupShape( { 2, 3 }, Variant::Weak ), GroupShape( { 3, 3 }, Variant::Strong ) } )
  {
    auto const start = Clock::now();
    auto const f = make_hard( shape );
    auto const result = sign_degree( f, 2, shape );
    double const s = elapsed( start );
    out.require( result.degree && *result.degree == 2, shape.to_string() + " sign degree 2" );
    out.require( result.gate_verified, shape.to_string() + " degree-2 gate" );
    bool farkas_ok = false;
    for ( auto const& a : result.attempts )
      if ( a.degree == 1 && a.outcome.status == lp::LpStatus::Infeasible )
      {
        auto const problem = xy_representation( f, 1, shape ).lp;
        farkas_ok = a.certificate_ok && lp::check_farkas( problem, a.outcome.farkas ).ok;
      }
    out.require( farkas_ok, shape.to_string() + " degree-1 Farkas certificate" );
    out.require( s < 60.0, shape.to_string() + " took " + std::to_string( s ) + " s" );
    out.detail << " " << shape.to_string() << " degree=" << ( result.degree ? std::to_string( *result.degree ) : "?" );
  }
}

void lemmas_certified( Outcome& out )
{
  auto const start = Clock::now();
  std::size_t inequalities = 0;
  auto certify = [&]( CoefficientLemma lemma, int k ) {
    auto const report = certify_coefficient_lemma( lemma, k );
    out.require( report.certified() && !report.items.empty(),
                 std::string( to_string( lemma ) ) + " k=" + std::to_string( k ) );
    for ( auto const& item : report.items )
    {
      ++inequalities;
      out.require( lp::check_farkas( item.problem, item.outcome.farkas ).ok, item.target.text );
    }
  };
  for ( int k = 2; k <= 6; ++k )
    for ( auto lemma : { CoefficientLemma::GtExp, CoefficientLemma::GtStep } )
      certify( lemma, k );
  for ( int k : { 3, 5 } )
    for ( auto lemma : { CoefficientLemma::G1Pos, CoefficientLemma::G1Mono, CoefficientLemma::G0All } )
      certify( lemma, k );
  double const s = elapsed( start );
  out.require( s < 60.0, "took " + std::to_string( s ) + " s" );
  out.detail << " inequalities=" << inequalities;
}

void theorem_instance( Outcome& out )
{
  auto const start = Clock::now();
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  auto const report = verify_theorem_instance( shape );
  double const s = elapsed( start );
  out.require( report.bound.asserted && report.bound.value == 1, "theorem_bound = 1" );
  out.require( report.exact_weight.has_value(), "exact weight solved" );
  if ( report.exact_weight )
  {
    out.require( *report.exact_weight >= report.bound.value, "W >= bound" );
    out.detail << " W=" << report.exact_weight->get_str() << " bound=" << report.bound.value.get_str();
  }
  out.require( report.chain.has_value(), "chain computed" );
  if ( report.chain )
  {
    auto const& c = *report.chain;
    out.require( c.exponent == 2, "chain exponent 2" );
    out.require( c.holds && c.w_beta >= 4 * c.w_alpha, "w_beta >= 4 w_alpha" );
    out.detail << " w" << c.alpha.to_string() << "=" << c.w_alpha.get_str() << " w" << c.beta.to_string() << "="
               << c.w_beta.get_str();
  }
  out.require( s < 600.0, "took " + std::to_string( s ) + " s" );
}

void basis_change( Outcome& out )
{
  auto shapes = weak_shapes();
  for ( auto const& s : strong_shapes() )
    shapes.push_back( s );
  for ( auto const& shape : shapes )
  {
    auto const gate = witness_gate( shape );
    mpz_class const uv = to_uv( gate ).weight();
    mpz_class const limit = basis_change_factor( shape ) * gate.weight();
    out.require( uv <= limit, shape.to_string() );
    out.detail << " " << shape.to_string() << " " << uv.get_str() << "<=" << limit.get_str();
  }
}

void ordering_integrity( Outcome& out )
{
  auto shapes = weak_shapes();
  for ( auto const& s : strong_shapes() )
    shapes.push_back( s );
  std::size_t pairs = 0;
  for ( auto const& shape : shapes )
  {
    OrderContext const ctx( shape );
    auto const tuples = oracle::all_tuples( shape );
    out.require( tuples.size() == ctx.size() && ctx.size() <= 2000, shape.to_string() + " |K|" );
    std::vector<TupleIndex> ts;
    for ( auto const& t : tuples )
      ts.push_back( TupleIndex{ t } );
    bool agree = true, axioms = true;
    for ( std::size_t i = 0; i < ts.size(); ++i )
      for ( std::size_t j = 0; j < ts.size(); ++j )
      {
        ++pairs;
        auto const c = ctx.compare( ts[i], ts[j] );
        int const got = c < 0 ? -1 : c > 0 ? 1 : 0;
        agree = agree && got == oracle::compare( shape, tuples[i], tuples[j] );
        axioms = axioms && ( ( c == 0 ) == ( i == j ) ) && ( ctx.compare( ts[j], ts[i] ) == ( 0 <=> c ) );
        for ( std::size_t l = 0; l < ts.size() && axioms; ++l )
          if ( c < 0 && ctx.compare( ts[j], ts[l] ) < 0 )
            axioms = ctx.compare( ts[i], ts[l] ) < 0;
      }
    out.require( agree, shape.to_string() + " compare vs oracle" );
    out.require( axioms, shape.to_string() + " total order axioms" );
  }
  // d = 2 snake: odd first coordinate ascends in the second, even descends
  bool snake = true;
  for ( int k1 = 1; k1 <= 6; ++k1 )
    for ( int k2 = 1; k2 <= 6; ++k2 )
    {
      auto const order = OrderContext( GroupShape( { k1, k2 }, Variant::Weak ) ).enumerate_ordered();
      std::size_t pos = 0;
      for ( int a = 1; a <= k1; ++a )
        for ( int j = 1; j <= k2; ++j, ++pos )
          snake = snake && order[pos].coords == std::vector<int>{ a, a % 2 == 1 ? j : k2 - j + 1 };
    }
  out.require( snake, "d=2 snake enumeration" );
  out.detail << " pairs=" << pairs;
}

void weight_formula( Outcome& out )
{
  for ( auto const& shape : weak_shapes() )
  {
    auto const size = static_cast<mp_bitcnt_t>( shape.index_set_size() );
    mpz_class const expected =
        ( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( shape.depth() ) ) * ( ( mpz_class( 1 ) << ( size + 1 ) ) - 2 );
    auto const measured = witness_gate( shape ).weight();
    out.require( measured == expected, shape.to_string() );
    out.detail << " " << shape.to_string() << " W=" << measured.get_str();
  }
}

void determinism( Outcome& out )
{
  auto const spec = harness::preset( "weak-2-3" );
  auto const first = harness::run( spec );
  harness::RunOptions options;
  options.workers = 4;
  options.seed = 2718;
  auto const second = harness::run( spec );
  auto const third = harness::run( spec, options );
  auto const csv = harness::to_csv( first, false );
  out.require( !first.failed(), "weak-2-3 has no FAIL rows" );
  out.require( csv == harness::to_csv( second, false ), "second run differs" );
  out.require( csv == harness::to_csv( third, false ), "parallel run differs" );
  out.detail << " rows=" << first.rows.size() << " sha256=" << harness::sha256_hex( csv ).substr( 0, 16 );
}

} // namespace

int main()
{
  std::vector<std::pair<std::string, std::function<void( Outcome& )>>> const criteria = {
      { "witness gates (weak)", []( Outcome& o ) { gate_correctness( weak_shapes(), o ); } },
      { "witness gates (strong)", []( Outcome& o ) { gate_correctness( strong_shapes(), o ); } },
      { "sign degree", sign_degree_exact },
      { "coefficient lemmas", lemmas_certified },
      { "weight theorem instance", theorem_instance },
      { "basis change", basis_change },
      { "ordering integrity", ordering_integrity },
      { "witness gate weight formula", weight_formula },
      { "determinism", determinism } };

  bool all = true;
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    Outcome out;
    auto const start = Clock::now();
    try
    {
      criteria[i].second( out );
    }
    catch ( std::exception const& e )
    {
      out.require( false, std::string( "exception: " ) + e.what() );
    }
    all = all && out.pass;
    std::cout << "criterion " << i + 1 << ": " << ( out.pass ? "PASS" : "FAIL" ) << " (" << criteria[i].first << ", "
              << std::fixed << std::setprecision( 2 ) << elapsed( start ) << " s)" << out.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}

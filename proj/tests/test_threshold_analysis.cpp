#include <ptf/threshold_analysis.hpp>

#include <oracles/brute_force.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ptf;

namespace
{

BoolFun constant( std::size_t n, bool value )
{
  BoolFun f( n, Convention::ZeroOne, value ? "one" : "zero" );
  for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
    f.set_bit( x, value );
  return f;
}

BoolFun parity( std::size_t n )
{
  BoolFun f( n, Convention::ZeroOne, "parity" );
  for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
    f.set_bit( x, std::popcount( x ) % 2 == 1 );
  return f;
}

std::size_t column_of_label( RepresentationProblem const& problem, int label )
{
  for ( std::size_t c = 0; c < problem.labels.size(); ++c )
    if ( problem.labels[c] == label )
      return c;
  throw std::out_of_range( "no column for label " + std::to_string( label ) );
}

} // namespace

TEST( SignRepresentation, ZeroPolynomialRepresentsConstantOne )
{
  IntPolynomial const zero( Basis::XY, 2 );
  EXPECT_TRUE( check_sign_representation( zero, constant( 2, true ) ).pass );
  auto const check = check_sign_representation( zero, constant( 2, false ) );
  EXPECT_FALSE( check.pass );
  ASSERT_TRUE( check.counterexample );
  EXPECT_EQ( *check.counterexample, 0u );
}

TEST( SignRepresentation, LinearGateForGt )
{
  // GT_1 on (x, y): x - y >= 0
  IntPolynomial p( Basis::XY, 2 );
  p.add( { 0 }, 1 );
  p.add( { 1 }, -1 );
  EXPECT_TRUE( check_sign_representation( p, make_gt( 1 ) ).pass );
  p.add( {}, -1 );
  EXPECT_FALSE( check_sign_representation( p, make_gt( 1 ) ).pass );
}

TEST( SignDegree, SmallFunctions )
{
  auto const gt = sign_degree( make_gt( 3 ), 2 );
  ASSERT_TRUE( gt.degree );
  EXPECT_EQ( *gt.degree, 1 );
  ASSERT_EQ( gt.attempts.size(), 2u );
  EXPECT_EQ( gt.attempts[0].outcome.status, lp::LpStatus::Infeasible );
  EXPECT_TRUE( gt.attempts[0].certificate_ok );
  EXPECT_TRUE( gt.gate_verified );

  auto const one = sign_degree( constant( 3, true ), 2 );
  ASSERT_TRUE( one.degree );
  EXPECT_EQ( *one.degree, 0 );

  auto const xor3 = sign_degree( parity( 3 ), 3 );
  ASSERT_TRUE( xor3.degree );
  EXPECT_EQ( *xor3.degree, 3 );
  for ( auto const& a : xor3.attempts )
    if ( a.outcome.status == lp::LpStatus::Infeasible )
      EXPECT_TRUE( a.certificate_ok );

  auto const capped = sign_degree( parity( 3 ), 1 );
  EXPECT_FALSE( capped.degree );
}

TEST( MinWeight, GtOneHasWeightTwo )
{
  auto const lp = min_weight( make_gt( 1 ), 1, WeightMode::LP );
  ASSERT_EQ( lp.status, WeightStatus::Solved );
  EXPECT_EQ( lp.lp_value, 2 );
  EXPECT_TRUE( lp.lp_certificate_ok );
  auto const exact = min_weight( make_gt( 1 ), 1, WeightMode::Exact );
  ASSERT_TRUE( exact.exact );
  EXPECT_EQ( *exact.exact, 2 );
  EXPECT_TRUE( exact.gate_verified );
}

TEST( MinWeight, NonRepresentableIsInfeasible )
{
  auto const r = min_weight( parity( 2 ), 1, WeightMode::Exact );
  EXPECT_EQ( r.status, WeightStatus::Infeasible );
  EXPECT_TRUE( r.lp_certificate_ok );
  EXPECT_FALSE( oracle::min_linear_weight( parity( 2 ), 3 ) );
}

TEST( MinWeight, ExactMatchesEnumerationOracle )
{
  auto const gt2 = min_weight( make_gt( 2 ), 1, WeightMode::Exact );
  ASSERT_TRUE( gt2.exact );
  auto const want = oracle::min_linear_weight( make_gt( 2 ), 3 );
  ASSERT_TRUE( want );
  EXPECT_EQ( *gt2.exact, *want );
  EXPECT_GE( mpq_class( *gt2.exact ), gt2.lp_value );

  std::mt19937_64 rng( 5 );
  int representable = 0;
  for ( int trial = 0; trial < 60; ++trial )
  {
    BoolFun f( 3, Convention::ZeroOne, "random" );
    for ( std::uint64_t x = 0; x < 8; ++x )
      f.set_bit( x, rng() & 1u );
    auto const r = min_weight( f, 1, WeightMode::Exact );
    auto const brute = oracle::min_linear_weight( f, 4 );
    if ( !brute )
    {
      EXPECT_EQ( r.status, WeightStatus::Infeasible ) << to_hex( f );
      continue;
    }
    ++representable;
    ASSERT_TRUE( r.exact ) << to_hex( f );
    EXPECT_EQ( *r.exact, *brute ) << to_hex( f );
    EXPECT_LE( r.lp_value, mpq_class( *r.exact ) );
    EXPECT_TRUE( r.gate_verified );
  }
  EXPECT_GT( representable, 10 );
}

TEST( MinWeight, RoundedGateIsAnUpperBound )
{
  auto const r = min_weight( make_gt( 3 ), 1, WeightMode::LP );
  ASSERT_TRUE( r.gate );
  EXPECT_TRUE( r.gate_verified );
  EXPECT_GE( mpq_class( r.gate->weight() ), r.lp_value );
}

TEST( PrimitiveVector, ClearsDenominators )
{
  EXPECT_EQ( primitive_integer_vector( { mpq_class( 1, 2 ), mpq_class( 1, 3 ) } ),
             ( std::vector<mpz_class>{ 3, 2 } ) );
  EXPECT_EQ( primitive_integer_vector( { 0, mpq_class( -2, 4 ) } ), ( std::vector<mpz_class>{ 0, -1 } ) );
  EXPECT_EQ( primitive_integer_vector( { 4, 6 } ), ( std::vector<mpz_class>{ 2, 3 } ) );
}

TEST( Lemmas, AllCertifiedForSmallK )
{
  for ( auto lemma : all_lemmas() )
    for ( int k = 3; k <= 5; ++k )
    {
      auto const report = certify_coefficient_lemma( lemma, k );
      EXPECT_TRUE( report.certified() ) << to_string( lemma ) << " k=" << k;
      EXPECT_FALSE( report.items.empty() );
      for ( auto const& item : report.items )
      {
        EXPECT_TRUE( item.certificate_ok ) << item.target.text;
        EXPECT_TRUE( lp::check_farkas( item.problem, item.outcome.farkas ) ) << item.target.text;
      }
    }
}

TEST( Lemmas, NameRoundTrip )
{
  for ( auto lemma : all_lemmas() )
    EXPECT_EQ( parse_lemma( to_string( lemma ) ), lemma );
  EXPECT_THROW( parse_lemma( "gt_nonsense" ), std::invalid_argument );
}

TEST( Lemmas, WrongInequalityHasAViolatingGate )
{
  int const k = 3;
  auto const base = lemma_base( CoefficientLemma::GtStep, k );
  Inequality target;
  target.lhs = { { column_of_label( base, 2 ), 1 }, { column_of_label( base, 1 ), -2 } };
  target.rhs = 1;
  target.text = "w_2 >= 2 w_1 + 1";
  auto const verdict = certify_inequality( base, target );
  ASSERT_FALSE( verdict.certified );
  EXPECT_TRUE( verdict.witness_ok );
  auto const& w = verdict.violating_gate;
  ASSERT_EQ( w.size(), base.labels.size() );
  auto const w1 = w[column_of_label( base, 1 )];
  auto const w2 = w[column_of_label( base, 2 )];
  EXPECT_LT( w2, 2 * w1 + 1 );

  // the violating gate sign-represents GT, checked by substitution
  for ( std::uint64_t input = 0; input < ( std::uint64_t{ 1 } << ( 2 * k ) ); ++input )
  {
    mpz_class s = 0;
    for ( int j = 1; j <= k; ++j )
    {
      int const u = int( ( input >> ( j - 1 ) ) & 1u ) - int( ( input >> ( k + j - 1 ) ) & 1u );
      s += w[column_of_label( base, j )] * u;
    }
    ASSERT_EQ( s >= 0, oracle::gt_value( k, MsbPosition::Last, input ) ) << input;
  }
}

TEST( TheoremBound, Values )
{
  auto weak23 = theorem_bound( GroupShape( { 2, 3 }, Variant::Weak ) );
  EXPECT_TRUE( weak23.asserted );
  EXPECT_EQ( weak23.exponent, 0 );
  EXPECT_EQ( weak23.value, 1 );

  auto weak223 = theorem_bound( GroupShape( { 2, 2, 3 }, Variant::Weak ) );
  EXPECT_EQ( weak223.exponent, 1 );
  EXPECT_EQ( weak223.value, 2 );

  auto weak43 = theorem_bound( GroupShape( { 4, 3 }, Variant::Weak ) );
  EXPECT_EQ( weak43.exponent, 2 );
  EXPECT_EQ( weak43.value, 4 );

  auto weak4 = theorem_bound( GroupShape( { 4 }, Variant::Weak ) );
  EXPECT_EQ( weak4.exponent, 1 );
  EXPECT_EQ( weak4.value, 2 );

  // n = 9, ceil(log2 9) = 4: (3 - 2) * 2 - 2 * 4 < 0
  auto strong33 = theorem_bound( GroupShape( { 3, 3 }, Variant::Strong ) );
  EXPECT_TRUE( strong33.asserted );
  EXPECT_EQ( strong33.exponent, -6 );
  EXPECT_EQ( strong33.value, 1 );

  // n = 24, ceil(log2 24) = 5: (9 - 2) * 2 * 2 - 3 * 5 = 13
  auto strong339 = theorem_bound( GroupShape( { 3, 3, 9 }, Variant::Strong ) );
  EXPECT_EQ( strong339.exponent, 13 );
  EXPECT_EQ( strong339.value, 8192 );

  EXPECT_FALSE( theorem_bound( GroupShape( { 3, 3 }, Variant::Weak ) ).asserted );
  EXPECT_FALSE( theorem_bound( GroupShape( { 4, 3 }, Variant::Strong ) ).asserted );
  EXPECT_FALSE( theorem_bound( GroupShape( { 2, 2 }, Variant::Weak ) ).asserted );
}

TEST( TheoremBound, BasisChangeFactor )
{
  EXPECT_EQ( basis_change_factor( GroupShape( { 2, 3 }, Variant::Weak ) ), 4 );
  EXPECT_EQ( basis_change_factor( GroupShape( { 2, 2, 3 }, Variant::Weak ) ), 8 );
  EXPECT_EQ( basis_change_factor( GroupShape( { 3, 3 }, Variant::Strong ) ), 81 );
}

TEST( TheoremInstance, WeakTwoThree )
{
  auto const report = verify_theorem_instance( GroupShape( { 2, 3 }, Variant::Weak ) );
  EXPECT_FALSE( report.failed() );
  EXPECT_EQ( report.n, 10u );
  EXPECT_EQ( report.d, 2 );
  ASSERT_TRUE( report.lp_lower_bound );
  EXPECT_EQ( *report.lp_lower_bound, mpq_class( 183, 2 ) );
  EXPECT_TRUE( report.lp_certificate_ok );
  ASSERT_TRUE( report.exact_weight );
  EXPECT_EQ( *report.exact_weight, 92 );
  EXPECT_GE( *report.exact_weight, report.bound.value );
  EXPECT_TRUE( report.witness_gate_pass );
  EXPECT_LE( report.uv_weight, report.uv_limit );
  ASSERT_TRUE( report.chain );
  EXPECT_TRUE( report.chain->holds );
  EXPECT_EQ( report.chain->exponent, 2 );
  ASSERT_TRUE( report.chain->lp_certified );
  EXPECT_TRUE( *report.chain->lp_certified );
  for ( auto const& [name, verdict] : report.verdicts )
    EXPECT_NE( verdict, Verdict::Fail ) << name;
}

TEST( TheoremInstance, SingleGroup )
{
  auto const report = verify_theorem_instance( GroupShape( { 4 }, Variant::Weak ) );
  EXPECT_FALSE( report.failed() );
  ASSERT_TRUE( report.exact_weight );
  EXPECT_GE( *report.exact_weight, report.bound.value );
  EXPECT_TRUE( report.witness_gate_pass );
}

TEST( TheoremInstance, ReusesAGivenWeight )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  ReportOptions options;
  options.mode = WeightMode::LP;
  options.weight_result = min_weight( make_hard( shape ), 2, WeightMode::LP, shape );
  options.certify_chain = false;
  auto const report = verify_theorem_instance( shape, options );
  EXPECT_FALSE( report.failed() );
  ASSERT_TRUE( report.lp_lower_bound );
  EXPECT_EQ( *report.lp_lower_bound, mpq_class( 183, 2 ) );
  EXPECT_FALSE( report.exact_weight );
}

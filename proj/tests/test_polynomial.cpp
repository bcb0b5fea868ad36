#include <ptf/polynomial.hpp>
#include <ptf/threshold_analysis.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ptf;

namespace
{

mpz_class weak_weight_formula( GroupShape const& shape )
{
  auto const size = static_cast<mp_bitcnt_t>( shape.index_set_size() );
  return ( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( shape.depth() ) ) * ( ( mpz_class( 1 ) << ( size + 1 ) ) - 2 );
}

IntPolynomial random_xy( GroupShape const& shape, std::mt19937_64& rng, int terms )
{
  auto p = IntPolynomial::xy( shape );
  std::uniform_int_distribution<std::uint32_t> var( 0, static_cast<std::uint32_t>( shape.num_vars() - 1 ) );
  std::uniform_int_distribution<int> size( 0, static_cast<int>( shape.depth() ) );
  std::uniform_int_distribution<int> coeff( -9, 9 );
  for ( int t = 0; t < terms; ++t )
  {
    Monomial m;
    int const s = size( rng );
    while ( static_cast<int>( m.size() ) < s )
    {
      auto const v = var( rng );
      if ( std::find( m.begin(), m.end(), v ) == m.end() )
        m.push_back( v );
    }
    p.add( m, coeff( rng ) );
  }
  return p;
}

} // namespace

TEST( IntPolynomial, AddMergesAndDropsZeros )
{
  IntPolynomial p( Basis::XY, 3 );
  p.add( { 2, 0 }, 5 );
  p.add( { 0, 2 }, -2 );
  p.add( {}, 4 );
  EXPECT_EQ( p.coefficient( { 0, 2 } ), 3 );
  EXPECT_EQ( p.size(), 2u );
  p.add( { 2, 0 }, -3 );
  EXPECT_EQ( p.size(), 1u );
  EXPECT_EQ( p.weight(), 4 );
  EXPECT_EQ( p.degree(), 0 );
  EXPECT_THROW( p.add( { 1, 1 }, 1 ), std::invalid_argument );
  EXPECT_THROW( p.add( { 3 }, 1 ), std::invalid_argument );
  EXPECT_THROW( IntPolynomial( Basis::UV, 4 ), std::invalid_argument );
}

TEST( IntPolynomial, EmptyEvaluatesToZero )
{
  IntPolynomial p( Basis::XY, 4 );
  for ( std::uint64_t x = 0; x < 16; ++x )
    EXPECT_EQ( eval_xy( p, x, Convention::ZeroOne ), 0 );
  EXPECT_EQ( p.degree(), -1 );
  EXPECT_EQ( p.weight(), 0 );
}

TEST( IntPolynomial, EvaluationConventions )
{
  IntPolynomial p( Basis::XY, 2 );
  p.add( { 0, 1 }, 3 );
  p.add( { 0 }, -1 );
  EXPECT_EQ( eval_xy( p, 3, Convention::ZeroOne ), 2 );
  EXPECT_EQ( eval_xy( p, 1, Convention::ZeroOne ), -1 );
  EXPECT_EQ( eval_xy( p, 1, Convention::PlusMinus ), -4 );
  std::array<int, 2> v{ -1, -1 };
  EXPECT_EQ( eval_xy( p, v ), 4 );
  std::array<int, 3> bad{ 1, 1, 1 };
  EXPECT_THROW( eval_xy( p, bad ), std::invalid_argument );
}

TEST( WitnessGate, DepthOneTwo )
{
  GroupShape const shape( { 2 }, Variant::Weak );
  auto const p = witness_gate( shape );
  IntPolynomial expected = IntPolynomial::xy( shape );
  expected.add( { 0 }, 2 );
  expected.add( { 2 }, -2 );
  expected.add( { 1 }, 4 );
  expected.add( { 3 }, -4 );
  EXPECT_EQ( p, expected );
  EXPECT_EQ( p.weight(), 12 );
  EXPECT_TRUE( check_sign_representation( p, make_hard( shape ) ).pass );
}

TEST( WitnessGate, DepthOneOneAtSinglePoint )
{
  GroupShape const shape( { 1 }, Variant::Weak );
  auto const p = witness_gate( shape );
  // x = 1, y = 0 is input index 1
  EXPECT_EQ( eval_xy( p, 1, Convention::ZeroOne ), 2 );
}

TEST( WitnessGate, TwoByTwoWeight )
{
  GroupShape const shape( { 2, 2 }, Variant::Weak );
  auto const p = witness_gate( shape );
  EXPECT_EQ( p.weight(), 120 );
  EXPECT_EQ( p.degree(), 2 );
  std::vector<mpz_class> magnitudes;
  std::map<mpz_class, int> count;
  for ( auto const& [m, c] : p.terms() )
    ++count[abs( c )];
  // each tuple contributes four products (x-y)(x-y) with coefficient 2^j
  EXPECT_EQ( count, ( std::map<mpz_class, int>{ { 2, 4 }, { 4, 4 }, { 8, 4 }, { 16, 4 } } ) );
}

TEST( WitnessGate, WeightFormulaAndSignRepresentation )
{
  for ( auto const& ks : std::vector<std::vector<int>>{ { 1 }, { 3 }, { 2, 3 }, { 2, 2 }, { 2, 2, 3 }, { 4, 3 } } )
  {
    GroupShape const shape( ks, Variant::Weak );
    auto const p = witness_gate( shape );
    EXPECT_EQ( p.weight(), weak_weight_formula( shape ) ) << shape.to_string();
    EXPECT_TRUE( check_sign_representation( p, make_hard( shape ) ).pass ) << shape.to_string();
  }
  for ( auto const& ks : std::vector<std::vector<int>>{ { 3, 3 }, { 5, 3 }, { 3, 2 }, { 3, 3, 2 } } )
  {
    GroupShape const shape( ks, Variant::Strong );
    auto const p = witness_gate( shape );
    EXPECT_TRUE( check_sign_representation( p, make_hard( shape ) ).pass ) << shape.to_string();
  }
  EXPECT_EQ( witness_gate( GroupShape( { 3, 3 }, Variant::Strong ) ).weight(), 3584 );
  EXPECT_EQ( witness_gate( GroupShape( { 5, 3 }, Variant::Strong ) ).weight(), 229376 );
}

TEST( WitnessGate, VanishesWhenXEqualsY )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  auto const p = witness_gate( shape );
  std::uint64_t const nx = shape.num_x_vars();
  for ( std::uint64_t x = 0; x < ( std::uint64_t{ 1 } << nx ); ++x )
    ASSERT_EQ( eval_xy( p, x | ( x << nx ), Convention::ZeroOne ), 0 );
}

TEST( WitnessGate, MutationIsDetected )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  auto const f = make_hard( shape );
  auto const p = witness_gate( shape );
  std::size_t detected = 0;
  for ( auto const& [mono, c] : p.terms() )
  {
    auto q = p;
    q.add( mono, -2 * c );
    auto const check = check_sign_representation( q, f );
    if ( !check.pass )
    {
      ++detected;
      ASSERT_TRUE( check.counterexample );
      EXPECT_NE( sgn( eval_xy( q, *check.counterexample, Convention::ZeroOne ) ) >= 0, f.bit( *check.counterexample ) );
    }
  }
  EXPECT_EQ( detected, p.size() );
}

TEST( ToUv, WeakDifference )
{
  GroupShape const shape( { 1 }, Variant::Weak );
  auto p = IntPolynomial::xy( shape );
  p.add( { 0 }, 1 );
  p.add( { 1 }, -1 );
  auto const q = to_uv( p );
  IntPolynomial expected = IntPolynomial::uv( shape );
  expected.add( { uv_id( shape, { 0, 1, false } ) }, 2 );
  EXPECT_EQ( q, expected );
  EXPECT_EQ( q.weight(), 2 );
}

TEST( ToUv, StrongSingleVariable )
{
  GroupShape const shape( { 3, 3 }, Variant::Strong );
  auto p = IntPolynomial::xy( shape );
  p.add( { 0 }, 1 );
  auto const q = to_uv( p );
  // 2 x_1 = L_0 + L_1 + L_2, scaled by 2^d / 2
  IntPolynomial expected = IntPolynomial::uv( shape );
  for ( int label = 0; label < 3; ++label )
    expected.add( { uv_id( shape, { 0, label, false } ) }, 2 );
  EXPECT_EQ( q, expected );
  EXPECT_LE( q.weight(), mpz_class( 9 ) * 4 );
}

TEST( ToUv, ScaledIdentityOnRandomPolynomials )
{
  std::mt19937_64 rng( 20240611 );
  std::vector<GroupShape> shapes{ GroupShape( { 2, 3 }, Variant::Weak ), GroupShape( { 2, 2, 1 }, Variant::Weak ),
                                  GroupShape( { 3, 3 }, Variant::Strong ), GroupShape( { 3, 2, 2 }, Variant::Strong ) };
  for ( auto const& shape : shapes )
  {
    auto const conv = shape.variant == Variant::Weak ? Convention::ZeroOne : Convention::PlusMinus;
    mpz_class const scale = mpz_class( 1 ) << static_cast<mp_bitcnt_t>( shape.depth() );
    for ( int trial = 0; trial < 20; ++trial )
    {
      auto const p = random_xy( shape, rng, 12 );
      auto const q = to_uv( p );
      for ( std::uint64_t x = 0; x < ( std::uint64_t{ 1 } << shape.num_vars() ); ++x )
        ASSERT_EQ( eval_uv( q, derive_uv( shape, x ) ), scale * eval_xy( p, x, conv ) )
            << shape.to_string() << " input " << x;
    }
  }
}

TEST( ToUv, BasisChangeBoundOnWitnessGates )
{
  for ( auto const& shape : { GroupShape( { 2, 3 }, Variant::Weak ), GroupShape( { 2, 2, 3 }, Variant::Weak ),
                              GroupShape( { 4, 3 }, Variant::Weak ), GroupShape( { 3, 3 }, Variant::Strong ),
                              GroupShape( { 5, 3 }, Variant::Strong ) } )
  {
    auto const p = witness_gate( shape );
    EXPECT_LE( to_uv( p ).weight(), basis_change_factor( shape ) * p.weight() ) << shape.to_string();
  }
  EXPECT_EQ( basis_change_factor( GroupShape( { 2, 3 }, Variant::Weak ) ), 4 );
  EXPECT_EQ( basis_change_factor( GroupShape( { 3, 3 }, Variant::Strong ) ), 81 );
}

TEST( Symmetrize, KeepsOneUPerGroup )
{
  GroupShape const shape( { 1, 1 }, Variant::Weak );
  auto const u1 = uv_id( shape, { 0, 1, false } );
  auto const v1 = uv_id( shape, { 0, 1, true } );
  auto const u2 = uv_id( shape, { 1, 1, false } );
  auto const v2 = uv_id( shape, { 1, 1, true } );
  auto p = IntPolynomial::uv( shape );
  p.add( { u1, u2 }, 3 );
  p.add( { u1, v2 }, 5 );
  p.add( { v1, v2 }, 7 );
  auto const q = symmetrize( p );
  IntPolynomial expected = IntPolynomial::uv( shape );
  expected.add( { u1, u2 }, 3 );
  EXPECT_EQ( q, expected );
  auto const w = tuple_coefficients( q );
  EXPECT_EQ( w.at( TupleIndex{ { 1, 1 } } ), 3 );
  EXPECT_THROW( tuple_coefficients( p ), std::invalid_argument );
}

TEST( Symmetrize, SymmetrizedGateVanishesOnEqualLastGroup )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  auto const q = symmetrize( to_uv( witness_gate( shape ) ) );
  EXPECT_TRUE( check_sign_representation( q, make_hard( shape ) ).pass );
  std::uint64_t const nx = shape.num_x_vars();
  for ( std::uint64_t input = 0; input < ( std::uint64_t{ 1 } << shape.num_vars() ); ++input )
  {
    bool last_equal = true;
    for ( int j = 0; j < 3; ++j )
    {
      auto const v = shape.x_var( 1, static_cast<std::size_t>( j ) );
      last_equal = last_equal && ( ( input >> v ) & 1u ) == ( ( input >> ( nx + v ) ) & 1u );
    }
    if ( last_equal )
      ASSERT_EQ( eval_uv( q, derive_uv( shape, input ) ), 0 );
  }
}

TEST( UvIds, RoundTrip )
{
  for ( auto const& shape : { GroupShape( { 2, 3 }, Variant::Weak ), GroupShape( { 5, 3 }, Variant::Strong ) } )
  {
    std::size_t used = 0;
    for ( std::uint32_t id = 0; id < uv_id_count( shape ); ++id )
    {
      auto const var = uv_var( shape, id );
      if ( var.is_v && !shape.has_y( var.group ) )
        continue; // strong g-groups carry no v variables
      EXPECT_EQ( uv_id( shape, var ), id );
      ++used;
    }
    EXPECT_EQ( used, shape.variant == Variant::Weak ? 2 * shape.num_x_vars() : shape.num_x_vars() + 3 );
  }
  GroupShape const strong( { 3, 3 }, Variant::Strong );
  EXPECT_THROW( uv_id( strong, { 0, 1, true } ), invalid_shape );
  EXPECT_THROW( uv_id( strong, { 0, 3, false } ), invalid_shape );
  EXPECT_EQ( min_label( strong, 0 ), 0 );
  EXPECT_EQ( min_label( strong, 1 ), 1 );
}

TEST( IntPolynomial, JsonRoundTrip )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  auto const p = witness_gate( shape );
  auto const q = symmetrize( to_uv( p ) );
  EXPECT_EQ( polynomial_from_json( to_json( p ) ), p );
  EXPECT_EQ( polynomial_from_json( to_json( q ) ), q );
  IntPolynomial big( Basis::XY, 2 );
  big.add( { 1 }, mpz_class( "123456789012345678901234567890" ) );
  EXPECT_EQ( polynomial_from_json( to_json( big ) ), big );
  EXPECT_THROW( polynomial_from_json( R"({"basis":"zz"})" ), std::invalid_argument );
  EXPECT_THROW( polynomial_from_json( "[]" ), std::invalid_argument );
}

TEST( IntPolynomial, ToStringNamesVariables )
{
  GroupShape const shape( { 1 }, Variant::Weak );
  auto const p = witness_gate( shape );
  auto const s = p.to_string();
  EXPECT_NE( s.find( "x1_1" ), std::string::npos );
  EXPECT_NE( s.find( "y1_1" ), std::string::npos );
}

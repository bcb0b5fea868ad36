#include "oracles/order_oracle.hpp"

#include <ptf/tuple_order.hpp>

#include <gtest/gtest.h>

using namespace ptf;

namespace
{

std::vector<std::vector<int>> enumerate( GroupShape const& shape )
{
  std::vector<std::vector<int>> out;
  for ( auto const& t : OrderContext( shape ).enumerate_ordered() )
    out.push_back( t.coords );
  return out;
}

int sign_of( std::strong_ordering c )
{
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

// Shapes exercised elsewhere plus larger ones, all with |K| <= 2000.
std::vector<GroupShape> oracle_shapes()
{
  std::vector<GroupShape> shapes;
  for ( auto const& ks : std::vector<std::vector<int>>{ { 1 }, { 4 }, { 2, 2 }, { 2, 3 }, { 2, 2, 3 }, { 4, 3 },
                                                       { 3, 3 }, { 3, 5, 2 }, { 4, 4, 4 }, { 2, 2, 2, 2, 3 },
                                                       { 12, 12, 12 }, { 1, 3, 1 } } )
    shapes.emplace_back( ks, Variant::Weak );
  for ( auto const& ks : std::vector<std::vector<int>>{ { 3, 3 }, { 5, 3 }, { 3, 2 }, { 5, 5, 3 }, { 3, 3, 3, 3 },
                                                       { 9, 9, 9 }, { 4, 6 }, { 2 } } )
    shapes.emplace_back( ks, Variant::Strong );
  return shapes;
}

} // namespace

TEST( TupleOrder, FrozenEnumerations )
{
  using V = std::vector<std::vector<int>>;
  EXPECT_EQ( enumerate( GroupShape( { 4 }, Variant::Weak ) ), ( V{ { 1 }, { 2 }, { 3 }, { 4 } } ) );
  EXPECT_EQ( enumerate( GroupShape( { 2, 2 }, Variant::Weak ) ), ( V{ { 1, 1 }, { 1, 2 }, { 2, 2 }, { 2, 1 } } ) );
  EXPECT_EQ( enumerate( GroupShape( { 2, 3 }, Variant::Weak ) ),
             ( V{ { 1, 1 }, { 1, 2 }, { 1, 3 }, { 2, 3 }, { 2, 2 }, { 2, 1 } } ) );
  EXPECT_EQ( enumerate( GroupShape( { 3, 3 }, Variant::Strong ) ),
             ( V{ { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 3 }, { 1, 2 }, { 1, 1 }, { 2, 1 }, { 2, 2 }, { 2, 3 } } ) );
}

TEST( TupleOrder, SnakeEnumeration )
{
  // d = 2: columns alternate between increasing and decreasing second coordinate.
  for ( int k1 = 1; k1 <= 6; ++k1 )
    for ( int k2 = 1; k2 <= 6; ++k2 )
    {
      auto const order = enumerate( GroupShape( { k1, k2 }, Variant::Weak ) );
      std::size_t pos = 0;
      for ( int a = 1; a <= k1; ++a )
        for ( int j = 1; j <= k2; ++j, ++pos )
        {
          int const b = a % 2 == 1 ? j : k2 - j + 1;
          ASSERT_EQ( order[pos], ( std::vector<int>{ a, b } ) ) << k1 << "x" << k2 << " position " << pos;
        }
    }
}

TEST( TupleOrder, CompareMatchesOracleOnAllPairs )
{
  for ( auto const& shape : oracle_shapes() )
  {
    ASSERT_LE( shape.index_set_size(), 2000u );
    OrderContext const ctx( shape );
    auto const tuples = oracle::all_tuples( shape );
    ASSERT_EQ( tuples.size(), shape.index_set_size() );
    for ( auto const& a : tuples )
      for ( auto const& b : tuples )
        ASSERT_EQ( sign_of( ctx.compare( TupleIndex{ a }, TupleIndex{ b } ) ), oracle::compare( shape, a, b ) )
            << shape.to_string() << " " << TupleIndex{ a }.to_string() << " vs " << TupleIndex{ b }.to_string();
  }
}

TEST( TupleOrder, EnumerationIsOracleSort )
{
  for ( auto const& shape : oracle_shapes() )
    EXPECT_EQ( enumerate( shape ), oracle::sorted_by_oracle( shape ) ) << shape.to_string();
}

TEST( TupleOrder, TotalOrderAxioms )
{
  for ( auto const& shape : oracle_shapes() )
  {
    if ( shape.index_set_size() > 40 )
      continue;
    OrderContext const ctx( shape );
    std::vector<TupleIndex> tuples;
    for ( auto const& t : oracle::all_tuples( shape ) )
      tuples.push_back( TupleIndex{ t } );
    for ( auto const& a : tuples )
    {
      ASSERT_EQ( ctx.compare( a, a ), std::strong_ordering::equal );
      for ( auto const& b : tuples )
      {
        auto const ab = sign_of( ctx.compare( a, b ) );
        ASSERT_EQ( ab, -sign_of( ctx.compare( b, a ) ) );
        ASSERT_EQ( ab == 0, a == b );
        for ( auto const& c : tuples )
          if ( ab < 0 && ctx.compare( b, c ) < 0 )
            ASSERT_TRUE( ctx.compare( a, c ) < 0 ) << "transitivity fails in " << shape.to_string();
      }
    }
  }
  // Larger shapes: the enumeration is strictly increasing and compare agrees with positions.
  for ( auto const& shape : oracle_shapes() )
  {
    OrderContext const ctx( shape );
    auto const order = ctx.enumerate_ordered();
    ASSERT_EQ( order.size(), ctx.size() );
    for ( std::size_t i = 0; i + 1 < order.size(); ++i )
      ASSERT_TRUE( ctx.compare( order[i], order[i + 1] ) < 0 );
  }
}

TEST( TupleOrder, Ordinals )
{
  OrderContext const weak( GroupShape( { 4, 3 }, Variant::Weak ) );
  for ( int j = 1; j <= 4; ++j )
    EXPECT_EQ( weak.ordinal( TupleIndex{ { j, 1 } }, 0 ), j );
  EXPECT_EQ( weak.ordinal_in( CoordOrder::Reverse, 1, 3 ), 1 );
  // a_1 = 2 has even ordinal, so the second coordinate is read in reverse.
  EXPECT_EQ( weak.ordinal( TupleIndex{ { 2, 3 } }, 1 ), 1 );
  EXPECT_EQ( weak.ordinal( TupleIndex{ { 1, 3 } }, 1 ), 3 );

  OrderContext const strong( GroupShape( { 5, 3 }, Variant::Strong ) );
  EXPECT_EQ( strong.ordinal_in( CoordOrder::Reverse, 0, 0 ), 1 );
  EXPECT_EQ( strong.ordinal_in( CoordOrder::Reverse, 0, 4 ), 2 );
  EXPECT_EQ( strong.ordinal_in( CoordOrder::Forward, 0, 0 ), 1 );
  EXPECT_EQ( strong.ordinal_in( CoordOrder::Forward, 0, 4 ), 5 );
  EXPECT_EQ( strong.min_label( 0 ), 0 );
  EXPECT_EQ( strong.min_label( 1 ), 1 );
  EXPECT_TRUE( strong.is_g_coordinate( 0 ) );
  EXPECT_FALSE( strong.is_g_coordinate( 1 ) );
  for ( int order = 0; order <= 1; ++order )
    for ( int label = 0; label < 5; ++label )
      EXPECT_EQ( strong.ordinal_in( static_cast<CoordOrder>( order ), 0, label ),
                 oracle::ordinal( strong.shape(), 0, order, label ) );
}

TEST( TupleOrder, RejectsTuplesOutsideK )
{
  OrderContext const ctx( GroupShape( { 2, 3 }, Variant::Weak ) );
  EXPECT_THROW( ctx.validate( TupleIndex{ { 0, 1 } } ), invalid_shape );
  EXPECT_THROW( ctx.validate( TupleIndex{ { 1, 4 } } ), invalid_shape );
  EXPECT_THROW( ctx.validate( TupleIndex{ { 1 } } ), invalid_shape );
  EXPECT_THROW( ctx.compare( TupleIndex{ { 3, 1 } }, TupleIndex{ { 1, 1 } } ), invalid_shape );
  EXPECT_FALSE( ctx.contains( TupleIndex{ { 2, 0 } } ) );
  EXPECT_THROW( OrderContext( GroupShape( { 200, 200, 200 }, Variant::Weak ) ).enumerate_ordered( 1000 ),
                invalid_shape );
}

TEST( LemmaChain, WeakTwoThreeEndpoints )
{
  GroupShape const shape( { 2, 3 }, Variant::Weak );
  OrderContext const ctx( shape );
  auto const alpha = chain_start( ctx, TupleIndex{ { 0, 0 } }, 0 );
  EXPECT_EQ( alpha, ( TupleIndex{ { 1, 1 } } ) );
  auto const chain = lemma_chain( ctx, alpha, 0 );
  EXPECT_TRUE( chain.bookkeeping_ok ) << chain.failure;
  EXPECT_EQ( chain.end, ( TupleIndex{ { 2, 1 } } ) );
  EXPECT_EQ( chain.exponent, 2 );
  EXPECT_EQ( chain_exponent( shape, 0 ), 2 );
}

TEST( LemmaChain, EndpointsMatchClosedForm )
{
  std::size_t checked = 0;
  for ( auto const& shape : oracle_shapes() )
  {
    if ( shape.ks.back() < 2 || shape.index_set_size() > 800 )
      continue;
    bool ok_sizes = true;
    for ( std::size_t i = 0; i + 1 < shape.depth(); ++i )
      ok_sizes = ok_sizes && ( shape.variant == Variant::Weak ? shape.ks[i] % 2 == 0 : shape.ks[i] % 2 == 1 );
    if ( !ok_sizes )
      continue;
    OrderContext const ctx( shape );
    for ( std::size_t level = 0; level < shape.depth(); ++level )
    {
      // every prefix in coordinates < level, chain-first labels after it
      for ( auto const& t : oracle::all_tuples( shape ) )
      {
        auto const alpha = chain_start( ctx, TupleIndex{ t }, level );
        if ( alpha.coords != t )
          continue;
        auto const chain = lemma_chain( ctx, alpha, level );
        ASSERT_TRUE( chain.bookkeeping_ok ) << shape.to_string() << " " << alpha.to_string() << ": " << chain.failure;
        ASSERT_EQ( chain.end, chain_target( ctx, alpha, level ) ) << shape.to_string() << " " << alpha.to_string();
        ASSERT_EQ( chain.exponent, chain_exponent( shape, level ) );
        ++checked;
        ASSERT_TRUE( ctx.compare( chain.start, chain.end ) < 0 );
        for ( auto const& step : chain.steps )
          ASSERT_TRUE( ctx.compare( step.from, step.to ) < 0 ) << "chain steps must move up in the order";
      }
    }
  }
  EXPECT_GE( checked, 100u );
}

TEST( LemmaChain, RejectsBadStart )
{
  OrderContext const ctx( GroupShape( { 2, 3 }, Variant::Weak ) );
  EXPECT_THROW( lemma_chain( ctx, TupleIndex{ { 1, 2 } }, 0 ), invalid_shape );
  EXPECT_THROW( chain_start( ctx, TupleIndex{ { 1, 1 } }, 2 ), invalid_shape );
}

#include <ptf/tuple_order.hpp>

#include <algorithm>
#include <functional>

namespace ptf
{

std::string TupleIndex::to_string() const
{
  std::string out = "(";
  for ( std::size_t i = 0; i < coords.size(); ++i )
  {
    if ( i )
      out += ',';
    out += std::to_string( coords[i] );
  }
  return out + ")";
}

CoordOrder next_order( int ordinal )
{
  return ordinal % 2 == 1 ? CoordOrder::Forward : CoordOrder::Reverse;
}

OrderContext::OrderContext( GroupShape shape ) : shape_( std::move( shape ) )
{
  shape_.validate();
  size_ = shape_.index_set_size();
  tables_.resize( shape_.depth() );
  for ( std::size_t c = 0; c < shape_.depth(); ++c )
  {
    int const k = shape_.ks[c];
    auto& t = tables_[c];
    std::vector<int> forward, reverse;
    if ( is_g_coordinate( c ) )
    {
      // 0,1,...,k-1 and 0,k-1,...,1
      t.lo = 0;
      for ( int a = 0; a < k; ++a )
        forward.push_back( a );
      reverse.push_back( 0 );
      for ( int a = k - 1; a >= 1; --a )
        reverse.push_back( a );
    }
    else
    {
      t.lo = 1;
      for ( int a = 1; a <= k; ++a )
        forward.push_back( a );
      reverse.assign( forward.rbegin(), forward.rend() );
    }
    t.label_at[static_cast<int>( CoordOrder::Forward )] = forward;
    t.label_at[static_cast<int>( CoordOrder::Reverse )] = reverse;
    for ( int o = 0; o < 2; ++o )
    {
      t.ordinal_of[o].assign( static_cast<std::size_t>( k ), 0 );
      for ( int pos = 0; pos < k; ++pos )
        t.ordinal_of[o][static_cast<std::size_t>( t.label_at[o][static_cast<std::size_t>( pos )] - t.lo )] = pos + 1;
    }
  }
}

bool OrderContext::is_g_coordinate( std::size_t coord ) const
{
  return shape_.variant == Variant::Strong && coord + 1 < shape_.depth();
}

int OrderContext::max_label( std::size_t coord ) const
{
  return tables_[coord].lo + shape_.ks[coord] - 1;
}

bool OrderContext::contains( TupleIndex const& a ) const
{
  if ( a.size() != depth() )
    return false;
  for ( std::size_t c = 0; c < depth(); ++c )
    if ( a[c] < min_label( c ) || a[c] > max_label( c ) )
      return false;
  return true;
}

void OrderContext::validate( TupleIndex const& a ) const
{
  if ( a.size() != depth() )
    throw invalid_shape( "tuple " + a.to_string() + " has length " + std::to_string( a.size() ) + ", expected " +
                         std::to_string( depth() ) );
  for ( std::size_t c = 0; c < depth(); ++c )
    if ( a[c] < min_label( c ) || a[c] > max_label( c ) )
      throw invalid_shape( "coordinate " + std::to_string( c ) + " of " + a.to_string() + " is outside [" +
                           std::to_string( min_label( c ) ) + "," + std::to_string( max_label( c ) ) + "]" );
}

int OrderContext::ordinal_in( CoordOrder order, std::size_t coord, int label ) const
{
  auto const& t = tables_[coord];
  if ( label < t.lo || label > max_label( coord ) )
    throw invalid_shape( "label " + std::to_string( label ) + " outside coordinate " + std::to_string( coord ) );
  return t.ordinal_of[static_cast<int>( order )][static_cast<std::size_t>( label - t.lo )];
}

int OrderContext::label_at( CoordOrder order, std::size_t coord, int ordinal ) const
{
  if ( ordinal < 1 || ordinal > shape_.ks[coord] )
    throw invalid_shape( "ordinal " + std::to_string( ordinal ) + " outside coordinate " + std::to_string( coord ) );
  return tables_[coord].label_at[static_cast<int>( order )][static_cast<std::size_t>( ordinal - 1 )];
}

std::vector<CoordOrder> OrderContext::coordinate_orders( TupleIndex const& a ) const
{
  validate( a );
  std::vector<CoordOrder> orders( depth() );
  CoordOrder o = CoordOrder::Forward;
  for ( std::size_t c = 0; c < depth(); ++c )
  {
    orders[c] = o;
    o = next_order( ordinal_in( o, c, a[c] ) );
  }
  return orders;
}

int OrderContext::ordinal( TupleIndex const& a, std::size_t coord ) const
{
  if ( coord >= depth() )
    throw invalid_shape( "coordinate " + std::to_string( coord ) + " out of range" );
  return ordinal_in( coordinate_orders( a )[coord], coord, a[coord] );
}

std::strong_ordering OrderContext::compare( TupleIndex const& a, TupleIndex const& b ) const
{
  validate( a );
  validate( b );
  CoordOrder o = CoordOrder::Forward;
  for ( std::size_t c = 0; c < depth(); ++c )
  {
    int const oa = ordinal_in( o, c, a[c] );
    if ( a[c] != b[c] )
      return oa <=> ordinal_in( o, c, b[c] );
    o = next_order( oa );
  }
  return std::strong_ordering::equal;
}

std::vector<TupleIndex> OrderContext::enumerate_ordered( std::size_t cap ) const
{
  if ( size_ > cap )
    throw invalid_shape( "|K| = " + std::to_string( size_ ) + " exceeds the enumeration cap " + std::to_string( cap ) );
  std::vector<TupleIndex> out;
  out.reserve( size_ );
  TupleIndex cur{ std::vector<int>( depth(), 0 ) };
  std::function<void( std::size_t, CoordOrder )> walk = [&]( std::size_t c, CoordOrder o ) {
    if ( c == depth() )
    {
      out.push_back( cur );
      return;
    }
    for ( int ord = 1; ord <= shape_.ks[c]; ++ord )
    {
      cur[c] = label_at( o, c, ord );
      walk( c + 1, next_order( ord ) );
    }
  };
  walk( 0, CoordOrder::Forward );
  return out;
}

int chain_first_label( OrderContext const& ctx, std::size_t coord, CoordOrder order )
{
  if ( ctx.is_g_coordinate( coord ) )
    return ctx.label_at( order, coord, 2 );
  return ctx.label_at( order, coord, 1 );
}

int chain_last_label( OrderContext const& ctx, std::size_t coord, CoordOrder order )
{
  return ctx.label_at( order, coord, ctx.length( coord ) );
}

TupleIndex chain_start( OrderContext const& ctx, TupleIndex const& prefix, std::size_t level )
{
  if ( level >= ctx.depth() )
    throw invalid_shape( "chain level out of range" );
  TupleIndex out{ std::vector<int>( ctx.depth(), 0 ) };
  CoordOrder o = CoordOrder::Forward;
  for ( std::size_t c = 0; c < ctx.depth(); ++c )
  {
    out[c] = c < level ? prefix.coords.at( c ) : chain_first_label( ctx, c, o );
    o = next_order( ctx.ordinal_in( o, c, out[c] ) );
  }
  return out;
}

TupleIndex chain_target( OrderContext const& ctx, TupleIndex const& alpha, std::size_t level )
{
  ctx.validate( alpha );
  if ( level >= ctx.depth() )
    throw invalid_shape( "chain level out of range" );
  TupleIndex beta = alpha;
  int const k = ctx.length( level );
  beta[level] = ctx.is_g_coordinate( level ) ? k - alpha[level] : k - alpha[level] + 1;
  return beta;
}

long long chain_exponent( GroupShape const& shape, std::size_t level )
{
  if ( level >= shape.depth() )
    throw invalid_shape( "chain level out of range" );
  long long e = shape.ks.back() - 2;
  for ( std::size_t i = level; i + 1 < shape.depth(); ++i )
    e *= shape.variant == Variant::Weak ? shape.ks[i] : shape.ks[i] - 1;
  return e;
}

namespace
{

TupleIndex run_chain( OrderContext const& ctx, TupleIndex cur, std::size_t level, LemmaChain& out )
{
  auto const orders = ctx.coordinate_orders( cur );
  CoordOrder const o = orders[level];

  if ( level + 1 == ctx.depth() )
  {
    TupleIndex target = cur;
    target[level] = chain_last_label( ctx, level, o );
    if ( target != cur )
    {
      int const e = ctx.length( level ) - 2;
      out.steps.push_back( { ChainStep::Kind::Exponential, level, cur, target, e } );
      out.exponent += e;
    }
    return target;
  }

  while ( true )
  {
    if ( cur != chain_start( ctx, cur, level + 1 ) && out.bookkeeping_ok )
    {
      out.bookkeeping_ok = false;
      out.failure = "tuple " + cur.to_string() + " does not start a chain at coordinate " + std::to_string( level + 1 );
    }
    cur = run_chain( ctx, cur, level + 1, out );
    if ( cur[level] == chain_last_label( ctx, level, o ) )
      break;
    TupleIndex next = cur;
    next[level] = ctx.label_at( o, level, ctx.ordinal_in( o, level, cur[level] ) + 1 );
    out.steps.push_back( { ChainStep::Kind::Monotone, level, cur, next, 0 } );
    cur = next;
  }
  return cur;
}

} // namespace

LemmaChain lemma_chain( OrderContext const& ctx, TupleIndex const& alpha, std::size_t level )
{
  ctx.validate( alpha );
  if ( alpha != chain_start( ctx, alpha, level ) )
    throw invalid_shape( "tuple " + alpha.to_string() + " does not satisfy the chain start condition at coordinate " +
                         std::to_string( level ) );
  LemmaChain chain;
  chain.start = alpha;
  chain.end = run_chain( ctx, alpha, level, chain );
  return chain;
}

} // namespace ptf

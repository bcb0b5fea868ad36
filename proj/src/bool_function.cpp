#include <ptf/bool_function.hpp>
#include <ptf/tuple_order.hpp>

#include <json.hpp>

#include <algorithm>

namespace ptf
{

std::string_view to_string( Convention c )
{
  return c == Convention::ZeroOne ? "zero_one" : "plus_minus";
}

Convention parse_convention( std::string_view name )
{
  if ( name == "zero_one" || name == "ZeroOne" || name == "01" )
    return Convention::ZeroOne;
  if ( name == "plus_minus" || name == "PlusMinus" || name == "pm" )
    return Convention::PlusMinus;
  throw std::invalid_argument( "unknown convention '" + std::string( name ) + "'" );
}

BoolFun::BoolFun( std::size_t num_vars, Convention convention, std::string label )
    : num_vars_( num_vars ), convention_( convention ), label_( std::move( label ) )
{
  if ( num_vars > max_vars )
    throw std::invalid_argument( "truth tables are limited to " + std::to_string( max_vars ) + " variables" );
  words_.assign( std::max<std::uint64_t>( 1, num_inputs() / 64 ), 0 );
}

void BoolFun::set_bit( std::uint64_t input, bool value )
{
  auto& w = words_[input >> 6];
  auto const mask = std::uint64_t{ 1 } << ( input & 63 );
  w = value ? ( w | mask ) : ( w & ~mask );
}

int BoolFun::value( std::uint64_t input ) const
{
  bool const b = bit( input );
  if ( convention_ == Convention::ZeroOne )
    return b ? 1 : 0;
  return b ? 1 : -1;
}

int BoolFun::input_value( std::uint64_t input, std::size_t var ) const
{
  bool const b = ( input >> var ) & 1u;
  if ( convention_ == Convention::ZeroOne )
    return b ? 1 : 0;
  return b ? 1 : -1;
}

std::vector<std::uint8_t> BoolFun::bytes() const
{
  std::size_t const nbytes = std::max<std::uint64_t>( 1, num_inputs() / 8 );
  std::vector<std::uint8_t> out( nbytes, 0 );
  for ( std::size_t i = 0; i < nbytes; ++i )
    out[i] = static_cast<std::uint8_t>( words_[i / 8] >> ( 8 * ( i % 8 ) ) );
  return out;
}

std::uint64_t input_index( BoolFun const& f, std::span<int const> assignment )
{
  if ( assignment.size() != f.num_vars() )
    throw std::invalid_argument( "assignment has " + std::to_string( assignment.size() ) + " values, function has " +
                                 std::to_string( f.num_vars() ) + " variables" );
  std::uint64_t index = 0;
  for ( std::size_t v = 0; v < assignment.size(); ++v )
  {
    int const a = assignment[v];
    bool one;
    if ( f.convention() == Convention::ZeroOne && ( a == 0 || a == 1 ) )
      one = a == 1;
    else if ( f.convention() == Convention::PlusMinus && ( a == -1 || a == 1 ) )
      one = a == 1;
    else
      throw std::invalid_argument( "value " + std::to_string( a ) + " is not in the " +
                                   std::string( to_string( f.convention() ) ) + " alphabet" );
    if ( one )
      index |= std::uint64_t{ 1 } << v;
  }
  return index;
}

int eval( BoolFun const& f, std::span<int const> assignment )
{
  return f.value( input_index( f, assignment ) );
}

BoolFun make_gt( int k, MsbPosition msb )
{
  if ( k < 1 )
    throw invalid_shape( "GT needs k >= 1" );
  auto const n = static_cast<std::size_t>( 2 * k );
  BoolFun f( n, Convention::ZeroOne, std::string( msb == MsbPosition::Last ? "gt1(" : "gt0(" ) + std::to_string( k ) + ")" );
  for ( std::uint64_t input = 0; input < f.num_inputs(); ++input )
  {
    // x in bits 0..k-1, y in bits k..2k-1
    std::uint64_t x = 0, y = 0;
    for ( int j = 0; j < k; ++j )
    {
      int const weight = msb == MsbPosition::Last ? j : k - 1 - j;
      x |= ( ( input >> j ) & 1u ) << weight;
      y |= ( ( input >> ( k + j ) ) & 1u ) << weight;
    }
    f.set_bit( input, x >= y );
  }
  return f;
}

BoolFun make_g( int k, GVariant variant )
{
  if ( k < 2 )
    throw invalid_shape( "g needs k >= 2" );
  BoolFun f( static_cast<std::size_t>( k ), Convention::PlusMinus,
             std::string( variant == GVariant::G1 ? "g1(" : "g0(" ) + std::to_string( k ) + ")" );
  std::uint64_t const all = f.num_inputs() - 1;
  for ( std::uint64_t input = 0; input <= all; ++input )
  {
    bool const equal = input == 0 || input == all;
    bool out;
    if ( variant == GVariant::G1 )
    {
      bool const last = ( input >> ( k - 1 ) ) & 1u;
      out = equal ? last : !last;
    }
    else
    {
      bool const first = input & 1u;
      out = equal ? !first : first;
    }
    f.set_bit( input, out );
  }
  return f;
}

namespace
{

struct Factor
{
  std::size_t a;
  std::size_t b;
  bool difference; // a - b when true, a + b otherwise
};

// Nonzero iff the two bits differ (difference) or agree (sum); positive iff bit a is set.
inline int factor_sign( std::uint64_t input, Factor const& f )
{
  bool const ba = ( input >> f.a ) & 1u;
  bool const bb = ( input >> f.b ) & 1u;
  if ( f.difference ? ba == bb : ba != bb )
    return 0;
  return ba ? 1 : -1;
}

} // namespace

BoolFun make_hard( GroupShape const& shape )
{
  shape.validate();
  OrderContext const ctx( shape );
  auto const ordered = ctx.enumerate_ordered();
  std::size_t const d = shape.depth();

  // Products for each tuple, highest tuple first.
  std::vector<std::vector<Factor>> products;
  std::vector<bool> negated;
  products.reserve( ordered.size() );
  for ( auto it = ordered.rbegin(); it != ordered.rend(); ++it )
  {
    auto const& alpha = *it;
    std::vector<Factor> factors;
    bool neg = false;
    auto const orders = ctx.coordinate_orders( alpha );
    for ( std::size_t g = 0; g < d; ++g )
    {
      auto const a = static_cast<std::size_t>( alpha[g] );
      if ( ctx.is_g_coordinate( g ) )
      {
        auto const k = static_cast<std::size_t>( shape.ks[g] );
        if ( a == 0 )
        {
          factors.push_back( { shape.x_var( g, 0 ), shape.x_var( g, k - 1 ), false } );
          neg = neg != ( orders[g] == CoordOrder::Reverse );
        }
        else
          factors.push_back( { shape.x_var( g, a - 1 ), shape.x_var( g, a ), true } );
      }
      else
        factors.push_back( { shape.x_var( g, a - 1 ), shape.y_var( g, a - 1 ), true } );
    }
    products.push_back( std::move( factors ) );
    negated.push_back( neg );
  }

  std::string label = shape.to_string();
  if ( !shape.meets_theorem_hypotheses() )
    label += " [theorem hypotheses not met]";
  BoolFun f( shape.num_vars(), shape.variant == Variant::Weak ? Convention::ZeroOne : Convention::PlusMinus, label );

  for ( std::uint64_t input = 0; input < f.num_inputs(); ++input )
  {
    bool out = true;
    for ( std::size_t t = 0; t < products.size(); ++t )
    {
      int sign = negated[t] ? -1 : 1;
      for ( auto const& factor : products[t] )
      {
        sign *= factor_sign( input, factor );
        if ( sign == 0 )
          break;
      }
      if ( sign != 0 )
      {
        out = sign > 0;
        break;
      }
    }
    f.set_bit( input, out );
  }
  return f;
}

BoolFun with_convention( BoolFun const& f, Convention convention )
{
  BoolFun g( f.num_vars(), convention, f.label() );
  for ( std::uint64_t i = 0; i < f.num_inputs(); ++i )
    g.set_bit( i, f.bit( i ) );
  return g;
}

std::string to_hex( BoolFun const& f )
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for ( auto byte : f.bytes() )
  {
    out += digits[byte >> 4];
    out += digits[byte & 15];
  }
  return out;
}

std::string to_json( BoolFun const& f )
{
  nlohmann::ordered_json j;
  j["n"] = f.num_vars();
  j["convention"] = std::string( to_string( f.convention() ) );
  j["label"] = f.label();
  j["table_hex"] = to_hex( f );
  return j.dump();
}

namespace
{

BoolFun bool_fun_from_json_impl( std::string_view text )
{
  auto const j = nlohmann::json::parse( text );
  auto const n = j.at( "n" ).get<std::size_t>();
  BoolFun f( n, parse_convention( j.at( "convention" ).get<std::string>() ), j.value( "label", std::string{} ) );
  auto const hex = j.at( "table_hex" ).get<std::string>();
  std::size_t const nbytes = std::max<std::uint64_t>( 1, f.num_inputs() / 8 );
  if ( hex.size() != 2 * nbytes )
    throw std::invalid_argument( "table_hex has " + std::to_string( hex.size() ) + " digits, expected " +
                                 std::to_string( 2 * nbytes ) );
  auto nibble = []( char c ) -> unsigned {
    if ( c >= '0' && c <= '9' )
      return static_cast<unsigned>( c - '0' );
    if ( c >= 'a' && c <= 'f' )
      return static_cast<unsigned>( c - 'a' + 10 );
    if ( c >= 'A' && c <= 'F' )
      return static_cast<unsigned>( c - 'A' + 10 );
    throw std::invalid_argument( "bad hex digit in table_hex" );
  };
  for ( std::size_t i = 0; i < nbytes; ++i )
  {
    unsigned const byte = ( nibble( hex[2 * i] ) << 4 ) | nibble( hex[2 * i + 1] );
    for ( unsigned b = 0; b < 8; ++b )
    {
      std::uint64_t const input = 8 * i + b;
      if ( input >= f.num_inputs() )
      {
        if ( ( byte >> b ) & 1u )
          throw std::invalid_argument( "table_hex sets bits beyond 2^n" );
        continue;
      }
      f.set_bit( input, ( byte >> b ) & 1u );
    }
  }
  return f;
}

} // namespace

BoolFun bool_fun_from_json( std::string_view text )
{
  try
  {
    return bool_fun_from_json_impl( text );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw std::invalid_argument( std::string( "malformed JSON: " ) + e.what() );
  }
}

} // namespace ptf

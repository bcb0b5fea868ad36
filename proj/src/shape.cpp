#include <ptf/shape.hpp>

#include <charconv>
#include <limits>
#include <numeric>

namespace ptf
{

std::string_view to_string( Variant v )
{
  return v == Variant::Weak ? "weak" : "strong";
}

Variant parse_variant( std::string_view name )
{
  if ( name == "weak" )
    return Variant::Weak;
  if ( name == "strong" )
    return Variant::Strong;
  throw invalid_shape( "unknown variant '" + std::string( name ) + "' (expected weak or strong)" );
}

std::size_t GroupShape::num_x_vars() const
{
  return std::accumulate( ks.begin(), ks.end(), std::size_t{ 0 },
                          []( std::size_t acc, int k ) { return acc + static_cast<std::size_t>( k ); } );
}

std::size_t GroupShape::num_vars() const
{
  if ( ks.empty() )
    return 0;
  if ( variant == Variant::Weak )
    return 2 * num_x_vars();
  return num_x_vars() + static_cast<std::size_t>( ks.back() );
}

std::size_t GroupShape::group_offset( std::size_t group ) const
{
  std::size_t off = 0;
  for ( std::size_t g = 0; g < group; ++g )
    off += static_cast<std::size_t>( ks[g] );
  return off;
}

std::size_t GroupShape::x_var( std::size_t group, std::size_t pos ) const
{
  return group_offset( group ) + pos;
}

bool GroupShape::has_y( std::size_t group ) const
{
  return variant == Variant::Weak || group + 1 == depth();
}

std::size_t GroupShape::y_var( std::size_t group, std::size_t pos ) const
{
  if ( !has_y( group ) )
    throw invalid_shape( "strong shapes carry y variables on the last group only" );
  if ( variant == Variant::Weak )
    return num_x_vars() + group_offset( group ) + pos;
  return num_x_vars() + pos;
}

bool GroupShape::constructible() const
{
  if ( ks.empty() )
    return false;
  int const min_k = variant == Variant::Weak ? 1 : 2;
  for ( int k : ks )
    if ( k < min_k )
      return false;
  return true;
}

void GroupShape::validate() const
{
  if ( ks.empty() )
    throw invalid_shape( "shape needs at least one group" );
  if ( !constructible() )
    throw invalid_shape( "group sizes of " + to_string() + " are too small for the " +
                         std::string( ptf::to_string( variant ) ) + " construction" );
}

bool GroupShape::meets_theorem_hypotheses() const
{
  if ( !constructible() || ks.back() < 3 )
    return false;
  for ( std::size_t i = 0; i + 1 < ks.size(); ++i )
  {
    int const k = ks[i];
    if ( variant == Variant::Weak && ( k < 2 || k % 2 != 0 ) )
      return false;
    if ( variant == Variant::Strong && ( k < 3 || k % 2 != 1 ) )
      return false;
  }
  return true;
}

std::size_t GroupShape::index_set_size() const
{
  std::size_t size = 1;
  for ( int k : ks )
  {
    if ( size > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>( k ) )
      throw invalid_shape( "index set of " + to_string() + " is too large" );
    size *= static_cast<std::size_t>( k );
  }
  return size;
}

std::string GroupShape::ks_string() const
{
  std::string out;
  for ( std::size_t i = 0; i < ks.size(); ++i )
  {
    if ( i )
      out += ',';
    out += std::to_string( ks[i] );
  }
  return out;
}

std::string GroupShape::to_string() const
{
  return std::string( ptf::to_string( variant ) ) + "(" + ks_string() + ")";
}

std::vector<int> parse_group_sizes( std::string_view text )
{
  std::vector<int> out;
  std::size_t i = 0;
  auto skip = [&] {
    while ( i < text.size() && ( text[i] == ' ' || text[i] == '(' || text[i] == ')' || text[i] == '\t' ) )
      ++i;
  };
  skip();
  while ( i < text.size() )
  {
    int value = 0;
    auto [ptr, ec] = std::from_chars( text.data() + i, text.data() + text.size(), value );
    if ( ec != std::errc{} )
      throw invalid_shape( "cannot parse group sizes '" + std::string( text ) + "'" );
    out.push_back( value );
    i = static_cast<std::size_t>( ptr - text.data() );
    skip();
    if ( i < text.size() )
    {
      if ( text[i] != ',' )
        throw invalid_shape( "cannot parse group sizes '" + std::string( text ) + "'" );
      ++i;
      skip();
    }
  }
  if ( out.empty() )
    throw invalid_shape( "empty group size list" );
  return out;
}

GroupShape parse_shape( std::string_view variant, std::string_view sizes )
{
  return GroupShape( parse_group_sizes( sizes ), parse_variant( variant ) );
}

} // namespace ptf

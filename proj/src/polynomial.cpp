#include <ptf/polynomial.hpp>

#include <json.hpp>

#include <algorithm>

namespace ptf
{

int min_label( GroupShape const& shape, std::size_t group )
{
  return shape.variant == Variant::Strong && group + 1 < shape.depth() ? 0 : 1;
}

std::size_t uv_id_count( GroupShape const& shape )
{
  return 2 * shape.num_x_vars();
}

std::uint32_t uv_id( GroupShape const& shape, UvVar var )
{
  if ( var.group >= shape.depth() )
    throw invalid_shape( "uv group out of range" );
  int const lo = min_label( shape, var.group );
  int const k = shape.ks[var.group];
  if ( var.label < lo || var.label >= lo + k )
    throw invalid_shape( "uv label out of range" );
  if ( var.is_v && !shape.has_y( var.group ) )
    throw invalid_shape( "strong shapes have v variables on the last group only" );
  std::size_t id = shape.group_offset( var.group ) + static_cast<std::size_t>( var.label - lo );
  if ( var.is_v )
    id += shape.num_x_vars();
  return static_cast<std::uint32_t>( id );
}

UvVar uv_var( GroupShape const& shape, std::uint32_t id )
{
  std::size_t const m = shape.num_x_vars();
  if ( id >= 2 * m )
    throw invalid_shape( "uv id out of range" );
  bool const is_v = id >= m;
  std::size_t rest = is_v ? id - m : id;
  std::size_t g = 0;
  while ( rest >= static_cast<std::size_t>( shape.ks[g] ) )
  {
    rest -= static_cast<std::size_t>( shape.ks[g] );
    ++g;
  }
  return { g, min_label( shape, g ) + static_cast<int>( rest ), is_v };
}

IntPolynomial::IntPolynomial( Basis basis, std::size_t num_vars, std::optional<GroupShape> shape )
    : basis_( basis ), num_vars_( num_vars ), shape_( std::move( shape ) )
{
  if ( basis_ == Basis::UV && !shape_ )
    throw std::invalid_argument( "UV polynomials need a group shape" );
}

void IntPolynomial::add( Monomial mono, mpz_class const& coeff )
{
  if ( sgn( coeff ) == 0 )
    return;
  std::sort( mono.begin(), mono.end() );
  for ( std::size_t i = 0; i < mono.size(); ++i )
  {
    if ( mono[i] >= num_vars_ )
      throw std::invalid_argument( "variable id " + std::to_string( mono[i] ) + " out of range" );
    if ( basis_ == Basis::XY && i > 0 && mono[i] == mono[i - 1] )
      throw std::invalid_argument( "XY monomials must be multilinear" );
  }
  auto [it, inserted] = terms_.try_emplace( std::move( mono ), coeff );
  if ( !inserted )
  {
    it->second += coeff;
    if ( sgn( it->second ) == 0 )
      terms_.erase( it );
  }
}

mpz_class IntPolynomial::coefficient( Monomial mono ) const
{
  std::sort( mono.begin(), mono.end() );
  auto it = terms_.find( mono );
  return it == terms_.end() ? mpz_class( 0 ) : it->second;
}

int IntPolynomial::degree() const
{
  std::size_t deg = 0;
  for ( auto const& [mono, c] : terms_ )
    deg = std::max( deg, mono.size() );
  return terms_.empty() ? -1 : static_cast<int>( deg );
}

mpz_class IntPolynomial::weight() const
{
  mpz_class w = 0;
  for ( auto const& [mono, c] : terms_ )
    w += abs( c );
  return w;
}

std::string IntPolynomial::var_name( std::uint32_t id ) const
{
  if ( basis_ == Basis::UV )
  {
    auto const var = uv_var( *shape_, id );
    return std::string( var.is_v ? "v" : "u" ) + std::to_string( var.group + 1 ) + "_" + std::to_string( var.label );
  }
  if ( !shape_ )
    return "x" + std::to_string( id );
  auto const& s = *shape_;
  std::size_t const m = s.num_x_vars();
  bool const is_y = id >= m;
  std::size_t rest = is_y ? id - m : id;
  std::size_t g = 0;
  if ( is_y && s.variant == Variant::Strong )
    g = s.depth() - 1;
  else
    while ( rest >= static_cast<std::size_t>( s.ks[g] ) )
    {
      rest -= static_cast<std::size_t>( s.ks[g] );
      ++g;
    }
  return std::string( is_y ? "y" : "x" ) + std::to_string( g + 1 ) + "_" + std::to_string( rest + 1 );
}

std::string IntPolynomial::to_string() const
{
  if ( terms_.empty() )
    return "0";
  std::string out;
  bool first = true;
  for ( auto const& [mono, c] : terms_ )
  {
    std::string const cs = c.get_str();
    if ( first )
      out += cs;
    else if ( sgn( c ) < 0 )
      out += " - " + cs.substr( 1 );
    else
      out += " + " + cs;
    first = false;
    for ( auto id : mono )
      out += "*" + var_name( id );
  }
  return out;
}

UvAssignment derive_uv( GroupShape const& shape, std::uint64_t input )
{
  UvAssignment out;
  out.values.assign( uv_id_count( shape ), 0 );
  bool const pm = shape.variant == Variant::Strong;
  auto val = [&]( std::size_t var ) {
    bool const b = ( input >> var ) & 1u;
    return pm ? ( b ? 1 : -1 ) : ( b ? 1 : 0 );
  };
  for ( std::size_t g = 0; g < shape.depth(); ++g )
  {
    auto const k = static_cast<std::size_t>( shape.ks[g] );
    if ( shape.has_y( g ) )
    {
      for ( std::size_t p = 0; p < k; ++p )
      {
        int const label = static_cast<int>( p ) + 1;
        int const x = val( shape.x_var( g, p ) );
        int const y = val( shape.y_var( g, p ) );
        out.values[uv_id( shape, { g, label, false } )] = x - y;
        out.values[uv_id( shape, { g, label, true } )] = x + y;
      }
      continue;
    }
    // L_0 = x_1 + x_k, L_j = x_j - x_{j+1}
    out.values[uv_id( shape, { g, 0, false } )] = val( shape.x_var( g, 0 ) ) + val( shape.x_var( g, k - 1 ) );
    for ( std::size_t j = 1; j < k; ++j )
      out.values[uv_id( shape, { g, static_cast<int>( j ), false } )] =
          val( shape.x_var( g, j - 1 ) ) - val( shape.x_var( g, j ) );
  }
  return out;
}

mpz_class eval_xy( IntPolynomial const& p, std::uint64_t input, Convention convention )
{
  if ( p.basis() != Basis::XY )
    throw std::invalid_argument( "eval_xy needs an XY polynomial" );
  mpz_class total = 0;
  for ( auto const& [mono, c] : p.terms() )
  {
    int sign = 1;
    for ( auto id : mono )
    {
      bool const b = ( input >> id ) & 1u;
      if ( !b )
      {
        if ( convention == Convention::ZeroOne )
        {
          sign = 0;
          break;
        }
        sign = -sign;
      }
    }
    if ( sign > 0 )
      total += c;
    else if ( sign < 0 )
      total -= c;
  }
  return total;
}

mpz_class eval_xy( IntPolynomial const& p, std::span<int const> values )
{
  if ( p.basis() != Basis::XY )
    throw std::invalid_argument( "eval_xy needs an XY polynomial" );
  if ( values.size() != p.num_vars() )
    throw std::invalid_argument( "assignment length does not match the polynomial" );
  mpz_class total = 0;
  mpz_class term;
  for ( auto const& [mono, c] : p.terms() )
  {
    term = c;
    for ( auto id : mono )
      term *= values[id];
    total += term;
  }
  return total;
}

mpz_class eval_uv( IntPolynomial const& p, UvAssignment const& assignment )
{
  if ( p.basis() != Basis::UV )
    throw std::invalid_argument( "eval_uv needs a UV polynomial" );
  if ( assignment.values.size() != p.num_vars() )
    throw std::invalid_argument( "uv assignment does not match the polynomial" );
  mpz_class total = 0;
  for ( auto const& [mono, c] : p.terms() )
  {
    long long prod = 1;
    for ( auto id : mono )
    {
      prod *= assignment.values[id];
      if ( prod == 0 )
        break;
    }
    if ( prod != 0 )
      total += c * mpz_class( std::to_string( prod ) );
  }
  return total;
}

namespace
{

struct LinearPart
{
  std::uint32_t var;
  int sign;
};

// Multiplies out a product of linear forms and adds coeff * result to p.
void add_product( IntPolynomial& p, std::vector<std::vector<LinearPart>> const& factors, mpz_class const& coeff,
                  std::size_t cap )
{
  std::vector<std::size_t> pick( factors.size(), 0 );
  std::size_t produced = 0;
  while ( true )
  {
    Monomial mono;
    int sign = 1;
    for ( std::size_t f = 0; f < factors.size(); ++f )
    {
      mono.push_back( factors[f][pick[f]].var );
      sign *= factors[f][pick[f]].sign;
    }
    if ( ++produced > cap )
      throw std::length_error( "expansion exceeds the monomial cap of " + std::to_string( cap ) );
    p.add( std::move( mono ), sign > 0 ? coeff : mpz_class( -coeff ) );
    std::size_t f = 0;
    while ( f < factors.size() && ++pick[f] == factors[f].size() )
      pick[f++] = 0;
    if ( f == factors.size() )
      break;
  }
}

} // namespace

IntPolynomial witness_gate( GroupShape const& shape, std::size_t enumeration_cap )
{
  OrderContext const ctx( shape );
  auto const ordered = ctx.enumerate_ordered( enumeration_cap );
  IntPolynomial p = IntPolynomial::xy( shape );
  auto const d = shape.depth();
  mpz_class power = 1;
  for ( auto const& alpha : ordered )
  {
    power *= 2;
    auto const orders = ctx.coordinate_orders( alpha );
    std::vector<std::vector<LinearPart>> factors;
    bool negate = false;
    for ( std::size_t g = 0; g < d; ++g )
    {
      auto const a = static_cast<std::size_t>( alpha[g] );
      if ( ctx.is_g_coordinate( g ) )
      {
        auto const k = static_cast<std::size_t>( shape.ks[g] );
        auto const x = [&]( std::size_t pos ) { return static_cast<std::uint32_t>( shape.x_var( g, pos ) ); };
        if ( a == 0 )
        {
          factors.push_back( { { x( 0 ), 1 }, { x( k - 1 ), 1 } } );
          negate = negate != ( orders[g] == CoordOrder::Reverse );
        }
        else
          factors.push_back( { { x( a - 1 ), 1 }, { x( a ), -1 } } );
      }
      else
        factors.push_back( { { static_cast<std::uint32_t>( shape.x_var( g, a - 1 ) ), 1 },
                             { static_cast<std::uint32_t>( shape.y_var( g, a - 1 ) ), -1 } } );
    }
    add_product( p, factors, negate ? mpz_class( -power ) : power, std::size_t{ 1 } << 20 );
  }
  return p;
}

IntPolynomial to_uv( IntPolynomial const& p, std::size_t monomial_cap )
{
  if ( p.basis() != Basis::XY || !p.shape() )
    throw std::invalid_argument( "to_uv needs an XY polynomial over a group shape" );
  auto const& shape = *p.shape();
  auto const d = static_cast<int>( shape.depth() );
  if ( p.degree() > d )
    throw std::invalid_argument( "to_uv: degree " + std::to_string( p.degree() ) + " exceeds d = " + std::to_string( d ) );

  // Every input variable as (sum of parts) / 2.
  std::size_t const m = shape.num_x_vars();
  std::vector<std::vector<LinearPart>> substitution( shape.num_vars() );
  for ( std::size_t g = 0; g < shape.depth(); ++g )
  {
    auto const k = static_cast<std::size_t>( shape.ks[g] );
    for ( std::size_t pos = 0; pos < k; ++pos )
    {
      if ( shape.has_y( g ) )
      {
        int const label = static_cast<int>( pos ) + 1;
        auto const u = uv_id( shape, { g, label, false } );
        auto const v = uv_id( shape, { g, label, true } );
        substitution[shape.x_var( g, pos )] = { { u, 1 }, { v, 1 } };
        substitution[shape.y_var( g, pos )] = { { u, -1 }, { v, 1 } };
        continue;
      }
      // 2 x_j = u_0 - u_1 - ... - u_{j-1} + u_j + ... + u_{k-1}
      std::vector<LinearPart> parts;
      std::size_t const j = pos + 1;
      for ( std::size_t label = 0; label < k; ++label )
        parts.push_back( { uv_id( shape, { g, static_cast<int>( label ), false } ),
                           label >= 1 && label <= j - 1 ? -1 : 1 } );
      substitution[shape.x_var( g, pos )] = std::move( parts );
    }
  }
  (void)m;

  IntPolynomial out = IntPolynomial::uv( shape );
  std::size_t produced = 0;
  for ( auto const& [mono, c] : p.terms() )
  {
    std::vector<std::vector<LinearPart>> factors;
    std::size_t count = 1;
    for ( auto id : mono )
    {
      factors.push_back( substitution[id] );
      count *= substitution[id].size();
    }
    produced += count;
    if ( produced > monomial_cap )
      throw std::length_error( "to_uv expansion exceeds the monomial cap of " + std::to_string( monomial_cap ) );
    mpz_class scaled = c;
    scaled <<= static_cast<mp_bitcnt_t>( d - static_cast<int>( mono.size() ) );
    if ( factors.empty() )
      out.add( {}, scaled );
    else
      add_product( out, factors, scaled, monomial_cap );
  }
  return out;
}

IntPolynomial symmetrize( IntPolynomial const& p )
{
  if ( p.basis() != Basis::UV )
    throw std::invalid_argument( "symmetrize needs a UV polynomial" );
  auto const& shape = *p.shape();
  IntPolynomial q = IntPolynomial::uv( shape );
  for ( auto const& [mono, c] : p.terms() )
  {
    if ( mono.size() != shape.depth() )
      continue;
    std::vector<bool> seen( shape.depth(), false );
    bool keep = true;
    for ( auto id : mono )
    {
      auto const var = uv_var( shape, id );
      if ( var.is_v || seen[var.group] )
      {
        keep = false;
        break;
      }
      seen[var.group] = true;
    }
    if ( keep )
      q.add( mono, c );
  }
  return q;
}

std::map<TupleIndex, mpz_class> tuple_coefficients( IntPolynomial const& q )
{
  if ( q.basis() != Basis::UV )
    throw std::invalid_argument( "tuple_coefficients needs a UV polynomial" );
  auto const& shape = *q.shape();
  std::map<TupleIndex, mpz_class> out;
  for ( auto const& [mono, c] : q.terms() )
  {
    if ( mono.size() != shape.depth() )
      throw std::invalid_argument( "polynomial is not symmetrized" );
    TupleIndex alpha{ std::vector<int>( shape.depth(), 0 ) };
    for ( auto id : mono )
    {
      auto const var = uv_var( shape, id );
      if ( var.is_v )
        throw std::invalid_argument( "polynomial is not symmetrized" );
      alpha[var.group] = var.label;
    }
    out.emplace( std::move( alpha ), c );
  }
  return out;
}

Monomial tuple_monomial( GroupShape const& shape, TupleIndex const& alpha )
{
  if ( alpha.size() != shape.depth() )
    throw invalid_shape( "tuple length does not match the shape" );
  Monomial mono;
  for ( std::size_t g = 0; g < shape.depth(); ++g )
    mono.push_back( uv_id( shape, { g, alpha[g], false } ) );
  std::sort( mono.begin(), mono.end() );
  return mono;
}

std::string to_json( IntPolynomial const& p )
{
  nlohmann::ordered_json j;
  j["basis"] = p.basis() == Basis::XY ? "xy" : "uv";
  if ( p.shape() )
  {
    j["variant"] = std::string( to_string( p.shape()->variant ) );
    j["ks"] = p.shape()->ks;
  }
  j["num_vars"] = p.num_vars();
  auto terms = nlohmann::ordered_json::array();
  for ( auto const& [mono, c] : p.terms() )
  {
    nlohmann::ordered_json t;
    t["vars"] = mono;
    t["coeff"] = c.get_str();
    terms.push_back( std::move( t ) );
  }
  j["terms"] = std::move( terms );
  return j.dump();
}

namespace
{

IntPolynomial polynomial_from_json_impl( std::string_view text )
{
  auto const j = nlohmann::json::parse( text );
  auto const basis_name = j.at( "basis" ).get<std::string>();
  Basis const basis = basis_name == "xy" ? Basis::XY : basis_name == "uv" ? Basis::UV
                                                                          : throw std::invalid_argument( "unknown basis" );
  std::optional<GroupShape> shape;
  if ( j.contains( "ks" ) )
    shape = GroupShape( j.at( "ks" ).get<std::vector<int>>(), parse_variant( j.at( "variant" ).get<std::string>() ) );
  IntPolynomial p( basis, j.at( "num_vars" ).get<std::size_t>(), shape );
  for ( auto const& t : j.at( "terms" ) )
    p.add( t.at( "vars" ).get<Monomial>(), mpz_class( t.at( "coeff" ).get<std::string>() ) );
  return p;
}

} // namespace

IntPolynomial polynomial_from_json( std::string_view text )
{
  try
  {
    return polynomial_from_json_impl( text );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw std::invalid_argument( std::string( "malformed JSON: " ) + e.what() );
  }
}

} // namespace ptf

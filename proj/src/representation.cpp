#include <ptf/threshold_analysis.hpp>

#include <algorithm>
#include <bit>
#include <climits>
#include <cstring>
#include <functional>
#include <unordered_set>

namespace ptf
{

namespace
{

void check_size( std::size_t n, std::size_t max_vars )
{
  if ( n > max_vars )
    throw std::length_error( "exhaustive checks are capped at n = " + std::to_string( max_vars ) + ", got " +
                             std::to_string( n ) );
}

struct MaskTerm
{
  std::uint64_t mask;
  mpz_class coeff;
};

} // namespace

SignCheck check_sign_representation( IntPolynomial const& p, BoolFun const& f, std::size_t max_vars )
{
  SignCheck out;
  check_size( f.num_vars(), max_vars );

  if ( p.basis() == Basis::XY )
  {
    if ( p.num_vars() != f.num_vars() )
      throw std::invalid_argument( "polynomial has " + std::to_string( p.num_vars() ) + " variables, function has " +
                                   std::to_string( f.num_vars() ) );
    std::vector<MaskTerm> terms;
    for ( auto const& [mono, c] : p.terms() )
    {
      std::uint64_t mask = 0;
      for ( auto id : mono )
        mask |= std::uint64_t{ 1 } << id;
      terms.push_back( { mask, c } );
    }
    bool const small = p.weight() < mpz_class( 1 ) << 62;
    std::vector<long long> small_coeffs;
    if ( small )
      for ( auto const& t : terms )
        small_coeffs.push_back( t.coeff.get_si() );
    bool const zero_one = f.convention() == Convention::ZeroOne;
    mpz_class big;
    for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
    {
      bool nonneg;
      if ( small )
      {
        long long s = 0;
        for ( std::size_t t = 0; t < terms.size(); ++t )
        {
          auto const m = terms[t].mask;
          if ( zero_one )
          {
            if ( ( x & m ) == m )
              s += small_coeffs[t];
          }
          else
            s += std::popcount( m & ~x ) & 1 ? -small_coeffs[t] : small_coeffs[t];
        }
        nonneg = s >= 0;
        if ( nonneg != f.bit( x ) )
          big = static_cast<long>( s );
      }
      else
      {
        big = 0;
        for ( auto const& t : terms )
        {
          if ( zero_one )
          {
            if ( ( x & t.mask ) == t.mask )
              big += t.coeff;
          }
          else if ( std::popcount( t.mask & ~x ) & 1 )
            big -= t.coeff;
          else
            big += t.coeff;
        }
        nonneg = sgn( big ) >= 0;
      }
      ++out.inputs_checked;
      if ( nonneg != f.bit( x ) )
      {
        out.pass = false;
        out.counterexample = x;
        out.value = big;
        return out;
      }
    }
    return out;
  }

  auto const& shape = *p.shape();
  if ( shape.num_vars() != f.num_vars() )
    throw std::invalid_argument( "shape " + shape.to_string() + " does not match a function on " +
                                 std::to_string( f.num_vars() ) + " variables" );
  for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
  {
    mpz_class const v = eval_uv( p, derive_uv( shape, x ) );
    ++out.inputs_checked;
    if ( ( sgn( v ) >= 0 ) != f.bit( x ) )
    {
      out.pass = false;
      out.counterexample = x;
      out.value = v;
      return out;
    }
  }
  return out;
}

namespace
{

// Adds one margin row per distinct (pattern, class) pair.
class RowBuilder
{
public:
  explicit RowBuilder( RepresentationProblem& problem ) : problem_( problem ) {}

  void add( std::vector<int> const& values, bool positive, std::uint64_t input )
  {
    std::string key( values.size() * sizeof( int ) + 1, '\0' );
    std::memcpy( key.data(), values.data(), values.size() * sizeof( int ) );
    key.back() = positive ? '+' : '-';
    if ( !seen_.insert( std::move( key ) ).second )
      return;
    lp::SparseRow row;
    for ( std::size_t c = 0; c < values.size(); ++c )
      if ( values[c] != 0 )
        row.emplace_back( c, Rational( values[c] ) );
    if ( positive )
      problem_.lp.add_constraint( std::move( row ), lp::Relation::GreaterEq, 0, true );
    else
      problem_.lp.add_constraint( std::move( row ), lp::Relation::LessEq, -1, true );
    problem_.row_input.push_back( input );
  }

private:
  RepresentationProblem& problem_;
  std::unordered_set<std::string> seen_;
};

std::string monomial_name( Monomial const& m )
{
  std::string name = "c";
  for ( auto id : m )
    name += "_" + std::to_string( id );
  return name;
}

} // namespace

RepresentationProblem xy_representation( BoolFun const& f, int degree, std::optional<GroupShape> shape )
{
  if ( degree < 0 )
    throw std::invalid_argument( "degree must be nonnegative" );
  if ( shape && shape->num_vars() != f.num_vars() )
    throw std::invalid_argument( "shape does not match the function" );
  RepresentationProblem problem;
  problem.basis = RepBasis::XY;
  problem.degree = degree;
  problem.num_inputs = f.num_vars();
  problem.shape = shape;
  auto const n = f.num_vars();
  auto const d = std::min<std::size_t>( static_cast<std::size_t>( degree ), n );

  for ( std::size_t size = 0; size <= d; ++size )
  {
    Monomial cur;
    std::function<void( std::uint32_t )> rec = [&]( std::uint32_t start ) {
      if ( cur.size() == size )
      {
        problem.monomials.push_back( cur );
        return;
      }
      for ( std::uint32_t v = start; v < n; ++v )
      {
        cur.push_back( v );
        rec( v + 1 );
        cur.pop_back();
      }
    };
    rec( 0 );
  }
  for ( auto const& m : problem.monomials )
    problem.lp.add_var( monomial_name( m ) );

  std::vector<std::uint64_t> masks;
  for ( auto const& m : problem.monomials )
  {
    std::uint64_t mask = 0;
    for ( auto id : m )
      mask |= std::uint64_t{ 1 } << id;
    masks.push_back( mask );
  }
  bool const zero_one = f.convention() == Convention::ZeroOne;
  RowBuilder rows( problem );
  std::vector<int> values( masks.size() );
  for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
  {
    for ( std::size_t c = 0; c < masks.size(); ++c )
      values[c] = zero_one ? ( ( x & masks[c] ) == masks[c] ) : ( std::popcount( masks[c] & ~x ) & 1 ? -1 : 1 );
    rows.add( values, f.bit( x ), x );
  }
  return problem;
}

RepresentationProblem uv_representation( GroupShape const& shape )
{
  shape.validate();
  RepresentationProblem problem;
  problem.basis = RepBasis::UvSymmetrized;
  problem.degree = static_cast<int>( shape.depth() );
  problem.num_inputs = shape.num_vars();
  problem.shape = shape;
  OrderContext const ctx( shape );
  problem.tuples = ctx.enumerate_ordered( std::size_t{ 1 } << 16 );
  for ( auto const& t : problem.tuples )
  {
    problem.monomials.push_back( tuple_monomial( shape, t ) );
    std::string name = "w";
    for ( int a : t.coords )
      name += "_" + std::to_string( a );
    problem.lp.add_var( name );
  }
  auto const f = make_hard( shape );
  RowBuilder rows( problem );
  std::vector<int> values( problem.tuples.size() );
  for ( std::uint64_t x = 0; x < f.num_inputs(); ++x )
  {
    auto const uv = derive_uv( shape, x );
    for ( std::size_t c = 0; c < problem.monomials.size(); ++c )
    {
      int v = 1;
      for ( auto id : problem.monomials[c] )
        v *= uv.values[id];
      values[c] = v;
    }
    rows.add( values, f.bit( x ), x );
  }
  return problem;
}

RepresentationProblem gt_linear_representation( int k, MsbPosition msb )
{
  if ( k < 1 || k > 12 )
    throw invalid_shape( "linear GT problems need 1 <= k <= 12" );
  RepresentationProblem problem;
  problem.basis = RepBasis::LinearU;
  problem.degree = 1;
  problem.num_inputs = static_cast<std::size_t>( 2 * k );
  for ( int j = 1; j <= k; ++j )
  {
    problem.labels.push_back( j );
    problem.lp.add_var( "w" + std::to_string( j ) );
  }
  RowBuilder rows( problem );
  std::vector<int> u( static_cast<std::size_t>( k ), -1 );
  while ( true )
  {
    // the most significant nonzero position decides
    bool positive = true;
    for ( int t = 0; t < k; ++t )
    {
      int const j = msb == MsbPosition::Last ? k - 1 - t : t;
      if ( u[static_cast<std::size_t>( j )] != 0 )
      {
        positive = u[static_cast<std::size_t>( j )] > 0;
        break;
      }
    }
    std::uint64_t input = 0;
    for ( int j = 0; j < k; ++j )
    {
      if ( u[static_cast<std::size_t>( j )] > 0 )
        input |= std::uint64_t{ 1 } << j;
      else if ( u[static_cast<std::size_t>( j )] < 0 )
        input |= std::uint64_t{ 1 } << ( k + j );
    }
    rows.add( u, positive, input );
    std::size_t p = 0;
    while ( p < u.size() && ++u[p] == 2 )
      u[p++] = -1;
    if ( p == u.size() )
      break;
  }
  return problem;
}

RepresentationProblem g_linear_representation( int k, GVariant variant )
{
  auto const g = make_g( k, variant );
  RepresentationProblem problem;
  problem.basis = RepBasis::LinearU;
  problem.degree = 1;
  problem.num_inputs = static_cast<std::size_t>( k );
  for ( int j = 0; j < k; ++j )
  {
    problem.labels.push_back( j );
    problem.lp.add_var( "w" + std::to_string( j ) );
  }
  RowBuilder rows( problem );
  std::vector<int> u( static_cast<std::size_t>( k ) );
  for ( std::uint64_t x = 0; x < g.num_inputs(); ++x )
  {
    auto val = [&]( int pos ) { return ( x >> pos ) & 1u ? 1 : -1; };
    u[0] = val( 0 ) + val( k - 1 );
    for ( int j = 1; j < k; ++j )
      u[static_cast<std::size_t>( j )] = val( j - 1 ) - val( j );
    rows.add( u, g.bit( x ), x );
  }
  return problem;
}

std::vector<mpz_class> primitive_integer_vector( std::vector<Rational> const& x )
{
  mpz_class l = 1;
  for ( auto const& q : x )
    mpz_lcm( l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t() );
  std::vector<mpz_class> out;
  mpz_class g = 0;
  for ( auto const& q : x )
  {
    mpz_class v = q.get_num() * ( l / q.get_den() );
    mpz_gcd( g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t() );
    out.push_back( std::move( v ) );
  }
  if ( g > 1 )
    for ( auto& v : out )
      v /= g;
  return out;
}

IntPolynomial gate_polynomial( RepresentationProblem const& problem, std::vector<mpz_class> const& coeffs )
{
  if ( coeffs.size() != problem.monomials.size() )
    throw std::invalid_argument( "coefficient vector does not match the problem columns" );
  if ( problem.basis == RepBasis::LinearU )
    throw std::invalid_argument( "linear u-problems have no input-space polynomial" );
  IntPolynomial p = problem.basis == RepBasis::XY
                        ? IntPolynomial( Basis::XY, problem.num_inputs, problem.shape )
                        : IntPolynomial::uv( *problem.shape );
  for ( std::size_t c = 0; c < coeffs.size(); ++c )
    p.add( problem.monomials[c], coeffs[c] );
  return p;
}

SignDegreeResult sign_degree( BoolFun const& f, int dmax, std::optional<GroupShape> shape,
                              lp::SolveOptions const& options )
{
  SignDegreeResult out;
  for ( int d = 0; d <= dmax; ++d )
  {
    auto const problem = xy_representation( f, d, shape );
    DegreeAttempt attempt;
    attempt.degree = d;
    attempt.columns = problem.monomials.size();
    attempt.outcome = lp::solve( problem.lp, options );
    attempt.certificate_ok = static_cast<bool>( lp::check_outcome( problem.lp, attempt.outcome ) );
    bool const feasible = attempt.outcome.status == lp::LpStatus::Feasible;
    if ( feasible )
    {
      auto gate = gate_polynomial( problem, primitive_integer_vector( attempt.outcome.witness ) );
      out.gate_verified = check_sign_representation( gate, f ).pass;
      out.gate = std::move( gate );
      out.degree = d;
    }
    out.attempts.push_back( std::move( attempt ) );
    if ( feasible )
      break;
  }
  return out;
}

std::string_view to_string( WeightStatus s )
{
  switch ( s )
  {
  case WeightStatus::Solved:
    return "solved";
  case WeightStatus::Infeasible:
    return "infeasible";
  case WeightStatus::BudgetExhausted:
    return "budget_exhausted";
  }
  return "?";
}

namespace
{

mpz_class ceil_rational( Rational const& q )
{
  mpz_class z;
  mpz_cdiv_q( z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t() );
  return z;
}

bool verify_gate( RepresentationProblem const& problem, std::vector<mpz_class> const& coeffs, BoolFun const* f,
                  std::optional<IntPolynomial>& gate )
{
  std::vector<Rational> x( coeffs.begin(), coeffs.end() );
  if ( problem.basis != RepBasis::LinearU )
  {
    gate = gate_polynomial( problem, coeffs );
    if ( f )
      return check_sign_representation( *gate, *f ).pass;
  }
  return static_cast<bool>( lp::check_witness( problem.lp, x ) );
}

} // namespace

WeightResult min_weight( RepresentationProblem const& problem, WeightMode mode, BoolFun const* f,
                         WeightOptions const& options )
{
  WeightResult out;
  out.mode = mode;
  auto relaxation = problem.lp;
  relaxation.objective_kind = lp::ObjectiveKind::L1;
  relaxation.objective.clear();

  if ( mode == WeightMode::LP )
  {
    out.lp = lp::solve( relaxation, options.lp );
    out.pivots = out.lp.pivots;
  }
  else
  {
    lp::IlpOptions ilp_options;
    ilp_options.node_budget = options.node_budget;
    ilp_options.lp = options.lp;
    auto ilp = lp::ilp_min( relaxation, ilp_options );
    out.lp = std::move( ilp.root );
    out.nodes = ilp.nodes;
    out.pivots = ilp.pivots;
    if ( ilp.value )
    {
      std::vector<mpz_class> coeffs;
      for ( auto const& q : ilp.witness )
        coeffs.push_back( q.get_num() );
      out.gate_verified = verify_gate( problem, coeffs, f, out.gate );
    }
    if ( ilp.status == lp::IlpStatus::Optimal )
      out.exact = ilp.value->get_num();
    if ( ilp.status == lp::IlpStatus::BudgetExhausted )
      out.lower_bound = ceil_rational( ilp.lower_bound );
  }

  out.lp_certificate_ok = static_cast<bool>( lp::check_outcome( relaxation, out.lp ) );
  if ( out.lp.status == lp::LpStatus::Infeasible )
  {
    out.status = WeightStatus::Infeasible;
    return out;
  }
  out.lp_value = out.lp.value;
  out.lp_witness = out.lp.witness;
  if ( mode == WeightMode::LP )
  {
    out.status = WeightStatus::Solved;
    out.lower_bound = ceil_rational( out.lp_value );
    out.gate_verified = verify_gate( problem, primitive_integer_vector( out.lp_witness ), f, out.gate );
    return out;
  }
  if ( out.exact )
  {
    out.status = WeightStatus::Solved;
    out.lower_bound = *out.exact;
  }
  else
  {
    out.status = WeightStatus::BudgetExhausted;
    out.lower_bound = std::max( out.lower_bound, ceil_rational( out.lp_value ) );
    if ( !out.gate )
      out.gate_verified = verify_gate( problem, primitive_integer_vector( out.lp_witness ), f, out.gate );
  }
  return out;
}

WeightResult min_weight( BoolFun const& f, int degree, WeightMode mode, std::optional<GroupShape> shape,
                         WeightOptions const& options )
{
  return min_weight( xy_representation( f, degree, shape ), mode, &f, options );
}

InequalityVerdict certify_inequality( RepresentationProblem const& base, Inequality const& target,
                                      lp::SolveOptions const& options )
{
  InequalityVerdict out;
  out.target = target;
  auto problem = base.lp;
  problem.objective_kind = lp::ObjectiveKind::Feasibility;
  problem.objective.clear();
  Rational const bound = target.strict ? target.rhs : Rational( target.rhs - 1 );
  problem.add_constraint( target.lhs, lp::Relation::LessEq, bound );
  out.outcome = lp::solve( problem, options );
  if ( out.outcome.status == lp::LpStatus::Infeasible )
  {
    out.certified = true;
    out.certificate_ok = static_cast<bool>( lp::check_farkas( problem, out.outcome.farkas ) );
    out.problem = std::move( problem );
    return out;
  }
  out.problem = std::move( problem );

  auto violates = [&]( std::vector<mpz_class> const& w ) {
    std::vector<Rational> x( w.begin(), w.end() );
    if ( !lp::check_witness( base.lp, x ) )
      return false;
    Rational const lhs = lp::dot( target.lhs, x );
    return target.strict ? lhs <= target.rhs : lhs < target.rhs;
  };
  out.violating_gate = primitive_integer_vector( out.outcome.witness );
  if ( !violates( out.violating_gate ) )
  {
    // a non-homogeneous target can need the unreduced multiple
    mpz_class l = 1;
    for ( auto const& q : out.outcome.witness )
      mpz_lcm( l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t() );
    out.violating_gate.clear();
    for ( auto const& q : out.outcome.witness )
      out.violating_gate.push_back( q.get_num() * ( l / q.get_den() ) );
  }
  out.witness_ok = violates( out.violating_gate );
  return out;
}

} // namespace ptf

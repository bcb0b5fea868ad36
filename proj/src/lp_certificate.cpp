#include <ptf/exact_lp.hpp>

namespace ptf::lp
{

namespace
{

int sense( Relation rel )
{
  return rel == Relation::GreaterEq ? -1 : 1;
}

std::string describe( Rational const& q )
{
  return q.get_str();
}

// sum_c m_c * s_c * row_c and sum_c m_c * s_c * rhs_c
void combine( LpProblem const& problem, std::vector<Rational> const& m, std::vector<Rational>& coeffs, Rational& rhs )
{
  coeffs.assign( problem.num_vars(), 0 );
  rhs = 0;
  for ( std::size_t c = 0; c < problem.constraints.size(); ++c )
  {
    if ( sgn( m[c] ) == 0 )
      continue;
    auto const& con = problem.constraints[c];
    Rational const w = sense( con.rel ) > 0 ? m[c] : Rational( -m[c] );
    for ( auto const& [v, a] : con.row )
      coeffs[v] += w * a;
    rhs += w * con.rhs;
  }
}

CheckResult check_multiplier_signs( LpProblem const& problem, std::vector<Rational> const& m, char const* what )
{
  if ( m.size() != problem.constraints.size() )
    return CheckResult::fail( std::string( what ) + " has " + std::to_string( m.size() ) + " entries for " +
                              std::to_string( problem.constraints.size() ) + " constraints" );
  for ( std::size_t c = 0; c < m.size(); ++c )
    if ( problem.constraints[c].rel != Relation::Equal && sgn( m[c] ) < 0 )
      return CheckResult::fail( std::string( what ) + " multiplier " + std::to_string( c ) + " is negative" );
  return {};
}

} // namespace

Rational objective_value( LpProblem const& problem, std::vector<Rational> const& x )
{
  switch ( problem.objective_kind )
  {
  case ObjectiveKind::Feasibility:
    return 0;
  case ObjectiveKind::Linear:
    return dot( problem.objective, x );
  case ObjectiveKind::L1:
    break;
  }
  Rational s = 0;
  for ( auto const& v : x )
    s += abs( v );
  return s;
}

CheckResult check_witness( LpProblem const& problem, std::vector<Rational> const& x )
{
  if ( x.size() != problem.num_vars() )
    return CheckResult::fail( "witness has " + std::to_string( x.size() ) + " entries for " +
                              std::to_string( problem.num_vars() ) + " variables" );
  for ( std::size_t v = 0; v < x.size(); ++v )
    if ( problem.domains[v] == VarDomain::NonNegative && sgn( x[v] ) < 0 )
      return CheckResult::fail( "variable " + problem.names[v] + " = " + describe( x[v] ) + " is negative" );
  for ( std::size_t c = 0; c < problem.constraints.size(); ++c )
  {
    auto const& con = problem.constraints[c];
    Rational const lhs = dot( con.row, x );
    bool const ok = con.rel == Relation::LessEq      ? lhs <= con.rhs
                    : con.rel == Relation::GreaterEq ? lhs >= con.rhs
                                                     : lhs == con.rhs;
    if ( !ok )
      return CheckResult::fail( "constraint " + std::to_string( c ) + " violated: lhs " + describe( lhs ) + ", rhs " +
                                describe( con.rhs ) );
  }
  return {};
}

CheckResult check_farkas( LpProblem const& problem, std::vector<Rational> const& farkas )
{
  if ( auto r = check_multiplier_signs( problem, farkas, "farkas" ); !r )
    return r;
  std::vector<Rational> g;
  Rational t;
  combine( problem, farkas, g, t );
  for ( std::size_t v = 0; v < g.size(); ++v )
  {
    if ( problem.domains[v] == VarDomain::Free && sgn( g[v] ) != 0 )
      return CheckResult::fail( "combined coefficient of free variable " + problem.names[v] + " is " + describe( g[v] ) );
    if ( problem.domains[v] == VarDomain::NonNegative && sgn( g[v] ) < 0 )
      return CheckResult::fail( "combined coefficient of variable " + problem.names[v] + " is negative" );
  }
  if ( sgn( t ) >= 0 )
    return CheckResult::fail( "combined right-hand side " + describe( t ) + " is not negative" );
  return {};
}

CheckResult check_dual( LpProblem const& problem, std::vector<Rational> const& dual, Rational const& value )
{
  if ( problem.objective_kind == ObjectiveKind::Feasibility )
    return CheckResult::fail( "feasibility problems have no dual certificate" );
  if ( auto r = check_multiplier_signs( problem, dual, "dual" ); !r )
    return r;
  std::vector<Rational> h;
  Rational t;
  combine( problem, dual, h, t );
  std::vector<Rational> cost( problem.num_vars(), 0 );
  if ( problem.objective_kind == ObjectiveKind::Linear )
    for ( auto const& [v, a] : problem.objective )
      cost[v] += a;
  for ( std::size_t v = 0; v < h.size(); ++v )
  {
    bool ok;
    if ( problem.objective_kind == ObjectiveKind::L1 )
      ok = problem.domains[v] == VarDomain::Free ? abs( h[v] ) <= 1 : h[v] >= -1;
    else
    {
      Rational const slack = cost[v] + h[v];
      ok = problem.domains[v] == VarDomain::Free ? sgn( slack ) == 0 : sgn( slack ) >= 0;
    }
    if ( !ok )
      return CheckResult::fail( "dual constraint of variable " + problem.names[v] + " violated" );
  }
  if ( -t != value )
    return CheckResult::fail( "dual bound " + describe( Rational( -t ) ) + " differs from value " + describe( value ) );
  return {};
}

CheckResult check_ray( LpProblem const& problem, std::vector<Rational> const& ray )
{
  if ( problem.objective_kind != ObjectiveKind::Linear )
    return CheckResult::fail( "only linear objectives can be unbounded" );
  if ( ray.size() != problem.num_vars() )
    return CheckResult::fail( "ray has the wrong length" );
  for ( std::size_t v = 0; v < ray.size(); ++v )
    if ( problem.domains[v] == VarDomain::NonNegative && sgn( ray[v] ) < 0 )
      return CheckResult::fail( "ray leaves the domain of " + problem.names[v] );
  for ( std::size_t c = 0; c < problem.constraints.size(); ++c )
  {
    auto const& con = problem.constraints[c];
    Rational const dir = dot( con.row, ray ) * sense( con.rel );
    if ( con.rel == Relation::Equal ? sgn( dir ) != 0 : sgn( dir ) > 0 )
      return CheckResult::fail( "ray leaves constraint " + std::to_string( c ) );
  }
  if ( sgn( dot( problem.objective, ray ) ) >= 0 )
    return CheckResult::fail( "ray does not decrease the objective" );
  return {};
}

CheckResult check_outcome( LpProblem const& problem, LpOutcome const& outcome )
{
  switch ( outcome.status )
  {
  case LpStatus::Infeasible:
    return check_farkas( problem, outcome.farkas );
  case LpStatus::Feasible:
    return check_witness( problem, outcome.witness );
  case LpStatus::Unbounded:
    if ( auto r = check_witness( problem, outcome.witness ); !r )
      return r;
    return check_ray( problem, outcome.ray );
  case LpStatus::Optimal:
    break;
  }
  if ( auto r = check_witness( problem, outcome.witness ); !r )
    return r;
  if ( objective_value( problem, outcome.witness ) != outcome.value )
    return CheckResult::fail( "witness objective differs from the reported value" );
  return check_dual( problem, outcome.dual, outcome.value );
}

} // namespace ptf::lp

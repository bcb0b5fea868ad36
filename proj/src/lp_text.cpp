#include <ptf/exact_lp.hpp>

#include <map>
#include <sstream>

namespace ptf::lp
{

/*
  var <name> free|nonneg
  objective none | objective l1 | objective min <terms>
  row [lazy] <terms> <=|>=|= <rhs>

  Terms are written "<coeff> <name>" separated by spaces, for example
  "3/2 x0 -1 x1". Lines starting with '#' are comments.
*/

namespace
{

std::string write_terms( LpProblem const& problem, SparseRow const& row )
{
  std::string out;
  for ( auto const& [v, a] : row )
  {
    if ( !out.empty() )
      out += ' ';
    out += a.get_str() + " " + problem.names[v];
  }
  return out.empty() ? "0" : out;
}

Rational parse_rational( std::string const& token, std::size_t line )
{
  Rational q;
  if ( q.set_str( token, 10 ) != 0 )
    throw std::invalid_argument( "line " + std::to_string( line ) + ": bad rational '" + token + "'" );
  q.canonicalize();
  return q;
}

} // namespace

std::string to_text( LpProblem const& problem )
{
  std::ostringstream out;
  out << "# " << problem.num_vars() << " variables, " << problem.constraints.size() << " constraints\n";
  for ( std::size_t v = 0; v < problem.num_vars(); ++v )
    out << "var " << problem.names[v] << ( problem.domains[v] == VarDomain::Free ? " free" : " nonneg" ) << '\n';
  switch ( problem.objective_kind )
  {
  case ObjectiveKind::Feasibility:
    out << "objective none\n";
    break;
  case ObjectiveKind::L1:
    out << "objective l1\n";
    break;
  case ObjectiveKind::Linear:
    out << "objective min " << write_terms( problem, problem.objective ) << '\n';
    break;
  }
  for ( auto const& con : problem.constraints )
  {
    out << "row " << ( con.lazy ? "lazy " : "" ) << write_terms( problem, con.row ) << ' '
        << ( con.rel == Relation::LessEq ? "<=" : con.rel == Relation::GreaterEq ? ">=" : "=" ) << ' '
        << con.rhs.get_str() << '\n';
  }
  return out.str();
}

LpProblem parse_text( std::string_view text )
{
  LpProblem problem;
  std::map<std::string, std::size_t> index;
  std::istringstream in{ std::string( text ) };
  std::string line;
  std::size_t lineno = 0;

  auto parse_terms = [&]( std::vector<std::string> const& tokens, std::size_t begin, std::size_t end ) {
    SparseRow row;
    if ( end - begin == 1 && tokens[begin] == "0" )
      return row;
    if ( ( end - begin ) % 2 != 0 )
      throw std::invalid_argument( "line " + std::to_string( lineno ) + ": terms must be coefficient/name pairs" );
    for ( std::size_t t = begin; t < end; t += 2 )
    {
      auto it = index.find( tokens[t + 1] );
      if ( it == index.end() )
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": unknown variable '" + tokens[t + 1] + "'" );
      row.emplace_back( it->second, parse_rational( tokens[t], lineno ) );
    }
    return normalized( std::move( row ) );
  };

  while ( std::getline( in, line ) )
  {
    ++lineno;
    std::istringstream ls( line );
    std::vector<std::string> tokens;
    for ( std::string tok; ls >> tok; )
      tokens.push_back( tok );
    if ( tokens.empty() || tokens[0][0] == '#' )
      continue;
    if ( tokens[0] == "var" )
    {
      if ( tokens.size() != 3 || ( tokens[2] != "free" && tokens[2] != "nonneg" ) )
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": expected 'var <name> free|nonneg'" );
      if ( index.count( tokens[1] ) )
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": duplicate variable '" + tokens[1] + "'" );
      index[tokens[1]] = problem.add_var( tokens[1], tokens[2] == "free" ? VarDomain::Free : VarDomain::NonNegative );
    }
    else if ( tokens[0] == "objective" )
    {
      if ( tokens.size() == 2 && tokens[1] == "none" )
        problem.objective_kind = ObjectiveKind::Feasibility;
      else if ( tokens.size() == 2 && tokens[1] == "l1" )
        problem.objective_kind = ObjectiveKind::L1;
      else if ( tokens.size() >= 3 && tokens[1] == "min" )
        problem.minimize( parse_terms( tokens, 2, tokens.size() ) );
      else
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": bad objective" );
    }
    else if ( tokens[0] == "row" )
    {
      std::size_t begin = 1;
      bool lazy = false;
      if ( tokens.size() > 1 && tokens[1] == "lazy" )
      {
        lazy = true;
        begin = 2;
      }
      if ( tokens.size() < begin + 3 )
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": incomplete row" );
      auto const& op = tokens[tokens.size() - 2];
      Relation rel;
      if ( op == "<=" )
        rel = Relation::LessEq;
      else if ( op == ">=" )
        rel = Relation::GreaterEq;
      else if ( op == "=" )
        rel = Relation::Equal;
      else
        throw std::invalid_argument( "line " + std::to_string( lineno ) + ": unknown relation '" + op + "'" );
      problem.add_constraint( parse_terms( tokens, begin, tokens.size() - 2 ), rel,
                              parse_rational( tokens.back(), lineno ), lazy );
    }
    else
      throw std::invalid_argument( "line " + std::to_string( lineno ) + ": unknown directive '" + tokens[0] + "'" );
  }
  return problem;
}

} // namespace ptf::lp

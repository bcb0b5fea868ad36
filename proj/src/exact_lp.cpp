#include <ptf/exact_lp.hpp>

#include <algorithm>
#include <limits>
#include <memory>

namespace ptf::lp
{

std::size_t LpProblem::add_var( std::string name, VarDomain domain )
{
  names.push_back( std::move( name ) );
  domains.push_back( domain );
  return names.size() - 1;
}

std::size_t LpProblem::add_constraint( SparseRow row, Relation rel, Rational rhs, bool lazy )
{
  constraints.push_back( { normalized( std::move( row ) ), rel, std::move( rhs ), lazy } );
  return constraints.size() - 1;
}

void LpProblem::minimize( SparseRow objective_row )
{
  objective_kind = ObjectiveKind::Linear;
  objective = normalized( std::move( objective_row ) );
}

void LpProblem::validate() const
{
  if ( domains.size() != names.size() )
    throw dimension_error( "domain table has " + std::to_string( domains.size() ) + " entries for " +
                           std::to_string( names.size() ) + " variables" );
  auto check_row = [&]( SparseRow const& row, std::string const& what ) {
    for ( auto const& [v, a] : row )
      if ( v >= names.size() )
        throw dimension_error( what + " references variable " + std::to_string( v ) + " of " +
                               std::to_string( names.size() ) );
  };
  if ( objective_kind == ObjectiveKind::Linear )
    check_row( objective, "objective" );
  for ( std::size_t i = 0; i < constraints.size(); ++i )
    check_row( constraints[i].row, "constraint " + std::to_string( i ) );
}

SparseRow normalized( SparseRow row )
{
  std::stable_sort( row.begin(), row.end(), []( auto const& a, auto const& b ) { return a.first < b.first; } );
  SparseRow out;
  for ( auto& [v, a] : row )
  {
    if ( !out.empty() && out.back().first == v )
      out.back().second += a;
    else
      out.emplace_back( v, std::move( a ) );
  }
  std::erase_if( out, []( auto const& e ) { return sgn( e.second ) == 0; } );
  return out;
}

Rational dot( SparseRow const& row, std::vector<Rational> const& x )
{
  Rational s = 0;
  for ( auto const& [v, a] : row )
    if ( sgn( x[v] ) != 0 )
      s += a * x[v];
  return s;
}

std::string_view to_string( LpStatus status )
{
  switch ( status )
  {
  case LpStatus::Optimal:
    return "optimal";
  case LpStatus::Feasible:
    return "feasible";
  case LpStatus::Infeasible:
    return "infeasible";
  case LpStatus::Unbounded:
    return "unbounded";
  }
  return "?";
}

std::string_view to_string( IlpStatus status )
{
  switch ( status )
  {
  case IlpStatus::Optimal:
    return "optimal";
  case IlpStatus::Infeasible:
    return "infeasible";
  case IlpStatus::BudgetExhausted:
    return "budget_exhausted";
  }
  return "?";
}

namespace
{

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

int normal_sign( Relation rel )
{
  return rel == Relation::GreaterEq ? -1 : 1;
}

/*
  Dense tableau over columns [structural | slack]. Every internal row is
  a <= row with its own slack, so the slack columns hold B^-1 and the
  certificates can be read off directly. Free variables are split into a
  positive and a negative column.
*/
class Engine
{
public:
  enum class Status
  {
    Optimal,
    Infeasible,
    Unbounded
  };

  Engine( LpProblem const& problem, ObjectiveKind kind, SolveOptions const& options )
      : problem_( &problem ), kind_( kind ), options_( options )
  {
    auto const nv = problem.num_vars();
    pos_col_.resize( nv );
    neg_col_.assign( nv, none );
    for ( std::size_t v = 0; v < nv; ++v )
    {
      pos_col_[v] = nstruct_++;
      if ( problem.domains[v] == VarDomain::Free )
        neg_col_[v] = nstruct_++;
    }
    cost_.assign( nstruct_, 0 );
    // Feasibility problems are steered by the L1 objective; only the witness is reported.
    for ( std::size_t v = 0; v < nv; ++v )
    {
      if ( kind_ == ObjectiveKind::L1 || kind_ == ObjectiveKind::Feasibility )
      {
        cost_[pos_col_[v]] = 1;
        if ( neg_col_[v] != none )
          cost_[neg_col_[v]] = 1;
      }
    }
    if ( kind_ == ObjectiveKind::Linear )
      for ( auto const& [v, a] : problem.objective )
      {
        cost_[pos_col_[v]] += a;
        if ( neg_col_[v] != none )
          cost_[neg_col_[v]] -= a;
      }
    ncols_ = nstruct_;
    reduced_ = cost_;
    d0_ = 0;
    active_.assign( problem.constraints.size(), false );

    std::vector<PendingRow> initial;
    for ( std::size_t c = 0; c < problem.constraints.size(); ++c )
      if ( !problem.constraints[c].lazy )
        queue_constraint( c, initial );
    add_rows( initial );
  }

  Status run( std::size_t& rounds )
  {
    while ( true )
    {
      auto const status = optimize();
      ++rounds;
      if ( status == Status::Infeasible )
        return status;
      std::vector<PendingRow> cuts;
      if ( status == Status::Unbounded )
        separate_ray( cuts );
      if ( cuts.empty() )
        separate_point( cuts );
      if ( cuts.empty() )
        return status;
      add_rows( cuts );
    }
  }

  void add_extra( SparseRow const& row, Relation rel, Rational const& rhs )
  {
    std::vector<PendingRow> rows;
    if ( rel != Relation::GreaterEq )
      rows.push_back( { &row, 1, rhs, none } );
    if ( rel != Relation::LessEq )
      rows.push_back( { &row, -1, rhs, none } );
    add_rows( rows );
  }

  std::vector<Rational> witness() const
  {
    std::vector<Rational> z( ncols_, 0 );
    for ( std::size_t i = 0; i < rows_.size(); ++i )
      z[basis_[i]] = rhs_[i];
    return to_user( z );
  }

  Rational value() const { return -d0_; }
  std::size_t pivots() const { return pivots_; }
  std::size_t active_rows() const { return static_cast<std::size_t>( std::count( active_.begin(), active_.end(), true ) ); }

  std::vector<Rational> farkas() const
  {
    auto const& row = rows_[infeasible_row_];
    std::vector<Rational> lambda( problem_->constraints.size(), 0 );
    for ( std::size_t q = 0; q < records_.size(); ++q )
    {
      auto const& rec = records_[q];
      auto const& mu = row[nstruct_ + q];
      if ( rec.constraint == none || sgn( mu ) == 0 )
        continue;
      if ( rec.sign * normal_sign( problem_->constraints[rec.constraint].rel ) > 0 )
        lambda[rec.constraint] += mu;
      else
        lambda[rec.constraint] -= mu;
    }
    Rational const scale = Rational( -1 ) / rhs_[infeasible_row_];
    for ( auto& l : lambda )
      l *= scale;
    return lambda;
  }

  std::vector<Rational> dual() const
  {
    std::vector<Rational> y( problem_->constraints.size(), 0 );
    for ( std::size_t q = 0; q < records_.size(); ++q )
    {
      auto const& rec = records_[q];
      auto const& r = reduced_[nstruct_ + q];
      if ( rec.constraint == none || sgn( r ) == 0 )
        continue;
      if ( rec.sign * normal_sign( problem_->constraints[rec.constraint].rel ) > 0 )
        y[rec.constraint] += r;
      else
        y[rec.constraint] -= r;
    }
    return y;
  }

  std::vector<Rational> ray() const
  {
    std::vector<Rational> z( ncols_, 0 );
    z[ray_col_] = 1;
    for ( std::size_t i = 0; i < rows_.size(); ++i )
      z[basis_[i]] = -rows_[i][ray_col_];
    return to_user( z );
  }

private:
  struct RowRecord
  {
    std::size_t constraint; ///< none for branching rows
    int sign;               ///< internal row is sign*row <= sign*rhs
  };

  struct PendingRow
  {
    SparseRow const* row;
    int sign;
    Rational rhs;
    std::size_t constraint;
  };

  void queue_constraint( std::size_t c, std::vector<PendingRow>& out )
  {
    auto const& con = problem_->constraints[c];
    active_[c] = true;
    if ( con.rel != Relation::GreaterEq )
      out.push_back( { &con.row, 1, con.rhs, c } );
    if ( con.rel != Relation::LessEq )
      out.push_back( { &con.row, -1, con.rhs, c } );
  }

  std::vector<Rational> to_user( std::vector<Rational> const& z ) const
  {
    std::vector<Rational> x( problem_->num_vars() );
    for ( std::size_t v = 0; v < x.size(); ++v )
    {
      x[v] = z[pos_col_[v]];
      if ( neg_col_[v] != none )
        x[v] -= z[neg_col_[v]];
    }
    return x;
  }

  void add_rows( std::vector<PendingRow> const& pending )
  {
    if ( pending.empty() )
      return;
    std::size_t const old_cols = ncols_;
    ncols_ += pending.size();
    for ( auto& row : rows_ )
      row.resize( ncols_ );
    reduced_.resize( ncols_ );
    for ( std::size_t p = 0; p < pending.size(); ++p )
    {
      auto const& pr = pending[p];
      std::vector<Rational> row( ncols_ );
      for ( auto const& [v, a] : *pr.row )
      {
        if ( pr.sign > 0 )
          row[pos_col_[v]] += a;
        else
          row[pos_col_[v]] -= a;
        if ( neg_col_[v] != none )
          row[neg_col_[v]] = -row[pos_col_[v]];
      }
      row[old_cols + p] = 1;
      Rational rhs = pr.sign > 0 ? pr.rhs : Rational( -pr.rhs );
      for ( std::size_t i = 0; i < rows_.size(); ++i )
      {
        auto const bc = basis_[i];
        if ( sgn( row[bc] ) == 0 )
          continue;
        f_ = row[bc];
        auto const& src = rows_[i];
        for ( std::size_t j = 0; j < ncols_; ++j )
          if ( sgn( src[j] ) != 0 )
          {
            mpq_mul( tmp_.get_mpq_t(), f_.get_mpq_t(), src[j].get_mpq_t() );
            mpq_sub( row[j].get_mpq_t(), row[j].get_mpq_t(), tmp_.get_mpq_t() );
          }
        mpq_mul( tmp_.get_mpq_t(), f_.get_mpq_t(), rhs_[i].get_mpq_t() );
        rhs -= tmp_;
      }
      rows_.push_back( std::move( row ) );
      rhs_.push_back( std::move( rhs ) );
      basis_.push_back( old_cols + p );
      records_.push_back( { pr.constraint, pr.sign } );
    }
  }

  void pivot( std::size_t r, std::size_t c )
  {
    if ( ++pivots_ > options_.max_pivots )
      throw resource_error( "pivot limit of " + std::to_string( options_.max_pivots ) + " exceeded" );
    auto& pr = rows_[r];
    inv_ = pr[c];
    mpq_inv( inv_.get_mpq_t(), inv_.get_mpq_t() );
    nz_.clear();
    for ( std::size_t j = 0; j < ncols_; ++j )
      if ( sgn( pr[j] ) != 0 )
      {
        if ( j != c )
          pr[j] *= inv_;
        nz_.push_back( j );
      }
    pr[c] = 1;
    rhs_[r] *= inv_;

    auto eliminate = [&]( std::vector<Rational>& row, Rational& value ) {
      if ( sgn( row[c] ) == 0 )
        return;
      f_ = row[c];
      for ( auto j : nz_ )
      {
        mpq_mul( tmp_.get_mpq_t(), f_.get_mpq_t(), pr[j].get_mpq_t() );
        mpq_sub( row[j].get_mpq_t(), row[j].get_mpq_t(), tmp_.get_mpq_t() );
      }
      mpq_mul( tmp_.get_mpq_t(), f_.get_mpq_t(), rhs_[r].get_mpq_t() );
      value -= tmp_;
    };
    for ( std::size_t i = 0; i < rows_.size(); ++i )
      if ( i != r )
        eliminate( rows_[i], rhs_[i] );
    eliminate( reduced_, d0_ );
    basis_[r] = c;
  }

  bool dual_feasible() const
  {
    return std::all_of( reduced_.begin(), reduced_.end(), []( Rational const& d ) { return sgn( d ) >= 0; } );
  }

  bool primal_feasible() const
  {
    return std::all_of( rhs_.begin(), rhs_.end(), []( Rational const& b ) { return sgn( b ) >= 0; } );
  }

  bool use_bland() const
  {
    return options_.rule == PivotRule::Bland || degenerate_streak_ >= 50;
  }

  // Dual simplex from a dual feasible basis. False when a row proves infeasibility.
  bool dual_simplex()
  {
    while ( true )
    {
      std::size_t r = none;
      for ( std::size_t i = 0; i < rows_.size(); ++i )
      {
        if ( sgn( rhs_[i] ) >= 0 )
          continue;
        if ( r == none )
          r = i;
        else if ( use_bland() ? basis_[i] < basis_[r] : rhs_[i] < rhs_[r] )
          r = i;
      }
      if ( r == none )
        return true;
      auto const& row = rows_[r];
      std::size_t enter = none;
      for ( std::size_t j = 0; j < ncols_; ++j )
      {
        if ( sgn( row[j] ) >= 0 )
          continue;
        if ( enter == none )
        {
          enter = j;
          continue;
        }
        // reduced[j] / -row[j] < reduced[enter] / -row[enter]
        mpq_mul( tmp_.get_mpq_t(), reduced_[j].get_mpq_t(), row[enter].get_mpq_t() );
        mpq_mul( f_.get_mpq_t(), reduced_[enter].get_mpq_t(), row[j].get_mpq_t() );
        if ( tmp_ > f_ )
          enter = j;
      }
      if ( enter == none )
      {
        infeasible_row_ = r;
        return false;
      }
      degenerate_streak_ = sgn( reduced_[enter] ) == 0 ? degenerate_streak_ + 1 : 0;
      pivot( r, enter );
    }
  }

  // Primal simplex from a primal feasible basis. False when unbounded.
  bool primal_simplex()
  {
    while ( true )
    {
      std::size_t enter = none;
      for ( std::size_t j = 0; j < ncols_; ++j )
      {
        if ( sgn( reduced_[j] ) >= 0 )
          continue;
        if ( enter == none )
        {
          enter = j;
          if ( use_bland() )
            break;
        }
        else if ( reduced_[j] < reduced_[enter] )
          enter = j;
      }
      if ( enter == none )
        return true;
      std::size_t leave = none;
      for ( std::size_t i = 0; i < rows_.size(); ++i )
      {
        auto const& a = rows_[i][enter];
        if ( sgn( a ) <= 0 )
          continue;
        if ( leave == none )
        {
          leave = i;
          continue;
        }
        // rhs[i] / a vs rhs[leave] / a_leave
        mpq_mul( tmp_.get_mpq_t(), rhs_[i].get_mpq_t(), rows_[leave][enter].get_mpq_t() );
        mpq_mul( f_.get_mpq_t(), rhs_[leave].get_mpq_t(), a.get_mpq_t() );
        if ( tmp_ < f_ || ( tmp_ == f_ && basis_[i] < basis_[leave] ) )
          leave = i;
      }
      if ( leave == none )
      {
        ray_col_ = enter;
        return false;
      }
      degenerate_streak_ = sgn( rhs_[leave] ) == 0 ? degenerate_streak_ + 1 : 0;
      pivot( leave, enter );
    }
  }

  void load_objective()
  {
    reduced_.assign( ncols_, 0 );
    for ( std::size_t j = 0; j < nstruct_; ++j )
      reduced_[j] = cost_[j];
    d0_ = 0;
    for ( std::size_t i = 0; i < rows_.size(); ++i )
    {
      auto const bc = basis_[i];
      if ( bc >= nstruct_ || sgn( cost_[bc] ) == 0 )
        continue;
      auto const& cb = cost_[bc];
      for ( std::size_t j = 0; j < ncols_; ++j )
        if ( sgn( rows_[i][j] ) != 0 )
          reduced_[j] -= cb * rows_[i][j];
      d0_ -= cb * rhs_[i];
    }
  }

  Status optimize()
  {
    while ( true )
    {
      if ( dual_feasible() )
        return dual_simplex() ? Status::Optimal : Status::Infeasible;
      if ( primal_feasible() )
        return primal_simplex() ? Status::Optimal : Status::Unbounded;
      reduced_.assign( ncols_, 0 );
      d0_ = 0;
      if ( !dual_simplex() )
        return Status::Infeasible;
      load_objective();
    }
  }

  template<class Measure>
  void pick_cuts( Measure measure, std::vector<PendingRow>& cuts )
  {
    std::vector<std::pair<Rational, std::size_t>> violated;
    auto const& cons = problem_->constraints;
    for ( std::size_t c = 0; c < cons.size(); ++c )
    {
      if ( active_[c] )
        continue;
      Rational v = measure( cons[c] );
      if ( sgn( v ) > 0 )
        violated.emplace_back( std::move( v ), c );
    }
    std::stable_sort( violated.begin(), violated.end(),
                      []( auto const& a, auto const& b ) { return a.first > b.first; } );
    if ( violated.size() > options_.lazy_batch )
      violated.resize( std::max<std::size_t>( 1, options_.lazy_batch ) );
    std::sort( violated.begin(), violated.end(), []( auto const& a, auto const& b ) { return a.second < b.second; } );
    for ( auto const& [v, c] : violated )
      queue_constraint( c, cuts );
  }

  void separate_point( std::vector<PendingRow>& cuts )
  {
    auto const x = witness();
    pick_cuts(
        [&]( Constraint const& con ) {
          Rational const lhs = dot( con.row, x );
          switch ( con.rel )
          {
          case Relation::LessEq:
            return Rational( lhs - con.rhs );
          case Relation::GreaterEq:
            return Rational( con.rhs - lhs );
          case Relation::Equal:
            break;
          }
          return Rational( abs( lhs - con.rhs ) );
        },
        cuts );
  }

  void separate_ray( std::vector<PendingRow>& cuts )
  {
    auto const r = ray();
    pick_cuts(
        [&]( Constraint const& con ) {
          Rational const dir = dot( con.row, r );
          if ( con.rel == Relation::Equal )
            return Rational( abs( dir ) );
          return con.rel == Relation::LessEq ? dir : Rational( -dir );
        },
        cuts );
  }

  LpProblem const* problem_;
  ObjectiveKind kind_;
  SolveOptions options_;

  std::vector<std::size_t> pos_col_, neg_col_;
  std::size_t nstruct_ = 0;
  std::size_t ncols_ = 0;
  std::vector<Rational> cost_;

  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<RowRecord> records_;
  std::vector<Rational> reduced_;
  Rational d0_;
  std::vector<bool> active_;

  std::size_t pivots_ = 0;
  std::size_t degenerate_streak_ = 0;
  std::size_t infeasible_row_ = none;
  std::size_t ray_col_ = none;

  std::vector<std::size_t> nz_;
  Rational inv_, f_, tmp_;
};

LpOutcome make_outcome( Engine const& e, Engine::Status status, ObjectiveKind kind, std::size_t rounds )
{
  LpOutcome out;
  out.pivots = e.pivots();
  out.rounds = rounds;
  out.active_rows = e.active_rows();
  switch ( status )
  {
  case Engine::Status::Infeasible:
    out.status = LpStatus::Infeasible;
    out.farkas = e.farkas();
    break;
  case Engine::Status::Unbounded:
    out.status = LpStatus::Unbounded;
    out.witness = e.witness();
    out.ray = e.ray();
    break;
  case Engine::Status::Optimal:
    out.witness = e.witness();
    if ( kind == ObjectiveKind::Feasibility )
      out.status = LpStatus::Feasible;
    else
    {
      out.status = LpStatus::Optimal;
      out.value = e.value();
      out.dual = e.dual();
    }
    break;
  }
  return out;
}

Rational floor_of( Rational const& q )
{
  mpz_class z;
  mpz_fdiv_q( z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t() );
  return Rational( z );
}

Rational ceil_of( Rational const& q )
{
  mpz_class z;
  mpz_cdiv_q( z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t() );
  return Rational( z );
}

class BranchAndBound
{
public:
  BranchAndBound( LpProblem const& problem, IlpOptions const& options ) : problem_( problem ), options_( options )
  {
    integral_objective_ = problem.objective_kind == ObjectiveKind::L1 ||
                          std::all_of( problem.objective.begin(), problem.objective.end(),
                                       []( auto const& e ) { return e.second.get_den() == 1; } );
  }

  IlpOutcome run()
  {
    IlpOutcome out;
    root_ = std::make_unique<Engine>( problem_, problem_.objective_kind, options_.lp );
    std::size_t rounds = 0;
    ++nodes_;
    auto const status = root_->run( rounds );
    pivots_ += root_->pivots();
    out.root = make_outcome( *root_, status, problem_.objective_kind, rounds );
    if ( status == Engine::Status::Unbounded )
      throw resource_error( "integer minimization over an unbounded relaxation" );
    if ( status == Engine::Status::Optimal )
    {
      out.relaxation = root_->value();
      branch( std::make_unique<Engine>( *root_ ), bound_of( root_->value() ) );
    }

    out.nodes = nodes_;
    out.pivots = pivots_;
    if ( best_ )
    {
      out.value = best_;
      out.witness = best_witness_;
    }
    if ( !exhausted_ )
    {
      out.status = best_ ? IlpStatus::Optimal : IlpStatus::Infeasible;
      if ( best_ )
        out.lower_bound = *best_;
    }
    else
    {
      out.status = IlpStatus::BudgetExhausted;
      out.lower_bound = best_ ? std::min( *best_, open_bound_ ) : open_bound_;
    }
    return out;
  }

private:
  struct Bound
  {
    std::size_t var;
    bool upper; ///< x_var <= value when set, else x_var >= value
    Rational value;
  };

  Rational bound_of( Rational const& v ) const { return integral_objective_ ? ceil_of( v ) : v; }

  bool prune( Rational const& bound ) const { return best_ && bound >= *best_; }

  bool budget_left( Rational const& bound )
  {
    if ( nodes_ < options_.node_budget )
      return true;
    open_bound_ = exhausted_ ? std::min( open_bound_, bound ) : bound;
    exhausted_ = true;
    return false;
  }

  static void apply( Engine& e, Bound const& b )
  {
    e.add_extra( { { b.var, Rational( 1 ) } }, b.upper ? Relation::LessEq : Relation::GreaterEq, b.value );
  }

  // Solves a child engine that already carries its bounds and recurses.
  void solve_child( std::unique_ptr<Engine> e )
  {
    ++nodes_;
    std::size_t const before = e->pivots();
    std::size_t rounds = 0;
    auto const status = e->run( rounds );
    pivots_ += e->pivots() - before;
    if ( status != Engine::Status::Optimal )
      return;
    auto const value = e->value();
    branch( std::move( e ), bound_of( value ) );
  }

  // `e` is solved to optimality. The first child dives in place; the
  // second one is rebuilt from the root snapshot and the bound path.
  void branch( std::unique_ptr<Engine> e, Rational const& bound )
  {
    if ( prune( bound ) )
      return;
    auto const x = e->witness();
    std::size_t var = none;
    Rational best_dist = 0;
    Rational const half( 1, 2 );
    for ( std::size_t v = 0; v < x.size(); ++v )
    {
      if ( x[v].get_den() == 1 )
        continue;
      Rational const frac = x[v] - floor_of( x[v] );
      Rational const dist = frac < half ? frac : Rational( 1 - frac );
      if ( var == none || dist > best_dist )
      {
        var = v;
        best_dist = dist;
      }
    }
    if ( var == none )
    {
      best_ = e->value();
      best_witness_ = x;
      return;
    }
    Rational const lo = floor_of( x[var] );
    bool const down_first = x[var] - lo <= half;
    Bound const down{ var, true, lo };
    Bound const up{ var, false, Rational( lo + 1 ) };
    Bound const& first = down_first ? down : up;
    Bound const& second = down_first ? up : down;

    if ( budget_left( bound ) )
    {
      apply( *e, first );
      path_.push_back( first );
      solve_child( std::move( e ) );
      path_.pop_back();
    }
    e.reset();

    if ( prune( bound ) || !budget_left( bound ) )
      return;
    auto sibling = std::make_unique<Engine>( *root_ );
    path_.push_back( second );
    for ( auto const& b : path_ )
      apply( *sibling, b );
    solve_child( std::move( sibling ) );
    path_.pop_back();
  }

  LpProblem const& problem_;
  IlpOptions options_;
  bool integral_objective_ = true;
  std::unique_ptr<Engine> root_;
  std::vector<Bound> path_;
  std::optional<Rational> best_;
  std::vector<Rational> best_witness_;
  std::size_t nodes_ = 0;
  std::size_t pivots_ = 0;
  bool exhausted_ = false;
  Rational open_bound_;
};

} // namespace

LpOutcome solve( LpProblem const& problem, SolveOptions const& options )
{
  problem.validate();
  Engine engine( problem, problem.objective_kind, options );
  std::size_t rounds = 0;
  auto const status = engine.run( rounds );
  return make_outcome( engine, status, problem.objective_kind, rounds );
}

LpOutcome min_l1( LpProblem problem, SolveOptions const& options )
{
  problem.objective_kind = ObjectiveKind::L1;
  problem.objective.clear();
  return solve( problem, options );
}

IlpOutcome ilp_min( LpProblem const& problem, IlpOptions const& options )
{
  problem.validate();
  if ( problem.objective_kind == ObjectiveKind::Feasibility )
    throw std::invalid_argument( "ilp_min needs a Linear or L1 objective" );
  return BranchAndBound( problem, options ).run();
}

} // namespace ptf::lp

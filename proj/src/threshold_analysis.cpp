#include <ptf/threshold_analysis.hpp>

#include <json.hpp>

#include <algorithm>

namespace ptf
{

std::string_view to_string( CoefficientLemma lemma )
{
  switch ( lemma )
  {
  case CoefficientLemma::GtExp:
    return "gt_exp";
  case CoefficientLemma::GtStep:
    return "gt_step";
  case CoefficientLemma::Gt0Exp:
    return "gt0_exp";
  case CoefficientLemma::Gt0Step:
    return "gt0_step";
  case CoefficientLemma::G1Pos:
    return "g1_pos";
  case CoefficientLemma::G1Mono:
    return "g1_mono";
  case CoefficientLemma::G0All:
    return "g0_all";
  }
  return "?";
}

std::vector<CoefficientLemma> all_lemmas()
{
  return { CoefficientLemma::GtExp,  CoefficientLemma::GtStep, CoefficientLemma::Gt0Exp, CoefficientLemma::Gt0Step,
           CoefficientLemma::G1Pos,  CoefficientLemma::G1Mono, CoefficientLemma::G0All };
}

CoefficientLemma parse_lemma( std::string_view name )
{
  for ( auto l : all_lemmas() )
    if ( to_string( l ) == name )
      return l;
  throw std::invalid_argument( "unknown lemma '" + std::string( name ) +
                               "' (expected gt_exp, gt_step, gt0_exp, gt0_step, g1_pos, g1_mono or g0_all)" );
}

namespace
{

bool is_gt_lemma( CoefficientLemma l )
{
  return l == CoefficientLemma::GtExp || l == CoefficientLemma::GtStep || l == CoefficientLemma::Gt0Exp ||
         l == CoefficientLemma::Gt0Step;
}

std::string w( int j )
{
  return "w" + std::to_string( j );
}

} // namespace

RepresentationProblem lemma_base( CoefficientLemma lemma, int k )
{
  switch ( lemma )
  {
  case CoefficientLemma::GtExp:
  case CoefficientLemma::GtStep:
    return gt_linear_representation( k, MsbPosition::Last );
  case CoefficientLemma::Gt0Exp:
  case CoefficientLemma::Gt0Step:
    return gt_linear_representation( k, MsbPosition::First );
  case CoefficientLemma::G1Pos:
  case CoefficientLemma::G1Mono:
    return g_linear_representation( k, GVariant::G1 );
  case CoefficientLemma::G0All:
    return g_linear_representation( k, GVariant::G0 );
  }
  throw std::invalid_argument( "unknown lemma" );
}

std::vector<Inequality> lemma_targets( CoefficientLemma lemma, int k )
{
  int const min_k = is_gt_lemma( lemma ) ? 1 : 2;
  if ( k < min_k )
    throw invalid_shape( std::string( to_string( lemma ) ) + " needs k >= " + std::to_string( min_k ) );
  // column of w_j
  auto col = [&]( int j ) -> std::size_t { return static_cast<std::size_t>( is_gt_lemma( lemma ) ? j - 1 : j ); };
  auto term = [&]( int j, long long c ) { return std::pair<std::size_t, Rational>( col( j ), Rational( static_cast<long>( c ) ) ); };
  auto pow2 = []( int e ) -> mpz_class { return mpz_class( 1 ) << static_cast<mp_bitcnt_t>( e ); };

  std::vector<Inequality> out;
  auto ge = [&]( lp::SparseRow lhs, bool strict, std::string text ) {
    out.push_back( { lp::normalized( std::move( lhs ) ), 0, strict, std::move( text ) } );
  };
  switch ( lemma )
  {
  case CoefficientLemma::GtExp:
    for ( int j = 2; j <= k; ++j )
      ge( { term( j, 1 ), { col( 1 ), Rational( -pow2( j - 2 ) ) } }, false,
          w( j ) + " >= " + pow2( j - 2 ).get_str() + "*" + w( 1 ) );
    ge( { term( 1, 1 ) }, true, w( 1 ) + " > 0" );
    break;
  case CoefficientLemma::GtStep:
    for ( int j = 2; j <= k; ++j )
      ge( { term( j, 1 ), term( j - 1, -1 ) }, false, w( j ) + " >= " + w( j - 1 ) );
    break;
  case CoefficientLemma::Gt0Exp:
    for ( int j = 2; j <= k; ++j )
      ge( { term( k - j + 1, 1 ), { col( k ), Rational( -pow2( j - 2 ) ) } }, false,
          w( k - j + 1 ) + " >= " + pow2( j - 2 ).get_str() + "*" + w( k ) );
    ge( { term( k, 1 ) }, true, w( k ) + " > 0" );
    break;
  case CoefficientLemma::Gt0Step:
    for ( int j = 2; j <= k; ++j )
      ge( { term( j - 1, 1 ), term( j, -1 ) }, false, w( j - 1 ) + " >= " + w( j ) );
    break;
  case CoefficientLemma::G1Pos:
    for ( int j = 0; j < k; ++j )
      ge( { term( j, 1 ) }, true, w( j ) + " > 0" );
    break;
  case CoefficientLemma::G1Mono:
    for ( int j = 2; j < k; ++j )
      ge( { term( j, 1 ), term( j - 1, -1 ) }, true, w( j ) + " > " + w( j - 1 ) );
    break;
  case CoefficientLemma::G0All:
    ge( { term( 0, -1 ) }, true, w( 0 ) + " < 0" );
    for ( int j = 1; j < k; ++j )
      ge( { term( j, 1 ) }, true, w( j ) + " > 0" );
    for ( int j = 2; j < k; ++j )
      ge( { term( j - 1, 1 ), term( j, -1 ) }, true, w( j - 1 ) + " > " + w( j ) );
    break;
  }
  return out;
}

bool LemmaReport::certified() const
{
  return std::all_of( items.begin(), items.end(),
                      []( InequalityVerdict const& v ) { return v.certified && v.certificate_ok; } );
}

LemmaReport certify_coefficient_lemma( CoefficientLemma lemma, int k, lp::SolveOptions const& options )
{
  LemmaReport report;
  report.lemma = lemma;
  report.k = k;
  auto const targets = lemma_targets( lemma, k );
  auto const base = lemma_base( lemma, k );
  for ( auto const& t : targets )
    report.items.push_back( certify_inequality( base, t, options ) );
  return report;
}

TheoremBound theorem_bound( GroupShape const& shape )
{
  shape.validate();
  TheoremBound out;
  out.asserted = shape.meets_theorem_hypotheses();
  auto const d = static_cast<long long>( shape.depth() );
  long long product = 1;
  std::string factors;
  for ( std::size_t i = 0; i + 1 < shape.depth(); ++i )
  {
    long long const k = shape.variant == Variant::Weak ? shape.ks[i] : shape.ks[i] - 1;
    product *= k;
    factors += "*" + std::to_string( k );
  }
  long long const kd = shape.ks.back();
  if ( shape.variant == Variant::Weak )
  {
    out.exponent = ( kd - 2 ) * product - d;
    out.formula = "2^((" + std::to_string( kd ) + "-2)" + factors + "-" + std::to_string( d ) + ")";
  }
  else
  {
    auto const n = shape.num_vars();
    long long log_n = 0;
    while ( ( std::size_t{ 1 } << log_n ) < n )
      ++log_n;
    out.exponent = ( kd - 2 ) * product - d * log_n;
    out.formula = "2^((" + std::to_string( kd ) + "-2)" + factors + "-" + std::to_string( d ) + "*ceil(log2 " +
                  std::to_string( n ) + "))";
  }
  out.value = out.exponent >= 0 ? mpz_class( 1 ) << static_cast<mp_bitcnt_t>( out.exponent ) : mpz_class( 1 );
  return out;
}

mpz_class basis_change_factor( GroupShape const& shape )
{
  auto const d = static_cast<unsigned long>( shape.depth() );
  if ( shape.variant == Variant::Weak )
    return mpz_class( 1 ) << d;
  mpz_class f;
  mpz_ui_pow_ui( f.get_mpz_t(), shape.num_vars(), d );
  return f;
}

std::string_view to_string( Verdict v )
{
  switch ( v )
  {
  case Verdict::Pass:
    return "PASS";
  case Verdict::Fail:
    return "FAIL";
  case Verdict::Skipped:
    return "SKIPPED";
  case Verdict::NotAsserted:
    return "NOT_ASSERTED";
  }
  return "?";
}

bool BoundReport::failed() const
{
  return std::any_of( verdicts.begin(), verdicts.end(), []( auto const& v ) { return v.second == Verdict::Fail; } );
}

namespace
{

Verdict pass_if( bool ok )
{
  return ok ? Verdict::Pass : Verdict::Fail;
}

// Lemma chain inequality on the symmetrized coefficients of `gate`.
ChainCheck check_chain( GroupShape const& shape, IntPolynomial const& gate, bool certify, lp::SolveOptions const& options )
{
  OrderContext const ctx( shape );
  auto const alpha = chain_start( ctx, TupleIndex{ std::vector<int>( shape.depth(), 0 ) }, 0 );
  auto const chain = lemma_chain( ctx, alpha, 0 );
  ChainCheck out;
  out.alpha = alpha;
  out.beta = chain.end;
  out.exponent = chain.exponent;
  auto const q = symmetrize( to_uv( gate ) );
  auto const w = tuple_coefficients( q );
  auto lookup = [&]( TupleIndex const& t ) {
    auto it = w.find( t );
    return it == w.end() ? mpz_class( 0 ) : it->second;
  };
  out.w_alpha = lookup( out.alpha );
  out.w_beta = lookup( out.beta );
  mpz_class const scaled = out.w_alpha << static_cast<mp_bitcnt_t>( out.exponent );
  out.holds = out.w_beta >= scaled;

  if ( certify )
  {
    auto const problem = uv_representation( shape );
    auto index = [&]( TupleIndex const& t ) {
      return static_cast<std::size_t>( std::find( problem.tuples.begin(), problem.tuples.end(), t ) -
                                        problem.tuples.begin() );
    };
    Inequality target;
    target.lhs = lp::normalized(
        { { index( out.beta ), Rational( 1 ) },
          { index( out.alpha ), Rational( -( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( out.exponent ) ) ) } } );
    target.rhs = 0;
    target.text = "w" + out.beta.to_string() + " >= 2^" + std::to_string( out.exponent ) + "*w" + out.alpha.to_string();
    auto verdict = certify_inequality( problem, target, options );
    out.lp_certified = verdict.certified && verdict.certificate_ok;
    out.certificate = std::move( verdict );
  }
  return out;
}

} // namespace

BoundReport verify_theorem_instance( GroupShape const& shape, ReportOptions const& options )
{
  shape.validate();
  BoundReport r;
  r.shape = shape;
  r.n = shape.num_vars();
  r.d = static_cast<int>( shape.depth() );
  r.bound = theorem_bound( shape );
  auto const f = make_hard( shape );

  auto const gate = witness_gate( shape );
  r.witness_gate_weight = gate.weight();
  r.witness_gate_pass = check_sign_representation( gate, f ).pass;
  r.verdicts.emplace_back( "witness_gate", pass_if( r.witness_gate_pass ) );
  if ( shape.variant == Variant::Weak )
  {
    auto const size = static_cast<mp_bitcnt_t>( shape.index_set_size() );
    mpz_class const expected = ( mpz_class( 1 ) << static_cast<mp_bitcnt_t>( r.d ) ) * ( ( mpz_class( 1 ) << ( size + 1 ) ) - 2 );
    r.verdicts.emplace_back( "witness_weight_formula", pass_if( r.witness_gate_weight == expected ) );
  }

  auto const uv = to_uv( gate );
  r.uv_weight = uv.weight();
  r.uv_limit = basis_change_factor( shape ) * r.witness_gate_weight;
  r.verdicts.emplace_back( "basis_change", pass_if( r.uv_weight <= r.uv_limit ) );
  r.verdicts.emplace_back( "symmetrized_gate", pass_if( check_sign_representation( symmetrize( uv ), f ).pass ) );

  r.weight = options.weight_result ? *options.weight_result
                                    : min_weight( f, r.d, options.mode, shape, options.weight );
  auto const& weight = r.weight;
  r.weight_status = weight.status;
  r.nodes = weight.nodes;
  r.lp_certificate_ok = weight.lp_certificate_ok;
  r.verdicts.emplace_back( "lp_certificate", pass_if( weight.lp_certificate_ok ) );
  if ( weight.status == WeightStatus::Infeasible )
  {
    r.verdicts.emplace_back( "representable", Verdict::Fail );
    return r;
  }
  r.lp_lower_bound = weight.lp_value;
  r.exact_weight = weight.exact;
  r.weight_lower_bound = weight.lower_bound;
  if ( weight.gate )
    r.verdicts.emplace_back( "weight_gate", pass_if( weight.gate_verified ) );

  Verdict bound_verdict;
  if ( !r.bound.asserted )
    bound_verdict = Verdict::NotAsserted;
  else if ( r.weight_lower_bound >= r.bound.value )
    bound_verdict = Verdict::Pass;
  else if ( r.exact_weight )
    bound_verdict = Verdict::Fail;
  else
    bound_verdict = Verdict::Skipped;
  r.verdicts.emplace_back( "theorem_bound", bound_verdict );

  if ( weight.gate )
  {
    r.chain = check_chain( shape, *weight.gate, options.certify_chain, options.weight.lp );
    auto const asserted_or = [&]( bool ok ) {
      return ok ? Verdict::Pass : r.bound.asserted ? Verdict::Fail : Verdict::NotAsserted;
    };
    r.verdicts.emplace_back( "chain_witness", asserted_or( r.chain->holds ) );
    if ( r.chain->lp_certified )
      r.verdicts.emplace_back( "chain_lp", asserted_or( *r.chain->lp_certified ) );
  }
  return r;
}

std::string to_json( BoundReport const& r )
{
  nlohmann::ordered_json j;
  j["shape"] = r.shape.to_string();
  j["variant"] = std::string( to_string( r.shape.variant ) );
  j["ks"] = r.shape.ks;
  j["n"] = r.n;
  j["d"] = r.d;
  j["hypotheses"] = r.bound.asserted;
  j["bound_formula"] = r.bound.formula;
  j["bound_exponent"] = r.bound.exponent;
  j["bound"] = r.bound.value.get_str();
  j["lp_lower_bound"] = r.lp_lower_bound ? r.lp_lower_bound->get_str() : "";
  j["weight_status"] = std::string( to_string( r.weight_status ) );
  j["exact_weight"] = r.exact_weight ? r.exact_weight->get_str() : "";
  j["weight_lower_bound"] = r.weight_lower_bound.get_str();
  j["nodes"] = r.nodes;
  j["witness_gate_weight"] = r.witness_gate_weight.get_str();
  j["uv_weight"] = r.uv_weight.get_str();
  j["uv_limit"] = r.uv_limit.get_str();
  if ( r.chain )
  {
    nlohmann::ordered_json c;
    c["alpha"] = r.chain->alpha.to_string();
    c["beta"] = r.chain->beta.to_string();
    c["exponent"] = r.chain->exponent;
    c["w_alpha"] = r.chain->w_alpha.get_str();
    c["w_beta"] = r.chain->w_beta.get_str();
    c["holds"] = r.chain->holds;
    if ( r.chain->lp_certified )
      c["lp_certified"] = *r.chain->lp_certified;
    j["chain"] = std::move( c );
  }
  nlohmann::ordered_json v;
  for ( auto const& [name, verdict] : r.verdicts )
    v[name] = std::string( to_string( verdict ) );
  j["verdicts"] = std::move( v );
  return j.dump( 2 );
}

std::string bound_csv_header()
{
  return "shape,n,d,bound,lp_lb,exact_w,witness_w,verdicts";
}

std::string to_csv_row( BoundReport const& r )
{
  std::string verdicts;
  for ( auto const& [name, verdict] : r.verdicts )
  {
    if ( !verdicts.empty() )
      verdicts += ';';
    verdicts += name + "=" + std::string( to_string( verdict ) );
  }
  return "\"" + r.shape.to_string() + "\"," + std::to_string( r.n ) + "," + std::to_string( r.d ) + "," +
         r.bound.value.get_str() + "," + ( r.lp_lower_bound ? r.lp_lower_bound->get_str() : "" ) + "," +
         ( r.exact_weight ? r.exact_weight->get_str() : "" ) + "," + r.witness_gate_weight.get_str() + "," + verdicts;
}

} // namespace ptf

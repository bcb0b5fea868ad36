#include <ptf/bool_function.hpp>
#include <ptf/harness.hpp>
#include <ptf/polynomial.hpp>
#include <ptf/threshold_analysis.hpp>
#include <ptf/tuple_order.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

using namespace ptf;
using json = nlohmann::ordered_json;

std::string read_file( std::string const& path )
{
  std::ifstream is( path, std::ios::binary );
  if ( !is )
    throw std::runtime_error( "cannot read " + path );
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_text( std::string const& path, std::string const& text )
{
  if ( path.empty() || path == "-" )
  {
    std::cout << text;
    return;
  }
  auto const parent = std::filesystem::path( path ).parent_path();
  if ( !parent.empty() )
    std::filesystem::create_directories( parent );
  std::ofstream os( path, std::ios::binary );
  if ( !os )
    throw std::runtime_error( "cannot write " + path );
  os << text;
}

int report_run( harness::RunResult const& result, std::string const& out, bool timing )
{
  std::cout << harness::to_csv( result, timing );
  if ( !out.empty() )
    harness::write_outputs( result, out );
  std::cerr << ( result.failed() ? "FAIL" : "PASS" ) << ": " << result.rows.size() << " rows, "
            << result.certificates.size() << " certificates\n";
  return result.exit_status();
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "ptf: polynomial threshold function laboratory" };
  app.require_subcommand( 1 );

  std::string out;
  std::size_t budget_nodes = harness::Budgets{}.node_budget;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  bool no_timing = false;
  auto add_common = [&]( CLI::App* cmd ) {
    cmd->add_option( "--out", out, "Output file or directory" );
    cmd->add_option( "--budget-nodes", budget_nodes, "Branch-and-bound node budget" )->check( CLI::PositiveNumber );
    cmd->add_option( "--workers", workers, "Concurrent tasks" )->check( CLI::PositiveNumber );
    cmd->add_option( "--seed", seed, "Scheduling seed (never changes results)" );
    cmd->add_flag( "--no-timing", no_timing, "Omit the seconds column from CSV output" );
  };

  std::string variant = "weak";
  std::string ks;

  auto* build = app.add_subcommand( "build", "Emit the hard function of a shape as JSON" );
  build->add_option( "variant", variant, "weak or strong" )->required();
  build->add_option( "ks", ks, "Group sizes, e.g. 2,3" )->required();
  add_common( build );

  auto* order = app.add_subcommand( "order", "Print the ordered index set as CSV" );
  order->add_option( "variant", variant, "weak or strong" )->required();
  order->add_option( "ks", ks, "Group sizes, e.g. 2,3" )->required();
  add_common( order );

  auto* verify = app.add_subcommand( "verify-gate", "Check the witness gate, its basis change and symmetrization" );
  verify->add_option( "ks", ks, "Group sizes, e.g. 2,3" )->required();
  verify->add_option( "--variant", variant, "weak or strong" );
  add_common( verify );

  std::string fn_path;
  int dmax = 3;
  auto* signdeg = app.add_subcommand( "signdeg", "Certified sign degree of a function" );
  signdeg->add_option( "function", fn_path, "BoolFun JSON file" )->required()->check( CLI::ExistingFile );
  signdeg->add_option( "--dmax", dmax, "Largest degree tried" )->check( CLI::NonNegativeNumber );
  add_common( signdeg );

  int degree = 1;
  bool exact = false;
  auto* minweight = app.add_subcommand( "minweight", "Minimal weight of a degree-d representation" );
  minweight->add_option( "function", fn_path, "BoolFun JSON file" )->required()->check( CLI::ExistingFile );
  minweight->add_option( "--degree", degree, "Degree" )->required()->check( CLI::NonNegativeNumber );
  minweight->add_flag( "--exact", exact, "Integer optimum by branch and bound" );
  add_common( minweight );

  std::string lemma_name;
  int k = 3;
  auto* lemma = app.add_subcommand( "check-lemma", "Certify a coefficient lemma for one k" );
  lemma->add_option( "name", lemma_name, "gt_exp, gt_step, gt0_exp, gt0_step, g1_pos, g1_mono or g0_all" )
      ->required();
  lemma->add_option( "--k", k, "Block size" )->check( CLI::PositiveNumber );
  add_common( lemma );

  std::string target;
  auto* reproduce = app.add_subcommand( "reproduce", "Run a preset or a JSON experiment spec" );
  reproduce->add_option( "preset", target, "Preset name or spec file" )->required();
  add_common( reproduce );

  auto* presets = app.add_subcommand( "presets", "List preset names" );

  std::string cert_path;
  auto* replay = app.add_subcommand( "replay", "Re-verify a stored certificate" );
  replay->add_option( "certificate", cert_path, "Certificate JSON file" )->required()->check( CLI::ExistingFile );

  CLI11_PARSE( app, argc, argv );

  try
  {
    if ( *build )
    {
      auto const shape = parse_shape( variant, ks );
      shape.validate();
      write_text( out, to_json( make_hard( shape ) ) + "\n" );
      return 0;
    }
    if ( *order )
    {
      auto const shape = parse_shape( variant, ks );
      shape.validate();
      OrderContext const ctx( shape );
      std::ostringstream os;
      os << "rank";
      for ( std::size_t i = 1; i <= shape.depth(); ++i )
        os << ",a" << i;
      os << "\n";
      std::size_t rank = 1;
      for ( auto const& t : ctx.enumerate_ordered() )
      {
        os << rank++;
        for ( int a : t.coords )
          os << "," << a;
        os << "\n";
      }
      write_text( out, os.str() );
      return 0;
    }
    if ( *verify )
    {
      harness::ExperimentSpec spec;
      spec.name = "verify-gate";
      spec.variant = parse_variant( variant );
      spec.shapes = { parse_group_sizes( ks ) };
      spec.modes = { harness::Mode::VerifyGate };
      spec.budgets.max_vars = BoolFun::max_vars;
      return report_run( harness::run( spec ), out, !no_timing );
    }
    if ( *signdeg )
    {
      auto const f = bool_fun_from_json( read_file( fn_path ) );
      auto const result = sign_degree( f, dmax );
      json j;
      j["function"] = f.label();
      j["n"] = f.num_vars();
      j["sign_degree"] = result.degree ? json( *result.degree ) : json( nullptr );
      json attempts = json::array();
      bool ok = true;
      for ( auto const& a : result.attempts )
      {
        attempts.push_back( { { "degree", a.degree },
                              { "columns", a.columns },
                              { "status", std::string( lp::to_string( a.outcome.status ) ) },
                              { "certificate_ok", a.certificate_ok } } );
        ok = ok && ( a.outcome.status != lp::LpStatus::Infeasible || a.certificate_ok );
      }
      j["attempts"] = std::move( attempts );
      if ( result.gate )
      {
        j["gate"] = json::parse( to_json( *result.gate ) );
        j["gate_verified"] = result.gate_verified;
        ok = ok && result.gate_verified;
      }
      write_text( out, j.dump( 2 ) + "\n" );
      return ok ? 0 : 1;
    }
    if ( *minweight )
    {
      auto const f = bool_fun_from_json( read_file( fn_path ) );
      WeightOptions options;
      options.node_budget = budget_nodes;
      auto const r = min_weight( f, degree, exact ? WeightMode::Exact : WeightMode::LP, std::nullopt, options );
      json j;
      j["function"] = f.label();
      j["degree"] = degree;
      j["mode"] = exact ? "exact" : "lp";
      j["status"] = std::string( to_string( r.status ) );
      j["lp_value"] = r.lp_value.get_str();
      j["lp_certificate_ok"] = r.lp_certificate_ok;
      if ( r.exact )
        j["exact"] = r.exact->get_str();
      j["lower_bound"] = r.lower_bound.get_str();
      if ( r.gate )
      {
        j["gate"] = json::parse( to_json( *r.gate ) );
        j["gate_verified"] = r.gate_verified;
      }
      j["nodes"] = r.nodes;
      j["pivots"] = r.pivots;
      write_text( out, j.dump( 2 ) + "\n" );
      bool const ok = r.status == WeightStatus::Infeasible ? r.lp_certificate_ok
                                                           : r.lp_certificate_ok && ( !r.gate || r.gate_verified );
      return ok ? 0 : 1;
    }
    if ( *lemma )
    {
      auto const report = certify_coefficient_lemma( parse_lemma( lemma_name ), k );
      for ( auto const& item : report.items )
        std::cout << ( item.certified && item.certificate_ok ? "CERTIFIED " : "FAIL      " ) << item.target.text
                  << "\n";
      std::cout << lemma_name << " k=" << k << ": " << ( report.certified() ? "CERTIFIED" : "FAIL" ) << "\n";
      return report.certified() ? 0 : 1;
    }
    if ( *reproduce )
    {
      harness::ExperimentSpec spec;
      if ( std::filesystem::is_regular_file( target ) )
        spec = harness::spec_from_json( read_file( target ) );
      else
        spec = harness::preset( target );
      if ( budget_nodes != harness::Budgets{}.node_budget )
        spec.budgets.node_budget = budget_nodes;
      if ( out.empty() )
        out = spec.out;
      harness::RunOptions options;
      options.workers = workers;
      options.seed = seed;
      return report_run( harness::run( spec, options ), out, !no_timing );
    }
    if ( *presets )
    {
      for ( auto const& name : harness::preset_names() )
        std::cout << name << "\n";
      return 0;
    }
    if ( *replay )
    {
      auto const check = harness::replay_certificate( read_file( cert_path ) );
      std::cout << ( check.ok ? "VALID" : "INVALID: " + check.reason ) << "\n";
      return check.ok ? 0 : 1;
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

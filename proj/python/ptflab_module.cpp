#include <ptf/bool_function.hpp>
#include <ptf/exact_lp.hpp>
#include <ptf/harness.hpp>
#include <ptf/polynomial.hpp>
#include <ptf/threshold_analysis.hpp>
#include <ptf/tuple_order.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ptf;

namespace
{

py::object to_int( mpz_class const& z )
{
  auto const s = z.get_str();
  return py::reinterpret_steal<py::object>( PyLong_FromString( s.c_str(), nullptr, 10 ) );
}

py::object to_fraction( Rational const& q )
{
  static py::object fraction = py::module_::import( "fractions" ).attr( "Fraction" );
  return fraction( to_int( q.get_num() ), to_int( q.get_den() ) );
}

py::list fractions( std::vector<Rational> const& v )
{
  py::list out;
  for ( auto const& q : v )
    out.append( to_fraction( q ) );
  return out;
}

py::dict outcome_dict( lp::LpOutcome const& o )
{
  py::dict d;
  d["status"] = std::string( lp::to_string( o.status ) );
  d["value"] = to_fraction( o.value );
  d["witness"] = fractions( o.witness );
  d["farkas"] = fractions( o.farkas );
  d["dual"] = fractions( o.dual );
  d["ray"] = fractions( o.ray );
  d["pivots"] = o.pivots;
  return d;
}

} // namespace

PYBIND11_MODULE( _core, m )
{
  m.doc() = "Polynomial threshold function laboratory";

  py::enum_<Variant>( m, "Variant" ).value( "Weak", Variant::Weak ).value( "Strong", Variant::Strong );
  py::enum_<MsbPosition>( m, "MsbPosition" ).value( "Last", MsbPosition::Last ).value( "First", MsbPosition::First );
  py::enum_<GVariant>( m, "GVariant" ).value( "G1", GVariant::G1 ).value( "G0", GVariant::G0 );

  py::class_<GroupShape>( m, "GroupShape" )
      .def( py::init<std::vector<int>, Variant>(), py::arg( "ks" ), py::arg( "variant" ) = Variant::Weak )
      .def_readonly( "ks", &GroupShape::ks )
      .def_readonly( "variant", &GroupShape::variant )
      .def_property_readonly( "depth", &GroupShape::depth )
      .def_property_readonly( "num_vars", &GroupShape::num_vars )
      .def_property_readonly( "index_set_size", &GroupShape::index_set_size )
      .def( "validate", &GroupShape::validate )
      .def( "meets_theorem_hypotheses", &GroupShape::meets_theorem_hypotheses )
      .def( "__repr__", &GroupShape::to_string );

  py::class_<BoolFun>( m, "BoolFun" )
      .def_property_readonly( "num_vars", &BoolFun::num_vars )
      .def_property_readonly( "label", &BoolFun::label )
      .def( "bit", &BoolFun::bit, py::arg( "input" ) )
      .def( "value", &BoolFun::value, py::arg( "input" ) )
      .def( "to_json", []( BoolFun const& f ) { return to_json( f ); } )
      .def_static( "from_json", []( std::string const& s ) { return bool_fun_from_json( s ); } )
      .def( "__eq__", &BoolFun::operator== );

  m.def( "make_gt", &make_gt, py::arg( "k" ), py::arg( "msb" ) = MsbPosition::Last );
  m.def( "make_g", &make_g, py::arg( "k" ), py::arg( "variant" ) = GVariant::G1 );
  m.def( "make_hard", &make_hard, py::arg( "shape" ) );

  m.def(
      "enumerate_order",
      []( GroupShape const& shape ) {
        OrderContext const ctx( shape );
        std::vector<std::vector<int>> out;
        for ( auto const& t : ctx.enumerate_ordered() )
          out.push_back( t.coords );
        return out;
      },
      py::arg( "shape" ) );
  m.def(
      "compare",
      []( GroupShape const& shape, std::vector<int> a, std::vector<int> b ) {
        OrderContext const ctx( shape );
        auto const c = ctx.compare( TupleIndex{ std::move( a ) }, TupleIndex{ std::move( b ) } );
        return c < 0 ? -1 : c > 0 ? 1 : 0;
      },
      py::arg( "shape" ), py::arg( "a" ), py::arg( "b" ) );

  py::class_<IntPolynomial>( m, "IntPolynomial" )
      .def_property_readonly( "num_vars", &IntPolynomial::num_vars )
      .def_property_readonly( "degree", &IntPolynomial::degree )
      .def_property_readonly( "weight", []( IntPolynomial const& p ) { return to_int( p.weight() ); } )
      .def( "__len__", &IntPolynomial::size )
      .def( "to_json", []( IntPolynomial const& p ) { return to_json( p ); } )
      .def_static( "from_json", []( std::string const& s ) { return polynomial_from_json( s ); } )
      .def( "__str__", &IntPolynomial::to_string );

  m.def( "witness_gate", []( GroupShape const& shape ) { return witness_gate( shape ); }, py::arg( "shape" ) );
  m.def( "to_uv", []( IntPolynomial const& p ) { return to_uv( p ); }, py::arg( "p" ) );
  m.def( "symmetrize", &symmetrize, py::arg( "q" ) );
  m.def(
      "check_sign_representation",
      []( IntPolynomial const& p, BoolFun const& f ) {
        py::gil_scoped_release release;
        return check_sign_representation( p, f ).pass;
      },
      py::arg( "p" ), py::arg( "f" ) );

  m.def(
      "sign_degree",
      []( BoolFun const& f, int dmax ) {
        SignDegreeResult r;
        {
          py::gil_scoped_release release;
          r = sign_degree( f, dmax );
        }
        py::dict d;
        d["degree"] = r.degree ? py::cast( *r.degree ) : py::none();
        py::list attempts;
        for ( auto const& a : r.attempts )
        {
          py::dict item;
          item["degree"] = a.degree;
          item["status"] = std::string( lp::to_string( a.outcome.status ) );
          item["certificate_ok"] = a.certificate_ok;
          attempts.append( item );
        }
        d["attempts"] = attempts;
        d["gate"] = r.gate ? py::cast( *r.gate ) : py::none();
        d["gate_verified"] = r.gate_verified;
        return d;
      },
      py::arg( "f" ), py::arg( "dmax" ) );

  m.def(
      "min_weight",
      []( BoolFun const& f, int degree, bool exact, std::size_t node_budget ) {
        WeightOptions options;
        options.node_budget = node_budget;
        WeightResult r;
        {
          py::gil_scoped_release release;
          r = min_weight( f, degree, exact ? WeightMode::Exact : WeightMode::LP, std::nullopt, options );
        }
        py::dict d;
        d["status"] = std::string( to_string( r.status ) );
        d["lp_value"] = to_fraction( r.lp_value );
        d["lp_certificate_ok"] = r.lp_certificate_ok;
        d["exact"] = r.exact ? to_int( *r.exact ) : py::none();
        d["lower_bound"] = to_int( r.lower_bound );
        d["gate"] = r.gate ? py::cast( *r.gate ) : py::none();
        d["gate_verified"] = r.gate_verified;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg( "f" ), py::arg( "degree" ), py::arg( "exact" ) = false, py::arg( "node_budget" ) = 200'000 );

  m.def(
      "certify_lemma",
      []( std::string const& name, int k ) {
        LemmaReport report;
        {
          py::gil_scoped_release release;
          report = certify_coefficient_lemma( parse_lemma( name ), k );
        }
        std::vector<std::pair<std::string, bool>> out;
        for ( auto const& item : report.items )
          out.emplace_back( item.target.text, item.certified && item.certificate_ok );
        return out;
      },
      py::arg( "name" ), py::arg( "k" ) );

  m.def(
      "theorem_bound",
      []( GroupShape const& shape ) {
        auto const b = theorem_bound( shape );
        py::dict d;
        d["asserted"] = b.asserted;
        d["exponent"] = b.exponent;
        d["value"] = to_int( b.value );
        d["formula"] = b.formula;
        return d;
      },
      py::arg( "shape" ) );

  m.def(
      "solve_lp",
      []( std::string const& text ) {
        auto const problem = lp::parse_text( text );
        lp::LpOutcome o;
        {
          py::gil_scoped_release release;
          o = lp::solve( problem );
        }
        auto d = outcome_dict( o );
        d["certificate_ok"] = lp::check_outcome( problem, o ).ok;
        return d;
      },
      py::arg( "text" ) );

  m.def(
      "run_preset",
      []( std::string const& name, std::size_t workers, std::uint64_t seed, bool timing ) {
        harness::RunResult r;
        {
          py::gil_scoped_release release;
          r = harness::run( harness::preset( name ), { workers, seed } );
        }
        return py::make_tuple( harness::to_csv( r, timing ), r.exit_status(), r.certificates );
      },
      py::arg( "name" ), py::arg( "workers" ) = 1, py::arg( "seed" ) = 0, py::arg( "timing" ) = false );
  m.def( "preset_names", &harness::preset_names );
  m.def(
      "replay_certificate",
      []( std::string const& text ) {
        auto const r = harness::replay_certificate( text );
        return py::make_tuple( r.ok, r.reason );
      },
      py::arg( "text" ) );
}

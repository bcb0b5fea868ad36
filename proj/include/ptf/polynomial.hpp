#pragma once

#include <ptf/bool_function.hpp>
#include <ptf/shape.hpp>
#include <ptf/tuple_order.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ptf
{

enum class Basis
{
  XY, ///< the function's own input variables
  UV  ///< u/v variables derived from a group shape
};

/// Sorted variable ids. XY monomials are sets; UV monomials may repeat an
/// id because the change of basis is expanded without reduction.
using Monomial = std::vector<std::uint32_t>;

/// A u or v variable: u^{group+1}_{label} or v^{group+1}_{label}.
struct UvVar
{
  std::size_t group;
  int label;
  bool is_v;

  friend bool operator==( UvVar const&, UvVar const& ) = default;
};

/// Lowest coordinate label of a group (0 on strong g-groups, else 1).
int min_label( GroupShape const& shape, std::size_t group );

std::uint32_t uv_id( GroupShape const& shape, UvVar var );
UvVar uv_var( GroupShape const& shape, std::uint32_t id );
std::size_t uv_id_count( GroupShape const& shape );

/*! \brief Sparse integer polynomial with arbitrary-precision coefficients.

  Zero coefficients are never stored. The weight is the sum of absolute
  values of the coefficients.
*/
class IntPolynomial
{
public:
  using Terms = std::map<Monomial, mpz_class>;

  IntPolynomial( Basis basis, std::size_t num_vars, std::optional<GroupShape> shape = std::nullopt );

  static IntPolynomial xy( GroupShape const& shape ) { return IntPolynomial( Basis::XY, shape.num_vars(), shape ); }
  static IntPolynomial uv( GroupShape const& shape ) { return IntPolynomial( Basis::UV, uv_id_count( shape ), shape ); }

  Basis basis() const { return basis_; }
  std::size_t num_vars() const { return num_vars_; }
  std::optional<GroupShape> const& shape() const { return shape_; }

  /// Adds `coeff` to the coefficient of `mono` (sorted internally).
  void add( Monomial mono, mpz_class const& coeff );

  Terms const& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  mpz_class coefficient( Monomial mono ) const;

  int degree() const;
  mpz_class weight() const;

  std::string var_name( std::uint32_t id ) const;
  std::string to_string() const;

  bool operator==( IntPolynomial const& other ) const
  {
    return basis_ == other.basis_ && num_vars_ == other.num_vars_ && terms_ == other.terms_;
  }

private:
  Basis basis_;
  std::size_t num_vars_;
  std::optional<GroupShape> shape_;
  Terms terms_;
};

/// Derived u/v values of an input: weak u = x - y, v = x + y per position;
/// strong u^i_j = L_j(x^i) on g-groups and u/v from (x^d, y^d) on the last group.
struct UvAssignment
{
  std::vector<int> values; ///< indexed by uv id; unused ids hold 0
};

UvAssignment derive_uv( GroupShape const& shape, std::uint64_t input );

/// Value at an input index, variables read in `convention`.
mpz_class eval_xy( IntPolynomial const& p, std::uint64_t input, Convention convention );
/// Value at explicit variable values.
mpz_class eval_xy( IntPolynomial const& p, std::span<int const> values );
mpz_class eval_uv( IntPolynomial const& p, UvAssignment const& assignment );

/// sum_j 2^j t_j over K in ascending order, with t_j the product attached to
/// the j-th tuple (differences x - y on GT groups, signed L-forms on g-groups).
IntPolynomial witness_gate( GroupShape const& shape, std::size_t enumeration_cap = std::size_t{ 1 } << 16 );

/// Substitutes x, y by their u/v expressions and multiplies by 2^d, so that
/// eval_uv(to_uv(p), derive_uv(x)) == 2^d eval_xy(p, x) for every input.
IntPolynomial to_uv( IntPolynomial const& p, std::size_t monomial_cap = std::size_t{ 1 } << 22 );

/// Keeps the monomials made of exactly one u variable from every group.
IntPolynomial symmetrize( IntPolynomial const& p );

/// Coefficients w_alpha of a symmetrized polynomial, keyed by tuple.
std::map<TupleIndex, mpz_class> tuple_coefficients( IntPolynomial const& q );

/// The monomial u^1_{alpha_1} ... u^d_{alpha_d}.
Monomial tuple_monomial( GroupShape const& shape, TupleIndex const& alpha );

/// {"basis", "variant", "ks", "num_vars", "terms": [{"vars": [...], "coeff": "..."}]}
std::string to_json( IntPolynomial const& p );
IntPolynomial polynomial_from_json( std::string_view text );

} // namespace ptf

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptf
{

/// Raised for malformed shapes, out-of-range tuples and similar caller errors.
class invalid_shape : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class Variant
{
  Weak,  ///< GT blocks on every group, inputs (x^1..x^d, y^1..y^d) in {0,1}
  Strong ///< g-blocks on groups 1..d-1 and GT on group d, inputs (x^1..x^d, y^d) in {-1,1}
};

std::string_view to_string( Variant v );
Variant parse_variant( std::string_view name );

/*! \brief Group sizes (k_1, ..., k_d) of a hard function.

  Groups are 0-based in code; `ks[g]` is the size of group g.  Input
  variables are laid out as

    weak:   x^1 .. x^d  y^1 .. y^d
    strong: x^1 .. x^{d-1}  x^d  y^d

  with every block stored least-index first.
*/
struct GroupShape
{
  std::vector<int> ks;
  Variant variant = Variant::Weak;

  GroupShape() = default;
  GroupShape( std::vector<int> sizes, Variant v ) : ks( std::move( sizes ) ), variant( v ) {}

  std::size_t depth() const { return ks.size(); }
  std::size_t num_vars() const;

  /// Sum of the group sizes (the number of x variables).
  std::size_t num_x_vars() const;

  std::size_t group_offset( std::size_t group ) const;

  /// Input index of x^{group}_{pos+1}.
  std::size_t x_var( std::size_t group, std::size_t pos ) const;

  /// Input index of y^{group}_{pos+1}; strong shapes only have y on the last group.
  std::size_t y_var( std::size_t group, std::size_t pos ) const;

  bool has_y( std::size_t group ) const;

  /// Minimal sizes for which the construction is defined (k >= 1 weak, k >= 2 strong).
  bool constructible() const;
  void validate() const;

  /// Whether the lower-bound theorem for this variant applies:
  /// weak needs k_i even >= 2 for i < d and k_d >= 3,
  /// strong needs k_i odd >= 3 for i < d and k_d >= 3.
  bool meets_theorem_hypotheses() const;

  /// Number of tuples in the index set K.
  std::size_t index_set_size() const;

  /// "2,3"
  std::string ks_string() const;
  /// "weak(2,3)"
  std::string to_string() const;

  friend bool operator==( GroupShape const&, GroupShape const& ) = default;
};

/// Parses "2,3" (also accepts "(2,3)" and whitespace).
std::vector<int> parse_group_sizes( std::string_view text );

GroupShape parse_shape( std::string_view variant, std::string_view sizes );

} // namespace ptf

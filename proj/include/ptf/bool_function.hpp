#pragma once

#include <ptf/shape.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptf
{

enum class Convention
{
  ZeroOne,  ///< inputs and outputs in {0,1}
  PlusMinus ///< inputs and outputs in {-1,1}; bit 1 encodes +1, bit 0 encodes -1
};

std::string_view to_string( Convention c );
Convention parse_convention( std::string_view name );

/*! \brief Total Boolean function stored as a truth table.

  Bit `i` of the table is the output on the input whose variable `v` is bit
  `v` of `i` (variable 0 least significant). An output bit 1 is the
  positive class: value 1 in both conventions. Input bit 0 means 0 or -1.
*/
class BoolFun
{
public:
  static constexpr std::size_t max_vars = 30;

  BoolFun() = default;
  BoolFun( std::size_t num_vars, Convention convention, std::string label = {} );

  std::size_t num_vars() const { return num_vars_; }
  std::uint64_t num_inputs() const { return std::uint64_t{ 1 } << num_vars_; }
  Convention convention() const { return convention_; }
  std::string const& label() const { return label_; }
  void set_label( std::string label ) { label_ = std::move( label ); }

  bool bit( std::uint64_t input ) const { return ( words_[input >> 6] >> ( input & 63 ) ) & 1u; }
  void set_bit( std::uint64_t input, bool value );

  /// Output value in the function's convention.
  int value( std::uint64_t input ) const;

  /// Value of input variable `var` on `input` in the function's convention.
  int input_value( std::uint64_t input, std::size_t var ) const;

  std::vector<std::uint64_t> const& words() const { return words_; }

  /// Bytes of the table, least significant first (input 0 is bit 0 of byte 0).
  std::vector<std::uint8_t> bytes() const;

  bool operator==( BoolFun const& other ) const
  {
    return num_vars_ == other.num_vars_ && convention_ == other.convention_ && words_ == other.words_;
  }

private:
  std::size_t num_vars_ = 0;
  Convention convention_ = Convention::ZeroOne;
  std::string label_;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>( 1, 0 );
};

/// Index of an assignment given as values in the function's convention.
std::uint64_t input_index( BoolFun const& f, std::span<int const> assignment );

/// Table lookup with alphabet and length checks.
int eval( BoolFun const& f, std::span<int const> assignment );

enum class MsbPosition
{
  Last, ///< x_k most significant (GT_1)
  First ///< x_1 most significant (GT_0)
};

/// GT on 2k variables (x_1..x_k, y_1..y_k), ZeroOne: 1 iff x >= y.
BoolFun make_gt( int k, MsbPosition msb = MsbPosition::Last );

enum class GVariant
{
  G1, ///< -x_k unless all bits agree, then x_k
  G0  ///<  x_1 unless all bits agree, then -x_1
};

/// g_1 / g_0 on k variables, PlusMinus.
BoolFun make_g( int k, GVariant variant = GVariant::G1 );

/// The hard function of `shape`, computed by scanning K from the top.
BoolFun make_hard( GroupShape const& shape );

/// Relabels outputs and inputs between conventions (the table is unchanged).
BoolFun with_convention( BoolFun const& f, Convention convention );

std::string to_hex( BoolFun const& f );
std::string to_json( BoolFun const& f );
BoolFun bool_fun_from_json( std::string_view text );

} // namespace ptf

#pragma once

#include <ptf/shape.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ptf
{

/*! \brief A tuple (alpha_1, ..., alpha_d) of the index set K.

  Coordinates hold labels exactly as they index variables: 1..k on weak
  coordinates and on the last strong coordinate, 0..k-1 on the first d-1
  strong coordinates (the index of the linear form L_j).
*/
struct TupleIndex
{
  std::vector<int> coords;

  std::size_t size() const { return coords.size(); }
  int operator[]( std::size_t i ) const { return coords[i]; }
  int& operator[]( std::size_t i ) { return coords[i]; }

  std::string to_string() const;

  friend bool operator==( TupleIndex const&, TupleIndex const& ) = default;
  friend auto operator<=>( TupleIndex const&, TupleIndex const& ) = default;
};

/// Per-coordinate order. `Forward` is the order with index 1 (ascending
/// labels), `Reverse` the one with index 0. On strong g-coordinates label 0
/// comes first in both.
enum class CoordOrder : int
{
  Reverse = 0,
  Forward = 1
};

/// One move of the weight-accumulation argument on K.
struct ChainStep
{
  enum class Kind
  {
    Exponential, ///< last coordinate, first to last element: factor 2^(k_d - 2)
    Monotone     ///< one position up in the coordinate's order: factor 1
  };
  Kind kind;
  std::size_t coordinate;
  TupleIndex from;
  TupleIndex to;
  int exponent;
};

struct LemmaChain
{
  TupleIndex start;
  TupleIndex end;
  std::vector<ChainStep> steps;
  long long exponent = 0; ///< sum of the step exponents
  bool bookkeeping_ok = true;
  std::string failure;
};

class OrderContext
{
public:
  explicit OrderContext( GroupShape shape );

  GroupShape const& shape() const { return shape_; }
  std::size_t depth() const { return shape_.depth(); }
  std::size_t size() const { return size_; }

  int min_label( std::size_t coord ) const { return tables_[coord].lo; }
  int max_label( std::size_t coord ) const;
  int length( std::size_t coord ) const { return shape_.ks[coord]; }

  /// Strong coordinates before the last one (labels 0..k-1, 0 fixed first).
  bool is_g_coordinate( std::size_t coord ) const;

  bool contains( TupleIndex const& a ) const;
  void validate( TupleIndex const& a ) const;

  /// 1-based position of `label` in the given order of coordinate `coord`.
  int ordinal_in( CoordOrder order, std::size_t coord, int label ) const;
  int label_at( CoordOrder order, std::size_t coord, int ordinal ) const;

  /// Orders attached to the coordinates of `a`: the first coordinate is
  /// Forward, and coordinate l+1 is Forward iff the ordinal of a_l is odd.
  std::vector<CoordOrder> coordinate_orders( TupleIndex const& a ) const;

  /// Ordinal of a_coord with respect to its attached order (coord is 0-based).
  int ordinal( TupleIndex const& a, std::size_t coord ) const;

  std::strong_ordering compare( TupleIndex const& a, TupleIndex const& b ) const;

  /// All of K in ascending order. Throws when |K| exceeds `cap`.
  std::vector<TupleIndex> enumerate_ordered( std::size_t cap = default_enumeration_cap ) const;

  static constexpr std::size_t default_enumeration_cap = std::size_t{ 1 } << 22;

private:
  struct CoordTable
  {
    int lo = 1;
    std::array<std::vector<int>, 2> ordinal_of; // [order][label - lo]
    std::array<std::vector<int>, 2> label_at;   // [order][ordinal - 1]
  };

  GroupShape shape_;
  std::vector<CoordTable> tables_;
  std::size_t size_ = 0;
};

CoordOrder next_order( int ordinal );

/// First label the chain visits on `coord` under `order`: ordinal 1, or
/// ordinal 2 on g-coordinates (the chain never uses label 0 there).
int chain_first_label( OrderContext const& ctx, std::size_t coord, CoordOrder order );
int chain_last_label( OrderContext const& ctx, std::size_t coord, CoordOrder order );

/// Keeps coords [0, level) of `prefix` and fills coords >= level with the
/// chain-first labels under the orders they inherit.
TupleIndex chain_start( OrderContext const& ctx, TupleIndex const& prefix, std::size_t level );

/// Closed form of the chain end: coordinate `level` mirrored
/// (k - a + 1 on GT coordinates, k - a on g-coordinates), the rest kept.
TupleIndex chain_target( OrderContext const& ctx, TupleIndex const& alpha, std::size_t level );

/// (k_d - 2) * prod_{i=level}^{d-2} k_i for weak, with (k_i - 1) for strong.
long long chain_exponent( GroupShape const& shape, std::size_t level );

/// Replays the induction that turns w_alpha into a lower bound on w_beta:
/// Step 1 recurses on level+1, Step 2 advances coordinate `level` by one
/// position, until coordinate `level` reaches the end of its order.
/// `alpha` must satisfy the chain-start condition on coords >= level.
LemmaChain lemma_chain( OrderContext const& ctx, TupleIndex const& alpha, std::size_t level );

} // namespace ptf

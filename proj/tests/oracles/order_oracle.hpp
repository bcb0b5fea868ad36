#pragma once

#include <ptf/shape.hpp>

#include <algorithm>
#include <vector>

namespace ptf::oracle
{

/* Direct transcription of the recursive comparison rule, written without the
   permutation tables of OrderContext. */

inline bool is_g_coordinate( GroupShape const& shape, std::size_t coord )
{
  return shape.variant == Variant::Strong && coord + 1 < shape.depth();
}

/// Ordinal of `label` in order <_i (i = 1 ascending, i = 0 descending) of
/// coordinate `coord`; on g-coordinates label 0 is first in both orders.
inline int ordinal( GroupShape const& shape, std::size_t coord, int order, int label )
{
  int const k = shape.ks[coord];
  if ( is_g_coordinate( shape, coord ) )
  {
    if ( label == 0 )
      return 1;
    return order == 1 ? label + 1 : k - label + 1;
  }
  return order == 1 ? label : k - label + 1;
}

/// -1, 0 or 1.
inline int compare( GroupShape const& shape, std::vector<int> const& a, std::vector<int> const& b )
{
  int order = 1;
  for ( std::size_t l = 0; l < a.size(); ++l )
  {
    int const oa = ordinal( shape, l, order, a[l] );
    int const ob = ordinal( shape, l, order, b[l] );
    if ( oa != ob )
      return oa < ob ? -1 : 1;
    order = oa % 2;
  }
  return 0;
}

/// The full product set, in lexicographic label order.
inline std::vector<std::vector<int>> all_tuples( GroupShape const& shape )
{
  std::vector<std::vector<int>> out{ {} };
  for ( std::size_t c = 0; c < shape.depth(); ++c )
  {
    int const lo = is_g_coordinate( shape, c ) ? 0 : 1;
    int const hi = is_g_coordinate( shape, c ) ? shape.ks[c] - 1 : shape.ks[c];
    std::vector<std::vector<int>> next;
    for ( auto const& prefix : out )
      for ( int v = lo; v <= hi; ++v )
      {
        auto t = prefix;
        t.push_back( v );
        next.push_back( std::move( t ) );
      }
    out = std::move( next );
  }
  return out;
}

inline std::vector<std::vector<int>> sorted_by_oracle( GroupShape const& shape )
{
  auto tuples = all_tuples( shape );
  std::sort( tuples.begin(), tuples.end(),
             [&]( auto const& a, auto const& b ) { return compare( shape, a, b ) < 0; } );
  return tuples;
}

} // namespace ptf::oracle

#pragma once

#include <ptf/bool_function.hpp>

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <vector>

namespace ptf::oracle
{

/// Independent evaluation of GT: x >= y as integers, bit j of x is variable j
/// (x_k most significant for Last, x_1 for First).
inline bool gt_value( int k, MsbPosition msb, std::uint64_t input )
{
  std::uint64_t x = 0, y = 0;
  for ( int j = 0; j < k; ++j )
  {
    int const shift = msb == MsbPosition::Last ? j : k - 1 - j;
    x |= ( ( input >> j ) & 1u ) << shift;
    y |= ( ( input >> ( k + j ) ) & 1u ) << shift;
  }
  return x >= y;
}

/// Smallest L1 norm of an integer linear form sum_v c_v x_v + c_0 (ZeroOne
/// inputs) sign-representing f with |c_v| <= box, or nothing in the box.
inline std::optional<long> min_linear_weight( BoolFun const& f, int box )
{
  auto const n = f.num_vars();
  std::vector<int> c( n + 1, -box );
  std::optional<long> best;
  while ( true )
  {
    long weight = 0;
    for ( int v : c )
      weight += std::labs( v );
    if ( !best || weight < *best )
    {
      bool ok = true;
      for ( std::uint64_t x = 0; x < f.num_inputs() && ok; ++x )
      {
        long s = c[n];
        for ( std::size_t v = 0; v < n; ++v )
          if ( ( x >> v ) & 1u )
            s += c[v];
        ok = ( s >= 0 ) == f.bit( x );
      }
      if ( ok )
        best = weight;
    }
    std::size_t p = 0;
    while ( p < c.size() && ++c[p] > box )
      c[p++] = -box;
    if ( p == c.size() )
      break;
  }
  return best;
}

} // namespace ptf::oracle

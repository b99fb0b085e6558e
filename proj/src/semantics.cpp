#include <wavelogic/semantics.hpp>

#include <algorithm>
#include <unordered_map>

#include "net.hpp"

namespace wavelogic
{

using detail::net;

namespace
{

struct compiled
{
  net graph;
  std::vector<int> order;
};

compiled compile( circuit const& c )
{
  compiled result{ net::from_circuit( c ), {} };
  result.order = result.graph.canonical_order();
  return result;
}

} // namespace

wave_result eval_wave_traced( circuit const& c, assignment const& sigma )
{
  auto const prog = compile( c );
  auto const& g = prog.graph;

  std::vector<int> value( g.v.size(), 0 );
  wave_result result;
  for ( auto n : prog.order )
  {
    auto const& x = g.v[n];
    auto const input = [&]( int q ) { return value[x.in[q].node]; };
    switch ( x.kind )
    {
    case node_kind::source:
      value[n] = +1;
      break;
    case node_kind::phase_shift:
    {
      bool flip;
      if ( x.param.is_variable() )
      {
        auto const it = sigma.find( x.param.name() );
        if ( it == sigma.end() )
          throw rejected( "assignment does not cover variable '" + x.param.name() + "'" );
        flip = it->second;
      }
      else
      {
        flip = x.param.value() == phase::pi;
      }
      value[n] = flip ? -input( 0 ) : input( 0 );
      break;
    }
    case node_kind::copy:
      /* each branch renormalised to unit amplitude */
      value[n] = input( 0 );
      break;
    case node_kind::merge:
    {
      auto const sum = input( 0 ) + input( 1 ) + input( 2 );
      if ( sum == 0 )
        throw internal_error( "merge with zero resultant amplitude" );
      result.merge_sums.push_back( sum );
      value[n] = sum > 0 ? +1 : -1;
      break;
    }
    case node_kind::output:
      value[n] = input( 0 );
      break;
    }
  }

  for ( auto o : g.outputs )
  {
    result.outputs.push_back( phasor{ value[o] } );
  }
  return result;
}

std::vector<phasor> eval_wave( circuit const& c, assignment const& sigma )
{
  return eval_wave_traced( c, sigma ).outputs;
}

std::vector<bool> eval_bit( circuit const& c, assignment const& sigma )
{
  std::vector<bool> bits;
  for ( auto const& p : eval_wave( c, sigma ) )
  {
    bits.push_back( p.bit() );
  }
  return bits;
}

truth_table::truth_table( std::vector<std::string> vars, std::size_t width )
    : vars_( std::move( vars ) ), width_( width ), bits_( num_rows() * width, 0 )
{
}

std::vector<bool> truth_table::row( std::size_t r ) const
{
  std::vector<bool> result( width_ );
  for ( auto o = 0u; o < width_; ++o )
    result[o] = get( r, o );
  return result;
}

std::vector<int> truth_table::column( std::size_t output ) const
{
  std::vector<int> result( num_rows() );
  for ( auto r = 0u; r < num_rows(); ++r )
    result[r] = get( r, output ) ? 1 : 0;
  return result;
}

assignment truth_table::assignment_of( std::size_t row ) const
{
  assignment sigma;
  auto const n = vars_.size();
  for ( auto k = 0u; k < n; ++k )
    sigma[vars_[k]] = ( ( row >> ( n - 1 - k ) ) & 1u ) != 0;
  return sigma;
}

namespace
{

/* bit-parallel evaluation of several single- or multi-output circuits sharing
   one variable order; `columns` receives one column per circuit output */
void fill( truth_table& table, std::size_t first_column, circuit const& c )
{
  auto const prog = compile( c );
  auto const& g = prog.graph;
  auto const& vars = table.vars();
  auto const n = vars.size();

  std::unordered_map<std::string, std::size_t> var_index;
  for ( auto k = 0u; k < n; ++k )
    var_index[vars[k]] = k;

  /* per phase-shift vertex: variable index or -1 for constants */
  std::vector<long> shift_var( g.v.size(), -1 );
  for ( auto i = 0u; i < g.v.size(); ++i )
  {
    auto const& x = g.v[i];
    if ( x.kind == node_kind::phase_shift && x.param.is_variable() )
    {
      auto const it = var_index.find( x.param.name() );
      if ( it == var_index.end() )
        throw rejected( "variable order does not contain '" + x.param.name() + "'" );
      shift_var[i] = static_cast<long>( it->second );
    }
  }

  auto const rows = table.num_rows();
  std::vector<std::uint64_t> var_word( n );
  std::vector<std::uint64_t> value( g.v.size(), 0 );
  for ( std::size_t base = 0; base < rows; base += 64 )
  {
    auto const chunk = std::min<std::size_t>( 64, rows - base );
    for ( auto k = 0u; k < n; ++k )
    {
      std::uint64_t w = 0;
      for ( auto j = 0u; j < chunk; ++j )
      {
        if ( ( ( base + j ) >> ( n - 1 - k ) ) & 1u )
          w |= std::uint64_t{ 1 } << j;
      }
      var_word[k] = w;
    }

    for ( auto v : prog.order )
    {
      auto const& x = g.v[v];
      switch ( x.kind )
      {
      case node_kind::source:
        value[v] = 0;
        break;
      case node_kind::phase_shift:
      {
        auto const in = value[x.in[0].node];
        if ( shift_var[v] >= 0 )
          value[v] = in ^ var_word[shift_var[v]];
        else
          value[v] = x.param.value() == phase::pi ? ~in : in;
        break;
      }
      case node_kind::copy:
      case node_kind::output:
        value[v] = value[x.in[0].node];
        break;
      case node_kind::merge:
      {
        auto const a = value[x.in[0].node];
        auto const b = value[x.in[1].node];
        auto const d = value[x.in[2].node];
        value[v] = ( a & b ) | ( b & d ) | ( a & d );
        break;
      }
      }
    }

    for ( auto o = 0u; o < g.outputs.size(); ++o )
    {
      auto const w = value[g.outputs[o]];
      for ( auto j = 0u; j < chunk; ++j )
        table.set( base + j, first_column + o, ( w >> j ) & 1u );
    }
  }
}

void check_cap( std::size_t n, eval_options const& opts )
{
  if ( n > opts.max_vars )
  {
    throw rejected( "truth table over " + std::to_string( n ) + " variables exceeds the cap of " + std::to_string( opts.max_vars ) );
  }
}

std::vector<std::string> union_vars( circuit const& a, circuit const& b )
{
  auto result = variables( a );
  for ( auto& v : variables( b ) )
  {
    if ( std::find( result.begin(), result.end(), v ) == result.end() )
      result.push_back( std::move( v ) );
  }
  return result;
}

} // namespace

truth_table tabulate( circuit const& c, eval_options const& opts )
{
  auto const vars = variables( c );
  return tabulate( c, vars, opts );
}

truth_table tabulate( circuit const& c, std::span<std::string const> vars, eval_options const& opts )
{
  check_cap( vars.size(), opts );
  truth_table table( { vars.begin(), vars.end() }, c.num_outputs() );
  fill( table, 0, c );
  return table;
}

truth_table tabulate( circuit_bundle const& b, eval_options const& opts )
{
  auto const vars = variables( b );
  return tabulate( b, vars, opts );
}

truth_table tabulate( circuit_bundle const& b, std::span<std::string const> vars, eval_options const& opts )
{
  check_cap( vars.size(), opts );
  truth_table table( { vars.begin(), vars.end() }, b.outputs().size() );
  for ( auto i = 0u; i < b.outputs().size(); ++i )
    fill( table, i, b.outputs()[i].second );
  return table;
}

std::optional<assignment> distinguishing_assignment( circuit const& a, circuit const& b, eval_options const& opts )
{
  auto const vars = union_vars( a, b );
  check_cap( vars.size(), opts );
  auto const ta = tabulate( a, vars, opts );
  auto const tb = tabulate( b, vars, opts );
  if ( ta.width() != tb.width() )
    return ta.assignment_of( 0 );
  for ( auto r = 0u; r < ta.num_rows(); ++r )
  {
    if ( ta.row( r ) != tb.row( r ) )
      return ta.assignment_of( r );
  }
  return std::nullopt;
}

bool equivalent( circuit const& a, circuit const& b, eval_options const& opts )
{
  return !distinguishing_assignment( a, b, opts ).has_value();
}

} // namespace wavelogic

#include <wavelogic/boolean.hpp>

#include <algorithm>
#include <functional>

#include "net.hpp"

namespace wavelogic
{

bool_expr bool_expr::var( std::string name )
{
  if ( !is_identifier( name ) )
    throw rejected( "invalid variable name '" + name + "'" );
  return bool_expr( std::make_shared<data const>( data{ bool_op::variable, std::move( name ), false, {} } ) );
}

bool_expr bool_expr::constant( bool value )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::constant, {}, value, {} } ) );
}

bool_expr bool_expr::negate( bool_expr e )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::negation, {}, false, { std::move( e ) } } ) );
}

bool_expr bool_expr::conj( bool_expr a, bool_expr b )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::conjunction, {}, false, { std::move( a ), std::move( b ) } } ) );
}

bool_expr bool_expr::disj( bool_expr a, bool_expr b )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::disjunction, {}, false, { std::move( a ), std::move( b ) } } ) );
}

bool_expr bool_expr::exor( bool_expr a, bool_expr b )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::exclusive_or, {}, false, { std::move( a ), std::move( b ) } } ) );
}

bool_expr bool_expr::maj( bool_expr a, bool_expr b, bool_expr c )
{
  return bool_expr( std::make_shared<data const>( data{ bool_op::majority, {}, false, { std::move( a ), std::move( b ), std::move( c ) } } ) );
}

bool operator==( bool_expr const& a, bool_expr const& b )
{
  if ( a.node_ == b.node_ )
    return true;
  if ( a.op() != b.op() || a.name() != b.name() || a.value() != b.value() || a.args().size() != b.args().size() )
    return false;
  for ( auto i = 0u; i < a.args().size(); ++i )
  {
    if ( !( a.args()[i] == b.args()[i] ) )
      return false;
  }
  return true;
}

bool evaluate( bool_expr const& e, assignment const& sigma )
{
  auto const& a = e.args();
  switch ( e.op() )
  {
  case bool_op::variable:
  {
    auto const it = sigma.find( e.name() );
    if ( it == sigma.end() )
      throw rejected( "assignment does not cover variable '" + e.name() + "'" );
    return it->second;
  }
  case bool_op::constant: return e.value();
  case bool_op::negation: return !evaluate( a[0], sigma );
  case bool_op::conjunction: return evaluate( a[0], sigma ) && evaluate( a[1], sigma );
  case bool_op::disjunction: return evaluate( a[0], sigma ) || evaluate( a[1], sigma );
  case bool_op::exclusive_or: return evaluate( a[0], sigma ) != evaluate( a[1], sigma );
  case bool_op::majority:
  {
    auto const x = evaluate( a[0], sigma ), y = evaluate( a[1], sigma ), z = evaluate( a[2], sigma );
    return ( x && y ) || ( y && z ) || ( x && z );
  }
  }
  return false;
}

std::vector<std::string> variables( bool_expr const& e )
{
  std::vector<std::string> result;
  std::function<void( bool_expr const& )> walk = [&]( bool_expr const& x ) {
    if ( x.op() == bool_op::variable )
    {
      if ( std::find( result.begin(), result.end(), x.name() ) == result.end() )
        result.push_back( x.name() );
      return;
    }
    for ( auto const& y : x.args() )
      walk( y );
  };
  walk( e );
  return result;
}

std::size_t expr_size( bool_expr const& e )
{
  std::size_t n = 1;
  for ( auto const& a : e.args() )
    n += expr_size( a );
  return n;
}

circuit from_boolean( bool_expr const& e )
{
  auto const& a = e.args();
  switch ( e.op() )
  {
  case bool_op::variable: return mk_var( e.name() );
  case bool_op::constant: return mk_const( e.value() );
  case bool_op::negation: return mk_not( from_boolean( a[0] ) );
  case bool_op::conjunction: return mk_and( from_boolean( a[0] ), from_boolean( a[1] ) );
  case bool_op::disjunction: return mk_or( from_boolean( a[0] ), from_boolean( a[1] ) );
  case bool_op::exclusive_or: return mk_xor( from_boolean( a[0] ), from_boolean( a[1] ) );
  case bool_op::majority: return mk_maj( from_boolean( a[0] ), from_boolean( a[1] ), from_boolean( a[2] ) );
  }
  throw internal_error( "unknown Boolean operator" );
}

namespace
{

bool_expr shifted( bool_expr const& e, phase_param const& p )
{
  if ( p.is_variable() )
  {
    auto const v = bool_expr::var( p.name() );
    if ( e.op() == bool_op::constant )
      return e.value() ? bool_expr::negate( v ) : v;
    return bool_expr::exor( e, v );
  }
  if ( p.value() == phase::zero )
    return e;
  if ( e.op() == bool_op::constant )
    return bool_expr::constant( !e.value() );
  return bool_expr::negate( e );
}

bool_expr merged( bool_expr const& a, bool_expr const& b, bool_expr const& c )
{
  std::array<bool_expr const*, 3> const arms{ &a, &b, &c };
  auto const constants = std::count_if( arms.begin(), arms.end(), []( auto* x ) { return x->op() == bool_op::constant; } );
  if ( constants == 1 )
  {
    std::vector<bool_expr> rest;
    bool value = false;
    for ( auto* x : arms )
    {
      if ( x->op() == bool_op::constant )
        value = x->value();
      else
        rest.push_back( *x );
    }
    return value ? bool_expr::disj( rest[0], rest[1] ) : bool_expr::conj( rest[0], rest[1] );
  }
  return bool_expr::maj( a, b, c );
}

} // namespace

bool_expr to_boolean( circuit const& c )
{
  if ( c.num_outputs() != 1 )
    throw rejected( "to_boolean: expected a single-output circuit" );
  auto const g = detail::net::from_circuit( c );

  std::vector<std::optional<bool_expr>> value( g.v.size() );
  for ( auto n : g.canonical_order() )
  {
    auto const& x = g.v[n];
    auto const in = [&]( int q ) -> bool_expr const& { return *value[x.in[q].node]; };
    switch ( x.kind )
    {
    case node_kind::source: value[n] = bool_expr::constant( false ); break;
    case node_kind::phase_shift: value[n] = shifted( in( 0 ), x.param ); break;
    case node_kind::copy:
    case node_kind::output: value[n] = in( 0 ); break;
    case node_kind::merge: value[n] = merged( in( 0 ), in( 1 ), in( 2 ) ); break;
    }
  }
  return *value[g.outputs.front()];
}

bool_expr from_truth_table( truth_table const& table )
{
  if ( table.width() != 1 )
    throw rejected( "from_truth_table: expected a single-output table" );

  std::optional<bool_expr> sum;
  std::size_t ones = 0;
  for ( auto r = 0u; r < table.num_rows(); ++r )
  {
    if ( !table.get( r, 0 ) )
      continue;
    ++ones;
    std::optional<bool_expr> product;
    auto const n = table.num_vars();
    for ( auto k = 0u; k < n; ++k )
    {
      auto lit = bool_expr::var( table.vars()[k] );
      if ( ( ( r >> ( n - 1 - k ) ) & 1u ) == 0 )
        lit = bool_expr::negate( lit );
      product = product ? bool_expr::conj( *product, lit ) : lit;
    }
    if ( !product )
      product = bool_expr::constant( true );
    sum = sum ? bool_expr::disj( *sum, *product ) : *product;
  }
  if ( ones == 0 )
    return bool_expr::constant( false );
  if ( ones == table.num_rows() )
    return bool_expr::constant( true );
  return *sum;
}

circuit_bundle half_adder()
{
  auto const a = mk_var( "a" );
  auto const b = mk_var( "b" );
  circuit_bundle result;
  result.add( "carry", mk_and( a, b ) );
  result.add( "sum", mk_xor( a, b ) );
  result.set_interface( { "a", "b" } );
  return result;
}

circuit_bundle full_adder()
{
  auto const a = mk_var( "a" );
  auto const b = mk_var( "b" );
  auto const c_in = mk_var( "c_in" );
  circuit_bundle result;
  result.add( "c_out", mk_maj( a, b, c_in ) );
  result.add( "sum", compose_series( mk_xor( a, b ), c_in ) );
  result.set_interface( { "c_in", "a", "b" } );
  return result;
}

} // namespace wavelogic

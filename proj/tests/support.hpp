#pragma once

/* Test oracles written independently of the library evaluators, and random generators. */

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <wavelogic/boolean.hpp>
#include <wavelogic/circuit.hpp>

namespace wavelogic::test
{

using rng = std::mt19937;

/* node-by-node bit simulation over the edge list, memoised recursion from the outputs */
inline std::vector<bool> oracle_eval( circuit const& c, std::map<std::string, bool> const& sigma )
{
  std::map<node_id, node> nodes;
  for ( auto const& n : c.nodes() )
    nodes[n.id] = n;
  std::map<std::pair<node_id, int>, std::pair<node_id, int>> driver; /* (to, to_port) -> (from, from_port) */
  for ( auto const& e : c.edges() )
    driver[{ e.to, e.to_port }] = { e.from, e.from_port };

  std::map<node_id, bool> memo;
  std::function<bool( node_id )> value = [&]( node_id id ) -> bool {
    if ( auto it = memo.find( id ); it != memo.end() )
      return it->second;
    auto const& n = nodes.at( id );
    auto const in = [&]( int q ) { return value( driver.at( { id, q } ).first ); };
    bool v = false;
    switch ( n.kind )
    {
    case node_kind::source: v = false; break;
    case node_kind::phase_shift:
      v = in( 0 ) != ( n.param.is_variable() ? sigma.at( n.param.name() ) : n.param.value() == phase::pi );
      break;
    case node_kind::copy:
    case node_kind::output: v = in( 0 ); break;
    case node_kind::merge: v = ( int( in( 0 ) ) + int( in( 1 ) ) + int( in( 2 ) ) ) >= 2; break;
    }
    return memo[id] = v;
  };

  std::vector<bool> out;
  for ( auto o : c.outputs() )
    out.push_back( value( o ) );
  return out;
}

inline bool oracle_expr( bool_expr const& e, std::map<std::string, bool> const& sigma )
{
  auto const& a = e.args();
  switch ( e.op() )
  {
  case bool_op::variable: return sigma.at( e.name() );
  case bool_op::constant: return e.value();
  case bool_op::negation: return !oracle_expr( a[0], sigma );
  case bool_op::conjunction: return oracle_expr( a[0], sigma ) & oracle_expr( a[1], sigma );
  case bool_op::disjunction: return oracle_expr( a[0], sigma ) | oracle_expr( a[1], sigma );
  case bool_op::exclusive_or: return oracle_expr( a[0], sigma ) ^ oracle_expr( a[1], sigma );
  case bool_op::majority:
    return int( oracle_expr( a[0], sigma ) ) + int( oracle_expr( a[1], sigma ) ) + int( oracle_expr( a[2], sigma ) ) >= 2;
  }
  return false;
}

inline std::map<std::string, bool> assignment_of( std::vector<std::string> const& vars, std::size_t row )
{
  std::map<std::string, bool> sigma;
  for ( auto k = 0u; k < vars.size(); ++k )
    sigma[vars[k]] = ( ( row >> ( vars.size() - 1 - k ) ) & 1u ) != 0;
  return sigma;
}

/* rows with vars[0] as the most significant bit, outputs concatenated per row */
inline std::vector<bool> oracle_table( circuit const& c, std::vector<std::string> const& vars )
{
  std::vector<bool> table;
  for ( auto r = 0u; r < ( 1u << vars.size() ); ++r )
  {
    auto const row = oracle_eval( c, assignment_of( vars, r ) );
    table.insert( table.end(), row.begin(), row.end() );
  }
  return table;
}

inline std::vector<std::string> union_vars( circuit const& a, circuit const& b )
{
  auto vars = variables( a );
  for ( auto const& v : variables( b ) )
  {
    if ( std::find( vars.begin(), vars.end(), v ) == vars.end() )
      vars.push_back( v );
  }
  return vars;
}

inline bool oracle_equivalent( circuit const& a, circuit const& b )
{
  auto const vars = union_vars( a, b );
  return oracle_table( a, vars ) == oracle_table( b, vars );
}

inline bool_expr random_expr( rng& gen, std::vector<std::string> const& vars, int depth )
{
  std::uniform_int_distribution<int> pick( 0, depth <= 0 ? 1 : 6 );
  auto const leaf = [&]() {
    if ( std::uniform_int_distribution<int>( 0, 5 )( gen ) == 0 )
      return bool_expr::constant( std::uniform_int_distribution<int>( 0, 1 )( gen ) == 1 );
    return bool_expr::var( vars[std::uniform_int_distribution<std::size_t>( 0, vars.size() - 1 )( gen )] );
  };
  switch ( pick( gen ) )
  {
  case 0:
  case 1: return leaf();
  case 2: return bool_expr::negate( random_expr( gen, vars, depth - 1 ) );
  case 3: return bool_expr::conj( random_expr( gen, vars, depth - 1 ), random_expr( gen, vars, depth - 1 ) );
  case 4: return bool_expr::disj( random_expr( gen, vars, depth - 1 ), random_expr( gen, vars, depth - 1 ) );
  case 5: return bool_expr::exor( random_expr( gen, vars, depth - 1 ), random_expr( gen, vars, depth - 1 ) );
  default:
    return bool_expr::maj( random_expr( gen, vars, depth - 1 ), random_expr( gen, vars, depth - 1 ), random_expr( gen, vars, depth - 1 ) );
  }
}

/*! \brief Random valid circuit built from open wires.

  Starts from one or two sources and applies random shifts, copies and
  merges to open wires until the node budget is nearly spent; every open
  wire then gets an output. Every node therefore lies on a source-to-output
  path.
*/
inline circuit random_dag( rng& gen, std::size_t max_nodes, std::vector<std::string> const& vars )
{
  std::vector<node> nodes;
  std::vector<edge> edges;
  std::vector<std::pair<node_id, int>> open;
  auto const add = [&]( node_kind k, phase_param p = {} ) {
    auto const id = static_cast<node_id>( nodes.size() );
    nodes.push_back( { id, k, std::move( p ) } );
    return id;
  };
  auto const take = [&]() {
    auto const i = std::uniform_int_distribution<std::size_t>( 0, open.size() - 1 )( gen );
    auto const w = open[i];
    open.erase( open.begin() + i );
    return w;
  };
  auto const random_param = [&]() {
    auto const k = std::uniform_int_distribution<std::size_t>( 0, vars.size() + 1 )( gen );
    if ( k < 2 )
      return phase_param::constant( k == 1 );
    return phase_param::variable( vars[k - 2] );
  };

  auto const sources = std::uniform_int_distribution<int>( 1, 2 )( gen );
  for ( auto i = 0; i < sources; ++i )
    open.push_back( { add( node_kind::source ), 0 } );

  while ( true )
  {
    auto const remaining = static_cast<long>( max_nodes ) - static_cast<long>( nodes.size() ) - static_cast<long>( open.size() );
    std::vector<int> moves;
    if ( remaining >= 1 )
      moves.push_back( 0 );
    if ( remaining >= 4 )
      moves.push_back( 1 );
    if ( remaining >= 1 && open.size() >= 3 )
      moves.push_back( 2 );
    if ( moves.empty() || std::uniform_int_distribution<int>( 0, 9 )( gen ) == 0 )
      break;
    switch ( moves[std::uniform_int_distribution<std::size_t>( 0, moves.size() - 1 )( gen )] )
    {
    case 0:
    {
      auto const w = take();
      auto const n = add( node_kind::phase_shift, random_param() );
      edges.push_back( { w.first, w.second, n, 0 } );
      open.push_back( { n, 0 } );
      break;
    }
    case 1:
    {
      auto const w = take();
      auto const n = add( node_kind::copy );
      edges.push_back( { w.first, w.second, n, 0 } );
      for ( auto j = 0; j < 3; ++j )
        open.push_back( { n, j } );
      break;
    }
    default:
    {
      auto const n = add( node_kind::merge );
      for ( auto q = 0; q < 3; ++q )
      {
        auto const w = take();
        edges.push_back( { w.first, w.second, n, q } );
      }
      open.push_back( { n, 0 } );
      break;
    }
    }
  }

  std::vector<node_id> outputs;
  while ( !open.empty() )
  {
    auto const w = take();
    auto const o = add( node_kind::output );
    edges.push_back( { w.first, w.second, o, 0 } );
    outputs.push_back( o );
  }
  return circuit::from_parts( std::move( nodes ), std::move( edges ), std::move( outputs ) );
}

} // namespace wavelogic::test

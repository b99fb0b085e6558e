#include <wavelogic/circuit.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "net.hpp"

namespace wavelogic
{

using detail::net;
using detail::port;

bool is_identifier( std::string_view name ) noexcept
{
  if ( name.empty() || name.front() < 'a' || name.front() > 'z' )
    return false;
  return std::all_of( name.begin(), name.end(), []( char ch ) {
    return ( ch >= 'a' && ch <= 'z' ) || ( ch >= '0' && ch <= '9' ) || ch == '_';
  } );
}

phase_param phase_param::constant( phase p )
{
  phase_param result;
  result.value_ = p;
  return result;
}

phase_param phase_param::variable( std::string name )
{
  if ( !is_identifier( name ) )
  {
    throw rejected( "invalid variable name '" + name + "'" );
  }
  phase_param result;
  result.value_ = std::move( name );
  return result;
}

phase phase_param::value() const
{
  if ( is_variable() )
    throw rejected( "phase parameter '" + name() + "' is a variable" );
  return std::get<phase>( value_ );
}

std::string const& phase_param::name() const
{
  if ( !is_variable() )
    throw rejected( "phase parameter is a constant" );
  return std::get<std::string>( value_ );
}

std::string phase_param::to_string() const
{
  if ( is_variable() )
    return name();
  return value() == phase::pi ? "pi" : "0";
}

std::optional<phase_param> add( phase_param const& a, phase_param const& b )
{
  if ( !a.is_variable() && !b.is_variable() )
    return phase_param::constant( a.value() + b.value() );
  if ( !a.is_variable() && a.value() == phase::zero )
    return b;
  if ( !b.is_variable() && b.value() == phase::zero )
    return a;
  if ( a.is_variable() && b.is_variable() && a.name() == b.name() )
    return phase_param::constant( phase::zero );
  return std::nullopt;
}

char const* to_string( node_kind k ) noexcept
{
  switch ( k )
  {
  case node_kind::source: return "source";
  case node_kind::phase_shift: return "phase";
  case node_kind::copy: return "copy";
  case node_kind::merge: return "merge";
  case node_kind::output: return "output";
  }
  return "?";
}

char const* to_string( violation_kind k ) noexcept
{
  switch ( k )
  {
  case violation_kind::duplicate_id: return "duplicate-id";
  case violation_kind::bad_edge: return "bad-edge";
  case violation_kind::port_conflict: return "port-conflict";
  case violation_kind::arity: return "arity";
  case violation_kind::cycle: return "cycle";
  case violation_kind::unreachable: return "unreachable";
  case violation_kind::no_output: return "no-output";
  case violation_kind::output_list: return "output-list";
  }
  return "?";
}

circuit circuit::from_parts( std::vector<node> nodes, std::vector<edge> edges, std::vector<node_id> outputs )
{
  circuit c;
  c.nodes_ = std::move( nodes );
  c.edges_ = std::move( edges );
  c.outputs_ = std::move( outputs );
  return c;
}

node const* circuit::find( node_id id ) const noexcept
{
  /* canonical circuits store node i at position i */
  if ( id < nodes_.size() && nodes_[id].id == id )
    return &nodes_[id];
  auto it = std::find_if( nodes_.begin(), nodes_.end(), [id]( auto const& n ) { return n.id == id; } );
  return it == nodes_.end() ? nullptr : &*it;
}

/* constructors */

namespace
{

net single_wire( phase_param param )
{
  net r;
  auto const s = r.add( node_kind::source );
  auto const p = r.add( node_kind::phase_shift, std::move( param ) );
  auto const o = r.add( node_kind::output );
  r.connect( { s, 0 }, { p, 0 } );
  r.connect( { p, 0 }, { o, 0 } );
  r.outputs = { o };
  return r;
}

void require_single_output( circuit const& c, char const* what )
{
  if ( c.num_outputs() != 1 )
  {
    throw rejected( std::string( what ) + ": expected a single-output circuit, got " + std::to_string( c.num_outputs() ) + " outputs" );
  }
}

void require_single_source( net const& n, char const* what )
{
  if ( n.sources().size() != 1 )
  {
    throw rejected( std::string( what ) + ": expected exactly one source, got " + std::to_string( n.sources().size() ) );
  }
}

/* Removes the source and the output of an appended single-source,
   single-output block and wires `feed` into it; returns the port that
   carries the block's result. */
port splice( net& r, std::vector<int> const& map, net const& block, port feed )
{
  auto const src = map[block.sources().front()];
  auto const out = map[block.outputs.front()];
  auto const succ = r.sink_of( { src, 0 } );
  auto const pred = r.source_of( { out, 0 } );
  r.erase( src );
  r.erase( out );
  if ( succ.node == out )
    return feed;
  r.connect( feed, succ );
  return pred;
}

} // namespace

circuit mk_var( std::string const& name )
{
  return single_wire( phase_param::variable( name ) ).to_circuit();
}

circuit mk_const( bool bit )
{
  return single_wire( phase_param::constant( bit ) ).to_circuit();
}

circuit mk_shift( phase p )
{
  return single_wire( phase_param::constant( p ) ).to_circuit();
}

circuit compose_series( circuit const& lower, circuit const& upper )
{
  require_single_output( lower, "compose_series" );
  auto const lo = net::from_circuit( lower );
  auto const up = net::from_circuit( upper );
  require_single_source( up, "compose_series" );

  net r;
  auto const lo_map = r.append( lo );
  auto const up_map = r.append( up );

  auto const lo_out = lo_map[lo.outputs.front()];
  auto const pred = r.source_of( { lo_out, 0 } );
  r.erase( lo_out );

  auto const up_src = up_map[up.sources().front()];
  auto const succ = r.sink_of( { up_src, 0 } );
  r.erase( up_src );
  r.connect( pred, succ );

  for ( auto o : up.outputs )
  {
    r.outputs.push_back( up_map[o] );
  }
  return r.to_circuit();
}

circuit compose_parallel( circuit const& left, circuit const& right )
{
  auto const l = net::from_circuit( left );
  auto const rn = net::from_circuit( right );
  net r;
  auto const lm = r.append( l );
  auto const rm = r.append( rn );
  for ( auto o : l.outputs )
    r.outputs.push_back( lm[o] );
  for ( auto o : rn.outputs )
    r.outputs.push_back( rm[o] );
  return r.to_circuit();
}

circuit mk_maj( circuit const& x, circuit const& y, circuit const& z )
{
  std::array<circuit const*, 3> const args{ &x, &y, &z };
  std::array<net, 3> blocks;
  for ( auto k = 0u; k < 3u; ++k )
  {
    require_single_output( *args[k], "mk_maj" );
    blocks[k] = net::from_circuit( *args[k] );
    require_single_source( blocks[k], "mk_maj" );
  }

  net r;
  auto const s = r.add( node_kind::source );
  auto const c = r.add( node_kind::copy );
  auto const m = r.add( node_kind::merge );
  r.connect( { s, 0 }, { c, 0 } );
  for ( auto k = 0; k < 3; ++k )
  {
    auto const map = r.append( blocks[k] );
    auto const result = splice( r, map, blocks[k], { c, k } );
    r.connect( result, { m, k } );
  }
  auto const o = r.add( node_kind::output );
  r.connect( { m, 0 }, { o, 0 } );
  r.outputs = { o };
  return r.to_circuit();
}

circuit mk_not( circuit const& x )
{
  return compose_series( x, mk_shift( phase::pi ) );
}

circuit mk_xor( circuit const& x, circuit const& y )
{
  return compose_series( x, y );
}

circuit mk_xnor( circuit const& x, circuit const& y )
{
  return mk_not( mk_xor( x, y ) );
}

circuit mk_and( circuit const& x, circuit const& y )
{
  return mk_maj( x, y, mk_const( false ) );
}

circuit mk_or( circuit const& x, circuit const& y )
{
  return mk_maj( x, y, mk_const( true ) );
}

circuit mk_nand( circuit const& x, circuit const& y )
{
  return mk_not( mk_and( x, y ) );
}

circuit substitute( circuit const& c, std::string const& name, bool bit )
{
  auto nodes = c.nodes();
  for ( auto& n : nodes )
  {
    if ( n.kind == node_kind::phase_shift && n.param.is_variable() && n.param.name() == name )
      n.param = phase_param::constant( bit );
  }
  return circuit::from_parts( std::move( nodes ), c.edges(), c.outputs() );
}

std::vector<std::string> variables( circuit const& c )
{
  std::unordered_map<node_id, std::size_t> index;
  for ( auto i = 0u; i < c.nodes().size(); ++i )
    index[c.nodes()[i].id] = i;

  std::vector<std::size_t> indegree( c.nodes().size(), 0 );
  std::vector<std::vector<std::size_t>> succ( c.nodes().size() );
  for ( auto const& e : c.edges() )
  {
    auto const f = index.find( e.from );
    auto const t = index.find( e.to );
    if ( f == index.end() || t == index.end() )
      continue;
    succ[f->second].push_back( t->second );
    ++indegree[t->second];
  }

  auto const by_id = [&]( std::size_t a, std::size_t b ) { return c.nodes()[a].id > c.nodes()[b].id; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype( by_id )> ready( by_id );
  for ( auto i = 0u; i < indegree.size(); ++i )
  {
    if ( indegree[i] == 0 )
      ready.push( i );
  }

  std::vector<std::string> result;
  std::set<std::string> seen;
  while ( !ready.empty() )
  {
    auto const i = ready.top();
    ready.pop();
    auto const& n = c.nodes()[i];
    if ( n.kind == node_kind::phase_shift && n.param.is_variable() && seen.insert( n.param.name() ).second )
      result.push_back( n.param.name() );
    for ( auto j : succ[i] )
    {
      if ( --indegree[j] == 0 )
        ready.push( j );
    }
  }
  return result;
}

std::vector<violation> validate( circuit const& c )
{
  std::vector<violation> result;
  auto const report = [&]( violation_kind k, std::optional<node_id> n, std::string msg ) {
    result.push_back( { k, n, std::move( msg ) } );
  };

  std::unordered_map<node_id, std::size_t> index;
  for ( auto i = 0u; i < c.nodes().size(); ++i )
  {
    auto const& n = c.nodes()[i];
    if ( !index.emplace( n.id, i ).second )
      report( violation_kind::duplicate_id, n.id, "node id " + std::to_string( n.id ) + " used more than once" );
  }

  auto const count = c.nodes().size();
  std::vector<std::array<int, 3>> in_uses( count, { 0, 0, 0 } );
  std::vector<std::array<int, 3>> out_uses( count, { 0, 0, 0 } );
  std::vector<std::vector<std::size_t>> succ( count ), pred( count );

  for ( auto const& e : c.edges() )
  {
    auto const f = index.find( e.from );
    auto const t = index.find( e.to );
    auto const edge_text = std::to_string( e.from ) + "." + std::to_string( e.from_port ) + " -> " + std::to_string( e.to ) + "." + std::to_string( e.to_port );
    if ( f == index.end() || t == index.end() )
    {
      report( violation_kind::bad_edge, std::nullopt, "edge " + edge_text + " references a missing node" );
      continue;
    }
    auto const& fn = c.nodes()[f->second];
    auto const& tn = c.nodes()[t->second];
    if ( e.from_port < 0 || e.from_port >= output_arity( fn.kind ) || e.to_port < 0 || e.to_port >= input_arity( tn.kind ) )
    {
      report( violation_kind::bad_edge, std::nullopt, "edge " + edge_text + " uses a port the node does not have" );
      continue;
    }
    ++out_uses[f->second][e.from_port];
    ++in_uses[t->second][e.to_port];
    succ[f->second].push_back( t->second );
    pred[t->second].push_back( f->second );
  }

  for ( auto i = 0u; i < count; ++i )
  {
    auto const& n = c.nodes()[i];
    auto const check = [&]( std::array<int, 3> const& uses, int arity, char const* side ) {
      for ( auto p = 0; p < arity; ++p )
      {
        if ( uses[p] == 0 )
          report( violation_kind::arity, n.id, std::string( to_string( n.kind ) ) + " node " + std::to_string( n.id ) + " has no edge on " + side + " port " + std::to_string( p ) );
        else if ( uses[p] > 1 )
          report( violation_kind::port_conflict, n.id, std::string( to_string( n.kind ) ) + " node " + std::to_string( n.id ) + " has " + std::to_string( uses[p] ) + " edges on " + side + " port " + std::to_string( p ) );
      }
    };
    check( in_uses[i], input_arity( n.kind ), "input" );
    check( out_uses[i], output_arity( n.kind ), "output" );
  }

  /* outputs list */
  std::size_t output_nodes = 0;
  for ( auto const& n : c.nodes() )
  {
    if ( n.kind == node_kind::output )
      ++output_nodes;
  }
  if ( c.outputs().empty() || output_nodes == 0 )
    report( violation_kind::no_output, std::nullopt, "circuit has no output" );
  {
    std::set<node_id> listed;
    for ( auto o : c.outputs() )
    {
      auto const it = index.find( o );
      if ( it == index.end() || c.nodes()[it->second].kind != node_kind::output )
        report( violation_kind::output_list, o, "output list entry " + std::to_string( o ) + " is not an output node" );
      else if ( !listed.insert( o ).second )
        report( violation_kind::output_list, o, "output " + std::to_string( o ) + " listed twice" );
    }
    for ( auto const& n : c.nodes() )
    {
      if ( n.kind == node_kind::output && !listed.count( n.id ) )
        report( violation_kind::output_list, n.id, "output node " + std::to_string( n.id ) + " missing from the output list" );
    }
  }

  /* cycles (Kahn) */
  {
    std::vector<std::size_t> indegree( count, 0 );
    for ( auto i = 0u; i < count; ++i )
      indegree[i] = pred[i].size();
    std::vector<std::size_t> stack;
    for ( auto i = 0u; i < count; ++i )
    {
      if ( indegree[i] == 0 )
        stack.push_back( i );
    }
    std::size_t visited = 0;
    while ( !stack.empty() )
    {
      auto const i = stack.back();
      stack.pop_back();
      ++visited;
      for ( auto j : succ[i] )
      {
        if ( --indegree[j] == 0 )
          stack.push_back( j );
      }
    }
    if ( visited != count )
    {
      for ( auto i = 0u; i < count; ++i )
      {
        if ( indegree[i] != 0 )
        {
          report( violation_kind::cycle, c.nodes()[i].id, "node " + std::to_string( c.nodes()[i].id ) + " lies on a cycle" );
          break;
        }
      }
    }
  }

  /* every node on a source-to-output path */
  {
    auto const flood = [&]( node_kind start, std::vector<std::vector<std::size_t>> const& adj ) {
      std::vector<bool> mark( count, false );
      std::vector<std::size_t> stack;
      for ( auto i = 0u; i < count; ++i )
      {
        if ( c.nodes()[i].kind == start )
        {
          mark[i] = true;
          stack.push_back( i );
        }
      }
      while ( !stack.empty() )
      {
        auto const i = stack.back();
        stack.pop_back();
        for ( auto j : adj[i] )
        {
          if ( !mark[j] )
          {
            mark[j] = true;
            stack.push_back( j );
          }
        }
      }
      return mark;
    };
    auto const from_source = flood( node_kind::source, succ );
    auto const to_output = flood( node_kind::output, pred );
    for ( auto i = 0u; i < count; ++i )
    {
      if ( !from_source[i] || !to_output[i] )
        report( violation_kind::unreachable, c.nodes()[i].id, "node " + std::to_string( c.nodes()[i].id ) + " is not on a path from a source to an output" );
    }
  }

  return result;
}

std::string describe( std::vector<violation> const& violations )
{
  std::string text;
  for ( auto const& v : violations )
  {
    if ( !text.empty() )
      text += "; ";
    text += to_string( v.kind );
    text += ": ";
    text += v.message;
  }
  return text;
}

std::string to_string( circuit_cost const& cost )
{
  return "(" + std::to_string( cost.merges ) + "," + std::to_string( cost.copies ) + "," + std::to_string( cost.phase_shifts ) + ")";
}

circuit_cost cost( circuit const& c )
{
  circuit_cost result;
  for ( auto const& n : c.nodes() )
  {
    switch ( n.kind )
    {
    case node_kind::merge: ++result.merges; break;
    case node_kind::copy: ++result.copies; break;
    case node_kind::phase_shift: ++result.phase_shifts; break;
    default: break;
    }
  }
  return result;
}

circuit canonical( circuit const& c )
{
  return net::from_circuit( c ).to_circuit();
}

std::uint64_t fingerprint( circuit const& c )
{
  return detail::fnv1a( detail::canonical_text( canonical( c ) ) );
}

bool isomorphic( circuit const& a, circuit const& b )
{
  return detail::canonical_text( canonical( a ) ) == detail::canonical_text( canonical( b ) );
}

/* bundles */

void circuit_bundle::add( std::string name, circuit c )
{
  require_single_output( c, "circuit_bundle" );
  for ( auto const& [n, _] : outputs_ )
  {
    if ( n == name )
      throw rejected( "duplicate bundle output '" + name + "'" );
  }
  outputs_.emplace_back( std::move( name ), std::move( c ) );
}

void circuit_bundle::set_interface( std::vector<std::string> names )
{
  interface_ = std::move( names );
}

circuit const& circuit_bundle::at( std::string_view name ) const
{
  for ( auto const& [n, c] : outputs_ )
  {
    if ( n == name )
      return c;
  }
  throw rejected( "no bundle output named '" + std::string( name ) + "'" );
}

std::vector<std::string> variables( circuit_bundle const& b )
{
  std::vector<std::string> result;
  for ( auto const& [_, c] : b.outputs() )
  {
    for ( auto& v : variables( c ) )
    {
      if ( std::find( result.begin(), result.end(), v ) == result.end() )
        result.push_back( std::move( v ) );
    }
  }
  if ( b.interface().empty() )
    return result;
  for ( auto const& v : result )
  {
    if ( std::find( b.interface().begin(), b.interface().end(), v ) == b.interface().end() )
      throw rejected( "bundle interface does not declare variable '" + v + "'" );
  }
  return b.interface();
}

} // namespace wavelogic

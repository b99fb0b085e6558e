#include "net.hpp"

#include <algorithm>
#include <unordered_map>

namespace wavelogic::detail
{

int net::add( node_kind kind, phase_param param )
{
  vertex x;
  x.kind = kind;
  x.param = std::move( param );
  v.push_back( std::move( x ) );
  return static_cast<int>( v.size() ) - 1;
}

void net::connect( port from, port to )
{
  v[from.node].out[from.index] = to;
  v[to.node].in[to.index] = from;
}

std::vector<int> net::append( net const& other )
{
  auto const offset = static_cast<int>( v.size() );
  std::vector<int> map( other.v.size() );
  for ( auto i = 0u; i < other.v.size(); ++i )
  {
    map[i] = offset + static_cast<int>( i );
  }
  for ( auto const& x : other.v )
  {
    auto y = x;
    for ( auto& p : y.in )
    {
      if ( p.valid() )
        p.node += offset;
    }
    for ( auto& p : y.out )
    {
      if ( p.valid() )
        p.node += offset;
    }
    v.push_back( std::move( y ) );
  }
  return map;
}

std::vector<int> net::sources() const
{
  std::vector<int> result;
  for ( auto i = 0u; i < v.size(); ++i )
  {
    if ( v[i].alive && v[i].kind == node_kind::source )
      result.push_back( static_cast<int>( i ) );
  }
  return result;
}

net net::from_circuit( circuit const& c )
{
  if ( auto const problems = validate( c ); !problems.empty() )
  {
    throw rejected( "invalid circuit: " + describe( problems ) );
  }

  net result;
  std::unordered_map<node_id, int> index;
  for ( auto const& n : c.nodes() )
  {
    index[n.id] = result.add( n.kind, n.param );
  }
  for ( auto const& e : c.edges() )
  {
    result.connect( { index.at( e.from ), e.from_port }, { index.at( e.to ), e.to_port } );
  }
  for ( auto o : c.outputs() )
  {
    result.outputs.push_back( index.at( o ) );
  }
  return result;
}

std::vector<int> net::canonical_order() const
{
  std::vector<int> order;
  std::vector<bool> seen( v.size(), false );
  std::vector<std::pair<int, int>> stack;

  for ( auto o : outputs )
  {
    if ( seen[o] )
      continue;
    seen[o] = true;
    stack.emplace_back( o, 0 );
    while ( !stack.empty() )
    {
      auto& [n, next] = stack.back();
      if ( next < input_arity( v[n].kind ) )
      {
        auto const pred = v[n].in[next++].node;
        if ( pred >= 0 && !seen[pred] )
        {
          seen[pred] = true;
          stack.emplace_back( pred, 0 );
        }
        continue;
      }
      order.push_back( n );
      stack.pop_back();
    }
  }
  return order;
}

circuit net::to_circuit() const
{
  auto const order = canonical_order();
  std::vector<node_id> id( v.size(), 0 );
  for ( auto i = 0u; i < order.size(); ++i )
  {
    id[order[i]] = static_cast<node_id>( i );
  }

  std::vector<node> nodes;
  std::vector<edge> edges;
  nodes.reserve( order.size() );
  for ( auto n : order )
  {
    nodes.push_back( { id[n], v[n].kind, v[n].param } );
    for ( auto q = 0; q < input_arity( v[n].kind ); ++q )
    {
      auto const& src = v[n].in[q];
      edges.push_back( { id[src.node], src.index, id[n], q } );
    }
  }

  std::vector<node_id> outs;
  for ( auto o : outputs )
  {
    outs.push_back( id[o] );
  }
  return circuit::from_parts( std::move( nodes ), std::move( edges ), std::move( outs ) );
}

std::string canonical_text( circuit const& c )
{
  /* expects canonical ids 0..n-1 and edges sorted by sink */
  std::string text;
  auto e = c.edges().begin();
  for ( auto const& n : c.nodes() )
  {
    text += to_string( n.kind )[0];
    if ( n.kind == node_kind::phase_shift )
    {
      text += '<';
      text += n.param.to_string();
      text += '>';
    }
    text += '(';
    for ( auto q = 0; q < input_arity( n.kind ); ++q, ++e )
    {
      text += std::to_string( e->from );
      text += '.';
      text += std::to_string( e->from_port );
      text += ',';
    }
    text += ')';
  }
  text += '|';
  for ( auto o : c.outputs() )
  {
    text += std::to_string( o );
    text += ',';
  }
  return text;
}

std::uint64_t fnv1a( std::string const& text )
{
  std::uint64_t h = 14695981039346656037ull;
  for ( unsigned char ch : text )
  {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace wavelogic::detail

#include <wavelogic/engine.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <wavelogic/semantics.hpp>

#include "net.hpp"
#include "pattern_build.hpp"

namespace wavelogic
{

namespace
{

using detail::net;
using detail::port;

constexpr std::array<std::array<int, 3>, 6> permutations{ { { 0, 1, 2 }, { 0, 2, 1 }, { 1, 0, 2 }, { 1, 2, 0 }, { 2, 0, 1 }, { 2, 1, 0 } } };

struct region
{
  port entry;
  port exit;
  std::vector<int> nodes;
};

/* partial match; copied on every branch of the search */
struct state
{
  std::vector<char> used;
  /* pattern nodes, and nodes of repeated regions */
  std::vector<int> nodes;
  phase_binding phases;
  std::map<std::string, region> regions;
  std::vector<port> leaves;
};

struct raw_match
{
  port entry;
  /* term patterns only: input port consuming the pattern's result */
  port exit_sink;
  state s;
};

/* `required` with index -1 accepts any output port of its node */
bool meets( port p, std::optional<port> const& required )
{
  return !required || ( required->index < 0 ? p.node == required->node : p == *required );
}

class matcher
{
public:
  using term_continuation = std::function<void( port, state& )>;
  using fan_continuation = std::function<void( state& )>;

  matcher( net const& g, rewrite_rule const& rule ) : g_( g ), rule_( rule ) {}

  /* matches `t` backwards from output port `out`; calls `k` with the entry port */
  void match_term( term const& t, port out, std::optional<port> required, state const& s, term_continuation const& k ) const
  {
    switch ( t.k )
    {
    case term::kind::wire:
      if ( meets( out, required ) )
      {
        auto s1 = s;
        k( out, s1 );
      }
      return;

    case term::kind::region:
      match_region( t.name, out, required, s, k );
      return;

    case term::kind::shift:
    {
      auto const n = out.node;
      auto const& x = g_.v[n];
      if ( x.kind != node_kind::phase_shift || s.used[n] )
        return;
      auto const in = x.in[0];
      if ( !meets( in, required ) )
        return;
      for ( auto& s1 : bind_param( t.param, x.param, s ) )
      {
        s1.used[n] = 1;
        s1.nodes.push_back( n );
        k( in, s1 );
      }
      return;
    }

    case term::kind::seq:
      match_term( t.parts[1], out, std::nullopt, s, [&]( port mid, state& s1 ) { match_term( t.parts[0], mid, required, s1, k ); } );
      return;

    case term::kind::maj:
    {
      auto const m = out.node;
      if ( g_.v[m].kind != node_kind::merge || s.used[m] )
        return;
      for ( auto c = 0; c < static_cast<int>( g_.v.size() ); ++c )
      {
        auto const& x = g_.v[c];
        if ( !x.alive || x.kind != node_kind::copy || s.used[c] || !meets( x.in[0], required ) )
          continue;
        for ( auto const& sigma : permutations )
        {
          auto s1 = s;
          s1.used[m] = s1.used[c] = 1;
          s1.nodes.push_back( m );
          s1.nodes.push_back( c );
          match_branches( t, m, c, sigma, 0, 0u, s1, [&]( state& s2 ) { k( x.in[0], s2 ); } );
        }
      }
      return;
    }
    }
  }

  /* matches `f` forwards from output port `src` */
  void match_fan( fan const& f, port src, state const& s, fan_continuation const& k ) const
  {
    auto const sink = g_.sink_of( src );
    switch ( f.k )
    {
    case fan::kind::leaf:
    {
      auto s1 = s;
      s1.leaves[f.leaf] = sink;
      k( s1 );
      return;
    }
    case fan::kind::shift:
    {
      auto const& x = g_.v[sink.node];
      if ( x.kind != node_kind::phase_shift || s.used[sink.node] )
        return;
      for ( auto& s1 : bind_param( f.param, x.param, s ) )
      {
        s1.used[sink.node] = 1;
        s1.nodes.push_back( sink.node );
        match_fan( f.parts[0], { sink.node, 0 }, s1, k );
      }
      return;
    }
    case fan::kind::copy:
    {
      if ( g_.v[sink.node].kind != node_kind::copy || s.used[sink.node] )
        return;
      for ( auto const& tau : permutations )
      {
        auto s1 = s;
        s1.used[sink.node] = 1;
        s1.nodes.push_back( sink.node );
        match_fan_branches( f, sink.node, tau, 0, s1, k );
      }
      return;
    }
    }
  }

  /*! \brief Closed single-entry single-exit region between two output ports.

    Every node must be a shift, copy or merge not used by the match; inputs
    come from the region or `entry`, outputs go to the region or leave
    through `exit`.
  */
  std::optional<region> make_region( port entry, port exit, state const& s ) const
  {
    region r{ entry, exit, {} };
    if ( entry == exit )
      return r;
    if ( exit.node == entry.node )
      return std::nullopt;

    std::vector<char> inside( g_.v.size(), 0 );
    std::vector<int> stack{ exit.node };
    inside[exit.node] = 1;
    while ( !stack.empty() )
    {
      auto const n = stack.back();
      stack.pop_back();
      auto const& x = g_.v[n];
      if ( s.used[n] || x.kind == node_kind::source || x.kind == node_kind::output )
        return std::nullopt;
      r.nodes.push_back( n );
      for ( auto q = 0; q < input_arity( x.kind ); ++q )
      {
        auto const src = x.in[q];
        if ( src == entry )
          continue;
        if ( src.node == entry.node )
          return std::nullopt;
        if ( !inside[src.node] )
        {
          inside[src.node] = 1;
          stack.push_back( src.node );
        }
      }
    }
    for ( auto n : r.nodes )
    {
      for ( auto j = 0; j < output_arity( g_.v[n].kind ); ++j )
      {
        if ( port{ n, j } != exit && !inside[g_.v[n].out[j].node] )
          return std::nullopt;
      }
    }
    if ( !inside[g_.sink_of( entry ).node] )
      return std::nullopt;
    std::sort( r.nodes.begin(), r.nodes.end() );
    return r;
  }

  /* structural unfolding from the exit; equal signatures compute equal functions */
  std::string signature( region const& r ) const
  {
    std::map<std::pair<int, int>, std::string> memo;
    std::function<std::string( port )> walk = [&]( port p ) -> std::string {
      if ( p == r.entry )
        return "e";
      if ( auto const it = memo.find( { p.node, p.index } ); it != memo.end() )
        return it->second;
      auto const& x = g_.v[p.node];
      std::string text = to_string( x.kind );
      if ( x.kind == node_kind::phase_shift )
        text += "<" + x.param.to_string() + ">";
      text += "." + std::to_string( p.index ) + "(";
      for ( auto q = 0; q < input_arity( x.kind ); ++q )
        text += walk( x.in[q] ) + ",";
      text += ")";
      memo[{ p.node, p.index }] = text;
      return text;
    };
    return walk( r.exit );
  }

private:
  void match_region( std::string const& name, port out, std::optional<port> required, state const& s, term_continuation const& k ) const
  {
    if ( !required )
      throw internal_error( "wire metavariable '" + name + "' has no anchored entry" );

    std::vector<port> entries;
    if ( required->index >= 0 )
      entries.push_back( *required );
    else
    {
      for ( auto j = 0; j < output_arity( g_.v[required->node].kind ); ++j )
        entries.push_back( { required->node, j } );
    }

    auto const bound = s.regions.find( name );
    for ( auto const& e : entries )
    {
      auto r = make_region( e, out, s );
      if ( !r )
        continue;
      if ( bound != s.regions.end() && signature( bound->second ) != signature( *r ) )
        continue;
      auto s1 = s;
      for ( auto n : r->nodes )
        s1.used[n] = 1;
      if ( bound == s.regions.end() )
        s1.regions.emplace( name, std::move( *r ) );
      else
        s1.nodes.insert( s1.nodes.end(), r->nodes.begin(), r->nodes.end() );
      k( e, s1 );
    }
  }

  void match_branches( term const& t, int m, int c, std::array<int, 3> const& sigma, int i, unsigned taken, state const& s,
                       fan_continuation const& k ) const
  {
    if ( i == 3 )
    {
      auto s1 = s;
      k( s1 );
      return;
    }
    match_term( t.parts[i], g_.v[m].in[sigma[i]], port{ c, -1 }, s, [&]( port e, state& s1 ) {
      if ( taken & ( 1u << e.index ) )
        return;
      match_branches( t, m, c, sigma, i + 1, taken | ( 1u << e.index ), s1, k );
    } );
  }

  void match_fan_branches( fan const& f, int n, std::array<int, 3> const& tau, int i, state const& s, fan_continuation const& k ) const
  {
    if ( i == 3 )
    {
      auto s1 = s;
      k( s1 );
      return;
    }
    match_fan( f.parts[i], { n, tau[i] }, s, [&]( state& s1 ) { match_fan_branches( f, n, tau, i + 1, s1, k ); } );
  }

  bool bind_meta( state& s, std::string const& name, phase_param const& value ) const
  {
    auto const* m = rule_.find_meta( name );
    if ( m == nullptr )
      throw internal_error( "rule " + rule_.name + " has no metavariable '" + name + "'" );
    if ( m->sort == meta_sort::constant_phase && value.is_variable() )
      return false;
    auto const [it, inserted] = s.phases.emplace( name, value );
    return inserted || it->second == value;
  }

  std::vector<state> bind_param( phase_pattern const& p, phase_param const& value, state const& s ) const
  {
    std::vector<state> out;
    switch ( p.k )
    {
    case phase_pattern::kind::constant:
      if ( !value.is_variable() && value.value() == p.value )
        out.push_back( s );
      break;
    case phase_pattern::kind::meta:
    {
      auto s1 = s;
      if ( bind_meta( s1, p.lhs, value ) )
        out.push_back( std::move( s1 ) );
      break;
    }
    case phase_pattern::kind::sum:
    {
      auto const zero = phase_param::constant( phase::zero );
      std::vector<std::pair<phase_param, phase_param>> splits;
      if ( value.is_variable() )
        splits = { { zero, value }, { value, zero } };
      else
        splits = { { zero, value }, { phase_param::constant( phase::pi ), phase_param::constant( value.value() + phase::pi ) } };
      for ( auto const& [a, b] : splits )
      {
        auto s1 = s;
        if ( bind_meta( s1, p.lhs, a ) && bind_meta( s1, p.rhs, b ) && add( s1.phases.at( p.lhs ), s1.phases.at( p.rhs ) ) == value )
          out.push_back( std::move( s1 ) );
      }
      break;
    }
    }
    return out;
  }

  net const& g_;
  rewrite_rule const& rule_;
};

/* converts a rewritten net back, rejecting dangling or dead vertices */
circuit finish( net const& h )
{
  auto const order = h.canonical_order();
  auto const alive = std::count_if( h.v.begin(), h.v.end(), []( auto const& x ) { return x.alive; } );
  if ( static_cast<std::size_t>( alive ) != order.size() ||
       std::any_of( order.begin(), order.end(), [&]( int n ) { return !h.v[n].alive; } ) )
    throw internal_error( "rewrite left a disconnected vertex" );
  auto result = h.to_circuit();
  if ( auto const problems = validate( result ); !problems.empty() )
    throw internal_error( "rewrite produced an invalid circuit: " + describe( problems ) );
  return result;
}

circuit rewrite( net const& g, pattern const& target, raw_match const& m, phase_binding const& binding )
{
  net h = g;
  for ( auto n : m.s.nodes )
    h.erase( n );
  for ( auto const& [name, r] : m.s.regions )
  {
    for ( auto n : r.nodes )
      h.erase( n );
  }

  auto const clone_region = [&]( net& x, std::string const& name, port src ) -> port {
    auto const& r = m.s.regions.at( name );
    if ( r.entry == r.exit )
      return src;
    std::unordered_map<int, int> map;
    for ( auto n : r.nodes )
      map[n] = x.add( g.v[n].kind, g.v[n].param );
    for ( auto n : r.nodes )
    {
      for ( auto q = 0; q < input_arity( g.v[n].kind ); ++q )
      {
        auto const from = g.v[n].in[q];
        x.connect( from == r.entry ? src : port{ map.at( from.node ), from.index }, { map.at( n ), q } );
      }
    }
    return { map.at( r.exit.node ), r.exit.index };
  };

  if ( auto const* t = std::get_if<term>( &target ) )
  {
    auto const result = detail::build_term( h, *t, m.entry, binding, clone_region );
    h.connect( result, m.exit_sink );
  }
  else
  {
    detail::build_fan( h, std::get<fan>( target ), m.entry, binding, m.s.leaves );
  }
  return finish( h );
}

std::uint64_t fingerprint_of_canonical( circuit const& c )
{
  return detail::fnv1a( detail::canonical_text( c ) );
}

std::string describe_binding( phase_binding const& b )
{
  std::string text;
  for ( auto const& [k, v] : b )
  {
    if ( !text.empty() )
      text += ", ";
    text += k + "=" + v.to_string();
  }
  return text;
}

} // namespace

std::string match_site::summary() const
{
  std::string text = rule + " " + to_string( dir );
  if ( !phases.empty() )
    text += " {" + describe_binding( phases ) + "}";
  text += " at [";
  for ( auto i = 0u; i < anchors.size(); ++i )
    text += ( i ? "," : "" ) + std::to_string( anchors[i] );
  return text + "]";
}

std::vector<match_site> find_matches( circuit const& c, rewrite_rule const& rule, direction dir )
{
  auto const host = canonical( c );
  auto const g = net::from_circuit( host );
  auto const host_fp = fingerprint_of_canonical( host );
  auto const& side = rule.side( dir );
  auto const& target = rule.target( dir );

  std::vector<std::string> side_metas, target_metas;
  detail::collect_metas( side, side_metas );
  detail::collect_metas( target, target_metas );
  std::vector<meta_var const*> free;
  for ( auto const& name : target_metas )
  {
    if ( std::find( side_metas.begin(), side_metas.end(), name ) != side_metas.end() )
      continue;
    auto const* m = rule.find_meta( name );
    if ( m->sort == meta_sort::wire )
      return {};
    free.push_back( m );
  }

  matcher const mt( g, rule );
  std::vector<raw_match> found;
  state init;
  init.used.assign( g.v.size(), 0 );
  auto const n = static_cast<int>( g.v.size() );

  if ( auto const* t = std::get_if<term>( &side ) )
  {
    for ( auto v = 0; v < n; ++v )
    {
      for ( auto q = 0; q < input_arity( g.v[v].kind ); ++q )
      {
        port const sink{ v, q };
        auto const out = g.source_of( sink );
        if ( t->k == term::kind::wire || t->k == term::kind::region )
        {
          /* a bare wire or metavariable binds the empty region at this edge */
          auto s = init;
          if ( t->k == term::kind::region )
            s.regions.emplace( t->name, region{ out, out, {} } );
          found.push_back( { out, sink, std::move( s ) } );
          continue;
        }
        mt.match_term( *t, out, std::nullopt, init, [&]( port entry, state& s ) { found.push_back( { entry, sink, s } ); } );
      }
    }
  }
  else
  {
    auto const& f = std::get<fan>( side );
    init.leaves.resize( detail::count_leaves( f ) );
    for ( auto v = 0; v < n; ++v )
    {
      for ( auto j = 0; j < output_arity( g.v[v].kind ); ++j )
      {
        port const src{ v, j };
        mt.match_fan( f, src, init, [&]( state& s ) { found.push_back( { src, {}, s } ); } );
      }
    }
  }

  std::vector<match_site> sites;
  std::unordered_set<std::uint64_t> seen;
  for ( auto const& m : found )
  {
    auto const combos = std::size_t{ 1 } << free.size();
    for ( auto bits = 0u; bits < combos; ++bits )
    {
      auto binding = m.s.phases;
      for ( auto i = 0u; i < free.size(); ++i )
        binding[free[i]->name] = phase_param::constant( ( ( bits >> i ) & 1u ) != 0 );
      if ( !rule.admits( binding ) )
        continue;

      auto result = rewrite( g, target, m, binding );
      auto const fp = fingerprint_of_canonical( result );
      if ( fp == host_fp || !seen.insert( fp ).second )
        continue;

      match_site site;
      site.rule = rule.name;
      site.dir = dir;
      site.phases = std::move( binding );
      std::vector<node_id> anchors( m.s.nodes.begin(), m.s.nodes.end() );
      for ( auto const& [name, r] : m.s.regions )
      {
        wire_anchor w{ static_cast<node_id>( r.entry.node ), r.entry.index, static_cast<node_id>( r.exit.node ), r.exit.index, {} };
        w.nodes.assign( r.nodes.begin(), r.nodes.end() );
        anchors.insert( anchors.end(), r.nodes.begin(), r.nodes.end() );
        site.wires.emplace( name, std::move( w ) );
      }
      std::sort( anchors.begin(), anchors.end() );
      site.anchors = std::move( anchors );
      site.host_fingerprint = host_fp;
      site.result_fingerprint = fp;
      site.result = std::make_shared<circuit const>( std::move( result ) );
      sites.push_back( std::move( site ) );
    }
  }
  return sites;
}

circuit apply( circuit const& c, match_site const& site, bool checked )
{
  if ( !site.result || fingerprint( c ) != site.host_fingerprint )
    throw rejected( "stale match site for rule " + site.rule );
  auto const& result = *site.result;
  if ( auto const problems = validate( result ); !problems.empty() )
    throw internal_error( "rewrite produced an invalid circuit: " + describe( problems ) );
  if ( checked && !equivalent( c, result ) )
    throw internal_error( "rule " + site.rule + " changed the truth table at " + site.summary() );
  return result;
}

namespace
{

struct candidate
{
  match_site site;
  std::size_t site_index{};
  circuit_cost cost;
};

trace_step make_step( match_site const& site, std::size_t index, circuit_cost before, circuit_cost after )
{
  return { site.rule, site.dir, index, site.summary(), before, after, site.result_fingerprint };
}

constexpr std::array<direction, 2> directions{ direction::forward, direction::backward };

/* every rewrite of `c`, in rule order, L->R before R->L, then site order */
template<typename Fn>
void for_each_rewrite( circuit const& c, Fn&& fn )
{
  for ( auto const& rule : all_rules() )
  {
    for ( auto d : directions )
    {
      auto const sites = find_matches( c, rule, d );
      for ( auto i = 0u; i < sites.size(); ++i )
        fn( sites[i], i );
    }
  }
}

derivation_trace simplify_greedy( circuit const& c, int budget, engine_options const& opts )
{
  derivation_trace trace{ c, c, {} };
  auto current = c;
  auto current_cost = cost( current );
  for ( auto step = 0; step < budget; ++step )
  {
    std::optional<candidate> best;
    for_each_rewrite( current, [&]( match_site const& site, std::size_t index ) {
      auto const k = cost( *site.result );
      if ( k < current_cost && ( !best || k < best->cost ) )
        best = candidate{ site, index, k };
    } );
    if ( !best )
      break;
    auto next = apply( current, best->site, opts.checked );
    trace.steps.push_back( make_step( best->site, best->site_index, current_cost, best->cost ) );
    current = std::move( next );
    current_cost = best->cost;
  }
  trace.final = current;
  return trace;
}

struct visit
{
  std::shared_ptr<circuit const> c;
  /* forward tree: step parent -> this; backward tree: step this -> parent */
  std::uint64_t parent{};
  std::optional<trace_step> step;
};

using search_tree = std::unordered_map<std::uint64_t, visit>;

std::vector<trace_step> path_to_root( search_tree const& tree, std::uint64_t fp )
{
  std::vector<trace_step> steps;
  for ( auto const* v = &tree.at( fp ); v->step; v = &tree.at( v->parent ) )
    steps.push_back( *v->step );
  return steps;
}

/* every variable the function depends on needs its own shift; costs order lexicographically */
circuit_cost cost_floor( circuit const& c )
{
  auto const table = tabulate( c );
  std::size_t essential = 0;
  for ( auto v = 0u; v < table.num_vars(); ++v )
  {
    auto const bit = table.num_rows() >> ( v + 1 );
    for ( auto r = 0u; r < table.num_rows(); ++r )
    {
      if ( ( r & bit ) == 0 && table.row( r ) != table.row( r | bit ) )
      {
        ++essential;
        break;
      }
    }
  }
  return { 0, 0, essential };
}

derivation_trace simplify_exhaustive( circuit const& c, int budget, engine_options const& opts )
{
  if ( c.size() > opts.exhaustive_max_nodes )
    throw rejected( "exhaustive simplification is limited to " + std::to_string( opts.exhaustive_max_nodes ) + " nodes" );

  search_tree tree;
  auto const root = fingerprint( c );
  tree[root] = { std::make_shared<circuit const>( c ), 0, std::nullopt };
  auto best = root;
  auto best_cost = cost( c );
  auto const floor = cost_floor( c );
  std::vector<std::uint64_t> frontier{ root };
  if ( best_cost == floor )
    frontier.clear();

  for ( auto depth = 0; depth < budget && !frontier.empty() && tree.size() < opts.max_states; ++depth )
  {
    std::vector<std::uint64_t> next;
    for ( auto fp : frontier )
    {
      auto const current = tree.at( fp ).c;
      auto const before = cost( *current );
      for_each_rewrite( *current, [&]( match_site const& site, std::size_t index ) {
        if ( best_cost == floor || site.result->size() > opts.exhaustive_max_nodes || tree.count( site.result_fingerprint ) ||
             tree.size() >= opts.max_states )
          return;
        auto const after = cost( *site.result );
        tree[site.result_fingerprint] = { site.result, fp, make_step( site, index, before, after ) };
        next.push_back( site.result_fingerprint );
        if ( after < best_cost )
        {
          best = site.result_fingerprint;
          best_cost = after;
        }
      } );
    }
    frontier = best_cost == floor ? std::vector<std::uint64_t>{} : std::move( next );
  }

  auto steps = path_to_root( tree, best );
  std::reverse( steps.begin(), steps.end() );
  derivation_trace trace{ c, *tree.at( best ).c, std::move( steps ) };
  if ( opts.checked && !equivalent( trace.initial, trace.final ) )
    throw internal_error( "exhaustive simplification changed the truth table" );
  return trace;
}

} // namespace

derivation_trace simplify( circuit const& c, int budget, engine_options const& opts )
{
  if ( budget <= 0 )
    throw rejected( "simplify: budget must be positive" );
  if ( auto const problems = validate( c ); !problems.empty() )
    throw rejected( "invalid circuit: " + describe( problems ) );
  return opts.exhaustive ? simplify_exhaustive( c, budget, opts ) : simplify_greedy( c, budget, opts );
}

derivation_trace analyze( circuit const& c, std::map<std::string, bool> const& fixings, int budget, engine_options const& opts )
{
  auto fixed = c;
  for ( auto const& [name, bit] : fixings )
    fixed = substitute( fixed, name, bit );
  return simplify( fixed, budget, opts );
}

std::optional<derivation_trace> prove_equal( circuit const& a, circuit const& b, int budget, engine_options const& opts )
{
  if ( budget < 0 )
    throw rejected( "prove_equal: budget must be non-negative" );
  auto const fa = fingerprint( a );
  auto const fb = fingerprint( b );
  if ( fa == fb )
    return derivation_trace{ a, b, {} };

  auto const size_cap = std::max( a.size(), b.size() ) + 6;
  search_tree forward, backward;
  forward[fa] = { std::make_shared<circuit const>( a ), 0, std::nullopt };
  backward[fb] = { std::make_shared<circuit const>( b ), 0, std::nullopt };
  std::vector<std::uint64_t> forward_frontier{ fa }, backward_frontier{ fb };
  auto forward_depth = 0, backward_depth = 0;

  auto const meet = [&]( std::uint64_t fp ) {
    auto steps = path_to_root( forward, fp );
    std::reverse( steps.begin(), steps.end() );
    auto const tail = path_to_root( backward, fp );
    steps.insert( steps.end(), tail.begin(), tail.end() );
    derivation_trace trace{ a, b, std::move( steps ) };
    if ( opts.checked )
    {
      auto current = a;
      for ( auto const& s : trace.steps )
      {
        auto const sites = find_matches( current, rule_by_name( s.rule ), s.dir );
        current = apply( current, sites.at( s.site_index ), true );
      }
    }
    return trace;
  };

  while ( forward_depth + backward_depth < budget && !forward_frontier.empty() && !backward_frontier.empty() &&
          forward.size() + backward.size() < opts.max_states )
  {
    auto const grow_forward = forward_frontier.size() <= backward_frontier.size();
    std::vector<std::uint64_t> next;
    std::optional<std::uint64_t> met;

    if ( grow_forward )
    {
      for ( auto fp : forward_frontier )
      {
        auto const current = forward.at( fp ).c;
        auto const before = cost( *current );
        for_each_rewrite( *current, [&]( match_site const& site, std::size_t index ) {
          if ( met || site.result->size() > size_cap || forward.count( site.result_fingerprint ) )
            return;
          forward[site.result_fingerprint] = { site.result, fp, make_step( site, index, before, cost( *site.result ) ) };
          next.push_back( site.result_fingerprint );
          if ( backward.count( site.result_fingerprint ) )
            met = site.result_fingerprint;
        } );
        if ( met )
          return meet( *met );
      }
      forward_frontier = std::move( next );
      ++forward_depth;
    }
    else
    {
      for ( auto fp : backward_frontier )
      {
        auto const current = backward.at( fp ).c;
        auto const after = cost( *current );
        for_each_rewrite( *current, [&]( match_site const& site, std::size_t ) {
          if ( met || site.result->size() > size_cap || backward.count( site.result_fingerprint ) )
            return;
          /* keep the edge only if the opposite rewrite reproduces `current` */
          auto const reverse = find_matches( *site.result, rule_by_name( site.rule ), opposite( site.dir ) );
          auto const it = std::find_if( reverse.begin(), reverse.end(), [&]( auto const& r ) { return r.result_fingerprint == fp; } );
          if ( it == reverse.end() )
            return;
          auto const index = static_cast<std::size_t>( it - reverse.begin() );
          backward[site.result_fingerprint] = { site.result, fp, make_step( *it, index, cost( *site.result ), after ) };
          next.push_back( site.result_fingerprint );
          if ( forward.count( site.result_fingerprint ) )
            met = site.result_fingerprint;
        } );
        if ( met )
          return meet( *met );
      }
      backward_frontier = std::move( next );
      ++backward_depth;
    }
  }
  return std::nullopt;
}

replay_report replay( derivation_trace const& trace )
{
  auto const bad = [&]( std::size_t i, std::string message ) { return replay_report{ false, i, std::move( message ) }; };

  auto current = trace.initial;
  if ( auto const problems = validate( current ); !problems.empty() )
    return bad( 0, "initial circuit is invalid: " + describe( problems ) );

  for ( auto i = 0u; i < trace.steps.size(); ++i )
  {
    auto const& step = trace.steps[i];
    auto const* rule = [&]() -> rewrite_rule const* {
      for ( auto const& r : all_rules() )
      {
        if ( r.name == step.rule )
          return &r;
      }
      return nullptr;
    }();
    if ( rule == nullptr )
      return bad( i, "unknown rule '" + step.rule + "'" );

    auto const sites = find_matches( current, *rule, step.dir );
    if ( step.site_index >= sites.size() )
      return bad( i, "no site " + std::to_string( step.site_index ) + " for " + step.rule + " " + to_string( step.dir ) );
    auto const& site = sites[step.site_index];
    if ( site.result_fingerprint != step.result_fingerprint )
      return bad( i, "site " + std::to_string( step.site_index ) + " of " + step.rule + " yields a different circuit" );

    auto const& next = *site.result;
    if ( auto const problems = validate( next ); !problems.empty() )
      return bad( i, "step result is invalid: " + describe( problems ) );
    if ( !equivalent( current, next ) )
      return bad( i, "step changes the truth table" );
    if ( cost( current ) != step.before || cost( next ) != step.after )
      return bad( i, "recorded costs do not match" );
    current = next;
  }

  if ( !isomorphic( current, trace.final ) )
    return bad( trace.steps.size(), "replay does not reach the recorded final circuit" );
  return { true, std::nullopt, "verified" };
}

std::string format_trace( derivation_trace const& trace )
{
  std::string text;
  for ( auto i = 0u; i < trace.steps.size(); ++i )
  {
    auto const& s = trace.steps[i];
    text += std::to_string( i + 1 ) + " " + s.rule + " " + to_string( s.dir ) + " cost=" + to_string( s.before ) + "->" + to_string( s.after ) + "\n";
  }
  return text;
}

} // namespace wavelogic

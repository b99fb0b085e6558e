#include <wavelogic/rules.hpp>

#include <algorithm>
#include <mutex>

#include "pattern_build.hpp"

namespace wavelogic
{

namespace patterns
{

term wire()
{
  return term{};
}

term region( std::string name )
{
  term t;
  t.k = term::kind::region;
  t.name = std::move( name );
  return t;
}

term shift( phase_pattern p )
{
  term t;
  t.k = term::kind::shift;
  t.param = std::move( p );
  return t;
}

term shift( phase p )
{
  return shift( phase_pattern::fixed( p ) );
}

term seq( term lower, term upper )
{
  term t;
  t.k = term::kind::seq;
  t.parts = { std::move( lower ), std::move( upper ) };
  return t;
}

term maj( term a, term b, term c )
{
  term t;
  t.k = term::kind::maj;
  t.parts = { std::move( a ), std::move( b ), std::move( c ) };
  return t;
}

fan leaf( int index )
{
  fan f;
  f.leaf = index;
  return f;
}

fan shift( phase_pattern p, fan next )
{
  fan f;
  f.k = fan::kind::shift;
  f.param = std::move( p );
  f.parts = { std::move( next ) };
  return f;
}

fan copy( fan a, fan b, fan c )
{
  fan f;
  f.k = fan::kind::copy;
  f.parts = { std::move( a ), std::move( b ), std::move( c ) };
  return f;
}

} // namespace patterns

char const* to_string( direction d ) noexcept
{
  return d == direction::forward ? "L->R" : "R->L";
}

direction opposite( direction d ) noexcept
{
  return d == direction::forward ? direction::backward : direction::forward;
}

meta_var const* rewrite_rule::find_meta( std::string_view meta_name ) const
{
  for ( auto const& m : metas )
  {
    if ( m.name == meta_name )
      return &m;
  }
  return nullptr;
}

namespace detail
{

std::optional<phase_param> resolve( phase_pattern const& p, phase_binding const& b )
{
  switch ( p.k )
  {
  case phase_pattern::kind::constant:
    return phase_param::constant( p.value );
  case phase_pattern::kind::meta:
  {
    auto const it = b.find( p.lhs );
    if ( it == b.end() )
      return std::nullopt;
    return it->second;
  }
  case phase_pattern::kind::sum:
  {
    auto const a = b.find( p.lhs );
    auto const c = b.find( p.rhs );
    if ( a == b.end() || c == b.end() )
      return std::nullopt;
    return add( a->second, c->second );
  }
  }
  return std::nullopt;
}

namespace
{

phase_param must_resolve( phase_pattern const& p, phase_binding const& b )
{
  auto r = resolve( p, b );
  if ( !r )
    throw internal_error( "unresolvable phase pattern" );
  return *r;
}

} // namespace

port build_term( net& g, term const& t, port src, phase_binding const& b, region_builder const& region )
{
  switch ( t.k )
  {
  case term::kind::wire:
    return src;
  case term::kind::region:
    return region( g, t.name, src );
  case term::kind::shift:
  {
    auto const n = g.add( node_kind::phase_shift, must_resolve( t.param, b ) );
    g.connect( src, { n, 0 } );
    return { n, 0 };
  }
  case term::kind::seq:
    return build_term( g, t.parts[1], build_term( g, t.parts[0], src, b, region ), b, region );
  case term::kind::maj:
  {
    auto const c = g.add( node_kind::copy );
    auto const m = g.add( node_kind::merge );
    g.connect( src, { c, 0 } );
    for ( auto k = 0; k < 3; ++k )
      g.connect( build_term( g, t.parts[k], { c, k }, b, region ), { m, k } );
    return { m, 0 };
  }
  }
  throw internal_error( "unknown term kind" );
}

void build_fan( net& g, fan const& f, port src, phase_binding const& b, std::vector<port> const& leaves )
{
  switch ( f.k )
  {
  case fan::kind::leaf:
    g.connect( src, leaves.at( f.leaf ) );
    return;
  case fan::kind::shift:
  {
    auto const n = g.add( node_kind::phase_shift, must_resolve( f.param, b ) );
    g.connect( src, { n, 0 } );
    build_fan( g, f.parts[0], { n, 0 }, b, leaves );
    return;
  }
  case fan::kind::copy:
  {
    auto const c = g.add( node_kind::copy );
    g.connect( src, { c, 0 } );
    for ( auto k = 0; k < 3; ++k )
      build_fan( g, f.parts[k], { c, k }, b, leaves );
    return;
  }
  }
}

int count_leaves( fan const& f )
{
  if ( f.k == fan::kind::leaf )
    return 1;
  int n = 0;
  for ( auto const& p : f.parts )
    n += count_leaves( p );
  return n;
}

namespace
{

void add_name( std::vector<std::string>& out, std::string const& name )
{
  if ( !name.empty() && std::find( out.begin(), out.end(), name ) == out.end() )
    out.push_back( name );
}

void collect_param( phase_pattern const& p, std::vector<std::string>& out )
{
  if ( p.k != phase_pattern::kind::constant )
  {
    add_name( out, p.lhs );
    add_name( out, p.rhs );
  }
}

void collect_term( term const& t, std::vector<std::string>& out )
{
  if ( t.k == term::kind::region )
    add_name( out, t.name );
  if ( t.k == term::kind::shift )
    collect_param( t.param, out );
  for ( auto const& p : t.parts )
    collect_term( p, out );
}

void collect_fan( fan const& f, std::vector<std::string>& out )
{
  if ( f.k == fan::kind::shift )
    collect_param( f.param, out );
  for ( auto const& p : f.parts )
    collect_fan( p, out );
}

bool resolvable_term( term const& t, phase_binding const& b )
{
  if ( t.k == term::kind::shift && !resolve( t.param, b ) )
    return false;
  return std::all_of( t.parts.begin(), t.parts.end(), [&]( auto const& p ) { return resolvable_term( p, b ); } );
}

bool resolvable_fan( fan const& f, phase_binding const& b )
{
  if ( f.k == fan::kind::shift && !resolve( f.param, b ) )
    return false;
  return std::all_of( f.parts.begin(), f.parts.end(), [&]( auto const& p ) { return resolvable_fan( p, b ); } );
}

} // namespace

void collect_metas( pattern const& p, std::vector<std::string>& out )
{
  if ( auto const* t = std::get_if<term>( &p ) )
    collect_term( *t, out );
  else
    collect_fan( std::get<fan>( p ), out );
}

} // namespace detail

using detail::net;
using detail::port;

/* catalogue */

namespace
{

using namespace patterns;

phase_pattern meta( std::string name )
{
  return phase_pattern::meta( std::move( name ) );
}

std::vector<rewrite_rule> make_catalogue()
{
  std::vector<rewrite_rule> rules;
  auto const wire_meta = []( std::string n ) { return meta_var{ std::move( n ), meta_sort::wire }; };

  rules.push_back( { "ID", {}, shift( phase::zero ), wire(), {}, {}, provenance::base } );

  rules.push_back( { "Comp",
                     { { "alpha", meta_sort::phase } },
                     seq( shift( meta( "alpha" ) ), shift( phase::pi ) ),
                     seq( shift( phase::pi ), shift( meta( "alpha" ) ) ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "F",
                     { { "alpha", meta_sort::phase }, { "beta", meta_sort::phase } },
                     seq( shift( meta( "alpha" ) ), shift( meta( "beta" ) ) ),
                     shift( phase_pattern::sum( "alpha", "beta" ) ),
                     []( phase_binding const& b ) { return add( b.at( "alpha" ), b.at( "beta" ) ).has_value(); },
                     "alpha+beta is a phase parameter",
                     provenance::base } );

  rules.push_back( { "C1",
                     { { "alpha", meta_sort::phase } },
                     shift( meta( "alpha" ), copy( leaf( 0 ), leaf( 1 ), leaf( 2 ) ) ),
                     copy( shift( meta( "alpha" ), leaf( 0 ) ), shift( meta( "alpha" ), leaf( 1 ) ), shift( meta( "alpha" ), leaf( 2 ) ) ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "C2",
                     {},
                     copy( leaf( 0 ), leaf( 1 ), copy( leaf( 2 ), leaf( 3 ), leaf( 4 ) ) ),
                     copy( copy( leaf( 0 ), leaf( 1 ), leaf( 2 ) ), leaf( 3 ), leaf( 4 ) ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "CM",
                     { wire_meta( "x" ), wire_meta( "y" ), wire_meta( "z" ) },
                     maj( region( "x" ), region( "y" ), region( "z" ) ),
                     maj( region( "y" ), region( "x" ), region( "z" ) ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "D",
                     { wire_meta( "x" ), wire_meta( "y" ), wire_meta( "u" ), wire_meta( "v" ), wire_meta( "z" ) },
                     maj( region( "x" ), region( "y" ), maj( region( "u" ), region( "v" ), region( "z" ) ) ),
                     maj( maj( region( "x" ), region( "y" ), region( "u" ) ), maj( region( "x" ), region( "y" ), region( "v" ) ), region( "z" ) ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "M",
                     { wire_meta( "x" ), wire_meta( "y" ) },
                     maj( region( "x" ), region( "x" ), region( "y" ) ),
                     region( "x" ),
                     {},
                     {},
                     provenance::base } );

  rules.push_back( { "A",
                     { wire_meta( "x" ), wire_meta( "u" ), wire_meta( "y" ), wire_meta( "z" ) },
                     maj( region( "x" ), region( "u" ), maj( region( "y" ), region( "u" ), region( "z" ) ) ),
                     maj( maj( region( "x" ), region( "u" ), region( "y" ) ), region( "u" ), region( "z" ) ),
                     {},
                     {},
                     provenance::derived } );

  rules.push_back( { "CH",
                     { wire_meta( "x" ), { "phi", meta_sort::constant_phase }, { "theta", meta_sort::constant_phase } },
                     maj( region( "x" ), shift( meta( "phi" ) ), shift( meta( "theta" ) ) ),
                     region( "x" ),
                     []( phase_binding const& b ) { return !( b.at( "phi" ) == b.at( "theta" ) ); },
                     "phi != theta",
                     provenance::base } );

  rules.push_back( { "CH2",
                     { wire_meta( "x" ), wire_meta( "y" ) },
                     maj( region( "x" ), seq( region( "x" ), shift( phase::pi ) ), region( "y" ) ),
                     region( "y" ),
                     {},
                     {},
                     provenance::derived } );

  return rules;
}

std::string describe( phase_binding const& b )
{
  std::string text;
  for ( auto const& [k, v] : b )
  {
    if ( !text.empty() )
      text += ", ";
    text += k + "=" + v.to_string();
  }
  return "{" + text + "}";
}

std::string describe( assignment const& sigma )
{
  std::string text;
  for ( auto const& [k, v] : sigma )
  {
    if ( !text.empty() )
      text += ", ";
    text += k + "=" + ( v ? "1" : "0" );
  }
  return "{" + text + "}";
}

} // namespace

std::vector<rewrite_rule> const& all_rules()
{
  static std::vector<rewrite_rule> const rules = [] {
    auto catalogue = make_catalogue();
    for ( auto const& r : catalogue )
    {
      auto const verdict = check_soundness( r );
      if ( auto const* bad = std::get_if<counterexample>( &verdict ) )
        throw internal_error( "rule " + r.name + " failed certification: " + bad->description );
    }
    return catalogue;
  }();
  return rules;
}

rewrite_rule const& rule_by_name( std::string_view name )
{
  for ( auto const& r : all_rules() )
  {
    if ( r.name == name )
      return r;
  }
  throw rejected( "unknown rule '" + std::string( name ) + "'" );
}

std::optional<circuit> instantiate( rewrite_rule const& rule, direction side, phase_binding const& binding )
{
  auto const& p = rule.side( side );
  net g;
  auto const s = g.add( node_kind::source );

  if ( auto const* t = std::get_if<term>( &p ) )
  {
    if ( !detail::resolvable_term( *t, binding ) )
      return std::nullopt;
    auto const region = []( net& h, std::string const& name, port src ) -> port {
      auto const n = h.add( node_kind::phase_shift, phase_param::variable( name ) );
      h.connect( src, { n, 0 } );
      return { n, 0 };
    };
    auto const result = detail::build_term( g, *t, { s, 0 }, binding, region );
    auto const o = g.add( node_kind::output );
    g.connect( result, { o, 0 } );
    g.outputs = { o };
  }
  else
  {
    auto const& f = std::get<fan>( p );
    if ( !detail::resolvable_fan( f, binding ) )
      return std::nullopt;
    std::vector<port> leaves;
    for ( auto i = 0; i < detail::count_leaves( f ); ++i )
    {
      auto const o = g.add( node_kind::output );
      leaves.push_back( { o, 0 } );
      g.outputs.push_back( o );
    }
    detail::build_fan( g, f, { s, 0 }, binding, leaves );
  }
  return g.to_circuit();
}

soundness_verdict check_soundness( rewrite_rule const& rule )
{
  std::vector<meta_var const*> phase_metas;
  for ( auto const& m : rule.metas )
  {
    if ( m.sort != meta_sort::wire )
      phase_metas.push_back( &m );
  }

  std::vector<phase_param> free_domain{ phase_param::constant( phase::zero ), phase_param::constant( phase::pi ) };
  for ( auto const* m : phase_metas )
  {
    if ( m->sort == meta_sort::phase )
      free_domain.push_back( phase_param::variable( m->name ) );
  }

  certificate cert;
  std::vector<std::size_t> choice( phase_metas.size(), 0 );
  auto const domain_size = [&]( std::size_t i ) { return phase_metas[i]->sort == meta_sort::phase ? free_domain.size() : std::size_t{ 2 }; };

  while ( true )
  {
    phase_binding binding;
    for ( auto i = 0u; i < phase_metas.size(); ++i )
      binding[phase_metas[i]->name] = free_domain[choice[i]];

    if ( rule.admits( binding ) )
    {
      auto const lhs = instantiate( rule, direction::forward, binding );
      auto const rhs = instantiate( rule, direction::backward, binding );
      if ( lhs && rhs )
      {
        ++cert.instances;
        auto vars = variables( *lhs );
        for ( auto& v : variables( *rhs ) )
        {
          if ( std::find( vars.begin(), vars.end(), v ) == vars.end() )
            vars.push_back( v );
        }
        cert.max_rows = std::max( cert.max_rows, std::size_t{ 1 } << vars.size() );
        if ( auto const diff = distinguishing_assignment( *lhs, *rhs ) )
        {
          return counterexample{ binding, *diff, "instance " + describe( binding ) + ": sides differ at " + describe( *diff ) };
        }
      }
    }

    /* next combination */
    std::size_t i = 0;
    for ( ; i < choice.size(); ++i )
    {
      if ( ++choice[i] < domain_size( i ) )
        break;
      choice[i] = 0;
    }
    if ( i == choice.size() )
      break;
  }
  return cert;
}

std::vector<boolean_law> boolean_reading( rewrite_rule const& rule )
{
  auto const x = bool_expr::var( "x" ), y = bool_expr::var( "y" ), z = bool_expr::var( "z" );
  auto const u = bool_expr::var( "u" ), v = bool_expr::var( "v" );
  auto const a = bool_expr::var( "a" ), b = bool_expr::var( "b" );
  auto const zero = bool_expr::constant( false ), one = bool_expr::constant( true );
  auto const neg = []( bool_expr e ) { return bool_expr::negate( std::move( e ) ); };
  auto const conj = []( bool_expr p, bool_expr q ) { return bool_expr::conj( std::move( p ), std::move( q ) ); };
  auto const disj = []( bool_expr p, bool_expr q ) { return bool_expr::disj( std::move( p ), std::move( q ) ); };
  auto const exor = []( bool_expr p, bool_expr q ) { return bool_expr::exor( std::move( p ), std::move( q ) ); };
  auto const maj = []( bool_expr p, bool_expr q, bool_expr r ) { return bool_expr::maj( std::move( p ), std::move( q ), std::move( r ) ); };

  auto const& n = rule.name;
  if ( n == "ID" )
    return { { exor( x, zero ), x } };
  if ( n == "Comp" )
    return { { neg( x ), exor( x, one ) }, { neg( exor( x, a ) ), exor( neg( x ), a ) } };
  if ( n == "F" )
    return { { exor( exor( x, a ), b ), exor( x, exor( a, b ) ) } };
  if ( n == "C1" || n == "C2" )
    return {};
  if ( n == "CM" )
    return { { conj( x, y ), conj( y, x ) }, { disj( x, y ), disj( y, x ) }, { maj( x, y, z ), maj( y, x, z ) } };
  if ( n == "D" )
    return { { conj( x, disj( y, z ) ), disj( conj( x, y ), conj( x, z ) ) },
             { disj( x, conj( y, z ) ), conj( disj( x, y ), disj( x, z ) ) },
             { maj( x, y, maj( u, v, z ) ), maj( maj( x, y, u ), maj( x, y, v ), z ) } };
  if ( n == "M" )
    return { { maj( x, x, y ), x }, { conj( x, x ), x }, { disj( x, x ), x } };
  if ( n == "A" )
    return { { maj( x, u, maj( y, u, z ) ), maj( maj( x, u, y ), u, z ) },
             { conj( x, conj( y, z ) ), conj( conj( x, y ), z ) },
             { disj( x, disj( y, z ) ), disj( disj( x, y ), z ) } };
  if ( n == "CH" )
    return { { disj( x, zero ), x }, { conj( x, one ), x }, { maj( x, zero, one ), x } };
  if ( n == "CH2" )
    return { { disj( x, neg( x ) ), one }, { conj( x, neg( x ) ), zero }, { maj( x, neg( x ), y ), y } };
  return {};
}

} // namespace wavelogic

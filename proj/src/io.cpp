#include <wavelogic/io.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace wavelogic
{

parse_error::parse_error( std::size_t line, std::size_t column, std::string const& message )
    : rejected( std::to_string( line ) + ":" + std::to_string( column ) + ": " + message ), line_( line ), column_( column )
{
}

namespace
{

std::map<std::string, std::size_t, std::less<>> const function_arity{
    { "and", 2 }, { "maj", 3 }, { "nand", 2 }, { "not", 1 }, { "or", 2 }, { "xnor", 2 }, { "xor", 2 } };

std::string function_names()
{
  std::string text;
  for ( auto const& [name, arity] : function_arity )
    text += ( text.empty() ? "" : ", " ) + name;
  return text;
}

class parser
{
public:
  explicit parser( std::string_view text ) : text_( text ) {}

  bool_expr parse()
  {
    auto e = expr();
    skip_space();
    if ( pos_ < text_.size() )
      fail( "unexpected '" + std::string( 1, text_[pos_] ) + "' after expression" );
    return e;
  }

private:
  bool_expr expr()
  {
    skip_space();
    if ( pos_ == text_.size() )
      fail( "unexpected end of input, expected an expression" );

    auto const ch = text_[pos_];
    if ( std::isdigit( static_cast<unsigned char>( ch ) ) )
    {
      auto const start = mark();
      auto const digits = take_while( []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ) != 0; } );
      if ( digits != "0" && digits != "1" )
        fail_at( start, "invalid constant '" + std::string( digits ) + "', expected 0 or 1" );
      return bool_expr::constant( digits == "1" );
    }
    if ( ch < 'a' || ch > 'z' )
      fail( "unexpected '" + std::string( 1, ch ) + "', expected an expression" );

    auto const start = mark();
    auto const name = std::string( take_while( []( char c ) {
      return ( c >= 'a' && c <= 'z' ) || ( c >= '0' && c <= '9' ) || c == '_';
    } ) );
    skip_space();
    if ( pos_ == text_.size() || text_[pos_] != '(' )
      return bool_expr::var( name );

    auto const it = function_arity.find( name );
    if ( it == function_arity.end() )
      fail_at( start, "unknown function '" + name + "', expected one of: " + function_names() );
    ++pos_;

    std::vector<bool_expr> args;
    while ( true )
    {
      args.push_back( expr() );
      skip_space();
      if ( pos_ == text_.size() )
        fail( "unexpected end of input in " + name + "(...)" );
      auto const next = text_[pos_];
      if ( next == ',' && args.size() < it->second )
      {
        ++pos_;
        continue;
      }
      if ( next == ')' && args.size() == it->second )
      {
        ++pos_;
        break;
      }
      if ( next == ',' || next == ')' )
        fail( name + " expects " + std::to_string( it->second ) + " argument" + ( it->second == 1 ? "" : "s" ) + ", found " +
              ( next == ',' ? "more" : std::to_string( args.size() ) ) );
      fail( "unexpected '" + std::string( 1, next ) + "', expected ',' or ')'" );
    }

    if ( name == "not" )
      return bool_expr::negate( args[0] );
    if ( name == "and" )
      return bool_expr::conj( args[0], args[1] );
    if ( name == "or" )
      return bool_expr::disj( args[0], args[1] );
    if ( name == "xor" )
      return bool_expr::exor( args[0], args[1] );
    if ( name == "xnor" )
      return bool_expr::negate( bool_expr::exor( args[0], args[1] ) );
    if ( name == "nand" )
      return bool_expr::negate( bool_expr::conj( args[0], args[1] ) );
    return bool_expr::maj( args[0], args[1], args[2] );
  }

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  template<typename Pred>
  std::string_view take_while( Pred pred )
  {
    auto const start = pos_;
    while ( pos_ < text_.size() && pred( text_[pos_] ) )
      ++pos_;
    return text_.substr( start, pos_ - start );
  }

  std::size_t mark() const { return pos_; }

  [[noreturn]] void fail( std::string const& message ) const { fail_at( pos_, message ); }

  [[noreturn]] void fail_at( std::size_t at, std::string const& message ) const
  {
    std::size_t line = 1, column = 1;
    for ( auto i = 0u; i < at && i < text_.size(); ++i )
    {
      if ( text_[i] == '\n' )
      {
        ++line;
        column = 1;
      }
      else
        ++column;
    }
    throw parse_error( line, column, message );
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

bool_expr parse_expr( std::string_view text )
{
  return parser( text ).parse();
}

std::string print_expr( bool_expr const& e )
{
  auto const& a = e.args();
  auto const call = [&]( char const* name ) {
    std::string text = std::string( name ) + "(";
    for ( auto i = 0u; i < a.size(); ++i )
      text += ( i ? "," : "" ) + print_expr( a[i] );
    return text + ")";
  };
  switch ( e.op() )
  {
  case bool_op::variable: return e.name();
  case bool_op::constant: return e.value() ? "1" : "0";
  case bool_op::negation: return call( "not" );
  case bool_op::conjunction: return call( "and" );
  case bool_op::disjunction: return call( "or" );
  case bool_op::exclusive_or: return call( "xor" );
  case bool_op::majority: return call( "maj" );
  }
  return {};
}

std::string export_dot( circuit const& c )
{
  auto const g = canonical( c );
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for ( auto const& n : g.nodes() )
  {
    out << "  n" << n.id << " [";
    switch ( n.kind )
    {
    case node_kind::source: out << "label=\"src\", shape=circle"; break;
    case node_kind::phase_shift:
      out << "label=\"" << ( n.param.is_variable() ? n.param.name() : to_bit( n.param.value() ) ? "π" : "0" ) << "\", shape=box";
      break;
    case node_kind::copy: out << "label=\"⎇\", shape=triangle"; break;
    case node_kind::merge: out << "label=\"Σ\", shape=invtriangle"; break;
    case node_kind::output: out << "label=\"out\", shape=doublecircle"; break;
    }
    out << "];\n";
  }
  for ( auto const& e : g.edges() )
  {
    out << "  n" << e.from << " -> n" << e.to << " [taillabel=\"" << e.from_port << "\", headlabel=\"" << e.to_port << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string write_circuit( circuit const& c )
{
  using nlohmann::json;
  json doc;
  doc["version"] = circuit_file_version;
  doc["nodes"] = json::array();
  for ( auto const& n : c.nodes() )
  {
    json x{ { "id", n.id }, { "kind", to_string( n.kind ) } };
    if ( n.kind == node_kind::phase_shift )
    {
      if ( n.param.is_variable() )
        x["param"] = n.param.name();
      else
        x["param"] = to_bit( n.param.value() ) ? 1 : 0;
    }
    doc["nodes"].push_back( std::move( x ) );
  }
  doc["edges"] = json::array();
  for ( auto const& e : c.edges() )
    doc["edges"].push_back( { { "from", e.from }, { "from_port", e.from_port }, { "to", e.to }, { "to_port", e.to_port } } );
  doc["outputs"] = c.outputs();
  return doc.dump( 2 ) + "\n";
}

namespace
{

std::optional<node_kind> kind_from_string( std::string const& s )
{
  for ( auto k : { node_kind::source, node_kind::phase_shift, node_kind::copy, node_kind::merge, node_kind::output } )
  {
    if ( s == to_string( k ) )
      return k;
  }
  return std::nullopt;
}

} // namespace

circuit read_circuit( std::string_view text )
{
  using nlohmann::json;
  json doc;
  try
  {
    doc = json::parse( text );
  }
  catch ( json::parse_error const& e )
  {
    throw rejected( std::string( "circuit file is not valid JSON: " ) + e.what() );
  }

  std::vector<std::string> problems;
  auto const integer = [&]( json const& obj, char const* key, std::string const& where ) -> std::optional<std::int64_t> {
    if ( !obj.is_object() || !obj.contains( key ) || !obj[key].is_number_integer() )
    {
      problems.push_back( where + ": missing integer '" + key + "'" );
      return std::nullopt;
    }
    return obj[key].get<std::int64_t>();
  };

  if ( !doc.is_object() )
    throw rejected( "circuit file: top level must be an object" );
  if ( auto const v = integer( doc, "version", "document" ); v && *v != circuit_file_version )
    problems.push_back( "document: unsupported version " + std::to_string( *v ) );

  std::vector<node> nodes;
  if ( !doc.contains( "nodes" ) || !doc["nodes"].is_array() )
    problems.push_back( "document: missing array 'nodes'" );
  else
  {
    for ( auto i = 0u; i < doc["nodes"].size(); ++i )
    {
      auto const& x = doc["nodes"][i];
      auto const where = "nodes[" + std::to_string( i ) + "]";
      auto const id = integer( x, "id", where );
      std::optional<node_kind> kind;
      if ( !x.is_object() || !x.contains( "kind" ) || !x["kind"].is_string() || !( kind = kind_from_string( x["kind"].get<std::string>() ) ) )
        problems.push_back( where + ": missing or unknown 'kind'" );
      if ( id && ( *id < 0 || *id > std::int64_t{ UINT32_MAX } ) )
        problems.push_back( where + ": id out of range" );
      phase_param param;
      if ( kind == node_kind::phase_shift )
      {
        auto const& p = x.contains( "param" ) ? x["param"] : json();
        if ( p.is_number_integer() && ( p.get<int>() == 0 || p.get<int>() == 1 ) )
          param = phase_param::constant( p.get<int>() == 1 );
        else if ( p.is_string() && is_identifier( p.get<std::string>() ) )
          param = phase_param::variable( p.get<std::string>() );
        else
          problems.push_back( where + ": 'param' must be 0, 1 or an identifier" );
      }
      else if ( kind && x.contains( "param" ) )
        problems.push_back( where + ": only phase nodes carry a 'param'" );
      if ( id && kind && *id >= 0 && *id <= std::int64_t{ UINT32_MAX } )
        nodes.push_back( { static_cast<node_id>( *id ), *kind, param } );
    }
  }

  std::vector<edge> edges;
  if ( !doc.contains( "edges" ) || !doc["edges"].is_array() )
    problems.push_back( "document: missing array 'edges'" );
  else
  {
    for ( auto i = 0u; i < doc["edges"].size(); ++i )
    {
      auto const& x = doc["edges"][i];
      auto const where = "edges[" + std::to_string( i ) + "]";
      auto const from = integer( x, "from", where );
      auto const from_port = integer( x, "from_port", where );
      auto const to = integer( x, "to", where );
      auto const to_port = integer( x, "to_port", where );
      if ( from && from_port && to && to_port )
      {
        if ( *from < 0 || *to < 0 || *from > std::int64_t{ UINT32_MAX } || *to > std::int64_t{ UINT32_MAX } || *from_port < 0 ||
             *from_port > 2 || *to_port < 0 || *to_port > 2 )
          problems.push_back( where + ": value out of range" );
        else
          edges.push_back( { static_cast<node_id>( *from ), static_cast<int>( *from_port ), static_cast<node_id>( *to ), static_cast<int>( *to_port ) } );
      }
    }
  }

  std::vector<node_id> outputs;
  if ( !doc.contains( "outputs" ) || !doc["outputs"].is_array() )
    problems.push_back( "document: missing array 'outputs'" );
  else
  {
    for ( auto const& o : doc["outputs"] )
    {
      if ( o.is_number_integer() && o.get<std::int64_t>() >= 0 && o.get<std::int64_t>() <= std::int64_t{ UINT32_MAX } )
        outputs.push_back( static_cast<node_id>( o.get<std::int64_t>() ) );
      else
        problems.push_back( "outputs: entries must be node ids" );
    }
  }

  if ( problems.empty() )
  {
    auto c = circuit::from_parts( std::move( nodes ), std::move( edges ), std::move( outputs ) );
    auto const violations = validate( c );
    if ( violations.empty() )
      return c;
    for ( auto const& v : violations )
      problems.push_back( std::string( to_string( v.kind ) ) + ": " + v.message );
  }

  std::string message = "circuit file rejected:";
  for ( auto const& p : problems )
    message += "\n  " + p;
  throw rejected( message );
}

void save_circuit( circuit const& c, std::filesystem::path const& file )
{
  std::ofstream out( file );
  if ( !out )
    throw rejected( "cannot write '" + file.string() + "'" );
  out << write_circuit( c );
  if ( !out )
    throw rejected( "cannot write '" + file.string() + "'" );
}

circuit load_circuit( std::filesystem::path const& file )
{
  std::ifstream in( file );
  if ( !in )
    throw rejected( "cannot read '" + file.string() + "'" );
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_circuit( buffer.str() );
}

} // namespace wavelogic

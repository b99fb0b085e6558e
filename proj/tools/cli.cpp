#include "cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>

#include <wavelogic/boolean.hpp>
#include <wavelogic/engine.hpp>
#include <wavelogic/io.hpp>
#include <wavelogic/rules.hpp>
#include <wavelogic/semantics.hpp>

namespace wavelogic
{

namespace
{

constexpr int exit_true = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;

circuit circuit_of( std::string const& text )
{
  return from_boolean( parse_expr( text ) );
}

/* "a=1,b=0" split by CLI11 into items */
std::map<std::string, bool> parse_bindings( std::vector<std::string> const& items )
{
  std::map<std::string, bool> result;
  for ( auto const& item : items )
  {
    auto const eq = item.find( '=' );
    if ( eq == std::string::npos )
      throw rejected( "expected name=0|1, got '" + item + "'" );
    auto const name = item.substr( 0, eq );
    auto const value = item.substr( eq + 1 );
    if ( !is_identifier( name ) )
      throw rejected( "invalid variable name '" + name + "'" );
    if ( value != "0" && value != "1" )
      throw rejected( "value of '" + name + "' must be 0 or 1" );
    if ( !result.emplace( name, value == "1" ).second )
      throw rejected( "variable '" + name + "' assigned twice" );
  }
  return result;
}

std::string readback( circuit const& c )
{
  return print_expr( to_boolean( c ) );
}

void print_table( circuit const& c, std::ostream& out )
{
  auto vars = variables( c );
  std::sort( vars.begin(), vars.end() );
  auto const table = tabulate( c, vars );
  for ( auto const& v : vars )
    out << v << ' ';
  out << "| out\n";
  for ( auto r = 0u; r < table.num_rows(); ++r )
  {
    for ( auto k = 0u; k < vars.size(); ++k )
      out << ( ( r >> ( vars.size() - 1 - k ) ) & 1u ) << std::string( vars[k].size(), ' ' );
    out << "| " << table.get( r, 0 ) << '\n';
  }
}

std::string describe_assignment( assignment const& sigma )
{
  std::string text;
  for ( auto const& [k, v] : sigma )
    text += ( text.empty() ? "" : ", " ) + k + "=" + ( v ? "1" : "0" );
  return text;
}

} // namespace

int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Phase-encoded wave logic circuits: design, analysis and optimisation", "wavelogic" };
  app.require_subcommand( 1 );
  int code = exit_true;

  std::string expr1, expr2, file;
  int budget = 0;
  bool show_trace = false, checked = false, exhaustive = false, check_rules = false;
  std::vector<std::string> bindings;

  auto* tt = app.add_subcommand( "tt", "print the truth table, variables sorted by name" );
  tt->add_option( "expr", expr1 )->required();
  tt->callback( [&] { print_table( circuit_of( expr1 ), out ); } );

  auto* eval = app.add_subcommand( "eval", "evaluate under an assignment" );
  eval->add_option( "expr", expr1 )->required();
  eval->add_option( "--assign", bindings, "name=0|1 pairs" )->delimiter( ',' );
  eval->callback( [&] {
    auto const c = circuit_of( expr1 );
    auto const fixed = parse_bindings( bindings );
    assignment const sigma( fixed.begin(), fixed.end() );
    for ( auto const& v : variables( c ) )
    {
      if ( !sigma.count( v ) )
        throw rejected( "no value for variable '" + v + "'" );
    }
    for ( auto bit : eval_bit( c, sigma ) )
      out << bit << '\n';
  } );

  auto* equiv = app.add_subcommand( "equiv", "exit 0 iff both expressions are equivalent" );
  equiv->add_option( "expr1", expr1 )->required();
  equiv->add_option( "expr2", expr2 )->required();
  equiv->callback( [&] {
    auto const diff = distinguishing_assignment( circuit_of( expr1 ), circuit_of( expr2 ) );
    if ( !diff )
    {
      out << "equivalent\n";
      return;
    }
    out << "not equivalent: " << describe_assignment( *diff ) << '\n';
    code = exit_false;
  } );

  auto* simp = app.add_subcommand( "simplify", "rewrite to a local cost minimum" );
  simp->add_option( "expr", expr1 )->required();
  simp->add_option( "--budget", budget, "maximum number of steps" )->default_val( 1000 );
  simp->add_flag( "--trace", show_trace, "print the derivation" );
  simp->add_flag( "--checked", checked, "verify equivalence after every step" );
  simp->add_flag( "--exhaustive", exhaustive, "breadth-first search, circuits of at most 10 nodes" );
  simp->callback( [&] {
    engine_options opts;
    opts.checked = checked;
    opts.exhaustive = exhaustive;
    auto const trace = simplify( circuit_of( expr1 ), budget, opts );
    out << readback( trace.final ) << '\n';
    if ( show_trace )
      out << format_trace( trace );
  } );

  auto* subst = app.add_subcommand( "subst", "fix variables, then simplify" );
  subst->add_option( "expr", expr1 )->required();
  subst->add_option( "--set", bindings, "name=0|1 pairs" )->delimiter( ',' )->required();
  subst->add_option( "--budget", budget, "maximum number of steps" )->default_val( 1000 );
  subst->add_flag( "--trace", show_trace, "print the derivation" );
  subst->callback( [&] {
    auto const trace = analyze( circuit_of( expr1 ), parse_bindings( bindings ), budget );
    out << readback( trace.final ) << '\n';
    if ( show_trace )
      out << format_trace( trace );
  } );

  auto* dot = app.add_subcommand( "to-dot", "export a Graphviz diagram" );
  dot->add_option( "expr", expr1 )->required();
  dot->add_option( "-o,--output", file, "write to FILE instead of stdout" );
  dot->callback( [&] {
    auto const text = export_dot( circuit_of( expr1 ) );
    if ( file.empty() )
    {
      out << text;
      return;
    }
    std::ofstream f( file );
    if ( !( f << text ) )
      throw rejected( "cannot write '" + file + "'" );
  } );

  auto* rules = app.add_subcommand( "rules", "list the rewrite rules" );
  rules->add_flag( "--check", check_rules, "certify every rule by exhaustive instantiation" );
  rules->callback( [&] {
    for ( auto const& rule : all_rules() )
    {
      out << rule.name << ( rule.origin == provenance::derived ? " (derived)" : "" );
      if ( !rule.side_condition_text.empty() )
        out << " if " << rule.side_condition_text;
      if ( check_rules )
      {
        auto const verdict = check_soundness( rule );
        if ( auto const* cert = std::get_if<certificate>( &verdict ) )
          out << ": certified, " << cert->instances << " instances, at most " << cert->max_rows << " rows";
        else
        {
          out << ": FAILED, " << std::get<counterexample>( verdict ).description;
          code = exit_false;
        }
      }
      out << '\n';
      auto const laws = boolean_reading( rule );
      if ( laws.empty() )
        out << "  structural\n";
      for ( auto const& law : laws )
        out << "  " << print_expr( law.lhs ) << " = " << print_expr( law.rhs ) << '\n';
    }
  } );

  auto* prove = app.add_subcommand( "prove", "search for a derivation between two expressions" );
  prove->add_option( "expr1", expr1 )->required();
  prove->add_option( "expr2", expr2 )->required();
  prove->add_option( "--budget", budget, "maximum derivation length" )->default_val( 20 );
  prove->callback( [&] {
    auto const a = circuit_of( expr1 );
    auto const b = circuit_of( expr2 );
    if ( !equivalent( a, b ) )
    {
      out << "not equivalent\n";
      code = exit_false;
      return;
    }
    auto const trace = prove_equal( a, b, budget );
    if ( !trace )
    {
      out << "not found (budget exhausted)\n";
      code = exit_false;
      return;
    }
    out << format_trace( *trace );
    out << ( replay( *trace ).verified ? "verified\n" : "replay failed\n" );
  } );

  auto* save = app.add_subcommand( "save", "write the circuit of an expression to a file" );
  save->add_option( "expr", expr1 )->required();
  save->add_option( "file", file )->required();
  save->callback( [&] { save_circuit( circuit_of( expr1 ), file ); } );

  auto* load = app.add_subcommand( "load", "read a circuit file" );
  load->add_option( "file", file )->required();
  load->callback( [&] {
    auto const c = load_circuit( file );
    out << c.size() << " nodes, " << c.num_outputs() << " output" << ( c.num_outputs() == 1 ? "" : "s" ) << ", cost "
        << to_string( cost( c ) ) << '\n';
    if ( c.num_outputs() == 1 )
      out << readback( c ) << '\n';
  } );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( CLI::ParseError const& e )
  {
    return app.exit( e, out, err ) == 0 ? exit_true : exit_usage;
  }
  catch ( rejected const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  catch ( std::exception const& e )
  {
    err << "internal error: " << e.what() << '\n';
    return exit_usage;
  }
  return code;
}

} // namespace wavelogic

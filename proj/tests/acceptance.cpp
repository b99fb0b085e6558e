/* Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure. */

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include <wavelogic/boolean.hpp>
#include <wavelogic/engine.hpp>
#include <wavelogic/rules.hpp>
#include <wavelogic/semantics.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace wavelogic;
using namespace wavelogic::test;

namespace
{

/* pinned limits */
constexpr double limit_gate_tables_s = 1.0;
constexpr double limit_adders_s = 1.0;
constexpr double limit_certification_s = 5.0;
constexpr double limit_rewrite_safety_s = 60.0;
constexpr double limit_simplify_s = 1.0;
constexpr double limit_analysis_s = 1.0;
constexpr double limit_derivation_s = 5.0;
constexpr double limit_bridge_s = 10.0;
constexpr std::size_t corpus_size = 10000;
constexpr std::size_t corpus_max_nodes = 12;
constexpr std::size_t bridge_samples = 100;
constexpr std::uint32_t seed = 20240611;

struct verdict
{
  bool pass = true;
  std::string detail;

  void fail( std::string const& why )
  {
    if ( pass )
      detail = why;
    pass = false;
  }
};

/* column of a single-output table as a 0/1 string, rows in table order */
std::string column_text( truth_table const& t, std::size_t output = 0 )
{
  std::string s;
  for ( auto r = 0u; r < t.num_rows(); ++r )
    s += t.get( r, output ) ? '1' : '0';
  return s;
}

verdict gate_tables()
{
  verdict v;
  auto const a = mk_var( "a" ), b = mk_var( "b" ), c = mk_var( "c" );
  /* rows as printed in the reference tables: a alone, (a,b), (a,b,c) */
  std::vector<std::tuple<std::string, circuit, std::string>> const gates{
      { "NOT", mk_not( a ), "10" },
      { "XOR", mk_xor( a, b ), "0110" },
      { "XNOR", mk_xnor( a, b ), "1001" },
      { "MAJ", mk_maj( a, b, c ), "00010111" },
      { "AND", mk_and( a, b ), "0001" },
      { "OR", mk_or( a, b ), "0111" },
      /* complement of the AND rows */
      { "NAND", mk_nand( a, b ), "1110" } };
  std::vector<std::string> const order{ "a", "b", "c" };
  for ( auto const& [name, gate, expected] : gates )
  {
    auto const vars = std::vector<std::string>( order.begin(), order.begin() + variables( gate ).size() );
    auto const got = column_text( tabulate( gate, vars ) );
    if ( got != expected )
      v.fail( name + " rows " + got + ", expected " + expected );
  }
  if ( v.pass )
    v.detail = "7 gates, all rows equal";
  return v;
}

verdict adders()
{
  verdict v;
  auto const half = tabulate( half_adder() );
  std::vector<std::string> const half_rows{ "00", "01", "01", "10" }; /* carry sum over (a,b) */
  if ( half.vars() != std::vector<std::string>{ "a", "b" } )
    v.fail( "half adder variable order" );
  for ( auto r = 0u; r < 4 && v.pass; ++r )
  {
    std::string row{ half.get( r, 0 ) ? '1' : '0', half.get( r, 1 ) ? '1' : '0' };
    if ( row != half_rows[r] )
      v.fail( "half adder row " + std::to_string( r ) + " = " + row );
  }

  auto const full = tabulate( full_adder() );
  std::vector<std::string> const full_rows{ "00", "01", "01", "10", "01", "10", "10", "11" }; /* c_out sum over (c_in,a,b) */
  if ( full.vars() != std::vector<std::string>{ "c_in", "a", "b" } )
    v.fail( "full adder variable order" );
  for ( auto r = 0u; r < 8 && v.pass; ++r )
  {
    std::string row{ full.get( r, 0 ) ? '1' : '0', full.get( r, 1 ) ? '1' : '0' };
    if ( row != full_rows[r] )
      v.fail( "full adder row " + std::to_string( r ) + " = " + row );
  }

  /* integer oracle */
  auto const bundle = full_adder();
  for ( auto r = 0u; r < 8 && v.pass; ++r )
  {
    auto const sigma = assignment_of( { "c_in", "a", "b" }, r );
    bool const c_out = oracle_eval( bundle.at( "c_out" ), sigma )[0];
    bool const sum = oracle_eval( bundle.at( "sum" ), sigma )[0];
    if ( 2 * int( c_out ) + int( sum ) != int( sigma.at( "a" ) ) + int( sigma.at( "b" ) ) + int( sigma.at( "c_in" ) ) )
      v.fail( "2*c_out+sum differs from a+b+c_in in row " + std::to_string( r ) );
  }
  if ( v.pass )
    v.detail = "4 + 8 rows equal, integer identity on 8 rows";
  return v;
}

verdict certification()
{
  verdict v;
  std::ostringstream out, err;
  if ( auto const code = run_cli( { "rules", "--check" }, out, err ); code != 0 )
    v.fail( "rules --check exited " + std::to_string( code ) + ": " + err.str() );

  std::vector<std::string> const expected{ "ID", "Comp", "F", "C1", "C2", "CM", "D", "M", "A", "CH", "CH2" };
  std::vector<std::string> names;
  std::size_t rows = 0;
  for ( auto const& rule : all_rules() )
  {
    names.push_back( rule.name );
    auto const verdict = check_soundness( rule );
    if ( auto const* cert = std::get_if<certificate>( &verdict ) )
    {
      rows = std::max( rows, cert->max_rows );
      if ( cert->instances == 0 )
        v.fail( rule.name + " has no admissible instance" );
      if ( out.str().find( rule.name + ( rule.origin == provenance::derived ? " (derived)" : "" ) ) == std::string::npos )
        v.fail( rule.name + " missing from rules --check output" );
    }
    else
      v.fail( rule.name + ": " + std::get<counterexample>( verdict ).description );
  }
  if ( names != expected )
    v.fail( "catalogue differs from the expected eleven rules" );
  if ( rows > 32 )
    v.fail( "an instance needed " + std::to_string( rows ) + " rows" );
  if ( v.pass )
    v.detail = "11 rules certified, at most " + std::to_string( rows ) + " rows per instance";
  return v;
}

struct corpus_stats
{
  std::size_t circuits = 0;
  std::size_t preserved = 0;
  std::size_t merge_sums = 0;
  std::map<int, std::size_t> sum_histogram;
  std::map<std::string, std::size_t> rule_use;
  std::string first_failure;
};

void record_sums( circuit const& c, corpus_stats& stats )
{
  auto const vars = variables( c );
  for ( auto r = 0u; r < ( 1u << vars.size() ); ++r )
  {
    for ( auto s : eval_wave_traced( c, assignment_of( vars, r ) ).merge_sums )
    {
      ++stats.merge_sums;
      ++stats.sum_histogram[s];
    }
  }
}

/* one random applicable (rule, direction), then one random site */
std::optional<match_site> random_site( circuit const& c, rng& gen )
{
  std::vector<std::vector<match_site>> choices;
  for ( auto const& rule : all_rules() )
  {
    for ( auto d : { direction::forward, direction::backward } )
    {
      auto sites = find_matches( c, rule, d );
      if ( !sites.empty() )
        choices.push_back( std::move( sites ) );
    }
  }
  if ( choices.empty() )
    return std::nullopt;
  auto const& pick = choices[std::uniform_int_distribution<std::size_t>( 0, choices.size() - 1 )( gen )];
  return pick[std::uniform_int_distribution<std::size_t>( 0, pick.size() - 1 )( gen )];
}

circuit corpus_member( std::size_t i, rng& gen )
{
  std::vector<std::string> const all{ "a", "b", "c", "d" };
  auto const nvars = std::uniform_int_distribution<std::size_t>( 1, 4 )( gen );
  std::vector<std::string> const vars( all.begin(), all.begin() + nvars );

  auto const small_expr = [&]() {
    while ( true )
    {
      auto c = from_boolean( random_expr( gen, vars, 2 ) );
      if ( c.size() <= corpus_max_nodes )
        return c;
    }
  };

  switch ( i % 3 )
  {
  case 0: return small_expr();
  case 1:
  {
    auto c = small_expr();
    auto const steps = std::uniform_int_distribution<int>( 1, 4 )( gen );
    for ( auto s = 0; s < steps; ++s )
    {
      auto const site = random_site( c, gen );
      if ( !site || site->result->size() > corpus_max_nodes )
        break;
      c = *site->result;
    }
    return c;
  }
  default: return random_dag( gen, corpus_max_nodes, vars );
  }
}

corpus_stats run_corpus()
{
  corpus_stats stats;
  rng gen( seed );
  for ( auto i = 0u; i < corpus_size; ++i )
  {
    auto const c = corpus_member( i, gen );
    ++stats.circuits;
    record_sums( c, stats );
    auto const site = random_site( c, gen );
    if ( !site )
    {
      if ( stats.first_failure.empty() )
        stats.first_failure = "circuit " + std::to_string( i ) + " has no applicable rule";
      continue;
    }
    ++stats.rule_use[site->rule + " " + to_string( site->dir )];
    auto const after = apply( c, *site );
    record_sums( after, stats );
    if ( oracle_equivalent( c, after ) )
      ++stats.preserved;
    else if ( stats.first_failure.empty() )
      stats.first_failure = "circuit " + std::to_string( i ) + ": " + site->summary();
  }
  return stats;
}

verdict rewrite_safety( corpus_stats const& stats )
{
  verdict v;
  if ( stats.circuits != corpus_size || stats.preserved != stats.circuits )
    v.fail( std::to_string( stats.preserved ) + "/" + std::to_string( stats.circuits ) + " preserved; " + stats.first_failure );
  else
  {
    std::string unused;
    for ( auto const& rule : all_rules() )
    {
      for ( auto d : { direction::forward, direction::backward } )
      {
        auto const key = rule.name + " " + to_string( d );
        if ( !stats.rule_use.count( key ) )
          unused += ( unused.empty() ? "" : ", " ) + key;
      }
    }
    v.detail = std::to_string( stats.preserved ) + "/" + std::to_string( stats.circuits ) + " rewrites preserved the table, " +
               std::to_string( stats.rule_use.size() ) + " (rule, direction) pairs exercised, never applicable: " + unused;
  }
  return v;
}

verdict wave_invariant( corpus_stats const& stats )
{
  verdict v;
  std::string hist;
  for ( auto const& [s, n] : stats.sum_histogram )
  {
    hist += ( hist.empty() ? "" : " " ) + std::to_string( s ) + ":" + std::to_string( n );
    if ( s != -3 && s != -1 && s != 1 && s != 3 )
      v.fail( std::to_string( n ) + " merge sums equal to " + std::to_string( s ) );
  }
  if ( stats.merge_sums == 0 )
    v.fail( "no merge evaluated" );
  if ( v.pass )
    v.detail = std::to_string( stats.merge_sums ) + " merge sums {" + hist + "}";
  return v;
}

/* replays a trace step by step, checking the oracle and cost monotonicity */
void audit_trace( derivation_trace const& trace, bool monotone, verdict& v, std::string const& name )
{
  auto current = trace.initial;
  for ( auto const& step : trace.steps )
  {
    auto const sites = find_matches( current, rule_by_name( step.rule ), step.dir );
    if ( step.site_index >= sites.size() )
    {
      v.fail( name + ": step " + step.rule + " not reproducible" );
      return;
    }
    auto const next = apply( current, sites[step.site_index] );
    if ( !oracle_equivalent( current, next ) )
      v.fail( name + ": step " + step.rule + " changed the table" );
    if ( monotone && cost( current ) < cost( next ) )
      v.fail( name + ": step " + step.rule + " increased the cost" );
    current = next;
  }
  if ( !isomorphic( current, trace.final ) )
    v.fail( name + ": trace does not reach its final circuit" );
}

verdict simplification()
{
  verdict v;
  engine_options opts;
  opts.checked = true;
  auto const a = mk_var( "a" ), b = mk_var( "b" );
  std::vector<std::pair<std::string, circuit>> const cases{ { "not(not(a))", mk_not( mk_not( a ) ) },
                                                             { "maj(a,a,b)", mk_maj( a, a, b ) },
                                                             { "maj(a,0,1)", mk_maj( a, mk_const( false ), mk_const( true ) ) },
                                                             { "xor(a,0)", mk_xor( a, mk_const( false ) ) } };
  std::string detail;
  for ( auto const& [name, c] : cases )
  {
    auto const trace = simplify( c, 100, opts );
    if ( !isomorphic( trace.final, a ) )
      v.fail( name + " simplified to a circuit of cost " + to_string( cost( trace.final ) ) );
    if ( cost( trace.final ) != circuit_cost{ 0, 0, 1 } )
      v.fail( name + " final cost " + to_string( cost( trace.final ) ) );
    if ( !oracle_equivalent( c, trace.final ) )
      v.fail( name + " changed the table" );
    audit_trace( trace, true, v, name );
    detail += ( detail.empty() ? "" : ", " ) + name + " in " + std::to_string( trace.steps.size() );
  }
  if ( v.pass )
    v.detail = detail + " steps, all to a at (0,0,1)";
  return v;
}

verdict analysis()
{
  verdict v;
  engine_options opts;
  opts.checked = true;
  auto const a = mk_var( "a" ), b = mk_var( "b" ), c = mk_var( "c" );
  auto const m = mk_maj( a, b, c );
  auto const low = analyze( m, { { "a", false } }, 100, opts ).final;
  auto const high = analyze( m, { { "a", true } }, 100, opts ).final;
  if ( !oracle_equivalent( low, mk_and( b, c ) ) )
    v.fail( "a=0 does not give and(b,c)" );
  if ( !oracle_equivalent( high, mk_or( b, c ) ) )
    v.fail( "a=1 does not give or(b,c)" );
  if ( v.pass )
    v.detail = "a=0 gives cost " + to_string( cost( low ) ) + ", a=1 gives cost " + to_string( cost( high ) );
  return v;
}

verdict derivations()
{
  verdict v;
  auto const a = mk_var( "a" ), b = mk_var( "b" );
  std::vector<std::pair<std::string, circuit>> const cases{
      { "not(not(a))", mk_not( mk_not( a ) ) }, { "xor(a,0)", mk_xor( a, mk_const( false ) ) }, { "maj(a,a,b)", mk_maj( a, a, b ) } };
  std::string detail;
  for ( auto const& [name, c] : cases )
  {
    auto const trace = prove_equal( c, a, 20 );
    if ( !trace )
    {
      v.fail( name + " = a not found" );
      continue;
    }
    auto const report = replay( *trace );
    if ( !report.verified )
      v.fail( name + ": replay failed, " + report.message );
    audit_trace( *trace, false, v, name );
    std::string rules;
    for ( auto const& s : trace->steps )
      rules += ( rules.empty() ? "" : "," ) + s.rule;
    detail += ( detail.empty() ? "" : ", " ) + name + " [" + rules + "]";
  }
  if ( v.pass )
    v.detail = detail + ", all replayed";
  return v;
}

verdict bridge()
{
  verdict v;
  rng gen( seed + 1 );
  std::vector<std::string> const all{ "a", "b", "c", "d", "e", "f" };
  for ( auto i = 0u; i < bridge_samples && v.pass; ++i )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 6 )( gen );
    std::vector<std::string> const vars( all.begin(), all.begin() + n );
    auto const e = random_expr( gen, vars, 4 );
    auto const c = from_boolean( e );
    auto const back = to_boolean( c );
    auto const table = tabulate( c, vars );
    auto const synthesized = from_truth_table( table );
    for ( auto r = 0u; r < table.num_rows(); ++r )
    {
      auto const sigma = assignment_of( vars, r );
      auto const expected = oracle_expr( e, sigma );
      if ( table.get( r, 0 ) != expected )
        v.fail( "from_boolean differs on sample " + std::to_string( i ) );
      if ( oracle_expr( back, sigma ) != expected )
        v.fail( "to_boolean differs on sample " + std::to_string( i ) );
      if ( oracle_expr( synthesized, sigma ) != expected )
        v.fail( "from_truth_table differs on sample " + std::to_string( i ) );
    }
  }
  if ( v.pass )
    v.detail = std::to_string( bridge_samples ) + " expressions, three round trips each";
  return v;
}

template<typename Fn>
std::pair<verdict, double> timed( Fn&& fn )
{
  auto const start = std::chrono::steady_clock::now();
  verdict v;
  try
  {
    v = fn();
  }
  catch ( std::exception const& e )
  {
    v.fail( std::string( "exception: " ) + e.what() );
  }
  return { v, std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count() };
}

bool report( int id, std::string const& title, verdict v, double seconds, double limit )
{
  if ( seconds >= limit )
    v.fail( "took " + std::to_string( seconds ) + " s, limit " + std::to_string( limit ) + " s" );
  char time[32];
  std::snprintf( time, sizeof( time ), "%.3f s", seconds );
  std::cout << ( v.pass ? "[PASS] " : "[FAIL] " ) << id << ". " << title << ": " << v.detail << " (" << time << ")\n";
  return v.pass;
}

} // namespace

int main()
{
  bool ok = true;

  auto [c1, t1] = timed( gate_tables );
  ok &= report( 1, "gate tables exact", c1, t1, limit_gate_tables_s );

  auto [c2, t2] = timed( adders );
  ok &= report( 2, "adders exact", c2, t2, limit_adders_s );

  auto [c3, t3] = timed( certification );
  ok &= report( 3, "rule certification", c3, t3, limit_certification_s );

  corpus_stats stats;
  auto [c4, t4] = timed( [&] {
    stats = run_corpus();
    return rewrite_safety( stats );
  } );
  ok &= report( 4, "rewrite safety", c4, t4, limit_rewrite_safety_s );

  auto [c5, t5] = timed( simplification );
  ok &= report( 5, "simplification benchmarks", c5, t5, limit_simplify_s );

  auto [c6, t6] = timed( analysis );
  ok &= report( 6, "analysis workflow", c6, t6, limit_analysis_s );

  auto [c7, t7] = timed( [&] { return wave_invariant( stats ); } );
  ok &= report( 7, "wave invariant", c7, t4 + t7, limit_rewrite_safety_s );

  auto [c8, t8] = timed( derivations );
  ok &= report( 8, "derivation search", c8, t8, limit_derivation_s );

  auto [c9, t9] = timed( bridge );
  ok &= report( 9, "bridge round trips", c9, t9, limit_bridge_s );

  return ok ? 0 : 1;
}

#include <gtest/gtest.h>

#include <wavelogic/boolean.hpp>
#include <wavelogic/rules.hpp>
#include <wavelogic/semantics.hpp>

#include "support.hpp"

using namespace wavelogic;
using namespace wavelogic::test;

namespace
{

certificate certify( std::string const& name )
{
  auto const verdict = check_soundness( rule_by_name( name ) );
  EXPECT_TRUE( std::holds_alternative<certificate>( verdict ) ) << name;
  return std::holds_alternative<certificate>( verdict ) ? std::get<certificate>( verdict ) : certificate{};
}

bool law_holds( boolean_law const& law )
{
  auto vars = variables( law.lhs );
  for ( auto const& v : variables( law.rhs ) )
  {
    if ( std::find( vars.begin(), vars.end(), v ) == vars.end() )
      vars.push_back( v );
  }
  for ( auto r = 0u; r < ( 1u << vars.size() ); ++r )
  {
    auto const sigma = assignment_of( vars, r );
    if ( oracle_expr( law.lhs, sigma ) != oracle_expr( law.rhs, sigma ) )
      return false;
  }
  return true;
}

bool contains( std::vector<boolean_law> const& laws, bool_expr const& lhs, bool_expr const& rhs )
{
  return std::any_of( laws.begin(), laws.end(), [&]( auto const& l ) { return l.lhs == lhs && l.rhs == rhs; } );
}

} // namespace

TEST( Catalogue, FixedOrderAndProvenance )
{
  std::vector<std::string> names;
  for ( auto const& r : all_rules() )
    names.push_back( r.name );
  EXPECT_EQ( names, ( std::vector<std::string>{ "ID", "Comp", "F", "C1", "C2", "CM", "D", "M", "A", "CH", "CH2" } ) );
  EXPECT_EQ( rule_by_name( "A" ).origin, provenance::derived );
  EXPECT_EQ( rule_by_name( "CH2" ).origin, provenance::derived );
  EXPECT_EQ( rule_by_name( "D" ).origin, provenance::base );
  EXPECT_THROW( rule_by_name( "nope" ), rejected );
}

TEST( Catalogue, TargetMetasAreBoundOrEnumerable )
{
  for ( auto const& r : all_rules() )
  {
    for ( auto const& m : r.metas )
      EXPECT_NE( r.find_meta( m.name ), nullptr );
  }
}

TEST( Certification, AllRulesCertified )
{
  for ( auto const& r : all_rules() )
  {
    auto const cert = certify( r.name );
    EXPECT_GT( cert.instances, 0u ) << r.name;
    EXPECT_LE( cert.max_rows, 32u ) << r.name;
  }
}

TEST( Certification, RowCounts )
{
  EXPECT_EQ( certify( "D" ).max_rows, 32u );
  EXPECT_EQ( certify( "A" ).max_rows, 16u );
  EXPECT_EQ( certify( "CH2" ).max_rows, 4u );
}

TEST( Certification, MutatedChoppingRuleFails )
{
  auto mutated = rule_by_name( "CH" );
  mutated.side_condition = {};
  auto const verdict = check_soundness( mutated );
  ASSERT_TRUE( std::holds_alternative<counterexample>( verdict ) );
  auto const& cx = std::get<counterexample>( verdict );
  EXPECT_EQ( cx.binding.at( "phi" ), cx.binding.at( "theta" ) );
  EXPECT_EQ( cx.binding.at( "phi" ), phase_param::constant( phase::zero ) );
  EXPECT_EQ( cx.inputs, ( assignment{ { "x", true } } ) );
}

TEST( Certification, MutatedFusionFails )
{
  auto mutated = rule_by_name( "F" );
  mutated.rhs = patterns::shift( phase_pattern::meta( "alpha" ) );
  EXPECT_TRUE( std::holds_alternative<counterexample>( check_soundness( mutated ) ) );
}

TEST( Instantiate, GroundInstances )
{
  auto const& f = rule_by_name( "F" );
  phase_binding const pipi{ { "alpha", phase_param::constant( phase::pi ) }, { "beta", phase_param::constant( phase::pi ) } };
  auto const lhs = instantiate( f, direction::forward, pipi );
  auto const rhs = instantiate( f, direction::backward, pipi );
  ASSERT_TRUE( lhs && rhs );
  EXPECT_EQ( cost( *rhs ), ( circuit_cost{ 0, 0, 1 } ) );
  EXPECT_TRUE( oracle_equivalent( *rhs, mk_shift( phase::zero ) ) );

  phase_binding const ab{ { "alpha", phase_param::variable( "a" ) }, { "beta", phase_param::variable( "b" ) } };
  EXPECT_FALSE( instantiate( f, direction::backward, ab ).has_value() );

  auto const m = instantiate( rule_by_name( "M" ), direction::forward, {} );
  ASSERT_TRUE( m );
  EXPECT_TRUE( oracle_equivalent( *m, mk_var( "x" ) ) );

  auto const ch = instantiate( rule_by_name( "CH" ), direction::forward,
                               { { "phi", phase_param::constant( phase::zero ) }, { "theta", phase_param::constant( phase::pi ) } } );
  ASSERT_TRUE( ch );
  EXPECT_TRUE( oracle_equivalent( *ch, mk_var( "x" ) ) );
}

TEST( Instantiate, FanRulesHaveOneOutputPerLeaf )
{
  auto const c1 = instantiate( rule_by_name( "C1" ), direction::forward, { { "alpha", phase_param::constant( phase::pi ) } } );
  ASSERT_TRUE( c1 );
  EXPECT_EQ( c1->num_outputs(), 3u );
  auto const c2 = instantiate( rule_by_name( "C2" ), direction::backward, {} );
  ASSERT_TRUE( c2 );
  EXPECT_EQ( c2->num_outputs(), 5u );
  EXPECT_EQ( cost( *c2 ), ( circuit_cost{ 0, 2, 0 } ) );
}

TEST( Readings, AllLawsHold )
{
  for ( auto const& r : all_rules() )
  {
    for ( auto const& law : boolean_reading( r ) )
      EXPECT_TRUE( law_holds( law ) ) << r.name;
  }
}

TEST( Readings, Examples )
{
  auto const x = bool_expr::var( "x" ), y = bool_expr::var( "y" );
  auto const cm = boolean_reading( rule_by_name( "CM" ) );
  EXPECT_TRUE( contains( cm, bool_expr::conj( x, y ), bool_expr::conj( y, x ) ) );
  EXPECT_TRUE( contains( cm, bool_expr::disj( x, y ), bool_expr::disj( y, x ) ) );

  auto const ch2 = boolean_reading( rule_by_name( "CH2" ) );
  EXPECT_TRUE( contains( ch2, bool_expr::disj( x, bool_expr::negate( x ) ), bool_expr::constant( true ) ) );
  EXPECT_TRUE( contains( ch2, bool_expr::conj( x, bool_expr::negate( x ) ), bool_expr::constant( false ) ) );

  EXPECT_EQ( boolean_reading( rule_by_name( "F" ) ).size(), 1u );
  EXPECT_TRUE( boolean_reading( rule_by_name( "C1" ) ).empty() );
}

TEST( DerivedFacts, ComplementDuality )
{
  auto const x = mk_var( "x" ), y = mk_var( "y" ), z = mk_var( "z" );
  EXPECT_TRUE( oracle_equivalent( mk_not( mk_maj( x, y, z ) ), mk_maj( mk_not( x ), mk_not( y ), mk_not( z ) ) ) );
}

TEST( DerivedFacts, ChoppingWithComplement )
{
  auto const x = mk_var( "x" ), w = mk_var( "w" );
  EXPECT_TRUE( oracle_equivalent( mk_maj( x, mk_not( x ), w ), w ) );
}

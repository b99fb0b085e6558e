/*!
  \file boolean.hpp
  \brief Boolean expressions and their translation to and from circuits
*/

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "semantics.hpp"

namespace wavelogic
{

enum class bool_op
{
  variable,
  constant,
  negation,
  conjunction,
  disjunction,
  exclusive_or,
  majority
};

/*! \brief Immutable Boolean expression tree with shared subterms. */
class bool_expr
{
public:
  static bool_expr var( std::string name );
  static bool_expr constant( bool value );
  static bool_expr negate( bool_expr e );
  static bool_expr conj( bool_expr a, bool_expr b );
  static bool_expr disj( bool_expr a, bool_expr b );
  static bool_expr exor( bool_expr a, bool_expr b );
  static bool_expr maj( bool_expr a, bool_expr b, bool_expr c );

  bool_op op() const noexcept { return node_->op; }
  std::string const& name() const noexcept { return node_->name; }
  bool value() const noexcept { return node_->value; }
  std::vector<bool_expr> const& args() const noexcept { return node_->args; }

  friend bool operator==( bool_expr const& a, bool_expr const& b );

private:
  struct data
  {
    bool_op op{};
    std::string name;
    bool value = false;
    std::vector<bool_expr> args;
  };

  explicit bool_expr( std::shared_ptr<data const> node ) : node_( std::move( node ) ) {}

  std::shared_ptr<data const> node_;
};

/* independent recursive evaluator; throws `rejected` for unassigned variables */
bool evaluate( bool_expr const& e, assignment const& sigma );

/* first occurrence, left to right */
std::vector<std::string> variables( bool_expr const& e );

std::size_t expr_size( bool_expr const& e );

/*! \brief Structural translation.

  Not is a series pi shift, And/Or are majorities with a constant 0/1 arm,
  Xor is series composition, Maj is `mk_maj`.
*/
circuit from_boolean( bool_expr const& e );

/*! \brief Structural readback of a single-output circuit.

  Phase chains become Var/Const/Not/Xor, merges become Maj, specialised to
  And/Or when exactly one arm reads as a constant.
*/
bool_expr to_boolean( circuit const& c );

/*! \brief Naive sum-of-products synthesis from a single-output table. */
bool_expr from_truth_table( truth_table const& table );

/* outputs (carry, sum) over (a, b) */
circuit_bundle half_adder();
/* outputs (c_out, sum) over (c_in, a, b) */
circuit_bundle full_adder();

} // namespace wavelogic

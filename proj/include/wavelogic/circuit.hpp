/*!
  \file circuit.hpp
  \brief Circuit IR for phase-encoded wave logic

  A circuit is an acyclic port graph built from five node kinds: sources
  (reference wave, phase 0), phase shifts, 1-to-3 copies, 3-to-1 merges and
  outputs. Values are immutable; every operation returns a new circuit.
*/

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace wavelogic
{

/*! \brief Phase of a wave, an element of {0, pi} under addition mod 2pi. */
enum class phase : std::uint8_t
{
  zero = 0,
  pi = 1
};

constexpr phase operator+( phase a, phase b ) noexcept
{
  return a == b ? phase::zero : phase::pi;
}

constexpr bool to_bit( phase p ) noexcept { return p == phase::pi; }
constexpr phase from_bit( bool b ) noexcept { return b ? phase::pi : phase::zero; }

/*! \brief True iff `name` matches `[a-z][a-z0-9_]*`. */
bool is_identifier( std::string_view name ) noexcept;

/*! \brief Parameter of a phase shift: a fixed phase or a named Boolean input.

  Equal names on different nodes denote the same external input.
*/
class phase_param
{
public:
  phase_param() = default;

  static phase_param constant( phase p );
  static phase_param constant( bool bit ) { return constant( from_bit( bit ) ); }
  /* throws `rejected` for names that are not identifiers */
  static phase_param variable( std::string name );

  bool is_variable() const noexcept { return std::holds_alternative<std::string>( value_ ); }
  phase value() const;
  std::string const& name() const;

  /* "0", "pi" or the variable name */
  std::string to_string() const;

  friend bool operator==( phase_param const&, phase_param const& ) = default;

private:
  std::variant<phase, std::string> value_{ phase::zero };
};

/*! \brief Sum of two parameters when it is again a parameter.

  Constants add in the group, zero is neutral, and a variable added to itself
  cancels. Sums of distinct variables, or of a variable and pi, have no
  parameter form and yield `std::nullopt`.
*/
std::optional<phase_param> add( phase_param const& a, phase_param const& b );

enum class node_kind : std::uint8_t
{
  source,
  phase_shift,
  copy,
  merge,
  output
};

constexpr int input_arity( node_kind k ) noexcept
{
  switch ( k )
  {
  case node_kind::source: return 0;
  case node_kind::merge: return 3;
  default: return 1;
  }
}

constexpr int output_arity( node_kind k ) noexcept
{
  switch ( k )
  {
  case node_kind::output: return 0;
  case node_kind::copy: return 3;
  default: return 1;
  }
}

char const* to_string( node_kind k ) noexcept;

using node_id = std::uint32_t;

struct node
{
  node_id id{};
  node_kind kind{};
  phase_param param{};

  friend bool operator==( node const&, node const& ) = default;
};

struct edge
{
  node_id from{};
  int from_port{};
  node_id to{};
  int to_port{};

  friend auto operator<=>( edge const&, edge const& ) = default;
};

class circuit
{
public:
  /*! \brief Assembles a circuit without checking any invariant.

    Meant for hand-built and deserialised graphs; call `validate` before
    handing the result to any other operation.
  */
  static circuit from_parts( std::vector<node> nodes, std::vector<edge> edges, std::vector<node_id> outputs );

  std::vector<node> const& nodes() const noexcept { return nodes_; }
  std::vector<edge> const& edges() const noexcept { return edges_; }
  std::vector<node_id> const& outputs() const noexcept { return outputs_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }

  node const* find( node_id id ) const noexcept;

private:
  circuit() = default;

  std::vector<node> nodes_;
  std::vector<edge> edges_;
  std::vector<node_id> outputs_;
};

/*! \name Constructors
  All constructors return canonical circuits (node ids 0..n-1 in canonical
  order, see `canonical`).
  \{
*/
circuit mk_var( std::string const& name );
circuit mk_const( bool bit );
/* shift by a constant phase on a fresh reference wave; same as mk_const */
circuit mk_shift( phase p );

/*! \brief Plugs the single output of `lower` into the single source of `upper`. */
circuit compose_series( circuit const& lower, circuit const& upper );
circuit compose_parallel( circuit const& left, circuit const& right );

/*! \brief Majority gate: a fresh source feeds a copy whose three branches
  replace the sources of `x`, `y` and `z`; the branch results are merged.

  Each argument needs exactly one source and one output.
*/
circuit mk_maj( circuit const& x, circuit const& y, circuit const& z );

circuit mk_not( circuit const& x );
circuit mk_xor( circuit const& x, circuit const& y );
circuit mk_xnor( circuit const& x, circuit const& y );
circuit mk_and( circuit const& x, circuit const& y );
circuit mk_or( circuit const& x, circuit const& y );
circuit mk_nand( circuit const& x, circuit const& y );
/*! \} */

/*! \brief Replaces every phase shift labelled `name` by the constant `bit`. */
circuit substitute( circuit const& c, std::string const& name, bool bit );

/*! \brief Variable names in order of first occurrence along a topological
  traversal that breaks ties by smallest node id. */
std::vector<std::string> variables( circuit const& c );

enum class violation_kind
{
  duplicate_id,
  bad_edge,
  port_conflict,
  arity,
  cycle,
  unreachable,
  no_output,
  output_list
};

char const* to_string( violation_kind k ) noexcept;

struct violation
{
  violation_kind kind{};
  std::optional<node_id> node;
  std::string message;
};

/*! \brief Lists every violated structural invariant; empty means valid. */
std::vector<violation> validate( circuit const& c );

std::string describe( std::vector<violation> const& violations );

struct circuit_cost
{
  std::size_t merges{};
  std::size_t copies{};
  std::size_t phase_shifts{};

  friend auto operator<=>( circuit_cost const&, circuit_cost const& ) = default;
};

std::string to_string( circuit_cost const& cost );

circuit_cost cost( circuit const& c );

/*! \brief Relabels node ids into canonical order.

  The order is a post-order depth-first traversal from the outputs (in output
  order), visiting input ports in port order. Two valid circuits are
  isomorphic (respecting port and output order) iff their canonical forms are
  equal. Throws `rejected` if `c` is invalid.
*/
circuit canonical( circuit const& c );

/*! \brief 64-bit hash of the canonical form. */
std::uint64_t fingerprint( circuit const& c );

bool isomorphic( circuit const& a, circuit const& b );

/*! \brief Named single-output circuits evaluated under one shared assignment. */
class circuit_bundle
{
public:
  circuit_bundle() = default;

  /* throws `rejected` on duplicate names or multi-output circuits */
  void add( std::string name, circuit c );

  /* declared input order; must cover the variables of every output */
  void set_interface( std::vector<std::string> names );

  std::vector<std::pair<std::string, circuit>> const& outputs() const noexcept { return outputs_; }
  std::vector<std::string> const& interface() const noexcept { return interface_; }
  circuit const& at( std::string_view name ) const;

private:
  std::vector<std::pair<std::string, circuit>> outputs_;
  std::vector<std::string> interface_;
};

/*! \brief The declared interface if set, otherwise first occurrence across outputs. */
std::vector<std::string> variables( circuit_bundle const& b );

} // namespace wavelogic

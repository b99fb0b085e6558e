/*!
  \file rules.hpp
  \brief Diagram rewrite rules

  A rule is a pair of open diagrams over metavariables. Two pattern families
  cover the catalogue:

  - `term`: one wave enters, one leaves. Built from bare wires, single phase
    shifts, series composition, majority gadgets (a copy whose three branches
    reconverge at one merge) and wire metavariables standing for arbitrary
    single-entry single-exit sub-diagrams.
  - `fan`: one wave enters and is distributed over copy trees to numbered
    boundary wires (leaves).

  Matching is modulo the symmetry of copy outputs and merge inputs.
*/

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "boolean.hpp"
#include "circuit.hpp"

namespace wavelogic
{

enum class meta_sort
{
  /* any phase parameter: constant or variable */
  phase,
  /* constant phases only */
  constant_phase,
  /* a sub-diagram wire */
  wire
};

struct meta_var
{
  std::string name;
  meta_sort sort{};
};

struct phase_pattern
{
  enum class kind
  {
    constant,
    meta,
    sum
  };

  kind k = kind::constant;
  phase value = phase::zero;
  std::string lhs, rhs;

  static phase_pattern fixed( phase p ) { return { kind::constant, p, {}, {} }; }
  static phase_pattern meta( std::string name ) { return { kind::meta, phase::zero, std::move( name ), {} }; }
  static phase_pattern sum( std::string a, std::string b ) { return { kind::sum, phase::zero, std::move( a ), std::move( b ) }; }
};

struct term
{
  enum class kind
  {
    wire,
    region,
    shift,
    seq,
    maj
  };

  kind k = kind::wire;
  std::string name;
  phase_pattern param;
  /* seq: {lower, upper}; maj: three branches */
  std::vector<term> parts;
};

struct fan
{
  enum class kind
  {
    leaf,
    shift,
    copy
  };

  kind k = kind::leaf;
  int leaf = 0;
  phase_pattern param;
  std::vector<fan> parts;
};

namespace patterns
{
term wire();
term region( std::string name );
term shift( phase_pattern p );
term shift( phase p );
term seq( term lower, term upper );
term maj( term a, term b, term c );

fan leaf( int index );
fan shift( phase_pattern p, fan next );
fan copy( fan a, fan b, fan c );
} // namespace patterns

using pattern = std::variant<term, fan>;

enum class direction
{
  forward, /* L->R */
  backward /* R->L */
};

char const* to_string( direction d ) noexcept;
direction opposite( direction d ) noexcept;

enum class provenance
{
  base,
  derived
};

using phase_binding = std::map<std::string, phase_param>;

struct rewrite_rule
{
  std::string name;
  std::vector<meta_var> metas;
  pattern lhs;
  pattern rhs;
  /* evaluated on complete phase bindings; empty means always true */
  std::function<bool( phase_binding const& )> side_condition;
  std::string side_condition_text;
  provenance origin = provenance::base;

  meta_var const* find_meta( std::string_view meta_name ) const;
  pattern const& side( direction d ) const { return d == direction::forward ? lhs : rhs; }
  pattern const& target( direction d ) const { return d == direction::forward ? rhs : lhs; }
  bool admits( phase_binding const& b ) const { return !side_condition || side_condition( b ); }
};

/*! \brief The certified catalogue in fixed order:
  ID, Comp, F, C1, C2, CM, D, M, A, CH, CH2.

  Certification runs on first use; an uncertified rule throws `internal_error`.
*/
std::vector<rewrite_rule> const& all_rules();

/* throws `rejected` for unknown names */
rewrite_rule const& rule_by_name( std::string_view name );

/*! \brief Ground instance of one side.

  The entering wave is the reference source, wire metavariables become
  shifts by a fresh variable named after the metavariable, fan leaves become
  outputs in leaf order. Returns nullopt when a sum parameter has no
  parameter form under `binding`.
*/
std::optional<circuit> instantiate( rewrite_rule const& rule, direction side, phase_binding const& binding );

struct certificate
{
  std::size_t instances = 0;
  /* largest number of rows compared for a single instance */
  std::size_t max_rows = 0;
};

struct counterexample
{
  phase_binding binding;
  assignment inputs;
  std::string description;
};

using soundness_verdict = std::variant<certificate, counterexample>;

/*! \brief Exhaustive soundness check.

  Phase metavariables range over {0, pi} and fresh variables (one per phase
  metavariable, so equal and distinct variable bindings are both covered);
  constant-only metavariables over {0, pi}; wire metavariables over fresh
  variable wires. Every admissible instance is compared by truth table.
*/
soundness_verdict check_soundness( rewrite_rule const& rule );

struct boolean_law
{
  bool_expr lhs;
  bool_expr rhs;
};

/*! \brief Boolean-algebra laws encoded by the rule; empty for purely
  structural rules (C1, C2). */
std::vector<boolean_law> boolean_reading( rewrite_rule const& rule );

} // namespace wavelogic

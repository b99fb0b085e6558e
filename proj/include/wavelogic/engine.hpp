/*!
  \file engine.hpp
  \brief Rule matching, application, simplification and derivation search

  Node ids in match sites refer to `canonical(c)` of the host circuit.
*/

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "rules.hpp"

namespace wavelogic
{

/*! \brief Sub-diagram bound to a wire metavariable.

  `entry` is the output port feeding the region, `exit` the output port
  carrying its result; both equal for an empty region.
*/
struct wire_anchor
{
  node_id entry_node{};
  int entry_port{};
  node_id exit_node{};
  int exit_port{};
  std::vector<node_id> nodes;
};

struct match_site
{
  std::string rule;
  direction dir = direction::forward;
  /* complete phase binding, including enumerated free metavariables */
  phase_binding phases;
  std::map<std::string, wire_anchor> wires;
  /* pattern and region nodes replaced by the rewrite, ascending */
  std::vector<node_id> anchors;
  std::uint64_t host_fingerprint{};
  std::uint64_t result_fingerprint{};
  /* rewritten circuit, canonical */
  std::shared_ptr<circuit const> result;

  /* e.g. "CH L->R {phi=0, theta=pi} at [3,4,5,6]" */
  std::string summary() const;
};

/*! \brief All sites of `rule` in `c` for one direction.

  Sites are ordered by the canonical position of the pattern boundary and
  deduplicated by result; sites whose rewrite leaves `c` unchanged are
  dropped. A direction whose target introduces a wire metavariable absent
  from the matched side has no sites.
*/
std::vector<match_site> find_matches( circuit const& c, rewrite_rule const& rule, direction dir );

/*! \brief Rewrites `c` at `site`.

  Throws `rejected` when `site` was produced for another circuit, and
  `internal_error` when `checked` is set and the result is not equivalent.
*/
circuit apply( circuit const& c, match_site const& site, bool checked = false );

struct trace_step
{
  std::string rule;
  direction dir = direction::forward;
  /* position in find_matches( before, rule, dir ) */
  std::size_t site_index{};
  std::string site;
  circuit_cost before;
  circuit_cost after;
  std::uint64_t result_fingerprint{};
};

struct derivation_trace
{
  circuit initial;
  circuit final;
  std::vector<trace_step> steps;
};

struct engine_options
{
  /* assert equivalence after every step */
  bool checked = false;
  /* search state limit for prove_equal and exhaustive simplification */
  std::size_t max_states = 100000;
  /* breadth-first search for the cheapest reachable circuit */
  bool exhaustive = false;
  /* exhaustive search is refused above this size */
  std::size_t exhaustive_max_nodes = 10;
};

/*! \brief Greedy best-improvement simplification.

  Each step takes the site with the smallest cost strictly below the current
  one over all rules and both directions; ties go to rule order, then L->R
  before R->L, then site order. Stops at a local minimum or after `budget`
  steps. Throws `rejected` for `budget <= 0`.
*/
derivation_trace simplify( circuit const& c, int budget = 1000, engine_options const& opts = {} );

/*! \brief Substitutes every fixing, then simplifies. */
derivation_trace analyze( circuit const& c, std::map<std::string, bool> const& fixings, int budget = 1000,
                          engine_options const& opts = {} );

/*! \brief Bidirectional breadth-first derivation search.

  Explores rewrites from both ends until the canonical forms meet, with the
  sum of both depths bounded by `budget` and intermediate circuits bounded by
  six nodes above the larger input. `std::nullopt` is inconclusive.
*/
std::optional<derivation_trace> prove_equal( circuit const& a, circuit const& b, int budget = 20,
                                             engine_options const& opts = {} );

struct replay_report
{
  bool verified = false;
  /* index of the first step that could not be reproduced; steps.size() for a wrong final circuit */
  std::optional<std::size_t> first_bad_step;
  std::string message;
};

replay_report replay( derivation_trace const& trace );

/* one line per step: `<idx> <rule> <dir> cost=(m,c,p)->(m,c,p)`, idx from 1 */
std::string format_trace( derivation_trace const& trace );

} // namespace wavelogic

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <wavelogic/circuit.hpp>

namespace wavelogic::detail
{

/* a port of a vertex; input or output depending on context */
struct port
{
  int node = -1;
  int index = 0;

  bool valid() const noexcept { return node >= 0; }
  friend bool operator==( port const&, port const& ) = default;
};

struct vertex
{
  node_kind kind{};
  phase_param param{};
  std::array<port, 3> in{};
  std::array<port, 3> out{};
  bool alive = true;
};

/*! \brief Mutable, index-based working form of a circuit.

  Construction and rewriting operate on a net and convert back with
  `to_circuit`, which renumbers into canonical order.
*/
class net
{
public:
  std::vector<vertex> v;
  std::vector<int> outputs;

  int add( node_kind kind, phase_param param = {} );

  /* `from` is an output port, `to` an input port */
  void connect( port from, port to );

  port source_of( port sink ) const { return v[sink.node].in[sink.index]; }
  port sink_of( port src ) const { return v[src.node].out[src.index]; }

  void erase( int n ) { v[n].alive = false; }

  /* copies all vertices of `other`; returns the index map. Outputs are not merged. */
  std::vector<int> append( net const& other );

  std::vector<int> sources() const;

  /* throws `rejected` when `c` fails validation; vertex i is nodes()[i] */
  static net from_circuit( circuit const& c );

  /* vertices in canonical order (alive vertices reachable from the outputs) */
  std::vector<int> canonical_order() const;

  circuit to_circuit() const;
};

/* canonical serialisation of a valid circuit */
std::string canonical_text( circuit const& c );

std::uint64_t fnv1a( std::string const& text );

} // namespace wavelogic::detail

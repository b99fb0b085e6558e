#pragma once

#include <functional>

#include <wavelogic/rules.hpp>

#include "net.hpp"

namespace wavelogic::detail
{

/* resolves a phase pattern; nullopt when a sum has no parameter form */
std::optional<phase_param> resolve( phase_pattern const& p, phase_binding const& b );

/* builds wire metavariable `name` fed by `src`; returns the port carrying its result */
using region_builder = std::function<port( net&, std::string const&, port )>;

/* instantiates `t` fed by output port `src`; returns the result port */
port build_term( net& g, term const& t, port src, phase_binding const& b, region_builder const& region );

/* instantiates `f` fed by `src`; leaf i is connected to `leaves[i]` */
void build_fan( net& g, fan const& f, port src, phase_binding const& b, std::vector<port> const& leaves );

int count_leaves( fan const& f );

/* names of metavariables occurring in a pattern */
void collect_metas( pattern const& p, std::vector<std::string>& out );

} // namespace wavelogic::detail

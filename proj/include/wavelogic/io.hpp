/*!
  \file io.hpp
  \brief Expression syntax, circuit files and DOT export

  Expression grammar, whitespace insignificant:

      expr  := ident | "0" | "1" | f1 "(" expr ")" | f2 "(" expr "," expr ")"
             | "maj" "(" expr "," expr "," expr ")"
      f1    := "not"
      f2    := "xor" | "xnor" | "and" | "or" | "nand"
      ident := [a-z][a-z0-9_]*

  An identifier followed by "(" is a function call, otherwise a variable.
*/

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "boolean.hpp"
#include "circuit.hpp"

namespace wavelogic
{

class parse_error : public rejected
{
public:
  parse_error( std::size_t line, std::size_t column, std::string const& message );

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/* xnor(x,y) reads as not(xor(x,y)), nand(x,y) as not(and(x,y)) */
bool_expr parse_expr( std::string_view text );

/* inverse of parse_expr on the core operators */
std::string print_expr( bool_expr const& e );

/*! \brief Graphviz digraph drawn bottom to top, nodes in canonical order. */
std::string export_dot( circuit const& c );

inline constexpr int circuit_file_version = 1;

/*! \brief JSON document with `version`, `nodes` (id, kind, param),
  `edges` (from, from_port, to, to_port) and `outputs`. Constant parameters
  are stored as 0/1, variables by name. */
std::string write_circuit( circuit const& c );

/* throws `rejected` listing every problem, structural violations included */
circuit read_circuit( std::string_view text );

void save_circuit( circuit const& c, std::filesystem::path const& file );
circuit load_circuit( std::filesystem::path const& file );

} // namespace wavelogic

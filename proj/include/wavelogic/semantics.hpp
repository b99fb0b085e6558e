/*!
  \file semantics.hpp
  \brief Wave-level and Boolean evaluation of circuits

  Two independent evaluators live here. `eval_wave` simulates unit phasors:
  the reference wave is +1, a pi shift negates, a merge takes the sign of the
  sum of its three inputs. `tabulate` computes the Boolean function with
  bit-parallel words and defines operational equality.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace wavelogic
{

/*! \brief Normalised wave on a wire: +1 is phase 0 (bit 0), -1 is phase pi (bit 1). */
struct phasor
{
  int amplitude = 1;

  bool bit() const noexcept { return amplitude < 0; }
  friend bool operator==( phasor, phasor ) = default;
};

using assignment = std::map<std::string, bool>;

struct wave_result
{
  std::vector<phasor> outputs;
  /* pre-normalisation sums, one per merge node in evaluation order */
  std::vector<int> merge_sums;
};

/* throws `rejected` for invalid circuits or variables missing from `sigma`,
   `internal_error` if a merge ever sums to zero */
wave_result eval_wave_traced( circuit const& c, assignment const& sigma );
std::vector<phasor> eval_wave( circuit const& c, assignment const& sigma );
std::vector<bool> eval_bit( circuit const& c, assignment const& sigma );

class truth_table
{
public:
  truth_table( std::vector<std::string> vars, std::size_t width );

  std::vector<std::string> const& vars() const noexcept { return vars_; }
  std::size_t num_vars() const noexcept { return vars_.size(); }
  std::size_t width() const noexcept { return width_; }
  std::size_t num_rows() const noexcept { return std::size_t{ 1 } << vars_.size(); }

  /* row index encodes the assignment with vars()[0] as the most significant bit */
  bool get( std::size_t row, std::size_t output ) const { return bits_[row * width_ + output] != 0; }
  void set( std::size_t row, std::size_t output, bool value ) { bits_[row * width_ + output] = value; }

  std::vector<bool> row( std::size_t r ) const;
  std::vector<int> column( std::size_t output = 0 ) const;
  assignment assignment_of( std::size_t row ) const;

  friend bool operator==( truth_table const&, truth_table const& ) = default;

private:
  std::vector<std::string> vars_;
  std::size_t width_;
  std::vector<std::uint8_t> bits_;
};

struct eval_options
{
  /* exhaustive enumeration guard */
  std::size_t max_vars = 20;
};

truth_table tabulate( circuit const& c, eval_options const& opts = {} );
/* `vars` must contain every variable of `c`; extra names are dummies */
truth_table tabulate( circuit const& c, std::span<std::string const> vars, eval_options const& opts = {} );
truth_table tabulate( circuit_bundle const& b, eval_options const& opts = {} );
truth_table tabulate( circuit_bundle const& b, std::span<std::string const> vars, eval_options const& opts = {} );

/*! \brief Truth-table equality over the union of both variable lists. */
bool equivalent( circuit const& a, circuit const& b, eval_options const& opts = {} );

/*! \brief First assignment (over the union of variables) where `a` and `b` differ. */
std::optional<assignment> distinguishing_assignment( circuit const& a, circuit const& b, eval_options const& opts = {} );

} // namespace wavelogic

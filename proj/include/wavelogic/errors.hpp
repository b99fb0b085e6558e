#pragma once

#include <stdexcept>
#include <string>

namespace wavelogic
{

/*! \brief A precondition of a public operation was not met.

  Raised for malformed identifiers, arity mismatches, uncovered variables,
  enumeration caps, stale match sites and similar caller errors.
*/
class rejected : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief An internal invariant was violated. Reaching this is a bug. */
class internal_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace wavelogic

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wavelogic
{

/*! \brief Runs the command line with `args` (program name excluded).

  Returns 0 on success or a true verdict, 1 on a false verdict or a failed
  search, 2 on usage, parse or validation errors.
*/
int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace wavelogic

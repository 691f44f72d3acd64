#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dioph/ring.hpp"

namespace dioph
{

/*
 * Entry point of the dioph tool.  `args` excludes the program name.  Writes the
 * report to `out` and diagnostics to `err`; returns 0 on success, 1 when the
 * outcome is a violation, an inapplicable theorem, a non-empty search under
 * --expect-empty or a chain without contradiction, and 2 on usage errors.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// "u,v;u,v;..." in the (1, w) basis.  Throws InvalidArgument on bad syntax.
std::vector<RingElem> parse_elems(const RingSpec &spec, const std::string &text);

} // namespace dioph

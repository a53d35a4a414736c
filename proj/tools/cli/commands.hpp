#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace assocnorm::cli {

/// Function specs for --f/--g:
///   indicator:lo,hi[,h]  hat:lo,peak,hi[,h]  bump:lo,hi[,h]  plateau:lo,hi,ramp[,h]
///   lognormal[:s]  one  gcorpus:i  hatcorpus:i
HalfLineFunction parse_function(const std::string& spec, const RunConfig& config);

/// Exit codes: 0 success, 1 suite failure or numerical error, 2 usage/config error.
int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace assocnorm::cli

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twoside/distribution.hpp"
#include "twoside/pvalue.hpp"

namespace twoside::cli {

inline constexpr const char* kSchemaVersion = "twoside/1";

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3 };

/// Malformed command-line input (exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parses `family:p1,p2,...`, e.g. chisq:5, f:5,11, unif:0,1, tri:1,2,
/// tnorm:0.5, binom:10,0.2, hyper:9,5,30, nchyper:9,5,30,2.
Distribution parse_distribution(std::string_view spec);

/// mean | mode | median | value:V
TailAnchor parse_anchor(std::string_view spec);

/// Comma-separated list of doubled, conditional, conditional_modified,
/// minlik, weighted:W (left weight W), or `all`. For continuous families
/// `all` omits conditional_modified, which coincides with conditional.
std::vector<PValueMethod> parse_methods(std::string_view spec, bool discrete);

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, one-line diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoside::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drazinkit::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kMalformedInput = 2,
  kPreconditionViolation = 3,
};

/// Runs one command line (`args` excludes the program name). Standard output
/// receives exactly one JSON document unless --output redirects it; errors go
/// to `err` as JSON.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace drazinkit::cli

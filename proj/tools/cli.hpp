#pragma once

#include <iosfwd>

namespace paaa::cli
{

enum ExitCode : int
{
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kFitError = 3,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace paaa::cli

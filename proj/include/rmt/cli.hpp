#pragma once

#include <string>
#include <vector>

namespace rmt {

// Entry point behind the rmtstat binary; returns the process exit code
// (0 ok, 2 configuration error, 3 numerical failure).
int cli_main(const std::vector<std::string>& args);

}  // namespace rmt

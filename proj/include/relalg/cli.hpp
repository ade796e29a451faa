#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relalg::cli {

/// Runs one command line (without the program name). Returns 0 on pass, 1 on
/// a failing verdict, 2 on usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of the one-shot experiment presets accepted by `run`.
std::vector<std::string> preset_experiments();

}  // namespace relalg::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lenia_moqd::cli {

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kConfigError = 2,
    kLookupError = 3,
};

/// Entry point behind the executable; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lenia_moqd::cli

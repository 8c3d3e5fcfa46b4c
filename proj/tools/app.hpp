#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptf/validate.hpp"

namespace ptf::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, config_error = 2, io_error = 3 };

struct Hooks {
    EigensystemProvider provider;  // replaces the sector solver inside `validate`
};

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace ptf::cli

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hyperrod::cli {

enum ExitCode : int { ok = 0, usage = 1, infeasible = 2, domain = 3 };

/// Environment inputs, injected so tests need not touch the real environment.
struct Environment {
    std::optional<std::string> hyp_rtol;  ///< ELASTICA_HYP_RTOL
};

Environment read_environment();

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace hyperrod::cli

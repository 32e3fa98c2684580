// Single-binary command-line surface.  Every subcommand validates its
// flags against the backing operation's preconditions, runs it, and
// emits a result document (text, json, or csv) with one certificate
// entry per claim checked.
//
// Exit codes: 0 all certificates pass, 1 at least one failed, 2 usage
// or precondition error.

#pragma once

#include <string>
#include <vector>

namespace covollab::cli {

struct RunResult {
    int exit_code = 0;
    std::string output;  // the rendered document (empty on usage errors)
    std::string error;   // one-line reason for exit code 2
};

// args excludes the program name.
RunResult run(const std::vector<std::string>& args);

int main(int argc, char** argv);

}  // namespace covollab::cli

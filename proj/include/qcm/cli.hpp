#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcm::cli {

enum ExitCode : int {
    kSuccess = 0,
    kParseError = 2,
    kSemanticError = 3,
    kAxiomFailure = 4,
    kVerdictFailure = 5,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out redirects them; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcm::cli

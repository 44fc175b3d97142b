#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aetf::cli {

/// Parses and runs one subcommand; args excludes argv[0]. Results go to out,
/// diagnostics to err. Returns 0 on success, 1 on usage or input errors, 2 on
/// best-effort results (GA stopped short of its threshold, or sweep rows
/// emitted with no set available).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

extern const char* const kSimulateHeader;
extern const char* const kTheoryHeader;

}  // namespace aetf::cli

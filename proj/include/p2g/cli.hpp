#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p2g::cli {

/// Entry point behind the p2g binary. Subcommands: ingest, score, diff,
/// flows, trends, topics, keywords. Data goes to out, logs and warnings to
/// err. Returns 0 on success, 1 on usage errors (usage text on err), 2 on
/// data errors. The P2G_LOG environment variable (off|warn|info, default
/// warn) controls log verbosity.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p2g::cli

#pragma once

// Command-line front end. Subcommands quals, certify, gap, classify, report
// and verify; see README.md for flags. Exit codes: 0 success, 1 unsupported
// request, 2 infeasible candidate, 3 parse or input error, 4 internal
// inconsistency (diagram violation or failed re-verification). Failures
// print one line "mosip: exit=<code> kind=<kind>: <message>" to `err`.

#include <ostream>
#include <string>
#include <vector>

#include "mosip/serialize.h"

namespace mosip {

enum ExitCode { kExitOk = 0, kExitUnsupported = 1, kExitInfeasible = 2, kExitParse = 3, kExitInternal = 4 };

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;  // one line each
  std::size_t checked = 0;            // number of re-verified items
};

// Re-validates every certificate, witness and verdict in a JSON document
// produced by run_cli (--format json) against a fresh candidate, and checks
// that each section re-serializes to identical text.
VerifyResult verify_document(const Json& doc);

}  // namespace mosip

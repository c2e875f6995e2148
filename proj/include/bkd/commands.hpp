#pragma once

// The five command-line subcommands, as functions from input text to
// formatted output and an exit code. File access stays in the tool.

#include <string>

#include "bkd/bundle.hpp"
#include "bkd/harness.hpp"

namespace bkd {

enum class Format { Text, Json };

/// 0 pass, 1 check failed, 2 input error, 3 inconclusive, 4 internal error.
struct CommandOutput {
  int code = 0;
  std::string out;
};

CommandOutput cmd_verify_lemmas(const HarnessOptions& opts, Format fmt);
CommandOutput cmd_regconst(const std::string& lattice_text, Format fmt);
CommandOutput cmd_bk_check(const std::string& bundle_text, const std::string& tolerance, Format fmt);
CommandOutput cmd_splitting(const std::string& places_text, int p, long m, const RelationVector& rel, Format fmt);
CommandOutput cmd_wnum(const std::string& ell, const std::string& kappa, long precision, long m, Format fmt);

/// Runs f, mapping InputError to code 2 and anything else to code 4 with the
/// message left in `error`.
template <typename F>
CommandOutput guarded(F&& f, std::string& error) {
  try {
    return f();
  } catch (const InputError& e) {
    error = e.what();
    return {2, ""};
  } catch (const std::exception& e) {
    error = e.what();
    return {4, ""};
  }
}

}  // namespace bkd

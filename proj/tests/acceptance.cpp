// Acceptance gate: every criterion at its stated tolerance, one line each.

#include <cstdio>
#include <cstdlib>

#include "scat1d/verification.hpp"

int main(int argc, char** argv) {
  scat1d::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--quick") opts.quick = true;
  }
#ifdef SCAT1D_CLI_PATH
  opts.cli_path = SCAT1D_CLI_PATH;
#endif
  const auto results = scat1d::run_acceptance(opts);
  const bool ok = scat1d::print_report(results);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return ok ? 0 : 1;
}

#pragma once

// Command implementations behind the weiltool binary. Each returns the
// process exit code: 0 success, 1 verification failed, 2 invalid input,
// 3 unsupported data.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "weil/chainlab/verifier.hpp"
#include "weil/cli/document.hpp"

namespace weil::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2, kUnsupported = 3 };

/// Runs body and maps the library's error families to exit codes, printing
/// the message to err.
int guarded(const std::function<int()>& body, std::ostream& err);

int cmd_lab(const chainlab::LabConfig& config, std::ostream& out, std::ostream& err);
int cmd_weil(const std::string& path, bool as_json, std::ostream& out, std::ostream& err);
int cmd_zeta_check(const std::string& path, bool as_json, std::ostream& out, std::ostream& err);
/// output_path "-" writes to out.
int cmd_example_pd(long q, int d, long n, const std::string& output_path, std::ostream& out,
                   std::ostream& err);
int cmd_example_elliptic(long q, long a, std::optional<long> p_part, const std::string& output_path,
                         std::ostream& out, std::ostream& err);

}  // namespace weil::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsdirac/spectrum.hpp"

namespace wsdirac::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  ///< a table cell errored or a verify check failed
  kUsage = 2,        ///< parse or validation error
  kDegenerate = 3,   ///< DegenerateSuperpotential / LadderSingular
  kNoRealRoot = 4,
  kNotNormalizable = 5,
};

enum class Format { Csv, JsonLines };

/// Fixed record schema shared by `solve`, `sweep` and `table`.
inline constexpr const char* kRecordHeader =
    "alpha_prime,dim,ell,n,e_upper,e_lower,e_binding,branch,roots_real,normalizable,error";

/// Serializes one sweep row in the chosen format (no trailing newline).
std::string format_record(const SweepRow& row, Format format);

/// Paper-shaped layout: one line per D (table 1) or l (table 2), one
/// column per alpha'. Cells hold E_b with 5 decimals or the error name.
std::string format_grid(const std::vector<SweepRow>& rows, int which);

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wsdirac::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cklab/json_io.hpp"

namespace cklab {

inline constexpr const char* kToolVersion = "cklab 0.1.0";

/// Provenance block embedded in every report.  Wall time deliberately lives
/// on the human-readable channel instead: reports with identical manifests
/// are byte-identical.
struct RunManifest {
  std::string command;
  std::string input_digest;
  OrderedJson parameters = OrderedJson::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> paper_anchors;

  OrderedJson to_json() const;
};

/// FNV-1a (64-bit) over raw bytes, as a 16-digit hex string.
std::string digest_bytes(const std::string& bytes);

/// Runs one subcommand.  `args` excludes the program name.  The report goes
/// to --out (resolved against CKLAB_REPORT_DIR when relative), to
/// $CKLAB_REPORT_DIR/<command>-report.json when only the env var is set, or
/// to `out`.  Human-readable summary and timing go to `err` unless --quiet.
/// Exit codes: 0 success, 1 unusable input, 2 violated math contract.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace cklab

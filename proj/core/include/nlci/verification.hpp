#pragma once

#include <string>
#include <vector>

#include "nlci/run_config.hpp"

namespace nlci {

enum class ClaimStatus { Pass, Fail, Margin };

std::string to_string(ClaimStatus s);

struct ClaimResult {
  std::string id;
  std::string statement;  // what is being measured, in mathematical terms
  ClaimStatus status = ClaimStatus::Fail;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<ClaimResult> claims;

  int passed() const;
  int failed() const;
  int margins() const;
  bool ok() const { return failed() == 0; }
};

/// Run the whole verification suite at the configured grid scale. Individual
/// claim failures are recorded, not thrown. Claims run concurrently up to the
/// NONLOCAL_CI_THREADS cap (default: sequential).
VerificationReport run_verify(const RunConfig& cfg);

std::string render_text(const VerificationReport& report);

std::string report_json(const VerificationReport& report, const RunConfig& cfg);

}  // namespace nlci

#pragma once

#include "haken/plan.hpp"

#include <string>
#include <vector>

namespace haken {

enum class Status {
  Pass,
  PassNecessaryOnly,  // every check holds, some only homologically
  Fail,
};

std::string to_string(Status s);

struct GluingCheck {
  std::size_t index = 0;
  bool accepted = false;
  WitnessTier tier = WitnessTier::Exact;
  std::string diagnostic;
};

struct VerificationReport {
  Status status = Status::Fail;
  std::vector<GluingCheck> gluings;
  bool blocks_ok = false;
  bool slots_ok = false;
  bool connected = false;
  bool residual_ok = false;
  /// Gluings, relabels and nested plans accepted at the necessary-only tier.
  std::size_t necessary_only = 0;
  std::vector<std::string> diagnostics;

  /// Strict mode counts necessary-only witnesses as failures.
  bool passed(bool strict = false) const {
    return status == Status::Pass || (!strict && status == Status::PassNecessaryOnly);
  }
  std::string str(const Plan& plan) const;
};

/// Checks a plan from scratch: slot formulas per block, every gluing,
/// slot accounting, connectivity and the residual against its target.
VerificationReport verify(const Plan& plan);

}  // namespace haken

#pragma once

// Data qualification checkers at a candidate point and the validator for
// the known implications between them.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mosip/problem.h"

namespace mosip {

enum class QualId { kSCQ, kSSCQ, kMFCQ, kPMFCQ, kLFMCQ, kCOCQ, kKTCQ, kPLVCQ, kCCCQ, kACQ, kWADQ, kEADQ, kMOQ };

inline constexpr std::array<QualId, 13> kAllQuals = {
    QualId::kSCQ,  QualId::kSSCQ,  QualId::kMFCQ, QualId::kPMFCQ, QualId::kLFMCQ,
    QualId::kCOCQ, QualId::kKTCQ,  QualId::kPLVCQ, QualId::kCCCQ, QualId::kACQ,
    QualId::kWADQ, QualId::kEADQ,  QualId::kMOQ};

std::string qual_name(QualId q);
// Throws InputError for unknown names (case-sensitive, e.g. "ACQ").
QualId parse_qual(const std::string& name);

enum class Status { kHolds, kFails, kUndecidable };
std::string status_name(Status s);

struct Provenance {
  bool truncated = false;     // derived from a truncated index set
  bool approximated = false;  // derived from polygonal stand-ins
  bool exact() const { return !truncated && !approximated; }
  std::string to_string() const;
};

struct QualWitness {
  enum class Kind {
    kNone,
    kPoint,        // Slater point (slack in `scalar` for SSCQ)
    kDirection,    // a direction with the stated property
    kCombination,  // nonnegative weights (see `coeffs`) proving a negative
  };
  Kind kind = Kind::kNone;
  Vec vector;
  std::optional<Rational> scalar;  // slack or eps
  Vec coeffs;
};

struct QualReport {
  QualId qual = QualId::kSCQ;
  Status status = Status::kUndecidable;
  QualWitness witness;
  Provenance provenance;
  std::string notes;
  // PMFCQ only: (eps, min over |x*|_inf <= 1 of the sup of xi'x*).
  std::vector<std::pair<Rational, ExtReal>> eps_values;
};

struct QualOptions {
  QualOptions();
  std::vector<Rational> eps_grid;  // decreasing; default 1, 1/2, ..., 2^-10
  Rational search_box = 4;         // Slater grid search in [-box, box]^n
  Rational search_step = Rational(1, 4);
};

QualReport check(QualId q, const CandidatePoint& c, const QualOptions& opts = QualOptions());
// All thirteen in kAllQuals order.
std::vector<QualReport> check_all(const CandidatePoint& c, const QualOptions& opts = QualOptions());

// Exact re-check of the witness carried by `r` (and of the verdict when the
// verdict carries no witness).
bool verify_witness(const CandidatePoint& c, const QualReport& r,
                    const QualOptions& opts = QualOptions());

// Side conditions: 1 = the problem is continuous, 2 = G(x) nonempty,
// 3 = a single objective.
struct Arrow {
  std::vector<QualId> from;  // conjunction
  std::vector<QualId> to;    // conjunction
  std::vector<int> side;
  std::string label() const;
};

const std::vector<Arrow>& diagram_arrows();

struct ArrowCheck {
  enum class Outcome { kSatisfied, kVacuous, kSideConditionUnmet, kUndecidable, kViolated };
  Arrow arrow;
  Outcome outcome = Outcome::kSatisfied;
};

struct DiagramResult {
  std::vector<ArrowCheck> checks;
  std::vector<Arrow> violations;
};

// `reports` must hold one report per qualification (any order).
DiagramResult diagram_validate(const CandidatePoint& c, const std::vector<QualReport>& reports);

}  // namespace mosip

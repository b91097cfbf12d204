#pragma once

// JSON encodings of certificates, verdicts and reports.

#include "json.hpp"

#include "ldwb/criteria.hpp"
#include "ldwb/embedding_model.hpp"
#include "ldwb/ld_engine.hpp"

namespace ldwb {

/// {"steps":[{"pos":"LR","dir":"expand"}, ...]}
nlohmann::json certificate_to_json(const EquivCertificate& cert);

/// Replays the steps from `lhs` to recover intermediate terms. Throws
/// FormatError on malformed JSON or a step that does not apply.
EquivCertificate certificate_from_json(const nlohmann::json& doc, const Term& lhs);

nlohmann::json refutation_to_json(const RefutationReason& reason);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json budget_to_json(const SearchBudget& budget);

nlohmann::json classification_to_json(const Term& lhs, const Term& rhs, const Classification& c);

nlohmann::json evidence_to_json(const EqualityEvidence& evidence);
nlohmann::json witness_to_json(const DivisibilityWitness& witness);
nlohmann::json violation_to_json(const QuasiFreeViolation& violation);

nlohmann::json bounds_to_json(const SearchBounds& bounds);
nlohmann::json bounds_to_json(const QuasiFreeBounds& bounds);

}  // namespace ldwb

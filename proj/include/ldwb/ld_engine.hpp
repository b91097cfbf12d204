#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ldwb/laver_table.hpp"
#include "ldwb/term.hpp"

namespace ldwb {

enum class Direction {
    Expand,    // a*(b*c) -> (a*b)*(a*c)
    Contract,  // (a*b)*(a*c) -> a*(b*c)
};

Direction inverse(Direction d) noexcept;

/// One LD rewrite. `position` is a path from the root, one 'L' or 'R' per
/// move; the empty string addresses the root.
struct ExpansionStep {
    std::string position;
    Direction direction = Direction::Expand;

    friend bool operator==(const ExpansionStep&, const ExpansionStep&) = default;
};

struct CertificateStep {
    ExpansionStep step;
    Term result;  // the term after applying `step`
};

/// A derivation lhs = t_0 -> t_1 -> ... -> t_m = rhs of single LD rewrites.
struct EquivCertificate {
    std::vector<CertificateStep> steps;
};

struct SearchBudget {
    std::size_t max_frontier_terms = 200'000;  // per side
    std::size_t max_term_size = kDefaultMaxTermSize;
    std::size_t max_depth = 24;
};

/// Which Laver-table homomorphisms the refutation stage tries.
struct RefutationOptions {
    int min_table = 1;
    int max_table = 6;
    /// Besides the uniform renaming (every generator to 1), try other
    /// generator assignments; capped per table.
    bool all_assignments = true;
    std::size_t max_assignments_per_table = 512;
};

enum class Side { Left, Right };

/// The leftmost (or rightmost) generators of the two sides differ.
struct LeafInvariant {
    Side side = Side::Left;
    Generator lhs;
    Generator rhs;
};

/// The right spines (number of application nodes from the root to the
/// rightmost leaf) have different lengths. This is evaluation into the
/// left-distributive system (N, a*b = b+1), so it is an LD invariant.
struct RightSpine {
    std::size_t lhs_length = 0;
    std::size_t rhs_length = 0;
};

/// Evaluating both sides in A_n under `assignment` gives different values.
struct TableEval {
    int n = 0;
    bool uniform = true;  // every generator sent to 1
    Assignment assignment;
    LaverTable::Value lhs_value = 0;
    LaverTable::Value rhs_value = 0;
};

using RefutationReason = std::variant<LeafInvariant, RightSpine, TableEval>;

struct SearchCounters {
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    std::size_t depth = 0;
    std::string stop;  // "frontier", "depth" or "saturated"
};

struct Equal {
    EquivCertificate certificate;
};

struct Distinct {
    RefutationReason reason;
};

struct Unknown {
    SearchCounters spent;
};

using Verdict = std::variant<Equal, Distinct, Unknown>;

inline bool is_equal(const Verdict& v) { return std::holds_alternative<Equal>(v); }
inline bool is_distinct(const Verdict& v) { return std::holds_alternative<Distinct>(v); }
inline bool is_unknown(const Verdict& v) { return std::holds_alternative<Unknown>(v); }
std::string_view verdict_name(const Verdict& v);

std::optional<Term> subterm_at(const Term& t, std::string_view position);

/// Throws Error when `position` does not address a subterm.
Term replace_at(const Term& t, std::string_view position, Term replacement);

/// nullopt when the step's pattern does not match at its position.
std::optional<Term> apply_step(const Term& t, const ExpansionStep& step);

/// All distinct one-step expansions, in preorder of the redex position.
std::vector<std::pair<Term, ExpansionStep>> expand_once(const Term& t);

/// All distinct one-step contractions, in preorder of the redex position.
std::vector<std::pair<Term, ExpansionStep>> contract_once(const Term& t);

std::size_t right_spine_length(const Term& t);

/// Leaf-invariant, right-spine and Laver-table refutation. Sound: a returned
/// reason proves lhs and rhs are not LD-equivalent.
std::optional<RefutationReason> refute(const Term& lhs, const Term& rhs,
                                       const RefutationOptions& options = {});

/// Recomputes the disagreement recorded in `reason`.
bool check_refutation(const Term& lhs, const Term& rhs, const RefutationReason& reason);

/// Sound three-valued decision of lhs =_LD rhs.
///
/// Refutations are tried first (leaf invariants, right spine, then
/// Laver-table evaluation). Then each side is closed under contraction, and
/// the two closures are grown by expansions, smallest terms first, until
/// they meet. Both
/// sides are treated identically, so the verdict kind does not depend on
/// argument order.
Verdict decide_equiv(const Term& lhs, const Term& rhs, const SearchBudget& budget = {},
                     const RefutationOptions& options = {});

/// As above, but first checks that both terms are over `sig`
/// (InvalidSignature otherwise).
Verdict decide_equiv(const Term& lhs, const Term& rhs, const Signature& sig,
                     const SearchBudget& budget = {}, const RefutationOptions& options = {});

bool check_certificate(const Term& lhs, const Term& rhs, const EquivCertificate& cert);

/// Applies up to `steps` uniformly chosen expansions. Deterministic in `seed`.
Term random_expansion_walk(const Term& t, std::size_t steps, std::uint64_t seed);

}  // namespace ldwb

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ldwb/ld_engine.hpp"
#include "ldwb/term.hpp"

namespace ldwb {

/// Properness of a modeled embedding.
enum class Color { Proper, NonProper };

std::string_view color_name(Color c);

/// Generators of the embedding algebra, each colored proper or non-proper.
class ColoredSignature {
public:
    ColoredSignature(Signature base, std::vector<Color> colors);

    /// {j: proper, k: non-proper}.
    static ColoredSignature flagship();

    /// {"generators":[{"name":"j","color":"proper"}, ...]}
    static ColoredSignature from_json(std::string_view text);
    std::string to_json() const;

    const Signature& base() const noexcept { return base_; }
    Color color(const Generator& g) const;

private:
    Signature base_;
    std::vector<Color> colors_;  // parallel to base_.generators()
};

/// The application j(k) is proper iff k is, so a word's color is the color
/// of its rightmost leaf. Rightmost leaves are LD-invariant, hence so is
/// the color.
Color color_of(const Term& t, const ColoredSignature& sig);

/// Restriction homomorphism onto the monogenic algebra: every generator is
/// sent to `target`.
struct RhoMap {
    Generator target{1, "x"};

    Signature target_signature() const { return Signature({target}); }
};

Term apply_rho(const Term& t, const RhoMap& rho);

/// The two sides have different colors.
struct ColorMismatch {
    Color lhs = Color::Proper;
    Color rhs = Color::Proper;
};

/// The rho images are distinct in the free monogenic algebra.
struct RhoRefutation {
    Term rho_lhs;
    Term rho_rhs;
    RefutationReason monogenic;
};

using EmbeddingRefutation = std::variant<ColorMismatch, RhoRefutation>;

enum class VerdictKind { Equal, Distinct, Unknown };

std::string_view kind_name(VerdictKind k);

struct Classification {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<EquivCertificate> certificate;     // Equal
    std::optional<EmbeddingRefutation> refutation;   // Distinct
    /// "ld-certificate", "color-mismatch", "rho-refutation" or "none".
    std::string rule;
    /// Verdicts of the underlying free-algebra queries, for the report.
    std::string free_verdict;
    std::string rho_verdict;
};

/// Equal on an LD certificate; Distinct when the rho images are refuted in
/// the free monogenic algebra, or when the colors differ; Unknown otherwise.
/// A free-algebra refutation of the original pair is not used: the
/// embedding algebra is a quotient of the free one.
Classification classify_pair(const Term& lhs, const Term& rhs, const ColoredSignature& sig,
                             const SearchBudget& budget = {},
                             const RefutationOptions& options = {});

/// Re-checks the certificate or refutation carried by `c`.
bool check_classification(const Term& lhs, const Term& rhs, const ColoredSignature& sig,
                          const Classification& c);

enum class Membership { Obstructed, NoObstruction };

/// Obstructed when `t` has a different color from `g`: every word over {g}
/// has rightmost leaf g. NoObstruction says nothing about membership.
Membership membership_obstruction(const Term& t, const Generator& g, const ColoredSignature& sig);

std::vector<Classification> batch_classify(const std::vector<std::pair<Term, Term>>& pairs,
                                           const ColoredSignature& sig,
                                           const SearchBudget& budget = {},
                                           const RefutationOptions& options = {});

}  // namespace ldwb

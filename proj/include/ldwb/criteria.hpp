#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ldwb/laver_table.hpp"
#include "ldwb/ld_engine.hpp"
#include "ldwb/term.hpp"

namespace ldwb {

/// Both sides evaluate to `value` in a finite magma.
struct MagmaValue {
    LaverTable::Value value = 0;
};

using EqualityEvidence = std::variant<EquivCertificate, MagmaValue>;

enum class Outcome { Equal, Distinct, Unknown };

struct Comparison {
    Outcome outcome = Outcome::Unknown;
    std::optional<EqualityEvidence> evidence;  // set iff Equal
};

/// An algebra generated by the leaves of terms, with a (possibly partial)
/// equality test that produces replayable evidence.
class EqualityOracle {
public:
    virtual ~EqualityOracle() = default;

    virtual std::string name() const = 0;
    virtual Comparison compare(const Term& a, const Term& b) const = 0;
    virtual bool verify(const Term& a, const Term& b, const EqualityEvidence& evidence) const = 0;

    /// True when Equal implies equality in every LD-algebra, so candidates
    /// separated by a Laver table can be skipped without asking.
    virtual bool decides_free_algebra() const { return false; }
};

/// Equality in the free LD-algebra, through decide_equiv. Results are
/// memoized per oracle instance.
class FreeLdOracle final : public EqualityOracle {
public:
    explicit FreeLdOracle(SearchBudget budget = {}, RefutationOptions refutation = {});

    std::string name() const override { return "free"; }
    Comparison compare(const Term& a, const Term& b) const override;
    bool verify(const Term& a, const Term& b, const EqualityEvidence& evidence) const override;
    bool decides_free_algebra() const override { return true; }

    const SearchBudget& budget() const noexcept { return budget_; }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<Term, Term>& p) const noexcept
        {
            return p.first.hash() * 31 + p.second.hash();
        }
    };

    SearchBudget budget_;
    RefutationOptions refutation_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::pair<Term, Term>, Comparison, PairHash> memo_;
};

/// Equality after evaluation in a finite magma given by a multiplication
/// table, with generators assigned by name.
class FiniteMagmaOracle final : public EqualityOracle {
public:
    FiniteMagmaOracle(std::string name, LaverTable table, Assignment assignment);

    /// The one-element algebra x*x = x (this is A_0).
    static FiniteMagmaOracle idempotent_point(const Signature& sig);

    /// A_n with every generator of `sig` sent to `value`.
    static FiniteMagmaOracle laver_constant(int n, const Signature& sig, LaverTable::Value value);

    std::string name() const override { return name_; }
    Comparison compare(const Term& a, const Term& b) const override;
    bool verify(const Term& a, const Term& b, const EqualityEvidence& evidence) const override;

private:
    std::string name_;
    LaverTable table_;
    Assignment assignment_;
};

struct SearchBounds {
    std::size_t max_divisor_size = 4;
    std::size_t max_chain = 3;
    std::size_t max_seed_size = 4;
};

struct QuasiFreeBounds {
    std::size_t max_context = 1;        // r
    std::size_t max_tail = 1;           // p and q
    std::size_t max_component_size = 3;
};

/// Certifies lower <=_L upper: upper = ((lower*u_1)*...)*u_m in the algebra.
struct DivisibilityWitness {
    Term lower;
    Term upper;
    std::vector<Term> divisors;
    EqualityEvidence evidence;  // for left_product(lower, divisors) = upper
};

bool verify_witness(const DivisibilityWitness& witness, const EqualityOracle& oracle);

struct LeResult {
    std::optional<DivisibilityWitness> witness;  // Found iff set
    std::size_t candidates = 0;
    std::size_t unknown = 0;

    bool found() const noexcept { return witness.has_value(); }
};

/// Terms built from `generators` (each used as a leaf) with at most
/// `max_size` generator occurrences, deduplicated, ordered by
/// (size, rendered text).
std::vector<Term> enumerate_terms(const std::vector<Term>& generators, std::size_t max_size);

std::vector<Term> leaves_of(const Signature& sig);

/// Searches chains u_1..u_m (1 <= m <= max_chain, each u_i of size at most
/// max_divisor_size over `generators`) with left_product(w1, u) = w2.
/// A miss is not a proof that w1 is not below w2. `candidates` counts every
/// chain considered, including those ruled out by invariants before the
/// oracle is asked.
LeResult check_le_L(const Term& w1, const Term& w2, const std::vector<Term>& generators,
                    const SearchBounds& bounds, const EqualityOracle& oracle);

struct CycleResult {
    /// A cycle w <=_L ... <=_L w; every witness is validated.
    std::optional<std::vector<DivisibilityWitness>> cycle;
    std::size_t seeds = 0;
    std::size_t candidates = 0;
    std::size_t unknown = 0;

    bool found() const noexcept { return cycle.has_value(); }
};

/// Looks for some seed w (built from `generators`, size <= max_seed_size)
/// with w <=_L w through a non-empty chain.
CycleResult find_cycle(const std::vector<Term>& generators, const SearchBounds& bounds,
                       const EqualityOracle& oracle);

/// As find_cycle, over explicit seeds.
CycleResult find_cycle_from_seeds(const std::vector<Term>& seeds,
                                  const std::vector<Term>& generators,
                                  const SearchBounds& bounds, const EqualityOracle& oracle);

/// An equality ((c_1*...*c_r)*x)*a_1*...*a_p = ((c_1*...*c_r)*y)*b_1*...*b_q
/// with x != y, all products left-nested.
struct QuasiFreeViolation {
    std::vector<Term> context;
    Generator x;
    Generator y;
    std::vector<Term> tail_x;
    std::vector<Term> tail_y;
    EqualityEvidence evidence;
};

std::pair<Term, Term> quasi_free_sides(const std::vector<Term>& context, const Generator& x,
                                       const Generator& y, const std::vector<Term>& tail_x,
                                       const std::vector<Term>& tail_y);

bool verify_violation(const QuasiFreeViolation& violation, const EqualityOracle& oracle);

struct QuasiFreeResult {
    std::optional<QuasiFreeViolation> violation;
    std::size_t candidates = 0;
    std::size_t unknown = 0;

    bool found() const noexcept { return violation.has_value(); }
};

/// Enumerates candidate equalities within `bounds`. Requires |sig| >= 2.
QuasiFreeResult check_quasi_free(const Signature& sig, const QuasiFreeBounds& bounds,
                                 const EqualityOracle& oracle);

}  // namespace ldwb

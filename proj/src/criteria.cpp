#include "ldwb/criteria.hpp"
#include "ldwb/shelf.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <unordered_set>

namespace ldwb {

FreeLdOracle::FreeLdOracle(SearchBudget budget, RefutationOptions refutation)
    : budget_(budget), refutation_(refutation)
{
}

Comparison FreeLdOracle::compare(const Term& a, const Term& b) const
{
    {
        std::lock_guard lock(mutex_);
        if (const auto it = memo_.find({a, b}); it != memo_.end()) {
            return it->second;
        }
    }
    Comparison result;
    auto verdict = decide_equiv(a, b, budget_, refutation_);
    if (auto* eq = std::get_if<Equal>(&verdict)) {
        result = {Outcome::Equal, EqualityEvidence{std::move(eq->certificate)}};
    } else if (is_distinct(verdict)) {
        result = {Outcome::Distinct, std::nullopt};
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(std::pair{a, b}, result);
    return result;
}

bool FreeLdOracle::verify(const Term& a, const Term& b, const EqualityEvidence& evidence) const
{
    const auto* cert = std::get_if<EquivCertificate>(&evidence);
    return cert && check_certificate(a, b, *cert);
}

FiniteMagmaOracle::FiniteMagmaOracle(std::string name, LaverTable table, Assignment assignment)
    : name_(std::move(name)), table_(std::move(table)), assignment_(std::move(assignment))
{
}

FiniteMagmaOracle FiniteMagmaOracle::idempotent_point(const Signature& sig)
{
    return laver_constant(0, sig, 1);
}

FiniteMagmaOracle FiniteMagmaOracle::laver_constant(int n, const Signature& sig,
                                                    LaverTable::Value value)
{
    Assignment assignment;
    for (const auto& g : sig.generators()) {
        assignment[g.name] = value;
    }
    std::string name = n == 0 ? "idempotent-point" : "A" + std::to_string(n) + "-constant";
    return FiniteMagmaOracle(std::move(name), build_table(n), std::move(assignment));
}

Comparison FiniteMagmaOracle::compare(const Term& a, const Term& b) const
{
    const auto va = eval_term(table_, a, assignment_);
    const auto vb = eval_term(table_, b, assignment_);
    if (va == vb) {
        return {Outcome::Equal, EqualityEvidence{MagmaValue{va}}};
    }
    return {Outcome::Distinct, std::nullopt};
}

bool FiniteMagmaOracle::verify(const Term& a, const Term& b, const EqualityEvidence& evidence) const
{
    const auto* value = std::get_if<MagmaValue>(&evidence);
    try {
        return value && eval_term(table_, a, assignment_) == value->value &&
               eval_term(table_, b, assignment_) == value->value;
    } catch (const MissingAssignment&) {
        return false;
    }
}

// ---------------------------------------------------------------------------

bool verify_witness(const DivisibilityWitness& witness, const EqualityOracle& oracle)
{
    if (witness.divisors.empty()) {
        return false;
    }
    return oracle.verify(left_product(witness.lower, witness.divisors), witness.upper,
                         witness.evidence);
}

std::vector<Term> leaves_of(const Signature& sig)
{
    std::vector<Term> out;
    for (const auto& g : sig.generators()) {
        out.push_back(Term::leaf(g));
    }
    return out;
}

std::vector<Term> enumerate_terms(const std::vector<Term>& generators, std::size_t max_size)
{
    std::unordered_set<Term, TermHash> seen;
    std::vector<std::vector<Term>> by_size(max_size + 1);
    if (max_size >= 1) {
        for (const auto& g : generators) {
            if (seen.insert(g).second) {
                by_size[1].push_back(g);
            }
        }
    }
    for (std::size_t s = 2; s <= max_size; ++s) {
        for (std::size_t k = 1; k < s; ++k) {
            for (const auto& a : by_size[k]) {
                for (const auto& b : by_size[s - k]) {
                    Term t = Term::app(a, b);
                    if (seen.insert(t).second) {
                        by_size[s].push_back(std::move(t));
                    }
                }
            }
        }
    }
    std::vector<Term> out;
    for (auto& level : by_size) {
        std::vector<std::pair<std::string, Term>> keyed;
        keyed.reserve(level.size());
        for (auto& t : level) {
            keyed.emplace_back(render_term(t), std::move(t));
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [text, t] : keyed) {
            out.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

/// Calls `visit` with every tuple of `length` elements of `pool`, in
/// lexicographic order of indices. Stops when `visit` returns true.
bool for_each_tuple(const std::vector<Term>& pool, std::size_t length,
                    const std::function<bool(const std::vector<Term>&)>& visit)
{
    if (length > 0 && pool.empty()) {
        return false;
    }
    std::vector<std::size_t> idx(length, 0);
    std::vector<Term> tuple;
    tuple.reserve(length);
    while (true) {
        tuple.clear();
        for (const auto i : idx) {
            tuple.push_back(pool[i]);
        }
        if (visit(tuple)) {
            return true;
        }
        std::size_t k = length;
        while (k > 0 && ++idx[k - 1] == pool.size()) {
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) {
            return false;
        }
    }
}

}  // namespace

namespace {

using Value = LaverTable::Value;

/// Values of terms in a fixed family of finite LD-algebras under a few
/// seeded assignments: Laver tables A_1..A_10, conjugation in S_4 and S_5,
/// and affine shelves. Each probe is a homomorphic image of the free
/// algebra, so LD-equal terms agree on every probe.
class Probes {
public:
    explicit Probes(const std::vector<Term>& terms)
    {
        for (const auto& t : terms) {
            for (const auto& g : generators_of(t)) {
                names_.push_back(g.name);
            }
        }
        std::sort(names_.begin(), names_.end());
        names_.erase(std::unique(names_.begin(), names_.end()), names_.end());

        const auto& shelves = family();
        std::mt19937_64 rng(0x1d);
        for (std::size_t i = 0; i < shelves.size(); ++i) {
            const Shelf& shelf = shelves[i];
            const bool laver = i < kLaverShelves;
            if (laver) {
                add(shelf, std::vector<Value>(names_.size(), 0));
            }
            if (names_.size() > 1 || !laver) {
                std::uniform_int_distribution<Value> pick(0, shelf.order - 1);
                for (int k = 0; k < 3; ++k) {
                    std::vector<Value> a;
                    for (std::size_t g = 0; g < names_.size(); ++g) {
                        a.push_back(pick(rng));
                    }
                    add(shelf, std::move(a));
                }
            }
        }
    }

    std::size_t width() const noexcept { return shelves_.size(); }

    void eval(const Term& t, Value* out) const
    {
        for (std::size_t i = 0; i < shelves_.size(); ++i) {
            out[i] = eval_in(i, t);
        }
    }

    void multiply(const Value* a, const Value* b, Value* out) const
    {
        for (std::size_t i = 0; i < shelves_.size(); ++i) {
            out[i] = (*shelves_[i])(a[i], b[i]);
        }
    }

private:
    static constexpr std::size_t kLaverShelves = 10;

    static const std::vector<Shelf>& family()
    {
        static const std::vector<Shelf> shelves = [] {
            std::vector<Shelf> out;
            for (int n = 1; n <= static_cast<int>(kLaverShelves); ++n) {
                out.push_back(laver_shelf(cached_table(n)));
            }
            out.push_back(conjugation_shelf(4));
            out.push_back(conjugation_shelf(5));
            out.push_back(affine_shelf(7, 3));
            out.push_back(affine_shelf(9, 2));
            out.push_back(affine_shelf(16, 3));
            return out;
        }();
        return shelves;
    }

    Value eval_in(std::size_t i, const Term& t) const
    {
        if (t.is_leaf()) {
            const auto it = std::lower_bound(names_.begin(), names_.end(), t.generator().name);
            return assignments_[i][static_cast<std::size_t>(it - names_.begin())];
        }
        return (*shelves_[i])(eval_in(i, t.left()), eval_in(i, t.right()));
    }

    void add(const Shelf& shelf, std::vector<Value> assignment)
    {
        shelves_.push_back(&shelf);
        assignments_.push_back(std::move(assignment));
    }

    std::vector<std::string> names_;
    std::vector<const Shelf*> shelves_;
    std::vector<std::vector<Value>> assignments_;  // parallel to names_
};

/// Enumerates chains in the same order as the plain search, but only asks
/// the oracle about chains that agree with w2 on every probe, on the
/// rightmost leaf and on the right-spine length.
class PrefilteredChains {
public:
    PrefilteredChains(const Term& w1, const Term& w2, const std::vector<Term>& divisors,
                      const std::function<bool(const std::vector<Term>&)>& ask)
        : divisors_(divisors), ask_(ask), probes_(with(divisors, w1, w2))
    {
        const std::size_t k = probes_.width();
        values_.resize(divisors.size() * k);
        for (std::size_t d = 0; d < divisors.size(); ++d) {
            probes_.eval(divisors[d], &values_[d * k]);
        }
        start_.resize(k);
        target_.resize(k);
        probes_.eval(w1, start_.data());
        probes_.eval(w2, target_.data());
        const bool left_ok = leftmost_leaf(w1) == leftmost_leaf(w2);
        const std::size_t spine = right_spine_length(w2);
        for (const auto& u : divisors) {
            last_ok_.push_back(left_ok && rightmost_leaf(u) == rightmost_leaf(w2) &&
                               right_spine_length(u) + 1 == spine);
        }
    }

    /// Returns true when `ask` accepted a chain of length m.
    bool run(std::size_t m, std::size_t& candidates)
    {
        const std::size_t k = probes_.width();
        chain_.assign(m, 0);
        prefix_.assign((m + 1) * k, 0);
        std::copy(start_.begin(), start_.end(), prefix_.begin());
        return level(0, m, candidates);
    }

private:
    static std::vector<Term> with(std::vector<Term> terms, const Term& a, const Term& b)
    {
        terms.push_back(a);
        terms.push_back(b);
        return terms;
    }

    bool level(std::size_t i, std::size_t m, std::size_t& candidates)
    {
        const std::size_t k = probes_.width();
        const Value* v = &prefix_[i * k];
        Value* next = &prefix_[(i + 1) * k];
        for (std::size_t d = 0; d < divisors_.size(); ++d) {
            chain_[i] = d;
            if (i + 1 < m) {
                probes_.multiply(v, &values_[d * k], next);
                if (level(i + 1, m, candidates)) {
                    return true;
                }
                continue;
            }
            ++candidates;
            if (!last_ok_[d]) {
                continue;
            }
            probes_.multiply(v, &values_[d * k], next);
            if (!std::equal(next, next + k, target_.begin())) {
                continue;
            }
            std::vector<Term> chain;
            for (const auto c : chain_) {
                chain.push_back(divisors_[c]);
            }
            if (ask_(chain)) {
                return true;
            }
        }
        return false;
    }

    const std::vector<Term>& divisors_;
    const std::function<bool(const std::vector<Term>&)>& ask_;
    Probes probes_;
    std::vector<Value> values_;  // divisor-major, width() values each
    std::vector<Value> start_;
    std::vector<Value> target_;
    std::vector<bool> last_ok_;
    std::vector<std::size_t> chain_;
    std::vector<Value> prefix_;
};

}  // namespace

LeResult check_le_L(const Term& w1, const Term& w2, const std::vector<Term>& generators,
                    const SearchBounds& bounds, const EqualityOracle& oracle)
{
    LeResult result;
    const auto divisors = enumerate_terms(generators, bounds.max_divisor_size);
    const std::function<bool(const std::vector<Term>&)> ask = [&](const std::vector<Term>& chain) {
        auto cmp = oracle.compare(left_product(w1, chain), w2);
        if (cmp.outcome == Outcome::Unknown) {
            ++result.unknown;
        }
        if (cmp.outcome != Outcome::Equal) {
            return false;
        }
        result.witness = DivisibilityWitness{w1, w2, chain, std::move(*cmp.evidence)};
        return true;
    };
    if (oracle.decides_free_algebra()) {
        PrefilteredChains chains(w1, w2, divisors, ask);
        for (std::size_t m = 1; m <= bounds.max_chain; ++m) {
            if (chains.run(m, result.candidates)) {
                break;
            }
        }
        return result;
    }
    for (std::size_t m = 1; m <= bounds.max_chain && !result.found(); ++m) {
        for_each_tuple(divisors, m, [&](const std::vector<Term>& chain) {
            ++result.candidates;
            return ask(chain);
        });
    }
    return result;
}

CycleResult find_cycle_from_seeds(const std::vector<Term>& seeds,
                                  const std::vector<Term>& generators,
                                  const SearchBounds& bounds, const EqualityOracle& oracle)
{
    CycleResult result;
    for (const auto& w : seeds) {
        ++result.seeds;
        auto le = check_le_L(w, w, generators, bounds, oracle);
        result.candidates += le.candidates;
        result.unknown += le.unknown;
        if (le.found()) {
            result.cycle = std::vector<DivisibilityWitness>{std::move(*le.witness)};
            return result;
        }
    }
    return result;
}

CycleResult find_cycle(const std::vector<Term>& generators, const SearchBounds& bounds,
                       const EqualityOracle& oracle)
{
    return find_cycle_from_seeds(enumerate_terms(generators, bounds.max_seed_size), generators,
                                 bounds, oracle);
}

// ---------------------------------------------------------------------------

std::pair<Term, Term> quasi_free_sides(const std::vector<Term>& context, const Generator& x,
                                       const Generator& y, const std::vector<Term>& tail_x,
                                       const std::vector<Term>& tail_y)
{
    auto side = [&](const Generator& g, const std::vector<Term>& tail) {
        Term core = Term::leaf(g);
        if (!context.empty()) {
            std::vector<Term> rest(context.begin() + 1, context.end());
            rest.push_back(core);
            core = left_product(context.front(), rest);
        }
        return left_product(core, tail);
    };
    return {side(x, tail_x), side(y, tail_y)};
}

bool verify_violation(const QuasiFreeViolation& v, const EqualityOracle& oracle)
{
    if (v.x == v.y) {
        return false;
    }
    const auto [lhs, rhs] = quasi_free_sides(v.context, v.x, v.y, v.tail_x, v.tail_y);
    return oracle.verify(lhs, rhs, v.evidence);
}

namespace {

/// All tuples over `pool` of length 0..max_length, shortest first.
std::vector<std::vector<Term>> tuples_up_to(const std::vector<Term>& pool, std::size_t max_length)
{
    std::vector<std::vector<Term>> out;
    for (std::size_t length = 0; length <= max_length; ++length) {
        for_each_tuple(pool, length, [&](const std::vector<Term>& t) {
            out.push_back(t);
            return false;
        });
    }
    return out;
}

}  // namespace

QuasiFreeResult check_quasi_free(const Signature& sig, const QuasiFreeBounds& bounds,
                                 const EqualityOracle& oracle)
{
    if (sig.size() < 2) {
        throw InvalidSignature("quasi-freeness needs at least two generators");
    }
    QuasiFreeResult result;
    const auto components = enumerate_terms(leaves_of(sig), bounds.max_component_size);
    const auto contexts = tuples_up_to(components, bounds.max_context);
    const auto tails = tuples_up_to(components, bounds.max_tail);
    const auto& gens = sig.generators();

    for (const auto& context : contexts) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                for (const auto& a : tails) {
                    for (const auto& b : tails) {
                        ++result.candidates;
                        const auto [lhs, rhs] = quasi_free_sides(context, gens[i], gens[j], a, b);
                        auto cmp = oracle.compare(lhs, rhs);
                        if (cmp.outcome == Outcome::Unknown) {
                            ++result.unknown;
                        }
                        if (cmp.outcome == Outcome::Equal) {
                            result.violation = QuasiFreeViolation{context, gens[i], gens[j], a, b,
                                                                  std::move(*cmp.evidence)};
                            return result;
                        }
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace ldwb

#include "ldwb/ld_engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace ldwb {

Direction inverse(Direction d) noexcept
{
    return d == Direction::Expand ? Direction::Contract : Direction::Expand;
}

std::string_view verdict_name(const Verdict& v)
{
    switch (v.index()) {
    case 0:
        return "Equal";
    case 1:
        return "Distinct";
    default:
        return "Unknown";
    }
}

// ---------------------------------------------------------------------------
// Positions and single rewrites

std::optional<Term> subterm_at(const Term& t, std::string_view position)
{
    const Term* cur = &t;
    for (const char move : position) {
        if (cur->is_leaf()) {
            return std::nullopt;
        }
        if (move == 'L') {
            cur = &cur->left();
        } else if (move == 'R') {
            cur = &cur->right();
        } else {
            return std::nullopt;
        }
    }
    return *cur;
}

Term replace_at(const Term& t, std::string_view position, Term replacement)
{
    if (position.empty()) {
        return replacement;
    }
    if (t.is_leaf()) {
        throw Error("position runs past a leaf");
    }
    const auto rest = position.substr(1);
    switch (position.front()) {
    case 'L':
        return Term::app(replace_at(t.left(), rest, std::move(replacement)), t.right());
    case 'R':
        return Term::app(t.left(), replace_at(t.right(), rest, std::move(replacement)));
    default:
        throw Error("position contains a character other than 'L' or 'R'");
    }
}

namespace {

bool is_expand_redex(const Term& t) { return !t.is_leaf() && !t.right().is_leaf(); }

bool is_contract_redex(const Term& t)
{
    return !t.is_leaf() && !t.left().is_leaf() && !t.right().is_leaf() &&
           t.left().left() == t.right().left();
}

// a*(b*c) -> (a*b)*(a*c)
Term expand_root(const Term& t)
{
    const Term& a = t.left();
    const Term& b = t.right().left();
    const Term& c = t.right().right();
    return Term::app(Term::app(a, b), Term::app(a, c));
}

// (a*b)*(a*c) -> a*(b*c)
Term contract_root(const Term& t)
{
    return Term::app(t.left().left(), Term::app(t.left().right(), t.right().right()));
}

template <class Pred>
void collect_positions(const Term& t, std::string& pos, Pred&& pred, std::vector<std::string>& out)
{
    if (pred(t)) {
        out.push_back(pos);
    }
    if (t.is_leaf()) {
        return;
    }
    pos.push_back('L');
    collect_positions(t.left(), pos, pred, out);
    pos.back() = 'R';
    collect_positions(t.right(), pos, pred, out);
    pos.pop_back();
}

template <class Pred, class Rewrite>
std::vector<std::pair<Term, ExpansionStep>> rewrite_once(const Term& t, Direction dir, Pred&& pred,
                                                         Rewrite&& rewrite)
{
    std::vector<std::string> positions;
    std::string scratch;
    collect_positions(t, scratch, pred, positions);

    std::vector<std::pair<Term, ExpansionStep>> out;
    out.reserve(positions.size());
    std::unordered_set<Term, TermHash> seen;
    for (auto& pos : positions) {
        Term result = replace_at(t, pos, rewrite(*subterm_at(t, pos)));
        if (seen.insert(result).second) {
            out.emplace_back(std::move(result), ExpansionStep{std::move(pos), dir});
        }
    }
    return out;
}

}  // namespace

std::optional<Term> apply_step(const Term& t, const ExpansionStep& step)
{
    const auto sub = subterm_at(t, step.position);
    if (!sub) {
        return std::nullopt;
    }
    if (step.direction == Direction::Expand) {
        if (!is_expand_redex(*sub)) {
            return std::nullopt;
        }
        return replace_at(t, step.position, expand_root(*sub));
    }
    if (!is_contract_redex(*sub)) {
        return std::nullopt;
    }
    return replace_at(t, step.position, contract_root(*sub));
}

std::vector<std::pair<Term, ExpansionStep>> expand_once(const Term& t)
{
    return rewrite_once(t, Direction::Expand, is_expand_redex, expand_root);
}

std::vector<std::pair<Term, ExpansionStep>> contract_once(const Term& t)
{
    return rewrite_once(t, Direction::Contract, is_contract_redex, contract_root);
}

// ---------------------------------------------------------------------------
// Refutation

namespace {

/// Postfix program: a non-negative entry pushes the value of that generator
/// slot, -1 pops two values and pushes their product.
class CompiledTerm {
public:
    CompiledTerm(const Term& t, const std::vector<Generator>& slots)
    {
        compile(t, slots);
    }

    LaverTable::Value eval(const LaverTable& table, const std::vector<LaverTable::Value>& values,
                           std::vector<LaverTable::Value>& stack) const
    {
        stack.clear();
        for (const int op : ops_) {
            if (op >= 0) {
                stack.push_back(values[static_cast<std::size_t>(op)]);
            } else {
                const auto r = stack.back();
                stack.pop_back();
                stack.back() = table(stack.back(), r);
            }
        }
        return stack.back();
    }

private:
    void compile(const Term& t, const std::vector<Generator>& slots)
    {
        if (t.is_leaf()) {
            const auto it = std::find(slots.begin(), slots.end(), t.generator());
            ops_.push_back(static_cast<int>(it - slots.begin()));
            return;
        }
        compile(t.left(), slots);
        compile(t.right(), slots);
        ops_.push_back(-1);
    }

    std::vector<int> ops_;
};

std::vector<Generator> pair_generators(const Term& lhs, const Term& rhs)
{
    auto gens = generators_of(lhs);
    for (auto& g : generators_of(rhs)) {
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
            gens.push_back(std::move(g));
        }
    }
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return a.index != b.index ? a.index < b.index : a.name < b.name;
    });
    return gens;
}

/// Assignments to try in A_n: the uniform one first, then either all tuples
/// (mixed radix, last slot fastest) or a fixed pseudo-random sample.
std::vector<std::vector<LaverTable::Value>> assignments_for(int n, std::size_t slots,
                                                            const RefutationOptions& options)
{
    using Value = LaverTable::Value;
    const Value order = Value{1} << n;
    std::vector<std::vector<Value>> out;
    out.emplace_back(slots, Value{1});
    if (!options.all_assignments || order == 1) {
        return out;
    }
    const std::size_t cap = std::max<std::size_t>(options.max_assignments_per_table, 1);
    std::size_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < slots && small; ++i) {
        total *= order;
        small = total <= cap;
    }
    if (small) {
        std::vector<Value> tuple(slots, Value{1});
        for (std::size_t k = 1; k < total; ++k) {
            for (std::size_t i = slots; i-- > 0;) {
                if (++tuple[i] <= order) {
                    break;
                }
                tuple[i] = 1;
            }
            out.push_back(tuple);
        }
        return out;
    }
    std::mt19937_64 rng(0x1d5eed00ULL + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<Value> pick(1, order);
    while (out.size() < cap) {
        std::vector<Value> tuple(slots);
        for (auto& v : tuple) {
            v = pick(rng);
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

}  // namespace

std::size_t right_spine_length(const Term& t)
{
    std::size_t length = 0;
    for (const Term* cur = &t; !cur->is_leaf(); cur = &cur->right()) {
        ++length;
    }
    return length;
}

std::optional<RefutationReason> refute(const Term& lhs, const Term& rhs,
                                       const RefutationOptions& options)
{
    if (leftmost_leaf(lhs) != leftmost_leaf(rhs)) {
        return LeafInvariant{Side::Left, leftmost_leaf(lhs), leftmost_leaf(rhs)};
    }
    if (rightmost_leaf(lhs) != rightmost_leaf(rhs)) {
        return LeafInvariant{Side::Right, rightmost_leaf(lhs), rightmost_leaf(rhs)};
    }
    if (right_spine_length(lhs) != right_spine_length(rhs)) {
        return RightSpine{right_spine_length(lhs), right_spine_length(rhs)};
    }
    const auto slots = pair_generators(lhs, rhs);
    const CompiledTerm left(lhs, slots);
    const CompiledTerm right(rhs, slots);
    std::vector<LaverTable::Value> stack;
    stack.reserve(std::max(lhs.size(), rhs.size()) + 1);
    for (int n = std::max(options.min_table, 0); n <= options.max_table; ++n) {
        const LaverTable& table = cached_table(n);
        const auto candidates = assignments_for(n, slots.size(), options);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const auto& values = candidates[k];
            const auto lv = left.eval(table, values, stack);
            const auto rv = right.eval(table, values, stack);
            if (lv != rv) {
                TableEval reason;
                reason.n = n;
                reason.uniform = k == 0;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    reason.assignment[slots[i].name] = values[i];
                }
                reason.lhs_value = lv;
                reason.rhs_value = rv;
                return reason;
            }
        }
    }
    return std::nullopt;
}

bool check_refutation(const Term& lhs, const Term& rhs, const RefutationReason& reason)
{
    if (const auto* leaf = std::get_if<LeafInvariant>(&reason)) {
        const auto& (*extract)(const Term&) =
            leaf->side == Side::Left ? leftmost_leaf : rightmost_leaf;
        return extract(lhs) == leaf->lhs && extract(rhs) == leaf->rhs && leaf->lhs != leaf->rhs;
    }
    if (const auto* spine = std::get_if<RightSpine>(&reason)) {
        return right_spine_length(lhs) == spine->lhs_length &&
               right_spine_length(rhs) == spine->rhs_length &&
               spine->lhs_length != spine->rhs_length;
    }
    const auto& table_eval = std::get<TableEval>(reason);
    if (table_eval.n < 0 || table_eval.n > 10) {
        return false;
    }
    try {
        const LaverTable& table = cached_table(table_eval.n);
        const auto lv = eval_term(table, lhs, table_eval.assignment);
        const auto rv = eval_term(table, rhs, table_eval.assignment);
        return lv == table_eval.lhs_value && rv == table_eval.rhs_value && lv != rv;
    } catch (const MissingAssignment&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Search

namespace {

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

struct SearchNode {
    Term term;
    std::size_t parent;
    ExpansionStep step;  // parent -> this
};

class SearchSide {
public:
    SearchSide(const Term& root, std::size_t cap) : cap_(cap)
    {
        nodes_.push_back({root, kRoot, {}});
        index_.emplace(root, 0);
        max_size_ = root.size();
    }

    /// Adds a node unless present; returns its index when new.
    std::optional<std::size_t> add(Term term, std::size_t parent, ExpansionStep step)
    {
        if (nodes_.size() >= cap_) {
            exhausted_ = true;
            return std::nullopt;
        }
        const auto [it, inserted] = index_.try_emplace(term, nodes_.size());
        if (!inserted) {
            return std::nullopt;
        }
        max_size_ = std::max(max_size_, term.size());
        nodes_.push_back({std::move(term), parent, std::move(step)});
        return nodes_.size() - 1;
    }

    std::optional<std::size_t> find(const Term& t) const
    {
        const auto it = index_.find(t);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const SearchNode& node(std::size_t i) const { return nodes_[i]; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t max_size() const noexcept { return max_size_; }
    bool exhausted() const noexcept { return exhausted_; }

    /// Nodes on the path root -> i, excluding the root.
    std::vector<std::size_t> path_to(std::size_t i) const
    {
        std::vector<std::size_t> path;
        for (; nodes_[i].parent != kRoot; i = nodes_[i].parent) {
            path.push_back(i);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

private:
    std::size_t cap_;
    std::size_t max_size_ = 0;
    bool exhausted_ = false;
    std::vector<SearchNode> nodes_;
    std::unordered_map<Term, std::size_t, TermHash> index_;
};

/// One breadth-first level of contractions from `frontier`; returns the new
/// nodes.
std::vector<std::size_t> contract_level(SearchSide& side, const std::vector<std::size_t>& frontier)
{
    std::vector<std::size_t> next;
    for (const auto i : frontier) {
        const Term source = side.node(i).term;
        for (auto& [result, step] : contract_once(source)) {
            if (const auto added = side.add(std::move(result), i, std::move(step))) {
                next.push_back(*added);
            }
            if (side.exhausted()) {
                return next;
            }
        }
    }
    return next;
}

/// Pending expansion work of one side, bucketed by term size.
class SizeQueue {
public:
    void push(const SearchSide& side, std::size_t node, std::size_t depth)
    {
        buckets_[side.node(node).term.size()].push_back({node, depth});
    }

    bool empty() const noexcept { return buckets_.empty(); }

    std::size_t min_size() const noexcept
    {
        return buckets_.empty() ? std::numeric_limits<std::size_t>::max() : buckets_.begin()->first;
    }

    /// Expands every pending node of size `s`; returns the new nodes.
    std::vector<std::size_t> expand_class(SearchSide& side, std::size_t s,
                                          const SearchBudget& budget, std::size_t& max_depth_seen)
    {
        std::vector<std::size_t> fresh;
        const auto it = buckets_.find(s);
        if (it == buckets_.end()) {
            return fresh;
        }
        const auto work = std::move(it->second);
        buckets_.erase(it);
        for (const auto& [i, depth] : work) {
            if (depth >= budget.max_depth) {
                continue;
            }
            const Term source = side.node(i).term;
            for (auto& [result, step] : expand_once(source)) {
                if (result.size() > budget.max_term_size) {
                    continue;
                }
                if (const auto added = side.add(std::move(result), i, std::move(step))) {
                    fresh.push_back(*added);
                    push(side, *added, depth + 1);
                    max_depth_seen = std::max(max_depth_seen, depth + 1);
                }
                if (side.exhausted()) {
                    return fresh;
                }
            }
        }
        return fresh;
    }

private:
    struct Pending {
        std::size_t node;
        std::size_t depth;
    };
    std::map<std::size_t, std::vector<Pending>> buckets_;
};

EquivCertificate stitch(const SearchSide& lhs, std::size_t lhs_meet, const SearchSide& rhs,
                        std::size_t rhs_meet)
{
    EquivCertificate cert;
    for (const auto i : lhs.path_to(lhs_meet)) {
        cert.steps.push_back({lhs.node(i).step, lhs.node(i).term});
    }
    // Walk the rhs path backwards, undoing each rewrite.
    const auto back = rhs.path_to(rhs_meet);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
        const SearchNode& n = rhs.node(*it);
        const ExpansionStep undo{n.step.position, inverse(n.step.direction)};
        cert.steps.push_back({undo, rhs.node(n.parent).term});
    }
    return cert;
}

/// First meeting point, scanning `fresh_lhs` against all of `rhs` and then
/// `fresh_rhs` against all of `lhs`.
std::optional<std::pair<std::size_t, std::size_t>> meet(const SearchSide& lhs,
                                                        const std::vector<std::size_t>& fresh_lhs,
                                                        const SearchSide& rhs,
                                                        const std::vector<std::size_t>& fresh_rhs)
{
    for (const auto i : fresh_lhs) {
        if (const auto j = rhs.find(lhs.node(i).term)) {
            return std::pair{i, *j};
        }
    }
    for (const auto j : fresh_rhs) {
        if (const auto i = lhs.find(rhs.node(j).term)) {
            return std::pair{*i, j};
        }
    }
    return std::nullopt;
}

void check_same_generators(const Term& lhs, const Term& rhs)
{
    for (const auto& a : generators_of(lhs)) {
        for (const auto& b : generators_of(rhs)) {
            if ((a.name == b.name) != (a.index == b.index)) {
                throw InvalidSignature("generator '" + a.name + "' and '" + b.name +
                                       "' come from different signatures");
            }
        }
    }
}

}  // namespace

Verdict decide_equiv(const Term& lhs, const Term& rhs, const SearchBudget& budget,
                     const RefutationOptions& options)
{
    check_same_generators(lhs, rhs);
    if (lhs == rhs) {
        return Equal{};
    }
    if (auto reason = refute(lhs, rhs, options)) {
        return Distinct{std::move(*reason)};
    }

    SearchSide left(lhs, budget.max_frontier_terms);
    SearchSide right(rhs, budget.max_frontier_terms);
    auto stop = [&](std::size_t depth, const char* why) {
        return Unknown{SearchCounters{left.size(), right.size(), depth, why}};
    };

    // Contraction closures first: every term reachable by contractions.
    std::vector<std::size_t> all_left{0};
    std::vector<std::size_t> all_right{0};
    {
        std::vector<std::size_t> fl{0};
        std::vector<std::size_t> fr{0};
        for (std::size_t level = 0; level < budget.max_depth && (!fl.empty() || !fr.empty());
             ++level) {
            fl = contract_level(left, fl);
            fr = contract_level(right, fr);
            all_left.insert(all_left.end(), fl.begin(), fl.end());
            all_right.insert(all_right.end(), fr.begin(), fr.end());
            if (left.exhausted() || right.exhausted()) {
                break;
            }
        }
    }
    if (const auto m = meet(left, all_left, right, all_right)) {
        return Equal{stitch(left, m->first, right, m->second)};
    }
    if (left.exhausted() || right.exhausted()) {
        return stop(0, "frontier");
    }

    // Then expansions, one size class at a time. An expansion strictly
    // increases size, so once every pending node has size > s, each side
    // already holds all of its reachable terms of size <= s.
    SizeQueue ql;
    SizeQueue qr;
    for (const auto i : all_left) {
        ql.push(left, i, 0);
    }
    for (const auto i : all_right) {
        qr.push(right, i, 0);
    }
    std::size_t depth = 0;
    while (true) {
        if (ql.empty() && qr.empty()) {
            return stop(depth, "saturated");
        }
        const std::size_t s = std::min(ql.min_size(), qr.min_size());
        // A saturated side cannot produce anything new to meet.
        if ((ql.empty() && s > left.max_size()) || (qr.empty() && s > right.max_size())) {
            return stop(depth, "saturated");
        }
        const auto fl = ql.expand_class(left, s, budget, depth);
        const auto fr = qr.expand_class(right, s, budget, depth);
        if (const auto m = meet(left, fl, right, fr)) {
            return Equal{stitch(left, m->first, right, m->second)};
        }
        if (left.exhausted() || right.exhausted()) {
            return stop(depth, "frontier");
        }
    }
}

Verdict decide_equiv(const Term& lhs, const Term& rhs, const Signature& sig,
                     const SearchBudget& budget, const RefutationOptions& options)
{
    for (const Term* t : {&lhs, &rhs}) {
        for (const auto& g : generators_of(*t)) {
            const Generator* own = sig.find(g.name);
            if (!own || *own != g) {
                throw InvalidSignature("generator '" + g.name + "' is not in the signature");
            }
        }
    }
    return decide_equiv(lhs, rhs, budget, options);
}

bool check_certificate(const Term& lhs, const Term& rhs, const EquivCertificate& cert)
{
    Term current = lhs;
    for (const auto& s : cert.steps) {
        auto next = apply_step(current, s.step);
        if (!next || !(*next == s.result)) {
            return false;
        }
        current = std::move(*next);
    }
    return current == rhs;
}

Term random_expansion_walk(const Term& t, std::size_t steps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Term current = t;
    for (std::size_t i = 0; i < steps; ++i) {
        auto options = expand_once(current);
        if (options.empty()) {
            break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        current = std::move(options[pick(rng)].first);
    }
    return current;
}

}  // namespace ldwb

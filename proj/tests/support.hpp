#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ldwb/laver_table.hpp"
#include "ldwb/ld_engine.hpp"
#include "ldwb/term.hpp"

namespace ldwb::test {

inline Term P(std::string_view text)
{
    return parse_term(text, infer_signature(text));
}

inline Term P(std::string_view text, const Signature& sig)
{
    return parse_term(text, sig);
}

/// Uniformly shaped random binary tree with `leaves` leaves over `gens`.
inline Term random_term(std::mt19937_64& rng, const std::vector<Generator>& gens, std::size_t leaves)
{
    if (leaves == 1) {
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        return Term::leaf(gens[pick(rng)]);
    }
    std::uniform_int_distribution<std::size_t> split(1, leaves - 1);
    const std::size_t left = split(rng);
    Term l = random_term(rng, gens, left);
    Term r = random_term(rng, gens, leaves - left);
    return Term::app(std::move(l), std::move(r));
}

inline Term random_term_up_to(std::mt19937_64& rng, const std::vector<Generator>& gens,
                              std::size_t max_leaves)
{
    std::uniform_int_distribution<std::size_t> size(1, max_leaves);
    return random_term(rng, gens, size(rng));
}

/// Laver table entry straight from the defining recursion, memoized.
class LaverRecursion {
public:
    explicit LaverRecursion(int n) : order_(1u << n) {}

    std::uint32_t op(std::uint32_t p, std::uint32_t q)
    {
        if (p == order_) {
            return q;
        }
        if (q == 1) {
            return p + 1;
        }
        auto key = std::make_pair(p, q);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        const std::uint32_t v = op(op(p, q - 1), p + 1);
        memo_[key] = v;
        return v;
    }

private:
    std::uint32_t order_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> memo_;
};

/// Every one-step expansion, found by trying the pattern at every path.
inline std::set<std::string> expansions_by_pattern(const Term& t)
{
    std::set<std::string> out;
    std::vector<std::string> paths{""};
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const Term s = *subterm_at(t, paths[i]);
        if (s.is_leaf()) {
            continue;
        }
        paths.push_back(paths[i] + "L");
        paths.push_back(paths[i] + "R");
        if (s.right().is_leaf()) {
            continue;
        }
        const Term& a = s.left();
        const Term& b = s.right().left();
        const Term& c = s.right().right();
        out.insert(render_term(replace_at(t, paths[i], Term::app(Term::app(a, b), Term::app(a, c)))));
    }
    return out;
}

}  // namespace ldwb::test

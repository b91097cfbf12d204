#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ldwb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed term text. `position()` is the 0-based byte offset of the
/// offending token.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected, std::string found);

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class UnknownGenerator : public Error {
public:
    UnknownGenerator(std::size_t position, std::string name);

    std::size_t position() const noexcept { return position_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::size_t position_;
    std::string name_;
};

/// A term (or table, or query) exceeds a configured size cap.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

class InvalidSignature : public Error {
public:
    using Error::Error;
};

struct Generator {
    std::uint32_t index = 0;  // 1-based
    std::string name;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// True iff `name` matches `[A-Za-z][A-Za-z0-9_]*`.
bool is_valid_generator_name(std::string_view name);

/// Ordered, non-empty list of generators with distinct names and indices.
class Signature {
public:
    explicit Signature(std::vector<Generator> generators);

    /// Generators named in order, indexed 1..n.
    static Signature from_names(const std::vector<std::string>& names);

    const std::vector<Generator>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }

    /// nullptr when absent.
    const Generator* find(std::string_view name) const noexcept;
    const Generator& at(std::string_view name) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Generator> generators_;
};

/// Finite binary application tree over generator leaves.
///
/// Terms are immutable and share subterms freely; equality and hashing are
/// structural. Hash and leaf count are cached per node, so both are O(1).
class Term {
public:
    static Term leaf(Generator g);
    static Term app(Term left, Term right);

    bool is_leaf() const noexcept;
    const Generator& generator() const;  // leaf only
    const Term& left() const;            // application only
    const Term& right() const;           // application only

    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

inline constexpr std::size_t kDefaultMaxTermSize = 64;

struct ParseOptions {
    std::size_t max_term_size = kDefaultMaxTermSize;
};

/// Grammar: term := atom | '(' term '*' term ')' | term '*' term, bare
/// chains associating to the left. Whitespace between tokens is ignored.
Term parse_term(std::string_view text, const Signature& sig, const ParseOptions& options = {});

/// Signature made of the identifiers of `text` in order of first appearance.
Signature infer_signature(std::string_view text);

/// Fully parenthesized canonical form, e.g. "((j*k)*j)".
std::string render_term(const Term& t);

const Generator& leftmost_leaf(const Term& t);
const Generator& rightmost_leaf(const Term& t);

inline std::size_t size(const Term& t) { return t.size(); }

/// Left-nested product ((head*tail[0])*tail[1])*...
Term left_product(const Term& head, const std::vector<Term>& tail);

/// Replaces every leaf by `substitution(generator)`.
template <class F>
Term substitute_leaves(const Term& t, F&& substitution)
{
    if (t.is_leaf()) {
        return substitution(t.generator());
    }
    return Term::app(substitute_leaves(t.left(), substitution),
                     substitute_leaves(t.right(), substitution));
}

/// Generators occurring in `t`, in order of first (left-to-right) occurrence.
std::vector<Generator> generators_of(const Term& t);

}  // namespace ldwb

#include "ldwb/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace ldwb {

SyntaxError::SyntaxError(std::size_t position, std::string expected, std::string found)
    : Error("syntax error at position " + std::to_string(position) + ": expected " + expected +
            ", found " + found),
      position_(position),
      expected_(std::move(expected))
{
}

UnknownGenerator::UnknownGenerator(std::size_t position, std::string name)
    : Error("unknown generator '" + name + "' at position " + std::to_string(position)),
      position_(position),
      name_(std::move(name))
{
}

bool is_valid_generator_name(std::string_view name)
{
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Signature::Signature(std::vector<Generator> generators) : generators_(std::move(generators))
{
    if (generators_.empty()) {
        throw InvalidSignature("signature must contain at least one generator");
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& g = generators_[i];
        if (g.index == 0) {
            throw InvalidSignature("generator '" + g.name + "' has index 0; indices are 1-based");
        }
        if (!is_valid_generator_name(g.name)) {
            throw InvalidSignature("invalid generator name '" + g.name + "'");
        }
        for (std::size_t k = 0; k < i; ++k) {
            if (generators_[k].name == g.name) {
                throw InvalidSignature("duplicate generator name '" + g.name + "'");
            }
            if (generators_[k].index == g.index) {
                throw InvalidSignature("duplicate generator index " + std::to_string(g.index));
            }
        }
    }
}

Signature Signature::from_names(const std::vector<std::string>& names)
{
    std::vector<Generator> gens;
    gens.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        gens.push_back({static_cast<std::uint32_t>(i + 1), names[i]});
    }
    return Signature(std::move(gens));
}

const Generator* Signature::find(std::string_view name) const noexcept
{
    for (const auto& g : generators_) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

const Generator& Signature::at(std::string_view name) const
{
    if (const auto* g = find(name)) {
        return *g;
    }
    throw UnknownGenerator(0, std::string(name));
}

// ---------------------------------------------------------------------------

struct Term::Node {
    Generator gen;  // meaningful for leaves only
    Term left{nullptr};
    Term right{nullptr};
    std::size_t leaves = 1;
    std::size_t hash = 0;
    bool leaf = true;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v)
{
    // boost::hash_combine with a 64-bit constant
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term Term::leaf(Generator g)
{
    auto node = std::make_shared<Node>();
    node->hash = mix(std::hash<std::string>{}(g.name), g.index);
    node->gen = std::move(g);
    return Term(std::move(node));
}

Term Term::app(Term left, Term right)
{
    auto node = std::make_shared<Node>();
    node->leaf = false;
    node->leaves = left.size() + right.size();
    node->hash = mix(mix(0x51ed270b27a5e1d3ULL, left.hash()), right.hash());
    node->left = std::move(left);
    node->right = std::move(right);
    return Term(std::move(node));
}

bool Term::is_leaf() const noexcept { return node_->leaf; }

const Generator& Term::generator() const
{
    if (!node_->leaf) {
        throw Error("generator() called on an application node");
    }
    return node_->gen;
}

const Term& Term::left() const
{
    if (node_->leaf) {
        throw Error("left() called on a leaf");
    }
    return node_->left;
}

const Term& Term::right() const
{
    if (node_->leaf) {
        throw Error("right() called on a leaf");
    }
    return node_->right;
}

std::size_t Term::size() const noexcept { return node_->leaves; }
std::size_t Term::hash() const noexcept { return node_->hash; }

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.node_->hash != b.node_->hash || a.node_->leaves != b.node_->leaves ||
        a.node_->leaf != b.node_->leaf) {
        return false;
    }
    if (a.node_->leaf) {
        return a.node_->gen == b.node_->gen;
    }
    return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view text, const Signature& sig, const ParseOptions& options)
        : text_(text), sig_(sig), options_(options)
    {
    }

    Term parse()
    {
        Term t = chain();
        skip_ws();
        if (pos_ != text_.size()) {
            throw SyntaxError(pos_, "'*' or end of input", describe_here());
        }
        return t;
    }

private:
    // chain := primary ('*' primary)*
    Term chain(std::size_t* factors = nullptr)
    {
        Term acc = primary();
        std::size_t count = 1;
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                acc = Term::app(std::move(acc), primary());
                ++count;
            } else {
                break;
            }
        }
        if (factors) {
            *factors = count;
        }
        return acc;
    }

    // primary := atom | '(' chain-with-at-least-one-'*' ')'
    Term primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw SyntaxError(pos_, "generator name or '('", "end of input");
        }
        if (text_[pos_] == '(') {
            ++pos_;
            std::size_t factors = 0;
            Term inner = chain(&factors);
            skip_ws();
            if (factors < 2) {
                throw SyntaxError(pos_, "'*'", describe_here());
            }
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                throw SyntaxError(pos_, "')' or '*'", describe_here());
            }
            ++pos_;
            return inner;
        }
        const std::size_t start = pos_;
        if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            throw SyntaxError(pos_, "generator name or '('", describe_here());
        }
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        const Generator* g = sig_.find(name);
        if (!g) {
            throw UnknownGenerator(start, std::string(name));
        }
        if (++leaves_ > options_.max_term_size) {
            throw LimitExceeded("term exceeds the maximum size of " +
                                std::to_string(options_.max_term_size) + " leaves");
        }
        return Term::leaf(*g);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string describe_here() const
    {
        if (pos_ >= text_.size()) {
            return "end of input";
        }
        return "'" + std::string(1, text_[pos_]) + "'";
    }

    std::string_view text_;
    const Signature& sig_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
    std::size_t leaves_ = 0;
};

void render_into(const Term& t, std::string& out)
{
    if (t.is_leaf()) {
        out += t.generator().name;
        return;
    }
    out += '(';
    render_into(t.left(), out);
    out += '*';
    render_into(t.right(), out);
    out += ')';
}

}  // namespace

Term parse_term(std::string_view text, const Signature& sig, const ParseOptions& options)
{
    return Parser(text, sig, options).parse();
}

Signature infer_signature(std::string_view text)
{
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                ++i;
            }
            std::string name(text.substr(start, i - start));
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                names.push_back(std::move(name));
            }
        } else {
            ++i;
        }
    }
    if (names.empty()) {
        throw SyntaxError(0, "generator name", "no identifiers");
    }
    return Signature::from_names(names);
}

std::string render_term(const Term& t)
{
    std::string out;
    out.reserve(t.size() * 4);
    render_into(t, out);
    return out;
}

const Generator& leftmost_leaf(const Term& t)
{
    const Term* cur = &t;
    while (!cur->is_leaf()) {
        cur = &cur->left();
    }
    return cur->generator();
}

const Generator& rightmost_leaf(const Term& t)
{
    const Term* cur = &t;
    while (!cur->is_leaf()) {
        cur = &cur->right();
    }
    return cur->generator();
}

Term left_product(const Term& head, const std::vector<Term>& tail)
{
    Term acc = head;
    for (const auto& u : tail) {
        acc = Term::app(std::move(acc), u);
    }
    return acc;
}

std::vector<Generator> generators_of(const Term& t)
{
    std::vector<Generator> out;
    std::vector<const Term*> stack{&t};
    while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_leaf()) {
            if (std::find(out.begin(), out.end(), cur->generator()) == out.end()) {
                out.push_back(cur->generator());
            }
        } else {
            stack.push_back(&cur->right());
            stack.push_back(&cur->left());
        }
    }
    return out;
}

}  // namespace ldwb

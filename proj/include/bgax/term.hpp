#pragma once

// Terms over the language {·, e}: the binary operation, the constant e and
// single-letter variables. Terms are immutable and share structure, so copies
// are cheap and every operation here is safe to call concurrently.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bgax
{

class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string &message, std::size_t position)
        : std::runtime_error(message + " at offset " + std::to_string(position)),
          position_(position)
    {
    }

    /// Byte offset into the parsed text.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class Term
{
public:
    enum class Kind : unsigned char
    {
        constant, // e
        variable,
        product,
    };

    /// The constant e.
    Term();
    static Term e();
    /// Throws std::invalid_argument unless name is a lowercase letter other than 'e'.
    static Term var(char name);
    static Term product(Term left, Term right);

    Kind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == Kind::constant; }
    bool is_variable() const noexcept { return kind() == Kind::variable; }
    bool is_product() const noexcept { return kind() == Kind::product; }
    bool is_leaf() const noexcept { return !is_product(); }

    /// Leaf symbol: 'e' for the constant, the letter for a variable.
    char symbol() const noexcept;
    const Term &left() const;
    const Term &right() const;

    std::size_t leaf_count() const noexcept;
    /// Number of symbols: leaves plus product nodes.
    std::size_t size() const noexcept { return 2 * leaf_count() - 1; }

    friend bool operator==(const Term &a, const Term &b);

    /// Deterministic total order: leaf sequence first (e before the variables,
    /// variables alphabetical), then shape in preorder with products before leaves.
    friend std::strong_ordering operator<=>(const Term &a, const Term &b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Term::Node
{
    Kind kind;
    char symbol = 0;
    std::size_t leaves = 1;
    std::optional<Term> left;
    std::optional<Term> right;
};

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline char Term::symbol() const noexcept { return node_->symbol; }
inline std::size_t Term::leaf_count() const noexcept { return node_->leaves; }

struct Identity
{
    Term lhs;
    Term rhs;

    friend bool operator==(const Identity &, const Identity &) = default;
    friend std::strong_ordering operator<=>(const Identity &a, const Identity &b)
    {
        if (auto c = a.lhs <=> b.lhs; c != 0)
            return c;
        return a.rhs <=> b.rhs;
    }
};

struct TaggedFormula
{
    std::string tag;
    Identity identity;
};

/// Symbol -> number of leaf occurrences. The constant is keyed as 'e'.
using Occurrences = std::map<char, int>;

Term parse_term(std::string_view input);
Identity parse_identity(std::string_view input);

enum class PrintStyle
{
    unicode, // U+00B7 middle dot
    ascii,   // '*'
};

/// Minimal-parenthesis rendering. A product whose right factor is a leaf is
/// written by juxtaposition; otherwise the dot is used and the right factor is
/// printed as a juxtaposition chain, parenthesized when it contains a dot.
/// Example: ((e·xy)·yz)z prints as (e·xy·yz)z.
std::string print_term(const Term &t, PrintStyle style = PrintStyle::unicode);
std::string print_identity(const Identity &id, PrintStyle style = PrintStyle::unicode);

Occurrences occurrences(const Term &t);
Occurrences occurrences(const Identity &id);

Term mirror(const Term &t);

/// Distinct variables of the identity, in alphabetical order.
std::vector<char> variables(const Identity &id);
std::vector<char> variables(const Term &t);

/// Left-to-right leaf symbols.
std::string leaf_sequence(const Term &t);

/// Replaces every leaf by the symbol mapped to it (missing symbols are kept).
Term rename(const Term &t, const std::map<char, char> &mapping);

// --- formula files -------------------------------------------------------

struct FormulaLineError
{
    std::size_t line = 0; // 1-based
    std::string message;
};

struct FormulaFile
{
    std::vector<TaggedFormula> formulas;
    std::vector<FormulaLineError> errors;
};

/// One entry per line, optional "TAG: identity" prefix, '#' comments, blank
/// lines ignored. Untagged entries get the tag "line<N>". Arrows in tags are
/// normalized to the ASCII suffixes: ↑ -> u, ↓ -> d. Bad lines are collected,
/// not thrown.
FormulaFile parse_formula_file(std::string_view text);

std::string format_formula_file(const std::vector<TaggedFormula> &formulas,
                                PrintStyle style = PrintStyle::unicode);

} // namespace bgax

#pragma once

// Boolean-group theoremhood of identities, decided two independent ways.

#include "bgax/term.hpp"

#include <map>
#include <optional>
#include <string_view>

namespace bgax
{

/// Assignment of variables into the two-element group {0, 1}.
using Z2Assignment = std::map<char, int>;

struct DecisionResult
{
    bool is_theorem = false;
    /// First falsifying assignment (variables alphabetical, first variable most
    /// significant). Present iff !is_theorem.
    std::optional<Z2Assignment> witness;
};

/// Parity criterion: every variable occurs an even number of times across
/// both sides. The constant does not count.
bool parity_decide(const Identity &id);

inline constexpr std::size_t z2_max_variables = 20;

/// Evaluates both sides in ({0,1}, XOR, 0) under every assignment.
/// Throws std::invalid_argument with more than z2_max_variables variables.
DecisionResult z2_decide(const Identity &id);

struct AgreementSweep
{
    std::size_t identities = 0;  // identities checked
    std::size_t theorems = 0;    // accepted by both procedures
    std::size_t disagreements = 0;
    std::optional<Identity> first_disagreement; // earliest in enumeration order
};

/// Runs both procedures on every identity S = T whose combined leaf count is
/// at most max_leaves, leaves drawn from `symbols` (letters; 'e' is the
/// constant). Enumeration: by combined leaf count, then left leaf count,
/// left shape, right shape, then labelings. workers follows bgax/parallel.hpp.
AgreementSweep parity_z2_sweep(std::size_t max_leaves, std::string_view symbols = "exyz", int workers = 0);

/// Value of t in ({0,1}, XOR, 0). Throws std::out_of_range on an unassigned variable.
int z2_evaluate(const Term &t, const Z2Assignment &assignment);

} // namespace bgax

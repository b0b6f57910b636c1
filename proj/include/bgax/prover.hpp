#pragma once

// Equational theorem proving by ordered (unfailing) Knuth-Bendix completion.
//
// Axioms are completed into oriented rules plus unorientable equations; the
// latter rewrite only instances that decrease in the term ordering. Goals are
// skolemized (their variables become fresh constants above e and below the
// operation in the precedence) and count as proved once both sides reach the
// same normal form. Every proof carries a trace that can be replayed by
// check_trace without reference to the engine.

#include "bgax/term.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bgax
{

enum class OrderingKind
{
    kbo,
    lpo,
};

/// Precedence is fixed: e < goal constants < ·. Weights apply to KBO only;
/// goal constants weigh as much as e.
struct TermOrdering
{
    OrderingKind kind = OrderingKind::kbo;
    unsigned product_weight = 1;
    unsigned constant_weight = 1;
    unsigned variable_weight = 1;

    /// KBO admissibility: variable weight positive and at most the constant weight.
    bool valid() const;
};

enum class Comparison
{
    greater,
    less,
    equal,
    incomparable,
};

Comparison compare(const TermOrdering &ord, const Term &s, const Term &t);

struct RewriteRule
{
    Term lhs;
    Term rhs;
    /// false: an unorientable equation, applied in either direction when the
    /// instance decreases.
    bool oriented = true;

    friend bool operator==(const RewriteRule &, const RewriteRule &) = default;
};

struct RewriteSystem
{
    TermOrdering ordering;
    std::vector<RewriteRule> rules;
};

struct ProverLimits
{
    double max_seconds = 300.0;
    /// Passive equations taken off the queue.
    std::size_t max_processed = 200000;
    /// Per side, in symbols; larger equations are dropped.
    std::size_t max_term_size = 60;
    std::size_t max_passive = 4000000;
};

enum class ProofStatus
{
    proved,
    saturated,
    resource_out,
};

std::string to_string(ProofStatus s);

struct ProverStats
{
    std::size_t processed = 0;           // passive equations selected
    std::size_t critical_pairs = 0;      // overlaps computed
    std::size_t rules_generated = 0;     // equations added to the active set
    std::size_t active = 0;              // active set size at the end
    std::size_t passive = 0;             // passive queue size at the end
    std::size_t dropped_by_limits = 0;   // equations discarded by size or variable caps
    std::size_t ground_joinable = 0;     // unorientable equations found redundant
    double elapsed_seconds = 0.0;
};

enum class StepKind
{
    axiom,
    overlap,
    rewrite,
    goal,
};

/// One inference of a trace. Serialized as a line:
///   <id> axiom : <s> = <t>
///   <id> overlap <outer>:<dir> <inner>:<dir> @<pos> : <s> = <t>
///   <id> rewrite <parent> <rule>:<dir> <L|R>@<pos> : <s> = <t>
///   <id> goal : <s> = <t>
/// dir is '>' (left to right) or '<'. pos lists child choices from the root,
/// 1 = left, 2 = right; the root is the empty path. An overlap unifies the
/// inner rule's left side with the outer rule's left side at pos and yields
/// (outer lhs with inner rhs at pos, outer rhs) under the unifier, with the
/// inner rule renamed apart. A rewrite replaces the subterm at pos of the
/// parent's side by the instance of the rule; variables only on the rule's
/// right side are instantiated with e. Equations are printed with their
/// variables renamed by first occurrence, except in goal lines and their
/// rewrites, where letters stand for the goal's fixed constants.
struct ProofStep
{
    int id = 0;
    StepKind kind = StepKind::axiom;
    int parent = 0;       // rewrite: equation rewritten; overlap: outer
    int rule = 0;         // rewrite: rule used; overlap: inner
    bool parent_forward = true; // overlap: outer direction
    bool rule_forward = true;
    bool on_right = false; // rewrite: side rewritten
    std::string position;  // digits 1/2
    Identity equation;

    friend bool operator==(const ProofStep &, const ProofStep &) = default;
};

std::string format_step(const ProofStep &step);
std::string format_trace(const std::vector<ProofStep> &trace);
/// Throws parse_error on a malformed line.
std::vector<ProofStep> parse_trace(std::string_view text);

struct ReplayResult
{
    bool ok = true;
    int failed_step = 0;
    std::string message;
    std::size_t goals_closed = 0;
};

/// Re-derives every step using only unification, substitution and matching.
/// Axiom lines must be among `axioms` up to variable renaming; goal lines
/// must be among `goals`; each goal must end in a line with identical sides.
ReplayResult check_trace(const std::vector<ProofStep> &trace, const std::vector<Identity> &axioms,
                         const std::vector<Identity> &goals);

struct ProofOutcome
{
    ProofStatus status = ProofStatus::saturated;
    std::string stop_reason;
    std::vector<Identity> goals;
    std::vector<bool> goal_joined;
    ProverStats stats;
    std::vector<ProofStep> trace; // only when proved
};

struct CompletionResult
{
    RewriteSystem system;
    ProofStatus status = ProofStatus::saturated;
    std::string stop_reason;
    ProverStats stats;
};

/// Applies rules innermost, leftmost first until none applies. Unoriented
/// rules rewrite only instances that decrease under ord.
Term normalize(const Term &t, const std::vector<RewriteRule> &rules, const TermOrdering &ord = {});

/// Normalizes each term with its variables read as constants, ordered by
/// letter above e. The ordering is total on such terms, so a ground-confluent
/// system (e.g. a saturated completion) gives equal normal forms exactly to
/// the terms it proves equal. Letters are kept in the result.
std::vector<Term> normalize_ground(const std::vector<Term> &terms, const std::vector<RewriteRule> &rules,
                                   const TermOrdering &ord = {});

/// Overlaps of each rule's left side into non-variable subterms of the
/// other's left side (each rule's unoriented equations count both ways).
/// Results use canonical variable letters.
std::vector<Identity> critical_pairs(const RewriteRule &r1, const RewriteRule &r2,
                                     const TermOrdering &ord = {});

CompletionResult complete(const std::vector<Identity> &axioms, const TermOrdering &ord = {},
                          const ProverLimits &limits = {});

ProofOutcome derive(const std::vector<Identity> &axioms, const std::vector<Identity> &goals,
                    const TermOrdering &ord = {}, const ProverLimits &limits = {});

/// Named strategy settings shipped with the library.
struct StrategyPreset
{
    std::string name;
    TermOrdering ordering;
    ProverLimits limits;
};

const std::vector<StrategyPreset> &strategy_presets();
/// Throws std::invalid_argument for an unknown name.
const StrategyPreset &strategy_preset(std::string_view name);

} // namespace bgax

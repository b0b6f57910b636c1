#pragma once

// Classification of candidate identities: parity and Z2 decision, finite
// model evidence, triviality evidence and a prover run, combined into one
// verdict per formula; plus the embedded fixture set and batch reports.

#include "bgax/decision.hpp"
#include "bgax/models.hpp"
#include "bgax/prover.hpp"
#include "bgax/term.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bgax
{

/// Raised when two procedures that must agree do not (parity vs Z2, a proof
/// that does not replay, a proof contradicted by a finite model). Indicates a
/// bug, never a property of the input.
class invariant_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// --- fixtures -------------------------------------------------------------

struct FixtureSet
{
    /// Listed as single axioms for Boolean groups.
    std::vector<TaggedFormula> single_axioms;
    /// Listed as axioms for finite Boolean groups only.
    std::vector<TaggedFormula> finite_only;

    std::vector<TaggedFormula> all() const;
};

const FixtureSet &fixtures();

/// The fixtures in formula-file format, with a comment line per group.
std::string fixture_file();

/// x·x = e, e·x = x, (x·y)·z = x·(y·z).
const std::vector<Identity> &boolean_group_axioms();

/// x = e.
const Identity &trivial_goal();

// --- classification -------------------------------------------------------

struct ClassifyConfig
{
    /// Model evidence is gathered for sizes 1..model_max_size.
    int model_max_size = 4;
    /// Tables kept per size; more are counted but not examined.
    std::size_t model_limit = 10000;
    /// is_trivializing bound when parity fails.
    int trivial_bound = 4;
    bool prove = true;
    std::string strategy = "default";
    TermOrdering ordering;
    /// Batch runs bound the prover by processed equations so that reports do
    /// not depend on machine speed; the wall-clock limit is only a backstop.
    ProverLimits limits = [] {
        ProverLimits l;
        l.max_processed = 10000;
        return l;
    }();

    /// Ordering and limits of a named preset; other fields keep their defaults.
    static ClassifyConfig from_preset(std::string_view name);
};

enum class Verdict
{
    boolean_theorem_candidate,
    trivializing,
    inconsistent_evidence,
};

std::string to_string(Verdict v);

struct SizeEvidence
{
    int n = 0;
    std::size_t models = 0;         // labeled tables with e at 0
    std::size_t boolean_groups = 0; // among the examined tables
    bool truncated = false;         // more than model_limit tables
};

enum class ProofTarget
{
    boolean_group_axioms,
    trivial,
};

std::string to_string(ProofTarget t);

struct ProofSummary
{
    bool attempted = false;
    ProofTarget target = ProofTarget::boolean_group_axioms;
    ProofStatus status = ProofStatus::resource_out;
    std::string stop_reason;
    std::vector<Identity> goals;
    std::vector<bool> goal_joined;
    ProverStats stats;
    std::size_t trace_steps = 0;
    bool replayed = false;        // trace accepted by check_trace (proved only)
    bool cross_validated = false; // every examined model of the axiom satisfies the goals
    std::size_t tables_checked = 0;
};

struct Classification
{
    std::string tag;
    Identity identity;
    bool parity = false;
    bool z2_agrees = true;
    std::optional<Z2Assignment> z2_witness;
    std::vector<SizeEvidence> models;
    std::optional<TrivialityVerdict> trivial; // only when parity fails
    ProofSummary proof;
    Verdict verdict = Verdict::inconsistent_evidence;
};

/// Verdict rules:
///  - boolean-theorem-candidate: parity holds and every examined model of
///    size 1..model_max_size is a Boolean group;
///  - trivializing: parity fails, and either x = e was proved or no
///    nontrivial model exists up to the triviality bound;
///  - inconsistent-evidence: anything else (the tools do not support either
///    claim, e.g. a parity-valid identity with non-group models).
/// Throws invariant_violation when parity and Z2 disagree, when a proof does
/// not replay, or when a finite model contradicts a proof.
Classification classify(const Identity &id, const ClassifyConfig &config = {}, std::string tag = "");

struct CrossValidation
{
    bool ok = true;
    std::size_t tables_checked = 0;
    std::optional<CayleyTable> counterexample;
    std::optional<Identity> failed_goal;
};

/// Checks that every model of the axioms with 1..max_n elements satisfies
/// every goal.
CrossValidation cross_validate(const std::vector<Identity> &axioms, const std::vector<Identity> &goals,
                               int max_n = 4);

// --- batch ----------------------------------------------------------------

struct BatchSummary
{
    std::size_t formulas = 0;
    std::size_t parity_pass = 0;
    std::size_t boolean_theorem_candidates = 0;
    std::size_t trivializing = 0;
    std::size_t inconsistent_evidence = 0;
    std::size_t proved = 0;
    std::size_t parse_errors = 0;
};

struct BatchReport
{
    std::vector<Classification> entries; // input order
    std::vector<FormulaLineError> errors;
    BatchSummary summary;
};

/// Classifies every parsed entry of a formula file. Entries are independent
/// and run on `workers` threads (bgax/parallel.hpp); the report is the same
/// for every worker count.
BatchReport run_batch(std::string_view file_text, const ClassifyConfig &config = {}, int workers = 0);

/// Stable key order, no timing information.
std::string report_json(const BatchReport &report, const ClassifyConfig &config);
/// One header line, one row per entry, then "#"-prefixed summary lines.
std::string report_tsv(const BatchReport &report);

/// A single classification as a JSON object (same schema as batch entries).
std::string classification_json(const Classification &c);

} // namespace bgax

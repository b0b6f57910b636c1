#pragma once

// Ordered completion engine. Internal to the prover; the public surface is
// bgax/prover.hpp.

#include "bgax/prover.hpp"
#include "disc_tree.hpp"
#include "ordering.hpp"
#include "term_bank.hpp"

#include <chrono>
#include <optional>
#include <queue>
#include <vector>

namespace bgax::detail
{

enum class ActiveState : unsigned char
{
    live,
    superseded, // right side simplified into a newer entry; old overlaps stay valid
    deleted,    // left side simplified; sent back to the passive queue
};

struct Active
{
    int record = 0; // derivation that produced this equation
    TermId lhs = no_term;
    TermId rhs = no_term;
    bool oriented = false;
    ActiveState state = ActiveState::live;
    Fingerprint lhs_fp = 0;
    Fingerprint rhs_fp = 0;
};

// How a term was first found reducible. Set once, never changed, so the
// chain from any term passes through every normal form it ever had.
struct Justification
{
    static constexpr std::int32_t none = -1;
    static constexpr std::int32_t congruence = -2;
    TermId next = no_term;
    std::int32_t how = none; // >= 0: active index * 2 + (1 if applied right to left)
};

struct Record
{
    enum class Kind : unsigned char
    {
        axiom,
        overlap,
        simplify,
    };
    Kind kind = Kind::axiom;
    // overlap: active indices; simplify: `outer` is the source record.
    int outer = -1;
    int inner = -1;
    bool outer_forward = true;
    bool inner_forward = true;
    Position pos;
    TermId raw_lhs = no_term, raw_rhs = no_term;
    TermId final_lhs = no_term, final_rhs = no_term; // normal forms, original naming
    bool swapped = false; // stored as (final_rhs, final_lhs)
};

struct Goal
{
    TermId lhs = no_term;
    TermId rhs = no_term;
    bool joined = false;
    TermId meet = no_term;
};

class Engine
{
public:
    Engine(const TermOrdering &ord, const ProverLimits &limits);

    TermBank &bank() { return bank_; }
    const Ordering &ordering() const { return ordering_; }

    void add_axiom(TermId lhs, TermId rhs);
    void add_goal(TermId lhs, TermId rhs);
    /// Installs an equation directly as active, no overlaps computed.
    void add_rule(TermId lhs, TermId rhs, bool oriented);

    /// Runs until goals are joined (if any), saturation or a limit.
    ProofStatus run();

    TermId normal_form(TermId t);
    /// Overlaps between two installed actives, as raw equation pairs.
    std::vector<std::pair<TermId, TermId>> overlaps_between(int a, int b);

    const std::vector<Active> &actives() const { return actives_; }
    const std::vector<Goal> &goals() const { return goals_; }
    const std::string &stop_reason() const { return stop_reason_; }
    ProverStats stats() const;

    /// Trace of all joined goals; goal letters name the skolem constants.
    std::vector<ProofStep> extract_proof(const std::string &goal_letters);

private:
    struct Passive
    {
        std::uint32_t weight;
        std::uint64_t seq;
        bool requeue; // re-examine `outer` record; otherwise an overlap
        int outer, inner;
        bool outer_forward, inner_forward;
        Position pos;
        TermId lhs, rhs;
    };
    struct PassiveOrder
    {
        bool operator()(const Passive &a, const Passive &b) const
        {
            if (a.weight != b.weight)
                return a.weight > b.weight;
            return a.seq > b.seq;
        }
    };

    struct RootStep
    {
        TermId next;
        std::int32_t how;
    };

    void ensure_memo();
    std::optional<RootStep> rewrite_root(TermId t, std::size_t from_active);
    std::optional<RootStep> try_direction(TermId t, Fingerprint tf, int index, bool forward);
    void push_active(Active a);
    bool reducible_by(TermId t, int index);
    bool reducible_at(TermId t, int index);

    void activate(TermId lhs, TermId rhs, const Record &record, int reuse_record);
    void interreduce(int index);
    void generate_overlaps(int index);
    void overlap_into(int outer, bool outer_forward, int inner, bool inner_forward, bool allow_root,
                      std::vector<Passive> *collect);
    void push_passive(Passive p);
    bool subsumed(TermId lhs, TermId rhs);
    bool ground_joinable(TermId lhs, TermId rhs);
    bool check_goals();
    bool out_of_time();

    TermId side(int index, bool forward, bool left) const;
    std::vector<bool> directions(int index) const;

    TermBank bank_;
    Ordering ordering_;
    ProverLimits limits_;

    std::vector<Active> actives_;
    std::vector<Record> records_;
    std::vector<int> record_active_; // record -> active index (or -1)
    std::vector<Goal> goals_;
    std::priority_queue<Passive, std::vector<Passive>, PassiveOrder> passive_;
    std::uint64_t seq_ = 0;

    std::vector<Justification> just_;
    std::vector<std::uint32_t> checked_upto_;

    ProverStats stats_;
    std::string stop_reason_;
    std::chrono::steady_clock::time_point start_;

    DiscTree index_; // rewriting sides of every active, by direction
    std::vector<DiscTree::Entry> candidates_;

    // Scratch buffers reused across matching and unification calls.
    TermBank::Subst match_subst_;
    std::vector<int> match_bound_;
    TermBank::Subst unify_subst_;
};

} // namespace bgax::detail

#include "engine.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bgax::detail
{

namespace
{

// Inner rules of an overlap are renamed apart by this offset; stored
// equations use at most canonical_letters().size() variables.
constexpr int rename_offset = 32;

// Skolem constants standing for variables in the ground joinability test;
// kept clear of the constants used for goals.
constexpr int case_constant0 = 32;
// Equations with more variables are not tested (75 cases at four).
constexpr int max_case_vars = 4;

} // namespace

Engine::Engine(const TermOrdering &ord, const ProverLimits &limits)
    : bank_(weights_for(ord)), ordering_(bank_, ord), limits_(limits),
      start_(std::chrono::steady_clock::now()), match_subst_(TermBank::empty_subst()),
      unify_subst_(TermBank::empty_subst())
{
}

void Engine::ensure_memo()
{
    if (just_.size() < bank_.node_count())
    {
        std::size_t n = std::max<std::size_t>(bank_.node_count(), just_.size() * 3 / 2);
        just_.resize(n);
        checked_upto_.resize(n, 0);
    }
}

std::vector<bool> Engine::directions(int index) const
{
    if (actives_[static_cast<std::size_t>(index)].oriented)
        return {true};
    return {true, false};
}

TermId Engine::side(int index, bool forward, bool left) const
{
    const Active &a = actives_[static_cast<std::size_t>(index)];
    return (forward == left) ? a.lhs : a.rhs;
}

void Engine::push_active(Active a)
{
    a.lhs_fp = bank_.fingerprint(a.lhs);
    a.rhs_fp = bank_.fingerprint(a.rhs);
    int index = static_cast<int>(actives_.size());
    index_.insert(bank_, a.lhs, {index, true});
    if (!a.oriented)
        index_.insert(bank_, a.rhs, {index, false});
    actives_.push_back(a);
}

std::optional<Engine::RootStep> Engine::try_direction(TermId t, Fingerprint tf, int index, bool forward)
{
    const Active &a = actives_[static_cast<std::size_t>(index)];
    if (!fp::may_match(forward ? a.lhs_fp : a.rhs_fp, tf))
        return std::nullopt;
    TermId pattern = forward ? a.lhs : a.rhs;
    TermId other = forward ? a.rhs : a.lhs;
    // match_subst_ is all-unbound between calls; only touched slots are reset.
    TermBank::Subst &s = match_subst_;
    match_bound_.clear();
    bool matched = bank_.match(pattern, t, s, match_bound_);
    TermId next = matched ? bank_.instantiate(other, s, bank_.e()) : no_term;
    for (int v : match_bound_)
        s[static_cast<std::size_t>(v)] = no_term;
    if (!matched || (!a.oriented && !ordering_.greater(t, next)))
        return std::nullopt;
    return RootStep{next, index * 2 + (forward ? 0 : 1)};
}

std::optional<Engine::RootStep> Engine::rewrite_root(TermId t, std::size_t from_active)
{
    const Fingerprint tf = bank_.fingerprint(t);
    // Terms already checked against most of the actives: scanning the few
    // new ones is cheaper than a retrieval.
    if (actives_.size() - from_active <= 8)
    {
        for (std::size_t i = from_active; i < actives_.size(); ++i)
        {
            if (actives_[i].state != ActiveState::live)
                continue;
            int index = static_cast<int>(i);
            if (auto step = try_direction(t, tf, index, true))
                return step;
            if (!actives_[i].oriented)
                if (auto step = try_direction(t, tf, index, false))
                    return step;
        }
        return std::nullopt;
    }
    candidates_.clear();
    index_.retrieve(bank_, t, candidates_);
    // Lowest active first, left-to-right direction before right-to-left, as
    // a plain scan over the actives would try them.
    std::sort(candidates_.begin(), candidates_.end(), [](const DiscTree::Entry &a, const DiscTree::Entry &b) {
        return a.active != b.active ? a.active < b.active : a.forward > b.forward;
    });
    for (const DiscTree::Entry &c : candidates_)
    {
        if (static_cast<std::size_t>(c.active) < from_active ||
            actives_[static_cast<std::size_t>(c.active)].state != ActiveState::live)
            continue;
        if (auto step = try_direction(t, tf, c.active, c.forward))
            return step;
    }
    return std::nullopt;
}

TermId Engine::normal_form(TermId t)
{
    for (;;)
    {
        ensure_memo();
        const Justification j = just_[t];
        if (j.how != Justification::none)
        {
            t = j.next;
            continue;
        }
        const std::uint32_t from = checked_upto_[t];
        if (from == actives_.size())
            return t;
        if (bank_.is_product(t))
        {
            TermId l = normal_form(bank_.left(t));
            TermId r = normal_form(bank_.right(t));
            if (l != bank_.left(t) || r != bank_.right(t))
            {
                TermId u = bank_.product(l, r);
                ensure_memo();
                just_[t] = {u, Justification::congruence};
                t = u;
                continue;
            }
        }
        if (auto step = rewrite_root(t, from))
        {
            ensure_memo();
            just_[t] = {step->next, step->how};
            t = step->next;
            continue;
        }
        checked_upto_[t] = static_cast<std::uint32_t>(actives_.size());
        return t;
    }
}

bool Engine::reducible_at(TermId t, int index)
{
    const Fingerprint tf = bank_.fingerprint(t);
    if (try_direction(t, tf, index, true))
        return true;
    return !actives_[static_cast<std::size_t>(index)].oriented && try_direction(t, tf, index, false);
}

bool Engine::reducible_by(TermId t, int index)
{
    if (reducible_at(t, index))
        return true;
    if (!bank_.is_product(t))
        return false;
    return reducible_by(bank_.left(t), index) || reducible_by(bank_.right(t), index);
}

void Engine::add_axiom(TermId lhs, TermId rhs)
{
    Record r;
    r.kind = Record::Kind::axiom;
    r.raw_lhs = r.final_lhs = lhs;
    r.raw_rhs = r.final_rhs = rhs;
    records_.push_back(r);
    record_active_.push_back(-1);
    int id = static_cast<int>(records_.size() - 1);
    push_passive(Passive{bank_.size(lhs) + bank_.size(rhs), 0, true, id, -1, true, true, {}, lhs, rhs});
}

void Engine::add_goal(TermId lhs, TermId rhs) { goals_.push_back(Goal{lhs, rhs, false, no_term}); }

void Engine::add_rule(TermId lhs, TermId rhs, bool oriented)
{
    push_active(Active{-1, lhs, rhs, oriented, ActiveState::live});
}

void Engine::push_passive(Passive p)
{
    if (passive_.size() >= limits_.max_passive)
    {
        ++stats_.dropped_by_limits;
        return;
    }
    p.seq = seq_++;
    passive_.push(p);
}

void Engine::activate(TermId lhs, TermId rhs, const Record &record, int reuse_record)
{
    int rec_id = reuse_record;
    if (rec_id < 0)
    {
        records_.push_back(record);
        record_active_.push_back(-1);
        rec_id = static_cast<int>(records_.size() - 1);
    }
    bool oriented = true;
    Comparison c = ordering_.compare(lhs, rhs);
    if (c == Comparison::less)
    {
        std::swap(lhs, rhs);
        Record &r = records_[static_cast<std::size_t>(rec_id)];
        r.swapped = !r.swapped;
    }
    else if (c != Comparison::greater)
    {
        oriented = false;
    }
    push_active(Active{rec_id, lhs, rhs, oriented, ActiveState::live});
    int index = static_cast<int>(actives_.size() - 1);
    record_active_[static_cast<std::size_t>(rec_id)] = index;
    ++stats_.rules_generated;
    interreduce(index);
    generate_overlaps(index);
}

void Engine::interreduce(int index)
{
    const std::size_t count = actives_.size();
    for (std::size_t i = 0; i < count; ++i)
    {
        if (static_cast<int>(i) == index || actives_[i].state != ActiveState::live)
            continue;
        const Active a = actives_[i];
        bool lhs_reducible = reducible_by(a.lhs, index);
        if (lhs_reducible || (!a.oriented && reducible_by(a.rhs, index)))
        {
            actives_[i].state = ActiveState::deleted;
            push_passive(Passive{bank_.size(a.lhs) + bank_.size(a.rhs), 0, true, a.record, -1, true, true,
                                 {}, a.lhs, a.rhs});
            continue;
        }
        if (a.oriented && reducible_by(a.rhs, index))
        {
            TermId rhs = normal_form(a.rhs);
            Record r;
            r.kind = Record::Kind::simplify;
            r.outer = a.record;
            r.raw_lhs = r.final_lhs = a.lhs;
            r.raw_rhs = a.rhs;
            r.final_rhs = rhs;
            records_.push_back(r);
            record_active_.push_back(static_cast<int>(actives_.size()));
            actives_[i].state = ActiveState::superseded;
            push_active(Active{static_cast<int>(records_.size() - 1), a.lhs, rhs, true, ActiveState::live});
        }
    }
}

void Engine::overlap_into(int outer, bool outer_forward, int inner, bool inner_forward, bool allow_root,
                          std::vector<Passive> *collect)
{
    const bool outer_oriented = actives_[static_cast<std::size_t>(outer)].oriented;
    const bool inner_oriented = actives_[static_cast<std::size_t>(inner)].oriented;
    const TermId lo = side(outer, outer_forward, true);
    const TermId ro = side(outer, outer_forward, false);
    const TermId li = bank_.shift_vars(side(inner, inner_forward, true), rename_offset);
    const TermId ri = bank_.shift_vars(side(inner, inner_forward, false), rename_offset);

    std::vector<Position> positions;
    auto collect_positions = [&](auto &&self, TermId t, Position p) -> void {
        if (bank_.is_var(t))
            return;
        positions.push_back(p);
        if (bank_.is_product(t))
        {
            self(self, bank_.left(t), p.child(0));
            self(self, bank_.right(t), p.child(1));
        }
    };
    collect_positions(collect_positions, lo, Position{});

    const Fingerprint li_fp = bank_.fingerprint(li);
    for (const Position &p : positions)
    {
        if (p.root() && (!allow_root || (outer == inner && outer_forward == inner_forward)))
            continue;
        if (!fp::may_unify(li_fp, bank_.fingerprint(bank_.at(lo, p))))
            continue;
        TermBank::Subst &s = unify_subst_;
        std::fill(s.begin(), s.end(), no_term);
        if (!bank_.unify(li, bank_.at(lo, p), s))
            continue;
        ++stats_.critical_pairs;
        TermId slo = bank_.apply(lo, s);
        TermId sro = bank_.apply(ro, s);
        TermId sri = bank_.apply(ri, s);
        if (!outer_oriented && ordering_.greater(sro, slo))
            continue;
        if (!inner_oriented && ordering_.greater(sri, bank_.apply(li, s)))
            continue;
        TermId l = bank_.replace(slo, p, sri);
        Passive cand{0, 0, false, outer, inner, outer_forward, inner_forward, p, l, sro};
        if (collect)
        {
            collect->push_back(cand);
            continue;
        }
        if (bank_.distinct_vars(l, sro) > static_cast<int>(canonical_letters().size()))
        {
            ++stats_.dropped_by_limits;
            continue;
        }
        TermId nl = normal_form(l);
        TermId nr = normal_form(sro);
        if (nl == nr)
            continue;
        if (bank_.size(nl) > limits_.max_term_size || bank_.size(nr) > limits_.max_term_size)
        {
            ++stats_.dropped_by_limits;
            continue;
        }
        cand.weight = bank_.size(nl) + bank_.size(nr);
        push_passive(cand);
    }
}

void Engine::generate_overlaps(int index)
{
    for (std::size_t i = 0; i < actives_.size(); ++i)
    {
        if (actives_[i].state != ActiveState::live)
            continue;
        int other = static_cast<int>(i);
        for (bool dn : directions(index))
            for (bool di : directions(other))
            {
                overlap_into(other, di, index, dn, true, nullptr);
                if (other != index)
                    overlap_into(index, dn, other, di, false, nullptr);
            }
    }
}

std::vector<std::pair<TermId, TermId>> Engine::overlaps_between(int a, int b)
{
    std::vector<Passive> found;
    for (bool da : directions(a))
        for (bool db : directions(b))
        {
            overlap_into(b, db, a, da, true, &found);
            overlap_into(a, da, b, db, false, &found);
        }
    std::vector<std::pair<TermId, TermId>> out;
    for (const Passive &p : found)
        out.emplace_back(p.lhs, p.rhs);
    return out;
}

bool Engine::subsumed(TermId lhs, TermId rhs)
{
    for (;;)
    {
        for (const Active &a : actives_)
        {
            if (a.state != ActiveState::live || a.oriented)
                continue;
            for (bool forward : {true, false})
            {
                TermBank::Subst &s = match_subst_;
                match_bound_.clear();
                TermId u = forward ? a.lhs : a.rhs;
                TermId v = forward ? a.rhs : a.lhs;
                bool hit = bank_.match(u, lhs, s, match_bound_) && bank_.match(v, rhs, s, match_bound_);
                for (int var : match_bound_)
                    s[static_cast<std::size_t>(var)] = no_term;
                if (hit)
                    return true;
            }
        }
        if (!bank_.is_product(lhs) || !bank_.is_product(rhs))
            return false;
        if (bank_.left(lhs) == bank_.left(rhs))
        {
            lhs = bank_.right(lhs);
            rhs = bank_.right(rhs);
        }
        else if (bank_.right(lhs) == bank_.right(rhs))
        {
            lhs = bank_.left(lhs);
            rhs = bank_.left(rhs);
        }
        else
        {
            return false;
        }
    }
}

// An equation is redundant when every ground instance of it is joinable
// already. Instances are split by how the variables compare: for
// each ordered partition of the variables, the variables are replaced by
// fresh constants in that order and both sides normalized. This drops the
// permuted copies of commutativity-like equations, and the cancellation
// rules they induce, that otherwise keep completion from terminating.
bool Engine::ground_joinable(TermId lhs, TermId rhs)
{
    const int k = bank_.distinct_vars(lhs, rhs);
    if (k == 0 || k > max_case_vars)
        return false;
    std::vector<int> rank(static_cast<std::size_t>(k), 0);
    TermBank::Subst s = TermBank::empty_subst();
    for (;;)
    {
        // Only rank vectors using every rank 0..max are distinct cases.
        int top = *std::max_element(rank.begin(), rank.end());
        std::vector<char> used(static_cast<std::size_t>(top) + 1, 0);
        for (int r : rank)
            used[static_cast<std::size_t>(r)] = 1;
        if (std::all_of(used.begin(), used.end(), [](char c) { return c != 0; }))
        {
            for (int v = 0; v < k; ++v)
                s[static_cast<std::size_t>(v)] = bank_.skolem(case_constant0 + rank[static_cast<std::size_t>(v)]);
            TermId l = bank_.instantiate(lhs, s);
            TermId r = bank_.instantiate(rhs, s);
            if (normal_form(l) != normal_form(r))
                return false;
        }
        int i = 0;
        while (i < k && ++rank[static_cast<std::size_t>(i)] == k)
            rank[static_cast<std::size_t>(i++)] = 0;
        if (i == k)
            return true;
    }
}

bool Engine::check_goals()
{
    bool all = true;
    for (Goal &g : goals_)
    {
        if (g.joined)
            continue;
        TermId l = normal_form(g.lhs);
        TermId r = normal_form(g.rhs);
        if (l == r)
        {
            g.joined = true;
            g.meet = l;
        }
        else
        {
            all = false;
        }
    }
    return all;
}

bool Engine::out_of_time()
{
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return elapsed >= limits_.max_seconds;
}

ProofStatus Engine::run()
{
    start_ = std::chrono::steady_clock::now();
    if (!goals_.empty() && check_goals())
    {
        stop_reason_ = "all goals joined";
        return ProofStatus::proved;
    }
    while (!passive_.empty())
    {
        if (stats_.processed >= limits_.max_processed)
        {
            stop_reason_ = "processed-equation limit reached";
            return ProofStatus::resource_out;
        }
        if (out_of_time())
        {
            stop_reason_ = "time limit reached";
            return ProofStatus::resource_out;
        }
        Passive p = passive_.top();
        passive_.pop();
        if (!p.requeue && (actives_[static_cast<std::size_t>(p.outer)].state == ActiveState::deleted ||
                           actives_[static_cast<std::size_t>(p.inner)].state == ActiveState::deleted))
            continue;
        ++stats_.processed;

        TermId nl = normal_form(p.lhs);
        TermId nr = normal_form(p.rhs);
        if (nl == nr)
            continue;
        if (bank_.size(nl) > limits_.max_term_size || bank_.size(nr) > limits_.max_term_size)
        {
            ++stats_.dropped_by_limits;
            continue;
        }
        TermId cl = nl;
        TermId cr = nr;
        bank_.canonical_pair(cl, cr);
        if (subsumed(cl, cr))
            continue;
        if (ground_joinable(cl, cr))
        {
            ++stats_.ground_joinable;
            continue;
        }

        Record rec;
        int reuse = -1;
        if (p.requeue)
        {
            if (nl == p.lhs && nr == p.rhs)
                reuse = p.outer;
            rec.kind = Record::Kind::simplify;
            rec.outer = p.outer;
        }
        else
        {
            rec.kind = Record::Kind::overlap;
            rec.outer = p.outer;
            rec.inner = p.inner;
            rec.outer_forward = p.outer_forward;
            rec.inner_forward = p.inner_forward;
            rec.pos = p.pos;
        }
        rec.raw_lhs = p.lhs;
        rec.raw_rhs = p.rhs;
        rec.final_lhs = nl;
        rec.final_rhs = nr;
        activate(cl, cr, rec, reuse);

        if (!goals_.empty() && check_goals())
        {
            stop_reason_ = "all goals joined";
            return ProofStatus::proved;
        }
    }
    if (stats_.dropped_by_limits > 0)
    {
        stop_reason_ = "passive queue exhausted after dropping equations over the limits";
        return ProofStatus::resource_out;
    }
    stop_reason_ = "saturated";
    return ProofStatus::saturated;
}

ProverStats Engine::stats() const
{
    ProverStats s = stats_;
    s.active = static_cast<std::size_t>(
        std::count_if(actives_.begin(), actives_.end(), [](const Active &a) { return a.state == ActiveState::live; }));
    s.passive = passive_.size();
    s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return s;
}

// --- proof extraction ----------------------------------------------------

std::vector<ProofStep> Engine::extract_proof(const std::string &goal_letters)
{
    // Follows the derivation chain from `cur` to `target`, reporting every
    // root step with its position relative to `pos`.
    using StepFn = std::function<void(Position, int, bool, TermId)>;
    std::function<void(TermId, TermId, Position, const StepFn &)> walk =
        [&](TermId cur, TermId target, Position pos, const StepFn &emit) {
            while (cur != target)
            {
                const Justification j = just_[cur];
                if (j.how == Justification::none)
                    throw std::logic_error("derivation chain does not reach its recorded normal form");
                if (j.how == Justification::congruence)
                {
                    walk(bank_.left(cur), bank_.left(j.next), pos.child(0), emit);
                    walk(bank_.right(cur), bank_.right(j.next), pos.child(1), emit);
                }
                else
                {
                    emit(pos, j.how / 2, j.how % 2 == 0, j.next);
                }
                cur = j.next;
            }
        };

    // Which records the proof depends on.
    std::vector<char> needed(records_.size(), 0);
    std::vector<int> work;
    auto need = [&](int rec) {
        if (rec >= 0 && !needed[static_cast<std::size_t>(rec)])
        {
            needed[static_cast<std::size_t>(rec)] = 1;
            work.push_back(rec);
        }
    };
    StepFn note_rule = [&](Position, int active, bool, TermId) {
        need(actives_[static_cast<std::size_t>(active)].record);
    };
    for (const Goal &g : goals_)
        if (g.joined)
        {
            walk(g.lhs, g.meet, {}, note_rule);
            walk(g.rhs, g.meet, {}, note_rule);
        }
    while (!work.empty())
    {
        int id = work.back();
        work.pop_back();
        const Record &r = records_[static_cast<std::size_t>(id)];
        if (r.kind == Record::Kind::overlap)
        {
            need(actives_[static_cast<std::size_t>(r.outer)].record);
            need(actives_[static_cast<std::size_t>(r.inner)].record);
        }
        else if (r.kind == Record::Kind::simplify)
        {
            need(r.outer);
        }
        walk(r.raw_lhs, r.final_lhs, {}, note_rule);
        walk(r.raw_rhs, r.final_rhs, {}, note_rule);
    }

    std::vector<ProofStep> trace;
    std::vector<int> line_of(records_.size(), 0);
    auto printable = [&](TermId l, TermId r, bool ground) {
        if (ground)
            return Identity{bank_.to_term(l, "", goal_letters), bank_.to_term(r, "", goal_letters)};
        bank_.canonical_pair(l, r);
        return Identity{bank_.to_term(l, canonical_letters(), ""), bank_.to_term(r, canonical_letters(), "")};
    };
    auto rule_line = [&](int active) { return line_of[static_cast<std::size_t>(actives_[static_cast<std::size_t>(active)].record)]; };

    // Emits rewrite lines taking (l, r) to (final_l, final_r); returns the
    // id of the last line (parent if none).
    auto emit_rewrites = [&](int parent, TermId l, TermId r, TermId final_l, TermId final_r, bool ground,
                             bool swap_last) {
        std::vector<ProofStep> lines;
        TermId cur_l = l, cur_r = r;
        for (bool right_side : {false, true})
        {
            StepFn emit = [&](Position pos, int active, bool forward, TermId next) {
                TermId &full = right_side ? cur_r : cur_l;
                full = bank_.replace(full, pos, next);
                ProofStep s;
                s.kind = StepKind::rewrite;
                s.rule = active; // translated to a line id below
                s.rule_forward = forward;
                s.on_right = right_side;
                s.position = pos.str();
                s.equation = printable(cur_l, cur_r, ground);
                lines.push_back(s);
            };
            walk(right_side ? r : l, right_side ? final_r : final_l, {}, emit);
        }
        for (std::size_t i = 0; i < lines.size(); ++i)
        {
            ProofStep &s = lines[i];
            s.id = static_cast<int>(trace.size()) + 1;
            s.parent = i == 0 ? parent : s.id - 1;
            s.rule = rule_line(s.rule);
            if (swap_last && i + 1 == lines.size())
                std::swap(s.equation.lhs, s.equation.rhs);
            trace.push_back(s);
        }
        return lines.empty() ? parent : static_cast<int>(trace.size());
    };

    for (std::size_t id = 0; id < records_.size(); ++id)
    {
        if (!needed[id])
            continue;
        const Record &r = records_[id];
        const bool no_steps = r.raw_lhs == r.final_lhs && r.raw_rhs == r.final_rhs;
        int head;
        if (r.kind == Record::Kind::simplify)
        {
            head = line_of[static_cast<std::size_t>(r.outer)];
        }
        else
        {
            ProofStep s;
            s.id = static_cast<int>(trace.size()) + 1;
            s.equation = printable(r.raw_lhs, r.raw_rhs, false);
            if (r.kind == Record::Kind::overlap)
            {
                s.kind = StepKind::overlap;
                s.parent = rule_line(r.outer);
                s.rule = rule_line(r.inner);
                s.parent_forward = r.outer_forward;
                s.rule_forward = r.inner_forward;
                s.position = r.pos.str();
            }
            if (r.swapped && no_steps)
                std::swap(s.equation.lhs, s.equation.rhs);
            trace.push_back(s);
            head = s.id;
        }
        line_of[id] = emit_rewrites(head, r.raw_lhs, r.raw_rhs, r.final_lhs, r.final_rhs, false, r.swapped);
    }

    for (const Goal &g : goals_)
    {
        if (!g.joined)
            continue;
        ProofStep s;
        s.id = static_cast<int>(trace.size()) + 1;
        s.kind = StepKind::goal;
        s.equation = printable(g.lhs, g.rhs, true);
        trace.push_back(s);
        emit_rewrites(s.id, g.lhs, g.rhs, g.meet, g.meet, true, false);
    }
    return trace;
}

} // namespace bgax::detail

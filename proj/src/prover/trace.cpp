// Proof trace text format and the replay checker. The checker has its own
// term representation and unification so that it shares no code with the
// completion engine it audits.

#include "bgax/prover.hpp"

#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace bgax
{

std::string format_step(const ProofStep &step)
{
    std::ostringstream os;
    os << step.id << ' ';
    auto dir = [](bool forward) { return forward ? '>' : '<'; };
    switch (step.kind)
    {
    case StepKind::axiom:
        os << "axiom";
        break;
    case StepKind::goal:
        os << "goal";
        break;
    case StepKind::overlap:
        os << "overlap " << step.parent << ':' << dir(step.parent_forward) << ' ' << step.rule << ':'
           << dir(step.rule_forward) << " @" << step.position;
        break;
    case StepKind::rewrite:
        os << "rewrite " << step.parent << ' ' << step.rule << ':' << dir(step.rule_forward) << ' '
           << (step.on_right ? 'R' : 'L') << '@' << step.position;
        break;
    }
    os << " : " << print_identity(step.equation);
    return os.str();
}

std::string format_trace(const std::vector<ProofStep> &trace)
{
    std::string out;
    for (const ProofStep &s : trace)
        out += format_step(s) + '\n';
    return out;
}

namespace
{

int parse_int(const std::string &tok, std::size_t offset)
{
    try
    {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size())
            throw parse_error("bad number '" + tok + "'", offset);
        return v;
    }
    catch (const std::logic_error &)
    {
        throw parse_error("bad number '" + tok + "'", offset);
    }
}

// "<n>:<dir>"
std::pair<int, bool> parse_ref(const std::string &tok, std::size_t offset)
{
    std::size_t colon = tok.find(':');
    if (colon == std::string::npos || colon + 2 != tok.size() || (tok.back() != '>' && tok.back() != '<'))
        throw parse_error("bad reference '" + tok + "'", offset);
    return {parse_int(tok.substr(0, colon), offset), tok.back() == '>'};
}

std::string parse_position(const std::string &tok, std::size_t offset)
{
    if (tok.empty() || tok[0] != '@')
        throw parse_error("bad position '" + tok + "'", offset);
    std::string pos = tok.substr(1);
    for (char c : pos)
        if (c != '1' && c != '2')
            throw parse_error("bad position '" + tok + "'", offset);
    return pos;
}

} // namespace

std::vector<ProofStep> parse_trace(std::string_view text)
{
    std::vector<ProofStep> out;
    std::size_t start = 0;
    while (start < text.size())
    {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string line(text.substr(start, end - start));
        std::size_t offset = start;
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;

        std::size_t sep = line.find(" : ");
        if (sep == std::string::npos)
            throw parse_error("missing ' : ' separator", offset);
        std::istringstream head(line.substr(0, sep));
        std::vector<std::string> tok;
        for (std::string t; head >> t;)
            tok.push_back(t);
        if (tok.size() < 2)
            throw parse_error("truncated step", offset);

        ProofStep s;
        s.id = parse_int(tok[0], offset);
        const std::string &kind = tok[1];
        if (kind == "axiom" && tok.size() == 2)
            s.kind = StepKind::axiom;
        else if (kind == "goal" && tok.size() == 2)
            s.kind = StepKind::goal;
        else if (kind == "overlap" && tok.size() == 5)
        {
            s.kind = StepKind::overlap;
            std::tie(s.parent, s.parent_forward) = parse_ref(tok[2], offset);
            std::tie(s.rule, s.rule_forward) = parse_ref(tok[3], offset);
            s.position = parse_position(tok[4], offset);
        }
        else if (kind == "rewrite" && tok.size() == 5)
        {
            s.kind = StepKind::rewrite;
            s.parent = parse_int(tok[2], offset);
            std::tie(s.rule, s.rule_forward) = parse_ref(tok[3], offset);
            if (tok[4].size() < 2 || (tok[4][0] != 'L' && tok[4][0] != 'R'))
                throw parse_error("bad side '" + tok[4] + "'", offset);
            s.on_right = tok[4][0] == 'R';
            s.position = parse_position(tok[4].substr(1), offset);
        }
        else
            throw parse_error("unknown step kind '" + kind + "'", offset);

        try
        {
            s.equation = parse_identity(line.substr(sep + 3));
        }
        catch (const parse_error &err)
        {
            throw parse_error(err.what(), offset + sep + 3 + err.position());
        }
        out.push_back(std::move(s));
    }
    return out;
}

// --- replay ----------------------------------------------------------------

namespace
{

// Checker terms: sym >= 0 variable, -1 product, -2 e, -3 - c rigid constant.
struct CNode;
using CTerm = std::shared_ptr<const CNode>;
struct CNode
{
    int sym;
    CTerm l, r;
};

CTerm leaf(int sym) { return std::make_shared<const CNode>(CNode{sym, nullptr, nullptr}); }
CTerm mul(CTerm a, CTerm b) { return std::make_shared<const CNode>(CNode{-1, std::move(a), std::move(b)}); }

CTerm convert(const Term &t, int offset, bool rigid)
{
    if (t.is_product())
        return mul(convert(t.left(), offset, rigid), convert(t.right(), offset, rigid));
    if (t.is_constant())
        return leaf(-2);
    int letter = t.symbol() - 'a';
    return leaf(rigid ? -3 - letter : offset + letter);
}

bool same(const CTerm &a, const CTerm &b)
{
    if (a == b)
        return true;
    if (a->sym != b->sym)
        return false;
    return a->sym != -1 || (same(a->l, b->l) && same(a->r, b->r));
}

using Bindings = std::map<int, CTerm>;

CTerm walk(CTerm t, const Bindings &b)
{
    while (t->sym >= 0)
    {
        auto it = b.find(t->sym);
        if (it == b.end())
            break;
        t = it->second;
    }
    return t;
}

bool occurs(int v, CTerm t, const Bindings &b)
{
    t = walk(t, b);
    if (t->sym >= 0)
        return t->sym == v;
    if (t->sym == -1)
        return occurs(v, t->l, b) || occurs(v, t->r, b);
    return false;
}

bool unify(CTerm a, CTerm b, Bindings &s)
{
    a = walk(a, s);
    b = walk(b, s);
    if (a->sym >= 0 && b->sym >= 0 && a->sym == b->sym)
        return true;
    if (a->sym >= 0)
    {
        if (occurs(a->sym, b, s))
            return false;
        s[a->sym] = b;
        return true;
    }
    if (b->sym >= 0)
        return unify(b, a, s);
    if (a->sym != b->sym)
        return false;
    return a->sym != -1 || (unify(a->l, b->l, s) && unify(a->r, b->r, s));
}

bool match(const CTerm &pattern, const CTerm &t, Bindings &s)
{
    if (pattern->sym >= 0)
    {
        auto [it, inserted] = s.try_emplace(pattern->sym, t);
        return inserted || same(it->second, t);
    }
    if (pattern->sym != t->sym)
        return false;
    return pattern->sym != -1 || (match(pattern->l, t->l, s) && match(pattern->r, t->r, s));
}

// Unifiers are triangular and are followed through; matchers bind pattern
// variables to subterms of the target, which are taken as they are.
CTerm substitute(const CTerm &t, const Bindings &s, bool unbound_to_e, bool triangular = true)
{
    if (t->sym >= 0)
    {
        auto it = s.find(t->sym);
        if (it == s.end())
            return unbound_to_e ? leaf(-2) : t;
        return triangular ? substitute(it->second, s, unbound_to_e) : it->second;
    }
    if (t->sym == -1)
        return mul(substitute(t->l, s, unbound_to_e, triangular), substitute(t->r, s, unbound_to_e, triangular));
    return t;
}

std::optional<CTerm> subterm(CTerm t, const std::string &pos)
{
    for (char c : pos)
    {
        if (t->sym != -1)
            return std::nullopt;
        t = c == '1' ? t->l : t->r;
    }
    return t;
}

CTerm replace(const CTerm &t, const std::string &pos, std::size_t i, const CTerm &with)
{
    if (i == pos.size())
        return with;
    if (pos[i] == '1')
        return mul(replace(t->l, pos, i + 1, with), t->r);
    return mul(t->l, replace(t->r, pos, i + 1, with));
}

// Variables renumbered by first occurrence across both sides.
std::string shape_key(const CTerm &a, const CTerm &b)
{
    std::map<int, int> names;
    std::string out;
    auto emit = [&](auto &&self, const CTerm &t) -> void {
        if (t->sym == -1)
        {
            out += '(';
            self(self, t->l);
            self(self, t->r);
            out += ')';
        }
        else if (t->sym >= 0)
        {
            auto [it, _] = names.try_emplace(t->sym, static_cast<int>(names.size()));
            out += 'v' + std::to_string(it->second) + ' ';
        }
        else
            out += 'c' + std::to_string(-t->sym) + ' ';
    };
    emit(emit, a);
    out += '=';
    emit(emit, b);
    return out;
}

bool equal_up_to_renaming(const CTerm &a, const CTerm &b, const CTerm &c, const CTerm &d)
{
    std::string key = shape_key(c, d);
    return shape_key(a, b) == key || shape_key(b, a) == key;
}

struct Line
{
    CTerm lhs, rhs;
    bool goal_lineage = false;
    int goal_index = -1;
};

} // namespace

ReplayResult check_trace(const std::vector<ProofStep> &trace, const std::vector<Identity> &axioms,
                         const std::vector<Identity> &goals)
{
    constexpr int apart = 100;
    std::map<int, Line> lines;
    std::set<int> closed;
    ReplayResult result;
    auto fail = [&](const ProofStep &s, std::string msg) {
        result.ok = false;
        result.failed_step = s.id;
        result.message = std::move(msg);
        return result;
    };

    for (const ProofStep &s : trace)
    {
        if (lines.count(s.id))
            return fail(s, "duplicate step id");
        Line line;
        auto lookup = [&](int id) -> const Line * {
            auto it = lines.find(id);
            return it == lines.end() ? nullptr : &it->second;
        };

        switch (s.kind)
        {
        case StepKind::axiom:
        {
            line.lhs = convert(s.equation.lhs, 0, false);
            line.rhs = convert(s.equation.rhs, 0, false);
            bool found = false;
            for (const Identity &ax : axioms)
                found = found || equal_up_to_renaming(convert(ax.lhs, 0, false), convert(ax.rhs, 0, false),
                                                      line.lhs, line.rhs);
            if (!found)
                return fail(s, "axiom line is not one of the given axioms");
            break;
        }
        case StepKind::goal:
        {
            line.lhs = convert(s.equation.lhs, 0, true);
            line.rhs = convert(s.equation.rhs, 0, true);
            line.goal_lineage = true;
            for (std::size_t g = 0; g < goals.size(); ++g)
                if (goals[g] == s.equation)
                    line.goal_index = static_cast<int>(g);
            if (line.goal_index < 0)
                return fail(s, "goal line is not one of the given goals");
            break;
        }
        case StepKind::overlap:
        {
            const Line *outer = lookup(s.parent);
            const Line *inner = lookup(s.rule);
            if (!outer || !inner || outer->goal_lineage || inner->goal_lineage)
                return fail(s, "overlap refers to a missing or goal line");
            // Re-read the inner equation with its variables renamed apart.
            CTerm lo = s.parent_forward ? outer->lhs : outer->rhs;
            CTerm ro = s.parent_forward ? outer->rhs : outer->lhs;
            auto shift = [&](auto &&self, const CTerm &t) -> CTerm {
                if (t->sym >= 0)
                    return leaf(t->sym + apart);
                if (t->sym == -1)
                    return mul(self(self, t->l), self(self, t->r));
                return t;
            };
            CTerm li = shift(shift, s.rule_forward ? inner->lhs : inner->rhs);
            CTerm ri = shift(shift, s.rule_forward ? inner->rhs : inner->lhs);
            auto at = subterm(lo, s.position);
            if (!at || (*at)->sym >= 0)
                return fail(s, "overlap position is not a non-variable position");
            Bindings sigma;
            if (!unify(li, *at, sigma))
                return fail(s, "overlap does not unify");
            CTerm l = substitute(replace(lo, s.position, 0, ri), sigma, false);
            CTerm r = substitute(ro, sigma, false);
            line.lhs = convert(s.equation.lhs, 0, false);
            line.rhs = convert(s.equation.rhs, 0, false);
            if (!equal_up_to_renaming(l, r, line.lhs, line.rhs))
                return fail(s, "overlap result differs from the recorded equation");
            break;
        }
        case StepKind::rewrite:
        {
            const Line *parent = lookup(s.parent);
            const Line *rule = lookup(s.rule);
            if (!parent || !rule || rule->goal_lineage)
                return fail(s, "rewrite refers to a missing line");
            CTerm pattern = s.rule_forward ? rule->lhs : rule->rhs;
            CTerm image = s.rule_forward ? rule->rhs : rule->lhs;
            CTerm target = s.on_right ? parent->rhs : parent->lhs;
            auto at = subterm(target, s.position);
            if (!at)
                return fail(s, "rewrite position does not exist");
            Bindings sigma;
            if (!match(pattern, *at, sigma))
                return fail(s, "rule does not match at the rewrite position");
            CTerm rewritten = replace(target, s.position, 0, substitute(image, sigma, true, false));
            CTerm l = s.on_right ? parent->lhs : rewritten;
            CTerm r = s.on_right ? rewritten : parent->rhs;
            line.goal_lineage = parent->goal_lineage;
            line.goal_index = parent->goal_index;
            line.lhs = convert(s.equation.lhs, 0, line.goal_lineage);
            line.rhs = convert(s.equation.rhs, 0, line.goal_lineage);
            bool ok = line.goal_lineage ? (same(l, line.lhs) && same(r, line.rhs))
                                        : equal_up_to_renaming(l, r, line.lhs, line.rhs);
            if (!ok)
                return fail(s, "rewrite result differs from the recorded equation");
            break;
        }
        }
        if (line.goal_lineage && same(line.lhs, line.rhs))
            closed.insert(line.goal_index);
        lines.emplace(s.id, std::move(line));
    }
    result.goals_closed = closed.size();
    if (closed.size() != goals.size())
    {
        result.ok = false;
        result.message = "not every goal is closed";
    }
    return result;
}

} // namespace bgax

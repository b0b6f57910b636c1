#include "term_bank.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace bgax::detail
{

std::string Position::str() const
{
    std::string out;
    for (int i = 0; i < depth; ++i)
        out.push_back(((bits >> i) & 1U) ? '2' : '1');
    return out;
}

const std::string &canonical_letters()
{
    static const std::string letters = "xyzuvwabcdfghijklmnopqrst";
    return letters;
}

TermBank::TermBank(Weights w) : w_(w)
{
    nodes_.reserve(1 << 16);
    products_.reserve(1 << 16);
    e_ = make_leaf(sym_e);
    vars_.assign(max_vars, no_term);
}

TermId TermBank::make_leaf(int sym)
{
    Node n;
    n.sym = sym;
    n.weight = sym >= 0 ? w_.variable : w_.constant;
    n.size = 1;
    n.max_var = static_cast<std::int8_t>(sym >= 0 ? sym : -1);
    nodes_.push_back(n);
    return static_cast<TermId>(nodes_.size() - 1);
}

TermId TermBank::var(int index)
{
    if (index < 0 || index >= max_vars)
        throw std::out_of_range("variable index out of range");
    TermId &slot = vars_[static_cast<std::size_t>(index)];
    if (slot == no_term)
        slot = make_leaf(index);
    return slot;
}

TermId TermBank::skolem(int k)
{
    while (skolems_.size() <= static_cast<std::size_t>(k))
        skolems_.push_back(make_leaf(skolem_symbol(static_cast<int>(skolems_.size()))));
    return skolems_[static_cast<std::size_t>(k)];
}

TermId TermBank::product(TermId l, TermId r)
{
    std::uint64_t key = (std::uint64_t{l} << 32) | r;
    auto [it, inserted] = products_.try_emplace(key, static_cast<TermId>(nodes_.size()));
    if (!inserted)
        return it->second;
    const Node &a = nodes_[l];
    const Node &b = nodes_[r];
    Node n;
    n.sym = sym_product;
    n.left = l;
    n.right = r;
    n.weight = w_.product + a.weight + b.weight;
    n.size = static_cast<std::uint16_t>(std::min<unsigned>(1U + a.size + b.size, 0xFFFFU));
    n.max_var = std::max(a.max_var, b.max_var);
    nodes_.push_back(n);
    return it->second;
}

TermId TermBank::at(TermId t, Position p) const
{
    for (int i = 0; i < p.depth; ++i)
        t = ((p.bits >> i) & 1U) ? right(t) : left(t);
    return t;
}

Fingerprint TermBank::fingerprint(TermId t) const
{
    auto code = [&](TermId u) -> std::uint8_t {
        int sy = nodes_[u].sym;
        if (sy >= 0)
            return fp::variable;
        if (sy == sym_product)
            return fp::product;
        return static_cast<std::uint8_t>(std::min(4 + (sym_e - sy), 255));
    };
    // Child of a position given the parent's code: absent below constants,
    // below_var below variables.
    auto child_code = [&](std::uint8_t parent_code, TermId child) -> std::uint8_t {
        if (parent_code == fp::product)
            return code(child);
        if (parent_code == fp::variable || parent_code == fp::below_var)
            return fp::below_var;
        return fp::absent;
    };
    std::uint8_t c[7];
    c[0] = code(t);
    TermId l = c[0] == fp::product ? left(t) : no_term;
    TermId r = c[0] == fp::product ? right(t) : no_term;
    c[1] = child_code(c[0], l);
    c[2] = child_code(c[0], r);
    c[3] = child_code(c[1], c[1] == fp::product ? left(l) : no_term);
    c[4] = child_code(c[1], c[1] == fp::product ? right(l) : no_term);
    c[5] = child_code(c[2], c[2] == fp::product ? left(r) : no_term);
    c[6] = child_code(c[2], c[2] == fp::product ? right(r) : no_term);
    Fingerprint f = 0;
    for (int i = 0; i < 7; ++i)
        f |= Fingerprint{c[i]} << (8 * i);
    return f;
}

TermId TermBank::replace(TermId t, Position p, TermId with)
{
    if (p.depth == 0)
        return with;
    std::array<TermId, 64> spine;
    for (int i = 0; i < p.depth; ++i)
    {
        spine[static_cast<std::size_t>(i)] = t;
        t = ((p.bits >> i) & 1U) ? right(t) : left(t);
    }
    TermId cur = with;
    for (int i = p.depth - 1; i >= 0; --i)
    {
        TermId parent = spine[static_cast<std::size_t>(i)];
        cur = ((p.bits >> i) & 1U) ? product(left(parent), cur) : product(cur, right(parent));
    }
    return cur;
}

bool TermBank::occurs(int v, TermId t) const
{
    if (nodes_[t].max_var < v)
        return false;
    if (nodes_[t].sym >= 0)
        return nodes_[t].sym == v;
    if (nodes_[t].sym != sym_product)
        return false;
    return occurs(v, left(t)) || occurs(v, right(t));
}

TermId TermBank::shift_vars(TermId t, int offset)
{
    if (ground(t) || offset == 0)
        return t;
    if (is_var(t))
        return var(sym(t) + offset);
    TermId l = shift_vars(left(t), offset);
    TermId r = shift_vars(right(t), offset);
    return product(l, r);
}

bool TermBank::match(TermId pattern, TermId t, Subst &s, std::vector<int> &bound) const
{
    const Node &p = nodes_[pattern];
    if (p.sym >= 0)
    {
        TermId &slot = s[static_cast<std::size_t>(p.sym)];
        if (slot == no_term)
        {
            slot = t;
            bound.push_back(p.sym);
            return true;
        }
        return slot == t;
    }
    if (p.max_var < 0)
        return pattern == t;
    if (nodes_[t].sym != sym_product)
        return false;
    return match(p.left, left(t), s, bound) && match(p.right, right(t), s, bound);
}

TermId TermBank::deref(TermId t, const Subst &s) const
{
    while (is_var(t))
    {
        TermId b = s[static_cast<std::size_t>(sym(t))];
        if (b == no_term)
            return t;
        t = b;
    }
    return t;
}

bool TermBank::occurs_deref(int v, TermId t, const Subst &s) const
{
    t = deref(t, s);
    if (is_var(t))
        return sym(t) == v;
    if (!is_product(t) || ground(t))
        return false;
    return occurs_deref(v, left(t), s) || occurs_deref(v, right(t), s);
}

bool TermBank::unify(TermId a, TermId b, Subst &s) const
{
    a = deref(a, s);
    b = deref(b, s);
    if (a == b)
        return true;
    if (is_var(a))
    {
        if (occurs_deref(sym(a), b, s))
            return false;
        s[static_cast<std::size_t>(sym(a))] = b;
        return true;
    }
    if (is_var(b))
    {
        if (occurs_deref(sym(b), a, s))
            return false;
        s[static_cast<std::size_t>(sym(b))] = a;
        return true;
    }
    if (!is_product(a) || !is_product(b))
        return false;
    return unify(left(a), left(b), s) && unify(right(a), right(b), s);
}

TermId TermBank::apply(TermId t, const Subst &s, TermId unbound)
{
    if (ground(t))
        return t;
    if (is_var(t))
    {
        TermId b = s[static_cast<std::size_t>(sym(t))];
        if (b == no_term)
            return unbound == no_term ? t : unbound;
        return b == t ? t : apply(b, s, unbound);
    }
    TermId l = apply(left(t), s, unbound);
    TermId r = apply(right(t), s, unbound);
    return product(l, r);
}

TermId TermBank::instantiate(TermId t, const Subst &s, TermId unbound)
{
    if (ground(t))
        return t;
    if (is_var(t))
    {
        TermId b = s[static_cast<std::size_t>(sym(t))];
        if (b == no_term)
            return unbound == no_term ? t : unbound;
        return b;
    }
    TermId l = instantiate(left(t), s, unbound);
    TermId r = instantiate(right(t), s, unbound);
    return product(l, r);
}

int TermBank::canonical_pair(TermId &a, TermId &b)
{
    Subst s = empty_subst();
    int next = 0;
    auto scan = [&](auto &&self, TermId t) -> void {
        if (ground(t))
            return;
        if (is_var(t))
        {
            TermId &slot = s[static_cast<std::size_t>(sym(t))];
            if (slot == no_term)
                slot = var(next++);
            return;
        }
        self(self, left(t));
        self(self, right(t));
    };
    scan(scan, a);
    scan(scan, b);
    // The renaming is a permutation of variables; apply it in one pass.
    auto rename = [&](auto &&self, TermId t) -> TermId {
        if (ground(t))
            return t;
        if (is_var(t))
            return s[static_cast<std::size_t>(sym(t))];
        TermId l = self(self, left(t));
        TermId r = self(self, right(t));
        return product(l, r);
    };
    a = rename(rename, a);
    b = rename(rename, b);
    return next;
}

int TermBank::distinct_vars(TermId a, TermId b) const
{
    std::uint64_t seen = 0;
    auto scan = [&](auto &&self, TermId t) -> void {
        if (ground(t))
            return;
        if (is_var(t))
        {
            seen |= std::uint64_t{1} << sym(t);
            return;
        }
        self(self, left(t));
        self(self, right(t));
    };
    scan(scan, a);
    scan(scan, b);
    return __builtin_popcountll(seen);
}

TermId TermBank::from_term(const Term &t, bool skolemize)
{
    switch (t.kind())
    {
    case Term::Kind::constant:
        return e_;
    case Term::Kind::variable:
        return skolemize ? skolem(t.symbol() - 'a') : var(t.symbol() - 'a');
    case Term::Kind::product:
    {
        TermId l = from_term(t.left(), skolemize);
        TermId r = from_term(t.right(), skolemize);
        return product(l, r);
    }
    }
    return e_;
}

Term TermBank::to_term(TermId t, const std::string &var_names, const std::string &skolem_names) const
{
    const Node &n = nodes_[t];
    if (n.sym == sym_product)
        return Term::product(to_term(n.left, var_names, skolem_names),
                             to_term(n.right, var_names, skolem_names));
    if (n.sym == sym_e)
        return Term::e();
    if (n.sym >= 0)
    {
        if (static_cast<std::size_t>(n.sym) >= var_names.size())
            throw std::out_of_range("no printable name for variable");
        return Term::var(var_names[static_cast<std::size_t>(n.sym)]);
    }
    std::size_t k = static_cast<std::size_t>(skolem_index(n.sym));
    if (k >= skolem_names.size())
        throw std::out_of_range("no printable name for skolem constant");
    return Term::var(skolem_names[k]);
}

} // namespace bgax::detail

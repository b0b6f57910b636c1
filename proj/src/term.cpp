#include "bgax/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace bgax
{

Term Term::e()
{
    static const Term constant{std::make_shared<const Node>(Node{Kind::constant, 'e', 1, {}, {}})};
    return constant;
}

Term::Term() : Term(e()) {}

Term Term::var(char name)
{
    if (name < 'a' || name > 'z' || name == 'e')
        throw std::invalid_argument(std::string("invalid variable name '") + name + "'");
    return Term{std::make_shared<const Node>(Node{Kind::variable, name, 1, {}, {}})};
}

Term Term::product(Term left, Term right)
{
    std::size_t leaves = left.leaf_count() + right.leaf_count();
    return Term{std::make_shared<const Node>(
        Node{Kind::product, 0, leaves, std::move(left), std::move(right)})};
}

const Term &Term::left() const
{
    if (!is_product())
        throw std::logic_error("left() of a leaf term");
    return *node_->left;
}

const Term &Term::right() const
{
    if (!is_product())
        throw std::logic_error("right() of a leaf term");
    return *node_->right;
}

bool operator==(const Term &a, const Term &b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.leaf_count() != b.leaf_count())
        return false;
    if (a.is_leaf())
        return a.symbol() == b.symbol();
    return a.left() == b.left() && a.right() == b.right();
}

namespace
{

// e sorts before every variable.
int symbol_rank(char c) { return c == 'e' ? 0 : c; }

void collect_leaves(const Term &t, std::vector<int> &out)
{
    if (t.is_leaf())
        out.push_back(symbol_rank(t.symbol()));
    else
    {
        collect_leaves(t.left(), out);
        collect_leaves(t.right(), out);
    }
}

void collect_shape(const Term &t, std::string &out)
{
    if (t.is_leaf())
        out.push_back('1');
    else
    {
        out.push_back('0');
        collect_shape(t.left(), out);
        collect_shape(t.right(), out);
    }
}

} // namespace

std::strong_ordering operator<=>(const Term &a, const Term &b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    std::vector<int> la, lb;
    collect_leaves(a, la);
    collect_leaves(b, lb);
    if (auto c = la <=> lb; c != 0)
        return c;
    std::string sa, sb;
    collect_shape(a, sa);
    collect_shape(b, sb);
    return sa <=> sb;
}

// --- parsing -------------------------------------------------------------

namespace
{

class TermParser
{
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse_all()
    {
        skip_space();
        if (at_end())
            throw parse_error("empty term", pos_);
        Term t = parse_dot_chain();
        skip_space();
        if (!at_end())
        {
            if (text_[pos_] == ')')
                throw parse_error("unbalanced ')'", pos_);
            throw parse_error("unexpected character", pos_);
        }
        return t;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space()
    {
        while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                             text_[pos_] == '\n'))
            ++pos_;
    }

    // Length of a dot token at the current position, 0 if none.
    std::size_t dot_length() const
    {
        std::string_view rest = text_.substr(pos_);
        if (rest.starts_with("*"))
            return 1;
        if (rest.starts_with("\xC2\xB7"))
            return 2;
        if (rest.starts_with("\\cdot"))
            return 5;
        return 0;
    }

    bool at_atom_start() const
    {
        if (at_end())
            return false;
        char c = text_[pos_];
        return c == '(' || (c >= 'a' && c <= 'z');
    }

    Term parse_dot_chain()
    {
        Term t = parse_juxtaposition();
        for (;;)
        {
            skip_space();
            std::size_t len = dot_length();
            if (len == 0)
                return t;
            pos_ += len;
            skip_space();
            if (!at_atom_start())
                throw parse_error(at_end() ? "missing operand after '·'" : "expected operand after '·'",
                                  pos_);
            t = Term::product(std::move(t), parse_juxtaposition());
        }
    }

    Term parse_juxtaposition()
    {
        Term t = parse_atom();
        for (;;)
        {
            skip_space();
            if (!at_atom_start())
                return t;
            t = Term::product(std::move(t), parse_atom());
        }
    }

    Term parse_atom()
    {
        skip_space();
        if (at_end())
            throw parse_error("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(')
        {
            std::size_t open = pos_++;
            skip_space();
            if (!at_end() && text_[pos_] == ')')
                throw parse_error("empty parentheses", pos_);
            if (at_end())
                throw parse_error("unbalanced '('", open);
            Term inner = parse_dot_chain();
            skip_space();
            if (at_end() || text_[pos_] != ')')
                throw parse_error("unbalanced '('", open);
            ++pos_;
            return inner;
        }
        if (c == 'e')
        {
            ++pos_;
            return Term::e();
        }
        if (c >= 'a' && c <= 'z')
        {
            ++pos_;
            return Term::var(c);
        }
        if (c == ')')
            throw parse_error("unbalanced ')'", pos_);
        if (dot_length() > 0)
            throw parse_error("operator without left operand", pos_);
        throw parse_error("illegal character", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Term parse_term(std::string_view input) { return TermParser(input).parse_all(); }

Identity parse_identity(std::string_view input)
{
    std::size_t eq = input.find('=');
    if (eq == std::string_view::npos)
        throw parse_error("missing '='", input.size());
    if (std::size_t again = input.find('=', eq + 1); again != std::string_view::npos)
        throw parse_error("more than one '='", again);

    auto side = [&](std::string_view text, std::size_t offset) {
        try
        {
            return parse_term(text);
        }
        catch (const parse_error &err)
        {
            std::string msg = err.what();
            msg = msg.substr(0, msg.rfind(" at offset"));
            throw parse_error(msg, offset + err.position());
        }
    };
    Term lhs = side(input.substr(0, eq), 0);
    Term rhs = side(input.substr(eq + 1), eq + 1);
    return Identity{std::move(lhs), std::move(rhs)};
}

// --- printing ------------------------------------------------------------

namespace
{

void print_dot_level(const Term &t, const char *dot, std::string &out);

void print_factor(const Term &t, const char *dot, std::string &out)
{
    if (t.is_leaf())
    {
        out.push_back(t.symbol());
    }
    else if (t.right().is_leaf())
    {
        print_factor(t.left(), dot, out);
        out.push_back(t.right().symbol());
    }
    else
    {
        out.push_back('(');
        print_dot_level(t, dot, out);
        out.push_back(')');
    }
}

void print_dot_level(const Term &t, const char *dot, std::string &out)
{
    if (t.is_leaf() || t.right().is_leaf())
    {
        print_factor(t, dot, out);
        return;
    }
    print_dot_level(t.left(), dot, out);
    out += dot;
    print_factor(t.right(), dot, out);
}

const char *dot_token(PrintStyle style) { return style == PrintStyle::ascii ? "*" : "\xC2\xB7"; }

} // namespace

std::string print_term(const Term &t, PrintStyle style)
{
    std::string out;
    print_dot_level(t, dot_token(style), out);
    return out;
}

std::string print_identity(const Identity &id, PrintStyle style)
{
    return print_term(id.lhs, style) + " = " + print_term(id.rhs, style);
}

// --- structural queries --------------------------------------------------

namespace
{

void count_into(const Term &t, Occurrences &out)
{
    if (t.is_leaf())
        ++out[t.symbol()];
    else
    {
        count_into(t.left(), out);
        count_into(t.right(), out);
    }
}

void collect_variables(const Term &t, std::set<char> &out)
{
    if (t.is_variable())
        out.insert(t.symbol());
    else if (t.is_product())
    {
        collect_variables(t.left(), out);
        collect_variables(t.right(), out);
    }
}

} // namespace

Occurrences occurrences(const Term &t)
{
    Occurrences out;
    count_into(t, out);
    return out;
}

Occurrences occurrences(const Identity &id)
{
    Occurrences out;
    count_into(id.lhs, out);
    count_into(id.rhs, out);
    return out;
}

Term mirror(const Term &t)
{
    if (t.is_leaf())
        return t;
    return Term::product(mirror(t.right()), mirror(t.left()));
}

std::vector<char> variables(const Term &t)
{
    std::set<char> vars;
    collect_variables(t, vars);
    return {vars.begin(), vars.end()};
}

std::vector<char> variables(const Identity &id)
{
    std::set<char> vars;
    collect_variables(id.lhs, vars);
    collect_variables(id.rhs, vars);
    return {vars.begin(), vars.end()};
}

std::string leaf_sequence(const Term &t)
{
    std::string out;
    out.reserve(t.leaf_count());
    auto walk = [&](auto &&self, const Term &u) -> void {
        if (u.is_leaf())
            out.push_back(u.symbol());
        else
        {
            self(self, u.left());
            self(self, u.right());
        }
    };
    walk(walk, t);
    return out;
}

Term rename(const Term &t, const std::map<char, char> &mapping)
{
    if (t.is_product())
        return Term::product(rename(t.left(), mapping), rename(t.right(), mapping));
    auto it = mapping.find(t.symbol());
    if (it == mapping.end() || it->second == t.symbol())
        return t;
    return it->second == 'e' ? Term::e() : Term::var(it->second);
}

// --- formula files -------------------------------------------------------

namespace
{

std::string trim(std::string_view s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_tag(std::string tag)
{
    static const std::pair<std::string_view, std::string_view> arrows[] = {
        {"\xE2\x86\x91", "u"}, // ↑
        {"\xE2\x86\x93", "d"}, // ↓
        {"{\\uparrow}", "u"},
        {"{\\downarrow}", "d"},
    };
    for (const auto &[from, to] : arrows)
        for (std::size_t p; (p = tag.find(from)) != std::string::npos;)
            tag.replace(p, from.size(), to);
    return tag;
}

bool valid_tag(std::string_view tag)
{
    return !tag.empty() && std::all_of(tag.begin(), tag.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

} // namespace

FormulaFile parse_formula_file(std::string_view text)
{
    FormulaFile out;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size())
    {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty())
        {
            if (end == text.size())
                break;
            continue;
        }

        std::string tag;
        std::string body = line;
        if (std::size_t colon = line.find(':'); colon != std::string::npos)
        {
            tag = normalize_tag(trim(std::string_view(line).substr(0, colon)));
            body = line.substr(colon + 1);
            if (!valid_tag(tag))
            {
                out.errors.push_back({line_no, "invalid tag '" + tag + "'"});
                continue;
            }
        }
        else
        {
            tag = "line" + std::to_string(line_no);
        }

        if (!seen.insert(tag).second)
        {
            out.errors.push_back({line_no, "duplicate tag '" + tag + "'"});
            continue;
        }
        try
        {
            out.formulas.push_back({tag, parse_identity(body)});
        }
        catch (const parse_error &err)
        {
            out.errors.push_back({line_no, err.what()});
        }
        if (end == text.size())
            break;
    }
    return out;
}

std::string format_formula_file(const std::vector<TaggedFormula> &formulas, PrintStyle style)
{
    std::ostringstream os;
    for (const auto &f : formulas)
        os << f.tag << ": " << print_identity(f.identity, style) << '\n';
    return os.str();
}

} // namespace bgax

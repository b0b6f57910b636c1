#include "bgax/models.hpp"
#include "bgax/parallel.hpp"

#include <nlohmann/json.hpp>
#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bgax
{

CayleyTable::CayleyTable(int n_, int e_index_, std::vector<int> cells_)
    : n(n_), e_index(e_index_), cells(std::move(cells_))
{
    validate();
}

void CayleyTable::validate() const
{
    if (n < 1)
        throw std::invalid_argument("table size must be positive");
    if (e_index < 0 || e_index >= n)
        throw std::invalid_argument("e_index out of range");
    if (cells.size() != static_cast<std::size_t>(n * n))
        throw std::invalid_argument("table must have n*n cells");
    for (int v : cells)
        if (v < 0 || v >= n)
            throw std::invalid_argument("table entry out of range");
}

CayleyTable xor_table() { return CayleyTable(2, 0, {0, 1, 1, 0}); }

CayleyTable klein_four_table()
{
    std::vector<int> cells(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            cells[static_cast<std::size_t>(a * 4 + b)] = a ^ b;
    return CayleyTable(4, 0, std::move(cells));
}

CayleyTable cyclic_table(int n)
{
    std::vector<int> cells(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            cells[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
    return CayleyTable(n, 0, std::move(cells));
}

int evaluate(const Term &t, const CayleyTable &table, const std::map<char, int> &assignment)
{
    switch (t.kind())
    {
    case Term::Kind::constant:
        return table.e_index;
    case Term::Kind::variable:
    {
        auto it = assignment.find(t.symbol());
        if (it == assignment.end())
            throw std::out_of_range(std::string("unassigned variable '") + t.symbol() + "'");
        return it->second;
    }
    case Term::Kind::product:
        return table.at(evaluate(t.left(), table, assignment), evaluate(t.right(), table, assignment));
    }
    return 0;
}

namespace
{

// Postfix program for one side of an identity. Operands: variable slots
// 0..k-1, the constant, and products of the two topmost stack values.
struct Program
{
    enum Op : int
    {
        op_mul = -1,
        op_e = -2,
    };
    std::vector<int> ops; // >= 0: variable slot
};

void compile_into(const Term &t, const std::vector<char> &vars, Program &p)
{
    if (t.is_constant())
        p.ops.push_back(Program::op_e);
    else if (t.is_variable())
        p.ops.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), t.symbol()) - vars.begin()));
    else
    {
        compile_into(t.left(), vars, p);
        compile_into(t.right(), vars, p);
        p.ops.push_back(Program::op_mul);
    }
}

struct CompiledIdentity
{
    std::size_t arity = 0;
    Program lhs, rhs;
};

CompiledIdentity compile(const Identity &id)
{
    CompiledIdentity c;
    std::vector<char> vars = variables(id);
    c.arity = vars.size();
    compile_into(id.lhs, vars, c.lhs);
    compile_into(id.rhs, vars, c.rhs);
    return c;
}

constexpr int unknown = -1;

// Evaluates under a possibly partial table. Returns the value or unknown;
// blocked_cell is the first undecided cell reached with both operands known.
int run_partial(const Program &p, const int *args, const std::vector<int> &cells, int n, int e,
                int &blocked_cell)
{
    std::array<int, 64> stack;
    std::size_t top = 0;
    blocked_cell = -1;
    for (int op : p.ops)
    {
        if (op >= 0)
            stack[top++] = args[op];
        else if (op == Program::op_e)
            stack[top++] = e;
        else
        {
            int b = stack[--top];
            int a = stack[top - 1];
            if (a == unknown || b == unknown)
                stack[top - 1] = unknown;
            else
            {
                int cell = a * n + b;
                int v = cells[static_cast<std::size_t>(cell)];
                if (v == unknown && blocked_cell < 0)
                    blocked_cell = cell;
                stack[top - 1] = v;
            }
        }
    }
    return stack[0];
}

int run_total(const Program &p, const int *args, const std::vector<int> &cells, int n, int e)
{
    std::array<int, 64> stack;
    std::size_t top = 0;
    for (int op : p.ops)
    {
        if (op >= 0)
            stack[top++] = args[op];
        else if (op == Program::op_e)
            stack[top++] = e;
        else
        {
            int b = stack[--top];
            stack[top - 1] = cells[static_cast<std::size_t>(stack[top - 1] * n + b)];
        }
    }
    return stack[0];
}

// Visits every assignment of arity slots into 0..n-1 in lexicographic order.
// Stops early when fn returns false; returns false in that case.
template <typename Fn>
bool for_each_assignment(std::size_t arity, int n, Fn &&fn)
{
    std::vector<int> args(std::max<std::size_t>(arity, 1), 0);
    for (;;)
    {
        if (!fn(args.data()))
            return false;
        std::size_t i = arity;
        while (i > 0)
        {
            --i;
            if (++args[i] < n)
                break;
            args[i] = 0;
            if (i == 0)
                return true;
        }
        if (arity == 0)
            return true;
    }
}

void check_program_depth(const Term &t)
{
    // Stack depth is bounded by the leaf count of the side.
    if (t.leaf_count() > 64)
        throw std::invalid_argument("term too large for model evaluation (more than 64 leaves)");
}

class Search
{
public:
    Search(const ModelQuery &q) : query_(q), n_(q.size)
    {
        for (const Identity &id : q.identities)
        {
            check_program_depth(id.lhs);
            check_program_depth(id.rhs);
            CompiledIdentity c = compile(id);
            for_each_assignment(c.arity, n_, [&](const int *args) {
                instances_.push_back({identities_.size(), std::vector<int>(args, args + c.arity)});
                return true;
            });
            identities_.push_back(std::move(c));
        }
        cells_.assign(static_cast<std::size_t>(n_ * n_), unknown);
        domain_.assign(cells_.size(), (1U << n_) - 1U);
    }

    ModelSearchResult run()
    {
        if (propagate())
            descend();
        return std::move(result_);
    }

private:
    struct Instance
    {
        std::size_t identity;
        std::vector<int> args;
    };

    bool done() const
    {
        if (query_.mode == ModelMode::find_one)
            return result_.count >= 1;
        if (query_.mode == ModelMode::find_all)
            return result_.count >= query_.limit;
        return false;
    }

    // Trail entries restore one cell's value and its candidate mask.
    struct TrailEntry
    {
        int cell;
        int value;
        std::uint32_t domain;
    };

    void save(int cell)
    {
        trail_.push_back({cell, cells_[static_cast<std::size_t>(cell)], domain_[static_cast<std::size_t>(cell)]});
    }

    void assign(int cell, int value)
    {
        save(cell);
        cells_[static_cast<std::size_t>(cell)] = value;
        domain_[static_cast<std::size_t>(cell)] = 1U << value;
    }

    // Removes candidates outside `keep`. False when nothing is left; a single
    // survivor is assigned.
    bool restrict(int cell, std::uint32_t keep, bool &changed)
    {
        std::uint32_t d = domain_[static_cast<std::size_t>(cell)];
        if ((d & keep) == d)
            return true;
        save(cell);
        d &= keep;
        domain_[static_cast<std::size_t>(cell)] = d;
        changed = true;
        if (d == 0)
            return false;
        if ((d & (d - 1)) == 0)
            cells_[static_cast<std::size_t>(cell)] = std::countr_zero(d);
        return true;
    }

    void undo_to(std::size_t mark)
    {
        while (trail_.size() > mark)
        {
            const TrailEntry &t = trail_.back();
            cells_[static_cast<std::size_t>(t.cell)] = t.value;
            domain_[static_cast<std::size_t>(t.cell)] = t.domain;
            trail_.pop_back();
        }
    }

    // Propagation to a fixpoint; false on conflict. For each ground instance
    // that is not yet decided, the first undecided cell its evaluation runs
    // into is tried with every remaining candidate. A candidate that makes
    // both sides known and unequal is ruled out; if one survives, the cell is
    // forced.
    bool propagate()
    {
        const int e = 0;
        bool changed = true;
        while (changed)
        {
            changed = false;
            for (const Instance &inst : instances_)
            {
                const CompiledIdentity &c = identities_[inst.identity];
                int lblock = -1;
                int rblock = -1;
                int l = run_partial(c.lhs, inst.args.data(), cells_, n_, e, lblock);
                int r = run_partial(c.rhs, inst.args.data(), cells_, n_, e, rblock);
                if (l != unknown && r != unknown)
                {
                    if (l != r)
                        return false;
                    continue;
                }
                int cell = lblock >= 0 ? lblock : rblock;
                if (cell < 0)
                    continue; // both sides blocked on cells whose operands are unknown
                std::size_t slot = static_cast<std::size_t>(cell);
                std::uint32_t keep = 0;
                for (std::uint32_t d = domain_[slot]; d != 0; d &= d - 1)
                {
                    int v = std::countr_zero(d);
                    cells_[slot] = v;
                    int b1 = -1;
                    int b2 = -1;
                    int lv = run_partial(c.lhs, inst.args.data(), cells_, n_, e, b1);
                    int rv = run_partial(c.rhs, inst.args.data(), cells_, n_, e, b2);
                    if (lv == unknown || rv == unknown || lv == rv)
                        keep |= 1U << v;
                }
                cells_[slot] = unknown;
                if (!restrict(cell, keep, changed))
                    return false;
            }
        }
        return true;
    }

    // Fewest remaining candidates first, row-major among equals. The
    // least-number bound is only sound when cells are filled in order, so that
    // mode keeps plain row-major selection.
    int next_open_cell() const
    {
        if (query_.least_number)
        {
            for (int cell = 0; cell < n_ * n_; ++cell)
                if (cells_[static_cast<std::size_t>(cell)] == unknown)
                    return cell;
            return -1;
        }
        int best = -1;
        int best_size = 64;
        for (int cell = 0; cell < n_ * n_; ++cell)
        {
            std::size_t slot = static_cast<std::size_t>(cell);
            if (cells_[slot] != unknown)
                continue;
            int size = std::popcount(domain_[slot]);
            if (size < best_size)
            {
                best = cell;
                best_size = size;
            }
        }
        return best;
    }

    void descend()
    {
        int cell = next_open_cell();
        if (cell < 0)
        {
            ++result_.count;
            if (query_.mode != ModelMode::count)
                result_.models.push_back(CayleyTable(n_, 0, cells_));
            return;
        }
        ++result_.nodes;
        int bound = n_ - 1;
        if (query_.least_number)
        {
            int mx = std::max(cell / n_, cell % n_);
            for (int v : cells_)
                mx = std::max(mx, v);
            bound = std::min(bound, mx + 1);
        }
        std::uint32_t candidates = domain_[static_cast<std::size_t>(cell)];
        for (int v = 0; v <= bound && !done(); ++v)
        {
            if (!(candidates >> v & 1U))
                continue;
            std::size_t mark = trail_.size();
            assign(cell, v);
            if (propagate())
                descend();
            undo_to(mark);
        }
    }

    const ModelQuery &query_;
    int n_;
    std::vector<CompiledIdentity> identities_;
    std::vector<Instance> instances_;
    std::vector<int> cells_;
    std::vector<std::uint32_t> domain_;
    std::vector<TrailEntry> trail_;
    ModelSearchResult result_;
};

} // namespace

bool satisfies(const CayleyTable &table, const Identity &id)
{
    CompiledIdentity c = compile(id);
    check_program_depth(id.lhs);
    check_program_depth(id.rhs);
    return for_each_assignment(c.arity, table.n, [&](const int *args) {
        return run_total(c.lhs, args, table.cells, table.n, table.e_index) ==
               run_total(c.rhs, args, table.cells, table.n, table.e_index);
    });
}

ModelSearchResult find_models(const ModelQuery &query)
{
    if (query.size < 1 || query.size > max_model_size)
        throw std::invalid_argument("model size must be in 1.." + std::to_string(max_model_size));
    if (query.mode == ModelMode::find_all && query.limit < 1)
        throw std::invalid_argument("find-all limit must be at least 1");
    return Search(query).run();
}

namespace
{

CayleyTable table_from_index(std::uint64_t index, int n)
{
    std::vector<int> cells(static_cast<std::size_t>(n * n));
    for (std::size_t i = cells.size(); i-- > 0;)
    {
        cells[i] = static_cast<int>(index % static_cast<std::uint64_t>(n));
        index /= static_cast<std::uint64_t>(n);
    }
    return CayleyTable(n, 0, std::move(cells));
}

bool satisfies_all(const CayleyTable &table, const std::vector<Identity> &identities)
{
    return std::all_of(identities.begin(), identities.end(),
                       [&](const Identity &id) { return satisfies(table, id); });
}

} // namespace

std::vector<CayleyTable> enumerate_models_naive(const std::vector<Identity> &identities, int n, int workers)
{
    if (n < 1 || n > max_naive_model_size)
        throw std::invalid_argument("naive enumeration size must be in 1.." + std::to_string(max_naive_model_size));
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i)
        total *= static_cast<std::uint64_t>(n);

    std::vector<CayleyTable> out;
    const int threads = resolve_workers(workers);
    if (threads == 1)
    {
        for (std::uint64_t k = 0; k < total; ++k)
        {
            CayleyTable t = table_from_index(k, n);
            if (satisfies_all(t, identities))
                out.push_back(std::move(t));
        }
        return out;
    }

    // Each thread keeps its hits with their indices; merging by index gives
    // the same order as the serial loop.
    std::vector<std::vector<std::pair<std::uint64_t, CayleyTable>>> found(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        auto &mine = found[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k)
        {
            CayleyTable t = table_from_index(static_cast<std::uint64_t>(k), n);
            if (satisfies_all(t, identities))
                mine.emplace_back(static_cast<std::uint64_t>(k), std::move(t));
        }
    }
    std::vector<std::pair<std::uint64_t, CayleyTable>> merged;
    for (auto &part : found)
        for (auto &hit : part)
            merged.push_back(std::move(hit));
    std::sort(merged.begin(), merged.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    for (auto &hit : merged)
        out.push_back(std::move(hit.second));
    return out;
}

bool is_boolean_group(const CayleyTable &table)
{
    const int n = table.n;
    const int e = table.e_index;
    for (int a = 0; a < n; ++a)
    {
        if (table.at(e, a) != a || table.at(a, e) != a || table.at(a, a) != e)
            return false;
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table.at(table.at(a, b), c) != table.at(a, table.at(b, c)))
                    return false;
    }
    return true;
}

TrivialityVerdict is_trivializing(const Identity &id, int up_to_n)
{
    if (up_to_n > max_model_size)
        throw std::invalid_argument("triviality bound must be at most " + std::to_string(max_model_size));
    TrivialityVerdict verdict;
    verdict.bound = up_to_n;
    for (int n = 2; n <= up_to_n; ++n)
    {
        ModelQuery q{{id}, n, ModelMode::find_one, 1, false};
        ModelSearchResult r = find_models(q);
        if (!r.models.empty())
        {
            verdict.witness = r.models.front();
            verdict.bound = n;
            return verdict;
        }
    }
    verdict.trivializing = true;
    return verdict;
}

std::string table_to_json(const CayleyTable &table)
{
    nlohmann::ordered_json j;
    j["n"] = table.n;
    j["e"] = table.e_index;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int a = 0; a < table.n; ++a)
    {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int b = 0; b < table.n; ++b)
            row.push_back(table.at(a, b));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

std::string table_to_grid(const CayleyTable &table)
{
    std::ostringstream os;
    os << " \xC2\xB7 |";
    for (int b = 0; b < table.n; ++b)
        os << ' ' << b;
    os << "\n---+" << std::string(static_cast<std::size_t>(2 * table.n), '-') << '\n';
    for (int a = 0; a < table.n; ++a)
    {
        os << std::setw(2) << a << " |";
        for (int b = 0; b < table.n; ++b)
            os << ' ' << table.at(a, b);
        os << '\n';
    }
    return os.str();
}

} // namespace bgax

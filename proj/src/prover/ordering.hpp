#pragma once

#include "bgax/prover.hpp"
#include "term_bank.hpp"

namespace bgax::detail
{

class Ordering
{
public:
    Ordering(const TermBank &bank, const TermOrdering &params) : bank_(bank), params_(params) {}

    bool greater(TermId s, TermId t) const;
    Comparison compare(TermId s, TermId t) const;

    const TermOrdering &params() const { return params_; }

private:
    bool kbo_greater(TermId s, TermId t) const;
    bool lpo_greater(TermId s, TermId t) const;
    bool lpo_greater_or_equal(TermId s, TermId t) const { return s == t || lpo_greater(s, t); }
    bool variable_condition(TermId s, TermId t) const;
    static int precedence(int sym);

    const TermBank &bank_;
    TermOrdering params_;
};

Weights weights_for(const TermOrdering &ord);

} // namespace bgax::detail

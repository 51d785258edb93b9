#pragma once

#include <map>
#include <string>

#include "machines.hpp"

namespace cfa {

// Each transformation carries an exact count contract, stated here in terms
// of a(x)=accepting, r(x)=rejecting, g(x)=a(x)-r(x) of the operand(s).

// Reroutes early halts through carry lanes so every path halts at REND;
// accepting count preserved exactly, improper paths eliminated.
Nfa complete_paths(const Nfa& m);

struct NormalFormResult {
    Nfa machine;
    int degree;  // c: every non-halting (state, symbol) pair has exactly c successors
};

// accepting preserved; accepting+rejecting = c^{|x|+2}; improper = 0;
// sc <= 3*sc(m) + c + 2.
NormalFormResult branching_normal_form(const Nfa& m);

// a'=r, r'=a, improper preserved.
Nfa flip(const Nfa& m);

// a'=a+r, r'=r, so gap' = a; improper preserved.
Nfa split_rejecting(const Nfa& m);

// All three counts add.
Nfa disjoint_sum(const Nfa& m, const Nfa& n);

// a' = a(m)*a(n); all other proper outcomes reject.
Nfa sync_product(const Nfa& m, const Nfa& n);

// gap' = gap(m)^2 (a' = a^2+r^2, r' = 2ar); sc <= sc(m)^2 + 2.
Nfa square_gap(const Nfa& m);

// With mix = a(m)r(n)+r(m)a(n): a' = a(m)a(n)+mix, r' = r(m)r(n)+mix.
Nfa meet_cequal(const Nfa& m, const Nfa& n);

// a' = r+1, r' = a, so gap' = 1 - gap.
Nfa complement_gapwise(const Nfa& m);

// gap' = a(A) - a(B).
Nfa gap_of_difference(const Nfa& a, const Nfa& b);

// gap' = gap(m) + gap(n).
Nfa gap_sum(const Nfa& m, const Nfa& n);

// gap' = gap(m) * gap(n).
Nfa gap_product(const Nfa& m, const Nfa& n);

// For t emitting the signed binary code of f(x): accepting = f(x) (f >= 0).
Nfa counter_from_transducer(const Dft& t);

// gap = f(x) for signed f; empty output gives gap 0.
Nfa gap_from_transducer(const Dft& t);

// accepting(N, x) = accepting(m, h(x)); h maps each letter of N's alphabet
// to a string over m's alphabet.
Nfa hom_image(const Nfa& m, const std::map<char, std::string>& h);

// For non-erasing prefix-free h: accepting(N, h(x)) = accepting(m, x);
// strings outside the image of h drive N improper.
Nfa hom_inverse(const Nfa& m, const std::map<char, std::string>& h);

// Uniform 1/c per choice; halting states absorbing;
// p_acc(x) = accepting(m, x) / c^{|x|+2} exactly.
Pfa nfa_to_pfa(const NormalFormResult& nf);

// Balanced two-sided bridge: p_acc(x) = 1/2 + gap(m, x) / (2 c^{|x|+2}),
// so p_acc = 1/2 exactly when the gap vanishes.
Pfa gap_balanced_pfa(const Nfa& m);

}  // namespace cfa

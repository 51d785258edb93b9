#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bigint.hpp"

namespace cfa {

using State = int;

// Endmarkers and the empty move are reserved non-printable symbols so they can
// never collide with the single visible ASCII characters of an alphabet.
constexpr char LEND = '\x01';
constexpr char REND = '\x02';
constexpr char EPS = '\x03';

struct Nfa {
    int num_states = 0;
    std::string alphabet;  // declared order
    State start = 0;
    std::set<State> accept;
    std::set<State> reject;
    // Keyed by (non-halting state, symbol in alphabet + {LEND, REND});
    // values sorted and duplicate-free.
    std::map<std::pair<State, char>, std::vector<State>> delta;
    bool deterministic = false;  // true for machines declared as dfa

    bool halting(State q) const { return accept.count(q) || reject.count(q); }
    const std::vector<State>* successors(State q, char sym) const;
    void add_edge(State q, char sym, State to);
};

struct Dft {
    int num_states = 0;
    std::string alphabet;
    std::string output_alphabet;  // derived from outputs at validation
    State start = 0;
    // (state, symbol) -> (state, emitted string); deterministic, no halting states.
    std::map<std::pair<State, char>, std::pair<State, std::string>> delta;
};

struct Pfa {
    int num_states = 0;
    std::string alphabet;
    std::vector<Rat> initial;  // row vector, sums to exactly 1
    std::map<char, std::vector<std::vector<Rat>>> matrices;  // per symbol incl. endmarkers
    std::set<State> accept;
    std::set<State> reject;
};

struct Dpda {
    int num_states = 0;
    std::string alphabet;
    std::string stack_alphabet;
    char bottom = 0;
    unsigned push_size = 0;
    State start = 0;
    std::set<State> accept;
    std::set<State> reject;
    // (non-halting state, symbol in alphabet + {LEND, REND, EPS}, top) -> (state, push string).
    std::map<std::tuple<State, char, char>, std::pair<State, std::string>> delta;

    bool halting(State q) const { return accept.count(q) || reject.count(q); }
};

enum class MachineKind { Nfa, Dfa, Dft, Pfa, Dpda };

struct Machine {
    std::string name = "m";
    MachineKind kind = MachineKind::Nfa;
    std::variant<Nfa, Dft, Pfa, Dpda> body;

    Nfa& nfa() { return std::get<Nfa>(body); }
    const Nfa& nfa() const { return std::get<Nfa>(body); }
    Dft& dft() { return std::get<Dft>(body); }
    const Dft& dft() const { return std::get<Dft>(body); }
    Pfa& pfa() { return std::get<Pfa>(body); }
    const Pfa& pfa() const { return std::get<Pfa>(body); }
    Dpda& dpda() { return std::get<Dpda>(body); }
    const Dpda& dpda() const { return std::get<Dpda>(body); }
};

// The arbitrary-precision tally of a nondeterministic run.
struct PathCounts {
    Int accepting = 0;
    Int rejecting = 0;
    Int improper = 0;

    Int total() const { return accepting + rejecting + improper; }
    bool operator==(const PathCounts&) const = default;
};

// Checks every structural invariant of the machine's kind; throws
// InvariantViolation with a diagnostic on the first failure.
void validate(const Machine& m);

// Line-oriented interchange format. parse_machine throws ParseError with a
// line number on syntax errors and InvariantViolation on semantic ones.
Machine parse_machine(const std::string& text);
std::string serialize_machine(const Machine& m);

Machine wrap_nfa(Nfa n, std::string name = "m", bool deterministic = false);

Int state_complexity(const Machine& m);
// |Q| * sum_{j=0}^{e} |Gamma|^j for pushdown machines.
Int stack_state_complexity(const Dpda& d);

const char* kind_name(MachineKind k);

}  // namespace cfa

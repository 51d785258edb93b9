#include "cfa.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "analysis.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "harness.hpp"
#include "machines.hpp"
#include "semantics.hpp"

using namespace cfa;

struct cfa_machine {
    Machine m;
};

namespace {

thread_local std::string last_error;

int status_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedCode: return CFA_MALFORMED_CODE;
        case ErrorCode::RangeError: return CFA_RANGE_ERROR;
        case ErrorCode::LengthError: return CFA_LENGTH_ERROR;
        case ErrorCode::ParseError: return CFA_PARSE_ERROR;
        case ErrorCode::InvariantViolation: return CFA_INVARIANT_VIOLATION;
        case ErrorCode::AlphabetError: return CFA_ALPHABET_ERROR;
        case ErrorCode::AlphabetMismatch: return CFA_ALPHABET_MISMATCH;
        case ErrorCode::CapExceeded: return CFA_CAP_EXCEEDED;
        case ErrorCode::StackError: return CFA_STACK_ERROR;
        case ErrorCode::OutputAlphabetError: return CFA_OUTPUT_ALPHABET_ERROR;
        case ErrorCode::HomomorphismError: return CFA_HOMOMORPHISM_ERROR;
        case ErrorCode::NormalFormError: return CFA_NORMAL_FORM_ERROR;
        case ErrorCode::NotInSpan: return CFA_NOT_IN_SPAN;
        case ErrorCode::ScaleError: return CFA_SCALE_ERROR;
        case ErrorCode::DivisionByZero: return CFA_DIVISION_BY_ZERO;
        case ErrorCode::UnknownFamily: return CFA_UNKNOWN_FAMILY;
        case ErrorCode::NoMachine: return CFA_NO_MACHINE;
        case ErrorCode::UnknownSuite: return CFA_UNKNOWN_SUITE;
        case ErrorCode::IoError: return CFA_IO_ERROR;
    }
    return CFA_INTERNAL_ERROR;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        return CFA_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return CFA_INTERNAL_ERROR;
    }
}

char* dup(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string need(const char* s, const char* what) {
    if (!s) fail(ErrorCode::RangeError, std::string("null ") + what);
    return s;
}

const Nfa& as_nfa(const cfa_machine* m) {
    if (!m || (m->m.kind != MachineKind::Nfa && m->m.kind != MachineKind::Dfa))
        fail(ErrorCode::InvariantViolation, "operation needs a finite-automaton machine");
    return m->m.nfa();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

std::map<char, std::string> parse_mapping(const std::string& spec) {
    std::map<char, std::string> h;
    std::istringstream in(spec);
    for (std::string item; std::getline(in, item, ',');) {
        if (item.size() < 2 || item[1] != '=')
            fail(ErrorCode::ParseError, "mapping entries look like 'a=011', got '" + item + "'");
        if (h.count(item[0])) fail(ErrorCode::ParseError, std::string("duplicate mapping for '") + item[0] + "'");
        h[item[0]] = item.substr(2);
    }
    if (h.empty()) fail(ErrorCode::ParseError, "empty homomorphism mapping");
    return h;
}

std::string rat_str(const Rat& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

}  // namespace

extern "C" {

const char* cfa_last_error(void) { return last_error.c_str(); }

void cfa_string_free(char* s) { std::free(s); }

int cfa_machine_parse(const char* text, cfa_machine** out) {
    return guarded([&] { *out = new cfa_machine{parse_machine(need(text, "machine text"))}; });
}

int cfa_machine_read_file(const char* path, cfa_machine** out) {
    return guarded([&] {
        std::ifstream in(need(path, "path"));
        if (!in) fail(ErrorCode::IoError, "cannot open '" + std::string(path) + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        *out = new cfa_machine{parse_machine(buf.str())};
    });
}

int cfa_machine_write_file(const cfa_machine* m, const char* path) {
    return guarded([&] {
        std::ofstream out(need(path, "path"));
        if (!out) fail(ErrorCode::IoError, "cannot write '" + std::string(path) + "'");
        out << serialize_machine(m->m);
    });
}

int cfa_machine_serialize(const cfa_machine* m, char** text) {
    return guarded([&] { *text = dup(serialize_machine(m->m)); });
}

const char* cfa_machine_kind(const cfa_machine* m) { return m ? kind_name(m->m.kind) : "null"; }

int cfa_machine_state_complexity(const cfa_machine* m, char** out) {
    return guarded([&] { *out = dup(state_complexity(m->m).str()); });
}

void cfa_machine_free(cfa_machine* m) { delete m; }

int cfa_count_paths(const cfa_machine* m, const char* input, char** accepting, char** rejecting, char** improper) {
    return guarded([&] {
        PathCounts c = count_paths(as_nfa(m), need(input, "input"));
        *accepting = dup(c.accepting.str());
        *rejecting = dup(c.rejecting.str());
        *improper = dup(c.improper.str());
    });
}

int cfa_gap_value(const cfa_machine* m, const char* input, char** gap) {
    return guarded([&] { *gap = dup(gap_value(as_nfa(m), need(input, "input")).str()); });
}

int cfa_pfa_probabilities(const cfa_machine* m, const char* input, char** accept, char** reject, char** other) {
    return guarded([&] {
        if (!m || m->m.kind != MachineKind::Pfa) fail(ErrorCode::InvariantViolation, "not a probabilistic machine");
        PfaResult r = pfa_probabilities(m->m.pfa(), need(input, "input"));
        *accept = dup(rat_str(r.accept));
        *reject = dup(rat_str(r.reject));
        *other = dup(rat_str(r.other));
    });
}

int cfa_transduce(const cfa_machine* m, const char* input, char** output) {
    return guarded([&] {
        if (!m || m->m.kind != MachineKind::Dft) fail(ErrorCode::InvariantViolation, "not a transducer");
        auto r = transduce(m->m.dft(), need(input, "input"));
        if (!r) fail(ErrorCode::RangeError, "transducer undefined on this input");
        *output = dup(*r);
    });
}

int cfa_dpda_run(const cfa_machine* m, const char* input, char** verdict, uint64_t* steps, int* turns) {
    return guarded([&] {
        if (!m || m->m.kind != MachineKind::Dpda) fail(ErrorCode::InvariantViolation, "not a pushdown machine");
        DpdaOutcome out = dpda_run(m->m.dpda(), need(input, "input"));
        const char* names[] = {"accept", "reject", "improper", "cap-exceeded"};
        *verdict = dup(names[(int)out.verdict]);
        *steps = out.steps;
        *turns = out.turns;
    });
}

int cfa_stack_state_complexity(const cfa_machine* m, char** out) {
    return guarded([&] {
        if (!m || m->m.kind != MachineKind::Dpda) fail(ErrorCode::InvariantViolation, "not a pushdown machine");
        *out = dup(stack_state_complexity(m->m.dpda()).str());
    });
}

int cfa_construct(const char* op_, const cfa_machine* a, const cfa_machine* b, cfa_machine** out) {
    return guarded([&] {
        std::string op = need(op_, "op");
        auto unary = [&] { return as_nfa(a); };
        auto binary = [&] {
            if (!b) fail(ErrorCode::RangeError, "'" + op + "' needs two machines");
            return std::pair<const Nfa&, const Nfa&>(as_nfa(a), as_nfa(b));
        };
        Machine result;
        if (op == "complete") result = wrap_nfa(complete_paths(unary()), "complete");
        else if (op == "bnf") result = wrap_nfa(branching_normal_form(unary()).machine, "bnf");
        else if (op == "flip") result = wrap_nfa(flip(unary()), "flip");
        else if (op == "split") result = wrap_nfa(split_rejecting(unary()), "split");
        else if (op == "square") result = wrap_nfa(square_gap(unary()), "square");
        else if (op == "complement") result = wrap_nfa(complement_gapwise(unary()), "complement");
        else if (op == "sum") { auto [x, y] = binary(); result = wrap_nfa(disjoint_sum(x, y), "sum"); }
        else if (op == "sync") { auto [x, y] = binary(); result = wrap_nfa(sync_product(x, y), "sync"); }
        else if (op == "meet") { auto [x, y] = binary(); result = wrap_nfa(meet_cequal(x, y), "meet"); }
        else if (op == "gapdiff") { auto [x, y] = binary(); result = wrap_nfa(gap_of_difference(x, y), "gapdiff"); }
        else if (op == "gapsum") { auto [x, y] = binary(); result = wrap_nfa(gap_sum(x, y), "gapsum"); }
        else if (op == "gapprod") { auto [x, y] = binary(); result = wrap_nfa(gap_product(x, y), "gapprod"); }
        else if (op == "counter" || op == "gapcounter") {
            if (!a || a->m.kind != MachineKind::Dft) fail(ErrorCode::InvariantViolation, "operand must be a transducer");
            result = wrap_nfa(op == "counter" ? counter_from_transducer(a->m.dft()) : gap_from_transducer(a->m.dft()),
                              op);
        } else if (op == "pfa") {
            result.name = "pfa";
            result.kind = MachineKind::Pfa;
            result.body = nfa_to_pfa(branching_normal_form(unary()));
        } else {
            fail(ErrorCode::RangeError, "unknown construction '" + op + "'");
        }
        validate(result);
        *out = new cfa_machine{std::move(result)};
    });
}

int cfa_construct_hom(const char* op_, const cfa_machine* m, const char* mapping, cfa_machine** out) {
    return guarded([&] {
        std::string op = need(op_, "op");
        auto h = parse_mapping(need(mapping, "mapping"));
        Nfa result;
        if (op == "homimage") result = hom_image(as_nfa(m), h);
        else if (op == "hominverse") result = hom_inverse(as_nfa(m), h);
        else fail(ErrorCode::RangeError, "unknown homomorphism construction '" + op + "'");
        Machine wrapped = wrap_nfa(std::move(result), op);
        validate(wrapped);
        *out = new cfa_machine{std::move(wrapped)};
    });
}

int cfa_family_names(char** csv) {
    return guarded([&] {
        std::string s;
        for (const auto& n : family_names()) s += (s.empty() ? "" : ",") + n;
        *csv = dup(s);
    });
}

int cfa_family_classify(const char* name, int n, const char* input, char** verdict) {
    return guarded([&] {
        const PromiseFamily& fam = family(need(name, "family name"));
        *verdict = dup(verdict_name(fam.classify(n, need(input, "input"))));
    });
}

int cfa_family_enumerate(const char* name, int n, int max_len, char** lines) {
    return guarded([&] {
        const PromiseFamily& fam = family(need(name, "family name"));
        std::string s;
        for (const auto& x : fam.enumerate(n, max_len)) s += x + "\n";
        *lines = dup(s);
    });
}

int cfa_family_machine(const char* name, int n, cfa_machine** out) {
    return guarded([&] { *out = new cfa_machine{build_machine(need(name, "family name"), n)}; });
}

int cfa_analyze_span(const cfa_machine* pfa, const char* prefix_lines, char** span_lines) {
    return guarded([&] {
        if (!pfa || pfa->m.kind != MachineKind::Pfa) fail(ErrorCode::InvariantViolation, "not a probabilistic machine");
        std::string s;
        for (const auto& w : spanning_prefix_set(pfa->m.pfa(), split_lines(need(prefix_lines, "prefixes"))))
            s += w + "\n";
        *span_lines = dup(s);
    });
}

int cfa_analyze_cequal_extension(const cfa_machine* pfa, const char* family, int n, int m, int l, const char* z,
                                 char** report, int* violations) {
    return guarded([&] {
        if (!pfa || pfa->m.kind != MachineKind::Pfa) fail(ErrorCode::InvariantViolation, "not a probabilistic machine");
        ExtensionReport r = check_cequal_extension(pfa->m.pfa(), need(family, "family"), n, m, l, need(z, "z"));
        std::ostringstream out;
        out << "base " << r.base.size() << " span " << r.span.size() << " candidates " << r.candidates_checked
            << " violations " << r.violations.size() << "\n";
        for (const auto& v : r.violations) out << "violation y='" << v.y << "' x='" << v.x << "'\n";
        *report = dup(out.str());
        *violations = (int)r.violations.size();
    });
}

int cfa_analyze_sign_pattern(const char* family, int n, const char* prefix_lines, const char* y, char** pattern) {
    return guarded([&] {
        auto p = sign_pattern(need(family, "family"), n, split_lines(need(prefix_lines, "prefixes")),
                              need(y, "suffix"));
        *pattern = dup(p ? *p : std::string("undefined"));
    });
}

int cfa_funop(const char* op, const char* a, const char* b, char** result) {
    return guarded([&] {
        Int va(need(a, "operand"));
        std::optional<Int> vb;
        if (b) vb = Int(std::string(b));
        *result = dup(funop_apply(need(op, "op"), va, vb).str());
    });
}

int cfa_check_class_condition(const char* condition, const cfa_machine* m, const char* family, int n, int max_len,
                              char** report, int* all_pass) {
    return guarded([&] {
        SuiteReport r = check_class_condition(class_cond_from_name(need(condition, "condition")), as_nfa(m),
                                              need(family, "family"), n, max_len);
        *report = dup(r.render());
        *all_pass = r.all_pass();
    });
}

int cfa_run_suite(const char* suite, uint64_t seed, const char* scale, int negative_control, char** report,
                  int* all_pass) {
    return guarded([&] {
        SuiteReport r = run_suite(need(suite, "suite"), seed, need(scale, "scale"), negative_control != 0);
        *report = dup(r.render());
        *all_pass = r.all_pass();
    });
}

}  // extern "C"

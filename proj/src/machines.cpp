#include "machines.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace cfa {

const std::vector<State>* Nfa::successors(State q, char sym) const {
    auto it = delta.find({q, sym});
    return it == delta.end() ? nullptr : &it->second;
}

void Nfa::add_edge(State q, char sym, State to) {
    auto& v = delta[{q, sym}];
    auto it = std::lower_bound(v.begin(), v.end(), to);
    if (it == v.end() || *it != to) v.insert(it, to);
}

const char* kind_name(MachineKind k) {
    switch (k) {
        case MachineKind::Nfa: return "nfa";
        case MachineKind::Dfa: return "dfa";
        case MachineKind::Dft: return "dft";
        case MachineKind::Pfa: return "pfa";
        case MachineKind::Dpda: return "dpda";
    }
    return "?";
}

Machine wrap_nfa(Nfa n, std::string name, bool deterministic) {
    Machine m;
    m.name = std::move(name);
    m.kind = deterministic ? MachineKind::Dfa : MachineKind::Nfa;
    n.deterministic = deterministic;
    m.body = std::move(n);
    validate(m);
    return m;
}

namespace {

void check_state(State q, int n, const std::string& role) {
    if (q < 0 || q >= n) fail(ErrorCode::InvariantViolation, role + " state " + std::to_string(q) + " out of range");
}

bool is_input_symbol(const std::string& alphabet, char c) {
    return alphabet.find(c) != std::string::npos;
}

void validate_nfa(const Nfa& a, bool deterministic) {
    if (a.num_states <= 0) fail(ErrorCode::InvariantViolation, "machine needs at least one state");
    check_state(a.start, a.num_states, "start");
    for (State q : a.accept) check_state(q, a.num_states, "accept");
    for (State q : a.reject) check_state(q, a.num_states, "reject");
    for (State q : a.accept)
        if (a.reject.count(q))
            fail(ErrorCode::InvariantViolation, "state " + std::to_string(q) + " is both accepting and rejecting");
    for (const auto& [key, targets] : a.delta) {
        auto [q, sym] = key;
        check_state(q, a.num_states, "transition source");
        if (a.halting(q))
            fail(ErrorCode::InvariantViolation, "transition out of halting state " + std::to_string(q));
        if (sym != LEND && sym != REND && !is_input_symbol(a.alphabet, sym))
            fail(ErrorCode::InvariantViolation, std::string("transition on undeclared symbol '") + sym + "'");
        if (targets.empty()) fail(ErrorCode::InvariantViolation, "empty successor list stored explicitly");
        for (State to : targets) check_state(to, a.num_states, "transition target");
        if (!std::is_sorted(targets.begin(), targets.end()) ||
            std::adjacent_find(targets.begin(), targets.end()) != targets.end())
            fail(ErrorCode::InvariantViolation, "successor lists must be sorted sets");
        if (deterministic && targets.size() != 1)
            fail(ErrorCode::InvariantViolation, "dfa transition with " + std::to_string(targets.size()) + " targets");
    }
}

void validate_dft(const Dft& t) {
    if (t.num_states <= 0) fail(ErrorCode::InvariantViolation, "transducer needs at least one state");
    check_state(t.start, t.num_states, "start");
    for (const auto& [key, val] : t.delta) {
        auto [q, sym] = key;
        check_state(q, t.num_states, "transition source");
        if (sym != LEND && sym != REND && !is_input_symbol(t.alphabet, sym))
            fail(ErrorCode::InvariantViolation, std::string("transition on undeclared symbol '") + sym + "'");
        check_state(val.first, t.num_states, "transition target");
    }
}

void validate_pfa(const Pfa& p) {
    if (p.num_states <= 0) fail(ErrorCode::InvariantViolation, "pfa needs at least one state");
    for (State q : p.accept) check_state(q, p.num_states, "accept");
    for (State q : p.reject) check_state(q, p.num_states, "reject");
    for (State q : p.accept)
        if (p.reject.count(q))
            fail(ErrorCode::InvariantViolation, "state " + std::to_string(q) + " is both accepting and rejecting");
    if ((int)p.initial.size() != p.num_states)
        fail(ErrorCode::InvariantViolation, "initial vector dimension mismatch");
    Rat mass = 0;
    for (const Rat& r : p.initial) {
        if (r < 0) fail(ErrorCode::InvariantViolation, "negative initial probability");
        mass += r;
    }
    if (mass != 1) fail(ErrorCode::InvariantViolation, "initial vector does not sum to 1");
    std::string required = p.alphabet;
    required.push_back(LEND);
    required.push_back(REND);
    for (char sym : required) {
        auto it = p.matrices.find(sym);
        if (it == p.matrices.end())
            fail(ErrorCode::InvariantViolation, std::string("missing matrix for symbol '") + sym + "'");
        const auto& mat = it->second;
        if ((int)mat.size() != p.num_states) fail(ErrorCode::InvariantViolation, "matrix row count mismatch");
        for (const auto& row : mat) {
            if ((int)row.size() != p.num_states) fail(ErrorCode::InvariantViolation, "matrix column count mismatch");
            Rat sum = 0;
            for (const Rat& r : row) {
                if (r < 0) fail(ErrorCode::InvariantViolation, "negative matrix entry");
                sum += r;
            }
            if (sum != 1) fail(ErrorCode::InvariantViolation, "matrix row does not sum to 1");
        }
    }
}

void validate_dpda(const Dpda& d) {
    if (d.num_states <= 0) fail(ErrorCode::InvariantViolation, "dpda needs at least one state");
    check_state(d.start, d.num_states, "start");
    for (State q : d.accept) check_state(q, d.num_states, "accept");
    for (State q : d.reject) check_state(q, d.num_states, "reject");
    for (State q : d.accept)
        if (d.reject.count(q))
            fail(ErrorCode::InvariantViolation, "state " + std::to_string(q) + " is both accepting and rejecting");
    if (d.stack_alphabet.find(d.bottom) == std::string::npos)
        fail(ErrorCode::InvariantViolation, "bottom marker not in stack alphabet");
    for (const auto& [key, val] : d.delta) {
        auto [q, sym, top] = key;
        check_state(q, d.num_states, "transition source");
        if (d.halting(q)) fail(ErrorCode::InvariantViolation, "transition out of halting state");
        if (sym != LEND && sym != REND && sym != EPS && !is_input_symbol(d.alphabet, sym))
            fail(ErrorCode::InvariantViolation, std::string("transition on undeclared symbol '") + sym + "'");
        if (d.stack_alphabet.find(top) == std::string::npos)
            fail(ErrorCode::InvariantViolation, "popped symbol not in stack alphabet");
        if (val.second.size() > d.push_size)
            fail(ErrorCode::InvariantViolation, "push string longer than push size");
        for (char c : val.second)
            if (d.stack_alphabet.find(c) == std::string::npos)
                fail(ErrorCode::InvariantViolation, "pushed symbol not in stack alphabet");
        // Bottom-marker discipline: never popped away, never re-created.
        if (top == d.bottom) {
            if (val.second.empty() || val.second.back() != d.bottom)
                fail(ErrorCode::InvariantViolation, "transition on bottom marker must push a string ending in it");
            if (val.second.find(d.bottom) != val.second.size() - 1)
                fail(ErrorCode::InvariantViolation, "bottom marker may appear only at the stack bottom");
        } else if (val.second.find(d.bottom) != std::string::npos) {
            fail(ErrorCode::InvariantViolation, "bottom marker may appear only at the stack bottom");
        }
        // Determinism: a real-symbol move and a lambda-move may not coexist.
        if (sym != EPS) {
            if (d.delta.count({q, EPS, top}))
                fail(ErrorCode::InvariantViolation, "state has both a symbol move and a lambda move on the same top");
        }
    }
}

}  // namespace

void validate(const Machine& m) {
    switch (m.kind) {
        case MachineKind::Nfa: validate_nfa(m.nfa(), false); break;
        case MachineKind::Dfa: validate_nfa(m.nfa(), true); break;
        case MachineKind::Dft: validate_dft(m.dft()); break;
        case MachineKind::Pfa: validate_pfa(m.pfa()); break;
        case MachineKind::Dpda: validate_dpda(m.dpda()); break;
    }
}

Int state_complexity(const Machine& m) {
    switch (m.kind) {
        case MachineKind::Nfa:
        case MachineKind::Dfa: return m.nfa().num_states;
        case MachineKind::Dft: return m.dft().num_states;
        case MachineKind::Pfa: return m.pfa().num_states;
        case MachineKind::Dpda: return m.dpda().num_states;
    }
    return 0;
}

Int stack_state_complexity(const Dpda& d) {
    Int strings = 0;
    Int pw = 1;
    for (unsigned j = 0; j <= d.push_size; ++j) {
        strings += pw;
        pw *= (Int)d.stack_alphabet.size();
    }
    return Int(d.num_states) * strings;
}

// ---------------------------------------------------------------------------
// Interchange format

namespace {

struct Parser {
    std::istringstream in;
    int lineno = 0;

    [[noreturn]] void err(const std::string& what) const {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
    }

    std::vector<std::string> tokens(const std::string& line) const {
        std::vector<std::string> out;
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) {
            if (t[0] == '#' && t != "#") break;  // '#' alone is a legal symbol token
            out.push_back(t);
        }
        return out;
    }

    char symbol(const std::string& tok, bool allow_eps) const {
        if (tok == "LEND") return LEND;
        if (tok == "REND") return REND;
        if (tok == "EPS") {
            if (!allow_eps) err("EPS not allowed here");
            return EPS;
        }
        if (tok.size() != 1 || tok[0] < '!' || tok[0] > '~') err("symbol must be one visible ASCII character: '" + tok + "'");
        return tok[0];
    }

    int state(const std::string& tok, int num_states) const {
        try {
            std::size_t used = 0;
            int q = std::stoi(tok, &used);
            if (used != tok.size() || q < 0 || q >= num_states) err("state id out of range: " + tok);
            return q;
        } catch (const Error&) {
            throw;
        } catch (...) {
            err("not a state id: " + tok);
        }
    }

    Rat rational(const std::string& tok) const {
        auto slash = tok.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(tok));
            Int num(tok.substr(0, slash));
            Int den(tok.substr(slash + 1));
            if (den == 0) err("zero denominator");
            return Rat(num, den);
        } catch (const Error&) {
            throw;
        } catch (...) {
            err("not a rational: " + tok);
        }
    }
};

std::string symbol_token(char c) {
    if (c == LEND) return "LEND";
    if (c == REND) return "REND";
    if (c == EPS) return "EPS";
    return std::string(1, c);
}

}  // namespace

Machine parse_machine(const std::string& text) {
    Parser p;
    p.in.str(text);

    Machine m;
    bool in_block = false, done = false, have_kind = false;
    int num_states = -1;
    std::string alphabet, stack_alphabet;
    char bottom = 0;
    unsigned push_size = 0;
    State start = 0;
    std::set<State> accept, reject;
    // Raw transition lines, resolved once the kind and state count are known.
    std::vector<std::pair<int, std::vector<std::string>>> trans_lines, init_lines, matrix_lines;

    std::string line;
    while (std::getline(p.in, line)) {
        ++p.lineno;
        auto toks = p.tokens(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (!in_block) {
            if (head != "machine" || toks.size() != 2) p.err("expected 'machine <name>'");
            m.name = toks[1];
            in_block = true;
            continue;
        }
        if (head == "end") {
            if (toks.size() != 1) p.err("unexpected tokens after 'end'");
            done = true;
            break;
        } else if (head == "kind") {
            if (toks.size() != 2) p.err("expected 'kind <k>'");
            if (toks[1] == "nfa") m.kind = MachineKind::Nfa;
            else if (toks[1] == "dfa") m.kind = MachineKind::Dfa;
            else if (toks[1] == "dft") m.kind = MachineKind::Dft;
            else if (toks[1] == "pfa") m.kind = MachineKind::Pfa;
            else if (toks[1] == "dpda") m.kind = MachineKind::Dpda;
            else p.err("unknown kind '" + toks[1] + "'");
            have_kind = true;
        } else if (head == "alphabet") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                char c = p.symbol(toks[i], false);
                if (c == LEND || c == REND) p.err("endmarkers are implicit, not alphabet members");
                if (alphabet.find(c) != std::string::npos) p.err("duplicate alphabet symbol");
                alphabet.push_back(c);
            }
        } else if (head == "stack") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                char c = p.symbol(toks[i], false);
                if (stack_alphabet.find(c) != std::string::npos) p.err("duplicate stack symbol");
                stack_alphabet.push_back(c);
            }
        } else if (head == "bottom") {
            if (toks.size() != 2) p.err("expected 'bottom <sym>'");
            bottom = p.symbol(toks[1], false);
        } else if (head == "pushsize") {
            if (toks.size() != 2) p.err("expected 'pushsize <e>'");
            push_size = (unsigned)std::stoul(toks[1]);
        } else if (head == "states") {
            if (toks.size() != 2) p.err("expected 'states <N>'");
            num_states = std::stoi(toks[1]);
            if (num_states <= 0) p.err("state count must be positive");
        } else if (head == "start") {
            if (toks.size() != 2 || num_states < 0) p.err("'start' needs a prior 'states' line");
            start = p.state(toks[1], num_states);
        } else if (head == "accept") {
            if (num_states < 0) p.err("'accept' needs a prior 'states' line");
            for (std::size_t i = 1; i < toks.size(); ++i) accept.insert(p.state(toks[i], num_states));
        } else if (head == "reject") {
            if (num_states < 0) p.err("'reject' needs a prior 'states' line");
            for (std::size_t i = 1; i < toks.size(); ++i) reject.insert(p.state(toks[i], num_states));
        } else if (head == "trans") {
            trans_lines.emplace_back(p.lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else if (head == "init") {
            init_lines.emplace_back(p.lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else if (head == "matrix") {
            matrix_lines.emplace_back(p.lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else {
            p.err("unknown directive '" + head + "'");
        }
    }
    if (!in_block) fail(ErrorCode::ParseError, "no 'machine' block found");
    if (!done) fail(ErrorCode::ParseError, "missing 'end'");
    if (!have_kind) fail(ErrorCode::ParseError, "missing 'kind'");
    if (num_states < 0) fail(ErrorCode::ParseError, "missing 'states'");

    auto resolve = [&](int lineno) { p.lineno = lineno; };

    if (m.kind == MachineKind::Nfa || m.kind == MachineKind::Dfa) {
        Nfa a;
        a.num_states = num_states;
        a.alphabet = alphabet;
        a.start = start;
        a.accept = accept;
        a.reject = reject;
        a.deterministic = (m.kind == MachineKind::Dfa);
        for (auto& [ln, t] : trans_lines) {
            resolve(ln);
            if (t.size() < 3) p.err("trans needs '<q> <sym> <q'>...'");
            State q = p.state(t[0], num_states);
            char sym = p.symbol(t[1], false);
            for (std::size_t i = 2; i < t.size(); ++i) a.add_edge(q, sym, p.state(t[i], num_states));
        }
        m.body = std::move(a);
    } else if (m.kind == MachineKind::Dft) {
        Dft t;
        t.num_states = num_states;
        t.alphabet = alphabet;
        t.start = start;
        for (auto& [ln, tk] : trans_lines) {
            resolve(ln);
            if (tk.size() != 4) p.err("dft trans needs '<q> <sym> <q'> <output|EPS>'");
            State q = p.state(tk[0], num_states);
            char sym = p.symbol(tk[1], false);
            State to = p.state(tk[2], num_states);
            std::string out = (tk[3] == "EPS") ? "" : tk[3];
            if (t.delta.count({q, sym})) p.err("duplicate dft transition");
            t.delta[{q, sym}] = {to, out};
            for (char c : out) {
                if (c < '!' || c > '~') p.err("output symbols must be visible ASCII");
                if (t.output_alphabet.find(c) == std::string::npos) t.output_alphabet.push_back(c);
            }
        }
        m.body = std::move(t);
    } else if (m.kind == MachineKind::Pfa) {
        Pfa f;
        f.num_states = num_states;
        f.alphabet = alphabet;
        f.accept = accept;
        f.reject = reject;
        f.initial.assign(num_states, Rat(0));
        std::string all = alphabet;
        all.push_back(LEND);
        all.push_back(REND);
        for (char c : all)
            f.matrices[c].assign(num_states, std::vector<Rat>(num_states, Rat(0)));
        for (auto& [ln, t] : init_lines) {
            resolve(ln);
            if (t.size() != 1) p.err("init needs '<q>:<p/q>'");
            auto colon = t[0].find(':');
            if (colon == std::string::npos) p.err("init needs '<q>:<p/q>'");
            State q = p.state(t[0].substr(0, colon), num_states);
            f.initial[q] = p.rational(t[0].substr(colon + 1));
        }
        for (auto& [ln, t] : matrix_lines) {
            resolve(ln);
            if (t.size() != 4) p.err("matrix needs '<sym> <row> <col> <p/q>'");
            char sym = p.symbol(t[0], false);
            if (!f.matrices.count(sym)) p.err("matrix symbol not in alphabet");
            State r = p.state(t[1], num_states);
            State c = p.state(t[2], num_states);
            f.matrices[sym][r][c] = p.rational(t[3]);
        }
        m.body = std::move(f);
    } else {
        Dpda d;
        d.num_states = num_states;
        d.alphabet = alphabet;
        d.stack_alphabet = stack_alphabet;
        d.bottom = bottom;
        d.push_size = push_size;
        d.start = start;
        d.accept = accept;
        d.reject = reject;
        for (auto& [ln, t] : trans_lines) {
            resolve(ln);
            if (t.size() != 5) p.err("dpda trans needs '<q> <sym|EPS> <top> <q'> <push|EPS>'");
            State q = p.state(t[0], num_states);
            char sym = p.symbol(t[1], true);
            char top = p.symbol(t[2], false);
            State to = p.state(t[3], num_states);
            std::string push = (t[4] == "EPS") ? "" : t[4];
            if (d.delta.count({q, sym, top})) p.err("duplicate dpda transition");
            d.delta[{q, sym, top}] = {to, push};
        }
        m.body = std::move(d);
    }

    validate(m);
    return m;
}

std::string serialize_machine(const Machine& m) {
    std::ostringstream out;
    out << "machine " << m.name << "\n";
    out << "kind " << kind_name(m.kind) << "\n";

    auto emit_alphabet = [&](const std::string& a) {
        if (a.empty()) return;
        out << "alphabet";
        for (char c : a) out << ' ' << c;
        out << "\n";
    };
    auto emit_states = [&](int n, State start) { out << "states " << n << "\nstart " << start << "\n"; };
    auto emit_set = [&](const char* label, const std::set<State>& s) {
        if (s.empty()) return;
        out << label;
        for (State q : s) out << ' ' << q;
        out << "\n";
    };

    // Canonical symbol order: declared alphabet, then LEND, REND (then EPS).
    auto sym_rank = [](const std::string& alphabet, char c) -> int {
        if (c == LEND) return (int)alphabet.size();
        if (c == REND) return (int)alphabet.size() + 1;
        if (c == EPS) return (int)alphabet.size() + 2;
        return (int)alphabet.find(c);
    };

    if (m.kind == MachineKind::Nfa || m.kind == MachineKind::Dfa) {
        const Nfa& a = m.nfa();
        emit_alphabet(a.alphabet);
        emit_states(a.num_states, a.start);
        emit_set("accept", a.accept);
        emit_set("reject", a.reject);
        std::vector<std::pair<std::pair<State, char>, const std::vector<State>*>> rows;
        for (const auto& [k, v] : a.delta) rows.push_back({k, &v});
        std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
            if (x.first.first != y.first.first) return x.first.first < y.first.first;
            return sym_rank(a.alphabet, x.first.second) < sym_rank(a.alphabet, y.first.second);
        });
        for (const auto& [k, v] : rows) {
            out << "trans " << k.first << ' ' << symbol_token(k.second);
            for (State t : *v) out << ' ' << t;
            out << "\n";
        }
    } else if (m.kind == MachineKind::Dft) {
        const Dft& t = m.dft();
        emit_alphabet(t.alphabet);
        emit_states(t.num_states, t.start);
        std::vector<std::pair<std::pair<State, char>, const std::pair<State, std::string>*>> rows;
        for (const auto& [k, v] : t.delta) rows.push_back({k, &v});
        std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
            if (x.first.first != y.first.first) return x.first.first < y.first.first;
            return sym_rank(t.alphabet, x.first.second) < sym_rank(t.alphabet, y.first.second);
        });
        for (const auto& [k, v] : rows)
            out << "trans " << k.first << ' ' << symbol_token(k.second) << ' ' << v->first << ' '
                << (v->second.empty() ? "EPS" : v->second) << "\n";
    } else if (m.kind == MachineKind::Pfa) {
        const Pfa& f = m.pfa();
        emit_alphabet(f.alphabet);
        out << "states " << f.num_states << "\n";
        emit_set("accept", f.accept);
        emit_set("reject", f.reject);
        for (State q = 0; q < f.num_states; ++q)
            if (f.initial[q] != 0) out << "init " << q << ':' << f.initial[q] << "\n";
        std::string order = f.alphabet;
        order.push_back(LEND);
        order.push_back(REND);
        for (char sym : order) {
            const auto& mat = f.matrices.at(sym);
            for (State r = 0; r < f.num_states; ++r)
                for (State c = 0; c < f.num_states; ++c)
                    if (mat[r][c] != 0)
                        out << "matrix " << symbol_token(sym) << ' ' << r << ' ' << c << ' ' << mat[r][c] << "\n";
        }
    } else {
        const Dpda& d = m.dpda();
        emit_alphabet(d.alphabet);
        out << "stack";
        for (char c : d.stack_alphabet) out << ' ' << c;
        out << "\n";
        out << "bottom " << d.bottom << "\n";
        out << "pushsize " << d.push_size << "\n";
        emit_states(d.num_states, d.start);
        emit_set("accept", d.accept);
        emit_set("reject", d.reject);
        std::vector<std::pair<std::tuple<State, char, char>, const std::pair<State, std::string>*>> rows;
        for (const auto& [k, v] : d.delta) rows.push_back({k, &v});
        std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
            auto [qx, sx, tx] = x.first;
            auto [qy, sy, ty] = y.first;
            if (qx != qy) return qx < qy;
            if (sx != sy) return sym_rank(d.alphabet, sx) < sym_rank(d.alphabet, sy);
            return d.stack_alphabet.find(tx) < d.stack_alphabet.find(ty);
        });
        for (const auto& [k, v] : rows) {
            auto [q, sym, top] = k;
            out << "trans " << q << ' ' << symbol_token(sym) << ' ' << top << ' ' << v->first << ' '
                << (v->second.empty() ? "EPS" : v->second) << "\n";
        }
    }
    out << "end\n";
    return out.str();
}

}  // namespace cfa

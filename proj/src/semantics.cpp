#include "semantics.hpp"

#include <map>

#include "errors.hpp"

namespace cfa {

void check_alphabet(const std::string& alphabet, const std::string& x) {
    for (char c : x)
        if (alphabet.find(c) == std::string::npos)
            fail(ErrorCode::AlphabetError, std::string("input symbol '") + c + "' not in machine alphabet");
}

std::string endmarked(const std::string& x) {
    std::string t;
    t.reserve(x.size() + 2);
    t.push_back(LEND);
    t += x;
    t.push_back(REND);
    return t;
}

PathCounts count_paths(const Nfa& a, const std::string& x) {
    check_alphabet(a.alphabet, x);
    PathCounts out;
    std::map<State, Int> live{{a.start, Int(1)}};
    for (char sym : endmarked(x)) {
        std::map<State, Int> next;
        for (const auto& [q, cnt] : live) {
            if (a.accept.count(q)) { out.accepting += cnt; continue; }
            if (a.reject.count(q)) { out.rejecting += cnt; continue; }
            const auto* succ = a.successors(q, sym);
            if (!succ) { out.improper += cnt; continue; }  // dead branch
            for (State to : *succ) next[to] += cnt;
        }
        live = std::move(next);
    }
    for (const auto& [q, cnt] : live) {
        if (a.accept.count(q)) out.accepting += cnt;
        else if (a.reject.count(q)) out.rejecting += cnt;
        else out.improper += cnt;  // read off REND while live
    }
    return out;
}

Int gap_value(const Nfa& a, const std::string& x) {
    PathCounts c = count_paths(a, x);
    return c.accepting - c.rejecting;
}

std::vector<PathRecord> enumerate_paths(const Nfa& a, const std::string& x, std::uint64_t limit) {
    check_alphabet(a.alphabet, x);
    std::string tape = endmarked(x);
    std::vector<PathRecord> out;
    std::vector<State> trail{a.start};
    auto settle = [&](PathLabel label) {
        if (out.size() >= limit)
            fail(ErrorCode::CapExceeded, "path enumeration exceeded " + std::to_string(limit) + " paths");
        out.push_back({trail, label});
    };
    // Depth-first walk; pos == trail.size()-1 is the number of symbols read.
    auto walk = [&](auto&& self, State q, std::size_t pos) -> void {
        if (a.accept.count(q)) { settle(PathLabel::Accepting); return; }
        if (a.reject.count(q)) { settle(PathLabel::Rejecting); return; }
        if (pos == tape.size()) { settle(PathLabel::Improper); return; }
        const auto* succ = a.successors(q, tape[pos]);
        if (!succ) { settle(PathLabel::Improper); return; }
        for (State to : *succ) {
            trail.push_back(to);
            self(self, to, pos + 1);
            trail.pop_back();
        }
    };
    walk(walk, a.start, 0);
    return out;
}

PathCounts tally(const std::vector<PathRecord>& paths) {
    PathCounts c;
    for (const auto& p : paths) {
        switch (p.label) {
            case PathLabel::Accepting: c.accepting += 1; break;
            case PathLabel::Rejecting: c.rejecting += 1; break;
            case PathLabel::Improper: c.improper += 1; break;
        }
    }
    return c;
}

PfaResult pfa_probabilities(const Pfa& p, const std::string& x) {
    check_alphabet(p.alphabet, x);
    std::vector<Rat> v = p.initial;
    for (char sym : endmarked(x)) {
        const auto& mat = p.matrices.at(sym);
        std::vector<Rat> next(p.num_states, Rat(0));
        for (State r = 0; r < p.num_states; ++r) {
            if (v[r] == 0) continue;
            for (State c = 0; c < p.num_states; ++c)
                if (mat[r][c] != 0) next[c] += v[r] * mat[r][c];
        }
        v = std::move(next);
    }
    PfaResult res{Rat(0), Rat(0), Rat(0)};
    for (State q = 0; q < p.num_states; ++q) {
        if (p.accept.count(q)) res.accept += v[q];
        else if (p.reject.count(q)) res.reject += v[q];
        else res.other += v[q];
    }
    return res;
}

std::optional<std::string> transduce(const Dft& t, const std::string& x) {
    check_alphabet(t.alphabet, x);
    State q = t.start;
    std::string out;
    for (char sym : endmarked(x)) {
        auto it = t.delta.find({q, sym});
        if (it == t.delta.end()) return std::nullopt;
        q = it->second.first;
        out += it->second.second;
    }
    return out;
}

DpdaOutcome dpda_run(const Dpda& d, const std::string& x, std::uint64_t step_cap) {
    check_alphabet(d.alphabet, x);
    std::string tape = endmarked(x);
    std::size_t pos = 0;
    State q = d.start;
    std::string stack(1, d.bottom);  // index 0 is the top
    DpdaOutcome out{DpdaOutcome::Verdict::Improper, 0, 0};
    bool rising = false;
    while (out.steps < step_cap) {
        if (d.accept.count(q)) { out.verdict = DpdaOutcome::Verdict::Accept; return out; }
        if (d.reject.count(q)) { out.verdict = DpdaOutcome::Verdict::Reject; return out; }
        if (stack.empty()) fail(ErrorCode::StackError, "stack popped below the bottom marker");
        char top = stack[0];
        auto it = d.delta.find({q, EPS, top});
        bool consumed = false;
        if (it == d.delta.end() && pos < tape.size()) {
            it = d.delta.find({q, tape[pos], top});
            consumed = (it != d.delta.end());
        }
        if (it == d.delta.end()) { out.verdict = DpdaOutcome::Verdict::Improper; return out; }
        q = it->second.first;
        const std::string& push = it->second.second;
        int dh = (int)push.size() - 1;
        if (dh > 0) rising = true;
        else if (dh < 0 && rising) { ++out.turns; rising = false; }
        stack.replace(0, 1, push);
        if (consumed) ++pos;
        ++out.steps;
    }
    out.verdict = DpdaOutcome::Verdict::CapExceeded;
    return out;
}

}  // namespace cfa

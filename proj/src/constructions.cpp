#include "constructions.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "errors.hpp"

namespace cfa {

namespace {

// Dense ids for lazily discovered composite states.
template <class Key>
struct Indexer {
    std::map<Key, State> ids;
    std::vector<Key> keys;
    bool fresh = false;
    State get(const Key& k) {
        auto [it, inserted] = ids.emplace(k, (State)keys.size());
        fresh = inserted;
        if (inserted) keys.push_back(k);
        return it->second;
    }
};

std::string all_symbols(const Nfa& m) {
    std::string s = m.alphabet;
    s.push_back(LEND);
    s.push_back(REND);
    return s;
}

void require_same_alphabet(const Nfa& m, const Nfa& n) {
    std::string a = m.alphabet, b = n.alphabet;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) fail(ErrorCode::AlphabetMismatch, "operands have different alphabets");
}

// Single lane that accepts exactly once at REND regardless of the input.
Nfa one_accept_lane(const std::string& alphabet) {
    Nfa a;
    a.num_states = 3;
    a.alphabet = alphabet;
    a.start = 0;
    a.accept = {2};
    a.add_edge(0, LEND, 1);
    for (char c : alphabet) a.add_edge(1, c, 1);
    a.add_edge(1, REND, 2);
    return a;
}

}  // namespace

Nfa complete_paths(const Nfa& m) {
    Nfa out;
    out.alphabet = m.alphabet;
    out.num_states = m.num_states;
    out.accept = m.accept;
    out.reject = m.reject;
    std::map<State, State> carry;  // halting state -> its delaying lane
    for (State q = 0; q < m.num_states; ++q)
        if (m.halting(q)) carry[q] = out.num_states++;
    State dead = out.num_states++;   // collects dead branches until REND
    State rejd = out.num_states++;   // their final verdict
    out.reject.insert(rejd);
    // One reject sink per live-at-REND target, so distinct improper paths stay
    // distinct (edge sets cannot carry multiplicity).
    std::map<State, State> live;
    auto live_sink = [&](State t) {
        auto [it, fresh] = live.emplace(t, out.num_states);
        if (fresh) out.reject.insert(out.num_states++);
        return it->second;
    };

    std::string syms = all_symbols(m);
    for (State q = 0; q < m.num_states; ++q) {
        if (m.halting(q)) continue;
        for (char sym : syms) {
            const auto* succ = m.successors(q, sym);
            if (sym == REND) {
                if (!succ) { out.add_edge(q, sym, rejd); continue; }
                for (State t : *succ) out.add_edge(q, sym, m.halting(t) ? t : live_sink(t));
            } else {
                if (!succ) { out.add_edge(q, sym, dead); continue; }
                for (State t : *succ) out.add_edge(q, sym, m.halting(t) ? carry[t] : t);
            }
        }
    }
    for (const auto& [t, c] : carry) {
        for (char sym : syms) out.add_edge(c, sym, sym == REND ? t : c);
    }
    for (char sym : syms) out.add_edge(dead, sym, sym == REND ? rejd : dead);
    out.start = m.halting(m.start) ? carry[m.start] : m.start;
    return out;
}

NormalFormResult branching_normal_form(const Nfa& m) {
    int c = 2;
    for (const auto& [key, targets] : m.delta) c = std::max(c, (int)targets.size());

    Nfa out;
    out.alphabet = m.alphabet;
    out.num_states = m.num_states;
    out.accept = m.accept;
    out.reject = m.reject;
    std::map<State, State> carry;  // accept state -> lane that delays it to REND
    for (State a : m.accept) carry[a] = out.num_states++;
    std::vector<State> pad(c), fin(c);  // mid-input padding / rejecting finals
    for (int i = 0; i < c; ++i) pad[i] = out.num_states++;
    for (int i = 0; i < c; ++i) { fin[i] = out.num_states++; out.reject.insert(fin[i]); }

    auto fill = [&](State q, char sym, std::vector<State> targets, const std::vector<State>& filler) {
        for (int i = 0; (int)targets.size() < c; ++i) targets.push_back(filler[i]);
        for (State t : targets) out.add_edge(q, sym, t);
    };

    std::string syms = all_symbols(m);
    for (State q = 0; q < m.num_states; ++q) {
        if (m.halting(q)) continue;
        for (char sym : syms) {
            const auto* succ = m.successors(q, sym);
            std::vector<State> kept;
            if (succ) {
                for (State t : *succ) {
                    if (m.accept.count(t)) kept.push_back(sym == REND ? t : carry[t]);
                    else if (!m.reject.count(t)) kept.push_back(sym == REND ? fin.back() : t);
                    // mid-input reject targets become padding; live REND targets
                    // (improper in m) become rejecting finals
                }
                if (sym == REND) {
                    std::sort(kept.begin(), kept.end());
                    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
                }
            }
            fill(q, sym, std::move(kept), sym == REND ? fin : pad);
        }
    }
    for (const auto& [a, lane] : carry)
        for (char sym : syms) fill(lane, sym, {sym == REND ? a : lane}, sym == REND ? fin : pad);
    for (State p : pad)
        for (char sym : syms) fill(p, sym, {}, sym == REND ? fin : pad);

    if (m.accept.count(m.start)) out.start = carry[m.start];
    else if (m.reject.count(m.start)) out.start = pad[0];
    else out.start = m.start;
    return {std::move(out), c};
}

Nfa flip(const Nfa& m) {
    Nfa out = m;
    std::swap(out.accept, out.reject);
    return out;
}

Nfa split_rejecting(const Nfa& m) {
    Nfa out;
    out.alphabet = m.alphabet;
    out.num_states = m.num_states;
    out.accept = m.accept;
    out.reject = m.reject;
    std::map<State, std::pair<State, State>> pairs;  // reject state -> (accept twin, reject twin)
    for (State r : m.reject) {
        State a = out.num_states++, rr = out.num_states++;
        out.accept.insert(a);
        out.reject.insert(rr);
        pairs[r] = {a, rr};
    }
    for (const auto& [key, targets] : m.delta) {
        for (State t : targets) {
            if (m.reject.count(t)) {
                out.add_edge(key.first, key.second, pairs[t].first);
                out.add_edge(key.first, key.second, pairs[t].second);
            } else {
                out.add_edge(key.first, key.second, t);
            }
        }
    }
    if (m.reject.count(m.start)) {
        State s0 = out.num_states++;
        out.add_edge(s0, LEND, pairs[m.start].first);
        out.add_edge(s0, LEND, pairs[m.start].second);
        out.start = s0;
    } else {
        out.start = m.start;
    }
    return out;
}

Nfa disjoint_sum(const Nfa& m, const Nfa& n) {
    require_same_alphabet(m, n);
    Nfa out;
    out.alphabet = m.alphabet;
    out.start = 0;
    out.num_states = 1 + m.num_states + n.num_states;
    auto add_operand = [&](const Nfa& op, State base) {
        for (State a : op.accept) out.accept.insert(base + a);
        for (State r : op.reject) out.reject.insert(base + r);
        for (const auto& [key, targets] : op.delta)
            for (State t : targets) out.add_edge(base + key.first, key.second, base + t);
        // Route the initial branch: a halting start contributes its one path a
        // step later; a dead start contributes one improper path via a sink.
        if (op.halting(op.start)) {
            out.add_edge(0, LEND, base + op.start);
        } else if (const auto* succ = op.successors(op.start, LEND)) {
            for (State t : *succ) out.add_edge(0, LEND, base + t);
        } else {
            State sink = out.num_states++;
            out.add_edge(0, LEND, sink);
        }
    };
    add_operand(m, 1);
    add_operand(n, 1 + m.num_states);
    return out;
}

namespace {

// Shared skeleton for the pair constructions over completed operands, where
// both lanes halt exactly at REND.  `classify` maps a both-halting pair to
// the successor set it should become.
Nfa paired(const Nfa& m0, const Nfa& n0, bool mixed_splits) {
    require_same_alphabet(m0, n0);
    Nfa m = complete_paths(m0), n = complete_paths(n0);
    Nfa out;
    out.alphabet = m0.alphabet;

    // key: (u, v, tag) with tag 0 = plain pair, 1/2 = accept/reject twin of a
    // mixed-verdict pair (meet only)
    Indexer<std::tuple<State, State, int>> ix;
    std::deque<std::tuple<State, State, int>> todo;
    auto intern = [&](State u, State v, int tag) {
        State id = ix.get({u, v, tag});
        if (ix.fresh) todo.push_back({u, v, tag});
        return id;
    };
    auto map_target = [&](State u, State v, std::vector<State>& into) {
        bool ha = m.halting(u), hb = n.halting(v);
        if (ha && hb) {
            bool aa = m.accept.count(u), ab = n.accept.count(v);
            if (mixed_splits && aa != ab) {
                into.push_back(intern(u, v, 1));
                into.push_back(intern(u, v, 2));
                return;
            }
        }
        into.push_back(intern(u, v, 0));
    };

    State start = intern(m.start, n.start, 0);
    std::string syms = all_symbols(m0);
    while (!todo.empty()) {
        auto [u, v, tag] = todo.front();
        todo.pop_front();
        State id = ix.ids.at({u, v, tag});
        bool ha = m.halting(u), hb = n.halting(v);
        if (ha && hb) {
            bool aa = m.accept.count(u), ab = n.accept.count(v);
            if (tag == 1) out.accept.insert(id);
            else if (tag == 2) out.reject.insert(id);
            else if (aa && ab) out.accept.insert(id);
            else out.reject.insert(id);
            continue;
        }
        for (char sym : syms) {
            const auto* su = m.successors(u, sym);
            const auto* sv = n.successors(v, sym);
            if (!su || !sv) continue;  // cannot happen for completed lanes
            std::vector<State> targets;
            for (State tu : *su)
                for (State tv : *sv) map_target(tu, tv, targets);
            for (State t : targets) out.add_edge(id, sym, t);
        }
    }
    out.num_states = (int)ix.keys.size();
    out.start = start;
    return out;
}

}  // namespace

Nfa sync_product(const Nfa& m, const Nfa& n) { return paired(m, n, false); }

Nfa meet_cequal(const Nfa& m, const Nfa& n) { return paired(m, n, true); }

Nfa square_gap(const Nfa& m) {
    // Direct pairing of m with itself; a lane that halts early is held in
    // place until the other one resolves.  No path normalization, so the
    // state count stays within sc(m)^2.
    Nfa out;
    out.alphabet = m.alphabet;
    Indexer<std::pair<State, State>> ix;
    std::deque<std::pair<State, State>> todo;
    auto intern = [&](State u, State v) {
        State id = ix.get({u, v});
        if (ix.fresh) todo.push_back({u, v});
        return id;
    };
    State start = intern(m.start, m.start);
    std::string syms = all_symbols(m);
    while (!todo.empty()) {
        auto [u, v] = todo.front();
        todo.pop_front();
        State id = ix.ids.at({u, v});
        if (m.halting(u) && m.halting(v)) {
            bool same = (bool)m.accept.count(u) == (bool)m.accept.count(v);
            (same ? out.accept : out.reject).insert(id);
            continue;
        }
        for (char sym : syms) {
            std::vector<State> su, sv;
            if (m.halting(u)) su = {u};
            else if (const auto* s = m.successors(u, sym)) su = *s;
            if (m.halting(v)) sv = {v};
            else if (const auto* s = m.successors(v, sym)) sv = *s;
            for (State tu : su)
                for (State tv : sv) out.add_edge(id, sym, intern(tu, tv));
        }
    }
    out.num_states = (int)ix.keys.size();
    out.start = start;
    return out;
}

Nfa complement_gapwise(const Nfa& m) { return disjoint_sum(flip(m), one_accept_lane(m.alphabet)); }

Nfa gap_of_difference(const Nfa& a, const Nfa& b) {
    return disjoint_sum(split_rejecting(a), flip(split_rejecting(b)));
}

Nfa gap_sum(const Nfa& m, const Nfa& n) { return disjoint_sum(m, n); }

Nfa gap_product(const Nfa& m, const Nfa& n) {
    // (a1-r1)(a2-r2) = (a1a2 + r1r2) - (a1r2 + r1a2), realized as a
    // difference of two counting machines.
    Nfa k = disjoint_sum(sync_product(m, n), sync_product(flip(m), flip(n)));
    Nfa h = disjoint_sum(sync_product(m, flip(n)), sync_product(flip(m), n));
    return gap_of_difference(k, h);
}

namespace {

// Simulation of the bit-doubling gadget over one emitted chunk.  A unit of
// mass starts in `g` and spreads over {Pre, Q0(sign), Q1(sign) x count}.
enum class Gp { Pre, Q0Pos, Q0Neg, Q1Pos, Q1Neg };

struct GadgetMass {
    Int pre = 0, q0p = 0, q0n = 0, q1p = 0, q1n = 0;
};

GadgetMass run_gadget(Gp g, const std::string& bits) {
    GadgetMass m;
    switch (g) {
        case Gp::Pre: m.pre = 1; break;
        case Gp::Q0Pos: m.q0p = 1; break;
        case Gp::Q0Neg: m.q0n = 1; break;
        case Gp::Q1Pos: m.q1p = 1; break;
        case Gp::Q1Neg: m.q1n = 1; break;
    }
    for (char b : bits) {
        if (b != '0' && b != '1')
            fail(ErrorCode::OutputAlphabetError, std::string("transducer emitted '") + b + "'");
        GadgetMass n;
        n.q1p = m.q1p * 2 + (b == '1' ? m.q0p : Int(0));
        n.q1n = m.q1n * 2 + (b == '1' ? m.q0n : Int(0));
        n.q0p = m.q0p + (b == '1' ? m.pre : Int(0));  // leading sign '1' is skipped
        n.q0n = m.q0n + (b == '0' ? m.pre : Int(0));
        m = n;
    }
    return m;
}

std::size_t small(const Int& v) {
    if (v > 100000) fail(ErrorCode::CapExceeded, "path multiplicity too large to materialize");
    return (std::size_t)(unsigned long long)v;
}

Nfa transducer_gadget(const Dft& t, bool signed_gap) {
    Nfa out;
    out.alphabet = t.alphabet;

    // main lane: (t-state, gadget, copy index); pools tagged by t-state = -1
    Indexer<std::tuple<State, int, std::size_t>> ix;
    std::deque<std::tuple<State, int, std::size_t>> todo;
    auto intern = [&](State q, Gp g, std::size_t i) {
        State id = ix.get({q, (int)g, i});
        if (ix.fresh) todo.push_back({q, (int)g, i});
        return id;
    };
    const int ACC = 100, REJ = 101, CORR_U = 102, CORR_P = 103, CORR_N = 104;
    auto pool = [&](int kind, std::size_t i) {
        State id = ix.get({-1, kind, i});
        if (ix.fresh) {
            todo.push_back({-1, kind, i});
            (kind == ACC ? out.accept : out.reject).insert(id);
        }
        return id;
    };
    auto corr = [&](State q, int cs) {
        State id = ix.get({q, cs, 0});
        if (ix.fresh) todo.push_back({q, cs, 0});
        return id;
    };

    auto emit_targets = [&](State src, char sym, State tq, Gp g, const std::string& w, bool at_end) {
        GadgetMass mass = run_gadget(g, w);
        if (!at_end) {
            if (mass.pre == 1) out.add_edge(src, sym, intern(tq, Gp::Pre, 0));
            if (mass.q0p == 1) out.add_edge(src, sym, intern(tq, Gp::Q0Pos, 0));
            if (mass.q0n == 1) out.add_edge(src, sym, intern(tq, Gp::Q0Neg, 0));
            for (std::size_t i = 0; i < small(mass.q1p); ++i) out.add_edge(src, sym, intern(tq, Gp::Q1Pos, i));
            for (std::size_t i = 0; i < small(mass.q1n); ++i) out.add_edge(src, sym, intern(tq, Gp::Q1Neg, i));
            return;
        }
        // Final classification at REND.
        std::size_t na = 0, nr = 0;
        if (signed_gap) {
            na = small(mass.q1p + mass.q0n);
            nr = small(mass.q1n + mass.q0p + mass.pre);
        } else {
            na = small(mass.q1p);
            nr = (mass.q0p + mass.q0n + mass.q1n + mass.pre) > 0 ? 1 : 0;
        }
        for (std::size_t i = 0; i < na; ++i) out.add_edge(src, sym, pool(ACC, i));
        for (std::size_t i = 0; i < nr; ++i) out.add_edge(src, sym, pool(REJ, i));
    };

    State start = ix.get({-2, 0, 0});
    todo.push_back({-2, 0, 0});
    std::string syms = t.alphabet;
    syms.push_back(REND);
    while (!todo.empty()) {
        auto [q, kind, copy] = todo.front();
        todo.pop_front();
        State id = ix.ids.at({q, kind, copy});
        if (q == -1) continue;  // pools are halting
        if (q == -2) {
            // initial LEND step: spawn the gadget lane (and the sign
            // corrector for the gap variant)
            auto it = t.delta.find({t.start, LEND});
            if (it == t.delta.end()) continue;
            emit_targets(id, LEND, it->second.first, Gp::Pre, it->second.second, false);
            if (signed_gap) {
                const std::string& w = it->second.second;
                int cs = w.empty() ? CORR_U : (w[0] == '1' ? CORR_P : CORR_N);
                out.add_edge(id, LEND, corr(it->second.first, cs));
            }
            continue;
        }
        if (kind >= CORR_U) {
            for (char sym : syms) {
                auto it = t.delta.find({q, sym});
                if (it == t.delta.end()) continue;
                const std::string& w = it->second.second;
                int cs = kind;
                if (cs == CORR_U && !w.empty()) cs = (w[0] == '1' ? CORR_P : CORR_N);
                if (sym == REND) {
                    // dedicated index keeps the corrector's verdict distinct from gadget pools
                    out.add_edge(id, sym, cs == CORR_N ? pool(REJ, SIZE_MAX) : pool(ACC, SIZE_MAX));
                } else {
                    out.add_edge(id, sym, corr(it->second.first, cs));
                }
            }
            continue;
        }
        Gp g = (Gp)kind;
        for (char sym : syms) {
            auto it = t.delta.find({q, sym});
            if (it == t.delta.end()) continue;
            emit_targets(id, sym, it->second.first, g, it->second.second, sym == REND);
        }
    }
    out.num_states = (int)ix.keys.size();
    out.start = start;
    return out;
}

}  // namespace

Nfa counter_from_transducer(const Dft& t) { return transducer_gadget(t, false); }

Nfa gap_from_transducer(const Dft& t) { return transducer_gadget(t, true); }

namespace {

void check_hom_range(const Nfa& m, const std::map<char, std::string>& h) {
    if (h.empty()) fail(ErrorCode::HomomorphismError, "empty homomorphism");
    for (const auto& [sym, img] : h)
        for (char c : img)
            if (m.alphabet.find(c) == std::string::npos)
                fail(ErrorCode::HomomorphismError,
                     std::string("image of '") + sym + "' leaves the machine alphabet");
}

}  // namespace

Nfa hom_image(const Nfa& m, const std::map<char, std::string>& h) {
    check_hom_range(m, h);
    Nfa out;
    for (const auto& [sym, img] : h) out.alphabet.push_back(sym);
    std::string syms = out.alphabet;
    syms.push_back(LEND);
    syms.push_back(REND);
    auto block_of = [&](char sym) {
        return (sym == LEND || sym == REND) ? std::string(1, sym) : h.at(sym);
    };

    // Pass 1: per base state and symbol, the exact multiset of block outcomes.
    struct Step {
        std::map<State, Int> live;
        Int na = 0, nr = 0;
    };
    std::map<std::pair<State, char>, Step> steps;
    std::map<State, Int> copies;  // how many parallel copies of each base state exist
    copies[m.start] = 1;
    std::deque<State> todo{m.start};
    std::set<State> seen{m.start};
    while (!todo.empty()) {
        State q = todo.front();
        todo.pop_front();
        if (m.halting(q)) continue;
        for (char sym : syms) {
            Step st;
            st.live = {{q, Int(1)}};
            for (char c : block_of(sym)) {
                std::map<State, Int> next;
                for (const auto& [s, cnt] : st.live) {
                    const auto* succ = m.successors(s, c);
                    if (!succ) continue;  // path dies inside the block
                    for (State to : *succ) {
                        if (m.accept.count(to)) st.na += cnt;
                        else if (m.reject.count(to)) st.nr += cnt;
                        else next[to] += cnt;
                    }
                }
                st.live = std::move(next);
            }
            for (const auto& [s, cnt] : st.live) {
                Int& c = copies[s];
                c = std::max(c, cnt);
                small(c);
                if (seen.insert(s).second) todo.push_back(s);
            }
            steps[{q, sym}] = std::move(st);
        }
    }

    // Pass 2: materialize tagged copies plus shared halting pools.
    std::map<State, State> base_id;  // base state -> id of copy 0 (copies are consecutive)
    Int max_a = 0, max_r = 0;
    for (const auto& [k, st] : steps) { max_a = std::max(max_a, st.na); max_r = std::max(max_r, st.nr); }
    for (const auto& [q, cnt] : copies) {
        base_id[q] = out.num_states;
        for (std::size_t i = 0; i < small(cnt); ++i) {
            if (m.accept.count(q)) out.accept.insert(out.num_states);
            else if (m.reject.count(q)) out.reject.insert(out.num_states);
            ++out.num_states;
        }
    }
    State acc_pool = out.num_states;
    for (std::size_t i = 0; i < small(max_a); ++i) out.accept.insert(out.num_states++);
    State rej_pool = out.num_states;
    for (std::size_t i = 0; i < small(max_r); ++i) out.reject.insert(out.num_states++);

    for (const auto& [key, st] : steps) {
        auto [q, sym] = key;
        std::vector<State> targets;
        for (const auto& [s, cnt] : st.live)
            for (std::size_t i = 0; i < small(cnt); ++i) targets.push_back(base_id[s] + (State)i);
        for (std::size_t i = 0; i < small(st.na); ++i) targets.push_back(acc_pool + (State)i);
        for (std::size_t i = 0; i < small(st.nr); ++i) targets.push_back(rej_pool + (State)i);
        for (std::size_t copy = 0; copy < small(copies[q]); ++copy)
            for (State t : targets) out.add_edge(base_id[q] + (State)copy, sym, t);
    }
    out.start = base_id[m.start];
    return out;
}

Nfa hom_inverse(const Nfa& m, const std::map<char, std::string>& h) {
    if (h.empty()) fail(ErrorCode::HomomorphismError, "empty homomorphism");
    for (char c : m.alphabet)
        if (!h.count(c))
            fail(ErrorCode::HomomorphismError, std::string("no image for machine symbol '") + c + "'");
    for (const auto& [sym, img] : h) {
        if (img.empty()) fail(ErrorCode::HomomorphismError, "homomorphism must be non-erasing");
        for (const auto& [sym2, img2] : h)
            if (sym != sym2 && img2.compare(0, img.size(), img) == 0)
                fail(ErrorCode::HomomorphismError, "homomorphism must be prefix-free");
    }
    Nfa out;
    std::set<char> letters;
    for (const auto& [sym, img] : h) letters.insert(img.begin(), img.end());
    out.alphabet.assign(letters.begin(), letters.end());

    Indexer<std::pair<State, std::string>> ix;  // (m-state, pending image prefix)
    std::deque<std::pair<State, std::string>> todo;
    auto intern = [&](State q, const std::string& p) {
        State id = ix.get({q, p});
        if (ix.fresh) {
            todo.push_back({q, p});
            if (m.accept.count(q)) out.accept.insert(id);
            else if (m.reject.count(q)) out.reject.insert(id);
        }
        return id;
    };
    State start = intern(m.start, "");
    while (!todo.empty()) {
        auto [q, p] = todo.front();
        todo.pop_front();
        State id = ix.ids.at({q, p});
        if (m.halting(q)) continue;
        if (p.empty()) {
            for (char em : {LEND, REND}) {
                const auto* succ = m.successors(q, em);
                if (!succ) continue;
                for (State t : *succ) out.add_edge(id, em, intern(t, ""));
            }
        }
        for (char d : out.alphabet) {
            std::string p2 = p + d;
            const std::string* complete = nullptr;
            char via = 0;
            bool partial = false;
            for (const auto& [sym, img] : h) {
                if (img == p2) { complete = &img; via = sym; }
                else if (img.size() > p2.size() && img.compare(0, p2.size(), p2) == 0) partial = true;
            }
            if (complete) {
                const auto* succ = m.successors(q, via);
                if (!succ) continue;
                for (State t : *succ) out.add_edge(id, d, intern(t, ""));
            } else if (partial) {
                out.add_edge(id, d, intern(q, p2));
            }
            // otherwise: off the image, the path dies
        }
    }
    out.num_states = (int)ix.keys.size();
    out.start = start;
    return out;
}

Pfa nfa_to_pfa(const NormalFormResult& nf) {
    const Nfa& m = nf.machine;
    int c = nf.degree;
    if (c < 2) fail(ErrorCode::NormalFormError, "branching degree must be at least 2");
    if (m.halting(m.start)) fail(ErrorCode::NormalFormError, "start state must be non-halting");
    std::string syms = all_symbols(m);
    for (State q = 0; q < m.num_states; ++q) {
        if (m.halting(q)) continue;
        for (char sym : syms) {
            const auto* succ = m.successors(q, sym);
            if (!succ || (int)succ->size() != c)
                fail(ErrorCode::NormalFormError,
                     "state " + std::to_string(q) + " lacks exactly c successors on some symbol");
            if (sym != REND)
                for (State t : *succ)
                    if (m.halting(t))
                        fail(ErrorCode::NormalFormError, "machine halts before REND");
        }
    }
    Pfa p;
    p.num_states = m.num_states;
    p.alphabet = m.alphabet;
    p.accept = m.accept;
    p.reject = m.reject;
    p.initial.assign(m.num_states, Rat(0));
    p.initial[m.start] = 1;
    Rat share(1, c);
    for (char sym : syms) {
        auto& mat = p.matrices[sym];
        mat.assign(m.num_states, std::vector<Rat>(m.num_states, Rat(0)));
        for (State q = 0; q < m.num_states; ++q) {
            if (m.halting(q)) { mat[q][q] = 1; continue; }
            for (State t : *m.successors(q, sym)) mat[q][t] += share;
        }
    }
    return p;
}

Pfa gap_balanced_pfa(const Nfa& m) {
    // Run the machine and its flip side by side, half the mass each: the
    // accepting shares a/c^L and 1 - r/c^L average to 1/2 + gap/(2 c^L).
    NormalFormResult pos = branching_normal_form(m);
    NormalFormResult neg = branching_normal_form(flip(m));
    if (pos.degree != neg.degree) fail(ErrorCode::NormalFormError, "flip changed the branching degree");
    Pfa a = nfa_to_pfa(pos);
    Pfa b = nfa_to_pfa({flip(neg.machine), neg.degree});

    Pfa out;
    out.num_states = a.num_states + b.num_states;
    out.alphabet = a.alphabet;
    out.initial.assign(out.num_states, Rat(0));
    for (int i = 0; i < a.num_states; ++i) out.initial[i] = a.initial[i] / 2;
    for (int i = 0; i < b.num_states; ++i) out.initial[a.num_states + i] = b.initial[i] / 2;
    for (const auto& [sym, ma] : a.matrices) {
        const auto& mb = b.matrices.at(sym);
        auto& mo = out.matrices[sym];
        mo.assign(out.num_states, std::vector<Rat>(out.num_states, Rat(0)));
        for (int r = 0; r < a.num_states; ++r)
            for (int c = 0; c < a.num_states; ++c) mo[r][c] = ma[r][c];
        for (int r = 0; r < b.num_states; ++r)
            for (int c = 0; c < b.num_states; ++c) mo[a.num_states + r][a.num_states + c] = mb[r][c];
    }
    for (State q : a.accept) out.accept.insert(q);
    for (State q : a.reject) out.reject.insert(q);
    for (State q : b.accept) out.accept.insert(a.num_states + q);
    for (State q : b.reject) out.reject.insert(a.num_states + q);
    return out;
}

}  // namespace cfa

#include "families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "encodings.hpp"
#include "errors.hpp"

namespace cfa {

const char* verdict_name(Verdict3 v) {
    switch (v) {
        case Verdict3::Positive: return "Positive";
        case Verdict3::Negative: return "Negative";
        case Verdict3::Invalid: return "Invalid";
    }
    return "?";
}

namespace {

// ---- shared parsing helpers -------------------------------------------------

std::optional<std::pair<std::string, std::string>> split_hash(const std::string& s) {
    auto pos = s.find('#');
    if (pos == std::string::npos || s.find('#', pos + 1) != std::string::npos) return std::nullopt;
    return std::make_pair(s.substr(0, pos), s.substr(pos + 1));
}

std::optional<std::vector<unsigned>> try_padded(const std::string& s, int m, int k) {
    try {
        auto entries = enc::padded_decode(s, m);
        if ((int)entries.size() != k) return std::nullopt;
        return entries;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<std::vector<unsigned>> try_bracket(const std::string& s, int bound) {
    try {
        auto entries = enc::bracket_decode(s);
        for (unsigned e : entries)
            if (e > (unsigned)bound) return std::nullopt;
        return entries;
    } catch (const Error&) {
        return std::nullopt;
    }
}

int log2_floor(int n) {
    int b = 0;
    while ((1 << (b + 1)) <= n) ++b;
    return b;
}

// u = u_1$u_2$...$u_n with |u_i| = b over {0,1}
std::optional<std::vector<std::string>> parse_blocks(const std::string& u, int n, int b) {
    std::vector<std::string> blocks;
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            if (pos >= u.size() || u[pos] != '$') return std::nullopt;
            ++pos;
        }
        if (pos + b > u.size()) return std::nullopt;
        std::string blk = u.substr(pos, b);
        for (char c : blk)
            if (c != '0' && c != '1') return std::nullopt;
        blocks.push_back(blk);
        pos += b;
    }
    if (pos != u.size()) return std::nullopt;
    return blocks;
}

void sort_len_lex(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

// Deterministic sub-automata are easiest to grow through a keyed allocator.
struct Alloc {
    Nfa nfa;
    std::map<std::string, State> ids;
    State get(const std::string& key) {
        auto [it, fresh] = ids.emplace(key, nfa.num_states);
        if (fresh) ++nfa.num_states;
        return it->second;
    }
};

// ---- classifiers ------------------------------------------------------------

Verdict3 classify_example31(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    auto r1 = try_bracket(parts->first, n), r2 = try_bracket(parts->second, n);
    if (!r1 || !r2) return Verdict3::Invalid;
    auto set2 = enc::entry_set(*r2);
    for (unsigned e : *r1)
        if (set2.count(e)) return Verdict3::Positive;
    return Verdict3::Negative;
}

Verdict3 classify_lsp(int, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    for (char c : parts->first + parts->second)
        if (c != '0' && c != '1') return Verdict3::Invalid;
    Int d = Int(enc::count_symbol(parts->first, '0')) - Int(enc::count_symbol(parts->second, '0'));
    if (d == 1) return Verdict3::Positive;
    if (d == 0) return Verdict3::Negative;
    return Verdict3::Invalid;
}

int count_diffs(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

Verdict3 classify_lu(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    auto u = try_padded(parts->first, n, n), v = try_padded(parts->second, n, n);
    if (!u || !v) return Verdict3::Invalid;
    int d = count_diffs(*u, *v);
    if (d == 1) return Verdict3::Positive;
    if (d == 0) return Verdict3::Negative;
    return Verdict3::Invalid;
}

Verdict3 classify_ln(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    int m = n * n;
    auto u = try_padded(parts->first, m, n), v = try_padded(parts->second, m, n);
    if (!u || !v) return Verdict3::Invalid;
    return enc::entry_set(*u) != enc::entry_set(*v) ? Verdict3::Positive : Verdict3::Negative;
}

Verdict3 classify_lparity(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    int b = log2_floor(n);
    auto u = parse_blocks(parts->first, n, b), v = parse_blocks(parts->second, n, b);
    if (!u || !v) return Verdict3::Invalid;
    Int total = 0;
    for (int i = 0; i < n; ++i) total += enc::bitwise_dot((*u)[i], (*v)[i]);
    return total % 2 == 1 ? Verdict3::Positive : Verdict3::Negative;
}

Verdict3 classify_ldot(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    std::string u = parts->first;
    std::reverse(u.begin(), u.end());
    return classify_lparity(n, u + "#" + parts->second);
}

Verdict3 classify_lblocku(int n, const std::string& s) {
    auto parts = split_hash(s);
    if (!parts) return Verdict3::Invalid;
    const std::string &u = parts->first, &v = parts->second;
    if ((int)u.size() != n * n || (int)v.size() != n * n) return Verdict3::Invalid;
    for (char c : u + v)
        if (c != '0' && c != '1') return Verdict3::Invalid;
    int d = 0;
    for (int i = 0; i < n; ++i) d += (u.compare(i * n, n, v, i * n, n) != 0);
    if (d == 1) return Verdict3::Positive;
    if (d == 0) return Verdict3::Negative;
    return Verdict3::Invalid;
}

// ---- enumerators ------------------------------------------------------------

std::vector<std::string> bitstrings(int len) {
    std::vector<std::string> out;
    for (int mask = 0; mask < (1 << len); ++mask) {
        std::string s(len, '0');
        for (int i = 0; i < len; ++i)
            if (mask & (1 << i)) s[len - 1 - i] = '1';
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> bracket_strings(int n, int max_len) {
    // all [i1..ik], entries in [1,n], serialized length <= max_len
    std::vector<std::string> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (!cur.empty()) out.push_back(enc::bracket_encode(cur));
        for (int i = 1; i <= n && i + 1 <= remaining; ++i) {
            cur.push_back((unsigned)i);
            self(self, remaining - i - 1);
            cur.pop_back();
        }
    };
    rec(rec, max_len);
    sort_len_lex(out);
    return out;
}

std::vector<std::string> enum_pairs(const std::vector<std::string>& lhs, const std::vector<std::string>& rhs,
                                    int n, Verdict3 (*cls)(int, const std::string&), int max_len) {
    std::vector<std::string> out;
    for (const auto& a : lhs)
        for (const auto& b : rhs) {
            std::string s = a + "#" + b;
            if (max_len > 0 && (int)s.size() > max_len) continue;
            if (cls(n, s) != Verdict3::Invalid) out.push_back(s);
        }
    sort_len_lex(out);
    return out;
}

std::vector<std::string> enum_example31(int n, int max_len) {
    if (max_len == 0) max_len = 9;
    auto parts = bracket_strings(n, max_len - 3);
    return enum_pairs(parts, parts, n, classify_example31, max_len);
}

std::vector<std::string> enum_lsp(int n, int max_len) {
    if (max_len == 0) max_len = std::min(9, 2 * n + 1);
    std::vector<std::string> sides;
    for (int len = 0; len + 1 <= max_len; ++len)
        for (const auto& s : bitstrings(len)) sides.push_back(s);
    return enum_pairs(sides, sides, n, classify_lsp, max_len);
}

std::vector<std::string> enum_lu(int n, int max_len) {
    auto sides = padded_universe(n, n, n);
    return enum_pairs(sides, sides, n, classify_lu, max_len);
}

std::vector<std::string> enum_ln(int n, int max_len) {
    auto sides = padded_universe(n * n, n * n, n);
    std::vector<std::string> out;
    for (const auto& a : sides)
        for (const auto& b : sides) {
            std::string s = a + "#" + b;
            if (max_len > 0 && (int)s.size() > max_len) continue;
            out.push_back(s);  // well-formed pairs always carry a promise verdict
        }
    sort_len_lex(out);
    return out;
}

std::vector<std::string> blocked_universe(int n, int b, char sep) {
    std::vector<std::string> out{""};
    auto bits = bitstrings(b);
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& prefix : out)
            for (const auto& blk : bits) next.push_back(i == 0 ? blk : prefix + sep + blk);
        out = std::move(next);
    }
    return out;
}

std::vector<std::string> enum_lparity(int n, int max_len) {
    auto sides = blocked_universe(n, log2_floor(n), '$');
    return enum_pairs(sides, sides, n, classify_lparity, max_len);
}

std::vector<std::string> enum_ldot(int n, int max_len) {
    auto sides = blocked_universe(n, log2_floor(n), '$');
    std::vector<std::string> out;
    for (const auto& u : sides)
        for (const auto& v : sides) {
            std::string ur = u;
            std::reverse(ur.begin(), ur.end());
            std::string s = ur + "#" + v;
            if (max_len > 0 && (int)s.size() > max_len) continue;
            out.push_back(s);
        }
    sort_len_lex(out);
    return out;
}

std::vector<std::string> enum_lblocku(int n, int max_len) {
    auto sides = bitstrings(n * n);
    return enum_pairs(sides, sides, n, classify_lblocku, max_len);
}

// ---- machines ---------------------------------------------------------------

Machine finish(Alloc& a, const std::string& name) {
    Machine m;
    m.name = name;
    m.kind = MachineKind::Nfa;
    m.body = std::move(a.nfa);
    validate(m);
    return m;
}

Machine machine_lsp(int) {
    Alloc a;
    a.nfa.alphabet = "01#";
    State s0 = a.get("s0"), x = a.get("x"), y = a.get("y");
    State ca = a.get("ca"), cr = a.get("cr");
    State acc = a.get("acc"), rej = a.get("rej"), acc2 = a.get("acc2"), rej2 = a.get("rej2");
    a.nfa.start = s0;
    a.nfa.accept = {acc, acc2};
    a.nfa.reject = {rej, rej2};
    a.nfa.add_edge(s0, LEND, x);
    a.nfa.add_edge(x, '1', x);
    a.nfa.add_edge(x, '0', x);
    a.nfa.add_edge(x, '0', ca);  // each 0 in x contributes +1 to the gap
    a.nfa.add_edge(x, '#', y);
    a.nfa.add_edge(y, '1', y);
    a.nfa.add_edge(y, '0', y);
    a.nfa.add_edge(y, '0', cr);  // each 0 in y contributes -1
    a.nfa.add_edge(y, REND, acc2);
    a.nfa.add_edge(y, REND, rej2);  // balanced pair: the surviving lane nets zero
    for (char c : std::string("01#")) {
        a.nfa.add_edge(ca, c, ca);
        a.nfa.add_edge(cr, c, cr);
    }
    a.nfa.add_edge(ca, REND, acc);
    a.nfa.add_edge(cr, REND, rej);
    return finish(a, "lsp");
}

Machine machine_example31(int n) {
    Alloc a;
    a.nfa.alphabet = "01#";
    State s0 = a.get("s0"), g = a.get("g"), k = a.get("k");
    State acc = a.get("acc"), rej = a.get("rej");
    a.nfa.start = s0;
    a.nfa.accept = {acc};
    a.nfa.reject = {rej};
    a.nfa.add_edge(s0, LEND, g);
    // g: at a block start in r1 — select this block or skip it
    a.nfa.add_edge(g, '1', k);
    a.nfa.add_edge(k, '1', k);
    a.nfa.add_edge(k, '0', g);
    for (int v = 1; v <= n; ++v) {
        State cv = a.get("c" + std::to_string(v));
        a.nfa.add_edge(v == 1 ? g : a.get("c" + std::to_string(v - 1)), '1', cv);
        // block ends: value v memorized, skip the rest of r1
        State sv = a.get("s" + std::to_string(v));
        a.nfa.add_edge(cv, '0', sv);
        a.nfa.add_edge(sv, '0', sv);
        a.nfa.add_edge(sv, '1', sv);
        // after '#': scan r2 blocks, comparing each to v
        State wv = a.get("w" + std::to_string(v));  // between blocks of r2
        a.nfa.add_edge(sv, '#', wv);
        a.nfa.add_edge(wv, REND, rej);
        State prev = wv;
        for (int c = 1; c <= n + 1; ++c) {
            State dvc = a.get("d" + std::to_string(v) + "_" + std::to_string(c));
            a.nfa.add_edge(prev, '1', dvc);
            if (c == v) {
                State f = a.get("f");
                a.nfa.add_edge(dvc, '0', f);
            } else if (c <= n) {
                a.nfa.add_edge(dvc, '0', wv);
            }
            prev = dvc;
        }
    }
    State f = a.get("f");
    a.nfa.add_edge(f, '0', f);
    a.nfa.add_edge(f, '1', f);
    a.nfa.add_edge(f, REND, acc);
    return finish(a, "example31");
}

Machine machine_lu(int n) {
    Alloc a;
    a.nfa.alphabet = "01#";
    State s0 = a.get("s0"), acc = a.get("acc"), rej = a.get("rej");
    a.nfa.start = s0;
    a.nfa.accept = {acc};
    a.nfa.reject = {rej};
    int m = n, k = n;
    for (int e = 1; e <= k; ++e) {
        std::string L = "e" + std::to_string(e) + "|";
        // skip the first (e-1) blocks of u with their separators
        int skip = (e - 1) * (m + 1);
        State cur = a.get(L + "u0");
        a.nfa.add_edge(s0, LEND, cur);
        for (int t = 1; t <= skip; ++t) {
            State nxt = a.get(L + "u" + std::to_string(t));
            a.nfa.add_edge(cur, '0', nxt);
            a.nfa.add_edge(cur, '1', nxt);
            cur = nxt;
        }
        // read u's block e, extracting its value (leading-ones count)
        // key: r|pos|ones|seenZero
        auto rstate = [&](int p, int ones, int z) {
            return a.get(L + "r" + std::to_string(p) + "_" + std::to_string(ones) + "_" + std::to_string(z));
        };
        a.nfa.add_edge(cur, '1', rstate(1, 1, 0));
        a.nfa.add_edge(cur, '0', rstate(1, 0, 1));
        for (int p = 1; p < m; ++p)
            for (int ones = 0; ones <= p; ++ones)
                for (int z = 0; z <= 1; ++z) {
                    if (!z && ones != p) continue;
                    if (z && ones > p - 1) continue;
                    State st = rstate(p, ones, z);
                    if (!z) a.nfa.add_edge(st, '1', rstate(p + 1, ones + 1, 0));
                    a.nfa.add_edge(st, '0', rstate(p + 1, ones, 1));
                }
        for (int val = 0; val <= m; ++val) {
            // block finished with value val; skip to '#'
            State done = rstate(m, val, val == m ? 0 : 1);
            State su = a.get(L + "su" + std::to_string(val));
            a.nfa.add_edge(done, '0', su);
            a.nfa.add_edge(done, '1', su);
            a.nfa.add_edge(su, '0', su);
            a.nfa.add_edge(su, '1', su);
            State firstv = a.get(L + "v0_" + std::to_string(val));
            if (e == k) a.nfa.add_edge(done, '#', firstv);  // last block abuts '#'
            a.nfa.add_edge(su, '#', firstv);
            // skip (e-1) blocks of v, then compare block e against val
            State vc = firstv;
            for (int t = 1; t <= skip; ++t) {
                State nxt = a.get(L + "v" + std::to_string(t) + "_" + std::to_string(val));
                a.nfa.add_edge(vc, '0', nxt);
                a.nfa.add_edge(vc, '1', nxt);
                vc = nxt;
            }
            // compare: key q|pos|eq
            auto qstate = [&](int p, int eq) {
                return a.get(L + "q" + std::to_string(val) + "_" + std::to_string(p) + "_" + std::to_string(eq));
            };
            a.nfa.add_edge(vc, '0', qstate(1, 0 >= val));       // expected '1' iff pos < val
            a.nfa.add_edge(vc, '1', qstate(1, 0 < val));
            for (int p = 1; p < m; ++p)
                for (int eq = 0; eq <= 1; ++eq) {
                    char expect = p < val ? '1' : '0';
                    a.nfa.add_edge(qstate(p, eq), '0', qstate(p + 1, eq && expect == '0'));
                    a.nfa.add_edge(qstate(p, eq), '1', qstate(p + 1, eq && expect == '1'));
                }
            for (int eq = 0; eq <= 1; ++eq) {
                State fin = a.get(L + "fin" + std::to_string(val) + "_" + std::to_string(eq));
                State qm = qstate(m, eq);
                a.nfa.add_edge(qm, '0', fin);
                a.nfa.add_edge(qm, '1', fin);
                a.nfa.add_edge(qm, REND, eq ? rej : acc);  // differs => this entry witnesses
                a.nfa.add_edge(fin, '0', fin);
                a.nfa.add_edge(fin, '1', fin);
                a.nfa.add_edge(fin, REND, eq ? rej : acc);
            }
        }
    }
    return finish(a, "LU");
}

Machine machine_ln(int n) {
    Alloc a;
    a.nfa.alphabet = "01#";
    State s0 = a.get("s0"), acc = a.get("acc"), rej = a.get("rej");
    a.nfa.start = s0;
    a.nfa.accept = {acc};
    a.nfa.reject = {rej};
    int m = n * n, k = n;
    for (int i = 0; i <= m; ++i) {
        for (int side = 0; side <= 1; ++side) {
            std::string L = "i" + std::to_string(i) + "s" + std::to_string(side) + "|";
            // scan a region of k blocks, tracking "some block equals i"
            // key: region|block|pos|eq|found(u)|found(current region)
            auto st = [&](int reg, int j, int p, int eq, int fu, int fr) {
                std::ostringstream os;
                os << L << reg << "_" << j << "_" << p << "_" << eq << "_" << fu << "_" << fr;
                return a.get(os.str());
            };
            a.nfa.add_edge(s0, LEND, st(0, 0, 0, 1, 0, 0));
            for (int reg = 0; reg <= 1; ++reg)
                for (int fu = 0; fu <= (reg == 0 ? 0 : 1); ++fu)
                    for (int j = 0; j < k; ++j)
                        for (int p = 0; p < m; ++p)
                            for (int eq = 0; eq <= 1; ++eq)
                                for (int fr = 0; fr <= 1; ++fr) {
                                    if (p == 0 && !eq) continue;  // blocks start with eq = true
                                    State cur = st(reg, j, p, eq, fu, fr);
                                    char expect = p < i ? '1' : '0';
                                    for (char c : std::string("01")) {
                                        int eq2 = eq && c == expect;
                                        if (p + 1 < m) {
                                            a.nfa.add_edge(cur, c, st(reg, j, p + 1, eq2, fu, fr));
                                            continue;
                                        }
                                        int fr2 = fr || eq2;
                                        if (j + 1 < k) {
                                            // separator '0' then the next block
                                            State sep = a.get(L + "sep" + std::to_string(reg) + "_" +
                                                              std::to_string(j) + "_" + std::to_string(fu) + "_" +
                                                              std::to_string(fr2));
                                            a.nfa.add_edge(cur, c, sep);
                                            a.nfa.add_edge(sep, '0', st(reg, j + 1, 0, 1, fu, fr2));
                                        } else if (reg == 0) {
                                            State endu = a.get(L + "endu" + std::to_string(fr2));
                                            a.nfa.add_edge(cur, c, endu);
                                            a.nfa.add_edge(endu, '#', st(1, 0, 0, 1, fr2, 0));
                                        } else {
                                            State endv = a.get(L + "endv" + std::to_string(fu) + "_" +
                                                               std::to_string(fr2));
                                            a.nfa.add_edge(cur, c, endv);
                                            bool hit = side == 0 ? (fu && !fr2) : (!fu && fr2);
                                            a.nfa.add_edge(endv, REND, hit ? acc : rej);
                                        }
                                    }
                                }
        }
    }
    return finish(a, "LN");
}

Machine machine_lparity(int n) {
    Alloc a;
    a.nfa.alphabet = "01$#";
    State s0 = a.get("s0"), acc = a.get("acc"), rej = a.get("rej");
    a.nfa.start = s0;
    a.nfa.accept = {acc};
    a.nfa.reject = {rej};
    int b = log2_floor(n);
    const std::string skipchars = "01$";
    for (int i = 1; i <= n; ++i) {
        std::string L = "i" + std::to_string(i) + "|";
        int skip = (i - 1) * (b + 1);
        State cur = a.get(L + "u0");
        a.nfa.add_edge(s0, LEND, cur);
        for (int t = 1; t <= skip; ++t) {
            State nxt = a.get(L + "u" + std::to_string(t));
            for (char c : skipchars) a.nfa.add_edge(cur, c, nxt);
            cur = nxt;
        }
        // read and memorize block i of u
        std::vector<std::pair<State, std::string>> frontier{{cur, ""}};
        for (int p = 0; p < b; ++p) {
            std::vector<std::pair<State, std::string>> next;
            for (auto& [st, w] : frontier)
                for (char c : std::string("01")) {
                    State nxt = a.get(L + "m" + w + c);
                    a.nfa.add_edge(st, c, nxt);
                    next.push_back({nxt, w + c});
                }
            frontier = std::move(next);
        }
        for (auto& [st, w] : frontier) {
            State su = a.get(L + "su" + w);
            if (st != su)
                for (char c : skipchars) a.nfa.add_edge(st, c, su);
            for (char c : skipchars) a.nfa.add_edge(su, c, su);
            State vc = a.get(L + "v0_" + w);
            a.nfa.add_edge(su, '#', vc);
            if (st != su) a.nfa.add_edge(st, '#', vc);
            for (int t = 1; t <= skip; ++t) {
                State nxt = a.get(L + "v" + std::to_string(t) + "_" + w);
                for (char c : skipchars) a.nfa.add_edge(vc, c, nxt);
                vc = nxt;
            }
            // dot-product parity against the memorized block
            State p0 = a.get(L + "p0_0_" + w);
            if (vc != p0)
                for (char c : std::string("01")) {
                    int par = (c == '1' && w.size() > 0 && w[0] == '1') ? 1 : 0;
                    if (b >= 1) a.nfa.add_edge(vc, c, a.get(L + "p1_" + std::to_string(par) + "_" + w));
                }
            for (int p = (b >= 1 ? 1 : 0); p < b; ++p)
                for (int par = 0; par <= 1; ++par) {
                    State st2 = a.get(L + "p" + std::to_string(p) + "_" + std::to_string(par) + "_" + w);
                    for (char c : std::string("01")) {
                        int par2 = par ^ (c == '1' && w[p] == '1');
                        a.nfa.add_edge(st2, c, a.get(L + "p" + std::to_string(p + 1) + "_" + std::to_string(par2) + "_" + w));
                    }
                }
            for (int par = 0; par <= 1; ++par) {
                State done = b >= 1 ? a.get(L + "p" + std::to_string(b) + "_" + std::to_string(par) + "_" + w)
                                    : vc;
                if (b == 0 && par == 1) continue;
                State fin = a.get(L + "fin" + std::to_string(par) + "_" + w);
                for (char c : skipchars) {
                    a.nfa.add_edge(done, c, fin);
                    a.nfa.add_edge(fin, c, fin);
                }
                a.nfa.add_edge(done, REND, par ? acc : rej);
                a.nfa.add_edge(fin, REND, par ? acc : rej);
            }
        }
    }
    return finish(a, "Lparity");
}

Machine machine_ldot(int) {
    // Push u (arriving reversed) onto the stack, then pop it against v,
    // accumulating the parity of matched 1-positions.  Exactly one turn.
    Dpda d;
    d.alphabet = "01$#";
    d.stack_alphabet = "01$SZ";
    d.bottom = 'Z';
    d.push_size = 2;
    d.num_states = 5;
    State p0 = 0, q0 = 1, q1 = 2, acc = 3, rej = 4;
    d.start = p0;
    d.accept = {acc};
    d.reject = {rej};
    d.delta[{p0, LEND, 'Z'}] = {p0, "SZ"};
    for (char c : std::string("01$"))
        for (char t : std::string("01$S")) d.delta[{p0, c, t}] = {p0, std::string(1, c) + t};
    for (char t : std::string("01$S")) d.delta[{p0, '#', t}] = {q0, std::string(1, t)};
    for (State q : {q0, q1}) {
        State other = q == q0 ? q1 : q0;
        d.delta[{q, '0', '0'}] = {q, ""};
        d.delta[{q, '0', '1'}] = {q, ""};
        d.delta[{q, '1', '0'}] = {q, ""};
        d.delta[{q, '1', '1'}] = {other, ""};
        d.delta[{q, '$', '$'}] = {q, ""};
    }
    d.delta[{q1, REND, 'S'}] = {acc, ""};
    d.delta[{q0, REND, 'S'}] = {rej, ""};
    Machine m;
    m.name = "Ldot";
    m.kind = MachineKind::Dpda;
    m.body = std::move(d);
    validate(m);
    return m;
}

}  // namespace

std::vector<std::string> padded_universe(int bound, int m, int k) {
    std::vector<std::string> out;
    std::vector<unsigned> entries(k, 0);
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == k) { out.push_back(enc::padded_encode(entries, (unsigned)m, (unsigned)bound)); return; }
        for (int v = 0; v <= bound; ++v) {
            entries[idx] = (unsigned)v;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    sort_len_lex(out);
    return out;
}

const PromiseFamily& family(const std::string& name) {
    static const std::map<std::string, PromiseFamily> catalog = [] {
        std::map<std::string, PromiseFamily> c;
        c["example31"] = {"example31", "01#", classify_example31, enum_example31, true};
        c["Lsp"] = {"Lsp", "01#", classify_lsp, enum_lsp, true};
        c["LU"] = {"LU", "01#", classify_lu, enum_lu, true};
        c["LN"] = {"LN", "01#", classify_ln, enum_ln, true};
        c["Lparity"] = {"Lparity", "01$#", classify_lparity, enum_lparity, true};
        c["Ldot"] = {"Ldot", "01$#", classify_ldot, enum_ldot, true};
        c["LblockU"] = {"LblockU", "01#", classify_lblocku, enum_lblocku, false};
        return c;
    }();
    auto it = catalog.find(name);
    if (it == catalog.end()) fail(ErrorCode::UnknownFamily, "no family named '" + name + "'");
    return it->second;
}

std::vector<std::string> family_names() {
    return {"example31", "Lsp", "LU", "LN", "Lparity", "Ldot", "LblockU"};
}

Machine build_machine(const std::string& name, int n) {
    const PromiseFamily& f = family(name);
    if (!f.has_machine) fail(ErrorCode::NoMachine, "family '" + name + "' ships no machine");
    if (n < 1) fail(ErrorCode::RangeError, "family index must be positive");
    if (name == "example31") return machine_example31(n);
    if (name == "Lsp") return machine_lsp(n);
    if (name == "LU") return machine_lu(n);
    if (name == "LN") return machine_ln(n);
    if (name == "Lparity") return machine_lparity(n);
    return machine_ldot(n);
}

}  // namespace cfa

// Acceptance gate: fifteen end-to-end criteria, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "constructions.hpp"
#include "encodings.hpp"
#include "families.hpp"
#include "harness.hpp"
#include "semantics.hpp"

using namespace cfa;
using Clock = std::chrono::steady_clock;

namespace {

bool g_all_pass = true;

void report(int num, const std::string& label, bool pass, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", num, label.c_str(), detail.c_str());
    g_all_pass = g_all_pass && pass;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> all_strings(const std::string& alphabet, int max_len) {
    std::vector<std::string> out{""};
    for (std::size_t lo = 0, len = 1; (int)len <= max_len; ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (char c : alphabet) out.push_back(out[i] + c);
        lo = hi;
    }
    return out;
}

std::string str(const Int& v) { return v.str(); }

Int pow_int(Int base, int e) {
    Int p = 1;
    while (e-- > 0) p *= base;
    return p;
}

Pfa flat_chain() {
    Pfa flat;
    flat.num_states = 1;
    flat.alphabet = "01#";
    flat.initial = {Rat(1)};
    for (char c : std::string("01#") + LEND + REND) flat.matrices[c] = {{Rat(1)}};
    return flat;
}

// 1: table-driven counting agrees with explicit path enumeration.
void criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    auto inputs = all_strings("012", 5);
    long checked = 0, mismatches = 0;
    for (int i = 0; i < 500; ++i) {
        Nfa m = random_nfa(rng, 6, "012");
        for (const auto& x : inputs) {
            ++checked;
            if (count_paths(m, x) != tally(enumerate_paths(m, x))) ++mismatches;
        }
    }
    double dt = seconds_since(t0);
    report(1, "counting-oracle", mismatches == 0 && dt < 30.0,
           std::to_string(checked) + " machine/input pairs, " + std::to_string(mismatches) + " mismatches, " +
               std::to_string(dt) + "s");
}

// 2: branching normal form preserves accepting counts and pads the rest.
void criterion2() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(102);
    auto inputs = all_strings("01", 3);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        Nfa m = random_nfa(rng, 6, "01");
        NormalFormResult nf = branching_normal_form(m);
        Int sc_in = m.num_states, sc_out = nf.machine.num_states;
        if (sc_out > 3 * sc_in + nf.degree + 2) { ++bad; continue; }
        for (const auto& x : inputs) {
            PathCounts before = count_paths(m, x), after = count_paths(nf.machine, x);
            if (after.accepting != before.accepting || after.improper != 0 ||
                after.accepting + after.rejecting != pow_int(nf.degree, (int)x.size() + 2)) {
                ++bad;
                break;
            }
        }
    }
    double dt = seconds_since(t0);
    report(2, "branching-normal-form", bad == 0 && dt < 30.0,
           "100 machines, " + std::to_string(bad) + " contract breaks, " + std::to_string(dt) + "s");
}

// 3: gap of the squaring construction is the squared gap.
void criterion3() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(103);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        std::string x = random_input(rng, "01", 4);
        Int g = gap_value(m, x);
        if (gap_value(square_gap(m), x) != g * g) ++bad;
    }
    double dt = seconds_since(t0);
    report(3, "gap-squaring", bad == 0 && dt < 30.0,
           "200 pairs, " + std::to_string(bad) + " mismatches, " + std::to_string(dt) + "s");
}

// 4: closure constructions satisfy their sum/product count identities.
void criterion4() {
    std::mt19937_64 rng(104);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        Nfa n = random_nfa(rng, 5, "01");
        std::string x = random_input(rng, "01", 4);
        PathCounts cm = count_paths(m, x), cn = count_paths(n, x), cs = count_paths(disjoint_sum(m, n), x);
        bool ok = cs.accepting == cm.accepting + cn.accepting && cs.rejecting == cm.rejecting + cn.rejecting &&
                  cs.improper == cm.improper + cn.improper;
        ok = ok && count_paths(sync_product(m, n), x).accepting == cm.accepting * cn.accepting;
        Int gm = gap_value(m, x), gn = gap_value(n, x);
        ok = ok && gap_value(gap_sum(m, n), x) == gm + gn && gap_value(gap_product(m, n), x) == gm * gn;
        if (!ok) ++bad;
    }
    report(4, "closure-identities", bad == 0, "200 pairs x 4 constructions, " + std::to_string(bad) + " mismatches");
}

// 5: the chain-difference machine's gap is the zero-count difference.
void criterion5() {
    auto t0 = Clock::now();
    Nfa m = build_machine("Lsp", 2).nfa();
    auto sides = all_strings("01", 5);
    int bad = 0;
    for (const auto& x : sides)
        for (const auto& y : sides) {
            Int want = Int(enc::count_symbol(x, '0')) - Int(enc::count_symbol(y, '0'));
            if (gap_value(m, x + "#" + y) != want) ++bad;
        }
    double dt = seconds_since(t0);
    report(5, "chain-difference-gap", bad == 0 && dt < 10.0,
           std::to_string(sides.size() * sides.size()) + " pairs, " + std::to_string(bad) + " mismatches, " +
               std::to_string(dt) + "s");
}

// 6: the parity machine counts odd blockwise dot products.
void criterion6() {
    auto t0 = Clock::now();
    int bad = 0;
    long total = 0;
    for (int n : {2, 4}) {
        const PromiseFamily& fam = family("Lparity");
        Nfa m = build_machine("Lparity", n).nfa();
        for (const auto& x : fam.enumerate(n, 0)) {
            ++total;
            auto hash = x.find('#');
            std::string u = x.substr(0, hash), v = x.substr(hash + 1);
            Int want = 0;
            for (std::size_t i = 0; i < u.size();) {
                std::size_t end = u.find('$', i);
                if (end == std::string::npos) end = u.size();
                if (enc::bitwise_dot(u.substr(i, end - i), v.substr(i, end - i)) % 2 != 0) ++want;
                i = end + 1;
            }
            Int acc = count_paths(m, x).accepting;
            if (acc != want || (acc % 2 != 0) != (fam.classify(n, x) == Verdict3::Positive)) ++bad;
        }
    }
    double dt = seconds_since(t0);
    report(6, "parity-dot-count", bad == 0 && dt < 60.0,
           std::to_string(total) + " instances at n=2,4, " + std::to_string(bad) + " mismatches, " +
               std::to_string(dt) + "s");
}

// 7: the unique-difference machine accepts with at most one path.
void criterion7() {
    const PromiseFamily& fam = family("LU");
    Nfa m = build_machine("LU", 2).nfa();
    // Unambiguity is promised on classified instances; off-promise the
    // accepting count equals the number of differing entries.
    int bad = 0, total = 0, promise = 0;
    for (const auto& u : padded_universe(2, 2, 2))
        for (const auto& v : padded_universe(2, 2, 2)) {
            ++total;
            std::string x = u + "#" + v;
            Int acc = count_paths(m, x).accepting;
            Verdict3 verdict = fam.classify(2, x);
            if (verdict == Verdict3::Invalid) continue;
            ++promise;
            if (acc != (verdict == Verdict3::Positive ? 1 : 0)) ++bad;
        }
    bool predicate = check_class_condition(ClassCond::OneU, m, "LU", 2, 0).all_pass();
    report(7, "unique-difference", bad == 0 && total == 81 && predicate,
           std::to_string(promise) + " promise instances among " + std::to_string(total) + " syntactic pairs, " +
               std::to_string(bad) + " breaks");
}

// 8: the set-difference machine accepts iff the entry sets differ.
void criterion8() {
    const PromiseFamily& fam = family("LN");
    Nfa m = build_machine("LN", 2).nfa();
    int bad = 0, total = 0;
    for (const auto& x : fam.enumerate(2, 0)) {
        ++total;
        auto hash = x.find('#');
        auto su = enc::entry_set(enc::padded_decode(x.substr(0, hash), 4));
        auto sv = enc::entry_set(enc::padded_decode(x.substr(hash + 1), 4));
        bool positive = count_paths(m, x).accepting > 0;
        if (positive != (su != sv) || positive != (fam.classify(2, x) == Verdict3::Positive)) ++bad;
    }
    report(8, "set-difference", bad == 0 && total == 625,
           std::to_string(total) + " instances, " + std::to_string(bad) + " mismatches");
}

// 9: reject-splitting turns accepting counts into gaps.
void criterion9() {
    std::mt19937_64 rng(109);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        std::string x = random_input(rng, "01", 4);
        if (gap_value(split_rejecting(m), x) != count_paths(m, x).accepting) ++bad;
    }
    bool cons = true;
    for (const char* name : {"example31", "LN"})
        cons = cons &&
               check_class_condition(ClassCond::OneP, split_rejecting(build_machine(name, 2).nfa()), name, 2, 0)
                   .all_pass();
    report(9, "reject-splitting", bad == 0 && cons,
           "200 machines, " + std::to_string(bad) + " mismatches; positive-gap condition " +
               (cons ? "holds" : "broken") + " for the counting families");
}

// 10: the stochastic bridge reproduces exact acceptance ratios.
void criterion10() {
    std::mt19937_64 rng(110);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        NormalFormResult nf = branching_normal_form(m);
        Pfa p = nfa_to_pfa(nf);
        std::string x = random_input(rng, "01", 4);
        Rat want(count_paths(nf.machine, x).accepting, pow_int(nf.degree, (int)x.size() + 2));
        if (pfa_probabilities(p, x).accept != want) ++bad;
    }
    int half_bad = 0;
    long half_total = 0;
    for (int n = 2; n <= 3; ++n) {
        Nfa comp = complement_gapwise(build_machine("Lsp", n).nfa());
        Pfa p = gap_balanced_pfa(comp);
        for (const auto& x : family("Lsp").enumerate(n, 0)) {
            ++half_total;
            if ((gap_value(comp, x) == 0) != (pfa_probabilities(p, x).accept == Rat(1, 2))) ++half_bad;
        }
    }
    report(10, "stochastic-bridge", bad == 0 && half_bad == 0,
           "100 ratio checks, " + std::to_string(bad) + " off; gap-zero vs one-half on " +
               std::to_string(half_total) + " instances, " + std::to_string(half_bad) + " off");
}

// 11: the spanning-set extension implication, plus a broken negative control.
void criterion11() {
    int bad = 0;
    long candidates = 0;
    for (int n = 2; n <= 3; ++n) {
        Nfa comp = complement_gapwise(build_machine("Lsp", n).nfa());
        Pfa p = gap_balanced_pfa(comp);
        struct Case { int m, l; const char* z; };
        for (const Case& c : {Case{3, 0, ""}, Case{4, 1, "#"}, Case{5, 2, "#0"}, Case{6, 3, "#00"},
                              Case{8, 4, "#000"}}) {
            ExtensionReport ext = check_cequal_extension(p, "Lsp", n, c.m, c.l, c.z);
            candidates += (long)ext.candidates_checked;
            if (!ext.violations.empty() || (int)ext.span.size() > p.num_states) ++bad;
        }
    }
    ExtensionReport broken = check_cequal_extension(flat_chain(), "LN", 2, 19, 9, "100001100");
    report(11, "extension-implication", bad == 0 && !broken.violations.empty(),
           std::to_string(candidates) + " suffix candidates clean across n=2,3 and l<=4; negative control raised " +
               std::to_string(broken.violations.size()) + " violations");
}

// 12: the pushdown recognizer matches its classifier in a single turn.
void criterion12() {
    const PromiseFamily& fam = family("Ldot");
    int bad = 0;
    long total = 0;
    Int ssc = 0;
    for (int n = 2; n <= 3; ++n) {
        Dpda d = build_machine("Ldot", n).dpda();
        ssc = stack_state_complexity(d);
        for (const auto& x : fam.enumerate(n, 0)) {
            ++total;
            Verdict3 v = fam.classify(n, x);
            DpdaOutcome out = dpda_run(d, x);
            bool ok = (v == Verdict3::Positive) == (out.verdict == DpdaOutcome::Verdict::Accept) &&
                      (v == Verdict3::Negative) == (out.verdict == DpdaOutcome::Verdict::Reject) && out.turns == 1;
            if (!ok) ++bad;
        }
    }
    report(12, "pushdown-one-turn", bad == 0,
           std::to_string(total) + " instances at n<=3, " + std::to_string(bad) + " breaks, ssc(n=3)=" + str(ssc));
}

// 13: transducer compilation realizes the emitted code as a count or gap.
void criterion13() {
    Dft ident;
    ident.num_states = 1;
    ident.alphabet = "01";
    ident.output_alphabet = "01";
    for (char c : std::string("01") + LEND + REND)
        ident.delta[{0, c}] = {0, c == LEND || c == REND ? "" : std::string(1, c)};
    Nfa counter = counter_from_transducer(ident);
    Nfa gapper = gap_from_transducer(ident);
    int bad = 0;
    long total = 0;
    for (const auto& w : all_strings("01", 6)) {
        ++total;
        Int v = 0;
        for (char c : w) v = 2 * v + (c - '0');
        bool ok = count_paths(counter, "1" + w).accepting == v && gap_value(gapper, "1" + w) == v &&
                  gap_value(gapper, "0" + w) == -v;
        if (!ok) ++bad;
    }
    report(13, "transducer-compilation", bad == 0,
           std::to_string(total) + " codes up to 7 digits, " + std::to_string(bad) + " mismatches");
}

// 14: homomorphic image and preimage preserve accepting counts.
void criterion14() {
    std::mt19937_64 rng(114);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        // the image machine reads the coded alphabet, the inverse one the plain
        Nfa over_img = random_nfa(rng, 5, "01");
        Nfa over_dom = random_nfa(rng, 5, "ab");
        // prefix-free non-erasing code
        std::map<char, std::string> h;
        for (char c : std::string("ab")) {
            std::string img(1, c == 'a' ? '0' : '1');
            for (int k = int(rng() % 3); k > 0; --k) img.push_back(char('0' + rng() % 2));
            h[c] = img;
        }
        std::string x = random_input(rng, "ab", 4);
        std::string hx;
        for (char c : x) hx += h[c];
        bool ok = count_paths(hom_image(over_img, h), x).accepting == count_paths(over_img, hx).accepting;
        ok = ok && count_paths(hom_inverse(over_dom, h), hx).accepting == count_paths(over_dom, x).accepting;
        if (!ok) ++bad;
    }
    report(14, "homomorphism-closure", bad == 0, "100 random triples, " + std::to_string(bad) + " mismatches");
}

// 15: value-level operations match reference big-integer arithmetic.
void criterion15() {
    std::mt19937_64 rng(115);
    int bad = 0;
    for (int i = 0; i < 10'000; ++i) {
        Int a = Int(rng() % 2'000'000) - 1'000'000, b = Int(rng() % 2'000'000) - 1'000'000;
        bool ok = funop_apply("add", a, b) == a + b && funop_apply("mul", a, b) == a * b &&
                  funop_apply("max", a, b) == std::max(a, b) && funop_apply("min", a, b) == std::min(a, b) &&
                  funop_apply("propersub", a, b) == (a > b ? Int(a - b) : Int(0)) &&
                  funop_apply("dec1", a) == (a > 0 ? Int(a - 1) : Int(0));
        if (b != 0) {
            Int r = a - funop_apply("intdiv", a, b) * b;  // floor division leaves a remainder with b's sign
            ok = ok && r * (b > 0 ? 1 : -1) >= 0 && abs(r) < abs(b);
        }
        Int hlf = funop_apply("half", a);
        ok = ok && 2 * hlf <= a && a <= 2 * hlf + 1;
        if (!ok) ++bad;
    }
    report(15, "value-operations", bad == 0, "10000 operand pairs, " + std::to_string(bad) + " mismatches");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    criterion14();
    criterion15();
    return g_all_pass ? 0 : 1;
}

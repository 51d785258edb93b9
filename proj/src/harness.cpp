#include "harness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "analysis.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "semantics.hpp"

namespace cfa {

namespace {

const char* cond_name(ClassCond c) {
    switch (c) {
        case ClassCond::OneN: return "1N";
        case ClassCond::OneU: return "1U";
        case ClassCond::OneParity: return "1parity";
        case ClassCond::OneCeq: return "1Ceq";
        case ClassCond::OneSP: return "1SP";
        case ClassCond::OneP: return "1P";
    }
    return "?";
}

bool cond_uses_gap(ClassCond c) {
    return c == ClassCond::OneCeq || c == ClassCond::OneSP || c == ClassCond::OneP;
}

bool cond_holds(ClassCond c, Verdict3 v, const Int& f) {
    bool pos = v == Verdict3::Positive;
    switch (c) {
        case ClassCond::OneN: return pos ? f > 0 : f == 0;
        case ClassCond::OneU: return pos ? f == 1 : f == 0;
        case ClassCond::OneParity: return pos ? f % 2 != 0 : f % 2 == 0;
        case ClassCond::OneCeq: return pos ? f == 0 : f != 0;
        case ClassCond::OneSP: return pos ? f == 1 : f == 0;
        case ClassCond::OneP: return pos ? f > 0 : f <= 0;
    }
    return false;
}

// Rolls many trials into a single PASS/FAIL line, keeping the first failure.
struct Tally {
    int runs = 0, fails = 0;
    std::string first_failure;

    void note(bool ok, const std::string& detail) {
        ++runs;
        if (!ok && fails++ == 0) first_failure = detail;
    }
    CheckResult done(const std::string& id) const {
        std::string d = std::to_string(runs) + " trials";
        if (fails) d += ", " + std::to_string(fails) + " failed, first: " + first_failure;
        return {id, fails == 0 && runs > 0, d};
    }
};

void push(SuiteReport& rep, const std::string& id, bool pass, const std::string& detail) {
    rep.checks.push_back({id, pass, detail});
}

std::string str(const Int& v) { return v.str(); }

// --- semantics suite -------------------------------------------------------

void suite_semantics(SuiteReport& rep, std::mt19937_64& rng, int scale) {
    Tally oracle, roundtrip;
    for (int i = 0; i < 40 * scale; ++i) {
        Nfa m = random_nfa(rng, 6, rng() % 2 ? "01" : "012");
        std::string x = random_input(rng, m.alphabet, 5);
        PathCounts table = count_paths(m, x);
        try {
            PathCounts walked = tally(enumerate_paths(m, x, 200'000));
            oracle.note(table == walked,
                        "x='" + x + "' table a/r/i " + str(table.accepting) + "/" + str(table.rejecting) + "/" +
                            str(table.improper));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CapExceeded) throw;
        }
        Machine back = parse_machine(serialize_machine(wrap_nfa(m)));
        roundtrip.note(count_paths(back.nfa(), x) == table, "x='" + x + "' counts changed after reserialization");
    }
    rep.checks.push_back(oracle.done("semantics.oracle"));
    rep.checks.push_back(roundtrip.done("semantics.roundtrip"));
}

// --- constructions suite ----------------------------------------------------

void suite_constructions(SuiteReport& rep, std::mt19937_64& rng, int scale) {
    Tally complete, bnf_counts, bnf_bound, flips, split, square, sum, sync, gsum, gprod, meet, compl_, diff, bridge;
    for (int i = 0; i < 25 * scale; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        Nfa n = random_nfa(rng, 5, "01");
        std::string x = random_input(rng, "01", 4);
        PathCounts cm = count_paths(m, x), cn = count_paths(n, x);
        std::string tag = "x='" + x + "'";

        PathCounts cc = count_paths(complete_paths(m), x);
        complete.note(cc.accepting == cm.accepting && cc.improper == 0, tag);

        NormalFormResult nf = branching_normal_form(m);
        PathCounts cb = count_paths(nf.machine, x);
        Int pw = 1;
        for (std::size_t j = 0; j < x.size() + 2; ++j) pw *= nf.degree;
        bnf_counts.note(cb.accepting == cm.accepting && cb.accepting + cb.rejecting == pw && cb.improper == 0, tag);
        bnf_bound.note(Int(nf.machine.num_states) <= 3 * Int(m.num_states) + nf.degree + 2, tag);

        PathCounts cf = count_paths(flip(m), x);
        flips.note(cf.accepting == cm.rejecting && cf.rejecting == cm.accepting && cf.improper == cm.improper, tag);

        split.note(gap_value(split_rejecting(m), x) == cm.accepting, tag);

        Int g = cm.accepting - cm.rejecting, h = cn.accepting - cn.rejecting;
        square.note(gap_value(square_gap(m), x) == g * g, tag);

        PathCounts cs = count_paths(disjoint_sum(m, n), x);
        sum.note(cs.accepting == cm.accepting + cn.accepting && cs.rejecting == cm.rejecting + cn.rejecting &&
                     cs.improper == cm.improper + cn.improper,
                 tag);

        sync.note(count_paths(sync_product(m, n), x).accepting == cm.accepting * cn.accepting, tag);
        gsum.note(gap_value(gap_sum(m, n), x) == g + h, tag);
        gprod.note(gap_value(gap_product(m, n), x) == g * h, tag);

        // meet_cequal completes its operands, so their improper paths count as rejects.
        Int rm = cm.rejecting + cm.improper, rn = cn.rejecting + cn.improper;
        Int mix = cm.accepting * rn + rm * cn.accepting;
        PathCounts ct = count_paths(meet_cequal(m, n), x);
        meet.note(ct.accepting == cm.accepting * cn.accepting + mix && ct.rejecting == rm * rn + mix, tag);

        compl_.note(gap_value(complement_gapwise(m), x) == 1 - g, tag);
        diff.note(gap_value(gap_of_difference(m, n), x) == cm.accepting - cn.accepting, tag);

        PfaResult pr = pfa_probabilities(nfa_to_pfa(nf), x);
        bridge.note(pr.accept == Rat(cb.accepting, pw) && pr.other == 0, tag);
    }
    rep.checks.push_back(complete.done("completepaths.accepting"));
    rep.checks.push_back(bnf_counts.done("bnf.counts"));
    rep.checks.push_back(bnf_bound.done("bnf.scbound"));
    rep.checks.push_back(flips.done("flip.swap"));
    rep.checks.push_back(split.done("Nvscequal.split"));
    rep.checks.push_back(square.done("cequal.square"));
    rep.checks.push_back(sum.done("closure.sum"));
    rep.checks.push_back(sync.done("closure.sync"));
    rep.checks.push_back(gsum.done("closure.gapsum"));
    rep.checks.push_back(gprod.done("closure.gapprod"));
    rep.checks.push_back(meet.done("cequal.meet"));
    rep.checks.push_back(compl_.done("complement.gap"));
    rep.checks.push_back(diff.done("gapdiff.counts"));
    rep.checks.push_back(bridge.done("pfa.bridge"));

    Tally himg, hinv;
    for (int i = 0; i < 10 * scale; ++i) {
        Nfa over_img = random_nfa(rng, 5, "01");  // reads images, pulled back to the domain
        Nfa over_dom = random_nfa(rng, 5, "ab");  // reads domain letters, pushed to the image
        // Distinct first letters keep the code prefix-free for the inverse case.
        std::map<char, std::string> h;
        h['a'] = "0" + random_input(rng, "01", 2);
        h['b'] = "1" + random_input(rng, "01", 2);
        std::string x = random_input(rng, "ab", 3), hx;
        for (char c : x) hx += h.at(c);
        himg.note(count_paths(hom_image(over_img, h), x).accepting == count_paths(over_img, hx).accepting,
                  "x='" + x + "'");
        hinv.note(count_paths(hom_inverse(over_dom, h), hx).accepting == count_paths(over_dom, x).accepting,
                  "x='" + x + "'");
    }
    rep.checks.push_back(himg.done("hom.image"));
    rep.checks.push_back(hinv.done("hom.inverse"));

    // Identity transducer: the counter must decode its own emitted code.
    Dft ident;
    ident.num_states = 1;
    ident.alphabet = "01";
    for (char c : std::string("01") + LEND + REND) ident.delta[{0, c}] = {0, c == LEND || c == REND ? "" : std::string(1, c)};
    ident.output_alphabet = "01";
    Nfa counter = counter_from_transducer(ident);
    Nfa gapper = gap_from_transducer(ident);
    Tally tcount, tgap;
    for (int v = 0; v <= 20; ++v) {
        std::string mag;
        for (int b = v; b > 0; b /= 2) mag.insert(mag.begin(), char('0' + b % 2));
        tcount.note(count_paths(counter, "1" + mag).accepting == v, "v=" + std::to_string(v));
        tgap.note(gap_value(gapper, "1" + mag) == v && gap_value(gapper, "0" + mag) == -v, "v=" + std::to_string(v));
    }
    rep.checks.push_back(tcount.done("transducer.counter"));
    rep.checks.push_back(tgap.done("transducer.gap"));
}

// --- families suite ---------------------------------------------------------

void merge(SuiteReport& rep, const SuiteReport& sub) {
    rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
}

void suite_families(SuiteReport& rep, int scale) {
    merge(rep, check_class_condition(ClassCond::OneN, build_machine("example31", 2).nfa(), "example31", 2, 0));
    merge(rep, check_class_condition(ClassCond::OneSP, build_machine("Lsp", 2).nfa(), "Lsp", 2, scale > 1 ? 4 : 3));
    merge(rep, check_class_condition(ClassCond::OneCeq, complement_gapwise(build_machine("Lsp", 2).nfa()), "Lsp", 2,
                                     scale > 1 ? 4 : 3));
    merge(rep, check_class_condition(ClassCond::OneU, build_machine("LU", 2).nfa(), "LU", 2, 0));
    merge(rep, check_class_condition(ClassCond::OneSP, split_rejecting(build_machine("LU", 2).nfa()), "LU", 2, 0));
    merge(rep, check_class_condition(ClassCond::OneN, build_machine("LN", 2).nfa(), "LN", 2, 0));
    merge(rep, check_class_condition(ClassCond::OneParity, build_machine("Lparity", 2).nfa(), "Lparity", 2, 0));
    if (scale > 1)
        merge(rep, check_class_condition(ClassCond::OneParity, build_machine("Lparity", 4).nfa(), "Lparity", 4, 0));

    // The pushdown family runs deterministically; verdicts must match the
    // classifier and every accepted-or-rejected run makes exactly one turn.
    Tally dot;
    const PromiseFamily& fam = family("Ldot");
    Dpda d = build_machine("Ldot", 2).dpda();
    for (int n = 2; n <= (scale > 1 ? 3 : 2); ++n)
        for (const auto& x : fam.enumerate(n, 0)) {
            Verdict3 v = fam.classify(n, x);
            DpdaOutcome out = dpda_run(d, x);
            bool ok = (v == Verdict3::Positive) == (out.verdict == DpdaOutcome::Verdict::Accept) &&
                      (v == Verdict3::Negative) == (out.verdict == DpdaOutcome::Verdict::Reject) && out.turns == 1;
            dot.note(ok, "x='" + x + "'");
        }
    rep.checks.push_back(dot.done("family.Ldot.verdict"));

    bool no_machine = false;
    try {
        build_machine("LblockU", 2);
    } catch (const Error& e) {
        no_machine = e.code() == ErrorCode::NoMachine;
    }
    push(rep, "family.LblockU.classifieronly", no_machine && !family("LblockU").enumerate(2, 0).empty(),
         "classifier and enumerator only");
}

// --- analysis suite ---------------------------------------------------------

void suite_analysis(SuiteReport& rep, std::mt19937_64& rng, int scale) {
    // The gap-complemented chain machine has gap 0 exactly on Positive
    // strings, so the balanced bridge hits probability 1/2 exactly there.
    Pfa p = gap_balanced_pfa(complement_gapwise(build_machine("Lsp", 2).nfa()));

    std::vector<std::string> prefixes{""};
    for (char a : std::string("01#"))
        for (char b : std::string("01#")) prefixes.push_back(std::string{a} + b);
    for (char a : std::string("01#")) prefixes.push_back(std::string(1, a));
    std::sort(prefixes.begin(), prefixes.end(),
              [](const auto& l, const auto& r) { return l.size() != r.size() ? l.size() < r.size() : l < r; });
    std::vector<std::string> span = spanning_prefix_set(p, prefixes);
    push(rep, "span.size", (int)span.size() <= p.num_states,
         std::to_string(span.size()) + " spanning prefixes, " + std::to_string(p.num_states) + " states");

    Tally decomp;
    for (const auto& w : prefixes) {
        AffineDecomposition dec = affine_decomposition(p, span, w);
        std::vector<Rat> recon(p.num_states, Rat(0));
        for (std::size_t j = 0; j < span.size(); ++j) {
            auto v = prefix_vector(p, span[j]).vec;
            for (int r = 0; r < p.num_states; ++r) recon[r] += dec.coefficients[j] * v[r];
        }
        decomp.note(recon == prefix_vector(p, w).vec, "w='" + w + "'");
    }
    rep.checks.push_back(decomp.done("span.decompose"));

    ExtensionReport ext = check_cequal_extension(p, "Lsp", 2, scale > 1 ? 4 : 3, 1, "#");
    push(rep, "cequal.extension", ext.violations.empty() && ext.candidates_checked > 0,
         std::to_string(ext.candidates_checked) + " candidates, " + std::to_string(ext.violations.size()) +
             " violations");

    auto sp = sign_pattern("Lsp", 2, {"0#", "00#"}, "0");
    auto su = sign_pattern("Lsp", 2, {"0#"}, "#");  // '0#' + '#' has two separators: invalid
    push(rep, "analysis.signpattern", sp && *sp == "01" && !su, sp ? "pattern " + *sp : "undefined");

    Tally fun;
    for (int i = 0; i < 200 * scale; ++i) {
        Int a = Int(rng() % 1'000'000) - 500'000, b = Int(rng() % 1'000'000) - 500'000;
        std::string tag = "a=" + str(a) + " b=" + str(b);
        bool ok = funop_apply("add", a, b) == a + b && funop_apply("mul", a, b) == a * b &&
                  funop_apply("max", a, b) == std::max(a, b) && funop_apply("min", a, b) == std::min(a, b) &&
                  funop_apply("propersub", a, b) == (a > b ? Int(a - b) : Int(0)) &&
                  funop_apply("dec1", a) == (a > 0 ? Int(a - 1) : Int(0));
        if (b != 0) {
            Int r = a - funop_apply("intdiv", a, b) * b;  // floor division: remainder has b's sign
            ok = ok && r * (b > 0 ? 1 : -1) >= 0 && abs(r) < abs(b);
        }
        Int hlf = funop_apply("half", a, std::nullopt);
        ok = ok && 2 * hlf <= a && a <= 2 * hlf + 1;
        fun.note(ok, tag);
    }
    rep.checks.push_back(fun.done("analysis.funop"));
}

// --- negative controls ------------------------------------------------------

void suite_negative(SuiteReport& rep, std::mt19937_64& rng) {
    // Deliberately broken claims; the expected report shows FAIL lines here.
    for (int i = 0; i < 50; ++i) {
        Nfa m = random_nfa(rng, 5, "01");
        std::string x = random_input(rng, "01", 4);
        if (gap_value(m, x) == 0) continue;
        push(rep, "negctl.flipgap", gap_value(flip(m), x) == gap_value(m, x), "broken claim: flip preserves the gap");
        break;
    }
    // A memoryless chain has one-dimensional prefix geometry, so its spanning
    // set degenerates to a single base element.  The set-disjointness family
    // tells base elements apart by suffix, so the extension implication breaks.
    Pfa flat;
    flat.num_states = 1;
    flat.alphabet = "01#";
    flat.initial = {Rat(1)};
    for (char c : std::string("01#") + LEND + REND) flat.matrices[c] = {{Rat(1)}};
    std::string z = "100001100";  // right half fixed to the padded sequence (1,2)
    ExtensionReport ext = check_cequal_extension(flat, "LN", 2, 19, 9, z);
    push(rep, "negctl.extension", ext.violations.empty(),
         std::to_string(ext.violations.size()) + " violations under a degenerate machine");
}

}  // namespace

ClassCond class_cond_from_name(const std::string& name) {
    for (ClassCond c : {ClassCond::OneN, ClassCond::OneU, ClassCond::OneParity, ClassCond::OneCeq, ClassCond::OneSP,
                        ClassCond::OneP})
        if (name == cond_name(c)) return c;
    fail(ErrorCode::RangeError, "unknown class condition '" + name + "'");
}

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string SuiteReport::render() const {
    std::ostringstream out;
    out << "suite " << suite << " seed " << seed << " scale " << scale << "\n";
    int passed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
        passed += c.pass;
    }
    out << "checks " << checks.size() << " passed " << passed << " failed " << checks.size() - passed << "\n";
    return out.str();
}

SuiteReport check_class_condition(ClassCond cond, const Nfa& machine, const std::string& family_name, int n,
                                  int max_len) {
    const PromiseFamily& fam = family(family_name);
    std::string ma = machine.alphabet, fa = fam.alphabet;
    std::sort(ma.begin(), ma.end());
    std::sort(fa.begin(), fa.end());
    if (ma != fa)
        fail(ErrorCode::AlphabetMismatch,
             "machine alphabet '" + machine.alphabet + "' does not match family alphabet '" + fam.alphabet + "'");

    SuiteReport rep;
    rep.suite = "classcond";
    rep.scale = "exhaustive";
    Tally t;
    for (const auto& x : fam.enumerate(n, max_len)) {
        Verdict3 v = fam.classify(n, x);
        if (v == Verdict3::Invalid) continue;
        Int f = cond_uses_gap(cond) ? gap_value(machine, x) : count_paths(machine, x).accepting;
        t.note(cond_holds(cond, v, f), "x='" + x + "' " + verdict_name(v) + " f=" + str(f));
    }
    rep.checks.push_back(
        t.done("classcond." + std::string(cond_name(cond)) + "." + family_name + ".n" + std::to_string(n)));
    return rep;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, const std::string& scale, bool negative_control) {
    int mult;
    if (scale == "small") mult = 1;
    else if (scale == "full") mult = 4;
    else fail(ErrorCode::ScaleError, "scale must be 'small' or 'full', got '" + scale + "'");

    SuiteReport rep;
    rep.suite = name;
    rep.seed = seed;
    rep.scale = scale;
    std::mt19937_64 rng(seed);

    bool all = name == "all";
    bool known = all;
    if (all || name == "semantics") suite_semantics(rep, rng, mult), known = true;
    if (all || name == "constructions") suite_constructions(rep, rng, mult), known = true;
    if (all || name == "families") suite_families(rep, mult), known = true;
    if (all || name == "analysis") suite_analysis(rep, rng, mult), known = true;
    if (!known) fail(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
    if (negative_control) suite_negative(rep, rng);
    return rep;
}

Nfa random_nfa(std::mt19937_64& rng, int max_states, const std::string& alphabet) {
    Nfa m;
    m.num_states = 2 + int(rng() % (std::uint64_t)(max_states - 1));
    m.alphabet = alphabet;
    m.start = int(rng() % (std::uint64_t)m.num_states);
    for (State q = 0; q < m.num_states; ++q) {
        switch (rng() % 10) {
            case 0: case 1: m.accept.insert(q); break;
            case 2: case 3: m.reject.insert(q); break;
            default: break;
        }
    }
    std::string syms = alphabet;
    syms.push_back(LEND);
    syms.push_back(REND);
    for (State q = 0; q < m.num_states; ++q) {
        if (m.halting(q)) continue;
        for (char c : syms) {
            std::uint64_t roll = rng() % 100;
            int k = roll < 15 ? 0 : roll < 65 ? 1 : roll < 90 ? 2 : 3;
            std::set<State> targets;
            while ((int)targets.size() < std::min(k, m.num_states)) targets.insert(int(rng() % (std::uint64_t)m.num_states));
            for (State t : targets) m.add_edge(q, c, t);
        }
    }
    return m;
}

std::string random_input(std::mt19937_64& rng, const std::string& alphabet, int max_len) {
    std::string x;
    std::uint64_t len = rng() % (std::uint64_t)(max_len + 1);
    for (std::uint64_t i = 0; i < len; ++i) x.push_back(alphabet[rng() % alphabet.size()]);
    return x;
}

}  // namespace cfa

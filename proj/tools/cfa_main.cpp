// Command-line front end; talks to the core only through the C interface.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfa.h"

namespace {

// Exit codes: 0 success / all checks pass, 1 failed checks or run-time errors,
// 2 usage and parse problems.
int die(int status) {
    std::fprintf(stderr, "error: %s\n", cfa_last_error());
    return status == CFA_PARSE_ERROR ? 2 : 1;
}

struct MachineHandle {
    cfa_machine* m = nullptr;
    ~MachineHandle() { cfa_machine_free(m); }
};

struct StringOut {
    char* s = nullptr;
    ~StringOut() { cfa_string_free(s); }
};

int load(const std::string& path, MachineHandle& h) { return cfa_machine_read_file(path.c_str(), &h.m); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counting and gap semantics for small nondeterministic machines"};
    app.require_subcommand(1);

    std::string machine_path, input, out_path, op, name, scale = "small", cond, mapping, z, suffix;
    std::vector<std::string> operands, prefixes;
    int n = 2, max_len = 0, par_m = 0, par_l = 0;
    std::uint64_t seed = 0;
    bool negative = false;

    auto* count = app.add_subcommand("count", "exact accepting/rejecting/improper path counts");
    count->add_option("--machine", machine_path)->required();
    count->add_option("--input", input)->required();

    auto* gap = app.add_subcommand("gap", "accepting minus rejecting path count");
    gap->add_option("--machine", machine_path)->required();
    gap->add_option("--input", input)->required();

    auto* pfa = app.add_subcommand("pfa", "exact acceptance probabilities");
    pfa->add_option("--machine", machine_path)->required();
    pfa->add_option("--input", input)->required();

    auto* run = app.add_subcommand("run", "run a pushdown machine");
    run->add_option("--machine", machine_path)->required();
    run->add_option("--input", input)->required();

    auto* construct = app.add_subcommand("construct", "build a machine from operand machines");
    construct->add_option("op", op)->required();
    construct->add_option("inputs", operands, "operand machine files");
    construct->add_option("--map", mapping, "homomorphism, e.g. a=01,b=10");
    construct->add_option("-o,--output", out_path)->required();

    auto* family = app.add_subcommand("family", "promise-problem families");
    family->require_subcommand(1);
    auto add_family_opts = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--name", name)->required();
        sub->add_option("--n", n)->required();
        if (needs_input) sub->add_option("--input", input)->required();
        else sub->add_option("--max-len", max_len);
    };
    auto* fgen = family->add_subcommand("gen", "enumerate promise instances");
    add_family_opts(fgen, false);
    auto* fclassify = family->add_subcommand("classify", "classify one string");
    add_family_opts(fclassify, true);
    auto* fmachine = family->add_subcommand("machine", "emit the witness machine");
    add_family_opts(fmachine, false);
    fmachine->add_option("-o,--output", out_path);

    auto* analyze = app.add_subcommand("analyze", "exact-rational prefix-vector analysis");
    analyze->require_subcommand(1);
    auto* aspan = analyze->add_subcommand("span", "spanning prefix subset");
    aspan->add_option("--machine", machine_path, "probabilistic machine file")->required();
    aspan->add_option("--prefix", prefixes, "candidate prefixes in order")->required();
    auto* aext = analyze->add_subcommand("cequal-extension", "extension implication report");
    aext->add_option("--machine", machine_path)->required();
    aext->add_option("--family", name)->required();
    aext->add_option("--n", n)->required();
    aext->add_option("--m", par_m)->required();
    aext->add_option("--l", par_l)->required();
    aext->add_option("--z", z);
    auto* asign = analyze->add_subcommand("sign-pattern", "per-prefix classification bits");
    asign->add_option("--family", name)->required();
    asign->add_option("--n", n)->required();
    asign->add_option("--prefix", prefixes)->required();
    asign->add_option("--suffix", suffix)->required();

    std::string fop, fa, fb;
    auto* afun = analyze->add_subcommand("funop", "arbitrary-precision value operation");
    afun->add_option("op", fop, "add, mul, propersub, intdiv, dec1, half, max or min")->required();
    afun->add_option("a", fa)->required();
    afun->add_option("b", fb, "second operand for the binary operations");

    auto* classcond = app.add_subcommand("classcond", "check a class condition over a family");
    classcond->add_option("--condition", cond, "1N, 1U, 1parity, 1Ceq, 1SP or 1P")->required();
    classcond->add_option("--machine", machine_path)->required();
    classcond->add_option("--family", name)->required();
    classcond->add_option("--n", n)->required();
    classcond->add_option("--max-len", max_len);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", name, "semantics, constructions, families, analysis or all")->required();
    verify->add_option("--seed", seed);
    verify->add_option("--scale", scale, "small or full");
    verify->add_flag("--negative-control", negative, "also run checks expected to FAIL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    int rc;
    if (*count || *gap) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        if (*count) {
            StringOut a, r, i;
            if ((rc = cfa_count_paths(m.m, input.c_str(), &a.s, &r.s, &i.s))) return die(rc);
            std::printf("accepting %s\nrejecting %s\nimproper %s\n", a.s, r.s, i.s);
        } else {
            StringOut g;
            if ((rc = cfa_gap_value(m.m, input.c_str(), &g.s))) return die(rc);
            std::printf("gap %s\n", g.s);
        }
    } else if (*pfa) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        StringOut a, r, o;
        if ((rc = cfa_pfa_probabilities(m.m, input.c_str(), &a.s, &r.s, &o.s))) return die(rc);
        std::printf("accept %s\nreject %s\nother %s\n", a.s, r.s, o.s);
    } else if (*run) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        StringOut v;
        std::uint64_t steps = 0;
        int turns = 0;
        if ((rc = cfa_dpda_run(m.m, input.c_str(), &v.s, &steps, &turns))) return die(rc);
        StringOut ssc;
        if ((rc = cfa_stack_state_complexity(m.m, &ssc.s))) return die(rc);
        std::printf("verdict %s\nsteps %llu\nturns %d\nssc %s\n", v.s, (unsigned long long)steps, turns, ssc.s);
    } else if (*construct) {
        MachineHandle result;
        if (op == "homimage" || op == "hominverse") {
            if (operands.size() != 1 || mapping.empty()) {
                std::fprintf(stderr, "error: %s needs one operand machine and --map\n", op.c_str());
                return 2;
            }
            MachineHandle a;
            if ((rc = load(operands[0], a))) return die(rc);
            if ((rc = cfa_construct_hom(op.c_str(), a.m, mapping.c_str(), &result.m))) return die(rc);
        } else {
            if (operands.empty() || operands.size() > 2) {
                std::fprintf(stderr, "error: construct takes one or two operand machines\n");
                return 2;
            }
            MachineHandle a, b;
            if ((rc = load(operands[0], a))) return die(rc);
            if (operands.size() == 2 && (rc = load(operands[1], b))) return die(rc);
            if ((rc = cfa_construct(op.c_str(), a.m, b.m, &result.m))) return die(rc);
        }
        if ((rc = cfa_machine_write_file(result.m, out_path.c_str()))) return die(rc);
        std::printf("wrote %s %s\n", cfa_machine_kind(result.m), out_path.c_str());
    } else if (*fgen) {
        StringOut lines;
        if ((rc = cfa_family_enumerate(name.c_str(), n, max_len, &lines.s))) return die(rc);
        std::fputs(lines.s, stdout);
    } else if (*fclassify) {
        StringOut v;
        if ((rc = cfa_family_classify(name.c_str(), n, input.c_str(), &v.s))) return die(rc);
        std::printf("%s\n", v.s);
    } else if (*fmachine) {
        MachineHandle m;
        if ((rc = cfa_family_machine(name.c_str(), n, &m.m))) return die(rc);
        if (out_path.empty()) {
            StringOut text;
            if ((rc = cfa_machine_serialize(m.m, &text.s))) return die(rc);
            std::fputs(text.s, stdout);
        } else {
            if ((rc = cfa_machine_write_file(m.m, out_path.c_str()))) return die(rc);
            std::printf("wrote %s %s\n", cfa_machine_kind(m.m), out_path.c_str());
        }
    } else if (*aspan) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        std::string joined;
        for (const auto& p : prefixes) joined += p + "\n";
        StringOut span;
        if ((rc = cfa_analyze_span(m.m, joined.c_str(), &span.s))) return die(rc);
        std::fputs(span.s, stdout);
    } else if (*aext) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        StringOut report;
        int violations = 0;
        if ((rc = cfa_analyze_cequal_extension(m.m, name.c_str(), n, par_m, par_l, z.c_str(), &report.s, &violations)))
            return die(rc);
        std::fputs(report.s, stdout);
        return violations == 0 ? 0 : 1;
    } else if (*asign) {
        std::string joined;
        for (const auto& p : prefixes) joined += p + "\n";
        StringOut pattern;
        if ((rc = cfa_analyze_sign_pattern(name.c_str(), n, joined.c_str(), suffix.c_str(), &pattern.s)))
            return die(rc);
        std::printf("%s\n", pattern.s);
    } else if (*afun) {
        StringOut result;
        if ((rc = cfa_funop(fop.c_str(), fa.c_str(), afun->count("b") ? fb.c_str() : nullptr, &result.s)))
            return die(rc);
        std::printf("%s\n", result.s);
    } else if (*classcond) {
        MachineHandle m;
        if ((rc = load(machine_path, m))) return die(rc);
        StringOut report;
        int pass = 0;
        if ((rc = cfa_check_class_condition(cond.c_str(), m.m, name.c_str(), n, max_len, &report.s, &pass)))
            return die(rc);
        std::fputs(report.s, stdout);
        return pass ? 0 : 1;
    } else if (*verify) {
        StringOut report;
        int pass = 0;
        if ((rc = cfa_run_suite(name.c_str(), seed, scale.c_str(), negative ? 1 : 0, &report.s, &pass)))
            return die(rc);
        std::fputs(report.s, stdout);
        return pass ? 0 : 1;
    }
    return 0;
}

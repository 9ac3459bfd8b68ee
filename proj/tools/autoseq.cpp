// autoseq -- command-line front end: evaluate built-in or user-supplied
// automatic sequences, compile and decide first-order formulas about them,
// run the named query pipelines, and cross-check every pipeline stage
// against brute force.
//
// Exit codes: 0 success (or decided true), 1 decided false / verification
// mismatch (with --assert where applicable), 2 usage or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "autoseq/compiler.hpp"
#include "autoseq/io.hpp"
#include "autoseq/oracle.hpp"
#include "autoseq/parser.hpp"
#include "autoseq/queries.hpp"
#include "autoseq/regex.hpp"

using namespace autoseq;

namespace {

Dfao load_sequence(const std::string& spec) {
    if (spec == "tm") return thue_morse();
    if (spec == "rs") return rudin_shapiro();
    if (spec == "pf") return paperfolding();
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot open sequence '" + spec + "'");
    return read_dfao(in);
}

std::string format_value(const Dfao& m, int v) {
    for (int o : m.output)
        if (o < 0 && v > 0) return "+" + std::to_string(v);
    return std::to_string(v);
}

void print_stages(std::ostream& out, const CompilationTrace& trace) {
    for (const auto& st : trace.stages) {
        out << st.label << ": " << st.raw_states << " states minimized to " << st.min_states
            << " states";
        if (st.via_reversal) out << " (determinized via reversal)";
        out << "\n";
    }
}

void write_dfa_file(const Dfa& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_automaton(out, d);
}

void write_dot_file(const Dfa& d, const std::string& path, const std::string& name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_dot(out, d, name);
}

SequenceEnv parse_bindings(const std::vector<std::string>& binds) {
    SequenceEnv env;
    for (const std::string& b : binds) {
        auto eq = b.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("binding must look like NAME=tm|rs|pf|file: '" + b + "'");
        env.sequences.emplace(b.substr(0, eq), load_sequence(b.substr(eq + 1)));
    }
    return env;
}

int cmd_eval(const std::string& seq_spec, uint64_t n) {
    Dfao m = load_sequence(seq_spec);
    std::cout << format_value(m, m.run(n)) << "\n";
    return 0;
}

int cmd_query(const std::string& name, const std::vector<std::string>& seqs,
              const std::string& out_path, const std::string& dot_path,
              const std::string& regex_check, bool currie_saari, size_t state_budget) {
    CompileOptions copts;
    copts.limits.max_states = state_budget;
    if (name == "unbordered") {
        if (seqs.size() != 1) throw std::runtime_error("unbordered takes exactly one --seq");
        Dfao seq = load_sequence(seqs[0]);
        PipelineOptions popts;
        popts.limits.max_states = state_budget;
        PipelineResult r = unbordered_lengths(seq, popts);
        print_stages(std::cout, r.trace);
        std::cout << "Final language: " << (r.empty ? "empty" : r.infinite ? "infinite" : "finite")
                  << (r.universal ? " (universal)" : "") << "\n";
        if (r.witness)
            std::cout << "Shortest length with no unbordered factor (n > 1): " << *r.witness
                      << "\n";
        std::cout << "Convention: lengths 0 and 1 always have unbordered factors"
                     " (outside the machine's domain)\n";
        if (!regex_check.empty()) {
            Dfa ref = minimize(
                saturate(determinize(reverse(determinize(regex_to_nfa(regex_check, 2))))));
            bool eq = equivalent(r.final_dfa, ref);
            std::cout << "Regex check (reverse of " << regex_check << "): "
                      << (eq ? "equivalent" : "NOT equivalent") << "\n";
        }
        if (currie_saari)
            std::cout << "Currie-Saari containment (accepted set within n = 1 mod 6): "
                      << (currie_saari_check(r) ? "holds" : "fails") << "\n";
        if (!out_path.empty()) write_dfa_file(r.final_dfa, out_path);
        if (!dot_path.empty()) write_dot_file(r.final_dfa, dot_path, "unbordered");
        std::cout << "Time: " << r.trace.total_millis / 1000.0 << " s\n";
        return 0;
    }
    if (name == "shift") {
        if (seqs.size() != 2) throw std::runtime_error("shift takes exactly two --seq");
        Dfao x = load_sequence(seqs[0]), y = load_sequence(seqs[1]);
        Dfa d = shift_of(x, y, copts);
        if (auto w = shortest_accepted(d))
            std::cout << "shift: yes, witness c = " << decode(*w)[0] << "\n";
        else
            std::cout << "shift: no\n";
        if (!out_path.empty()) write_dfa_file(d, out_path);
        if (!dot_path.empty()) write_dot_file(d, dot_path, "shift");
        return 0;
    }
    if (name == "overlapfree" || name == "squarefree" || name == "ultimately-periodic") {
        if (seqs.size() != 1) throw std::runtime_error(name + " takes exactly one --seq");
        Dfao seq = load_sequence(seqs[0]);
        bool v = name == "overlapfree"  ? is_overlapfree(seq, copts)
                 : name == "squarefree" ? is_squarefree(seq, copts)
                                        : is_ultimately_periodic(seq, copts);
        std::cout << (v ? "true" : "false") << "\n";
        return 0;
    }
    throw std::runtime_error("unknown query '" + name + "'");
}

int cmd_decide(const std::string& formula_text, const std::string& formula_file,
               const std::vector<std::string>& binds, bool assert_true, size_t state_budget) {
    std::string text = formula_text;
    if (!formula_file.empty()) {
        std::ifstream in(formula_file);
        if (!in) throw std::runtime_error("cannot open formula file '" + formula_file + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    if (text.empty()) throw std::runtime_error("no formula given (use --formula or --file)");
    SequenceEnv env = parse_bindings(binds);
    CompileOptions copts;
    copts.limits.max_states = state_budget;

    FormulaPtr f = parse_formula(text);
    if (free_vars(f).empty()) {
        bool v = decide(f, env, copts);
        std::cout << (v ? "true" : "false") << "\n";
        return (assert_true && !v) ? 1 : 0;
    }
    auto w = witness(f, env, copts);
    if (w) {
        std::cout << "witness:";
        for (auto& [var, val] : *w) std::cout << ' ' << var << " = " << val;
        std::cout << "\n";
        return 0;
    }
    std::cout << "no witness (unsatisfiable)\n";
    return assert_true ? 1 : 0;
}

int cmd_verify(const std::string& pipeline, const std::string& seq_spec, uint64_t bound,
               bool paper_bounds, unsigned threads, size_t state_budget,
               const std::string& check_final) {
    if (pipeline != "unbordered") throw std::runtime_error("unknown pipeline '" + pipeline + "'");
    Dfao seq = load_sequence(seq_spec);
    PipelineOptions popts;
    popts.limits.max_states = state_budget;
    PipelineResult r = unbordered_lengths(seq, popts);
    print_stages(std::cout, r.trace);
    if (!check_final.empty()) {
        // cross-check a previously exported final automaton in place of the
        // pipeline's; a corrupted file shows up as stage-4 counterexamples
        std::ifstream in(check_final);
        if (!in) throw std::runtime_error("cannot open '" + check_final + "'");
        r.final_dfa = read_dfa(in);
        if (r.final_dfa.alphabet.arity != 1 ||
            r.final_dfa.alphabet.base != seq.dfa.alphabet.base)
            throw std::runtime_error("--check-final: automaton must be single-track, same base");
    }

    UnborderedCheckOptions opts;
    opts.bound = bound;
    opts.paper_bounds = paper_bounds;
    opts.threads = threads;
    auto reports = check_unbordered_stages(seq, r.stage1, r.stage2, r.stage3, r.final_dfa, opts);
    bool all_pass = true;
    for (const auto& rep : reports) {
        write_report(std::cout, rep);
        all_pass = all_pass && rep.pass();
    }
    return all_pass ? 0 : 1;
}

int cmd_export(const std::string& seq_spec, const std::string& out_path,
               const std::string& dot_path) {
    Dfao m = load_sequence(seq_spec);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        write_dfao(out, m);
    }
    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) throw std::runtime_error("cannot write '" + dot_path + "'");
        write_dot(out, m.dfa, "sequence", &m.output);
    }
    if (out_path.empty() && dot_path.empty()) write_dfao(std::cout, m);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"autoseq: first-order theorem proving for k-automatic sequences"};
    app.require_subcommand(1);

    std::string eval_seq;
    uint64_t eval_n = 0;
    auto* eval = app.add_subcommand("eval", "evaluate a sequence at an index");
    eval->add_option("seq", eval_seq, "tm|rs|pf or a DFAO file")->required();
    eval->add_option("n", eval_n, "index")->required();

    std::string query_name, query_out, query_dot, query_regex;
    std::vector<std::string> query_seqs;
    bool query_currie = false;
    size_t state_budget = DeterminizeLimits{}.max_states;
    auto* query = app.add_subcommand("query", "run a named decision pipeline");
    query->add_option("name", query_name,
                      "unbordered|shift|overlapfree|squarefree|ultimately-periodic")
        ->required();
    query->add_option("--seq", query_seqs, "sequence (repeat for shift)")->required();
    query->add_option("--out", query_out, "write the final automaton (text format)");
    query->add_option("--emit-dot", query_dot, "write the final automaton as DOT");
    query->add_option("--regex-check,--emit-regex-check", query_regex,
                      "check the final machine against the reversal of this regex");
    query->add_flag("--currie-saari", query_currie,
                    "report whether accepted lengths all satisfy n = 1 (mod 6)");
    query->add_option("--state-budget", state_budget,
                      "subset-construction budget before the reversal route");

    std::string decide_formula, decide_file;
    std::vector<std::string> decide_binds;
    bool decide_assert = false;
    auto* dec = app.add_subcommand("decide", "decide a formula (or find a witness)");
    dec->add_option("--formula", decide_formula, "formula text");
    dec->add_option("--file", decide_file, "file containing the formula");
    dec->add_option("--bind", decide_binds, "sequence binding NAME=tm|rs|pf|file");
    dec->add_flag("--assert", decide_assert, "exit 1 when false/unsatisfiable");
    dec->add_option("--state-budget", state_budget);

    std::string verify_pipeline, verify_seq, verify_check_final;
    uint64_t verify_bound = 200;
    bool verify_paper = false;
    unsigned verify_threads = 0;
    auto* ver = app.add_subcommand("verify", "cross-check pipeline stages against brute force");
    ver->add_option("pipeline", verify_pipeline, "unbordered")->required();
    ver->add_option("--seq", verify_seq, "tm|rs|pf or a DFAO file")->required();
    ver->add_option("--bound", verify_bound, "per-variable box bound (default 200)");
    ver->add_flag("--paper-bounds", verify_paper, "use the 1400 box on stages 2-4");
    ver->add_option("--threads", verify_threads, "sweep threads (default: hardware)");
    ver->add_option("--check-final", verify_check_final,
                    "cross-check this automaton file as the final machine");
    ver->add_option("--state-budget", state_budget);

    std::string export_seq, export_out, export_dot;
    auto* exp = app.add_subcommand("export", "write a sequence automaton (text or DOT)");
    exp->add_option("seq", export_seq, "tm|rs|pf or a DFAO file")->required();
    exp->add_option("--out", export_out, "output file (default: stdout)");
    exp->add_option("--emit-dot", export_dot, "DOT output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(eval_seq, eval_n);
        if (*query)
            return cmd_query(query_name, query_seqs, query_out, query_dot, query_regex,
                             query_currie, state_budget);
        if (*dec)
            return cmd_decide(decide_formula, decide_file, decide_binds, decide_assert,
                              state_budget);
        if (*ver)
            return cmd_verify(verify_pipeline, verify_seq, verify_bound, verify_paper,
                              verify_threads, state_budget, verify_check_final);
        if (*exp) return cmd_export(export_seq, export_out, export_dot);
    } catch (const ParseError& e) {
        std::cerr << "formula error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include "opendef/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "opendef/decide.hpp"
#include "opendef/errors.hpp"
#include "opendef/hard_family.hpp"
#include "opendef/reductions.hpp"
#include "opendef/structure.hpp"
#include "opendef/synthesis.hpp"

namespace opendef {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// path "-" sends the text to out instead of a file.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    f << text;
}

std::string format3(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << v;
    return ss.str();
}

std::string provenance_comment(const GadgetInstance& g) {
    std::string text = "# reduction: " + g.provenance.problem + "\n";
    text += "# k: " + std::to_string(g.provenance.k) + "\n";
    text += "# fresh:";
    for (const auto& [label, element] : g.provenance.relabeling) {
        text += ' ';
        text += label;
        text += '>';
        text += std::to_string(element);
    }
    text += '\n';
    if (g.provenance.problem == "clique") {
        text += "# kappa: " + std::to_string(param_kappa(g.target)) + "\n";
    }
    return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"open definability toolkit", "opendef"};
    app.require_subcommand(1);

    std::string decide_file;
    bool decide_oracle = false;
    int decide_threads = 1;
    CLI::App* cmd_decide = app.add_subcommand("decide", "decide open definability of the target");
    cmd_decide->add_option("file", decide_file, "instance file")->required();
    cmd_decide->add_flag("--oracle", decide_oracle, "use the exhaustive reference decider");
    cmd_decide->add_option("--threads", decide_threads, "worker threads")
        ->check(CLI::PositiveNumber);

    std::string witness_file;
    CLI::App* cmd_witness =
        app.add_subcommand("witness", "print a definability counterexample or NONE");
    cmd_witness->add_option("file", witness_file, "instance file")->required();

    std::string synth_file;
    bool synth_no_verify = false;
    CLI::App* cmd_synth = app.add_subcommand("synth", "synthesize a defining open formula");
    cmd_synth->add_option("file", synth_file, "instance file")->required();
    cmd_synth->add_flag("--no-verify", synth_no_verify, "skip extension verification");

    std::string mc_file;
    std::string mc_sentence;
    CLI::App* cmd_mc = app.add_subcommand("mc", "model-check an existential sentence");
    cmd_mc->add_option("file", mc_file, "structure file")->required();
    cmd_mc->add_option("--sentence", mc_sentence,
                       "sentence text; defaults to the sentence line in the file");

    CLI::App* cmd_reduce =
        app.add_subcommand("reduce", "rewrite graph problems and definability questions");
    cmd_reduce->require_subcommand(1);

    std::string rp_file;
    std::string rp_out = "-";
    int rp_k = 0;
    CLI::App* cmd_rp = cmd_reduce->add_subcommand(
        "induced-path", "definability instance that fails iff the graph has an induced k-path");
    cmd_rp->add_option("file", rp_file, "graph file")->required();
    cmd_rp->add_option("-k", rp_k, "path length in vertices")->required();
    cmd_rp->add_option("-o", rp_out, "output file, - for stdout");

    std::string rc_file;
    std::string rc_out = "-";
    int rc_k = 0;
    CLI::App* cmd_rc = cmd_reduce->add_subcommand(
        "clique", "definability instance that fails iff the graph has a k-clique");
    cmd_rc->add_option("file", rc_file, "graph file")->required();
    cmd_rc->add_option("-k", rc_k, "clique size")->required();
    cmd_rc->add_option("-o", rc_out, "output file, - for stdout");

    std::string rm_file;
    std::string rm_out = "-";
    CLI::App* cmd_rm = cmd_reduce->add_subcommand(
        "mc", "model-checking instance satisfiable iff the target is not definable");
    cmd_rm->add_option("file", rm_file, "instance file")->required();
    cmd_rm->add_option("-o", rm_out, "output file, - for stdout");

    CLI::App* cmd_gen = app.add_subcommand("gen", "generate instance families");
    cmd_gen->require_subcommand(1);
    int gh_n = 0;
    std::string gh_out = "-";
    CLI::App* cmd_gh = cmd_gen->add_subcommand("hard", "matrix family member over 4n elements");
    cmd_gh->add_option("-n", gh_n, "family index, at least 3")->required();
    cmd_gh->add_option("-o", gh_out, "output file, - for stdout");

    int cf_n = 0;
    std::string cf_alpha = "rows";
    CLI::App* cmd_cf =
        app.add_subcommand("check-family", "report how the family formulas behave");
    cmd_cf->add_option("-n", cf_n, "family index, at least 3")->required();
    cmd_cf->add_option("--alpha", cf_alpha, "alpha variant")
        ->check(CLI::IsMember({"rows", "columns"}));

    std::string stats_file;
    CLI::App* cmd_stats = app.add_subcommand("stats", "size measures of an instance");
    cmd_stats->add_option("file", stats_file, "instance file")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_decide->parsed()) {
            Instance inst = parse_instance(slurp(decide_file));
            Verdict v = decide_oracle ? decide_naive_slice(inst.structure, inst.target)
                                      : decide(inst.structure, inst.target, decide_threads);
            if (v.definable) {
                out << "DEFINABLE\n";
            } else {
                out << "NOT_DEFINABLE\n" << to_text(*v.witness) << '\n';
            }
        } else if (cmd_witness->parsed()) {
            Instance inst = parse_instance(slurp(witness_file));
            Verdict v = decide(inst.structure, inst.target);
            if (v.witness) {
                out << to_text(*v.witness) << '\n';
            } else {
                out << "NONE\n";
            }
        } else if (cmd_synth->parsed()) {
            Instance inst = parse_instance(slurp(synth_file));
            SynthesisResult r = synthesize(inst.structure, inst.target, !synth_no_verify);
            if (r.formula) {
                out << to_text(*r.formula) << '\n';
            } else {
                out << "NOT_DEFINABLE\n" << to_text(*r.witness) << '\n';
            }
        } else if (cmd_mc->parsed()) {
            ParsedFile pf = parse_mc_file(slurp(mc_file));
            std::string text = mc_sentence;
            if (text.empty()) {
                if (!pf.sentence_line) {
                    throw std::invalid_argument(
                        "mc: no --sentence given and the file has no sentence line");
                }
                text = *pf.sentence_line;
            }
            ExistSentence sentence = parse_sentence(text, pf.structure.vocab());
            McResult r = mc_exists(pf.structure, sentence);
            if (r.sat) {
                out << "SAT\nassignment:";
                for (int v : *r.witness) out << ' ' << v;
                out << '\n';
            } else {
                out << "UNSAT\n";
            }
        } else if (cmd_rp->parsed()) {
            ParsedFile pf = parse_mc_file(slurp(rp_file));
            GadgetInstance g = reduce_induced_path(pf.structure, rp_k);
            emit(rp_out, provenance_comment(g) + print_instance(g.structure, g.target), out);
        } else if (cmd_rc->parsed()) {
            ParsedFile pf = parse_mc_file(slurp(rc_file));
            GadgetInstance g = reduce_clique(pf.structure, rc_k);
            emit(rc_out, provenance_comment(g) + print_instance(g.structure, g.target), out);
        } else if (cmd_rm->parsed()) {
            Instance inst = parse_instance(slurp(rm_file));
            auto [structure, sentence] = reduce_to_mc(inst.structure, inst.target);
            emit(rm_out, print_structure(structure) + to_text(sentence) + "\n", out);
        } else if (cmd_gh->parsed()) {
            HardInstance hi = gen_hard(gh_n);
            std::string text = "# matrix family member n=" + std::to_string(gh_n) + "\n";
            text += "# element blocks: a=0.. b=n.. c=2n.. pad=3n..; target is the base matrix\n";
            text += print_instance(hi.structure, hi.target);
            emit(gh_out, text, out);
        } else if (cmd_cf->parsed()) {
            AlphaVariant variant =
                cf_alpha == "columns" ? AlphaVariant::columns : AlphaVariant::rows;
            out << to_text(verify_family(cf_n, variant));
        } else if (cmd_stats->parsed()) {
            Instance inst = parse_instance(slurp(stats_file));
            SizeReport r = size_measures(inst.structure, inst.target);
            out << "size_vocab: " << format3(r.size_vocab) << '\n';
            out << "size_structure: " << format3(r.size_structure) << '\n';
            out << "size_instance: " << format3(r.size_instance) << '\n';
            out << "kappa: " << param_kappa(inst.target) << '\n';
        }
        return 0;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace opendef

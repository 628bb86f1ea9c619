// Command-line surface for the equality-constraint toolkit.
//
// Exit codes: 0 success; 1 negative domain verdict under --fail-on-violates
// (or an unsatisfiable csp instance under the same flag); 2 usage errors;
// 3 resource-cap errors.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqlat/classify.hpp"
#include "eqlat/continuum.hpp"
#include "eqlat/csp.hpp"
#include "eqlat/lang.hpp"
#include "eqlat/preserve.hpp"
#include "eqlat/unilattice.hpp"

using nlohmann::json;
using namespace eqlat;

namespace {

int partition_cap() {
    if (const char* env = std::getenv("EQ_PARTITION_CAP")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return kDefaultPartitionCap;
}

json report_base(int cap) {
    json j;
    j["version"] = kLibraryVersion;
    j["partition_cap"] = cap;
    return j;
}

json partition_json(const Partition& p) {
    json a = json::array();
    for (int b : p) a.push_back(b + 1); // 1-based block ids, as in text output
    return a;
}

json relation_json(const OrbitRelation& rel) {
    json j;
    j["arity"] = rel.arity;
    json orbits = json::array();
    for (const auto& p : rel.orbits) orbits.push_back(partition_json(p));
    j["orbits"] = orbits;
    return j;
}

json witness_json(const ViolationWitness& w) {
    json j;
    j["inputs"] = w.inputs;
    j["output"] = w.output;
    j["output_pattern"] = partition_json(w.output_pattern);
    return j;
}

std::string monoid_to_string(const MonoidDescriptor& m) {
    if (m.top) return "TOP";
    if (m.is_I()) return "I";
    if (m.is_Iplus()) return "I+";
    std::string s = "{";
    for (std::size_t i = 0; i < m.antichain.size(); ++i) {
        if (i) s += ", ";
        s += kernel_tuple_to_string(m.antichain[i]);
    }
    return s + "}";
}

json monoid_json(const MonoidDescriptor& m) {
    json j;
    j["display"] = monoid_to_string(m);
    j["top"] = m.top;
    json chain = json::array();
    for (const auto& t : m.antichain) chain.push_back(kernel_tuple_to_string(t));
    j["antichain"] = chain;
    return j;
}

struct Resolver {
    LanguageFile lang;
    bool loaded = false;
    int cap;

    OrbitRelation relation(const std::string& spec) const {
        if (loaded) {
            auto it = lang.relations.find(spec);
            if (it != lang.relations.end()) return it->second;
        }
        auto [name, p1, p2] = eqlat::detail::parse_builtin_spec(spec);
        (void)p2;
        return builtin_relation(name, p1, cap);
    }
    PatternOperation operation(const std::string& spec) const {
        if (loaded) {
            auto it = lang.operations.find(spec);
            if (it != lang.operations.end()) return it->second;
        }
        auto [name, p1, p2] = eqlat::detail::parse_builtin_spec(spec);
        return builtin_operation(name, p1, p2);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision procedures for equality constraint languages"};
    app.require_subcommand(1);
    int cap = partition_cap();
    std::uint64_t budget = kDefaultPreserveBudget;
    bool as_json = false;
    app.add_option("--budget", budget, "node budget for the exact preservation engine");
    app.add_flag("--json", as_json, "emit a canonical JSON report");

    std::string lang_path;

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "locate a language in the clone lattice");
    std::string classify_file;
    int rchain_max = 0;
    cmd_classify->add_option("language", classify_file, "a .lang file")->required();
    cmd_classify->add_option("--rchain", rchain_max, "also compute the f_k chain profile up to k");

    // preserve
    auto* cmd_preserve = app.add_subcommand("preserve", "does an operation preserve a relation?");
    std::string opt_op, opt_rel;
    std::uint64_t samples = 0, seed = 1;
    int pool = 0;
    bool exact = false, fail_on_violates = false;
    cmd_preserve->add_option("--op", opt_op, "operation (builtin spec or .lang name)")->required();
    cmd_preserve->add_option("--rel", opt_rel, "relation (builtin spec or .lang name)")->required();
    cmd_preserve->add_option("--lang", lang_path, "language file for name resolution");
    cmd_preserve->add_flag("--exact", exact, "run the exact symbolic search");
    cmd_preserve->add_option("--samples", samples, "sampled verdict with this many samples");
    cmd_preserve->add_option("--seed", seed, "sampling seed");
    cmd_preserve->add_option("--pool", pool, "sampling value pool size (default 4*arity)");
    cmd_preserve->add_flag("--fail-on-violates", fail_on_violates, "exit 1 on a violation");

    // ppeval
    auto* cmd_ppeval = app.add_subcommand("ppeval", "evaluate a pp formula to an orbit relation");
    std::string pp_text;
    cmd_ppeval->add_option("formula", pp_text, "e.g. \"exists u: R(x,y,u) & u != x\"")->required();
    cmd_ppeval->add_option("--lang", lang_path, "language file supplying base relations");

    // ppsearch
    auto* cmd_ppsearch = app.add_subcommand("ppsearch", "search for a pp definition of a target");
    std::string target_spec;
    PpSearchLimits limits;
    cmd_ppsearch->add_option("--target", target_spec, "target relation")->required();
    cmd_ppsearch->add_option("--lang", lang_path, "language file supplying base relations");
    cmd_ppsearch->add_option("--max-bound", limits.max_bound_vars, "max bound variables");
    cmd_ppsearch->add_option("--max-atoms", limits.max_atoms, "max conjuncts");
    cmd_ppsearch->add_option("--search-budget", limits.budget, "candidate formulas to verify");

    // order cmp
    auto* cmd_order = app.add_subcommand("order", "the generation order on kernel tuples");
    auto* cmd_order_cmp = cmd_order->add_subcommand("cmp", "compare two kernel tuples");
    std::string tuple_a, tuple_b;
    cmd_order_cmp->add_option("a", tuple_a, "e.g. \"(1,1,w)\"")->required();
    cmd_order_cmp->add_option("b", tuple_b, "e.g. \"(2,w)\"")->required();

    // monoid of
    auto* cmd_monoid = app.add_subcommand("monoid", "unary polymorphism monoids");
    auto* cmd_monoid_of = cmd_monoid->add_subcommand("of", "monoid of a relation");
    std::string monoid_rel;
    cmd_monoid_of->add_option("relation", monoid_rel, "relation spec")->required();
    cmd_monoid_of->add_option("--lang", lang_path, "language file for name resolution");

    // continuum
    auto* cmd_cont = app.add_subcommand("continuum", "the antichain family C_n / H_n");
    int cont_n = 3;
    std::vector<int> cont_k;
    std::uint64_t cont_samples = 10'000, cont_seed = 42;
    cmd_cont->add_option("--n", cont_n, "family index (3 or 4)")->required();
    cmd_cont->add_option("--k", cont_k, "cross-check H_n against C_k (repeatable)");
    cmd_cont->add_option("--samples", cont_samples, "samples per cross-check");
    cmd_cont->add_option("--seed", cont_seed, "sampling seed");

    // csp solve
    auto* cmd_csp = app.add_subcommand("csp", "constraint satisfaction");
    auto* cmd_csp_solve = cmd_csp->add_subcommand("solve", "solve an instance file");
    std::string csp_file;
    bool use_brute = false;
    cmd_csp_solve->add_option("instance", csp_file, "a .csp instance file")->required();
    cmd_csp_solve->add_flag("--brute", use_brute, "use the brute-force oracle");
    cmd_csp_solve->add_flag("--fail-on-violates", fail_on_violates, "exit 1 on Unsat");

    // formula
    auto* cmd_formula = app.add_subcommand("formula", "equality-formula utilities");
    std::string formula_mode, formula_text;
    cmd_formula->add_option("mode", formula_mode, "reduce | classify | expand")->required();
    cmd_formula->add_option("text", formula_text, "the formula")->required();

    // global flags (--json, --budget) may appear after any subcommand
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Resolver res;
        res.cap = cap;
        if (!lang_path.empty()) {
            res.lang = load_language(lang_path, cap);
            res.loaded = true;
        }

        if (*cmd_classify) {
            LanguageFile lf = load_language(classify_file, cap);
            Language gamma;
            for (const auto& name : lf.relation_order) gamma.push_back(lf.relations.at(name));
            ClonePosition pos = classify_language(gamma, cap, budget);
            CspVerdict verdict = csp_verdict(gamma, cap, budget);
            json j = report_base(cap);
            j["relations"] = lf.relation_order;
            j["monoid"] = monoid_json(pos.monoid);
            j["case"] = interval_case_to_string(pos);
            if (pos.kind == IntervalKind::II) {
                j["flags"] = {{"above_H", pos.flags.above_H},
                              {"above_B", pos.flags.above_B},
                              {"inside_S", pos.flags.inside_S},
                              {"above_R", pos.flags.above_R}};
            }
            j["csp"] = {{"polynomial", verdict.polynomial}, {"reason", verdict.reason}};
            if (rchain_max >= 3) {
                json chain = json::array();
                for (const auto& e : rchain_profile(gamma, rchain_max, 4, 20'000, 1, budget))
                    chain.push_back({{"k", e.k},
                                     {"preserves", e.preserves},
                                     {"exact", e.exact},
                                     {"samples", e.samples},
                                     {"seed", e.seed}});
                j["rchain"] = chain;
            }
            if (as_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "monoid: " << monoid_to_string(pos.monoid) << "\n"
                          << "case: " << interval_case_to_string(pos) << "\n";
                if (pos.kind == IntervalKind::II)
                    std::cout << "flags: above_H=" << pos.flags.above_H
                              << " above_B=" << pos.flags.above_B
                              << " inside_S=" << pos.flags.inside_S
                              << " above_R=" << pos.flags.above_R << "\n";
                std::cout << "csp: "
                          << (verdict.polynomial ? "PolynomialTime(" + verdict.reason + ")"
                                                 : "NPComplete")
                          << "\n";
                if (j.contains("rchain"))
                    for (const auto& e : j["rchain"])
                        std::cout << "f_" << e["k"] << ": "
                                  << (e["preserves"].get<bool>() ? "preserves" : "violates")
                                  << (e["exact"].get<bool>() ? " (exact)" : " (sampled)") << "\n";
            }
            return 0;
        }

        if (*cmd_preserve) {
            PatternOperation op = res.operation(opt_op);
            OrbitRelation rel = res.relation(opt_rel);
            json j = report_base(cap);
            j["op"] = opt_op;
            j["rel"] = opt_rel;
            bool violates = false;
            if (samples == 0) exact = true;
            if (exact) {
                PreservationVerdict v = preserves_exact(op, rel, budget, cap);
                violates = !v.preserves;
                j["mode"] = "exact";
                j["verdict"] = v.preserves ? "Preserves" : "Violates";
                if (v.witness) j["witness"] = witness_json(*v.witness);
            } else {
                SampledVerdict v = preserves_sampled(op, rel, samples, seed, pool);
                violates = v.counterexample_found;
                j["mode"] = "sampled";
                j["samples"] = v.samples;
                j["seed"] = v.seed;
                j["verdict"] =
                    v.counterexample_found ? "CounterexampleFound" : "NoCounterexampleFound";
                if (v.witness) j["witness"] = witness_json(*v.witness);
            }
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else {
                std::cout << j["verdict"].get<std::string>() << "\n";
                if (j.contains("witness"))
                    std::cout << "witness output pattern: "
                              << j["witness"]["output_pattern"].dump() << "\n";
            }
            return fail_on_violates && violates ? 1 : 0;
        }

        if (*cmd_ppeval) {
            PpFormula pp = parse_pp_formula(pp_text);
            RelationEnv env = res.loaded ? res.lang.relations : RelationEnv{};
            OrbitRelation out = pp_evaluate(pp, env, cap);
            json j = report_base(cap);
            j["formula"] = pp_text;
            j["relation"] = relation_json(out);
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else {
                std::cout << "arity " << out.arity << ", " << out.orbits.size() << " orbits:\n";
                for (const auto& p : out.orbits) std::cout << "  " << partition_to_string(p) << "\n";
            }
            return 0;
        }

        if (*cmd_ppsearch) {
            OrbitRelation target = res.relation(target_spec);
            RelationEnv env = res.loaded ? res.lang.relations : RelationEnv{};
            auto found = pp_search_bounded(target, env, limits, cap);
            json j = report_base(cap);
            j["target"] = target_spec;
            j["found"] = found.has_value();
            if (found) {
                json atoms = json::array();
                auto var = [&](int i) {
                    int nf = static_cast<int>(found->free_variables.size());
                    return i < nf ? found->free_variables[static_cast<std::size_t>(i)]
                                  : found->bound_variables[static_cast<std::size_t>(i - nf)];
                };
                for (const auto& a : found->conjuncts) {
                    if (a.kind == PpAtom::Kind::Eq)
                        atoms.push_back(var(a.args[0]) + " = " + var(a.args[1]));
                    else if (a.kind == PpAtom::Kind::Neq)
                        atoms.push_back(var(a.args[0]) + " != " + var(a.args[1]));
                    else {
                        std::string s = a.relation + "(";
                        for (std::size_t i = 0; i < a.args.size(); ++i)
                            s += (i ? ", " : "") + var(a.args[static_cast<std::size_t>(i)]);
                        atoms.push_back(s + ")");
                    }
                }
                j["bound_variables"] = found->bound_variables;
                j["conjuncts"] = atoms;
            }
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else if (found) {
                std::cout << "found:";
                if (!found->bound_variables.empty()) {
                    std::cout << " exists";
                    for (std::size_t i = 0; i < found->bound_variables.size(); ++i)
                        std::cout << (i ? "," : " ") << found->bound_variables[i];
                    std::cout << ":";
                }
                for (std::size_t i = 0; i < j["conjuncts"].size(); ++i)
                    std::cout << (i ? " & " : " ") << j["conjuncts"][i].get<std::string>();
                std::cout << "\n";
            } else
                std::cout << "no definition found within the limits\n";
            return 0;
        }

        if (*cmd_order_cmp) {
            KernelTuple a = parse_kernel_tuple(tuple_a);
            KernelTuple b = parse_kernel_tuple(tuple_b);
            bool leq = seq_leq(a, b);
            json j = report_base(cap);
            j["a"] = kernel_tuple_to_string(a);
            j["b"] = kernel_tuple_to_string(b);
            j["a_leq_b"] = leq;
            j["b_leq_a"] = seq_leq(b, a);
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else
                std::cout << (leq ? "true" : "false") << "\n";
            return 0;
        }

        if (*cmd_monoid_of) {
            OrbitRelation rel = res.relation(monoid_rel);
            MonoidDescriptor m = monoid_of_relation(rel);
            json j = report_base(cap);
            j["relation"] = monoid_rel;
            j["monoid"] = monoid_json(m);
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else
                std::cout << monoid_to_string(m) << "\n";
            return 0;
        }

        if (*cmd_cont) {
            HubieViolation v = hubie_violation_check(cont_n, cap);
            HubieOperation h = hubie_operation(cont_n, cap);
            json j = report_base(cap);
            j["n"] = cont_n;
            j["m"] = h.m;
            j["violation"] = {{"ok", v.ok},
                              {"witness",
                               {{"output", v.witness.output},
                                {"output_pattern", partition_json(v.witness.output_pattern)}}}};
            json cross = json::array();
            for (int k : cont_k) {
                GammaRelation ck = c_relation(k, cap);
                SampledVerdict sv = preserves_sampled(h.op, ck.rel, cont_samples, cont_seed, 4 * k);
                cross.push_back({{"k", k},
                                 {"samples", sv.samples},
                                 {"seed", sv.seed},
                                 {"verdict", sv.counterexample_found ? "CounterexampleFound"
                                                                     : "NoCounterexampleFound"}});
            }
            j["cross"] = cross;
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else {
                std::cout << "H_" << cont_n << ": m = " << h.m << ", violates C_" << cont_n << ": "
                          << (v.ok ? "yes" : "NO") << ", output pattern "
                          << partition_to_string(v.witness.output_pattern) << "\n";
                for (const auto& c : cross)
                    std::cout << "H_" << cont_n << " vs C_" << c["k"] << ": "
                              << c["verdict"].get<std::string>() << " (" << c["samples"]
                              << " samples, seed " << c["seed"] << ")\n";
            }
            return 0;
        }

        if (*cmd_csp_solve) {
            InstanceFile inst = load_instance(csp_file);
            // resolve the language file relative to the instance file
            std::string dir;
            std::size_t slash = csp_file.find_last_of('/');
            if (slash != std::string::npos) dir = csp_file.substr(0, slash + 1);
            std::string lp = inst.language_path;
            std::ifstream probe(lp);
            if (!probe && !dir.empty()) lp = dir + lp;
            LanguageFile lf = load_language(lp, cap);
            Language gamma;
            for (const auto& name : lf.relation_order) gamma.push_back(lf.relations.at(name));
            Solution sol;
            std::string method;
            if (use_brute) {
                sol = brute_solve(inst.instance, lf.relations);
                method = "brute";
            } else {
                CspVerdict verdict = csp_verdict(gamma, cap, budget);
                if (verdict.polynomial) {
                    sol = solve(inst.instance, lf.relations, verdict, cap);
                    method = verdict.reason;
                } else {
                    sol = brute_solve(inst.instance, lf.relations);
                    method = "brute (language is NP-complete)";
                }
            }
            json j = report_base(cap);
            j["instance"] = csp_file;
            j["method"] = method;
            j["sat"] = sol.sat;
            if (sol.sat) j["assignment"] = sol.assignment;
            if (as_json)
                std::cout << j.dump(2) << "\n";
            else if (sol.sat) {
                std::cout << "Sat:";
                for (const auto& [v, x] : sol.assignment) std::cout << " " << v << "=" << x;
                std::cout << "\n";
            } else
                std::cout << "Unsat\n";
            return fail_on_violates && !sol.sat ? 1 : 0;
        }

        if (*cmd_formula) {
            EqFormula f = parse_formula(formula_text);
            int arity = static_cast<int>(f.variables.size());
            CnfFormula cnf = to_cnf(f);
            json j = report_base(cap);
            j["input"] = formula_text;
            if (formula_mode == "reduce") {
                CnfFormula red = reduce(cnf, cap);
                j["reduced"] = cnf_to_string(red);
                if (as_json)
                    std::cout << j.dump(2) << "\n";
                else
                    std::cout << cnf_to_string(red) << "\n";
            } else if (formula_mode == "classify") {
                CnfFormula red = reduce(cnf, cap);
                FormulaClassFlags flags = classify_formula(red);
                j["horn"] = flags.horn;
                j["negative"] = flags.negative;
                j["connected_horn"] = flags.connected_horn;
                if (as_json)
                    std::cout << j.dump(2) << "\n";
                else
                    std::cout << "horn=" << flags.horn << " negative=" << flags.negative
                              << " connected_horn=" << flags.connected_horn << "\n";
            } else if (formula_mode == "expand") {
                CnfFormula red = reduce(cnf, cap);
                ExtendedHornFormula ext = expand_horn(to_extended_horn(red), cap);
                j["expanded"] = extended_horn_to_string(ext);
                if (as_json)
                    std::cout << j.dump(2) << "\n";
                else
                    std::cout << extended_horn_to_string(ext) << "\n";
            } else {
                std::cerr << "unknown formula mode: " << formula_mode << "\n";
                return 2;
            }
            (void)arity;
            return 0;
        }
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

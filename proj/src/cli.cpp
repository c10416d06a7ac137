#include "parclone/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parclone/closure.hpp"
#include "parclone/text_io.hpp"
#include "parclone/verify.hpp"

namespace parclone::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::vector<Value> parse_point(const std::string& text) {
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',' || c == '(' || c == ')') c = ' ';
    std::istringstream in(cleaned);
    std::vector<Value> pt;
    int v = 0;
    while (in >> v) {
        require(v >= 0 && v < kMaxDomain, "point coordinate out of range: " + std::to_string(v));
        pt.push_back(static_cast<Value>(v));
    }
    require(!pt.empty(), "empty point: " + text);
    return pt;
}

CheckParams parse_params(const std::vector<std::string>& items) {
    CheckParams params;
    for (const std::string& item : items) {
        std::istringstream in(item);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            const std::size_t eq = tok.find('=');
            require(eq != std::string::npos, "expected key=value in --params, got: " + tok);
            try {
                params[tok.substr(0, eq)] = std::stoll(tok.substr(eq + 1));
            } catch (const std::exception&) {
                throw invalid_input("cannot parse --params value in: " + tok);
            }
        }
    }
    return params;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    require(f.good(), "cannot write file: " + path);
    f << content;
}

struct EnumerateCmd {
    int k = 2, n = 1;
    std::vector<std::string> rels;
    bool total = false, count = false, allow_large = false;
    int threads = 0;
    std::string out_path;

    int run(std::ostream& out) const {
        FnFilter filter;
        for (const std::string& name : rels) filter.preserve.push_back(relation_from_spec(name));
        filter.total_only = total;
        EnumOptions opts;
        opts.allow_large = allow_large;
        opts.threads = threads;
        std::ostringstream buf;
        if (count) {
            buf << count_fns(k, n, filter, opts) << "\n";
        } else {
            bool first = true;
            for_each_fn(k, n, filter, [&](const PartialFn& f) {
                if (!first) buf << "\n";
                first = false;
                buf << format_pfn(f);
                return true;
            }, opts);
        }
        if (out_path.empty())
            out << buf.str();
        else
            write_file(out_path, buf.str());
        return kExitOk;
    }
};

struct ClosureCmd {
    int k = 2;
    std::vector<std::string> gen_files;
    int target = 3;
    int intermediate = 0;  // 0 = same as target
    bool strong = false;
    std::uint64_t max_size = 5'000'000;
    int max_rounds = 64;
    std::string out_path, stats_json;

    int run(std::ostream& out) const {
        std::vector<PartialFn> gens;
        for (const std::string& path : gen_files)
            for (PartialFn& f : load_pfn_file(path)) gens.push_back(std::move(f));
        ClosureConfig cfg;
        cfg.target_arity = target;
        cfg.intermediate_arity = intermediate == 0 ? target : intermediate;
        cfg.strong = strong;
        cfg.max_size = max_size;
        cfg.max_rounds = max_rounds;
        const ClosureResult res = generate(k, gens, cfg);

        std::vector<std::size_t> by_arity(static_cast<std::size_t>(cfg.target_arity) + 1, 0);
        for (const PartialFn& f : res.functions()) ++by_arity[static_cast<std::size_t>(f.arity())];
        out << "closure k=" << k << " target=" << cfg.target_arity
            << " intermediate=" << cfg.intermediate_arity << " strong=" << int(cfg.strong) << "\n"
            << "functions=" << res.functions().size()
            << " intermediates=" << res.intermediates().size()
            << " saturated=" << int(res.saturated()) << " rounds=" << res.stats().rounds
            << (res.stats().limit_hit.empty() ? "" : " limit=" + res.stats().limit_hit) << "\n";
        out << "by-arity:";
        for (int m = 1; m <= cfg.target_arity; ++m)
            out << " " << m << ":" << by_arity[static_cast<std::size_t>(m)];
        out << "\n";

        if (!out_path.empty()) save_closure(out_path, res);
        if (!stats_json.empty()) {
            nlohmann::json j;
            j["k"] = k;
            j["target_arity"] = cfg.target_arity;
            j["intermediate_arity"] = cfg.intermediate_arity;
            j["strong"] = cfg.strong;
            j["saturated"] = res.saturated();
            j["functions"] = res.functions().size();
            j["intermediates"] = res.intermediates().size();
            j["rounds"] = res.stats().rounds;
            j["compositions_attempted"] = res.stats().compositions_attempted;
            j["inserts"] = res.stats().inserts;
            j["tuplings_built"] = res.stats().tuplings_built;
            j["limit"] = res.stats().limit_hit;
            write_file(stats_json, j.dump(2) + "\n");
        }
        return res.saturated() ? kExitOk : kExitResource;
    }
};

struct MemberCmd {
    std::string cache_path, fn_path;
    bool assert_all = false;

    int run(std::ostream& out) const {
        const ClosureResult res = load_closure(cache_path);
        bool all = true;
        for (const PartialFn& f : load_pfn_file(fn_path)) {
            const bool member = res.contains(f);
            all = all && member;
            out << (member ? "true" : "false") << "\n";
        }
        return (assert_all && !all) ? kExitFail : kExitOk;
    }
};

struct PreservesCmd {
    std::string fn_path, rel_spec;
    bool assert_all = false;

    int run(std::ostream& out) const {
        const Relation rho = relation_from_spec(rel_spec);
        bool all = true;
        for (const PartialFn& f : load_pfn_file(fn_path)) {
            const bool ok = preserves(f, rho);
            all = all && ok;
            out << (ok ? "true" : "false") << "\n";
        }
        return (assert_all && !all) ? kExitFail : kExitOk;
    }
};

struct SeparateCmd {
    std::string pool_path;
    std::vector<std::string> rels;
    int k = 0, n = 0, m = 1;
    std::string b_text, mode = "all", json_path;
    std::uint64_t max_tuples = 10'000'000;

    int run(std::ostream& out) const {
        SeparationInstance inst;
        inst.m = m;
        if (!pool_path.empty()) {
            inst.pool = load_pfn_file(pool_path);
            require(!inst.pool.empty(), "pool file has no functions");
            inst.k = inst.pool.front().k();
            inst.n = inst.pool.front().arity();
            require(k == 0 || k == inst.k, "--k disagrees with the pool file");
            require(n == 0 || n == inst.n, "--n disagrees with the pool file");
        } else {
            require(k != 0 && n != 0, "inline pools need --k and --n");
            inst.k = k;
            inst.n = n;
            FnFilter filter;
            for (const std::string& name : rels)
                filter.preserve.push_back(relation_from_spec(name));
            filter.total_only = true;  // separation pools are total by definition
            inst.pool = enumerate_fns(inst.k, inst.n, filter);
        }
        inst.b = b_text.empty() ? std::vector<Value>(static_cast<std::size_t>(inst.n), 0)
                                : parse_point(b_text);
        require(mode == "all" || mode == "units", "--mode must be 'all' or 'units'");
        const WitnessMode wm =
            mode == "all" ? WitnessMode::all_points : WitnessMode::unit_vectors_only;
        const SeparationReport rep = exists_separating_family(inst, wm, max_tuples);

        out << "separate k=" << inst.k << " n=" << inst.n << " m=" << inst.m
            << " pool=" << inst.pool.size() << " mode=" << mode << " b=";
        for (std::size_t i = 0; i < inst.b.size(); ++i) out << (i ? "," : "") << int(inst.b[i]);
        out << "\n";
        const char* outcome = rep.outcome == SeparationReport::Outcome::separated_by
                                  ? "separated-by"
                                  : rep.outcome == SeparationReport::Outcome::no_family
                                        ? "no-family"
                                        : "resource-limit";
        out << "outcome: " << outcome << "\n";
        out << "tuples-examined: " << rep.tuples_examined << "\n";
        if (rep.outcome == SeparationReport::Outcome::separated_by) {
            out << "family:";
            for (std::uint32_t idx : rep.separating_indices) out << " #" << idx;
            out << "\n";
        }
        if (rep.outcome == SeparationReport::Outcome::no_family) {
            for (const TupleRefutation& r : rep.refutations) {
                out << "refuted:";
                for (std::uint32_t idx : r.indices) out << " #" << idx;
                out << " collision";
                for (std::size_t i = 0; i < r.collision.size(); ++i)
                    out << (i ? "," : " ") << int(r.collision[i]);
                out << "\n";
            }
        }
        if (!json_path.empty()) {
            nlohmann::json j;
            j["k"] = inst.k;
            j["n"] = inst.n;
            j["m"] = inst.m;
            j["pool"] = inst.pool.size();
            j["mode"] = mode;
            j["outcome"] = outcome;
            j["tuples_examined"] = rep.tuples_examined;
            nlohmann::json refs = nlohmann::json::array();
            for (const TupleRefutation& r : rep.refutations) {
                nlohmann::json e;
                e["pool_indices"] = r.indices;
                nlohmann::json pt = nlohmann::json::array();
                for (Value v : r.collision) pt.push_back(int(v));
                e["collision"] = pt;
                refs.push_back(std::move(e));
            }
            j["refutations"] = refs;
            j["separating_indices"] = rep.separating_indices;
            write_file(json_path, j.dump(2) + "\n");
        }
        return rep.outcome == SeparationReport::Outcome::resource_limit ? kExitResource : kExitOk;
    }
};

struct VerifyCmd {
    std::string check = "all";
    std::vector<std::string> params_items;
    std::string json_path;

    int run(std::ostream& out, std::ostream& err) const {
        const CheckParams params = parse_params(params_items);
        std::vector<CheckReport> reports;
        if (check == "all") {
            reports = run_all(params);
        } else {
            reports.push_back(run_check(check, params));
        }
        for (const CheckReport& r : reports) out << report_to_text(r) << "\n";
        double total_ms = 0;
        for (const CheckReport& r : reports) {
            err << r.check << ": " << r.millis << " ms\n";
            total_ms += r.millis;
        }
        err << "total: " << total_ms << " ms\n";
        if (!json_path.empty()) {
            nlohmann::json arr = nlohmann::json::array();
            for (const CheckReport& r : reports) arr.push_back(report_to_json(r));
            write_file(json_path, arr.dump(2) + "\n");
        }
        bool any_fail = false, any_limit = false;
        for (const CheckReport& r : reports) {
            any_fail = any_fail || r.verdict == Verdict::fail;
            any_limit = any_limit || r.verdict == Verdict::resource_limited;
        }
        if (any_fail) return kExitFail;
        if (any_limit) return kExitResource;
        return kExitOk;
    }
};

struct RelationsCmd {
    std::string name;
    bool props = false;

    int run(std::ostream& out) const {
        if (name.empty()) {
            for (const std::string& n : builtins::names()) out << n << "\n";
            return kExitOk;
        }
        const Relation rho = relation_from_spec(name);
        out << format_relation(rho);
        if (props && rho.arity() == 2)
            out << "order: " << (is_order(rho) ? "yes" : "no")
                << "\nbounded: " << (is_bounded_order(rho) ? "yes" : "no") << "\n";
        return kExitOk;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computation with partial functions and partial clones on small finite domains"};
    app.name("parclone");
    app.require_subcommand(1);

    EnumerateCmd ec;
    auto* enumerate = app.add_subcommand(
        "enumerate", "stream functions of one arity satisfying preservation constraints");
    enumerate->add_option("--k", ec.k, "domain cardinality")->required();
    enumerate->add_option("--n", ec.n, "arity")->required();
    enumerate->add_option("--rel", ec.rels, "relation to preserve (builtin name or file)");
    enumerate->add_flag("--total", ec.total, "total functions only");
    enumerate->add_flag("--count", ec.count, "print the count instead of the functions");
    enumerate->add_flag("--allow-large", ec.allow_large,
                        "override the k^n cell bound for partial enumeration");
    enumerate->add_option("--threads", ec.threads,
                          "worker count for --count (overrides PARCLONE_THREADS)");
    enumerate->add_option("--out", ec.out_path, "write output to a file");

    ClosureCmd cc;
    auto* closure = app.add_subcommand("closure", "bounded-arity closure of a generator set");
    closure->add_option("--k", cc.k, "domain cardinality")->required();
    closure->add_option("--gen", cc.gen_files, "generator file (pfn blocks); repeatable");
    closure->add_option("--target-arity", cc.target, "max arity of reported functions");
    closure->add_option("--intermediate-arity", cc.intermediate,
                        "max arity allowed during composition (default: target)");
    closure->add_flag("--strong", cc.strong, "also close under subfunctions");
    closure->add_option("--max-size", cc.max_size, "function cap");
    closure->add_option("--max-rounds", cc.max_rounds, "round cap");
    closure->add_option("--out", cc.out_path, "write a reloadable cache file");
    closure->add_option("--stats-json", cc.stats_json, "write run statistics as JSON");

    MemberCmd mc;
    auto* member = app.add_subcommand("member", "membership of functions in a closure cache");
    member->add_option("--cache", mc.cache_path, "closure cache file")->required();
    member->add_option("--fn", mc.fn_path, "functions to query (pfn blocks)")->required();
    member->add_flag("--assert", mc.assert_all, "exit 1 unless every function is a member");

    PreservesCmd pc;
    auto* pres = app.add_subcommand("preserves", "preservation of a relation");
    pres->add_option("--fn", pc.fn_path, "functions to test (pfn blocks)")->required();
    pres->add_option("--rel", pc.rel_spec, "relation (builtin name or file)")->required();
    pres->add_flag("--assert", pc.assert_all, "exit 1 unless every function preserves");

    SeparateCmd sc;
    auto* sep = app.add_subcommand("separate", "search for a separating family");
    sep->add_option("--pool", sc.pool_path, "pool file (pfn blocks)");
    sep->add_option("--rel", sc.rels, "inline pool: relation names the totals must preserve");
    sep->add_option("--k", sc.k, "domain cardinality (inline pool)");
    sep->add_option("--n", sc.n, "arity (inline pool)");
    sep->add_option("--m", sc.m, "family size")->required();
    sep->add_option("--b", sc.b_text, "point to separate, e.g. '0,0,0' (default: all-zero)");
    sep->add_option("--mode", sc.mode, "collision candidates: all | units");
    sep->add_option("--max-tuples", sc.max_tuples, "tuple budget");
    sep->add_option("--json", sc.json_path, "write the report as JSON");

    VerifyCmd vc;
    auto* verify = app.add_subcommand("verify", "run named checks");
    verify->add_option("--check", vc.check, "check id or 'all'");
    verify->add_option("--params", vc.params_items, "key=value; repeatable or comma-separated");
    verify->add_option("--json", vc.json_path, "write reports as JSON");

    RelationsCmd rc;
    auto* rels = app.add_subcommand("relations", "list or print built-in relations");
    rels->add_option("--name", rc.name, "relation name (builtin or file)");
    rels->add_flag("--props", rc.props, "also print order properties");

    std::vector<const char*> argv;
    argv.push_back("parclone");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*enumerate) return ec.run(out);
        if (*closure) return cc.run(out);
        if (*member) return mc.run(out);
        if (*pres) return pc.run(out);
        if (*sep) return sc.run(out);
        if (*verify) return vc.run(out, err);
        if (*rels) return rc.run(out);
    } catch (const resource_limit& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const corrupt_cache& e) {
        err << "corrupt cache: " << e.what() << "\n";
        return kExitUsage;
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no subcommand\n";
    return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace parclone::cli

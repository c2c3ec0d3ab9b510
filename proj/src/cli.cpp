#include "qcm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcm/error.hpp"
#include "qcm/io.hpp"

namespace qcm::cli {

namespace {

using io::Json;

struct Options {
    std::string path;
    std::string out;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool pretty = false;
    bool timing = false;
    std::string direction;
    std::vector<std::string> queries;
    std::vector<std::string> candidates;
    std::size_t samples = 100;
    // witness
    std::string mode;
    std::string witness_path;
    std::vector<std::string> members;
    // classify
    bool pseudo = false;
    // example
    std::string example;
    std::string grid;
    std::string alpha;
    std::vector<std::string> betas;
};

// Outcome of one command: the machine report, its human rendering and the
// exit status with the first failure named.
struct Outcome {
    Json report;
    std::string pretty;
    int code = kSuccess;
    std::string failure;
};

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string set_str(const std::vector<std::string>& items) { return "{" + join(items) + "}"; }

std::vector<Rational> parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos) throw InputError("grid must be lo:hi:step, got '" + text + "'");
    const Rational lo = Rational::parse(text.substr(0, a));
    const Rational hi = Rational::parse(text.substr(a + 1, b - a - 1));
    const Rational step = Rational::parse(text.substr(b + 1));
    if (step.sign() <= 0) throw InputError("grid step must be positive");
    if (hi < lo) throw InputError("grid upper bound is below the lower bound");
    std::vector<Rational> out;
    for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    return out;
}

std::string direction_label(Direction d) { return d == Direction::forward ? "f" : "b"; }

Direction pick_direction(const Options& opt, const io::InstanceFile& file) {
    if (!opt.direction.empty()) return parse_direction(opt.direction);
    if (file.queries && file.queries->direction) return *file.queries->direction;
    return Direction::forward;
}

std::vector<std::string> pick_targets(const Options& opt, const io::InstanceFile& file) {
    if (!opt.queries.empty()) return opt.queries;
    if (file.queries && !file.queries->targets.empty()) return file.queries->targets;
    return file.instance.labels();
}

std::vector<std::string> pick_candidates(const Options& opt, const io::InstanceFile& file) {
    if (!opt.candidates.empty()) return opt.candidates;
    if (file.queries && !file.queries->candidates.empty()) return file.queries->candidates;
    return file.instance.labels();
}

Json header(const std::string& command, const std::vector<std::string>& args, const Options& opt) {
    return {{"command", command}, {"args", args}, {"seed", opt.seed}};
}

std::string render_axioms(const AxiomReport& report) {
    std::ostringstream os;
    for (const auto& a : report.axioms) {
        os << "  " << a.axiom << "  " << (a.passed ? "pass" : "FAIL") << "  (" << a.checks << " checks)";
        if (!a.passed) {
            if (!a.points.empty()) os << " at (" << join(a.points) << ")";
            for (const auto& v : a.values) os << " " << v;
            os << ": " << a.note;
        }
        os << "\n";
    }
    return os.str();
}

std::string first_axiom_failure(const AxiomReport& report, const std::string& scope) {
    for (const auto& a : report.axioms) {
        if (a.passed) continue;
        std::string s = scope + " axiom " + a.axiom + " failed";
        if (!a.points.empty()) s += " at (" + join(a.points) + ")";
        return s + ": " + a.note;
    }
    return {};
}

Outcome cmd_verify(const Options& opt, const std::vector<std::string>& args) {
    const auto file = io::load_instance(opt.path);
    const auto cone_report = check_cone_axioms(file.instance.space().cone(), ConeSampling{opt.seed, opt.samples});
    const auto qcm_report = verify_axioms(file.instance, opt.jobs);

    Outcome o;
    o.report = header("verify", args, opt);
    o.report["points"] = file.instance.size();
    o.report["cone"] = io::to_json(cone_report);
    o.report["metric"] = io::to_json(qcm_report);
    o.pretty = "cone axioms (dimension " + std::to_string(file.instance.space().dimension()) + ")\n" +
               render_axioms(cone_report) + "quasi-cone metric axioms (" + std::to_string(file.instance.size()) +
               " points)\n" + render_axioms(qcm_report);
    if (!cone_report.passed()) {
        o.code = kAxiomFailure;
        o.failure = first_axiom_failure(cone_report, "cone");
    } else if (!qcm_report.passed()) {
        o.code = kAxiomFailure;
        o.failure = first_axiom_failure(qcm_report, "metric");
    }
    return o;
}

Outcome cmd_approx(const Options& opt, const std::vector<std::string>& args) {
    const auto file = io::load_instance(opt.path);
    const Direction dir = pick_direction(opt, file);
    const auto H = pick_candidates(opt, file);

    Outcome o;
    o.report = header("approx", args, opt);
    o.report["direction"] = std::string(to_string(dir));
    o.report["candidates"] = H;
    Json results = Json::array();
    std::ostringstream pretty;
    for (const auto& q : pick_targets(opt, file)) {
        const auto r = best_approximation_set(file.instance, {q, H, dir});
        Json entry{{"q", q}};
        entry.update(io::to_json(r));
        results.push_back(entry);

        const std::string d = dir == Direction::forward ? "d(q,h)" : "d(h,q)";
        pretty << "q = " << q << "\n";
        pretty << "  P_{H_" << direction_label(dir) << "}(q) = " << set_str(r.best) << "\n";
        if (r.common_distance) {
            pretty << "  common distance " << d << " = " << *r.common_distance << "\n";
        } else {
            pretty << "  no h in H has " << d << " ⪯ " << d << "' for every h' (no least element)\n";
        }
        pretty << "  minimal front = " << set_str(r.minimal_front) << "\n";
        pretty << "  pairs: " << r.stats.pairs << " (" << r.stats.equal << " equal, " << r.stats.comparable
               << " comparable, " << r.stats.incomparable << " incomparable)\n";
    }
    o.report["results"] = results;
    o.pretty = pretty.str();
    return o;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw SemanticError("cannot write '" + path + "'");
    f << text;
}

Outcome cmd_witness(const Options& opt, const std::vector<std::string>& args) {
    const auto file = io::load_instance(opt.path);
    const auto H = pick_candidates(opt, file);
    Outcome o;
    o.report = header("witness", args, opt);
    o.report["mode"] = opt.mode;
    o.report["candidates"] = H;
    std::ostringstream pretty;

    if (opt.mode == "emit") {
        const Direction dir = pick_direction(opt, file);
        if (opt.queries.empty() && !(file.queries && !file.queries->targets.empty())) {
            throw SemanticError("witness emit needs a target: pass --query");
        }
        const std::string q = pick_targets(opt, file).front();
        const auto witness = canonical_witness(file.instance, q, dir);
        const auto best = best_approximation_set(file.instance, {q, H, dir});
        const Json record = io::witness_to_json(witness, file.instance, best.best);
        if (!opt.witness_path.empty()) write_file(opt.witness_path, record.dump(2) + "\n");
        o.report["witness"] = record;

        const std::string d = dir == Direction::forward ? "d(" + q + ",x)" : "d(x," + q + ")";
        pretty << "canonical witness f(x) = " << d << "\n";
        for (std::size_t i = 0; i < file.instance.size(); ++i) {
            pretty << "  f(" << file.instance.label(i) << ") = " << witness(i) << "\n";
        }
        pretty << "certifies M = " << set_str(best.best) << " ⊆ P_{H_" << direction_label(dir) << "}(" << q
               << ")\n";
    } else if (opt.mode == "check") {
        if (opt.witness_path.empty()) throw SemanticError("witness check needs --witness PATH");
        std::ifstream in(opt.witness_path);
        if (!in) throw ParseError(opt.witness_path, "cannot open file");
        std::ostringstream buf;
        buf << in.rdbuf();
        const auto wf = io::parse_witness(buf.str(), file.instance);
        const auto M = !opt.members.empty() ? opt.members : (wf.members ? *wf.members : H);

        Json elements = Json::array();
        for (const auto& h : H) {
            Json e{{"h", h}};
            e.update(io::to_json(verify_witness_for_element(file.instance, wf.witness, H, h)));
            elements.push_back(e);
        }
        const auto verdict = verify_witness_for_set(file.instance, wf.witness, H, M);
        o.report["q"] = wf.witness.q();
        o.report["direction"] = std::string(to_string(wf.witness.direction()));
        o.report["members"] = M;
        o.report["verdict"] = io::to_json(verdict);
        o.report["elements"] = elements;

        pretty << "witness for q = " << wf.witness.q() << " (" << to_string(wf.witness.direction()) << ")\n";
        pretty << "  M = " << set_str(M) << ": " << (verdict.holds ? "holds" : "FAILS") << "\n";
        if (!verdict.holds) {
            pretty << "  " << to_string(*verdict.failed_condition) << " for m = " << *verdict.member << " at "
                   << verdict.counterexample->first << ", value " << verdict.counterexample->second << "\n";
            o.code = kVerdictFailure;
            o.failure = "witness verdict failed: " + std::string(to_string(*verdict.failed_condition)) +
                        " for m = " + *verdict.member + " at " + verdict.counterexample->first;
        }
    } else {
        throw InputError("--mode must be emit or check");
    }
    o.pretty = pretty.str();
    return o;
}

Outcome cmd_classify(const Options& opt, const std::vector<std::string>& args) {
    const auto file = io::load_instance(opt.path);
    const QueryFamily family{pick_targets(opt, file), pick_candidates(opt, file), pick_direction(opt, file)};
    ClassifyOptions copt;
    copt.embedding = file.embedding ? &*file.embedding : nullptr;
    copt.require_pseudo = opt.pseudo;
    copt.jobs = opt.jobs;
    const auto report = classify(file.instance, family, copt);

    Outcome o;
    o.report = header("classify", args, opt);
    o.report.update(io::to_json(report));

    // Each two-member violation is packaged with its canonical witness and
    // re-verified for {h1, h2}.
    Json forms = Json::array();
    std::ostringstream pretty;
    const std::string dl = direction_label(report.direction);
    if (!report.chebyshev && std::any_of(report.chebyshev_violations.begin(), report.chebyshev_violations.end(),
                                         [](const auto& v) { return v.members.size() >= 2; })) {
        for (const auto& form : counterexample_to_theorem_form(report, file.instance)) {
            const auto verdict = verify_witness_for_set(file.instance, form.witness, report.candidates,
                                                        {form.h1, form.h2});
            forms.push_back({{"q", form.q},
                             {"h1", form.h1},
                             {"h2", form.h2},
                             {"witness", io::witness_to_json(form.witness, file.instance)},
                             {"verdict", io::to_json(verdict)}});
        }
    }
    o.report["theorem_form"] = forms;

    pretty << "H = " << set_str(report.candidates) << " (" << to_string(report.direction) << ")\n";
    pretty << "Chebyshev: " << (report.chebyshev ? "holds" : "fails") << "\n";
    for (const auto& v : report.chebyshev_violations) {
        if (v.members.empty()) {
            pretty << "  q = " << v.q << ": P_{H_" << dl << "}(q) is empty\n";
        } else {
            pretty << "  q = " << v.q << ": " << v.members[0] << ", " << v.members[1] << " ∈ P_{H_" << dl
                   << "}(q)\n";
        }
    }
    pretty << "quasi-Chebyshev: " << (report.quasi ? "holds" : "fails") << "  [" << kQuasiSemantics << "]\n";
    for (const auto& v : report.quasi_violations) pretty << "  q = " << v.q << ": " << v.reason << "\n";
    pretty << "pseudo-Chebyshev: " << (report.pseudo ? (*report.pseudo ? "holds" : "fails") : "not evaluated")
           << "\n";
    pretty << "census:\n";
    for (const auto& c : report.census) {
        pretty << "  q = " << c.q << "  |P_{H_" << dl << "}(q)| = " << c.cardinality;
        if (c.rank) pretty << "  span rank " << *c.rank;
        pretty << "\n";
    }
    o.pretty = pretty.str();

    if (!report.chebyshev) {
        o.code = kVerdictFailure;
        const auto& v = report.chebyshev_violations.front();
        o.failure = "not Chebyshev at q = " + v.q +
                    (v.members.empty() ? " (empty best set)" : " (" + v.members[0] + ", " + v.members[1] + ")");
    } else if (!report.quasi) {
        o.code = kVerdictFailure;
        o.failure = "not quasi-Chebyshev at q = " + report.quasi_violations.front().q;
    }
    return o;
}

Outcome cmd_example(const Options& opt, const std::vector<std::string>& args) {
    if (opt.example != "example3" && opt.example != "example4") {
        throw InputError("example must be example3 or example4, got '" + opt.example + "'");
    }
    const bool is4 = opt.example == "example4";
    const auto grid = parse_grid(opt.grid);

    std::vector<Rational> coords = grid;
    std::vector<std::string> targets;
    for (const auto& b : opt.betas) {
        const Rational beta = Rational::parse(b);
        const Rational q = is4 ? beta : beta * beta;  // F(beta)
        if (std::find(coords.begin(), coords.end(), q) == coords.end()) coords.push_back(q);
        if (std::find(targets.begin(), targets.end(), q.str()) == targets.end()) targets.push_back(q.str());
    }
    std::sort(coords.begin(), coords.end());

    std::vector<std::pair<std::string, Rational>> points;
    for (const auto& c : coords) points.emplace_back(c.str(), c);
    std::vector<std::string> candidates;
    for (const auto& g : grid) candidates.push_back(g.str());

    io::InstanceFile file{is4 ? build_example4(points, Rational::parse(opt.alpha.empty() ? "1" : opt.alpha))
                              : build_example3(points),
                          io::FileQueries{targets, candidates, std::nullopt}, std::nullopt};
    if (!opt.direction.empty()) file.queries->direction = parse_direction(opt.direction);

    Outcome o;
    o.report = io::instance_to_json(file);
    std::ostringstream pretty;
    pretty << opt.example << " over " << coords.size() << " points, H = grid " << opt.grid;
    if (is4) pretty << ", alpha = " << (opt.alpha.empty() ? "1" : opt.alpha);
    pretty << "\nqueries: " << set_str(targets) << "\n";
    o.pretty = pretty.str();
    (void)args;
    return o;
}

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& item : in) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) out.push_back(part);
        }
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Best approximations in finite quasi-cone metric spaces", "qcm"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--out", opt.out, "Write the report to this path instead of standard output");
    app.add_option("--seed", opt.seed, "Seed for sampled checks");
    app.add_option("--jobs", opt.jobs, "Worker threads for exhaustive checks")->check(CLI::PositiveNumber);
    app.add_flag("--pretty", opt.pretty, "Human-readable output");
    app.add_flag("--timing", opt.timing, "Add wall time to the report (breaks byte-identical reruns)");
    app.add_option("--direction", opt.direction, "forward or backward")
        ->check(CLI::IsMember({"forward", "backward"}));

    auto* verify = app.add_subcommand("verify", "Check cone axioms C1-C3 and metric axioms QCM1-QCM3");
    verify->add_option("file", opt.path, "Instance file")->required();
    verify->add_option("--samples", opt.samples, "Number of sampled C2 checks");

    auto add_selectors = [&](CLI::App* sub) {
        sub->add_option("file", opt.path, "Instance file")->required();
        sub->add_option("--query,-q", opt.queries, "Target point label (repeatable; overrides the file)");
        sub->add_option("--candidates,-H", opt.candidates, "Candidate labels, comma separated (overrides the file)");
    };

    auto* approx = app.add_subcommand("approx", "Compute best approximation sets");
    add_selectors(approx);

    auto* witness = app.add_subcommand("witness", "Emit or check a witness function");
    add_selectors(witness);
    witness->add_option("--mode", opt.mode, "emit or check")->required()->check(CLI::IsMember({"emit", "check"}));
    witness->add_option("--witness", opt.witness_path, "Witness record to write (emit) or read (check)");
    witness->add_option("--members,-M", opt.members, "Set M to verify, comma separated (check)");

    auto* cls = app.add_subcommand("classify", "Classify H as Chebyshev / quasi / pseudo over a query family");
    add_selectors(cls);
    cls->add_flag("--pseudo", opt.pseudo, "Require the pseudo-Chebyshev check (needs an embedding)");

    auto* example = app.add_subcommand("example", "Generate an instance file for a closed-form example metric");
    example->add_option("name", opt.example, "example3 or example4")->required();
    example->add_option("--grid", opt.grid, "Candidate grid lo:hi:step, e.g. 0:2:1/4")->required();
    example->add_option("--alpha", opt.alpha, "Alpha for example4 (default 1)");
    example->add_option("--beta", opt.betas, "Query parameter beta (repeatable); the target is F(beta)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }
    opt.candidates = split_commas(opt.candidates);
    opt.members = split_commas(opt.members);

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        if (*verify) {
            outcome = cmd_verify(opt, args);
        } else if (*approx) {
            outcome = cmd_approx(opt, args);
        } else if (*witness) {
            outcome = cmd_witness(opt, args);
        } else if (*cls) {
            outcome = cmd_classify(opt, args);
        } else {
            outcome = cmd_example(opt, args);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kParseError;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << "\n";
        return kSemanticError;
    }

    if (opt.timing) {
        const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        outcome.report["wall_time_ms"] = elapsed.count();
        outcome.pretty += "wall time: " + std::to_string(elapsed.count()) + " ms\n";
    }
    if (!*example && outcome.code == kSuccess) outcome.report["status"] = "ok";
    if (outcome.code != kSuccess) outcome.report["status"] = outcome.failure;

    const std::string text = opt.pretty ? outcome.pretty : outcome.report.dump(2) + "\n";
    if (opt.out.empty()) {
        out << text;
    } else {
        try {
            write_file(opt.out, text);
        } catch (const SemanticError& e) {
            err << "error: " << e.what() << "\n";
            return kSemanticError;
        }
    }
    if (outcome.code != kSuccess) err << "failure: " << outcome.failure << "\n";
    return outcome.code;
}

}  // namespace qcm::cli

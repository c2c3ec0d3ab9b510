#include "qcm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qcm/error.hpp"

namespace qcm::io {

namespace {

// JSON node paired with its path from the document root, for error messages.
struct Node {
    const Json& json;
    std::string path;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path.empty() ? "<root>" : path, what); }

    bool has(const char* key) const { return json.is_object() && json.contains(key); }

    Node at(const char* key) const {
        if (!json.is_object()) fail("expected an object");
        if (!json.contains(key)) fail(std::string("missing field '") + key + "'");
        return {json.at(key), path.empty() ? std::string(key) : path + "." + key};
    }

    Node item(std::size_t i) const { return {json.at(i), path + "[" + std::to_string(i) + "]"}; }

    const Json& array() const {
        if (!json.is_array()) fail("expected an array");
        return json;
    }

    std::string string() const {
        if (!json.is_string()) fail("expected a string");
        return json.get<std::string>();
    }

    Rational rational() const {
        if (!json.is_string()) fail("rational values must be strings \"p\" or \"p/q\"");
        try {
            return Rational::parse(json.get<std::string>());
        } catch (const InputError& e) {
            fail(e.what());
        }
    }

    Vec vec() const {
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < array().size(); ++i) coords.push_back(item(i).rational());
        return Vec(std::move(coords));
    }

    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < array().size(); ++i) out.push_back(item(i).string());
        return out;
    }
};

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        throw ParseError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON");
    }
}

OrderedSpace parse_space(const Node& node) {
    const Node dim_node = node.at("dimension");
    if (!dim_node.json.is_number_unsigned() || dim_node.json.get<std::size_t>() == 0) {
        dim_node.fail("expected a positive integer");
    }
    const auto dim = dim_node.json.get<std::size_t>();
    const Node rows_node = node.at("rows");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < rows_node.array().size(); ++i) rows.push_back(rows_node.item(i).vec());
    std::optional<Vec> interior;
    if (node.has("interior")) interior = node.at("interior").vec();
    try {
        return OrderedSpace(PolyhedralCone::create(dim, std::move(rows), std::move(interior)));
    } catch (const InputError& e) {
        node.fail(e.what());
    }
}

bool is_q2_orthant(const OrderedSpace& space) {
    return space.dimension() == 2 && space.cone().is_nonnegative_orthant();
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
    const Json doc = parse_json(text);
    const Node root{doc, ""};
    if (!doc.is_object()) root.fail("instance file must be a JSON object");

    std::optional<OrderedSpace> space;
    if (root.has("space")) space = parse_space(root.at("space"));

    const Node points_node = root.at("points");
    std::vector<std::string> labels;
    std::vector<std::optional<Rational>> coords;
    for (std::size_t i = 0; i < points_node.array().size(); ++i) {
        const Node p = points_node.item(i);
        if (p.json.is_string()) {
            labels.push_back(p.string());
            coords.emplace_back();
        } else {
            labels.push_back(p.at("label").string());
            coords.push_back(p.has("coordinate") ? std::optional(p.at("coordinate").rational()) : std::nullopt);
        }
    }
    if (labels.empty()) points_node.fail("instance needs at least one point");
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!seen.insert(labels[i]).second) points_node.item(i).fail("duplicate point label '" + labels[i] + "'");
        }
    }

    const Node metric = root.at("metric");
    const std::string kind = metric.at("kind").string();
    std::optional<QcmInstance> instance;

    if (kind == "table") {
        if (!space) root.fail("missing field 'space' (required for table metrics)");
        const std::size_t n = labels.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index[labels[i]] = i;
        std::vector<std::optional<Vec>> table(n * n);
        const Node entries = metric.at("entries");
        for (std::size_t k = 0; k < entries.array().size(); ++k) {
            const Node e = entries.item(k);
            if (e.array().size() != 3) e.fail("expected [from, to, [vector]]");
            const std::string from = e.item(0).string();
            const std::string to = e.item(1).string();
            if (!index.contains(from)) e.item(0).fail("unknown point label '" + from + "'");
            if (!index.contains(to)) e.item(1).fail("unknown point label '" + to + "'");
            Vec v = e.item(2).vec();
            if (v.size() != space->dimension()) e.item(2).fail("vector length does not match space dimension");
            auto& slot = table[index[from] * n + index[to]];
            if (slot) e.fail("duplicate entry for d(" + from + ", " + to + ")");
            slot = std::move(v);
        }
        std::vector<Vec> dense;
        dense.reserve(n * n);
        for (std::size_t k = 0; k < n * n; ++k) {
            if (!table[k]) entries.fail("missing entry for d(" + labels[k / n] + ", " + labels[k % n] + ")");
            dense.push_back(std::move(*table[k]));
        }
        instance = QcmInstance::from_table(*space, labels, std::move(dense));
    } else if (kind == "example3" || kind == "example4") {
        if (space && !is_q2_orthant(*space)) root.at("space").fail("generated metrics require Q^2 with the orthant cone");
        std::vector<std::pair<std::string, Rational>> pts;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!coords[i]) points_node.item(i).fail("generated metrics need a 'coordinate' for every point");
            pts.emplace_back(labels[i], *coords[i]);
        }
        try {
            if (kind == "example3") {
                instance = build_example3(pts);
            } else {
                const Rational alpha = metric.at("alpha").rational();
                if (alpha.sign() <= 0) metric.at("alpha").fail("alpha must be positive");
                instance = build_example4(pts, alpha);
            }
        } catch (const InputError& e) {
            points_node.fail(e.what());
        }
    } else {
        metric.at("kind").fail("unknown metric kind '" + kind + "' (expected table, example3 or example4)");
    }

    InstanceFile file{std::move(*instance), std::nullopt, std::nullopt};

    if (root.has("queries")) {
        const Node q = root.at("queries");
        FileQueries fq;
        if (q.has("targets")) fq.targets = q.at("targets").strings();
        if (q.has("candidates")) fq.candidates = q.at("candidates").strings();
        if (q.has("direction")) {
            try {
                fq.direction = parse_direction(q.at("direction").string());
            } catch (const InputError& e) {
                q.at("direction").fail(e.what());
            }
        }
        file.queries = std::move(fq);
    }

    if (root.has("embedding")) {
        const Node emb = root.at("embedding");
        if (!emb.json.is_object()) emb.fail("expected an object mapping labels to vectors");
        Embedding embedding;
        for (const auto& [label, value] : emb.json.items()) {
            const Node entry{value, emb.path + "." + label};
            if (!file.instance.contains(label)) entry.fail("unknown point label '" + label + "'");
            embedding.emplace(label, entry.vec());
        }
        file.embedding = std::move(embedding);
    }
    return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

Json rational_to_json(const Rational& r) { return r.str(); }

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

Json vec_or_null(const std::optional<Vec>& v) { return v ? vec_to_json(*v) : Json(nullptr); }

Json instance_to_json(const InstanceFile& file) {
    const QcmInstance& inst = file.instance;
    Json out;
    Json rows = Json::array();
    for (const auto& r : inst.space().cone().rows()) rows.push_back(vec_to_json(r));
    out["space"] = {{"dimension", inst.space().dimension()}, {"rows", rows}};

    Json points = Json::array();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (inst.coordinates()) {
            points.push_back({{"label", inst.label(i)}, {"coordinate", (*inst.coordinates())[i].str()}});
        } else {
            points.push_back(inst.label(i));
        }
    }
    out["points"] = points;

    if (std::holds_alternative<DirectionMetric>(inst.provenance())) {
        out["metric"] = {{"kind", "example3"}};
    } else if (const auto* a = std::get_if<AlphaMetric>(&inst.provenance())) {
        out["metric"] = {{"kind", "example4"}, {"alpha", a->alpha.str()}};
    } else {
        Json entries = Json::array();
        for (std::size_t r = 0; r < inst.size(); ++r) {
            for (std::size_t s = 0; s < inst.size(); ++s) {
                entries.push_back({inst.label(r), inst.label(s), vec_to_json(inst.distance(r, s))});
            }
        }
        out["metric"] = {{"kind", "table"}, {"entries", entries}};
    }

    if (file.queries) {
        Json q;
        q["targets"] = file.queries->targets;
        q["candidates"] = file.queries->candidates;
        if (file.queries->direction) q["direction"] = std::string(to_string(*file.queries->direction));
        out["queries"] = q;
    }
    if (file.embedding) {
        Json emb = Json::object();
        for (const auto& [label, v] : *file.embedding) emb[label] = vec_to_json(v);
        out["embedding"] = emb;
    }
    return out;
}

Json to_json(const AxiomReport& report) {
    Json axioms = Json::array();
    for (const auto& a : report.axioms) {
        Json entry{{"axiom", a.axiom}, {"status", a.passed ? "pass" : "fail"}, {"checks", a.checks}};
        if (!a.points.empty()) entry["points"] = a.points;
        if (!a.values.empty()) {
            Json values = Json::array();
            for (const auto& v : a.values) values.push_back(vec_to_json(v));
            entry["values"] = values;
        }
        if (!a.note.empty()) entry["note"] = a.note;
        axioms.push_back(entry);
    }
    return {{"passed", report.passed()}, {"axioms", axioms}};
}

Json to_json(const ApproximationResult& result) {
    return {{"best", result.best},
            {"common_distance", vec_or_null(result.common_distance)},
            {"minimal_front", result.minimal_front},
            {"stats",
             {{"pairs", result.stats.pairs},
              {"equal", result.stats.equal},
              {"comparable", result.stats.comparable},
              {"incomparable", result.stats.incomparable}}}};
}

Json to_json(const WitnessVerdict& verdict) {
    Json out{{"holds", verdict.holds}};
    if (verdict.failed_condition) out["condition"] = std::string(to_string(*verdict.failed_condition));
    if (verdict.member) out["member"] = *verdict.member;
    if (verdict.counterexample) {
        out["counterexample"] = {{"point", verdict.counterexample->first},
                                 {"value", vec_to_json(verdict.counterexample->second)}};
    }
    return out;
}

Json to_json(const ChebyshevReport& report) {
    Json cheb{{"status", report.chebyshev ? "holds" : "fails"}};
    Json cheb_cx = Json::array();
    for (const auto& v : report.chebyshev_violations) {
        cheb_cx.push_back({{"q", v.q}, {"members", v.members}, {"kind", v.members.empty() ? "empty" : "multiple"}});
    }
    cheb["counterexamples"] = cheb_cx;

    Json quasi{{"status", report.quasi ? "holds" : "fails"}, {"semantics", kQuasiSemantics}};
    Json quasi_cx = Json::array();
    for (const auto& v : report.quasi_violations) quasi_cx.push_back({{"q", v.q}, {"reason", v.reason}});
    quasi["counterexamples"] = quasi_cx;

    Json pseudo = report.pseudo ? Json{{"status", *report.pseudo ? "holds" : "fails"}}
                                : Json{{"status", "not-evaluated"}};

    Json census = Json::array();
    for (const auto& c : report.census) {
        census.push_back({{"q", c.q}, {"cardinality", c.cardinality}, {"rank", c.rank ? Json(*c.rank) : Json(nullptr)}});
    }
    return {{"direction", std::string(to_string(report.direction))},
            {"candidates", report.candidates},
            {"chebyshev", cheb},
            {"quasi", quasi},
            {"pseudo", pseudo},
            {"census", census}};
}

Json witness_to_json(const WitnessTable& witness, const QcmInstance& instance,
                     const std::optional<std::vector<std::string>>& members) {
    Json f = Json::array();
    for (std::size_t i = 0; i < instance.size(); ++i) f.push_back({instance.label(i), vec_to_json(witness(i))});
    Json out{{"q", witness.q()}, {"direction", std::string(to_string(witness.direction()))}, {"f", f}};
    if (members) out["members"] = *members;
    return out;
}

WitnessFile parse_witness(std::string_view text, const QcmInstance& instance) {
    const Json doc = parse_json(text);
    const Node root{doc, ""};
    const std::string q = root.at("q").string();
    if (!instance.contains(q)) root.at("q").fail("unknown point label '" + q + "'");
    Direction dir;
    try {
        dir = parse_direction(root.at("direction").string());
    } catch (const InputError& e) {
        root.at("direction").fail(e.what());
    }
    const Node f = root.at("f");
    std::vector<std::optional<Vec>> values(instance.size());
    for (std::size_t i = 0; i < f.array().size(); ++i) {
        const Node e = f.item(i);
        if (e.array().size() != 2) e.fail("expected [label, [vector]]");
        const std::string label = e.item(0).string();
        if (!instance.contains(label)) e.item(0).fail("unknown point label '" + label + "'");
        Vec v = e.item(1).vec();
        if (v.size() != instance.space().dimension()) e.item(1).fail("vector length does not match space dimension");
        auto& slot = values[instance.index_of(label)];
        if (slot) e.fail("duplicate value for '" + label + "'");
        slot = std::move(v);
    }
    std::vector<Vec> dense;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) f.fail("no value for point '" + instance.label(i) + "'");
        dense.push_back(std::move(*values[i]));
    }
    std::optional<std::vector<std::string>> members;
    if (root.has("members")) {
        members = root.at("members").strings();
        for (std::size_t i = 0; i < members->size(); ++i) {
            if (!instance.contains((*members)[i])) root.at("members").item(i).fail("unknown point label");
        }
    }
    return {WitnessTable(instance, q, dir, std::move(dense)), std::move(members)};
}

}  // namespace qcm::io

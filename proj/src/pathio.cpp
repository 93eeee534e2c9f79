#include "hpath/pathio.hpp"

#include <charconv>

#include <json.hpp>

#include "hpath/metrics.hpp"

namespace hpath {

namespace {

using Json = nlohmann::ordered_json;

const char* generator_name(GeneratorKind g) {
    switch (g) {
        case GeneratorKind::covertree: return "covertree";
        case GeneratorKind::nna: return "nna";
        case GeneratorKind::kcnn: return "kcnn";
    }
    return "?";
}

const char* heuristic_name(HeuristicMode h) {
    switch (h) {
        case HeuristicMode::normal: return "normal";
        case HeuristicMode::mixed: return "mixed";
        case HeuristicMode::zero: return "zero";
    }
    return "?";
}

Json constraint_json(const EdgeConstraint& c) {
    Json j;
    if (c.mode == EdgeConstraint::Mode::width) {
        j["mode"] = "width";
        j["width"] = c.width;
    } else {
        j["mode"] = "distance";
        j["theta"] = c.theta;
    }
    return j;
}

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string constraint_label(const EdgeConstraint& c) {
    if (c.mode == EdgeConstraint::Mode::width)
        return "width>=" + std::to_string(c.width);
    return "theta<=" + shortest(c.theta);
}

double plain_metric(const SparseBipartiteDataset& d, ObjectIndex a, ObjectIndex b) {
    return d.weighted() ? weighted_soergel(d, a, b) : soergel(d, a, b);
}

} // namespace

std::string path_to_json(const SparseBipartiteDataset& d, const PathQueryInfo& q,
                         const SearchConfig& config, const PathResult& r,
                         const std::optional<std::vector<StepSignificance>>& sig) {
    Json j;
    j["query"] = Json{{"start", q.start}, {"goal", q.goal}};

    Json cfg;
    cfg["k"] = config.k;
    cfg["b"] = config.b;
    cfg["generator"] = generator_name(config.generator);
    cfg["heuristic"] = heuristic_name(config.heuristic);
    cfg["mode"] = config.op_mode == OperationMode::mixed ? "mixed" : "normal";
    cfg["constraint"] = constraint_json(config.constraint);
    j["config"] = std::move(cfg);

    Json chain = Json::array();
    for (ObjectIndex o : r.chain) chain.push_back(d.object_id(o));
    j["chain"] = std::move(chain);

    Json cliques = Json::array();
    for (const auto& c : r.cliques) {
        Json members = Json::array();
        for (ObjectIndex o : c) members.push_back(d.object_id(o));
        cliques.push_back(std::move(members));
    }
    j["cliques"] = std::move(cliques);

    j["cost"] = r.cost;
    j["nodesExplored"] = r.nodes_explored;
    j["elapsedMs"] = r.elapsed_s * 1000.0;
    j["ebf"] = r.ebf;

    if (sig) {
        Json steps = Json::array();
        for (const auto& st : *sig) {
            Json s;
            s["overlap"] = st.overlap;
            s["leftSize"] = st.left_size;
            s["rightSize"] = st.right_size;
            s["p"] = st.p;
            s["pAdjusted"] = st.p_adjusted;
            s["pExact"] = st.p_exact;
            steps.push_back(std::move(s));
        }
        j["significance"] = std::move(steps);
    } else {
        j["significance"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string path_to_dot(const SparseBipartiteDataset& d, const SearchConfig& config,
                        const PathResult& r) {
    std::string out = "graph chain {\n  rankdir=LR;\n  node [shape=box];\n";
    for (ObjectIndex o : r.chain)
        out += "  " + quote_dot(d.object_id(o)) + ";\n";
    const std::string label = constraint_label(config.constraint);
    for (std::size_t i = 0; i + 1 < r.chain.size(); ++i) {
        out += "  " + quote_dot(d.object_id(r.chain[i])) + " -- " +
               quote_dot(d.object_id(r.chain[i + 1])) + " [label=" + quote_dot(label) +
               "];\n";
    }
    for (std::size_t t = 0; t < r.cliques.size(); ++t) {
        out += "  subgraph cluster_" + std::to_string(t) + " {\n    label=\"step " +
               std::to_string(t) + "\";\n    style=dashed;\n";
        for (std::size_t m = 0; m < r.cliques[t].size(); ++m) {
            ObjectIndex o = r.cliques[t][m];
            bool on_chain = false;
            for (ObjectIndex c : r.chain)
                if (c == o) { on_chain = true; break; }
            if (on_chain) continue;  // chain nodes stay in the main graph
            std::string alias = "s" + std::to_string(t) + "_m" + std::to_string(m);
            out += "    " + quote_dot(alias) + " [label=" + quote_dot(d.object_id(o)) +
                   "];\n";
        }
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

std::string path_to_tsv(const SparseBipartiteDataset& d, const PathResult& r) {
    std::string out = "step\tobject\tedge_metric\tclique\n";
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
        out += std::to_string(i) + "\t" + d.object_id(r.chain[i]) + "\t";
        if (i + 1 < r.chain.size()) {
            out += shortest(plain_metric(d, r.chain[i], r.chain[i + 1]));
        } else {
            out += "-";
        }
        out += "\t";
        if (i < r.cliques.size()) {
            const auto& c = r.cliques[i];
            for (std::size_t m = 0; m < c.size(); ++m) {
                if (m) out += "|";
                out += d.object_id(c[m]);
            }
        } else {
            out += "-";
        }
        out += "\n";
    }
    return out;
}

} // namespace hpath

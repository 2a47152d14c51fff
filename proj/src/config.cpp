#include "gds/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gds {

namespace {

using nlohmann::json;

// Accepts a JSON number, a fraction string "p/q" (divided once, so exact
// ratios stay exact), or a plain numeric string.
bool parse_number(const json& node, double& out) {
    if (node.is_number()) {
        out = node.get<double>();
        return true;
    }
    if (node.is_string()) {
        const std::string text = node.get<std::string>();
        const auto slash = text.find('/');
        const char* begin = text.c_str();
        char* end = nullptr;
        if (slash != std::string::npos) {
            const double num = std::strtod(begin, &end);
            if (end != begin + slash) return false;
            const std::string den_text = text.substr(slash + 1);
            char* den_end = nullptr;
            const double den = std::strtod(den_text.c_str(), &den_end);
            if (den_end != den_text.c_str() + den_text.size() || den_text.empty() || den == 0.0)
                return false;
            out = num / den;
            return true;
        }
        const double value = std::strtod(begin, &end);
        if (end != begin + text.size() || text.empty()) return false;
        out = value;
        return true;
    }
    return false;
}

class ConfigReader {
  public:
    explicit ConfigReader(const std::string& origin) : origin_(origin) {}

    SprayConfig read(const json& root) {
        int n = 1;
        if (!root.is_object()) {
            fail("top level must be a JSON object");
            throw_errors();
        }
        require_number(root, "space_dimension", n);
        if (n < 1) fail("space_dimension must be >= 1");

        std::vector<std::string> vertices;
        if (!root.contains("vertices") || !root["vertices"].is_array() ||
            root["vertices"].empty()) {
            fail("\"vertices\" must be a non-empty array of identifiers");
        } else {
            for (const auto& v : root["vertices"]) {
                if (v.is_string())
                    vertices.push_back(v.get<std::string>());
                else
                    fail("vertex identifiers must be strings");
            }
        }
        throw_errors();

        auto vertex_id = [&](const json& node, const std::string& where) {
            if (!node.is_string()) {
                fail(where + ": vertex reference must be a string");
                return -1;
            }
            const std::string name = node.get<std::string>();
            for (int u = 0; u < static_cast<int>(vertices.size()); ++u)
                if (vertices[u] == name) return u;
            fail(where + ": unknown vertex \"" + name + "\"");
            return -1;
        };

        std::vector<GraphEdge> edges;
        if (!root.contains("edges") || !root["edges"].is_array()) {
            fail("\"edges\" must be an array");
        } else {
            int idx = 0;
            for (const auto& e : root["edges"]) {
                const std::string where = "edge " + std::to_string(idx++);
                if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
                    !e.contains("ratio")) {
                    fail(where + ": needs {from, to, ratio}");
                    continue;
                }
                GraphEdge edge;
                edge.from = vertex_id(e["from"], where);
                edge.to = vertex_id(e["to"], where);
                if (!parse_number(e["ratio"], edge.ratio))
                    fail(where + ": ratio must be a number or a fraction string");
                if (edge.from >= 0 && edge.to >= 0) edges.push_back(edge);
            }
        }

        std::vector<GeneratorProfile> profiles;
        if (!root.contains("generators") || !root["generators"].is_object()) {
            fail("\"generators\" must map each vertex to a profile");
        } else {
            const json& gens = root["generators"];
            for (const auto& [key, value] : gens.items()) {
                bool known = false;
                for (const std::string& v : vertices) known = known || v == key;
                if (!known) fail("generators: unknown vertex \"" + key + "\"");
            }
            for (const std::string& name : vertices) {
                if (!gens.contains(name)) {
                    fail("generators: missing entry for vertex \"" + name + "\"");
                    continue;
                }
                read_profile(gens[name], name, n, profiles);
            }
        }

        SolverSettings settings;
        if (root.contains("settings")) read_settings(root["settings"], settings);

        for (const auto& [key, _] : root.items())
            if (key != "space_dimension" && key != "vertices" && key != "edges" &&
                key != "generators" && key != "settings")
                fail("unknown top-level key \"" + key + "\"");

        throw_errors();
        try {
            return SprayConfig{MWGraph(std::move(vertices), std::move(edges), n),
                               std::move(profiles), settings};
        } catch (const SolverError& e) {
            fail(e.what());
            throw_errors();
            throw;  // unreachable
        }
    }

  private:
    void read_profile(const json& node, const std::string& name, int n,
                      std::vector<GeneratorProfile>& out) {
        const std::string where = "generator \"" + name + "\"";
        if (!node.is_object() || !node.contains("pieces") || !node.contains("volume")) {
            fail(where + ": needs {pieces, volume}");
            return;
        }
        double volume = 0.0;
        if (!parse_number(node["volume"], volume)) fail(where + ": bad volume");
        std::vector<ProfilePiece> pieces;
        if (!node["pieces"].is_array() || node["pieces"].empty()) {
            fail(where + ": pieces must be a non-empty array");
            return;
        }
        for (const auto& p : node["pieces"]) {
            if (!p.is_object() || !p.contains("breakpoint") || !p.contains("coefficients")) {
                fail(where + ": each piece needs {breakpoint, coefficients}");
                return;
            }
            ProfilePiece piece;
            if (!parse_number(p["breakpoint"], piece.breakpoint))
                fail(where + ": bad breakpoint");
            if (!p["coefficients"].is_array() ||
                static_cast<int>(p["coefficients"].size()) != n + 1) {
                fail(where + ": coefficients must be an array of n+1 = " + std::to_string(n + 1) +
                     " values");
                return;
            }
            for (const auto& c : p["coefficients"]) {
                double value = 0.0;
                if (!parse_number(c, value)) fail(where + ": bad coefficient");
                piece.coefficients.push_back(value);
            }
            pieces.push_back(std::move(piece));
        }
        if (errors_.empty()) {
            try {
                out.emplace_back(n, std::move(pieces), volume);
            } catch (const SolverError& e) {
                fail(where + ": " + e.what());
            }
        }
    }

    void read_settings(const json& node, SolverSettings& settings) {
        if (!node.is_object()) {
            fail("settings must be an object");
            return;
        }
        for (const auto& [key, value] : node.items()) {
            double num = 0.0;
            if (key == "sim_tol" && parse_number(value, num))
                settings.sim_tol = num;
            else if (key == "dims_tol" && parse_number(value, num))
                settings.dims_tol = num;
            else if (key == "delta" && parse_number(value, num))
                settings.delta = num;
            else if (key == "lattice_tol" && parse_number(value, num))
                settings.lattice_tol = num;
            else if (key == "max_denominator" && parse_number(value, num))
                settings.max_denominator = static_cast<int>(num);
            else if (key == "truncation_height" && parse_number(value, num))
                settings.truncation_height = num;
            else if (key == "path_cap" && parse_number(value, num))
                settings.path_cap = static_cast<std::uint64_t>(num);
            else if (key == "lattice_grouping" && value.is_boolean())
                settings.lattice_grouping = value.get<bool>();
            else
                fail("settings: unknown or malformed key \"" + key + "\"");
        }
    }

    void require_number(const json& root, const char* key, int& out) {
        if (!root.contains(key)) {
            fail(std::string("missing \"") + key + "\"");
            return;
        }
        double value = 0.0;
        if (!parse_number(root[key], value) || value != std::floor(value))
            fail(std::string("\"") + key + "\" must be an integer");
        else
            out = static_cast<int>(value);
    }

    void fail(const std::string& message) { errors_.push_back(origin_ + ": " + message); }

    void throw_errors() {
        if (errors_.empty()) return;
        std::string joined;
        for (std::size_t i = 0; i < errors_.size(); ++i) {
            if (i) joined += "\n";
            joined += errors_[i];
        }
        throw SolverError(ErrorCode::parse_error, joined);
    }

    std::string origin_;
    std::vector<std::string> errors_;
};

}  // namespace

SprayConfig parse_spray_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SolverError(ErrorCode::parse_error, origin + ": " + e.what());
    }
    ConfigReader reader(origin);
    return reader.read(root);
}

SprayConfig load_spray_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SolverError(ErrorCode::parse_error, "cannot open config file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spray_config(buffer.str(), path);
}

ValidationReport validate_spray(const SprayConfig& config) {
    ValidationReport report = validate_graph(config.graph);
    for (int u = 0; u < config.graph.vertex_count(); ++u) {
        ValidationReport pr = validate_profile(config.profiles[u]);
        for (const std::string& v : pr.violations)
            report.add("generator \"" + config.graph.vertex_name(u) + "\": " + v);
    }
    return report;
}

}  // namespace gds

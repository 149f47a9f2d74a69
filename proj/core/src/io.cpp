#include "htri/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace htri {

namespace {

using nlohmann::json;

std::string dir_key(int i, int j) {
    return std::to_string(i) + "->" + std::to_string(j);
}

std::pair<int, int> parse_dir_key(const std::string& key) {
    auto pos = key.find("->");
    if (pos == std::string::npos) throw io_error("bad edge key: " + key);
    try {
        int i = std::stoi(key.substr(0, pos));
        int j = std::stoi(key.substr(pos + 2));
        return {i, j};
    } catch (const std::exception&) {
        throw io_error("bad edge key: " + key);
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw io_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << text;
}

json lift_to_json(const hpoint& p) { return json::array({p.x0, p.x1, p.x2}); }

hpoint lift_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw io_error("lift must be a 3-array");
    for (const auto& c : j)
        if (!c.is_number()) throw io_error("lift must be numeric");
    return hpoint{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void save_mapping(const std::string& path, const geodesic_mapping& m, std::uint64_t seed) {
    const surface_complex& cx = *m.cx;
    json j;
    j["seed"] = seed;
    j["complex"]["vertices"] = cx.n_vertices;
    json edges = json::array();
    for (const auto& [i, k] : cx.edges) edges.push_back(json::array({i, k}));
    j["complex"]["edges"] = std::move(edges);
    json faces = json::array();
    for (const auto& f : cx.faces) faces.push_back(json::array({f[0], f[1], f[2]}));
    j["complex"]["faces"] = std::move(faces);
    json lifts = json::array();
    for (const auto& p : m.lift) lifts.push_back(lift_to_json(p));
    j["lifts"] = std::move(lifts);
    json deck = json::object();
    for (std::size_t e = 0; e < cx.efrom.size(); e++)
        deck[dir_key(cx.efrom[e], cx.eto[e])] = cx.eword[e].str();
    j["deck"] = std::move(deck);
    write_text(path, j.dump(2) + "\n");
}

geodesic_mapping load_mapping(const std::string& path, const fuchsian_group& group) {
    json j = load_json(path);
    try {
        int n = j.at("complex").at("vertices").get<int>();
        std::vector<std::array<int, 3>> faces;
        for (const auto& f : j.at("complex").at("faces")) {
            if (!f.is_array() || f.size() != 3) throw io_error("face must be a 3-array");
            faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
        }
        std::map<std::pair<int, int>, group_word> deck;
        for (const auto& [key, val] : j.at("deck").items())
            deck[parse_dir_key(key)] = group_word::parse(val.get<std::string>());

        geodesic_mapping m;
        m.cx = rebuild_complex(n, std::move(faces), deck, group);
        const auto& lifts = j.at("lifts");
        if (int(lifts.size()) != n) throw io_error("lift count does not match vertex count");
        for (const auto& l : lifts) m.lift.push_back(lift_from_json(l));

        // the edge list is redundant with the deck keys; verify if present
        if (j.at("complex").contains("edges")) {
            const auto& edges = j["complex"]["edges"];
            if (edges.size() != m.cx->edges.size()) throw io_error("edge list does not match deck");
        }
        return m;
    } catch (const json::exception& e) {
        throw io_error("invalid mapping file " + path + ": " + e.what());
    } catch (const std::logic_error& e) {
        // word parsing (invalid_argument), missing deck directions (out_of_range),
        // and complex-consistency checks all land here
        throw io_error("invalid mapping file " + path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw io_error("invalid mapping file " + path + ": " + e.what());
    }
}

void save_weights(const std::string& path, const surface_complex& cx, const weight_vector& w,
                  std::uint64_t seed) {
    if (w.size() != cx.efrom.size()) throw io_error("weight count does not match edge count");
    json j;
    j["seed"] = seed;
    json ws = json::object();
    for (std::size_t e = 0; e < w.size(); e++) ws[dir_key(cx.efrom[e], cx.eto[e])] = w[e];
    j["weights"] = std::move(ws);
    write_text(path, j.dump(2) + "\n");
}

weight_vector load_weights(const std::string& path, const surface_complex& cx) {
    json j = load_json(path);
    try {
        weight_vector w(cx.efrom.size(), 0.0);
        std::vector<bool> seen(w.size(), false);
        for (const auto& [key, val] : j.at("weights").items()) {
            auto [i, k] = parse_dir_key(key);
            int e = cx.dir_edge(i, k);
            if (e < 0) throw io_error("weight on unknown edge " + key);
            if (!val.is_number()) throw io_error("weight must be numeric: " + key);
            double x = val.get<double>();
            if (!(x > 0.0)) throw io_error("weight must be positive: " + key);
            w[e] = x;
            seen[e] = true;
        }
        for (std::size_t e = 0; e < w.size(); e++)
            if (!seen[e]) throw io_error("missing weight for edge " + dir_key(cx.efrom[e], cx.eto[e]));
        return w;
    } catch (const json::exception& e) {
        throw io_error("invalid weights file " + path + ": " + e.what());
    }
}

void save_degeneration(const std::string& path, const degeneration_path& p, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    j["vertex"] = p.vertex;
    json ws = json::array();
    for (std::size_t k = 0; k < p.waypoints.size(); k++) {
        json w;
        w["t"] = p.waypoints[k].first;
        w["lift"] = lift_to_json(p.waypoints[k].second);
        w["theta_min"] = p.reports[k];
        ws.push_back(std::move(w));
    }
    j["waypoints"] = std::move(ws);
    write_text(path, j.dump(2) + "\n");
}

void save_iterations_csv(const std::string& path, const std::vector<iteration_record>& log,
                         std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=" << seed << "\n";
    os << "iteration,residual,tau\n";
    os.precision(17);
    for (const auto& r : log) os << r.iteration << "," << r.residual << "," << r.tau << "\n";
    write_text(path, os.str());
}

}  // namespace htri

#include "gossiploc/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gossiploc {

namespace {

using nlohmann::json;

// Shortest representation that round-trips through a double.
std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string scenario_doc_to_json(const ScenarioDoc& doc) {
    json j;
    j["dimension"] = doc.dimension;
    j["positions"] = doc.positions;
    if (doc.edges) {
        json edges = json::array();
        for (auto [a, b] : *doc.edges) {
            edges.push_back({a, b});
        }
        j["edges"] = edges;
    }
    if (doc.radius) {
        j["radius"] = *doc.radius;
    }
    j["beacons"] = doc.beacons;
    if (doc.probability_rows) {
        j["probability"] = *doc.probability_rows;
    } else {
        j["probability"] = "uniform";
    }
    json box = json::array();
    for (auto [lo, hi] : doc.init_box) {
        box.push_back({lo, hi});
    }
    j["init_box"] = box;
    j["seed"] = doc.seed;
    return j.dump(2) + "\n";
}

ScenarioDoc scenario_doc_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid scenario document: ") + e.what());
    }
    try {
        ScenarioDoc doc;
        doc.dimension = j.at("dimension").get<int>();
        doc.positions = j.at("positions").get<std::vector<std::vector<double>>>();
        if (j.contains("edges")) {
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : j.at("edges")) {
                edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            }
            doc.edges = std::move(edges);
        }
        if (j.contains("radius")) {
            doc.radius = j.at("radius").get<double>();
        }
        doc.beacons = j.at("beacons").get<std::vector<int>>();
        const auto& prob = j.at("probability");
        if (prob.is_string()) {
            if (prob.get<std::string>() != "uniform") {
                throw ParseError("unknown probability kind: " + prob.get<std::string>());
            }
        } else {
            doc.probability_rows = prob.get<std::vector<std::vector<double>>>();
        }
        for (const auto& r : j.at("init_box")) {
            doc.init_box.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
        }
        doc.seed = j.at("seed").get<std::uint64_t>();
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid scenario document: ") + e.what());
    }
}

void save_scenario_doc(const ScenarioDoc& doc, const std::filesystem::path& path) {
    write_text_file(path, scenario_doc_to_json(doc));
}

ScenarioDoc load_scenario_doc(const std::filesystem::path& path) {
    return scenario_doc_from_json(read_text_file(path));
}

Scenario build_scenario(const ScenarioDoc& doc) {
    std::vector<Vec> positions;
    positions.reserve(doc.positions.size());
    for (const auto& coords : doc.positions) {
        if (static_cast<int>(coords.size()) != doc.dimension) {
            throw ParseError("position length does not match the declared dimension");
        }
        positions.push_back(Eigen::Map<const Vec>(coords.data(), coords.size()));
    }

    Framework fw;
    if (doc.edges) {
        fw = Framework::make(doc.dimension, positions, *doc.edges);
    } else if (doc.radius) {
        fw = proximity_graph(positions, *doc.radius);
    } else {
        throw ParseError("scenario needs either edges or a radius");
    }

    ProbabilityModel prob;
    if (doc.probability_rows) {
        const auto& rows = *doc.probability_rows;
        const int n = fw.node_count();
        if (static_cast<int>(rows.size()) != n) {
            throw ParseError("probability row count does not match the node count");
        }
        prob.selection = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) {
                throw ParseError("probability row length does not match the node count");
            }
            for (int j = 0; j < n; ++j) {
                prob.selection(i, j) = rows[i][j];
            }
        }
    } else {
        prob = uniform_selection(fw);
    }

    Box box;
    box.ranges = doc.init_box;
    return make_scenario(fw, doc.beacons, std::move(prob), box, doc.seed);
}

ScenarioDoc describe_scenario(const Framework& fw, const std::vector<int>& beacons,
                              std::optional<double> radius, const Box& init_box,
                              std::uint64_t seed) {
    ScenarioDoc doc;
    doc.dimension = fw.dim;
    for (const Vec& p : fw.positions) {
        doc.positions.emplace_back(p.data(), p.data() + p.size());
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(fw.edges.size());
    for (const Edge& e : fw.edges) {
        edges.emplace_back(e.a, e.b);
    }
    doc.edges = std::move(edges);
    doc.radius = radius;
    doc.beacons = beacons;
    doc.init_box = init_box.ranges;
    doc.seed = seed;
    return doc;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "slot,waker,partner,case,bearing_error,follower_error\n";
    for (const TraceRecord& rec : trace.records) {
        if (rec.has_event) {
            out << rec.slot << ',' << rec.event.waker << ',' << rec.event.partner << ','
                << to_string(rec.event.kind);
        } else {
            out << rec.slot << ",-1,-1,init";
        }
        out << ',' << format_double(rec.bearing_error) << ',' << format_double(rec.follower_error)
            << '\n';
    }
    write_text_file(path, out.str());
}

void write_trace_metadata(const Trace& trace, const std::filesystem::path& path) {
    json j;
    j["seed"] = trace.seed;
    j["alpha"] = trace.alpha;
    j["scenario_hash"] = trace.scenario_hash;
    j["slots_run"] = trace.slots_run;
    write_text_file(path, j.dump(2) + "\n");
}

void write_montecarlo_csv(const std::vector<EpsilonTimeEstimate>& rows,
                          const std::filesystem::path& path) {
    std::ostringstream out;
    out << "epsilon,empirical_k,bound_k,trials,exceedance_at_bound\n";
    for (const EpsilonTimeEstimate& r : rows) {
        out << format_double(r.epsilon) << ',' << r.empirical_k << ',' << format_double(r.bound_k)
            << ',' << r.trials << ',' << format_double(r.exceedance_at_bound) << '\n';
    }
    write_text_file(path, out.str());
}

std::string spectral_report_to_json(const SpectralReport& report) {
    json j;
    j["lambda_max_Lff"] = report.lambda_max_Lff;
    j["mean_bound"] = report.mean_bound;
    j["second_moment_bound"] = report.second_moment_bound;
    j["alpha_used"] = report.alpha_used;
    j["alpha_admissible"] = report.alpha_admissible;
    j["rho_EW"] = report.rho_EW;
    j["rho_EWtW"] = report.rho_EWtW;
    json k = json::object();
    for (auto [eps, value] : report.k_epsilon) {
        k[format_double(eps)] = value;
    }
    j["K"] = k;
    return j.dump(2) + "\n";
}

void write_spectral_report(const SpectralReport& report, const std::filesystem::path& path) {
    write_text_file(path, spectral_report_to_json(report));
}

void write_snapshot_csv(int dim, const Vec& estimates, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "node";
    for (int c = 0; c < dim; ++c) {
        out << ",c" << c;
    }
    out << '\n';
    const int n = static_cast<int>(estimates.size()) / dim;
    for (int i = 0; i < n; ++i) {
        out << i;
        for (int c = 0; c < dim; ++c) {
            out << ',' << format_double(estimates(static_cast<Eigen::Index>(i) * dim + c));
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace gossiploc

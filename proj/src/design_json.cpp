#include "stbc/design_json.hpp"

#include "stbc/error.hpp"

#include <fstream>

namespace stbc {

using nlohmann::json;

json design_to_json(const LinearDesign& design) {
    json weights = json::array();
    for (const auto& w : design.weights()) {
        json rows = json::array();
        for (std::size_t i = 0; i < w.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < w.cols(); ++j) row.push_back({w(i, j).real(), w(i, j).imag()});
            rows.push_back(std::move(row));
        }
        weights.push_back(std::move(rows));
    }
    return {{"name", design.name()},
            {"L", design.L()},
            {"N", design.N()},
            {"K", design.K()},
            {"weights", std::move(weights)}};
}

LinearDesign design_from_json(const json& j) {
    try {
        const auto L = j.at("L").get<std::size_t>();
        const auto N = j.at("N").get<std::size_t>();
        const auto K = j.at("K").get<std::size_t>();
        const auto name = j.value("name", std::string("unnamed"));
        const auto& jw = j.at("weights");
        if (!jw.is_array() || jw.size() != 2 * K) throw Error("design JSON: weights must hold 2K matrices");
        std::vector<CMat> weights;
        for (const auto& jm : jw) {
            if (!jm.is_array() || jm.size() != L) throw Error("design JSON: weight matrix must have L rows");
            std::vector<Complex> data;
            data.reserve(L * N);
            for (const auto& jr : jm) {
                if (!jr.is_array() || jr.size() != N) throw Error("design JSON: weight row must have N entries");
                for (const auto& je : jr) {
                    if (!je.is_array() || je.size() != 2) throw Error("design JSON: entries are [re, im] pairs");
                    data.emplace_back(je[0].get<double>(), je[1].get<double>());
                }
            }
            weights.emplace_back(L, N, std::move(data));
        }
        return LinearDesign(name, L, N, K, std::move(weights));
    } catch (const json::exception& e) {
        throw Error(std::string("design JSON: ") + e.what());
    }
}

void save_design(const LinearDesign& design, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << design_to_json(design).dump(1) << '\n';
}

LinearDesign load_design(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("design JSON " + path.string() + ": " + e.what());
    }
    return design_from_json(j);
}

} // namespace stbc

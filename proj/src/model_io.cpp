#include "aeod/model_io.hpp"

#include <fstream>
#include <utility>

#include "json.hpp"

#include "aeod/errors.hpp"

namespace aeod {

namespace {

using nlohmann::json;

json to_json_array(const Vector& v) { return json(v); }

Vector vector_from(const json& j, const std::string& field, std::size_t expected) {
    if (!j.contains(field) || !j[field].is_array())
        throw DataError("model file: missing array field " + field);
    Vector v = j[field].get<Vector>();
    if (v.size() != expected)
        throw DataError("model file: field " + field + " has " + std::to_string(v.size()) +
                        " entries, expected " + std::to_string(expected));
    if (!all_finite(v)) throw DataError("model file: non-finite entry in " + field);
    return v;
}

} // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    const std::size_t m = model.config.input_dim;
    const std::size_t l = model.config.hidden_dim;
    if (model.params.w1.rows() != l || model.params.w1.cols() != m ||
        model.params.w2.rows() != m || model.params.w2.cols() != l)
        throw ContractViolation("save_model: parameter shapes disagree with config");

    json doc;
    doc["input_dim"] = m;
    doc["hidden_dim"] = l;
    doc["w1"] = to_json_array(model.params.w1.data());
    doc["b1"] = to_json_array(model.params.b1);
    doc["w2"] = to_json_array(model.params.w2.data());
    doc["b2"] = to_json_array(model.params.b2);
    doc["normalization"] = {{"min", model.norm_params.min}, {"max", model.norm_params.max}};
    if (model.loss) {
        doc["loss_config"] = {{"type", "mse_eig"},
                              {"theta1", model.loss->theta1},
                              {"theta2", model.loss->theta2},
                              {"beta", model.loss->beta},
                              {"intrinsic_dim", model.loss->intrinsic_dim}};
    } else {
        doc["loss_config"] = {{"type", "mse"}};
    }

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw DataError("write failed for " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw DataError("model file " + path + ": " + e.what());
    }

    if (!doc.contains("input_dim") || !doc.contains("hidden_dim"))
        throw DataError("model file: missing dimensions");
    const auto m = doc["input_dim"].get<std::size_t>();
    const auto l = doc["hidden_dim"].get<std::size_t>();
    if (m < 1 || l < 1 || l > m) throw DataError("model file: invalid dimensions");

    TrainedModel model;
    model.config.input_dim = m;
    model.config.hidden_dim = l;
    model.params.w1 = Matrix::from_data(l, m, vector_from(doc, "w1", l * m));
    model.params.b1 = vector_from(doc, "b1", l);
    model.params.w2 = Matrix::from_data(m, l, vector_from(doc, "w2", m * l));
    model.params.b2 = vector_from(doc, "b2", m);

    if (!doc.contains("normalization") || !doc["normalization"].is_object())
        throw DataError("model file: missing normalization");
    model.norm_params.min = vector_from(doc["normalization"], "min", m);
    model.norm_params.max = vector_from(doc["normalization"], "max", m);
    for (std::size_t j = 0; j < m; ++j)
        if (!(model.norm_params.max[j] > model.norm_params.min[j]))
            throw DataError("model file: degenerate normalization bounds");

    if (!doc.contains("loss_config") || !doc["loss_config"].is_object() ||
        !doc["loss_config"].contains("type"))
        throw DataError("model file: missing loss_config");
    const json& lc = doc["loss_config"];
    const auto type = lc["type"].get<std::string>();
    if (type == "mse_eig") {
        LossConfig cfg;
        cfg.theta1 = lc.at("theta1").get<double>();
        cfg.theta2 = lc.at("theta2").get<double>();
        cfg.beta = lc.at("beta").get<double>();
        cfg.intrinsic_dim = lc.at("intrinsic_dim").get<std::size_t>();
        validate(cfg, m);
        model.loss = cfg;
    } else if (type != "mse") {
        throw DataError("model file: unknown loss_config type " + type);
    }
    return model;
}

} // namespace aeod

#include "ehh/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ehh {

using nlohmann::json;

std::string double_to_hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double double_from_hex(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) {
        throw DataError("not a floating-point literal: '" + s + "'");
    }
    return v;
}

namespace {

json hex_array(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(double_to_hex(v(i)));
    }
    return out;
}

Eigen::VectorXd vector_from(const json& arr) {
    Eigen::VectorXd v(arr.size());
    Eigen::Index i = 0;
    for (const auto& item : arr) {
        v(i++) = double_from_hex(item.get<std::string>());
    }
    return v;
}

}  // namespace

std::string model_to_string(const EhhNetwork& net,
                            const std::optional<NarxSpec>& narx) {
    json doc;
    doc["format"] = "ehh-model";
    doc["version"] = 1;
    doc["input_dim"] = net.input_dim();
    doc["normalization"] = {{"min", hex_array(net.normalization().min)},
                            {"max", hex_array(net.normalization().max)}};

    // Per-dimension offset lists, derived from the source nodes.
    json offsets = json::array();
    for (int v = 0; v < net.input_dim(); ++v) {
        json dim = json::array();
        for (const auto& s : net.sources()) {
            if (s.variable == v) dim.push_back(double_to_hex(s.offset));
        }
        offsets.push_back(std::move(dim));
    }
    doc["offsets"] = std::move(offsets);

    json sources = json::array();
    for (const auto& s : net.sources()) {
        sources.push_back(
            {{"variable", s.variable}, {"offset", double_to_hex(s.offset)}});
    }
    doc["source_nodes"] = std::move(sources);

    json inters = json::array();
    for (const auto& node : net.intermediates()) {
        inters.push_back({node.parent1, node.parent2});
    }
    doc["intermediate_nodes"] = std::move(inters);

    if (net.has_weights()) {
        doc["weights"] = hex_array(net.weights());
    }
    if (narx) {
        doc["narx"] = {{"output_lags", narx->output_lags},
                       {"input_lags", narx->input_lags},
                       {"include_current_input", narx->include_current_input}};
    }
    return doc.dump(2) + "\n";
}

EhhNetwork model_from_string(const std::string& text,
                             std::optional<NarxSpec>* narx) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("model document is not valid JSON: ") +
                        e.what());
    }
    if (doc.value("format", "") != "ehh-model") {
        throw DataError("not a model document (missing format tag)");
    }
    if (doc.value("version", 0) != 1) {
        throw DataError("unsupported model version");
    }

    NormalizationParams norm;
    norm.min = vector_from(doc.at("normalization").at("min"));
    norm.max = vector_from(doc.at("normalization").at("max"));

    std::vector<SourceNodeSpec> sources;
    for (const auto& s : doc.at("source_nodes")) {
        sources.push_back({s.at("variable").get<int>(),
                           double_from_hex(s.at("offset").get<std::string>())});
    }
    std::vector<IntermediateNodeSpec> inters;
    for (const auto& node : doc.at("intermediate_nodes")) {
        inters.push_back({node.at(0).get<int>(), node.at(1).get<int>()});
    }
    Eigen::VectorXd weights;
    if (doc.contains("weights")) {
        weights = vector_from(doc.at("weights"));
    }

    if (narx) {
        narx->reset();
        if (doc.contains("narx")) {
            NarxSpec spec;
            spec.output_lags = doc["narx"].at("output_lags").get<int>();
            spec.input_lags = doc["narx"].at("input_lags").get<int>();
            spec.include_current_input =
                doc["narx"].at("include_current_input").get<bool>();
            *narx = spec;
        }
    }
    return EhhNetwork(std::move(norm), std::move(sources), std::move(inters),
                      std::move(weights));
}

void save_model(const std::string& path, const EhhNetwork& net,
                const std::optional<NarxSpec>& narx) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << model_to_string(net, narx);
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

EhhNetwork load_model(const std::string& path,
                      std::optional<NarxSpec>* narx) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_string(buf.str(), narx);
}

}  // namespace ehh

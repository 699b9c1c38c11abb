#include "fouriergen/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace fgen {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void maybe(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("config: learning_rate must be positive");
    if (batch_size == 0) throw std::invalid_argument("config: batch_size must be positive");
    if (beta <= 0.0) throw std::invalid_argument("config: beta must be positive");
    if (epochs == 0) throw std::invalid_argument("config: epochs must be positive");
    if (!(sampling_fraction > 0.0 && sampling_fraction <= 1.0)) {
        throw std::invalid_argument("config: sampling_fraction must lie in (0,1]");
    }
    if (threads == 0) throw std::invalid_argument("config: threads must be positive");
}

void DatasetConfig::validate() const {
    if (kind != "toy" && kind != "csv") {
        throw std::invalid_argument("config: dataset.kind must be 'toy' or 'csv'");
    }
    if (class_names.empty()) throw std::invalid_argument("config: dataset.class_names is empty");
    if (kind == "toy") {
        if (class_names.size() != toy_class_specs().size()) {
            throw std::invalid_argument("config: toy datasets use exactly 4 class names");
        }
        if (toy.length == 0) throw std::invalid_argument("config: dataset.length must be positive");
        if (toy.noise_variance < 0.0) {
            throw std::invalid_argument("config: dataset.noise_variance must be nonnegative");
        }
    }
}

void ExperimentConfig::validate() const {
    dataset.validate();
    training.validate();
    if (model.n_classes != dataset.class_names.size()) {
        throw std::invalid_argument("config: model.n_classes must match dataset.class_names");
    }
    if (model.latent_dim == 0 || model.n_basis == 0) {
        throw std::invalid_argument("config: model dimensions must be positive");
    }
}

ExperimentConfig default_toy_config() {
    ExperimentConfig cfg;
    for (const auto& spec : toy_class_specs()) cfg.dataset.class_names.push_back(spec.name);
    return cfg;
}

namespace {

json to_json(const ExperimentConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    json d;
    d["kind"] = cfg.dataset.kind;
    d["class_names"] = cfg.dataset.class_names;
    d["train_per_class"] = cfg.dataset.toy.train_per_class;
    d["val_per_class"] = cfg.dataset.toy.val_per_class;
    d["test_per_class"] = cfg.dataset.toy.test_per_class;
    d["length"] = cfg.dataset.toy.length;
    d["noise_variance"] = cfg.dataset.toy.noise_variance;
    j["dataset"] = d;
    json m;
    m["latent_dim"] = cfg.model.latent_dim;
    m["n_basis"] = cfg.model.n_basis;
    m["conv_channels"] = cfg.model.conv_channels;
    m["final_conv_channels"] = cfg.model.final_conv_channels;
    m["decoder_hidden"] = cfg.model.decoder_hidden;
    m["decoder_layers"] = cfg.model.decoder_layers;
    m["dropout_rate"] = cfg.model.dropout_rate;
    m["output_gain"] = cfg.model.output_gain;
    m["input_scale"] = cfg.model.input_scale;
    j["model"] = m;
    json t;
    t["learning_rate"] = cfg.training.learning_rate;
    t["batch_size"] = cfg.training.batch_size;
    t["beta"] = cfg.training.beta;
    t["epochs"] = cfg.training.epochs;
    t["sampling_fraction"] = cfg.training.sampling_fraction;
    t["threads"] = cfg.training.threads;
    j["training"] = t;
    return j;
}

ExperimentConfig from_json(const json& j) {
    check_keys(j, {"seed", "dataset", "model", "training"}, "top level");
    ExperimentConfig cfg = default_toy_config();
    maybe(j, "seed", cfg.seed);
    if (j.contains("dataset")) {
        const json& d = j.at("dataset");
        check_keys(d,
                   {"kind", "class_names", "train_per_class", "val_per_class", "test_per_class",
                    "length", "noise_variance"},
                   "dataset");
        maybe(d, "kind", cfg.dataset.kind);
        maybe(d, "class_names", cfg.dataset.class_names);
        maybe(d, "train_per_class", cfg.dataset.toy.train_per_class);
        maybe(d, "val_per_class", cfg.dataset.toy.val_per_class);
        maybe(d, "test_per_class", cfg.dataset.toy.test_per_class);
        maybe(d, "length", cfg.dataset.toy.length);
        maybe(d, "noise_variance", cfg.dataset.toy.noise_variance);
    }
    if (j.contains("model")) {
        const json& m = j.at("model");
        check_keys(m,
                   {"latent_dim", "n_basis", "conv_channels", "final_conv_channels",
                    "decoder_hidden", "decoder_layers", "dropout_rate", "output_gain",
                    "input_scale"},
                   "model");
        maybe(m, "latent_dim", cfg.model.latent_dim);
        maybe(m, "n_basis", cfg.model.n_basis);
        maybe(m, "conv_channels", cfg.model.conv_channels);
        maybe(m, "final_conv_channels", cfg.model.final_conv_channels);
        maybe(m, "decoder_hidden", cfg.model.decoder_hidden);
        maybe(m, "decoder_layers", cfg.model.decoder_layers);
        maybe(m, "dropout_rate", cfg.model.dropout_rate);
        maybe(m, "output_gain", cfg.model.output_gain);
        maybe(m, "input_scale", cfg.model.input_scale);
    }
    if (j.contains("training")) {
        const json& t = j.at("training");
        check_keys(t,
                   {"learning_rate", "batch_size", "beta", "epochs", "sampling_fraction",
                    "threads"},
                   "training");
        maybe(t, "learning_rate", cfg.training.learning_rate);
        maybe(t, "batch_size", cfg.training.batch_size);
        maybe(t, "beta", cfg.training.beta);
        maybe(t, "epochs", cfg.training.epochs);
        maybe(t, "sampling_fraction", cfg.training.sampling_fraction);
        maybe(t, "threads", cfg.training.threads);
    }
    cfg.model.n_classes = cfg.dataset.class_names.size();
    cfg.validate();
    return cfg;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    return from_json(json::parse(text));
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
    return to_json(cfg).dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write config: " + path.string());
    out << config_to_json_text(cfg);
}

}  // namespace fgen

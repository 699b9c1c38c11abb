#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fouriergen/data.hpp"
#include "fouriergen/model.hpp"

namespace fgen {

struct TrainConfig {
    double learning_rate = 1e-4;
    std::size_t batch_size = 512;
    double beta = 1.0;  // 30 is the usual choice for ECG-like data
    std::size_t epochs = 50;
    double sampling_fraction = 0.2;
    std::size_t threads = 2;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;

    void validate() const;
};

struct DatasetConfig {
    std::string kind = "toy";  // "toy" or "csv"
    ToyDatasetConfig toy;
    std::vector<std::string> class_names;  // one-hot order

    void validate() const;
};

struct ExperimentConfig {
    std::uint64_t seed = 42;
    DatasetConfig dataset;
    ModelConfig model;
    TrainConfig training;

    void validate() const;
};

ExperimentConfig default_toy_config();

// JSON round trip; unknown keys are rejected so typos fail loudly.
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg);

}  // namespace fgen

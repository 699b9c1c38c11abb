#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fouriergen/rng.hpp"

namespace fgen {

// One labeled signal. Times live in window coordinates [0, 1); the affine
// map back to the original coordinates is kept in `window`.
struct TimeSeriesSample {
    std::uint64_t id = 0;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> label;  // one-hot
    std::pair<double, double> window{0.0, 1.0};

    std::size_t label_index() const;
    void validate() const;  // ascending times in [0,1), matching lengths, one-hot label
};

struct ToyClassSpec {
    std::pair<double, double> amplitude_range;  // uniform bounds for m
    std::pair<double, double> frequency_range;  // uniform bounds for d
    std::string name;
};

// The four amplitude-frequency classes: low/high amplitude = U(1,4)/U(6,9),
// low/high frequency = U(1,4)/U(8,11).
const std::array<ToyClassSpec, 4>& toy_class_specs();

struct DatasetSplit {
    std::vector<TimeSeriesSample> train;
    std::vector<TimeSeriesSample> validation;
    std::vector<TimeSeriesSample> test;
    std::array<double, 3> ratios{0.8, 0.1, 0.1};
    std::uint64_t seed = 0;
};

// Generator draw, exposed so analysis tests can compare against the
// ground-truth mixture.
struct ToyDraw {
    std::array<double, 6> amplitudes;  // m_1..m_6
    std::array<double, 6> frequencies; // d_1..d_6
};

// Mixture of three cosines and three sines with uniform amplitude and
// frequency draws, on a regular `length`-point grid over [0,1), plus
// i.i.d. Gaussian noise of the given standard deviation.
TimeSeriesSample generate_toy_sample(const ToyClassSpec& spec, std::size_t length,
                                     double noise_stddev, Rng& rng,
                                     std::size_t class_index = 0, std::size_t n_classes = 1,
                                     std::uint64_t id = 0, ToyDraw* draw = nullptr);

struct ToyDatasetConfig {
    std::size_t train_per_class = 1000;
    std::size_t val_per_class = 250;
    std::size_t test_per_class = 250;
    std::size_t length = 500;
    double noise_variance = 0.3;
};

// Exactly balanced four-class dataset; every sample is reproducible from
// (seed, its id).
DatasetSplit build_toy_dataset(const ToyDatasetConfig& cfg, std::uint64_t seed);

// Uniform subsample of round(fraction * L) distinct timesteps (sort order
// kept) and the complementary held-out part. fraction = 1 keeps everything
// and leaves the held-out part empty.
std::pair<TimeSeriesSample, TimeSeriesSample>
subsample_timesteps(const TimeSeriesSample& sample, double fraction, Rng& rng);

// --- CSV contract -----------------------------------------------------
// signals: header `sample_id,t,value`; labels: header `sample_id,class`;
// label map: one class name per line, order defines one-hot positions.

std::vector<std::string> load_label_map(const std::filesystem::path& path);
void write_label_map(const std::filesystem::path& path, const std::vector<std::string>& names);

struct SignalCsvSchema {
    std::filesystem::path labels_path;
    std::vector<std::string> class_names;
};

std::vector<TimeSeriesSample> load_signal_csv(const std::filesystem::path& signals_path,
                                              const SignalCsvSchema& schema);

void write_signal_csv(const std::filesystem::path& signals_path,
                      const std::filesystem::path& labels_path,
                      const std::vector<TimeSeriesSample>& samples,
                      const std::vector<std::string>& class_names);

// Split index file: header `sample_id,split` with split in {train,validation,test}.
void write_split_index(const std::filesystem::path& path, const DatasetSplit& split);
DatasetSplit load_dataset_dir(const std::filesystem::path& dir);
void write_dataset_dir(const std::filesystem::path& dir, const DatasetSplit& split,
                       const std::vector<std::string>& class_names);

// Deterministic seed-driven stratified split; per-class proportions land
// within one sample of the requested ratios.
DatasetSplit split_dataset(const std::vector<TimeSeriesSample>& samples,
                           const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace fgen

#pragma once

#include <cstdint>
#include <filesystem>

#include "fouriergen/config.hpp"
#include "fouriergen/model.hpp"
#include "fouriergen/optimizer.hpp"

namespace fgen {

// Versioned binary container: config snapshot, every parameter tensor by
// name and shape, optimizer moments, and training progress. Raw IEEE-754
// bytes, so a load/save cycle is bit-identical.
struct Checkpoint {
    ExperimentConfig config;
    ModelParameters params;
    OptimizerState opt;
    std::uint64_t epochs_completed = 0;
    double best_val_mse = 0.0;
    bool has_best = false;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace fgen

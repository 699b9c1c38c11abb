#include "fouriergen/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fgen {

namespace {

constexpr char kMagic[4] = {'F', 'G', 'C', 'P'};
constexpr std::uint32_t kVersion = 1;

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

void write_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

double read_f64(std::istream& in) {
    double v = 0.0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

void write_string(std::ostream& out, const std::string& s) {
    write_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
    const std::uint64_t n = read_u64(in);
    std::string s(n, '\0');
    in.read(s.data(), static_cast<std::streamsize>(n));
    return s;
}

void write_tensor(std::ostream& out, const std::string& name, const Tensor& t) {
    write_string(out, name);
    write_u64(out, t.rank());
    for (std::size_t d : t.shape()) write_u64(out, d);
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(double)));
}

Tensor read_tensor(std::istream& in, std::string& name) {
    name = read_string(in);
    const std::uint64_t rank = read_u64(in);
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = read_u64(in);
    Tensor t = Tensor::zeros(shape);
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    return t;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path.string());
    out.write(kMagic, 4);
    const std::uint32_t version = kVersion;
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    write_string(out, config_to_json_text(ckpt.config));
    write_u64(out, ckpt.epochs_completed);
    write_u64(out, ckpt.has_best ? 1 : 0);
    write_f64(out, ckpt.best_val_mse);

    const auto named = const_cast<ModelParameters&>(ckpt.params).named_tensors();
    write_u64(out, named.size());
    for (const auto& [name, t] : named) write_tensor(out, name, *t);

    write_u64(out, ckpt.opt.step);
    write_u64(out, ckpt.opt.first_moment.size());
    for (std::size_t i = 0; i < ckpt.opt.first_moment.size(); ++i) {
        write_tensor(out, named[i].first, ckpt.opt.first_moment[i]);
        write_tensor(out, named[i].first, ckpt.opt.second_moment[i]);
    }
    if (!out) throw std::runtime_error("checkpoint write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("not a checkpoint file: " + path.string());
    }
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (version != kVersion) {
        throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
    }

    Checkpoint ckpt;
    ckpt.config = config_from_json_text(read_string(in));
    ckpt.epochs_completed = read_u64(in);
    ckpt.has_best = read_u64(in) != 0;
    ckpt.best_val_mse = read_f64(in);

    ckpt.params = ModelParameters::initialize(ckpt.config.model, 0);
    const std::uint64_t n_tensors = read_u64(in);
    auto named = ckpt.params.named_tensors();
    if (n_tensors != named.size()) {
        throw std::runtime_error("checkpoint parameter count mismatch in " + path.string());
    }
    for (std::uint64_t i = 0; i < n_tensors; ++i) {
        std::string name;
        Tensor t = read_tensor(in, name);
        Tensor& dst = ckpt.params.tensor_by_name(name);
        if (t.shape() != dst.shape()) {
            throw std::runtime_error("checkpoint shape mismatch for " + name);
        }
        std::memcpy(dst.data(), t.data(), t.size() * sizeof(double));
    }

    ckpt.opt.step = read_u64(in);
    const std::uint64_t n_opt = read_u64(in);
    for (std::uint64_t i = 0; i < n_opt; ++i) {
        std::string name;
        ckpt.opt.first_moment.push_back(read_tensor(in, name));
        ckpt.opt.second_moment.push_back(read_tensor(in, name));
    }
    if (!in) throw std::runtime_error("checkpoint truncated: " + path.string());
    return ckpt;
}

}  // namespace fgen

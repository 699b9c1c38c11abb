#include "fouriergen/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fgen {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) parse_fail(path, line, "non-numeric field '" + field + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line, "non-numeric field '" + field + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line, "value out of range '" + field + "'");
    }
}

std::uint64_t parse_id(const std::string& field, const std::filesystem::path& path,
                       std::size_t line) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(field, &used);
        if (used != field.size()) parse_fail(path, line, "non-numeric sample_id '" + field + "'");
        return v;
    } catch (const std::exception&) {
        parse_fail(path, line, "non-numeric sample_id '" + field + "'");
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::size_t TimeSeriesSample::label_index() const {
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (label[i] == 1.0) return i;
    }
    throw std::logic_error("sample " + std::to_string(id) + ": label is not one-hot");
}

void TimeSeriesSample::validate() const {
    if (times.size() != values.size()) {
        throw std::invalid_argument("sample " + std::to_string(id) + ": times/values length mismatch");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0 && times[i] < 1.0)) {
            throw std::invalid_argument("sample " + std::to_string(id) + ": timestep " +
                                        std::to_string(times[i]) + " outside [0,1)");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::invalid_argument("sample " + std::to_string(id) +
                                        ": timesteps not strictly ascending at index " +
                                        std::to_string(i));
        }
    }
    std::size_t ones = 0;
    for (double v : label) {
        if (v == 1.0) {
            ++ones;
        } else if (v != 0.0) {
            throw std::invalid_argument("sample " + std::to_string(id) + ": label entries must be 0 or 1");
        }
    }
    if (ones != 1) {
        throw std::invalid_argument("sample " + std::to_string(id) + ": label must have exactly one 1");
    }
}

const std::array<ToyClassSpec, 4>& toy_class_specs() {
    static const std::array<ToyClassSpec, 4> specs = {{
        {{1.0, 4.0}, {1.0, 4.0}, "low_amp_low_freq"},
        {{1.0, 4.0}, {8.0, 11.0}, "low_amp_high_freq"},
        {{6.0, 9.0}, {1.0, 4.0}, "high_amp_low_freq"},
        {{6.0, 9.0}, {8.0, 11.0}, "high_amp_high_freq"},
    }};
    return specs;
}

TimeSeriesSample generate_toy_sample(const ToyClassSpec& spec, std::size_t length,
                                     double noise_stddev, Rng& rng,
                                     std::size_t class_index, std::size_t n_classes,
                                     std::uint64_t id, ToyDraw* draw) {
    if (length == 0) throw std::invalid_argument("generate_toy_sample: length must be >= 1");
    if (noise_stddev < 0.0) throw std::invalid_argument("generate_toy_sample: negative noise scale");
    if (!(spec.amplitude_range.first <= spec.amplitude_range.second) ||
        !(spec.frequency_range.first <= spec.frequency_range.second)) {
        throw std::invalid_argument("generate_toy_sample: malformed uniform bounds");
    }

    ToyDraw d;
    for (int i = 0; i < 6; ++i) {
        d.amplitudes[i] = rng.uniform(spec.amplitude_range.first, spec.amplitude_range.second);
        d.frequencies[i] = rng.uniform(spec.frequency_range.first, spec.frequency_range.second);
    }
    if (draw != nullptr) *draw = d;

    TimeSeriesSample s;
    s.id = id;
    s.window = {0.0, 1.0};
    s.times.resize(length);
    s.values.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(length);
        s.times[i] = t;
        double v = 0.0;
        for (int j = 0; j < 3; ++j) {
            v += d.amplitudes[2 * j] * std::cos(kTwoPi * d.frequencies[2 * j] * t);
            v += d.amplitudes[2 * j + 1] * std::sin(kTwoPi * d.frequencies[2 * j + 1] * t);
        }
        if (noise_stddev > 0.0) v += rng.normal(0.0, noise_stddev);
        s.values[i] = v;
    }
    s.label.assign(n_classes, 0.0);
    s.label[class_index] = 1.0;
    return s;
}

DatasetSplit build_toy_dataset(const ToyDatasetConfig& cfg, std::uint64_t seed) {
    const auto& specs = toy_class_specs();
    const double noise_sd = std::sqrt(cfg.noise_variance);
    DatasetSplit split;
    split.seed = seed;
    split.ratios = {
        static_cast<double>(cfg.train_per_class),
        static_cast<double>(cfg.val_per_class),
        static_cast<double>(cfg.test_per_class),
    };
    const double total = split.ratios[0] + split.ratios[1] + split.ratios[2];
    for (double& r : split.ratios) r /= total;

    std::uint64_t id = 0;
    auto emit = [&](std::vector<TimeSeriesSample>& dst, std::size_t per_class) {
        for (std::size_t c = 0; c < specs.size(); ++c) {
            for (std::size_t i = 0; i < per_class; ++i) {
                Rng rng(derive_seed(seed, Stream::kToyGen, id));
                dst.push_back(generate_toy_sample(specs[c], cfg.length, noise_sd, rng, c,
                                                  specs.size(), id));
                ++id;
            }
        }
    };
    emit(split.train, cfg.train_per_class);
    emit(split.validation, cfg.val_per_class);
    emit(split.test, cfg.test_per_class);
    return split;
}

std::pair<TimeSeriesSample, TimeSeriesSample>
subsample_timesteps(const TimeSeriesSample& sample, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("subsample_timesteps: fraction must lie in (0,1], got " +
                                    std::to_string(fraction));
    }
    const std::size_t n = sample.times.size();
    const std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));

    // partial Fisher-Yates over the index set
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < keep && i + 1 < n; ++i) {
        const std::size_t j = i + rng.uniform_index(n - i);
        std::swap(idx[i], idx[j]);
    }
    std::vector<bool> chosen(n, false);
    for (std::size_t i = 0; i < keep; ++i) chosen[idx[i]] = true;

    TimeSeriesSample observed, heldout;
    observed.id = sample.id;
    heldout.id = sample.id;
    observed.label = sample.label;
    heldout.label = sample.label;
    observed.window = sample.window;
    heldout.window = sample.window;
    for (std::size_t i = 0; i < n; ++i) {
        auto& dst = chosen[i] ? observed : heldout;
        dst.times.push_back(sample.times[i]);
        dst.values.push_back(sample.values[i]);
    }
    return {std::move(observed), std::move(heldout)};
}

std::vector<std::string> load_label_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label map: " + path.string());
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) names.push_back(line);
    }
    if (names.empty()) throw std::runtime_error("label map is empty: " + path.string());
    return names;
}

void write_label_map(const std::filesystem::path& path, const std::vector<std::string>& names) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write label map: " + path.string());
    for (const auto& n : names) out << n << "\n";
}

std::vector<TimeSeriesSample> load_signal_csv(const std::filesystem::path& signals_path,
                                              const SignalCsvSchema& schema) {
    std::ifstream in(signals_path);
    if (!in) throw std::runtime_error("cannot open signals file: " + signals_path.string());

    std::map<std::string, std::size_t> class_of;
    for (std::size_t i = 0; i < schema.class_names.size(); ++i) class_of[schema.class_names[i]] = i;

    // labels file: sample_id,class
    std::map<std::uint64_t, std::size_t> label_of;
    {
        std::ifstream lin(schema.labels_path);
        if (!lin) throw std::runtime_error("cannot open labels file: " + schema.labels_path.string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(lin, line)) {
            ++lineno;
            if (lineno == 1 || line.empty()) continue;  // header
            const auto f = split_fields(line);
            if (f.size() != 2) parse_fail(schema.labels_path, lineno, "expected 2 fields");
            const std::uint64_t id = parse_id(f[0], schema.labels_path, lineno);
            const auto it = class_of.find(f[1]);
            if (it == class_of.end()) {
                parse_fail(schema.labels_path, lineno, "unknown class '" + f[1] + "'");
            }
            label_of[id] = it->second;
        }
    }

    // signals, grouped by sample_id in order of first appearance
    std::vector<std::uint64_t> order;
    std::map<std::uint64_t, std::vector<std::pair<double, double>>> rows;
    {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1 || line.empty()) continue;
            const auto f = split_fields(line);
            if (f.size() != 3) parse_fail(signals_path, lineno, "expected 3 fields");
            const std::uint64_t id = parse_id(f[0], signals_path, lineno);
            const double t = parse_double(f[1], signals_path, lineno);
            const double v = parse_double(f[2], signals_path, lineno);
            auto [it, inserted] = rows.try_emplace(id);
            if (inserted) order.push_back(id);
            it->second.emplace_back(t, v);
        }
    }

    std::vector<TimeSeriesSample> samples;
    samples.reserve(order.size());
    for (const std::uint64_t id : order) {
        auto& pts = rows[id];
        std::stable_sort(pts.begin(), pts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].first == pts[i - 1].first) {
                throw std::runtime_error(signals_path.string() + ": sample " + std::to_string(id) +
                                         ": duplicate timestep " + fmt_double(pts[i].first));
            }
        }
        const auto lit = label_of.find(id);
        if (lit == label_of.end()) {
            throw std::runtime_error(schema.labels_path.string() + ": no label for sample " +
                                     std::to_string(id));
        }

        TimeSeriesSample s;
        s.id = id;
        s.label.assign(schema.class_names.size(), 0.0);
        s.label[lit->second] = 1.0;
        const double t_min = pts.front().first;
        const double t_max = pts.back().first;
        double t_end;
        if (pts.size() > 1) {
            // window end extrapolated by the mean spacing, so a regular
            // grid maps onto [0,1) exactly
            t_end = t_max + (t_max - t_min) / static_cast<double>(pts.size() - 1);
        } else {
            t_end = t_min + 1.0;
        }
        s.window = {t_min, t_end};
        const double span = t_end - t_min;
        s.times.reserve(pts.size());
        s.values.reserve(pts.size());
        for (const auto& [t, v] : pts) {
            s.times.push_back((t - t_min) / span);
            s.values.push_back(v);
        }
        s.validate();
        samples.push_back(std::move(s));
    }
    return samples;
}

void write_signal_csv(const std::filesystem::path& signals_path,
                      const std::filesystem::path& labels_path,
                      const std::vector<TimeSeriesSample>& samples,
                      const std::vector<std::string>& class_names) {
    std::ofstream sig(signals_path, std::ios::binary);
    if (!sig) throw std::runtime_error("cannot write signals file: " + signals_path.string());
    std::ofstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("cannot write labels file: " + labels_path.string());

    sig << "sample_id,t,value\n";
    lab << "sample_id,class\n";
    for (const auto& s : samples) {
        const double start = s.window.first;
        const double span = s.window.second - s.window.first;
        for (std::size_t i = 0; i < s.times.size(); ++i) {
            sig << s.id << ',' << fmt_double(start + s.times[i] * span) << ','
                << fmt_double(s.values[i]) << '\n';
        }
        lab << s.id << ',' << class_names.at(s.label_index()) << '\n';
    }
}

void write_split_index(const std::filesystem::path& path, const DatasetSplit& split) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write split index: " + path.string());
    out << "sample_id,split\n";
    for (const auto& s : split.train) out << s.id << ",train\n";
    for (const auto& s : split.validation) out << s.id << ",validation\n";
    for (const auto& s : split.test) out << s.id << ",test\n";
}

DatasetSplit load_dataset_dir(const std::filesystem::path& dir) {
    const auto class_names = load_label_map(dir / "label_map.txt");
    SignalCsvSchema schema{dir / "labels.csv", class_names};
    auto samples = load_signal_csv(dir / "signals.csv", schema);

    std::map<std::uint64_t, int> split_of;
    {
        const auto path = dir / "splits.csv";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open split index: " + path.string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (lineno == 1 || line.empty()) continue;
            const auto f = split_fields(line);
            if (f.size() != 2) parse_fail(path, lineno, "expected 2 fields");
            const std::uint64_t id = parse_id(f[0], path, lineno);
            int part;
            if (f[1] == "train") {
                part = 0;
            } else if (f[1] == "validation") {
                part = 1;
            } else if (f[1] == "test") {
                part = 2;
            } else {
                parse_fail(path, lineno, "unknown split '" + f[1] + "'");
            }
            split_of[id] = part;
        }
    }

    DatasetSplit split;
    for (auto& s : samples) {
        const auto it = split_of.find(s.id);
        if (it == split_of.end()) {
            throw std::runtime_error("splits.csv: no entry for sample " + std::to_string(s.id));
        }
        switch (it->second) {
            case 0: split.train.push_back(std::move(s)); break;
            case 1: split.validation.push_back(std::move(s)); break;
            default: split.test.push_back(std::move(s)); break;
        }
    }
    return split;
}

void write_dataset_dir(const std::filesystem::path& dir, const DatasetSplit& split,
                       const std::vector<std::string>& class_names) {
    std::filesystem::create_directories(dir);
    std::vector<TimeSeriesSample> all;
    all.reserve(split.train.size() + split.validation.size() + split.test.size());
    for (const auto* part : {&split.train, &split.validation, &split.test}) {
        all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end(),
              [](const TimeSeriesSample& a, const TimeSeriesSample& b) { return a.id < b.id; });
    write_signal_csv(dir / "signals.csv", dir / "labels.csv", all, class_names);
    write_label_map(dir / "label_map.txt", class_names);
    write_split_index(dir / "splits.csv", split);
}

DatasetSplit split_dataset(const std::vector<TimeSeriesSample>& samples,
                           const std::array<double, 3>& ratios, std::uint64_t seed) {
    double sum = 0.0;
    for (double r : ratios) {
        if (r < 0.0) throw std::invalid_argument("split_dataset: negative ratio");
        sum += r;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("split_dataset: ratios must sum to 1");
    }

    std::size_t n_classes = 0;
    for (const auto& s : samples) n_classes = std::max(n_classes, s.label.size());
    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        by_class[samples[i].label_index()].push_back(i);
    }

    DatasetSplit out;
    out.ratios = ratios;
    out.seed = seed;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& idx = by_class[c];
        if (idx.empty()) {
            if (ratios[0] > 0.0 || ratios[1] > 0.0 || ratios[2] > 0.0) {
                std::cerr << "warning: class " << c << " has no samples to split\n";
            }
            continue;
        }
        Rng rng(derive_seed(seed, Stream::kSplit, c));
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
        }
        // largest-remainder apportionment
        const std::size_t n = idx.size();
        std::array<std::size_t, 3> counts{};
        std::array<std::pair<double, std::size_t>, 3> rem;
        std::size_t assigned = 0;
        for (std::size_t p = 0; p < 3; ++p) {
            const double exact = ratios[p] * static_cast<double>(n);
            counts[p] = static_cast<std::size_t>(exact);
            rem[p] = {exact - static_cast<double>(counts[p]), p};
            assigned += counts[p];
        }
        std::stable_sort(rem.begin(), rem.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[rem[i % 3].second]++;

        std::size_t pos = 0;
        for (std::size_t p = 0; p < 3; ++p) {
            auto& dst = p == 0 ? out.train : (p == 1 ? out.validation : out.test);
            for (std::size_t i = 0; i < counts[p]; ++i) dst.push_back(samples[idx[pos++]]);
        }
    }
    // deterministic ordering inside each part
    for (auto* part : {&out.train, &out.validation, &out.test}) {
        std::sort(part->begin(), part->end(),
                  [](const TimeSeriesSample& a, const TimeSeriesSample& b) { return a.id < b.id; });
    }
    return out;
}

}  // namespace fgen

#include "ssafs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ssafs/error.hpp"
#include "ssafs/random.hpp"

namespace ssafs {

Dataset::Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names, std::string source)
    : features_(std::move(features)), labels_(std::move(labels)), feature_names_(std::move(feature_names)), source_(std::move(source))
{
    if (labels_.empty()) {
        throw DataError("dataset has no samples");
    }
    if (features_.cols() == 0) {
        throw DataError("dataset has no feature columns");
    }
    if (features_.rows() != labels_.size()) {
        throw ContractError("dataset: feature rows (" + std::to_string(features_.rows()) + ") != label count (" +
                            std::to_string(labels_.size()) + ")");
    }
    if (feature_names_.empty()) {
        for (std::size_t j = 0; j < features_.cols(); ++j) {
            feature_names_.push_back("V" + std::to_string(j + 1));
        }
    }
    if (feature_names_.size() != features_.cols()) {
        throw ContractError("dataset: feature name count does not match column count");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] != kNormal && labels_[i] != kFraud) {
            throw DataError("dataset: non-binary label at row " + std::to_string(i));
        }
    }
    for (std::size_t r = 0; r < features_.rows(); ++r) {
        for (std::size_t c = 0; c < features_.cols(); ++c) {
            if (!std::isfinite(features_(r, c))) {
                throw DataError("dataset: non-finite value at row " + std::to_string(r) + ", column " + feature_names_[c]);
            }
        }
    }
}

std::array<std::size_t, 2> count_classes(std::span<const Label> labels) noexcept
{
    std::array<std::size_t, 2> counts{0, 0};
    for (const Label y : labels) {
        ++counts[y == kFraud ? 1 : 0];
    }
    return counts;
}

std::array<std::size_t, 2> Dataset::class_counts() const noexcept { return count_classes(labels_); }

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const
{
    std::vector<Label> labels;
    labels.reserve(indices.size());
    for (const auto i : indices) {
        labels.push_back(labels_.at(i));
    }
    return Dataset(features_.select_rows(indices), std::move(labels), feature_names_, source_);
}

Dataset Dataset::select_cols(std::span<const std::size_t> indices) const
{
    std::vector<std::string> names;
    for (const auto j : indices) {
        names.push_back(feature_names_.at(j));
    }
    return Dataset(features_.select_cols(indices), labels_, std::move(names), source_);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string cell_ref(std::size_t line_no, const std::string& column)
{
    return "line " + std::to_string(line_no) + ", column '" + column + "'";
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("'" + path.string() + "' is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }

    std::vector<std::string> header;
    for (const auto& h : split_line(line)) {
        header.push_back(trim(h));
    }
    std::set<std::string> seen;
    for (const auto& h : header) {
        if (!seen.insert(h).second) {
            throw DataError("duplicate header name '" + h + "'");
        }
    }
    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end()) {
        throw DataError("label column '" + label_column + "' not found in header");
    }
    const auto label_pos = static_cast<std::size_t>(label_it - header.begin());
    if (header.size() < 2) {
        throw DataError("no feature columns besides '" + label_column + "'");
    }

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != label_pos) {
            names.push_back(header[j]);
        }
    }

    std::vector<double> values;
    std::vector<Label> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string cell = trim(cells[j]);
            if (cell.empty()) {
                throw DataError("missing value at " + cell_ref(line_no, header[j]));
            }
            if (j == label_pos) {
                const std::string token = lower(cell);
                if (token == "0" || token == "normal") {
                    labels.push_back(kNormal);
                } else if (token == "1" || token == "fraud") {
                    labels.push_back(kFraud);
                } else {
                    throw DataError("unknown label '" + cell + "' at " + cell_ref(line_no, header[j]));
                }
                continue;
            }
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (*first == '+') {
                ++first;
            }
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last) {
                throw DataError("unparseable value '" + cell + "' at " + cell_ref(line_no, header[j]));
            }
            if (!std::isfinite(v)) {
                throw DataError("non-finite value '" + cell + "' at " + cell_ref(line_no, header[j]));
            }
            values.push_back(v);
        }
    }
    if (labels.empty()) {
        throw DataError("'" + path.string() + "' has a header but no data rows");
    }
    Matrix features(labels.size(), names.size(), std::move(values));
    return Dataset(std::move(features), std::move(labels), std::move(names), path.string());
}

std::string to_csv(const Dataset& data, const std::string& label_column)
{
    std::string out;
    for (const auto& name : data.feature_names()) {
        out += name;
        out += ',';
    }
    out += label_column;
    out += '\n';

    char buf[64];
    const auto& x = data.features();
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (std::size_t c = 0; c < data.dim(); ++c) {
            const auto res = std::to_chars(buf, buf + sizeof(buf), x(r, c));
            out.append(buf, res.ptr);
            out += ',';
        }
        out += data.labels()[r] == kFraud ? '1' : '0';
        out += '\n';
    }
    return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path, const std::string& label_column)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << to_csv(data, label_column);
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

// ---------------------------------------------------------------------------
// Splitting

void SplitSpec::validate() const
{
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ConfigError("split.test_fraction must lie in (0, 1)");
    }
}

namespace {

std::array<std::vector<std::size_t>, 2> indices_by_class(std::span<const Label> labels)
{
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i] == kFraud ? 1 : 0].push_back(i);
    }
    return by_class;
}

}  // namespace

SplitIndices split_indices(std::span<const Label> labels, const SplitSpec& spec)
{
    spec.validate();
    const std::size_t n = labels.size();
    if (n < 4) {
        throw DataError("split needs at least 4 samples, got " + std::to_string(n));
    }
    const auto total_test = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(spec.test_fraction * static_cast<double>(n))), 1, n - 1);

    Rng rng(derive_seed(spec.seed, 0x5350'4c49'54ULL));  // "SPLIT"
    std::vector<bool> in_test(n, false);

    if (spec.stratified) {
        auto by_class = indices_by_class(labels);
        std::array<std::size_t, 2> quota{};
        std::array<double, 2> remainder{};
        std::size_t assigned = 0;
        for (std::size_t c = 0; c < 2; ++c) {
            if (by_class[c].size() < 2) {
                throw DataError("class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                                " sample(s); stratified split needs at least 2");
            }
            const double exact = spec.test_fraction * static_cast<double>(by_class[c].size());
            quota[c] = static_cast<std::size_t>(std::floor(exact));
            remainder[c] = exact - static_cast<double>(quota[c]);
            assigned += quota[c];
        }
        // Largest remainder; ties go to the lower class index.
        while (assigned < total_test) {
            const std::size_t c = remainder[1] > remainder[0] ? 1 : 0;
            ++quota[c];
            remainder[c] = -1.0;
            ++assigned;
            if (remainder[0] < 0.0 && remainder[1] < 0.0) {
                break;
            }
        }
        for (std::size_t c = 0; c < 2; ++c) {
            quota[c] = std::min(quota[c], by_class[c].size() - 1);
            rng.shuffle(std::span<std::size_t>(by_class[c]));
            for (std::size_t i = 0; i < quota[c]; ++i) {
                in_test[by_class[c][i]] = true;
            }
        }
    } else {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t i = 0; i < total_test; ++i) {
            in_test[order[i]] = true;
        }
    }

    SplitIndices out;
    for (std::size_t i = 0; i < n; ++i) {
        (in_test[i] ? out.test : out.train).push_back(i);
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec)
{
    const auto idx = split_indices(data.labels(), spec);
    return {data.select_rows(idx.train), data.select_rows(idx.test)};
}

std::vector<std::size_t> kfold_assign(std::span<const Label> labels, std::size_t folds, std::uint64_t seed)
{
    if (folds < 2) {
        throw ConfigError("fold count must be at least 2");
    }
    auto by_class = indices_by_class(labels);
    for (std::size_t c = 0; c < 2; ++c) {
        if (by_class[c].size() < folds) {
            throw DataError("class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) + " sample(s), fewer than " +
                            std::to_string(folds) + " folds");
        }
    }
    Rng rng(derive_seed(seed, 0x4b46'4f4c'44ULL));  // "KFOLD"
    std::vector<std::size_t> fold(labels.size(), 0);
    std::size_t deal = 0;
    for (auto& members : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (const auto i : members) {
            fold[i] = deal % folds;
            ++deal;
        }
    }
    return fold;
}

std::vector<std::size_t> kfold_assign(const Dataset& data, std::size_t folds, std::uint64_t seed)
{
    return kfold_assign(data.labels(), folds, seed);
}

// ---------------------------------------------------------------------------
// Synthetic data

std::size_t SynthSpec::fraud_count() const noexcept
{
    return static_cast<std::size_t>(std::llround(fraud_fraction * static_cast<double>(n_samples)));
}

void SynthSpec::validate(std::size_t min_class_count) const
{
    if (n_informative < 1) {
        throw ConfigError("synthetic.n_informative must be at least 1");
    }
    if (!(fraud_fraction > 0.0 && fraud_fraction <= 0.5)) {
        throw ConfigError("synthetic.fraud_fraction must lie in (0, 0.5]");
    }
    if (!(class_separation >= 0.0) || !std::isfinite(class_separation)) {
        throw ConfigError("synthetic.class_separation must be a finite non-negative number");
    }
    if (fraud_count() < min_class_count || n_samples - fraud_count() < min_class_count) {
        throw ConfigError("synthetic spec yields " + std::to_string(fraud_count()) + " fraud samples; at least " +
                          std::to_string(min_class_count) + " per class are required");
    }
}

Dataset generate_synthetic(const SynthSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.n_samples;
    const std::size_t dim = spec.n_informative + spec.n_noise;

    std::vector<Label> labels(n, kNormal);
    std::fill_n(labels.begin(), spec.fraud_count(), kFraud);
    Rng order(derive_seed(spec.seed, 1));
    order.shuffle(std::span<Label>(labels));

    const double shift = spec.class_separation / std::sqrt(static_cast<double>(spec.n_informative));
    Matrix x(n, dim);
    Rng noise(derive_seed(spec.seed, 2));
    for (std::size_t r = 0; r < n; ++r) {
        const double offset = labels[r] == kFraud ? shift : 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            x(r, c) = noise.normal() + (c < spec.n_informative ? offset : 0.0);
        }
    }

    std::ostringstream source;
    source << "synthetic(n=" << n << ",informative=" << spec.n_informative << ",noise=" << spec.n_noise
           << ",separation=" << spec.class_separation << ",fraud_fraction=" << spec.fraud_fraction << ",seed=" << spec.seed << ")";
    return Dataset(std::move(x), std::move(labels), {}, source.str());
}

}  // namespace ssafs

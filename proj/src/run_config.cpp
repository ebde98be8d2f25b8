#include "ssafs/run_config.hpp"

#include <sstream>

#include "ssafs/error.hpp"

namespace ssafs {

using nlohmann::json;

namespace {

constexpr std::array kKinds{ClassifierKind::SsaKnn, ClassifierKind::Knn, ClassifierKind::Nn, ClassifierKind::Nb, ClassifierKind::Svm};

json synth_to_json(const SynthSpec& s)
{
    return json{{"n_samples", s.n_samples},
                {"n_informative", s.n_informative},
                {"n_noise", s.n_noise},
                {"class_separation", s.class_separation},
                {"fraud_fraction", s.fraud_fraction},
                {"seed", s.seed}};
}

// Recursively overlays `patch` onto `base`, rejecting keys `base` lacks.
void merge_checked(json& base, const json& patch, const std::string& where)
{
    if (!patch.is_object()) {
        throw ConfigError("config" + (where.empty() ? std::string() : " at '" + where + "'") + " must be a JSON object");
    }
    for (const auto& [key, value] : patch.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        if (!base.contains(key)) {
            throw ConfigError("unknown config key '" + path + "'");
        }
        json& slot = base[key];
        if (path == "data.synthetic") {
            if (value.is_null()) {
                slot = nullptr;
                continue;
            }
            if (slot.is_null()) {
                slot = synth_to_json(SynthSpec{});
            }
        }
        if (slot.is_object() && value.is_object()) {
            merge_checked(slot, value, path);
        } else {
            slot = value;
        }
    }
}

template <class T>
T read(const json& doc, const char* path)
{
    const json* node = &doc;
    std::string key;
    std::istringstream parts(path);
    while (std::getline(parts, key, '.')) {
        node = &node->at(key);
    }
    try {
        return node->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + path + "' has the wrong type");
    }
}

bool has_path(const json& doc, const char* path)
{
    const json* node = &doc;
    std::string key;
    std::istringstream parts(path);
    while (std::getline(parts, key, '.')) {
        if (!node->is_object() || !node->contains(key)) {
            return false;
        }
        node = &node->at(key);
    }
    return true;
}

}  // namespace

std::string roster_token(ClassifierKind kind)
{
    switch (kind) {
    case ClassifierKind::SsaKnn: return "ssa_knn";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::Nn: return "nn";
    case ClassifierKind::Nb: return "nb";
    case ClassifierKind::Svm: return "svm";
    }
    return "?";
}

std::string row_label(ClassifierKind kind)
{
    std::string s = roster_token(kind);
    for (auto& c : s) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return s;
}

ClassifierKind parse_classifier(std::string_view token)
{
    for (const auto kind : kKinds) {
        if (roster_token(kind) == token) {
            return kind;
        }
    }
    throw ConfigError("unknown classifier '" + std::string(token) + "' (expected ssa_knn, knn, nn, nb or svm)");
}

std::vector<ClassifierKind> parse_roster(std::string_view list)
{
    std::vector<ClassifierKind> out;
    std::string token;
    std::istringstream in{std::string(list)};
    while (std::getline(in, token, ',')) {
        const auto first = token.find_first_not_of(' ');
        const auto last = token.find_last_not_of(' ');
        if (first == std::string::npos) {
            continue;
        }
        const auto kind = parse_classifier(token.substr(first, last - first + 1));
        if (std::find(out.begin(), out.end(), kind) != out.end()) {
            throw ConfigError("classifier '" + roster_token(kind) + "' listed twice in roster");
        }
        out.push_back(kind);
    }
    return out;
}

void RunConfig::set_seed(std::uint64_t value)
{
    seed = value;
    split.seed = value;
    ssa.seed = value;
    fitness.seed = value;
    classifiers.mlp.seed = value;
    classifiers.svm.seed = value;
    if (data.synthetic) {
        data.synthetic->seed = value;
    }
}

void RunConfig::validate() const
{
    if (data.path.empty() && !data.synthetic) {
        throw ConfigError("no dataset: give data.path (--data) or data.synthetic");
    }
    if (!data.path.empty() && data.synthetic) {
        throw ConfigError("data.path and data.synthetic are mutually exclusive");
    }
    if (data.synthetic) {
        data.synthetic->validate(fitness.cv_folds);
    }
    split.validate();
    ssa.validate();
    fitness.validate();
    classifiers.mlp.validate();
    classifiers.svm.validate();
    if (classifiers.knn_k < 1) {
        throw ConfigError("classifiers.knn_k must be positive");
    }
    if (roster.empty()) {
        throw ConfigError("classifier roster is empty");
    }
}

json to_json(const RunConfig& c)
{
    json data{{"path", c.data.path}, {"label_column", c.data.label_column}, {"synthetic", nullptr}};
    if (c.data.synthetic) {
        data["synthetic"] = synth_to_json(*c.data.synthetic);
    }
    json roster = json::array();
    for (const auto kind : c.roster) {
        roster.push_back(roster_token(kind));
    }
    return json{
        {"seed", c.seed},
        {"data", data},
        {"split", {{"test_fraction", c.split.test_fraction}, {"stratified", c.split.stratified}, {"seed", c.split.seed}}},
        {"ssa",
         {{"population_size", c.ssa.population_size},
          {"food_sources", c.ssa.food_sources},
          {"gliding_constant", c.ssa.gliding_constant},
          {"predator_probability", c.ssa.predator_probability},
          {"gliding_distance_range", {c.ssa.glide_min, c.ssa.glide_max}},
          {"levy_exponent", c.ssa.levy_exponent},
          {"max_iterations", c.ssa.max_iterations},
          {"seed", c.ssa.seed},
          {"workers", c.ssa.workers}}},
        {"fitness",
         {{"alpha", c.fitness.alpha},
          {"k_neighbors", c.fitness.k_neighbors},
          {"cv_folds", c.fitness.cv_folds},
          {"threshold", c.fitness.threshold},
          {"empty_mask_fitness", c.fitness.empty_mask_fitness},
          {"seed", c.fitness.seed}}},
        {"classifiers",
         {{"knn_k", c.classifiers.knn_k},
          {"mlp",
           {{"hidden", c.classifiers.mlp.hidden},
            {"learning_rate", c.classifiers.mlp.learning_rate},
            {"epochs", c.classifiers.mlp.epochs},
            {"seed", c.classifiers.mlp.seed}}},
          {"svm", {{"lambda", c.classifiers.svm.lambda}, {"epochs", c.classifiers.svm.epochs}, {"seed", c.classifiers.svm.seed}}}}},
        {"roster", roster},
        {"apply_mask_to_all", c.apply_mask_to_all},
        {"oracle_max_dim", c.oracle_max_dim},
        {"record_timings", c.record_timings},
    };
}

RunConfig config_from_json(const json& input)
{
    const json& doc = input.is_object() && input.contains("config") && input.contains("command") ? input.at("config") : input;
    json merged = to_json(RunConfig{});
    merge_checked(merged, doc, "");

    RunConfig c;
    c.seed = read<std::uint64_t>(merged, "seed");
    c.data.path = read<std::string>(merged, "data.path");
    c.data.label_column = read<std::string>(merged, "data.label_column");
    if (!merged["data"]["synthetic"].is_null()) {
        SynthSpec s;
        s.n_samples = read<std::size_t>(merged, "data.synthetic.n_samples");
        s.n_informative = read<std::size_t>(merged, "data.synthetic.n_informative");
        s.n_noise = read<std::size_t>(merged, "data.synthetic.n_noise");
        s.class_separation = read<double>(merged, "data.synthetic.class_separation");
        s.fraud_fraction = read<double>(merged, "data.synthetic.fraud_fraction");
        s.seed = read<std::uint64_t>(merged, "data.synthetic.seed");
        c.data.synthetic = s;
    }
    c.split.test_fraction = read<double>(merged, "split.test_fraction");
    c.split.stratified = read<bool>(merged, "split.stratified");
    c.split.seed = read<std::uint64_t>(merged, "split.seed");

    c.ssa.population_size = read<std::size_t>(merged, "ssa.population_size");
    c.ssa.food_sources = read<std::size_t>(merged, "ssa.food_sources");
    c.ssa.gliding_constant = read<double>(merged, "ssa.gliding_constant");
    c.ssa.predator_probability = read<double>(merged, "ssa.predator_probability");
    const auto range = read<std::vector<double>>(merged, "ssa.gliding_distance_range");
    if (range.size() != 2) {
        throw ConfigError("ssa.gliding_distance_range must have two entries");
    }
    c.ssa.glide_min = range[0];
    c.ssa.glide_max = range[1];
    c.ssa.levy_exponent = read<double>(merged, "ssa.levy_exponent");
    c.ssa.max_iterations = read<std::size_t>(merged, "ssa.max_iterations");
    c.ssa.seed = read<std::uint64_t>(merged, "ssa.seed");
    c.ssa.workers = read<unsigned>(merged, "ssa.workers");

    c.fitness.alpha = read<double>(merged, "fitness.alpha");
    c.fitness.k_neighbors = read<std::size_t>(merged, "fitness.k_neighbors");
    c.fitness.cv_folds = read<std::size_t>(merged, "fitness.cv_folds");
    c.fitness.threshold = read<double>(merged, "fitness.threshold");
    c.fitness.empty_mask_fitness = read<double>(merged, "fitness.empty_mask_fitness");
    c.fitness.seed = read<std::uint64_t>(merged, "fitness.seed");

    c.classifiers.knn_k = read<std::size_t>(merged, "classifiers.knn_k");
    c.classifiers.mlp.hidden = read<std::size_t>(merged, "classifiers.mlp.hidden");
    c.classifiers.mlp.learning_rate = read<double>(merged, "classifiers.mlp.learning_rate");
    c.classifiers.mlp.epochs = read<std::size_t>(merged, "classifiers.mlp.epochs");
    c.classifiers.mlp.seed = read<std::uint64_t>(merged, "classifiers.mlp.seed");
    c.classifiers.svm.lambda = read<double>(merged, "classifiers.svm.lambda");
    c.classifiers.svm.epochs = read<std::size_t>(merged, "classifiers.svm.epochs");
    c.classifiers.svm.seed = read<std::uint64_t>(merged, "classifiers.svm.seed");

    const json& roster = merged.at("roster");
    if (roster.is_string()) {
        c.roster = parse_roster(roster.get<std::string>());
    } else if (roster.is_array()) {
        std::string joined;
        for (const auto& item : roster) {
            if (!item.is_string()) {
                throw ConfigError("roster entries must be strings");
            }
            joined += item.get<std::string>() + ",";
        }
        c.roster = parse_roster(joined);
    } else {
        throw ConfigError("roster must be a list or a comma-separated string");
    }
    // The top-level seed fills every nested seed the document leaves unset.
    for (const auto& [path, slot] : {std::pair{"split.seed", &c.split.seed}, std::pair{"ssa.seed", &c.ssa.seed},
                                     std::pair{"fitness.seed", &c.fitness.seed}, std::pair{"classifiers.mlp.seed", &c.classifiers.mlp.seed},
                                     std::pair{"classifiers.svm.seed", &c.classifiers.svm.seed}}) {
        if (!has_path(doc, path)) {
            *slot = c.seed;
        }
    }
    if (c.data.synthetic && !has_path(doc, "data.synthetic.seed")) {
        c.data.synthetic->seed = c.seed;
    }
    c.apply_mask_to_all = read<bool>(merged, "apply_mask_to_all");
    c.oracle_max_dim = read<std::size_t>(merged, "oracle_max_dim");
    c.record_timings = read<bool>(merged, "record_timings");
    return c;
}

void apply_override(json& doc, std::string_view dotted_key, std::string_view value)
{
    if (dotted_key.empty()) {
        throw ConfigError("empty override key");
    }
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) {
        parsed = std::string(value);
    }
    json* node = &doc;
    std::string key;
    std::istringstream parts{std::string(dotted_key)};
    std::vector<std::string> keys;
    while (std::getline(parts, key, '.')) {
        if (key.empty()) {
            throw ConfigError("malformed override key '" + std::string(dotted_key) + "'");
        }
        keys.push_back(key);
    }
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
        json& next = (*node)[keys[i]];
        if (next.is_null()) {
            next = json::object();
        }
        if (!next.is_object()) {
            throw ConfigError("override '" + std::string(dotted_key) + "' descends into a non-object value");
        }
        node = &next;
    }
    (*node)[keys.back()] = std::move(parsed);
}

}  // namespace ssafs

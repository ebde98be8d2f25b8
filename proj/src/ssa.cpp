#include "ssafs/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "ssafs/error.hpp"
#include "ssafs/parallel.hpp"

namespace ssafs::ssa {

namespace {

enum Stream : std::uint64_t { kInit = 1, kGlide = 2, kSplit = 3, kLevy = 4 };

void require_roles(const OptimizerState& state)
{
    if (state.roles.size() != state.size()) {
        throw StateError("ssa: roles have not been assigned");
    }
}

void randomize_row(OptimizerState& state, std::size_t i, Rng& rng)
{
    auto row = state.positions.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = position_from_unit(state.bounds.lower[j], state.bounds.upper[j], rng.uniform());
    }
}

void glide_row(OptimizerState& state, std::size_t i, std::span<const double> target, double glide, double gc)
{
    auto row = state.positions.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = glide_toward(row[j], target[j], glide, gc, state.bounds.lower[j], state.bounds.upper[j]);
    }
}

std::string format_position(std::span<const double> x)
{
    std::ostringstream out;
    out.precision(17);
    out << '[';
    for (std::size_t j = 0; j < x.size(); ++j) {
        out << (j ? ", " : "") << x[j];
    }
    out << ']';
    return out.str();
}

void update_best(OptimizerState& state)
{
    const std::size_t h = state.hickory();
    const double f = *state.fitness[h];
    if (!state.best_fitness || f < *state.best_fitness) {
        state.best_fitness = f;
        const auto row = state.positions.row(h);
        state.best_position.assign(row.begin(), row.end());
    }
    state.convergence.push_back({state.iteration, *state.best_fitness});
}

}  // namespace

void SsaParams::validate() const
{
    if (population_size < 1) {
        throw ConfigError("ssa.population_size must be positive");
    }
    if (!(food_sources > 1 && food_sources < population_size)) {
        throw ConfigError("ssa.food_sources must satisfy 1 < food_sources < population_size");
    }
    if (!(predator_probability >= 0.0 && predator_probability <= 1.0)) {
        throw ConfigError("ssa.predator_probability must lie in [0, 1]");
    }
    if (!(glide_min < glide_max) || !std::isfinite(glide_min) || !std::isfinite(glide_max)) {
        throw ConfigError("ssa.gliding_distance_range must be a finite interval with lo < hi");
    }
    if (!std::isfinite(gliding_constant)) {
        throw ConfigError("ssa.gliding_constant must be finite");
    }
    if (!(levy_exponent > 1.0 && levy_exponent <= 2.0)) {
        throw ConfigError("ssa.levy_exponent must lie in (1, 2]");
    }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) { return Bounds{std::vector<double>(dim, lo), std::vector<double>(dim, hi)}; }

void Bounds::validate() const
{
    if (lower.size() != upper.size()) {
        throw ConfigError("bounds: lower and upper lengths differ");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j]) || !std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
            throw ConfigError("bounds: need finite lower < upper at dimension " + std::to_string(j));
        }
    }
}

std::size_t OptimizerState::hickory() const
{
    require_roles(*this);
    const auto it = std::find(roles.begin(), roles.end(), TreeRole::Hickory);
    return static_cast<std::size_t>(it - roles.begin());
}

std::vector<std::size_t> OptimizerState::members(TreeRole role) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        if (roles[i] == role) {
            out.push_back(i);
        }
    }
    return out;
}

double position_from_unit(double lower, double upper, double u) noexcept { return lower + u * (upper - lower); }

double glide_toward(double x, double target, double glide, double gc, double lower, double upper) noexcept
{
    return std::clamp(x + glide * gc * (target - x), lower, upper);
}

double levy_position(double lower, double upper, double step) noexcept { return std::clamp(lower + step * (upper - lower), lower, upper); }

double mantegna_step(double beta, Rng& rng)
{
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    const double sigma = std::pow(num / den, 1.0 / beta);
    const double u = rng.normal() * sigma;
    double v = std::abs(rng.normal());
    if (v == 0.0) {
        v = std::numeric_limits<double>::min();
    }
    return u / std::pow(v, 1.0 / beta);
}

double seasonal_threshold(std::size_t t, std::size_t max_iterations) noexcept
{
    const double exponent = static_cast<double>(t) / (static_cast<double>(max_iterations) / 2.5);
    return 10e-6 / std::pow(365.0, exponent);
}

OptimizerState init_population(const SsaParams& params, const Bounds& bounds, std::size_t dim)
{
    params.validate();
    bounds.validate();
    if (dim < 1) {
        throw ConfigError("ssa: dimension must be at least 1");
    }
    if (bounds.dim() != dim) {
        throw ConfigError("ssa: bounds have " + std::to_string(bounds.dim()) + " dimensions, expected " + std::to_string(dim));
    }
    OptimizerState state;
    state.bounds = bounds;
    state.seed = params.seed;
    state.positions = Matrix(params.population_size, dim);
    state.fitness.assign(params.population_size, std::nullopt);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        Rng rng(derive_seed(params.seed, kInit, 0, i));
        randomize_row(state, i, rng);
    }
    return state;
}

void evaluate(OptimizerState& state, const Objective& objective, unsigned workers)
{
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (!state.fitness[i]) {
            pending.push_back(i);
        }
    }
    parallel_for(pending.size(), workers, [&](std::size_t k) {
        const std::size_t i = pending[k];
        const auto x = state.positions.row(i);
        const double f = objective(x);
        if (!std::isfinite(f)) {
            std::ostringstream msg;
            msg << "ssa: objective returned " << f << " for squirrel " << i << " at position " << format_position(x);
            throw NumericError(msg.str());
        }
        state.fitness[i] = f;
    });
}

void assign_roles(OptimizerState& state, const SsaParams& params)
{
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!state.fitness[i]) {
            throw StateError("ssa: squirrel " + std::to_string(i) + " has no fitness");
        }
    }
    if (params.food_sources > n) {
        throw ConfigError("ssa: more food sources than squirrels");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return *state.fitness[a] < *state.fitness[b]; });

    state.roles.assign(n, TreeRole::Normal);
    state.roles[order[0]] = TreeRole::Hickory;
    for (std::size_t r = 1; r < params.food_sources; ++r) {
        state.roles[order[r]] = TreeRole::Acorn;
    }
}

void glide_step(OptimizerState& state, const SsaParams& params)
{
    require_roles(state);
    const std::size_t step = state.iteration + 1;
    const Matrix snapshot = state.positions;
    const std::size_t h = state.hickory();
    const auto hickory = snapshot.row(h);
    const auto acorns = state.members(TreeRole::Acorn);
    auto normals = state.members(TreeRole::Normal);

    for (const auto i : acorns) {
        Rng rng(derive_seed(state.seed, kGlide, step, i));
        if (rng.uniform() >= params.predator_probability) {
            glide_row(state, i, hickory, rng.uniform(params.glide_min, params.glide_max), params.gliding_constant);
        } else {
            randomize_row(state, i, rng);
        }
        state.fitness[i].reset();
    }

    // floor(half) of the Normal squirrels head for an acorn tree, the rest
    // for the hickory tree.
    Rng split(derive_seed(state.seed, kSplit, step));
    split.shuffle(std::span<std::size_t>(normals));
    const std::size_t to_acorn = normals.size() / 2;
    for (std::size_t k = 0; k < normals.size(); ++k) {
        const std::size_t i = normals[k];
        Rng rng(derive_seed(state.seed, kGlide, step, i));
        if (rng.uniform() >= params.predator_probability) {
            const double glide = rng.uniform(params.glide_min, params.glide_max);
            const auto target = k < to_acorn && !acorns.empty() ? snapshot.row(acorns[rng.below(acorns.size())]) : hickory;
            glide_row(state, i, target, glide, params.gliding_constant);
        } else {
            randomize_row(state, i, rng);
        }
        state.fitness[i].reset();
    }
}

double seasonal_constant(const OptimizerState& state)
{
    const auto hickory = state.positions.row(state.hickory());
    double s = 0.0;
    for (const auto i : state.members(TreeRole::Acorn)) {
        const auto row = state.positions.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double d = row[j] - hickory[j];
            s += d * d;
        }
    }
    return std::sqrt(s);
}

bool seasonal_check(const OptimizerState& state, const SsaParams& params)
{
    require_roles(state);
    return seasonal_constant(state) < seasonal_threshold(state.iteration, params.max_iterations);
}

void levy_relocate(OptimizerState& state, const SsaParams& params)
{
    require_roles(state);
    const std::size_t step = state.iteration + 1;
    for (const auto i : state.members(TreeRole::Normal)) {
        Rng rng(derive_seed(state.seed, kLevy, step, i));
        auto row = state.positions.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            row[j] = levy_position(state.bounds.lower[j], state.bounds.upper[j], mantegna_step(params.levy_exponent, rng));
        }
        state.fitness[i].reset();
    }
}

SsaResult run(const Objective& objective, const SsaParams& params, const Bounds& bounds, std::size_t dim)
{
    OptimizerState state = init_population(params, bounds, dim);
    evaluate(state, objective, params.workers);
    assign_roles(state, params);
    update_best(state);

    while (state.iteration < params.max_iterations) {
        glide_step(state, params);
        if (seasonal_check(state, params)) {
            levy_relocate(state, params);
        }
        evaluate(state, objective, params.workers);
        assign_roles(state, params);
        ++state.iteration;
        update_best(state);
    }
    return SsaResult{state.best_position, *state.best_fitness, state.convergence};
}

}  // namespace ssafs::ssa

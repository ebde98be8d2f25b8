#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ssafs/matrix.hpp"
#include "ssafs/random.hpp"

namespace ssafs::ssa {

struct SsaParams {
    std::size_t population_size = 50;
    /// Hickory tree plus acorn trees.
    std::size_t food_sources = 4;
    double gliding_constant = 1.9;
    double predator_probability = 0.1;
    double glide_min = 0.5;
    double glide_max = 1.11;
    double levy_exponent = 1.5;
    std::size_t max_iterations = 100;
    std::uint64_t seed = 0;
    /// Threads for objective evaluation; 0 = hardware concurrency. Results
    /// do not depend on this value.
    unsigned workers = 0;

    void validate() const;
};

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dim, double lo, double hi);
    std::size_t dim() const noexcept { return lower.size(); }
    void validate() const;
};

enum class TreeRole { Hickory, Acorn, Normal };

struct ConvergencePoint {
    std::size_t iteration = 0;
    double best_fitness = 0.0;

    bool operator==(const ConvergencePoint&) const = default;
};

/// Population of one run. Random draws are taken from substreams derived
/// from (seed, iteration, squirrel), never from shared generator state.
struct OptimizerState {
    Bounds bounds;
    Matrix positions;  // population_size x dim
    std::vector<std::optional<double>> fitness;
    std::vector<TreeRole> roles;
    std::size_t iteration = 0;
    std::vector<double> best_position;
    std::optional<double> best_fitness;
    std::vector<ConvergencePoint> convergence;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return positions.rows(); }
    std::size_t dim() const noexcept { return positions.cols(); }
    std::size_t hickory() const;
    std::vector<std::size_t> members(TreeRole role) const;
};

using Objective = std::function<double(std::span<const double>)>;

struct SsaResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// max_iterations + 1 points; entry 0 is the initial population's best.
    std::vector<ConvergencePoint> convergence;
};

// Formula kernels --------------------------------------------------------

/// lower + u (upper - lower).
double position_from_unit(double lower, double upper, double u) noexcept;

/// x + glide * gc * (target - x), clamped to [lower, upper].
double glide_toward(double x, double target, double glide, double gc, double lower, double upper) noexcept;

/// lower + step (upper - lower), clamped to [lower, upper].
double levy_position(double lower, double upper, double step) noexcept;

/// Mantegna's algorithm for a Levy-stable step with exponent beta.
double mantegna_step(double beta, Rng& rng);

/// Minimum seasonal constant at iteration t of T: 1e-5 / 365^(t / (T / 2.5)).
double seasonal_threshold(std::size_t t, std::size_t max_iterations) noexcept;

// Operations --------------------------------------------------------------

OptimizerState init_population(const SsaParams& params, const Bounds& bounds, std::size_t dim);

/// Scores every squirrel whose fitness is unset. Throws NumericError naming
/// the squirrel and its position if the objective returns a non-finite value.
void evaluate(OptimizerState& state, const Objective& objective, unsigned workers = 1);

/// Lowest fitness becomes Hickory, the next food_sources - 1 Acorn, the
/// rest Normal. Ties go to the lower squirrel index.
void assign_roles(OptimizerState& state, const SsaParams& params);

/// Moves Acorn squirrels toward the Hickory tree and Normal squirrels
/// toward Acorn or Hickory trees; predators re-randomize a squirrel instead.
/// Moved squirrels lose their fitness. The Hickory squirrel stays put.
void glide_step(OptimizerState& state, const SsaParams& params);

/// Root of the summed squared distances between Acorn squirrels and the
/// Hickory squirrel.
double seasonal_constant(const OptimizerState& state);

/// True (winter) when the seasonal constant falls below the threshold for
/// the current iteration; Normal squirrels then relocate.
bool seasonal_check(const OptimizerState& state, const SsaParams& params);

/// Levy-flight relocation of every Normal squirrel.
void levy_relocate(OptimizerState& state, const SsaParams& params);

SsaResult run(const Objective& objective, const SsaParams& params, const Bounds& bounds, std::size_t dim);

}  // namespace ssafs::ssa

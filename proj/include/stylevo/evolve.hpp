#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylevo/genome.hpp"
#include "stylevo/metrics.hpp"
#include "stylevo/pareto.hpp"
#include "stylevo/plugin.hpp"

namespace stylevo {

struct Individual {
    Genome genome;
    std::optional<ObjectivePair> objectives;
    int rank = -1;
    double crowding = 0.0;
    bool feasible = true;
};

// One content image paired with its condition's style reference.
struct EvalSample {
    Image content;
    StyleContext ctx;
};

struct RunConfig {
    std::uint64_t seed = 0;
    int population_size = 20;
    int offspring_size = 20;
    int generations = 20;
    std::vector<OperatorId> operator_set; // Stop excluded; appended by the genome layer
    std::vector<EvalSample> samples;
    int pyramid_levels = kDefaultPyramidLevels;
    PluginTable plugins;
};

// Throws std::invalid_argument on broken invariants (population_size < 2,
// offspring_size < 1, no samples, empty operator set, Stop listed as an
// operator).
void validate(const RunConfig& cfg);

struct GenerationEntry {
    std::string pipeline;
    double content_distance = 0.0;
    double style_distance = 0.0;
    int rank = 0;
};

struct GenerationRecord {
    int generation = 0;
    std::vector<GenerationEntry> entries;
};

// Objectives sentinel for individuals whose evaluation failed.
inline constexpr ObjectivePair kInfeasibleObjectives{1.0, 1.0};

// Phenotype-keyed fitness cache, safe for concurrent evaluation. Results for
// a key are unique because evaluation is deterministic; recomputing a key in
// a race is allowed and harmless.
class FitnessCache {
public:
    struct Entry {
        ObjectivePair objectives;
        bool feasible = true;
    };

    std::optional<Entry> find(const std::string& pipeline_key) const;
    void insert(const std::string& pipeline_key, const Entry& e);

    // Number of lookups answered from the cache / evaluated from scratch.
    std::size_t hits() const;
    std::size_t computations() const;
    void note_computation();

private:
    mutable std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
    mutable std::size_t hits_ = 0;
    std::size_t computations_ = 0;
};

// Applies the decoded pipeline to every sample and averages the paired
// metrics; operator failure yields an infeasible entry with the (1,1)
// sentinel instead of propagating.
FitnessCache::Entry evaluate_pipeline(const Pipeline& pipeline, const RunConfig& cfg,
                                      FitnessCache& cache);
void evaluate(Individual& ind, const RunConfig& cfg, FitnessCache& cache);

// Evaluates every individual lacking objectives, in parallel; results land in
// index order so the outcome is independent of the worker count.
void evaluate_all(std::vector<Individual>& pop, const RunConfig& cfg, FitnessCache& cache);

// Dominance between individuals: every feasible individual dominates every
// infeasible one; otherwise compares objective pairs.
bool dominates_individual(const Individual& a, const Individual& b);

// Deb's fast non-dominated sort. Writes rank back into the individuals and
// returns the fronts as index lists. Throws std::invalid_argument when an
// individual is unevaluated.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::vector<Individual>& pop);

// Crowding distances for one front (indices into pop): boundary individuals
// per objective get +infinity, interior ones the sum of normalized gaps;
// objectives with zero spread are skipped. Ties keep stable input order.
void crowding_distance(std::vector<Individual>& pop, const std::vector<std::size_t>& front);

// Ranks and crowds the whole population.
void sort_and_crowd(std::vector<Individual>& pop);

// Crowded-comparison rule: lower rank wins, ties by larger crowding,
// remaining ties by rng coin.
std::size_t tournament_winner(const std::vector<Individual>& pop, std::size_t a, std::size_t b,
                              Rng& rng);

// Binary tournament between two uniformly drawn candidates.
std::size_t tournament(const std::vector<Individual>& pop, Rng& rng);

// Two independent tournaments.
std::pair<std::size_t, std::size_t> select_parents(const std::vector<Individual>& pop, Rng& rng);

// Generates offspring_size children via crossover + mutation with duplicate
// elimination against parents and siblings (50 attempts per slot, then the
// candidate is accepted), and evaluates them. Duplicates are detected on the
// decoded pipeline, since suffixes after Stop are non-functional.
std::vector<Individual> make_offspring(const std::vector<Individual>& pop, const RunConfig& cfg,
                                       Rng& rng, FitnessCache& cache);

// NSGA-II elitist survival over the combined pool: fills front by front, the
// split front truncated by descending crowding distance (stable on ties).
std::vector<Individual> survive(const std::vector<Individual>& pool, int population_size);

struct RunResult {
    std::vector<Individual> population;
    std::vector<GenerationRecord> records; // generations + 1 entries
    std::vector<Individual> front;         // rank 0, ascending content_distance
};

RunResult run(const RunConfig& cfg);
RunResult run(const RunConfig& cfg, FitnessCache& cache);

} // namespace stylevo

#include "stylevo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stylevo {

void validate(const RunConfig& cfg) {
    if (cfg.population_size < 2)
        throw std::invalid_argument("population_size must be at least 2");
    if (cfg.offspring_size < 1)
        throw std::invalid_argument("offspring_size must be at least 1");
    if (cfg.generations < 0)
        throw std::invalid_argument("generations must be non-negative");
    if (cfg.samples.empty())
        throw std::invalid_argument("at least one content/style pair is required");
    if (cfg.operator_set.empty())
        throw std::invalid_argument("operator set must not be empty");
    if (cfg.pyramid_levels < 1)
        throw std::invalid_argument("pyramid_levels must be at least 1");
    for (const OperatorId& op : cfg.operator_set) {
        if (op.kind == OpKind::Stop)
            throw std::invalid_argument("the terminal node is implicit and cannot be listed");
        if (op.kind == OpKind::External && !cfg.plugins.count(op.name))
            throw std::invalid_argument("no plugin registered for operator '" + op.name + "'");
    }
    for (std::size_t i = 0; i < cfg.operator_set.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.operator_set.size(); ++j)
            if (cfg.operator_set[i] == cfg.operator_set[j])
                throw std::invalid_argument("duplicate operator in operator set: " +
                                            cfg.operator_set[i].label());
}

std::optional<FitnessCache::Entry> FitnessCache::find(const std::string& pipeline_key) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = map_.find(pipeline_key);
    if (it == map_.end()) return std::nullopt;
    ++hits_;
    return it->second;
}

void FitnessCache::insert(const std::string& pipeline_key, const Entry& e) {
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(pipeline_key, e);
}

std::size_t FitnessCache::hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
}

std::size_t FitnessCache::computations() const {
    std::lock_guard<std::mutex> lock(mu_);
    return computations_;
}

void FitnessCache::note_computation() {
    std::lock_guard<std::mutex> lock(mu_);
    ++computations_;
}

FitnessCache::Entry evaluate_pipeline(const Pipeline& pipeline, const RunConfig& cfg,
                                      FitnessCache& cache) {
    const std::string key = pipeline_string(pipeline);
    if (const auto cached = cache.find(key)) return *cached;

    cache.note_computation();
    FitnessCache::Entry entry;
    try {
        double content_sum = 0.0;
        double style_sum = 0.0;
        for (const EvalSample& sample : cfg.samples) {
            Image transformed = sample.content;
            for (const OperatorId& op : pipeline.steps)
                transformed = apply_operator(op, transformed, sample.ctx, cfg.plugins);
            content_sum += dists(sample.content, transformed, cfg.pyramid_levels);
            style_sum += style_distance(transformed, sample.ctx.style_image);
        }
        const double n = static_cast<double>(cfg.samples.size());
        entry.objectives = {content_sum / n, style_sum / n};
        entry.feasible = true;
    } catch (const OperatorError&) {
        entry.objectives = kInfeasibleObjectives;
        entry.feasible = false;
    }
    cache.insert(key, entry);
    return entry;
}

void evaluate(Individual& ind, const RunConfig& cfg, FitnessCache& cache) {
    const FitnessCache::Entry e = evaluate_pipeline(decode(ind.genome), cfg, cache);
    ind.objectives = e.objectives;
    ind.feasible = e.feasible;
}

void evaluate_all(std::vector<Individual>& pop, const RunConfig& cfg, FitnessCache& cache) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (!pop[i].objectives) todo.push_back(i);
    const std::int64_t n = static_cast<std::int64_t>(todo.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k)
        evaluate(pop[todo[static_cast<std::size_t>(k)]], cfg, cache);
}

bool dominates_individual(const Individual& a, const Individual& b) {
    if (a.feasible != b.feasible) return a.feasible;
    return dominates(*a.objectives, *b.objectives);
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::vector<Individual>& pop) {
    const std::size_t n = pop.size();
    for (const Individual& ind : pop)
        if (!ind.objectives)
            throw std::invalid_argument("fast_non_dominated_sort: unevaluated individual");

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dominator_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates_individual(pop[p], pop[q]))
                dominated[p].push_back(q);
            else if (dominates_individual(pop[q], pop[p]))
                ++dominator_count[p];
        }
        if (dominator_count[p] == 0) {
            pop[p].rank = 0;
            fronts[0].push_back(p);
        }
    }

    std::size_t k = 0;
    while (!fronts[k].empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts[k]) {
            for (std::size_t q : dominated[p]) {
                if (--dominator_count[q] == 0) {
                    pop[q].rank = static_cast<int>(k + 1);
                    next.push_back(q);
                }
            }
        }
        // Population index order within a front; later tie-breaks are stable
        // with respect to it.
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
        ++k;
    }
    fronts.pop_back();
    return fronts;
}

void crowding_distance(std::vector<Individual>& pop, const std::vector<std::size_t>& front) {
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i : front) pop[i].crowding = 0.0;
    if (front.size() <= 2) {
        for (std::size_t i : front) pop[i].crowding = inf;
        return;
    }

    const auto objective = [&](std::size_t i, int axis) {
        return axis == 0 ? pop[i].objectives->content_distance
                         : pop[i].objectives->style_distance;
    };
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<std::size_t> order = front;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return objective(a, axis) < objective(b, axis);
        });
        const double lo = objective(order.front(), axis);
        const double hi = objective(order.back(), axis);
        pop[order.front()].crowding = inf;
        pop[order.back()].crowding = inf;
        if (hi == lo) continue; // no spread on this axis
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            if (std::isinf(pop[order[k]].crowding)) continue;
            pop[order[k]].crowding +=
                (objective(order[k + 1], axis) - objective(order[k - 1], axis)) / (hi - lo);
        }
    }
}

void sort_and_crowd(std::vector<Individual>& pop) {
    const auto fronts = fast_non_dominated_sort(pop);
    for (const auto& front : fronts) crowding_distance(pop, front);
}

std::size_t tournament_winner(const std::vector<Individual>& pop, std::size_t a, std::size_t b,
                              Rng& rng) {
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return rng.coin() ? a : b;
}

std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
    const std::size_t a = rng.index(pop.size());
    const std::size_t b = rng.index(pop.size());
    return tournament_winner(pop, a, b, rng);
}

std::pair<std::size_t, std::size_t> select_parents(const std::vector<Individual>& pop, Rng& rng) {
    const std::size_t first = tournament(pop, rng);
    const std::size_t second = tournament(pop, rng);
    return {first, second};
}

namespace {

constexpr int kDuplicateAttempts = 50;

// Duplicate elimination works on the decoded pipeline: suffixes after Stop
// are non-functional, so genotype-level comparison would let copies of the
// same solution accumulate and stall the search.
bool pipeline_known(const Genome& g, const std::vector<Individual>& parents,
                    const std::vector<Individual>& siblings) {
    const Pipeline decoded = decode(g);
    for (const Individual& p : parents)
        if (decode(p.genome) == decoded) return true;
    for (const Individual& s : siblings)
        if (decode(s.genome) == decoded) return true;
    return false;
}

} // namespace

std::vector<Individual> make_offspring(const std::vector<Individual>& pop, const RunConfig& cfg,
                                       Rng& rng, FitnessCache& cache) {
    std::vector<Individual> offspring;
    offspring.reserve(static_cast<std::size_t>(cfg.offspring_size));
    for (int slot = 0; slot < cfg.offspring_size; ++slot) {
        Genome candidate;
        for (int attempt = 0; attempt < kDuplicateAttempts; ++attempt) {
            const auto [pa, pb] = select_parents(pop, rng);
            candidate = inversion_mutation(
                edge_recombination(pop[pa].genome, pop[pb].genome, rng), rng);
            if (!pipeline_known(candidate, pop, offspring)) break;
        }
        Individual child;
        child.genome = std::move(candidate);
        offspring.push_back(std::move(child));
    }
    evaluate_all(offspring, cfg, cache);
    return offspring;
}

std::vector<Individual> survive(const std::vector<Individual>& pool, int population_size) {
    std::vector<Individual> ranked = pool;
    const auto fronts = fast_non_dominated_sort(ranked);
    for (const auto& front : fronts) crowding_distance(ranked, front);

    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(population_size));
    for (const auto& front : fronts) {
        if (next.size() + front.size() <= static_cast<std::size_t>(population_size)) {
            for (std::size_t i : front) next.push_back(ranked[i]);
        } else {
            std::vector<std::size_t> order = front;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return ranked[a].crowding > ranked[b].crowding;
            });
            for (std::size_t i : order) {
                if (next.size() == static_cast<std::size_t>(population_size)) break;
                next.push_back(ranked[i]);
            }
        }
        if (next.size() == static_cast<std::size_t>(population_size)) break;
    }
    return next;
}

namespace {

GenerationRecord record_generation(int generation, const std::vector<Individual>& pop) {
    GenerationRecord rec;
    rec.generation = generation;
    rec.entries.reserve(pop.size());
    for (const Individual& ind : pop) {
        GenerationEntry e;
        e.pipeline = pipeline_string(decode(ind.genome));
        e.content_distance = ind.objectives->content_distance;
        e.style_distance = ind.objectives->style_distance;
        e.rank = ind.rank;
        rec.entries.push_back(std::move(e));
    }
    return rec;
}

} // namespace

RunResult run(const RunConfig& cfg) {
    FitnessCache cache;
    return run(cfg, cache);
}

RunResult run(const RunConfig& cfg, FitnessCache& cache) {
    validate(cfg);
    Rng rng(cfg.seed);

    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        Genome g;
        for (int attempt = 0; attempt < kDuplicateAttempts; ++attempt) {
            g = random_genome(cfg.operator_set, rng);
            if (!pipeline_known(g, pop, {})) break;
        }
        Individual ind;
        ind.genome = std::move(g);
        pop.push_back(std::move(ind));
    }
    evaluate_all(pop, cfg, cache);
    sort_and_crowd(pop);

    RunResult result;
    result.records.reserve(static_cast<std::size_t>(cfg.generations) + 1);
    result.records.push_back(record_generation(0, pop));

    for (int gen = 1; gen <= cfg.generations; ++gen) {
        std::vector<Individual> offspring = make_offspring(pop, cfg, rng, cache);
        std::vector<Individual> pool = pop;
        pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
        pop = survive(pool, cfg.population_size);
        sort_and_crowd(pop);
        result.records.push_back(record_generation(gen, pop));
    }

    for (const Individual& ind : pop)
        if (ind.rank == 0) result.front.push_back(ind);
    std::stable_sort(result.front.begin(), result.front.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.objectives->content_distance < b.objectives->content_distance;
                     });
    result.population = std::move(pop);
    return result;
}

} // namespace stylevo

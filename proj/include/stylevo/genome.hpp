#pragma once

#include <string>
#include <vector>

#include "stylevo/operators.hpp"
#include "stylevo/rng.hpp"

namespace stylevo {

// Permutation of the configured operator set plus the terminal Stop node.
// Decoding truncates at Stop, so the suffix after it carries no phenotype.
struct Genome {
    std::vector<OperatorId> order;

    bool operator==(const Genome&) const = default;
};

// Decoded phenotype: the operators before Stop, applied in order. Never
// contains Stop or duplicates.
struct Pipeline {
    std::vector<OperatorId> steps;

    bool operator==(const Pipeline&) const = default;
};

// True when order is a permutation of distinct ids containing Stop once.
bool valid_genome(const Genome& g);

// Uniform random permutation (Fisher-Yates) of operator_set plus Stop.
Genome random_genome(const std::vector<OperatorId>& operator_set, Rng& rng);

Pipeline decode(const Genome& g);

// Comma-joined operator labels, Stop implicit; empty pipeline serializes to "".
std::string pipeline_string(const Pipeline& p);

// Edge recombination crossover treating both parents as cycles. Builds the
// union adjacency table, starts from parent a's first node and repeatedly
// moves to the remaining neighbor with the fewest remaining neighbors; ties
// and dead ends are resolved by uniform rng choice. Throws
// std::invalid_argument when the parents' node sets differ.
Genome edge_recombination(const Genome& a, const Genome& b, Rng& rng);

// Reverses order[i..j] for (i, j) drawn uniformly over all pairs i <= j.
Genome inversion_mutation(const Genome& g, Rng& rng);

} // namespace stylevo

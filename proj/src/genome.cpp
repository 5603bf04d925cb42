#include "stylevo/genome.hpp"

#include <algorithm>
#include <stdexcept>

namespace stylevo {

bool valid_genome(const Genome& g) {
    if (g.order.empty()) return false;
    std::size_t stops = 0;
    for (std::size_t i = 0; i < g.order.size(); ++i) {
        if (g.order[i].kind == OpKind::Stop) ++stops;
        for (std::size_t j = i + 1; j < g.order.size(); ++j)
            if (g.order[i] == g.order[j]) return false;
    }
    return stops == 1;
}

Genome random_genome(const std::vector<OperatorId>& operator_set, Rng& rng) {
    Genome g;
    g.order = operator_set;
    g.order.push_back(OperatorId::stop());
    for (std::size_t i = g.order.size() - 1; i > 0; --i) {
        const std::size_t j = rng.index(i + 1);
        std::swap(g.order[i], g.order[j]);
    }
    return g;
}

Pipeline decode(const Genome& g) {
    Pipeline p;
    for (const OperatorId& id : g.order) {
        if (id.kind == OpKind::Stop) break;
        p.steps.push_back(id);
    }
    return p;
}

std::string pipeline_string(const Pipeline& p) {
    std::string s;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        if (i > 0) s += ',';
        s += p.steps[i].label();
    }
    return s;
}

namespace {

// Uniform choice; only consumes randomness when there is an actual choice.
template <typename T>
const T& pick(const std::vector<T>& candidates, Rng& rng) {
    return candidates.size() == 1 ? candidates[0] : candidates[rng.index(candidates.size())];
}

} // namespace

Genome edge_recombination(const Genome& a, const Genome& b, Rng& rng) {
    const std::size_t m = a.order.size();
    if (b.order.size() != m)
        throw std::invalid_argument("edge_recombination: parents have different sizes");

    // Node indices follow parent a's order.
    auto index_of = [&](const OperatorId& id) -> std::size_t {
        for (std::size_t i = 0; i < m; ++i)
            if (a.order[i] == id) return i;
        throw std::invalid_argument("edge_recombination: parents have different node sets");
    };

    // Union adjacency of both parents, treated as cycles.
    std::vector<std::vector<std::size_t>> adj(m);
    auto add_edges = [&](const Genome& parent) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t cur = index_of(parent.order[i]);
            const std::size_t prev = index_of(parent.order[(i + m - 1) % m]);
            const std::size_t next = index_of(parent.order[(i + 1) % m]);
            for (std::size_t n : {prev, next})
                if (n != cur && std::find(adj[cur].begin(), adj[cur].end(), n) == adj[cur].end())
                    adj[cur].push_back(n);
        }
    };
    add_edges(a);
    add_edges(b);
    for (auto& list : adj) std::sort(list.begin(), list.end());

    std::vector<bool> visited(m, false);
    auto remove_node = [&](std::size_t node) {
        visited[node] = true;
        for (auto& list : adj)
            list.erase(std::remove(list.begin(), list.end(), node), list.end());
    };

    Genome child;
    child.order.reserve(m);
    std::size_t current = 0; // parent a's first node
    remove_node(current);
    child.order.push_back(a.order[current]);

    while (child.order.size() < m) {
        std::size_t next;
        if (!adj[current].empty()) {
            std::size_t best = m + 1;
            std::vector<std::size_t> tied;
            for (std::size_t cand : adj[current]) {
                const std::size_t deg = adj[cand].size();
                if (deg < best) {
                    best = deg;
                    tied.clear();
                }
                if (deg == best) tied.push_back(cand);
            }
            next = pick(tied, rng);
        } else {
            std::vector<std::size_t> remaining;
            for (std::size_t i = 0; i < m; ++i)
                if (!visited[i]) remaining.push_back(i);
            next = pick(remaining, rng);
        }
        remove_node(next);
        child.order.push_back(a.order[next]);
        current = next;
    }
    return child;
}

Genome inversion_mutation(const Genome& g, Rng& rng) {
    const std::size_t m = g.order.size();
    // Uniform over the m(m+1)/2 position pairs with i <= j.
    std::size_t t = rng.index(m * (m + 1) / 2);
    std::size_t i = 0;
    while (t >= m - i) {
        t -= m - i;
        ++i;
    }
    const std::size_t j = i + t;

    Genome out = g;
    std::reverse(out.order.begin() + static_cast<std::ptrdiff_t>(i),
                 out.order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    return out;
}

} // namespace stylevo

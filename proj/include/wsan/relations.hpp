#ifndef WSAN_RELATIONS_HPP
#define WSAN_RELATIONS_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wsan {

/**
 * Identifier of a network node. The value is an index into the node
 * universe; the total order on values canonicalizes relation iteration,
 * which keeps traces and digests reproducible.
 */
struct NodeId {
    std::uint32_t value{0};

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

using NodePair = std::pair<NodeId, NodeId>;

/**
 * Finite binary relation over nodes with set semantics. Iteration order
 * is the lexicographic order on pairs.
 */
class BinRel {
public:
    using Container = std::set<NodePair>;
    using const_iterator = Container::const_iterator;

    BinRel() = default;
    explicit BinRel(std::initializer_list<NodePair> pairs) : pairs_(pairs) {}

    bool contains(NodeId a, NodeId b) const {
        return pairs_.count({a, b}) != 0;
    }

    void insert(NodeId a, NodeId b) { pairs_.insert({a, b}); }
    void erase(NodeId a, NodeId b) { pairs_.erase({a, b}); }

    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    const_iterator begin() const { return pairs_.begin(); }
    const_iterator end() const { return pairs_.end(); }

    friend bool operator==(const BinRel&, const BinRel&) = default;

private:
    Container pairs_;
};

/// Nodes occurring as first component of some pair.
inline std::set<NodeId> rel_domain(const BinRel& r) {
    std::set<NodeId> result;
    for (const auto& [a, b] : r) result.insert(a);
    return result;
}

/// Relational image r[{n}] = { m | (n,m) in r }.
inline std::set<NodeId> image(const BinRel& r, NodeId n) {
    std::set<NodeId> result;
    for (const auto& [a, b] : r) {
        if (a == n) result.insert(b);
    }
    return result;
}

/// r with both directions of the link n-m added. Rejects n = m, which
/// would break the irreflexivity invariants downstream.
inline BinRel symmetric_insert(const BinRel& r, NodeId n, NodeId m) {
    if (n == m) {
        throw std::invalid_argument("symmetric_insert: endpoints must differ");
    }
    BinRel result = r;
    result.insert(n, m);
    result.insert(m, n);
    return result;
}

/// {n} <<| r |>> {n}: every pair whose first or second component is n removed.
inline BinRel domain_range_subtract(const BinRel& r, NodeId n) {
    BinRel result;
    for (const auto& [a, b] : r) {
        if (a != n && b != n) result.insert(a, b);
    }
    return result;
}

inline bool is_symmetric(const BinRel& r) {
    for (const auto& [a, b] : r) {
        if (!r.contains(b, a)) return false;
    }
    return true;
}

inline bool is_irreflexive(const BinRel& r) {
    for (const auto& [a, b] : r) {
        if (a == b) return false;
    }
    return true;
}

/**
 * Transitive closure: the least relation containing r that is closed
 * under composition with r. Not reflexive by construction; (n,n) appears
 * only when n lies on a cycle of r. Computed with a boolean Warshall
 * sweep over the incident-node subgraph (bit-packed rows).
 */
inline BinRel closure(const BinRel& r) {
    std::set<NodeId> incident;
    for (const auto& [a, b] : r) {
        incident.insert(a);
        incident.insert(b);
    }
    std::vector<NodeId> nodes(incident.begin(), incident.end());
    const std::size_t n = nodes.size();
    if (n == 0) return BinRel{};

    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;

    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(n * words, 0);
    auto bit_set = [&](std::size_t i, std::size_t j) {
        rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    };
    auto bit_get = [&](std::size_t i, std::size_t j) {
        return (rows[i * words + j / 64] >> (j % 64)) & 1u;
    };

    for (const auto& [a, b] : r) bit_set(index[a], index[b]);

    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!bit_get(i, k)) continue;
            for (std::size_t w = 0; w < words; ++w) {
                rows[i * words + w] |= rows[k * words + w];
            }
        }
    }

    BinRel result;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (bit_get(i, j)) result.insert(nodes[i], nodes[j]);
        }
    }
    return result;
}

/**
 * Breadth-first reachability: true iff a path of length >= 1 leads from
 * `from` to `to` along edges of r. Independent of closure() by design --
 * it is the oracle the closure implementation is validated against.
 */
inline bool reachable_oracle(const BinRel& r, NodeId from, NodeId to) {
    std::uint32_t max_id = std::max(from.value, to.value);
    for (const auto& [a, b] : r) max_id = std::max({max_id, a.value, b.value});

    std::vector<std::vector<std::uint32_t>> adjacency(max_id + 1);
    for (const auto& [a, b] : r) adjacency[a.value].push_back(b.value);

    std::vector<bool> visited(max_id + 1, false);
    std::deque<std::uint32_t> frontier;
    for (std::uint32_t succ : adjacency[from.value]) {
        if (!visited[succ]) {
            visited[succ] = true;
            frontier.push_back(succ);
        }
    }
    while (!frontier.empty()) {
        const std::uint32_t current = frontier.front();
        frontier.pop_front();
        if (current == to.value) return true;
        for (std::uint32_t succ : adjacency[current]) {
            if (!visited[succ]) {
                visited[succ] = true;
                frontier.push_back(succ);
            }
        }
    }
    return false;
}

/**
 * Ordered triple of the localized-knowledge relation: (first, second, via)
 * reads "second is reachable from first via `via`". A 1-hop neighbor is
 * encoded with via == second.
 */
struct Triple {
    NodeId first;
    NodeId second;
    NodeId via;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/**
 * Finite ternary relation with set semantics, ordered like Triple.
 */
class TriRel {
public:
    using Container = std::set<Triple>;
    using const_iterator = Container::const_iterator;

    TriRel() = default;
    explicit TriRel(std::initializer_list<Triple> triples) : triples_(triples) {}

    bool contains(NodeId a, NodeId b, NodeId via) const {
        return triples_.count({a, b, via}) != 0;
    }
    bool contains(const Triple& t) const { return triples_.count(t) != 0; }

    void insert(NodeId a, NodeId b, NodeId via) { triples_.insert({a, b, via}); }
    void insert(const Triple& t) { triples_.insert(t); }
    void erase(const Triple& t) { triples_.erase(t); }

    /// Via-nodes recorded for the ordered pair (a,b).
    std::set<NodeId> vias(NodeId a, NodeId b) const {
        std::set<NodeId> result;
        for (auto it = triples_.lower_bound({a, b, NodeId{0}});
             it != triples_.end() && it->first == a && it->second == b; ++it) {
            result.insert(it->via);
        }
        return result;
    }

    /// True iff some triple (a,b,·) other than (a,b,excluded_via) exists.
    bool pair_in_domain_excluding(NodeId a, NodeId b, NodeId excluded_via) const {
        for (auto it = triples_.lower_bound({a, b, NodeId{0}});
             it != triples_.end() && it->first == a && it->second == b; ++it) {
            if (it->via != excluded_via) return true;
        }
        return false;
    }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    const_iterator begin() const { return triples_.begin(); }
    const_iterator end() const { return triples_.end(); }

    friend bool operator==(const TriRel&, const TriRel&) = default;

private:
    Container triples_;
};

}  // namespace wsan

#endif  // WSAN_RELATIONS_HPP

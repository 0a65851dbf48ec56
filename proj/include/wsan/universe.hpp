#ifndef WSAN_UNIVERSE_HPP
#define WSAN_UNIVERSE_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsan/relations.hpp"

namespace wsan {

enum class NodeKind { Sensor, Actor };

inline const char* to_string(NodeKind kind) {
    return kind == NodeKind::Actor ? "actor" : "sensor";
}

/**
 * The finite, non-empty node set partitioned into sensors and actors.
 * NodeId values are dense indices in declaration order, which fixes the
 * total order used everywhere for canonical iteration.
 */
class NodeUniverse {
public:
    NodeUniverse(std::vector<std::string> names, std::vector<NodeKind> kinds)
        : names_(std::move(names)), kinds_(std::move(kinds)) {
        if (names_.empty()) {
            throw std::invalid_argument("node universe must be non-empty");
        }
        if (names_.size() != kinds_.size()) {
            throw std::invalid_argument("every node needs exactly one kind");
        }
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!by_name_.emplace(names_[i], NodeId{static_cast<std::uint32_t>(i)}).second) {
                throw std::invalid_argument("duplicate node id: " + names_[i]);
            }
        }
    }

    std::size_t size() const { return names_.size(); }

    const std::string& name(NodeId n) const { return names_.at(n.value); }
    NodeKind kind(NodeId n) const { return kinds_.at(n.value); }

    bool is_actor(NodeId n) const { return kind(n) == NodeKind::Actor; }
    bool is_sensor(NodeId n) const { return kind(n) == NodeKind::Sensor; }

    bool has_name(const std::string& name) const { return by_name_.count(name) != 0; }

    NodeId id_of(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) {
            throw std::invalid_argument("unknown node id: " + name);
        }
        return it->second;
    }

    std::vector<NodeId> nodes() const {
        std::vector<NodeId> result;
        result.reserve(size());
        for (std::uint32_t i = 0; i < size(); ++i) result.push_back(NodeId{i});
        return result;
    }

    std::vector<NodeId> actors() const { return of_kind(NodeKind::Actor); }
    std::vector<NodeId> sensors() const { return of_kind(NodeKind::Sensor); }

private:
    std::vector<NodeId> of_kind(NodeKind wanted) const {
        std::vector<NodeId> result;
        for (std::uint32_t i = 0; i < size(); ++i) {
            if (kinds_[i] == wanted) result.push_back(NodeId{i});
        }
        return result;
    }

    std::vector<std::string> names_;
    std::vector<NodeKind> kinds_;
    std::map<std::string, NodeId> by_name_;
};

using UniversePtr = std::shared_ptr<const NodeUniverse>;

/// Universe of `actors` actors named A1..An followed by `sensors` sensors S1..Sm.
inline UniversePtr make_universe(std::size_t actors, std::size_t sensors) {
    std::vector<std::string> names;
    std::vector<NodeKind> kinds;
    for (std::size_t i = 1; i <= actors; ++i) {
        names.push_back("A" + std::to_string(i));
        kinds.push_back(NodeKind::Actor);
    }
    for (std::size_t i = 1; i <= sensors; ++i) {
        names.push_back("S" + std::to_string(i));
        kinds.push_back(NodeKind::Sensor);
    }
    return std::make_shared<NodeUniverse>(std::move(names), std::move(kinds));
}

}  // namespace wsan

#endif  // WSAN_UNIVERSE_HPP

#ifndef WSAN_STATE_HPP
#define WSAN_STATE_HPP

#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsan/relations.hpp"
#include "wsan/universe.hpp"

namespace wsan {

enum class NodeStatus : std::uint8_t { Fail, Ok };

enum class Level : std::uint8_t { M0 = 0, M1 = 1, M2 = 2 };

inline const char* to_string(Level level) {
    switch (level) {
        case Level::M0: return "m0";
        case Level::M1: return "m1";
        case Level::M2: return "m2";
    }
    return "m0";
}

inline Level level_from_string(const std::string& text) {
    if (text == "m0" || text == "M0") return Level::M0;
    if (text == "m1" || text == "M1") return Level::M1;
    if (text == "m2" || text == "M2") return Level::M2;
    throw std::invalid_argument("unknown machine level: " + text);
}

/**
 * Full machine state. A plain value: events return fresh states and the
 * scheduler keeps snapshots, so copies are cheap to reason about and any
 * number of runs can proceed concurrently without sharing.
 *
 * Fields beyond the level in use stay empty (snet/sanet below M2, lnet
 * below M1); projection relies on that convention.
 */
struct WsanState {
    UniversePtr universe;
    std::vector<NodeStatus> status;
    BinRel anet;
    BinRel snet;
    BinRel sanet;
    TriRel lnet;
    std::set<NodeId> failed_node_neigh;
    Level level{Level::M0};

    bool ok(NodeId n) const { return status.at(n.value) == NodeStatus::Ok; }
    bool failed(NodeId n) const { return status.at(n.value) == NodeStatus::Fail; }

    friend bool operator==(const WsanState& a, const WsanState& b) {
        return a.level == b.level && a.status == b.status && a.anet == b.anet &&
               a.snet == b.snet && a.sanet == b.sanet && a.lnet == b.lnet &&
               a.failed_node_neigh == b.failed_node_neigh;
    }
};

/// Termination measure of the recovery phase: card(failed_node_neigh).
inline std::size_t variant(const WsanState& s) { return s.failed_node_neigh.size(); }

/**
 * Canonical serialization: node ids and relation tuples in sorted order.
 * Two states serialize identically iff they are equal, so this string is
 * both the digest preimage and the deduplication key for exploration.
 */
inline std::string canonical_string(const WsanState& s) {
    std::ostringstream out;
    out << "level=" << to_string(s.level) << ";status=";
    for (NodeStatus st : s.status) out << (st == NodeStatus::Ok ? 'o' : 'f');
    out << ";anet=";
    for (const auto& [a, b] : s.anet) out << a.value << '-' << b.value << ',';
    out << ";snet=";
    for (const auto& [a, b] : s.snet) out << a.value << '-' << b.value << ',';
    out << ";sanet=";
    for (const auto& [a, b] : s.sanet) out << a.value << '-' << b.value << ',';
    out << ";lnet=";
    for (const auto& t : s.lnet) {
        out << t.first.value << '-' << t.second.value << '-' << t.via.value << ',';
    }
    out << ";fnn=";
    for (NodeId n : s.failed_node_neigh) out << n.value << ',';
    return out.str();
}

/// FNV-1a 64-bit, fully specified so digests are stable across platforms.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string digest(const WsanState& s) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(canonical_string(s));
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

/**
 * Projection onto a lower refinement level: refinement-only fields are
 * cleared (M1 drops snet/sanet, M0 additionally drops lnet) and the level
 * retagged. Superposition refinement keeps abstract variables, so status,
 * anet and failed_node_neigh carry over unchanged.
 */
inline WsanState project(const WsanState& s, Level target) {
    if (target >= s.level) {
        throw std::invalid_argument("projection target must be below the state's level");
    }
    WsanState result = s;
    result.level = target;
    result.snet = BinRel{};
    result.sanet = BinRel{};
    if (target == Level::M0) result.lnet = TriRel{};
    return result;
}

}  // namespace wsan

#endif  // WSAN_STATE_HPP

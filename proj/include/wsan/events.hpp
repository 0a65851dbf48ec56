#ifndef WSAN_EVENTS_HPP
#define WSAN_EVENTS_HPP

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsan/state.hpp"

namespace wsan {

enum class EventName {
    Initialisation,
    AddNode,
    AddLink,
    RemoveNode,
    FaultDetRec,
    FaultDetRec2,
    AddlNet2hopLink,
    AddSLink,
    AddSALink,
    AddSensorNode,
};

inline const char* to_string(EventName name) {
    switch (name) {
        case EventName::Initialisation: return "INITIALISATION";
        case EventName::AddNode: return "AddNode";
        case EventName::AddLink: return "AddLink";
        case EventName::RemoveNode: return "RemoveNode";
        case EventName::FaultDetRec: return "FaultDetRec";
        case EventName::FaultDetRec2: return "FaultDetRec2";
        case EventName::AddlNet2hopLink: return "Addl_net2hopLink";
        case EventName::AddSLink: return "AddSLink";
        case EventName::AddSALink: return "AddSALink";
        case EventName::AddSensorNode: return "AddSensorNode";
    }
    return "?";
}

inline EventName event_from_string(const std::string& text) {
    if (text == "INITIALISATION") return EventName::Initialisation;
    if (text == "AddNode") return EventName::AddNode;
    if (text == "AddLink") return EventName::AddLink;
    if (text == "RemoveNode") return EventName::RemoveNode;
    if (text == "FaultDetRec") return EventName::FaultDetRec;
    if (text == "FaultDetRec2") return EventName::FaultDetRec2;
    if (text == "Addl_net2hopLink") return EventName::AddlNet2hopLink;
    if (text == "AddSLink") return EventName::AddSLink;
    if (text == "AddSALink") return EventName::AddSALink;
    if (text == "AddSensorNode") return EventName::AddSensorNode;
    throw std::invalid_argument("unknown event name: " + text);
}

/**
 * One guarded transition: event name plus bound parameters, the unit of
 * a trace step. Recovery events at M1/M2 exist in two arities: the full
 * localized form and the two-parameter direct form used when no
 * localized witness exists (see machine_m1.hpp).
 */
struct EventInstance {
    EventName name{EventName::Initialisation};
    std::vector<NodeId> params;

    friend auto operator<=>(const EventInstance&, const EventInstance&) = default;
};

inline std::string describe(const EventInstance& e, const NodeUniverse& u) {
    std::string out = to_string(e.name);
    out += '(';
    for (std::size_t i = 0; i < e.params.size(); ++i) {
        if (i > 0) out += ',';
        out += u.name(e.params[i]);
    }
    out += ')';
    return out;
}

/**
 * Policy resolving the nondeterministic localized-table update of the
 * recovery event at M1. DirectPair records the freshly created direct
 * link as a 1-hop entry; the seeded modes exercise the full assignment
 * set for refinement testing and need an RNG.
 */
struct LnetChoice {
    enum class Mode { DirectPair, SeededPair, SeededSubset };

    Mode mode{Mode::DirectPair};
    std::mt19937_64* rng{nullptr};
};

/// Weakenings used by the refinement checker's sensitivity tests.
struct MachineOptions {
    bool drop_closure_guard{false};  // removes grd2 from FaultDetRec

    friend bool operator==(const MachineOptions&, const MachineOptions&) = default;
};

}  // namespace wsan

#endif  // WSAN_EVENTS_HPP

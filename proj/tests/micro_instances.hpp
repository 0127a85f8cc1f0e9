#pragma once

#include <string>
#include <vector>

#include "aspplan/action_model.hpp"
#include "aspplan/env_graph.hpp"

namespace aspplan::testing {

inline const char* kLampModel = R"(
fluent on(lamp). fluent off(lamp).
action switchon(character, lamp) "Turn 'arg1' on.".
action switchoff(character, lamp) "Turn 'arg1' off.".
complement on(O), off(O).
initially on(O) if state(O, on).
initially off(O) if state(O, off).
inertial on(O). inertial off(O).
caused on(O) after switchon(C, O).
caused off(O) after switchoff(C, O).
nonexecutable switchon(C, O) if on(O).
nonexecutable switchoff(C, O) if off(O).
)";

inline const char* kBrokenLampModel = R"(
fluent on(lamp). fluent off(lamp). fluent broken(lamp).
action switchon(character, lamp) "Turn 'arg1' on.".
complement on(O), off(O).
initially off(O) if state(O, off).
initially broken(O) if state(O, broken).
inertial on(O). inertial off(O). inertial broken(O).
caused on(O) after switchon(C, O).
nonexecutable switchon(C, O) if on(O).
constraint on(O) & broken(O).
)";

inline const char* kDoorModel = R"(
fluent found(character, door). fluent opened(door). fluent closed(door).
action find(character, door) "Find 'arg1'.".
action open(character, door) "Open 'arg1'.".
action close(character, door) "Close 'arg1'.".
complement opened(O), closed(O).
support find.
subtask enter = find(door); open(door).
initially closed(O) if state(O, closed).
initially opened(O) if state(O, open).
inertial found(C, O). inertial opened(O). inertial closed(O).
caused found(C, O) after find(C, O).
caused opened(O) after open(C, O).
caused closed(O) after close(C, O).
nonexecutable open(C, O) if not found(C, O).
nonexecutable open(C, O) if opened(O).
nonexecutable close(C, O) if closed(O).
)";

inline const char* kHandsModel = R"(
fluent holding(character, item). fluent dropped(character, item).
fluent empty(character). fluent unempty(character).
action grab(character, item) "Grab 'arg1'.".
action drop(character, item) "Drop 'arg1'.".
complement holding(C, O), dropped(C, O).
complement empty(C), unempty(C).
initially empty(C) if is(C, character).
inertial holding(C, O). inertial empty(C).
caused unempty(C) if holding(C, O).
caused holding(C, O) after grab(C, O).
caused dropped(C, O) after drop(C, O).
caused empty(C) after drop(C, O) & holding(C, O).
nonexecutable grab(C, O) if unempty(C).
nonexecutable drop(C, O) if not holding(C, O).
)";

struct MicroInstance {
    std::string name;
    const char* model;
    std::vector<Entity> entities;
    std::string skeleton;  // DSL items
    int horizon;
};

inline std::vector<MicroInstance> micro_instances() {
    const Entity agent{1, "character", {}};
    const Entity lamp_off{2, "lamp", {"off"}};
    const Entity lamp_on{3, "lamp", {"on"}};
    const Entity lamp2_off{3, "lamp", {"off"}};
    const Entity door{2, "door", {"closed"}};
    return {
        {"lamp/switchon/h1", kLampModel, {agent, lamp_off}, "switchon(lamp)", 1},
        {"lamp/switchon/h2", kLampModel, {agent, lamp_off}, "switchon(lamp)", 2},
        {"lamp/already-on/h1", kLampModel, {agent, lamp_on}, "switchon(lamp)", 1},
        {"lamp/two-lamps/h1", kLampModel, {agent, lamp_off, lamp2_off}, "switchon(lamp)", 1},
        {"lamp/by-id/h1", kLampModel, {agent, lamp_off, lamp2_off}, "switchon(3)", 1},
        {"lamp/toggle/h2", kLampModel, {agent, lamp_off}, "switchon(lamp); switchoff(lamp)", 2},
        {"lamp/toggle/h3", kLampModel, {agent, lamp_off}, "switchon(lamp); switchoff(lamp)", 3},
        {"lamp/empty-skeleton/h2", kLampModel, {agent, lamp_off}, "", 2},
        {"lamp/fluent-spec/h1", kLampModel, {agent, lamp_off}, "switchon(lamp); holds(on(2))", 1},
        {"broken/constraint/h1", kBrokenLampModel, {agent, {2, "lamp", {"off", "broken"}}, lamp2_off},
         "switchon(lamp)", 1},
        {"door/open/h1", kDoorModel, {agent, door}, "open(door)", 1},
        {"door/open/h2", kDoorModel, {agent, door}, "open(door)", 2},
        {"door/find-open/h2", kDoorModel, {agent, door}, "find(door); open(door)", 2},
        {"door/subtask/h2", kDoorModel, {agent, door}, "enter", 2},
        {"hands/grab/h1", kHandsModel, {agent, {2, "item", {}}, {3, "item", {}}}, "grab(item)", 1},
        {"hands/grab-drop/h2", kHandsModel, {agent, {2, "item", {}}}, "grab(item); drop(item)", 2},
        {"hands/drop-first/h1", kHandsModel, {agent, {2, "item", {}}}, "drop(item)", 1},
    };
}

inline EnvGraph graph_of(const MicroInstance& m) { return EnvGraph(m.entities, {}); }

inline SkeletonPlan skeleton_of(const MicroInstance& m) {
    return m.skeleton.empty() ? SkeletonPlan::sequence() : parse_skeleton_items(m.skeleton);
}

}  // namespace aspplan::testing

#pragma once

#include <qasp/planning.hpp>

#include <string>

namespace qasp::testing {

std::string read_file(const std::string& path);
/// data/robot/dd<k>.desc with r rooms.
PlanningDescription robot(int k, int rooms = 2);

Atom at(int r);
Atom clean(int r);
Atom occupied(int r);
Atom sense(int r);
Atom act(const char* name);

/// The transition function of the example written out directly.
std::optional<State> robot_step(const State& s, const Atom& action, int rooms);

} // namespace qasp::testing

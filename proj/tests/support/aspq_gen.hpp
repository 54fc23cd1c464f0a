#pragma once

#include "generators.hpp"

#include <qasp/aspq.hpp>
#include <qasp/planning.hpp>

namespace qasp::testing {

/// One to three small blocks and, sometimes, a stratified check program.
/// Universal blocks have no negation so that they have a GDT form.
AspqProgram random_aspq(Rng& rng);

/// The conformant problem with plans, initial states and the rest as three
/// programs quantified over their stable models.
AspqProgram conformant_aspq(const PlanningDescription& dd, int n);

} // namespace qasp::testing

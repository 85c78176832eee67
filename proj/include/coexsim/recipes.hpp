#pragma once

#include <vector>

#include "coexsim/sweep.hpp"

namespace coexsim {

/// Named reproduction recipes, one set of sweeps per paper figure (fig2..fig8).
std::vector<SweepSpec> recipe(const std::string& name);

std::vector<std::string> recipe_names();

/// Table-parameter scenario builders shared by recipes and tests.
ScenarioConfig scenario_nb_victim();    // NB victim vs OFDM interferer
ScenarioConfig scenario_ofdm_victim();  // OFDM victim vs NB interferer
ScenarioConfig scenario_ofdm_ofdm();    // OFDM victim vs OFDM interferer

}  // namespace coexsim

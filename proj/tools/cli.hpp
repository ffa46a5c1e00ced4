// SPDX-License-Identifier: Apache-2.0
//
// gammaclutter: detection statistics for fluctuating targets in compound clutter
// Copyright (C) 2026 The gammaclutter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "gammaclutter/scenario.hpp"
#include "gammaclutter/texture.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gcl::cli {

// Parsed scenario file. `echo` is the normalized document written into output headers.
struct Scenario {
    ScenarioParams params;
    std::vector<double> sir_grid_db;
    double pfa = 1e-6;
    std::vector<Method> methods{Method::EffSdp};
    int texture_order = kDefaultTextureOrder;
    std::uint64_t seed = 1;
    nlohmann::json echo;
};

// Throws Error(InvalidParameter) on schema violations.
Scenario parse_scenario(const nlohmann::json &doc);
Scenario load_scenario(const std::string &path);

// Shortest round-trip form with 17 significant digits, locale independent.
std::string format_number(double x);

// Entry point; returns the process exit code (0 ok, 2 config, 3 numeric).
int run(int argc, char **argv);

} // namespace gcl::cli

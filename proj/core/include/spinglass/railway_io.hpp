// Copyright 2026 The spinglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <string_view>

#include "spinglass/railway.hpp"

namespace spinglass::railway {

// Problem JSON:
//
//   {"blocks": [{"kind": "station", "tracks": 2, "name": "A"}, {"kind": "line"}, ...],
//    "trains": [{"name": "IC1", "direction": 0, "entry_time": 0,
//                "leave_times": [...], "min_passing": [...],
//                "entry_delay": 5, "weight": 1.5, "d_max": 7}, ...],
//    "shared_sets": [{"first": "IC1", "second": "IC2", "turnover": 20}],
//    "d_max": 7, "p_pair": 4, "p_sum": 4}
//
// Per-block arrays follow each train's route. Per-train d_max overrides the
// top-level default. Throws ParseError or InvalidInstance.
DispatchProblem parse_dispatch_problem(std::string_view json);
std::string format_dispatch_problem(const DispatchProblem& p);

// {"delays": [{"train": "IC1", "station": 0, "delay": 5}, ...]}
DelayTable parse_delay_table(const DispatchProblem& p, std::string_view json);
std::string format_delay_table(const DispatchProblem& p, const DelayTable& delays);

std::string format_variable_map(const DispatchProblem& p, const VariableMap& map);
std::string format_schedule_report(const DispatchProblem& p, const ScheduleReport& report);

}  // namespace spinglass::railway

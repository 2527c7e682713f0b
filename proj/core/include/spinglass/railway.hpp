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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinglass/model.hpp"

namespace spinglass::railway {

enum class BlockKind { line, station };

struct Block {
  BlockKind kind = BlockKind::line;
  unsigned tracks = 1;
  std::string name;
};

// Ordered single-track segment; first and last blocks are stations.
class Network {
 public:
  explicit Network(std::vector<Block> blocks);

  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& block(std::size_t b) const { return blocks_.at(b); }
  bool is_station(std::size_t b) const { return block(b).kind == BlockKind::station; }
  // Station block indices in ascending order.
  std::span<const std::size_t> stations() const noexcept { return stations_; }

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> stations_;
};

// Direction 0 runs towards higher block indices.
enum class Direction : std::uint8_t { up = 0, down = 1 };

// All times are integer minutes. Per-block arrays follow the train's route.
struct TrainSchedule {
  std::string name;
  Direction direction = Direction::up;
  int entry_time = 0;              // t_in of the first route block
  std::vector<int> leave_times;    // t_out per route block
  std::vector<int> min_passing;    // p_min per route block
};

// `first` ends its run, then its train set starts `second` after `turnover`.
struct SharedSet {
  std::size_t first = 0;
  std::size_t second = 0;
  int turnover = 0;
};

struct Timetable {
  std::vector<TrainSchedule> trains;
  std::vector<SharedSet> shared_sets;
};

struct DispatchProblem {
  Network network{{{BlockKind::station, 1, {}}, {BlockKind::station, 1, {}}}};
  Timetable timetable;
  std::vector<int> entry_delays;  // d_U at each train's first station
  std::vector<int> max_delays;    // d_max(j)
  std::vector<double> weights;    // w_j
  double p_pair = 1.0;
  double p_sum = 1.0;

  std::size_t train_count() const noexcept { return timetable.trains.size(); }
  // Throws InvalidInstance.
  void validate() const;
};

// Route queries for train j.
std::vector<std::size_t> route(const DispatchProblem& p, std::size_t j);
std::vector<std::size_t> route_stations(const DispatchProblem& p, std::size_t j);
int leave_time(const DispatchProblem& p, std::size_t j, std::size_t block);
int enter_time(const DispatchProblem& p, std::size_t j, std::size_t block);
int reserve(const DispatchProblem& p, std::size_t j, std::size_t block);
// Station following `station` on j's route; nullopt at the last one.
std::optional<std::size_t> next_station(const DispatchProblem& p, std::size_t j, std::size_t station);
// Blocks strictly between two stations of j's route, in route order.
std::vector<std::size_t> blocks_between(const DispatchProblem& p, std::size_t j, std::size_t from, std::size_t to);
// Reserve accumulated after `station` up to and including the next station.
int reserve_to_next(const DispatchProblem& p, std::size_t j, std::size_t station);
// Headway behind j leaving `station`: longest timetabled passage to the next station.
int headway(const DispatchProblem& p, std::size_t j, std::size_t station);
// Shortest run from `station` to the next station.
int min_run_time(const DispatchProblem& p, std::size_t j, std::size_t station);

// Unavoidable delay per (train, station block).
using DelayTable = std::map<std::pair<std::size_t, std::size_t>, int>;

DelayTable propagate_primary(const DispatchProblem& p);

struct DecisionVariable {
  std::size_t train = 0;
  std::size_t station = 0;
  int delay = 0;
};

struct VariableGroup {
  std::size_t train = 0;
  std::size_t station = 0;
  std::size_t first = 0;  // flat index of the d_U variable
  std::size_t size = 0;
  int min_delay = 0;
};

// One-hot variables x_{j,s,m} over every station but the last of each route.
class VariableMap {
 public:
  VariableMap(std::vector<DecisionVariable> variables, std::vector<VariableGroup> groups);

  std::size_t size() const noexcept { return variables_.size(); }
  const DecisionVariable& variable(std::size_t i) const { return variables_.at(i); }
  std::span<const DecisionVariable> variables() const noexcept { return variables_; }
  std::span<const VariableGroup> groups() const noexcept { return groups_; }
  std::optional<std::size_t> index(std::size_t train, std::size_t station, int delay) const;
  const VariableGroup* group(std::size_t train, std::size_t station) const;

 private:
  std::vector<DecisionVariable> variables_;
  std::vector<VariableGroup> groups_;
};

VariableMap enumerate_variables(const DispatchProblem& p);

// Linear cost: w_j (m - d_U) / d_max(j) at the last decision station.
std::vector<double> objective_terms(const DispatchProblem& p, const VariableMap& map);
using DelayWeight = std::function<double(std::size_t train, std::size_t station, int delay)>;
std::vector<double> objective_terms(const VariableMap& map, const DelayWeight& weight);

enum class Condition { passing, single_block, deadlock, rolling_stock };

std::string_view to_string(Condition c);
Condition parse_condition(std::string_view name);

using IndexPair = std::pair<std::size_t, std::size_t>;

// Unordered variable pairs (first < second) that may not both be set. Sorted,
// without duplicates.
std::vector<IndexPair> condition_terms(const DispatchProblem& p, const VariableMap& map, Condition kind);

// p_sum ((sum x) - 1)^2 per group without the constant.
QuboInstance onehot_penalty_terms(const VariableMap& map, double p_sum);

struct CompiledProblem {
  QuboInstance qubo;
  VariableMap map;
};

// f + P_sum + P_pair.
CompiledProblem assemble_qubo(const DispatchProblem& p);

struct GroupViolation {
  std::size_t train = 0;
  std::size_t station = 0;
  std::size_t bits_set = 0;
};

struct DecodedSchedule {
  DelayTable delays;
  std::vector<GroupViolation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

DecodedSchedule decode_schedule(std::span<const std::uint8_t> bits, const VariableMap& map);
DecodedSchedule decode_schedule(PackedState state, const VariableMap& map);
// Throws PreconditionError on a missing group or an out-of-range delay.
std::vector<std::uint8_t> encode_schedule(const DelayTable& delays, const VariableMap& map);

enum class Check { range, passing, single_block, deadlock, rolling_stock, capacity };

std::string_view to_string(Check c);

struct Violation {
  Check check = Check::range;
  std::vector<std::size_t> trains;
  std::size_t station = 0;
  std::string detail;
};

struct ScheduleReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool passed(Check c) const;
};

// `delays` covers every decision station. The last station's delay is the
// earliest one the passing condition allows.
ScheduleReport validate_schedule(const DispatchProblem& p, const DelayTable& delays);

// Spectrum of the assembled QUBO restricted to one-hot assignments.
inline constexpr double kMaxOnehotAssignments = 1e7;
Spectrum exact_onehot_search(const DispatchProblem& p, std::size_t k);

}  // namespace spinglass::railway

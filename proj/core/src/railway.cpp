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


#include "spinglass/railway.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "search_internal.hpp"
#include "spinglass/errors.hpp"

namespace spinglass::railway {
namespace {

std::string train_label(const DispatchProblem& p, std::size_t j) {
  const auto& name = p.timetable.trains[j].name;
  return name.empty() ? "train " + std::to_string(j) : name;
}

std::size_t route_position(const DispatchProblem& p, std::size_t j, std::size_t block) {
  const std::size_t n = p.network.size();
  if (block >= n) throw PreconditionError("block " + std::to_string(block) + " outside the network");
  return p.timetable.trains.at(j).direction == Direction::up ? block : n - 1 - block;
}

// Delays at every station of every route, extending the decision stations
// to the last station with the earliest delay the passing condition allows.
DelayTable complete_delays(const DispatchProblem& p, const DelayTable& delays) {
  DelayTable full = delays;
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    const auto stations = route_stations(p, j);
    const std::size_t last = stations.back();
    const std::size_t before = stations[stations.size() - 2];
    full[{j, last}] = std::max(0, full.at({j, before}) - reserve_to_next(p, j, before));
  }
  return full;
}

template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

Network::Network(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].tracks == 0) throw InvalidInstance("block " + std::to_string(b) + " has no track");
    if (blocks_[b].kind == BlockKind::station) stations_.push_back(b);
  }
  if (stations_.size() < 2) throw InvalidInstance("a network needs at least two stations");
  if (stations_.front() != 0 || stations_.back() != blocks_.size() - 1) {
    throw InvalidInstance("a network must begin and end with a station");
  }
}

void DispatchProblem::validate() const {
  const std::size_t n = network.size();
  const std::size_t trains = train_count();
  if (trains == 0) throw InvalidInstance("no trains");
  if (entry_delays.size() != trains || max_delays.size() != trains || weights.size() != trains) {
    throw InvalidInstance("per-train delay, d_max and weight lists must match the train count");
  }
  for (std::size_t j = 0; j < trains; ++j) {
    const auto& t = timetable.trains[j];
    const auto label = train_label(*this, j);
    if (t.leave_times.size() != n || t.min_passing.size() != n) {
      throw InvalidInstance(label + ": timetable must list every block of the route");
    }
    int enter = t.entry_time;
    for (std::size_t k = 0; k < n; ++k) {
      if (t.min_passing[k] < 0) throw InvalidInstance(label + ": negative minimum passing time");
      if (t.leave_times[k] - enter < t.min_passing[k]) {
        throw InvalidInstance(label + ": timetabled passage below the minimum at route block " + std::to_string(k));
      }
      enter = t.leave_times[k];
    }
    if (entry_delays[j] < 0) throw InvalidInstance(label + ": negative entry delay");
    if (max_delays[j] < 0) throw InvalidInstance(label + ": negative d_max");
  }
  for (const auto& s : timetable.shared_sets) {
    if (s.first >= trains || s.second >= trains || s.first == s.second) {
      throw InvalidInstance("shared train set refers to an unknown or repeated train");
    }
  }
  if (!(p_pair > 0.0) || !(p_sum > 0.0)) throw InvalidInstance("penalty weights must be positive");
}

std::vector<std::size_t> route(const DispatchProblem& p, std::size_t j) {
  const std::size_t n = p.network.size();
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = p.timetable.trains.at(j).direction == Direction::up ? k : n - 1 - k;
  return out;
}

std::vector<std::size_t> route_stations(const DispatchProblem& p, std::size_t j) {
  auto r = route(p, j);
  std::erase_if(r, [&](std::size_t b) { return !p.network.is_station(b); });
  return r;
}

int leave_time(const DispatchProblem& p, std::size_t j, std::size_t block) {
  return p.timetable.trains.at(j).leave_times.at(route_position(p, j, block));
}

int enter_time(const DispatchProblem& p, std::size_t j, std::size_t block) {
  const std::size_t pos = route_position(p, j, block);
  const auto& t = p.timetable.trains.at(j);
  return pos == 0 ? t.entry_time : t.leave_times.at(pos - 1);
}

int reserve(const DispatchProblem& p, std::size_t j, std::size_t block) {
  const std::size_t pos = route_position(p, j, block);
  return leave_time(p, j, block) - enter_time(p, j, block) - p.timetable.trains.at(j).min_passing.at(pos);
}

std::optional<std::size_t> next_station(const DispatchProblem& p, std::size_t j, std::size_t station) {
  const auto stations = route_stations(p, j);
  const auto it = std::find(stations.begin(), stations.end(), station);
  if (it == stations.end()) throw PreconditionError("block " + std::to_string(station) + " is not a station");
  if (it + 1 == stations.end()) return std::nullopt;
  return *(it + 1);
}

std::vector<std::size_t> blocks_between(const DispatchProblem& p, std::size_t j, std::size_t from, std::size_t to) {
  const std::size_t a = route_position(p, j, from);
  const std::size_t b = route_position(p, j, to);
  const auto r = route(p, j);
  if (b <= a) return {};
  return {r.begin() + static_cast<std::ptrdiff_t>(a + 1), r.begin() + static_cast<std::ptrdiff_t>(b)};
}

namespace {

std::size_t require_next(const DispatchProblem& p, std::size_t j, std::size_t station) {
  const auto next = next_station(p, j, station);
  if (!next) throw PreconditionError("station " + std::to_string(station) + " ends the route");
  return *next;
}

}  // namespace

int reserve_to_next(const DispatchProblem& p, std::size_t j, std::size_t station) {
  const std::size_t next = require_next(p, j, station);
  int sum = reserve(p, j, next);
  for (std::size_t b : blocks_between(p, j, station, next)) sum += reserve(p, j, b);
  return sum;
}

int headway(const DispatchProblem& p, std::size_t j, std::size_t station) {
  int longest = 0;
  for (std::size_t b : blocks_between(p, j, station, require_next(p, j, station))) {
    longest = std::max(longest, leave_time(p, j, b) - enter_time(p, j, b));
  }
  return longest;
}

int min_run_time(const DispatchProblem& p, std::size_t j, std::size_t station) {
  int sum = 0;
  for (std::size_t b : blocks_between(p, j, station, require_next(p, j, station))) {
    sum += p.timetable.trains.at(j).min_passing.at(route_position(p, j, b));
  }
  return sum;
}

DelayTable propagate_primary(const DispatchProblem& p) {
  p.validate();
  DelayTable out;
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    const auto stations = route_stations(p, j);
    int d = p.entry_delays[j];
    out[{j, stations.front()}] = d;
    for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
      d = std::max(0, d - reserve_to_next(p, j, stations[k]));
      out[{j, stations[k + 1]}] = d;
    }
  }
  return out;
}

VariableMap::VariableMap(std::vector<DecisionVariable> variables, std::vector<VariableGroup> groups)
    : variables_(std::move(variables)), groups_(std::move(groups)) {
  std::size_t next = 0;
  for (const auto& g : groups_) {
    if (g.first != next || g.size == 0) throw PreconditionError("variable groups must tile the index range");
    for (std::size_t i = 0; i < g.size; ++i) {
      const auto& v = variables_.at(g.first + i);
      if (v.train != g.train || v.station != g.station || v.delay != g.min_delay + static_cast<int>(i)) {
        throw PreconditionError("variable does not match its group");
      }
    }
    next += g.size;
  }
  if (next != variables_.size()) throw PreconditionError("variable groups must tile the index range");
}

const VariableGroup* VariableMap::group(std::size_t train, std::size_t station) const {
  const auto it = std::find_if(groups_.begin(), groups_.end(),
                               [&](const VariableGroup& g) { return g.train == train && g.station == station; });
  return it == groups_.end() ? nullptr : &*it;
}

std::optional<std::size_t> VariableMap::index(std::size_t train, std::size_t station, int delay) const {
  const auto* g = group(train, station);
  if (g == nullptr || delay < g->min_delay || delay >= g->min_delay + static_cast<int>(g->size)) return std::nullopt;
  return g->first + static_cast<std::size_t>(delay - g->min_delay);
}

VariableMap enumerate_variables(const DispatchProblem& p) {
  const auto primary = propagate_primary(p);
  std::vector<DecisionVariable> vars;
  std::vector<VariableGroup> groups;
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    const auto stations = route_stations(p, j);
    for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
      const std::size_t s = stations[k];
      const int du = primary.at({j, s});
      const auto width = static_cast<std::size_t>(p.max_delays[j]) + 1;
      groups.push_back({j, s, vars.size(), width, du});
      for (std::size_t m = 0; m < width; ++m) vars.push_back({j, s, du + static_cast<int>(m)});
    }
  }
  return VariableMap(std::move(vars), std::move(groups));
}

std::vector<double> objective_terms(const VariableMap& map, const DelayWeight& weight) {
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& v = map.variable(i);
    out[i] = weight(v.train, v.station, v.delay);
  }
  return out;
}

std::vector<double> objective_terms(const DispatchProblem& p, const VariableMap& map) {
  std::vector<std::size_t> last_decision(p.train_count());
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    const auto stations = route_stations(p, j);
    last_decision[j] = stations[stations.size() - 2];
  }
  return objective_terms(map, [&](std::size_t j, std::size_t s, int m) {
    if (s != last_decision[j] || p.max_delays[j] == 0) return 0.0;
    const int du = map.group(j, s)->min_delay;
    return p.weights[j] * static_cast<double>(m - du) / static_cast<double>(p.max_delays[j]);
  });
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::passing: return "passing";
    case Condition::single_block: return "single_block";
    case Condition::deadlock: return "deadlock";
    case Condition::rolling_stock: return "rolling_stock";
  }
  return "unknown";
}

Condition parse_condition(std::string_view name) {
  for (auto c : {Condition::passing, Condition::single_block, Condition::deadlock, Condition::rolling_stock}) {
    if (to_string(c) == name) return c;
  }
  throw PreconditionError("unknown condition '" + std::string(name) + "'");
}

namespace {

// Adds every (x_{j,s,m}, x_{j',s',m'}) with m' in [lo(m), hi(m)].
template <typename Range>
void add_window(const VariableMap& map, std::size_t j, std::size_t s, std::size_t jp, std::size_t sp, Range&& range,
                std::set<IndexPair>& out) {
  const auto* g = map.group(j, s);
  const auto* gp = map.group(jp, sp);
  if (g == nullptr || gp == nullptr) return;
  for (std::size_t a = 0; a < g->size; ++a) {
    const int m = g->min_delay + static_cast<int>(a);
    const auto [lo, hi] = range(m);
    for (int mp = std::max(lo, gp->min_delay); mp <= hi; ++mp) {
      const auto b = map.index(jp, sp, mp);
      if (!b) break;
      const std::size_t i = g->first + a;
      if (i != *b) out.insert({std::min(i, *b), std::max(i, *b)});
    }
  }
}

}  // namespace

std::vector<IndexPair> condition_terms(const DispatchProblem& p, const VariableMap& map, Condition kind) {
  std::set<IndexPair> out;
  const std::size_t trains = p.train_count();
  switch (kind) {
    case Condition::passing:
      for (std::size_t j = 0; j < trains; ++j) {
        const auto stations = route_stations(p, j);
        for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
          const int slack = reserve_to_next(p, j, stations[k]);
          add_window(map, j, stations[k], j, stations[k + 1],
                     [&](int m) { return std::pair(0, m - slack - 1); }, out);
        }
      }
      break;
    case Condition::single_block:
      for (std::size_t j = 0; j < trains; ++j) {
        for (std::size_t jp = 0; jp < trains; ++jp) {
          if (j == jp || p.timetable.trains[j].direction != p.timetable.trains[jp].direction) continue;
          const auto stations = route_stations(p, j);
          for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
            const std::size_t s = stations[k];
            const int delta = leave_time(p, j, s) - leave_time(p, jp, s);
            const int tau = headway(p, j, s);
            add_window(map, j, s, jp, s, [&](int m) { return std::pair(m + delta, m + delta + tau - 1); }, out);
          }
        }
      }
      break;
    case Condition::deadlock:
      for (std::size_t j = 0; j < trains; ++j) {
        for (std::size_t jp = 0; jp < trains; ++jp) {
          if (p.timetable.trains[j].direction == p.timetable.trains[jp].direction) continue;
          const auto stations = route_stations(p, j);
          for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
            const std::size_t s = stations[k];
            const std::size_t sn = stations[k + 1];
            const int delta = leave_time(p, j, s) - leave_time(p, jp, sn);
            const int run = min_run_time(p, j, s);
            const int run_back = min_run_time(p, jp, sn);
            // Neither train clears the single track before the other enters.
            add_window(map, j, s, jp, sn,
                       [&](int m) { return std::pair(m + delta - run_back + 1, m + delta + run - 1); }, out);
          }
        }
      }
      break;
    case Condition::rolling_stock:
      for (const auto& set : p.timetable.shared_sets) {
        const auto from = route_stations(p, set.first);
        const std::size_t s = from[from.size() - 2];
        const std::size_t sp = route_stations(p, set.second).front();
        const int r = leave_time(p, set.second, sp) - leave_time(p, set.first, s) - min_run_time(p, set.first, s) -
                      set.turnover;
        add_window(map, set.first, s, set.second, sp, [&](int m) { return std::pair(0, m - r); }, out);
      }
      break;
  }
  return {out.begin(), out.end()};
}

QuboInstance onehot_penalty_terms(const VariableMap& map, double p_sum) {
  ModelBuilder builder(map.size());
  for (const auto& g : map.groups()) {
    for (std::size_t a = 0; a < g.size; ++a) {
      builder.add_linear(g.first + a, -p_sum);
      for (std::size_t b = a + 1; b < g.size; ++b) builder.add_quadratic(g.first + a, g.first + b, 2.0 * p_sum);
    }
  }
  return builder.build_qubo();
}

CompiledProblem assemble_qubo(const DispatchProblem& p) {
  auto map = enumerate_variables(p);
  ModelBuilder builder(map.size());
  const auto cost = objective_terms(p, map);
  for (std::size_t i = 0; i < cost.size(); ++i) builder.add_linear(i, cost[i]);
  const auto onehot = onehot_penalty_terms(map, p.p_sum);
  for (std::size_t i = 0; i < onehot.size(); ++i) builder.add_linear(i, onehot.linear(i));
  for (const auto& c : onehot.quadratic()) builder.add_quadratic(c.i, c.j, c.value);
  for (auto kind : {Condition::passing, Condition::single_block, Condition::deadlock, Condition::rolling_stock}) {
    for (const auto& [a, b] : condition_terms(p, map, kind)) builder.add_quadratic(a, b, p.p_pair);
  }
  return {builder.build_qubo(), std::move(map)};
}

DecodedSchedule decode_schedule(std::span<const std::uint8_t> bits, const VariableMap& map) {
  if (bits.size() != map.size()) throw PreconditionError("bit count does not match the variable map");
  DecodedSchedule out;
  for (const auto& g : map.groups()) {
    std::size_t set = 0;
    int chosen = 0;
    for (std::size_t a = 0; a < g.size; ++a) {
      if (bits[g.first + a] != 0) {
        ++set;
        chosen = g.min_delay + static_cast<int>(a);
      }
    }
    if (set == 1) {
      out.delays[{g.train, g.station}] = chosen;
    } else {
      out.violations.push_back({g.train, g.station, set});
    }
  }
  return out;
}

DecodedSchedule decode_schedule(PackedState state, const VariableMap& map) {
  if (map.size() > 64) throw SizingError("packed states hold at most 64 variables");
  return decode_schedule(unpack_bits(state, map.size()), map);
}

std::vector<std::uint8_t> encode_schedule(const DelayTable& delays, const VariableMap& map) {
  std::vector<std::uint8_t> bits(map.size(), 0);
  for (const auto& g : map.groups()) {
    const auto it = delays.find({g.train, g.station});
    if (it == delays.end()) throw PreconditionError("no delay for a decision station");
    const auto i = map.index(g.train, g.station, it->second);
    if (!i) throw PreconditionError("delay " + std::to_string(it->second) + " outside its range");
    bits[*i] = 1;
  }
  return bits;
}

std::string_view to_string(Check c) {
  switch (c) {
    case Check::range: return "range";
    case Check::passing: return "passing";
    case Check::single_block: return "single_block";
    case Check::deadlock: return "deadlock";
    case Check::rolling_stock: return "rolling_stock";
    case Check::capacity: return "capacity";
  }
  return "unknown";
}

bool ScheduleReport::passed(Check c) const {
  return std::none_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.check == c; });
}

ScheduleReport validate_schedule(const DispatchProblem& p, const DelayTable& delays) {
  p.validate();
  ScheduleReport report;
  const auto map = enumerate_variables(p);
  for (const auto& g : map.groups()) {
    const auto it = delays.find({g.train, g.station});
    if (it == delays.end()) {
      report.violations.push_back({Check::range, {g.train}, g.station, "missing delay"});
    } else if (!map.index(g.train, g.station, it->second)) {
      report.violations.push_back({Check::range, {g.train}, g.station,
                                   "delay " + std::to_string(it->second) + " outside [" + std::to_string(g.min_delay) +
                                       ", " + std::to_string(g.min_delay + static_cast<int>(g.size) - 1) + "]"});
    }
  }
  if (!report.passed(Check::range)) return report;

  const auto d = complete_delays(p, delays);
  const std::size_t trains = p.train_count();
  auto out_time = [&](std::size_t j, std::size_t s) { return leave_time(p, j, s) + d.at({j, s}); };

  for (std::size_t j = 0; j < trains; ++j) {
    const auto stations = route_stations(p, j);
    for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
      const std::size_t s = stations[k];
      if (d.at({j, stations[k + 1]}) < d.at({j, s}) - reserve_to_next(p, j, s)) {
        report.violations.push_back({Check::passing, {j}, s, "faster than the minimum passing time"});
      }
    }
  }

  for (std::size_t j = 0; j < trains; ++j) {
    for (std::size_t jp = 0; jp < trains; ++jp) {
      if (j == jp) continue;
      const auto& tj = p.timetable.trains[j];
      const auto& tjp = p.timetable.trains[jp];
      const auto stations = route_stations(p, j);
      for (std::size_t k = 0; k + 1 < stations.size(); ++k) {
        const std::size_t s = stations[k];
        if (tj.direction == tjp.direction) {
          const int gap = out_time(jp, s) - out_time(j, s);
          if (gap >= 0 && gap < headway(p, j, s) && (gap > 0 || j < jp)) {
            report.violations.push_back({Check::single_block, {j, jp}, s,
                                         train_label(p, jp) + " leaves " + std::to_string(gap) + " min behind " +
                                             train_label(p, j)});
          }
        } else if (tj.direction == Direction::up) {
          const std::size_t sn = stations[k + 1];
          const int t = out_time(j, s);
          const int tp = out_time(jp, sn);
          if (tp > t - min_run_time(p, jp, sn) && tp < t + min_run_time(p, j, s)) {
            report.violations.push_back({Check::deadlock, {j, jp}, s,
                                         train_label(p, j) + " and " + train_label(p, jp) +
                                             " share the track towards block " + std::to_string(sn)});
          }
        }
      }
    }
  }

  for (const auto& set : p.timetable.shared_sets) {
    const auto from = route_stations(p, set.first);
    const std::size_t s = from[from.size() - 2];
    const std::size_t sp = route_stations(p, set.second).front();
    const int ready = out_time(set.first, s) + min_run_time(p, set.first, s) + set.turnover;
    if (!(out_time(set.second, sp) > ready)) {
      report.violations.push_back({Check::rolling_stock, {set.first, set.second}, sp,
                                   "train set not turned over in time"});
    }
  }

  const auto primary = propagate_primary(p);
  for (std::size_t s : p.network.stations()) {
    std::vector<std::pair<int, int>> spans(trains);
    for (std::size_t j = 0; j < trains; ++j) {
      const auto stations = route_stations(p, j);
      const int leave = out_time(j, s);
      if (s == stations.front()) {
        spans[j] = {std::min(enter_time(p, j, s) + primary.at({j, s}), leave), leave};
      } else {
        const auto it = std::find(stations.begin(), stations.end(), s);
        spans[j] = {out_time(j, *(it - 1)), leave};
      }
    }
    const auto tracks = p.network.block(s).tracks;
    for_each_subset(trains, tracks + 1, [&](std::span<const std::size_t> subset) {
      int latest_in = spans[subset[0]].first;
      int earliest_out = spans[subset[0]].second;
      for (std::size_t j : subset) {
        latest_in = std::max(latest_in, spans[j].first);
        earliest_out = std::min(earliest_out, spans[j].second);
      }
      if (latest_in <= earliest_out) {
        report.violations.push_back({Check::capacity, {subset.begin(), subset.end()}, s,
                                     std::to_string(subset.size()) + " trains at a " + std::to_string(tracks) +
                                         "-track station at minute " + std::to_string(latest_in)});
      }
    });
  }
  return report;
}

Spectrum exact_onehot_search(const DispatchProblem& p, std::size_t k) {
  if (k == 0) throw PreconditionError("k must be positive");
  const auto compiled = assemble_qubo(p);
  const auto& map = compiled.map;
  const auto groups = map.groups();
  double space = 1.0;
  for (const auto& g : groups) space *= static_cast<double>(g.size);
  if (space > kMaxOnehotAssignments) {
    throw SizingError("one-hot search space of " + std::to_string(space) + " assignments exceeds 1e7");
  }
  if (map.size() > 64) throw SizingError("one-hot search needs at most 64 variables");

  const std::size_t n = map.size();
  std::vector<double> q(n * n, 0.0);
  for (const auto& c : compiled.qubo.quadratic()) {
    q[c.i * n + c.j] = c.value;
    q[c.j * n + c.i] = c.value;
  }
  const std::size_t ng = groups.size();
  std::vector<std::size_t> choice(ng, 0);
  std::vector<std::size_t> chosen(ng);
  std::vector<double> prefix(ng + 1, compiled.qubo.offset());
  std::vector<std::uint64_t> word(ng + 1, 0);

  auto rebuild_from = [&](std::size_t level) {
    for (std::size_t g = level; g < ng; ++g) {
      const std::size_t v = groups[g].first + choice[g];
      chosen[g] = v;
      double e = prefix[g] + compiled.qubo.linear(v);
      for (std::size_t h = 0; h < g; ++h) e += q[chosen[h] * n + v];
      prefix[g + 1] = e;
      word[g + 1] = word[g] | (std::uint64_t{1} << v);
    }
  };

  // Slack keeps near-ties at the cut correct after canonical re-evaluation.
  const std::size_t keep = k + 64;
  auto worse = [](const SpectrumEntry& a, const SpectrumEntry& b) { return entry_less(a, b); };
  std::priority_queue<SpectrumEntry, std::vector<SpectrumEntry>, decltype(worse)> best(worse);
  rebuild_from(0);
  while (true) {
    const SpectrumEntry e{prefix[ng], PackedState{word[ng]}};
    if (best.size() < keep) {
      best.push(e);
    } else if (entry_less(e, best.top())) {
      best.pop();
      best.push(e);
    }
    std::size_t g = ng;
    while (g > 0 && choice[g - 1] + 1 == groups[g - 1].size) {
      choice[g - 1] = 0;
      --g;
    }
    if (g == 0) break;
    ++choice[g - 1];
    rebuild_from(g - 1);
  }
  std::vector<SpectrumEntry> entries;
  entries.reserve(best.size());
  while (!best.empty()) {
    entries.push_back(best.top());
    best.pop();
  }
  auto spectrum = detail::finalize(std::move(entries), [&](PackedState s) { return qubo_energy(compiled.qubo, s); });
  if (spectrum.entries.size() > k) spectrum.entries.resize(k);
  return spectrum;
}

}  // namespace spinglass::railway

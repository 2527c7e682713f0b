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


#include "spinglass/railway_io.hpp"

#include <json.hpp>

#include "spinglass/errors.hpp"

namespace spinglass::railway {
namespace {

using nlohmann::json;

std::size_t train_index(const DispatchProblem& p, const json& ref) {
  if (ref.is_number_unsigned()) {
    const auto j = ref.get<std::size_t>();
    if (j >= p.train_count()) throw ParseError("train index " + std::to_string(j) + " out of range");
    return j;
  }
  const auto name = ref.get<std::string>();
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    if (p.timetable.trains[j].name == name) return j;
  }
  throw ParseError("unknown train '" + name + "'");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string label(const DispatchProblem& p, std::size_t j) {
  const auto& name = p.timetable.trains[j].name;
  return name.empty() ? std::to_string(j) : name;
}

}  // namespace

DispatchProblem parse_dispatch_problem(std::string_view text) {
  const json doc = parse_json(text);
  try {
    std::vector<Block> blocks;
    for (const auto& b : doc.at("blocks")) {
      const auto kind = b.at("kind").get<std::string>();
      if (kind != "station" && kind != "line") throw ParseError("block kind must be 'station' or 'line'");
      blocks.push_back({kind == "station" ? BlockKind::station : BlockKind::line, b.value("tracks", 1U),
                        b.value("name", std::string())});
    }
    DispatchProblem p{Network(std::move(blocks)), {}, {}, {}, {}, doc.value("p_pair", 1.0), doc.value("p_sum", 1.0)};
    const int default_dmax = doc.value("d_max", 0);
    for (const auto& t : doc.at("trains")) {
      const int dir = t.value("direction", 0);
      if (dir != 0 && dir != 1) throw ParseError("train direction must be 0 or 1");
      p.timetable.trains.push_back({t.value("name", std::string()), dir == 0 ? Direction::up : Direction::down,
                                    t.at("entry_time").get<int>(), t.at("leave_times").get<std::vector<int>>(),
                                    t.at("min_passing").get<std::vector<int>>()});
      p.entry_delays.push_back(t.value("entry_delay", 0));
      p.max_delays.push_back(t.value("d_max", default_dmax));
      p.weights.push_back(t.value("weight", 1.0));
    }
    for (const auto& s : doc.value("shared_sets", json::array())) {
      p.timetable.shared_sets.push_back({train_index(p, s.at("first")), train_index(p, s.at("second")),
                                         s.at("turnover").get<int>()});
    }
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("dispatch problem: ") + e.what());
  }
}

std::string format_dispatch_problem(const DispatchProblem& p) {
  json doc;
  for (const auto& b : p.network.blocks()) {
    json jb{{"kind", b.kind == BlockKind::station ? "station" : "line"}, {"name", b.name}};
    if (b.kind == BlockKind::station) jb["tracks"] = b.tracks;
    doc["blocks"].push_back(jb);
  }
  for (std::size_t j = 0; j < p.train_count(); ++j) {
    const auto& t = p.timetable.trains[j];
    doc["trains"].push_back({{"name", t.name},
                             {"direction", t.direction == Direction::up ? 0 : 1},
                             {"entry_time", t.entry_time},
                             {"leave_times", t.leave_times},
                             {"min_passing", t.min_passing},
                             {"entry_delay", p.entry_delays[j]},
                             {"weight", p.weights[j]},
                             {"d_max", p.max_delays[j]}});
  }
  doc["shared_sets"] = json::array();
  for (const auto& s : p.timetable.shared_sets) {
    doc["shared_sets"].push_back({{"first", s.first}, {"second", s.second}, {"turnover", s.turnover}});
  }
  doc["p_pair"] = p.p_pair;
  doc["p_sum"] = p.p_sum;
  return doc.dump(2);
}

DelayTable parse_delay_table(const DispatchProblem& p, std::string_view text) {
  const json doc = parse_json(text);
  try {
    DelayTable out;
    for (const auto& d : doc.at("delays")) {
      out[{train_index(p, d.at("train")), d.at("station").get<std::size_t>()}] = d.at("delay").get<int>();
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("delay table: ") + e.what());
  }
}

std::string format_delay_table(const DispatchProblem& p, const DelayTable& delays) {
  json doc{{"delays", json::array()}};
  for (const auto& [key, d] : delays) {
    doc["delays"].push_back({{"train", label(p, key.first)}, {"station", key.second}, {"delay", d}});
  }
  return doc.dump(2);
}

std::string format_variable_map(const DispatchProblem& p, const VariableMap& map) {
  json doc{{"variables", json::array()}, {"groups", json::array()}};
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& v = map.variable(i);
    doc["variables"].push_back({{"index", i}, {"train", label(p, v.train)}, {"station", v.station}, {"delay", v.delay}});
  }
  for (const auto& g : map.groups()) {
    doc["groups"].push_back({{"train", label(p, g.train)},
                             {"station", g.station},
                             {"first", g.first},
                             {"size", g.size},
                             {"min_delay", g.min_delay}});
  }
  return doc.dump(2);
}

std::string format_schedule_report(const DispatchProblem& p, const ScheduleReport& report) {
  json doc{{"passed", report.passed()}, {"checks", json::object()}};
  for (auto c : {Check::range, Check::passing, Check::single_block, Check::deadlock, Check::rolling_stock,
                 Check::capacity}) {
    json entry{{"passed", report.passed(c)}, {"violations", json::array()}};
    for (const auto& v : report.violations) {
      if (v.check != c) continue;
      json trains = json::array();
      for (auto j : v.trains) trains.push_back(label(p, j));
      entry["violations"].push_back({{"trains", trains}, {"station", v.station}, {"detail", v.detail}});
    }
    doc["checks"][std::string(to_string(c))] = entry;
  }
  return doc.dump(2);
}

}  // namespace spinglass::railway

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "baf/core.hpp"
#include "baf/mixedcrit.hpp"
#include "baf/rational.hpp"

// JSON documents for instances and schedules. Durations are written as
// canonical fraction strings ("9/10", "3") and read from fraction or decimal
// strings or JSON integers; JSON floats are refused.

namespace baf::io {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  enum class Kind {
    Syntax,
    Schema,
    FloatDuration,
    MalformedDuration,
    NonPositiveDuration,
    DuplicateId,
    NonContiguousId,
    NonMonotoneWidths,
  };

  ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

  static std::string_view name(Kind kind) {
    switch (kind) {
      case Kind::Syntax: return "syntax";
      case Kind::Schema: return "schema";
      case Kind::FloatDuration: return "float-duration";
      case Kind::MalformedDuration: return "malformed-duration";
      case Kind::NonPositiveDuration: return "non-positive-duration";
      case Kind::DuplicateId: return "duplicate-id";
      case Kind::NonContiguousId: return "non-contiguous-id";
      case Kind::NonMonotoneWidths: return "non-monotone-widths";
    }
    return "unknown";
  }

 private:
  Kind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ParseError::Kind kind, const std::string& what) {
  throw ParseError(kind, std::string(ParseError::name(kind)) + ": " + what);
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ParseError::Kind::Syntax, e.what());
  }
}

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(ParseError::Kind::Schema, where + " lacks \"" + key + "\"");
  }
  return obj.at(key);
}

inline long long parse_id(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      long long id = std::stoll(s, &used);
      if (used == s.size()) return id;
    } catch (const std::exception&) {
    }
  }
  fail(ParseError::Kind::Schema, where + " has a non-integer id");
}

inline Rational parse_duration(const json& v, const std::string& where) {
  if (v.is_number_float()) {
    fail(ParseError::Kind::FloatDuration,
         where + " is a binary float; write it as a string such as \"9/10\"");
  }
  if (v.is_number_integer()) return Rational(mpz_class(std::to_string(v.get<long long>())));
  if (!v.is_string()) fail(ParseError::Kind::MalformedDuration, where + " is not a duration");
  try {
    return parse_rational(v.get_ref<const std::string&>());
  } catch (const RationalParseError& e) {
    fail(ParseError::Kind::MalformedDuration, where + ": " + e.what());
  }
}

/// Reads [{"id": .., key: ..}] into a vector indexed by id; ids must be 0..n-1.
inline std::vector<Rational> parse_indexed(const json& arr, const char* key, const char* what,
                                           bool allow_zero) {
  if (!arr.is_array()) fail(ParseError::Kind::Schema, std::string(what) + "s must be an array");
  std::vector<std::optional<Rational>> slots(arr.size());
  for (const auto& entry : arr) {
    long long id = parse_id(member(entry, "id", what), what);
    std::string where = std::string(what) + " " + std::to_string(id);
    Rational value = parse_duration(member(entry, key, where), where);
    if (value < 0 || (value == 0 && !allow_zero)) {
      fail(ParseError::Kind::NonPositiveDuration, where + " has " + key + " = " + to_string(value));
    }
    if (id < 0 || static_cast<std::size_t>(id) >= slots.size()) {
      fail(ParseError::Kind::NonContiguousId,
           where + ": ids must be 0.." + std::to_string(static_cast<long long>(slots.size()) - 1));
    }
    if (slots[id]) fail(ParseError::Kind::DuplicateId, where + " appears twice");
    slots[id] = value;
  }
  std::vector<Rational> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace detail

/// {"jobs":[{"id":0,"p":"9/10"}], "machines":[{"id":0,"c":"1"}]}. A top-level
/// "pair_reduced": true admits capacities equal to zero.
inline Instance instance_from_json(const json& doc) {
  bool pair_reduced = doc.is_object() && doc.contains("pair_reduced") &&
                      doc.at("pair_reduced").is_boolean() && doc.at("pair_reduced").get<bool>();
  auto p = detail::parse_indexed(detail::member(doc, "jobs", "instance"), "p", "job", false);
  auto c = detail::parse_indexed(detail::member(doc, "machines", "instance"), "c", "machine",
                                 pair_reduced);
  return Instance(std::move(p), std::move(c),
                  pair_reduced ? CapacityPolicy::AllowZero : CapacityPolicy::Positive);
}

inline Instance parse_instance(std::string_view text) {
  return instance_from_json(detail::parse_json(text));
}

inline json instance_to_json(const Instance& inst) {
  json doc;
  doc["jobs"] = json::array();
  doc["machines"] = json::array();
  for (const auto& job : inst.jobs()) doc["jobs"].push_back({{"id", job.id}, {"p", to_string(job.p)}});
  for (const auto& m : inst.machines()) doc["machines"].push_back({{"id", m.id}, {"c", to_string(m.c)}});
  if (inst.capacity_policy() == CapacityPolicy::AllowZero) doc["pair_reduced"] = true;
  return doc;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

/// {"assignment":{"0":1,...}}
inline Schedule schedule_from_json(const json& doc) {
  const json& assignment = detail::member(doc, "assignment", "schedule");
  if (!assignment.is_object()) detail::fail(ParseError::Kind::Schema, "assignment must be an object");
  Schedule sched;
  for (const auto& [key, value] : assignment.items()) {
    long long job = detail::parse_id(json(key), "assignment key");
    long long machine = detail::parse_id(value, "assignment of job " + key);
    if (job < 0 || machine < 0) detail::fail(ParseError::Kind::Schema, "negative id in assignment");
    sched.assign(static_cast<JobId>(job), static_cast<MachineId>(machine));
  }
  return sched;
}

inline Schedule parse_schedule(std::string_view text) {
  return schedule_from_json(detail::parse_json(text));
}

inline json schedule_to_json(const Schedule& sched) {
  json assignment = json::object();
  for (const auto& [job, machine] : sched) assignment[std::to_string(job)] = machine;
  return json{{"assignment", assignment}};
}

inline std::string serialize_schedule(const Schedule& sched) {
  return schedule_to_json(sched).dump(2) + "\n";
}

/// {"jobs":[{"id":0,"widths":["2","5"]}]}
inline mc::MCInstance mc_instance_from_json(const json& doc) {
  const json& arr = detail::member(doc, "jobs", "mc instance");
  if (!arr.is_array()) detail::fail(ParseError::Kind::Schema, "jobs must be an array");
  std::vector<mc::FJob> jobs;
  std::set<long long> seen;
  for (const auto& entry : arr) {
    long long id = detail::parse_id(detail::member(entry, "id", "F-shaped job"), "F-shaped job");
    std::string where = "F-shaped job " + std::to_string(id);
    if (!seen.insert(id).second) detail::fail(ParseError::Kind::DuplicateId, where + " appears twice");
    const json& widths = detail::member(entry, "widths", where);
    if (!widths.is_array() || widths.empty()) {
      detail::fail(ParseError::Kind::Schema, where + " needs a non-empty widths array");
    }
    mc::FJob job{id, {}};
    for (const auto& w : widths) {
      Rational value = detail::parse_duration(w, where);
      if (value <= 0) detail::fail(ParseError::Kind::NonPositiveDuration, where + " has width " + to_string(value));
      if (!job.widths.empty() && value < job.widths.back()) {
        detail::fail(ParseError::Kind::NonMonotoneWidths, where + " has decreasing widths");
      }
      job.widths.push_back(value);
    }
    jobs.push_back(std::move(job));
  }
  return mc::MCInstance(std::move(jobs));
}

inline mc::MCInstance parse_mc_instance(std::string_view text) {
  return mc_instance_from_json(detail::parse_json(text));
}

inline json mc_instance_to_json(const mc::MCInstance& inst) {
  json doc;
  doc["jobs"] = json::array();
  for (const auto& job : inst.jobs()) {
    json widths = json::array();
    for (const auto& w : job.widths) widths.push_back(to_string(w));
    doc["jobs"].push_back({{"id", job.id}, {"widths", widths}});
  }
  return doc;
}

inline std::string serialize_mc_instance(const mc::MCInstance& inst) {
  return mc_instance_to_json(inst).dump(2) + "\n";
}

/// {"start":{"0":"0"},"nesting":{"0":"standalone","1":0}}; "nesting" is optional.
inline mc::MCSchedule mc_schedule_from_json(const json& doc) {
  const json& start = detail::member(doc, "start", "mc schedule");
  if (!start.is_object()) detail::fail(ParseError::Kind::Schema, "start must be an object");
  mc::MCSchedule sched;
  for (const auto& [key, value] : start.items()) {
    long long id = detail::parse_id(json(key), "start key");
    Rational t = detail::parse_duration(value, "start of " + key);
    if (t < 0) detail::fail(ParseError::Kind::Schema, "start of " + key + " is negative");
    sched.start[id] = t;
  }
  if (doc.contains("nesting")) {
    const json& nesting = doc.at("nesting");
    if (!nesting.is_object()) detail::fail(ParseError::Kind::Schema, "nesting must be an object");
    for (const auto& [key, value] : nesting.items()) {
      long long id = detail::parse_id(json(key), "nesting key");
      if (value.is_string() && value.get_ref<const std::string&>() == "standalone") {
        sched.nesting[id] = std::nullopt;
      } else {
        sched.nesting[id] = detail::parse_id(value, "parent of " + key);
      }
    }
  }
  return sched;
}

inline mc::MCSchedule parse_mc_schedule(std::string_view text) {
  return mc_schedule_from_json(detail::parse_json(text));
}

inline json mc_schedule_to_json(const mc::MCSchedule& sched) {
  json start = json::object();
  json nesting = json::object();
  for (const auto& [id, t] : sched.start) start[std::to_string(id)] = to_string(t);
  for (const auto& [id, parent] : sched.nesting) {
    nesting[std::to_string(id)] = parent ? json(*parent) : json("standalone");
  }
  return json{{"start", start}, {"nesting", nesting}};
}

inline std::string serialize_mc_schedule(const mc::MCSchedule& sched) {
  return mc_schedule_to_json(sched).dump(2) + "\n";
}

}  // namespace baf::io

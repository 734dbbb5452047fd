// Copyright 2026 The colladapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Mission fact base: actors, their roles and devices, groups, and radio
// links. All operations are pure: they take a model and return a new one.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace colladapt {

enum class RoleKind { Supervisor, FiremanCoordinator, RobotCoordinator, Investigator };
enum class InvestigatorKind { Fireman, Robot };

std::string_view to_string(RoleKind kind);
std::string_view to_string(InvestigatorKind kind);
std::optional<RoleKind> parse_role_kind(std::string_view text);
std::optional<InvestigatorKind> parse_investigator_kind(std::string_view text);

struct Role {
  RoleKind kind = RoleKind::Investigator;
  // Present iff kind == Investigator.
  std::optional<InvestigatorKind> investigator_kind;

  static Role supervisor() { return {RoleKind::Supervisor, std::nullopt}; }
  static Role fireman_coordinator() { return {RoleKind::FiremanCoordinator, std::nullopt}; }
  static Role robot_coordinator() { return {RoleKind::RobotCoordinator, std::nullopt}; }
  static Role investigator(InvestigatorKind k) { return {RoleKind::Investigator, k}; }

  bool is_coordinator() const {
    return kind == RoleKind::FiremanCoordinator || kind == RoleKind::RobotCoordinator;
  }

  friend bool operator==(const Role&, const Role&) = default;
};

struct Device {
  std::string ip;
  int energy = 100;  // percent, [0, 100]
  std::string ssid;

  friend bool operator==(const Device&, const Device&) = default;
};

struct Actor {
  std::string id;
  Role role;
  std::string device;  // ip of the hosting device
  std::string group;   // group id

  friend bool operator==(const Actor&, const Actor&) = default;
};

struct Group {
  std::string id;
  std::set<std::string> members;  // actor ids

  friend bool operator==(const Group&, const Group&) = default;
};

// Links are stored as directed pairs; every mutation inserts both directions
// so validate() can report asymmetric input.
using SignalLink = std::pair<std::string, std::string>;

struct ApplicationModel {
  std::map<std::string, Actor> actors;    // by actor id
  std::map<std::string, Device> devices;  // by ip
  std::map<std::string, Group> groups;    // by group id
  std::set<SignalLink> links;

  bool has_signal(std::string_view a, std::string_view b) const;
  bool same_ssid(std::string_view a, std::string_view b) const;
  const Device* device_of(std::string_view actor_id) const;

  friend bool operator==(const ApplicationModel&, const ApplicationModel&) = default;
};

enum class ModelErrc { DuplicateId, UnknownGroup, UnknownDevice, UnknownActor, OutOfRange, InvalidLink };

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ModelErrc code() const noexcept { return code_; }

 private:
  ModelErrc code_;
};

struct AddActorOptions {
  bool create_missing_group = true;
};

ApplicationModel add_actor(const ApplicationModel& model, const Actor& actor, const Device& device,
                           const std::string& group_id, AddActorOptions options = {});
ApplicationModel set_energy(const ApplicationModel& model, const std::string& ip, int energy);
ApplicationModel remove_actor(const ApplicationModel& model, const std::string& actor_id);
ApplicationModel set_role(const ApplicationModel& model, const std::string& actor_id, const Role& role);
ApplicationModel add_link(const ApplicationModel& model, const std::string& a, const std::string& b);
ApplicationModel remove_link(const ApplicationModel& model, const std::string& a, const std::string& b);

struct Violation {
  std::string code;  // stable identifier, e.g. "energy-range"
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty iff every model invariant holds.
std::vector<Violation> validate(const ApplicationModel& model);

}  // namespace colladapt

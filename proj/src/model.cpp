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

#include "colladapt/model.hpp"

#include <array>

namespace colladapt {

namespace {

constexpr std::array<std::pair<RoleKind, std::string_view>, 4> kRoleNames{{
    {RoleKind::Supervisor, "Supervisor"},
    {RoleKind::FiremanCoordinator, "FiremanCoordinator"},
    {RoleKind::RobotCoordinator, "RobotCoordinator"},
    {RoleKind::Investigator, "Investigator"},
}};

bool energy_in_range(int energy) { return energy >= 0 && energy <= 100; }

}  // namespace

std::string_view to_string(RoleKind kind) {
  for (const auto& [k, name] : kRoleNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string_view to_string(InvestigatorKind kind) {
  return kind == InvestigatorKind::Fireman ? "Fireman" : "Robot";
}

std::optional<RoleKind> parse_role_kind(std::string_view text) {
  for (const auto& [k, name] : kRoleNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::optional<InvestigatorKind> parse_investigator_kind(std::string_view text) {
  if (text == "Fireman") return InvestigatorKind::Fireman;
  if (text == "Robot") return InvestigatorKind::Robot;
  return std::nullopt;
}

bool ApplicationModel::has_signal(std::string_view a, std::string_view b) const {
  return links.contains(SignalLink{std::string(a), std::string(b)});
}

bool ApplicationModel::same_ssid(std::string_view a, std::string_view b) const {
  auto da = devices.find(std::string(a));
  auto db = devices.find(std::string(b));
  if (da == devices.end() || db == devices.end()) return false;
  return da->second.ssid == db->second.ssid;
}

const Device* ApplicationModel::device_of(std::string_view actor_id) const {
  auto it = actors.find(std::string(actor_id));
  if (it == actors.end()) return nullptr;
  auto dev = devices.find(it->second.device);
  return dev == devices.end() ? nullptr : &dev->second;
}

ApplicationModel add_actor(const ApplicationModel& model, const Actor& actor, const Device& device,
                           const std::string& group_id, AddActorOptions options) {
  if (model.actors.contains(actor.id)) {
    throw ModelError(ModelErrc::DuplicateId, "actor id already present: " + actor.id);
  }
  if (model.devices.contains(device.ip)) {
    throw ModelError(ModelErrc::DuplicateId, "device ip already present: " + device.ip);
  }
  if (!energy_in_range(device.energy)) {
    throw ModelError(ModelErrc::OutOfRange, "energy out of range for " + device.ip);
  }
  if (!options.create_missing_group && !model.groups.contains(group_id)) {
    throw ModelError(ModelErrc::UnknownGroup, "unknown group: " + group_id);
  }

  ApplicationModel next = model;
  Actor stored = actor;
  stored.device = device.ip;
  stored.group = group_id;
  next.devices.emplace(device.ip, device);
  next.actors.emplace(stored.id, stored);
  auto& group = next.groups[group_id];
  group.id = group_id;
  group.members.insert(stored.id);
  return next;
}

ApplicationModel set_energy(const ApplicationModel& model, const std::string& ip, int energy) {
  if (!model.devices.contains(ip)) {
    throw ModelError(ModelErrc::UnknownDevice, "unknown device: " + ip);
  }
  if (!energy_in_range(energy)) {
    throw ModelError(ModelErrc::OutOfRange, "energy " + std::to_string(energy) + " outside [0,100]");
  }
  ApplicationModel next = model;
  next.devices.at(ip).energy = energy;
  return next;
}

ApplicationModel remove_actor(const ApplicationModel& model, const std::string& actor_id) {
  auto it = model.actors.find(actor_id);
  if (it == model.actors.end()) {
    throw ModelError(ModelErrc::UnknownActor, "unknown actor: " + actor_id);
  }
  const Actor actor = it->second;

  ApplicationModel next = model;
  next.actors.erase(actor_id);
  if (auto g = next.groups.find(actor.group); g != next.groups.end()) {
    g->second.members.erase(actor_id);
  }

  bool shared = false;
  for (const auto& [id, other] : next.actors) {
    if (other.device == actor.device) {
      shared = true;
      break;
    }
  }
  if (!shared) {
    next.devices.erase(actor.device);
    std::erase_if(next.links, [&](const SignalLink& l) {
      return l.first == actor.device || l.second == actor.device;
    });
  }
  return next;
}

ApplicationModel set_role(const ApplicationModel& model, const std::string& actor_id, const Role& role) {
  if (!model.actors.contains(actor_id)) {
    throw ModelError(ModelErrc::UnknownActor, "unknown actor: " + actor_id);
  }
  if ((role.kind == RoleKind::Investigator) != role.investigator_kind.has_value()) {
    throw ModelError(ModelErrc::OutOfRange, "investigator kind must be set exactly for investigators");
  }
  ApplicationModel next = model;
  next.actors.at(actor_id).role = role;
  return next;
}

ApplicationModel add_link(const ApplicationModel& model, const std::string& a, const std::string& b) {
  for (const auto& ip : {a, b}) {
    if (!model.devices.contains(ip)) {
      throw ModelError(ModelErrc::UnknownDevice, "unknown device: " + ip);
    }
  }
  if (a == b) {
    throw ModelError(ModelErrc::InvalidLink, "a device cannot link to itself: " + a);
  }
  ApplicationModel next = model;
  next.links.emplace(a, b);
  next.links.emplace(b, a);
  return next;
}

ApplicationModel remove_link(const ApplicationModel& model, const std::string& a, const std::string& b) {
  for (const auto& ip : {a, b}) {
    if (!model.devices.contains(ip)) {
      throw ModelError(ModelErrc::UnknownDevice, "unknown device: " + ip);
    }
  }
  ApplicationModel next = model;
  next.links.erase({a, b});
  next.links.erase({b, a});
  return next;
}

std::vector<Violation> validate(const ApplicationModel& model) {
  std::vector<Violation> out;
  auto report = [&out](std::string code, std::string detail) {
    out.push_back({std::move(code), std::move(detail)});
  };

  for (const auto& [ip, device] : model.devices) {
    if (device.ip != ip) report("device-key", ip + " stored under mismatched key");
    if (!energy_in_range(device.energy)) {
      report("energy-range", ip + " has energy " + std::to_string(device.energy));
    }
  }

  for (const auto& [id, actor] : model.actors) {
    if (actor.id != id) report("actor-key", id + " stored under mismatched key");
    if ((actor.role.kind == RoleKind::Investigator) != actor.role.investigator_kind.has_value()) {
      report("role-kind", id);
    }
    if (!model.devices.contains(actor.device)) {
      report("dangling-device", id + " -> " + actor.device);
    }
    auto g = model.groups.find(actor.group);
    if (g == model.groups.end()) {
      report("dangling-group", id + " -> " + actor.group);
    } else if (!g->second.members.contains(id)) {
      report("group-membership", id + " missing from " + actor.group);
    }
  }

  for (const auto& [gid, group] : model.groups) {
    if (group.id != gid) report("group-key", gid + " stored under mismatched key");
    for (const auto& member : group.members) {
      auto a = model.actors.find(member);
      if (a == model.actors.end()) {
        report("dangling-member", gid + " lists " + member);
      } else if (a->second.group != gid) {
        report("group-membership", member + " listed in " + gid + " but belongs to " + a->second.group);
      }
    }
  }

  for (const auto& [a, b] : model.links) {
    if (a == b) report("self-link", a);
    if (!model.devices.contains(a) || !model.devices.contains(b)) {
      report("dangling-link", a + " <-> " + b);
    }
    // Report each asymmetric pair once, from its stored direction.
    if (!model.links.contains({b, a})) report("asymmetric-link", a + " -> " + b);
  }
  return out;
}

}  // namespace colladapt

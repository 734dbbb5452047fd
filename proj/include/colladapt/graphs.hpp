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

// Collaboration-level and middleware-level graphs, GraphML/DOT encoding, and
// the component-level diff between two middleware graphs.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace colladapt {

enum class DataType { Audio, Text, Video };

std::string_view to_string(DataType type);
std::optional<DataType> parse_data_type(std::string_view text);

// ---------------------------------------------------------------------------
// Collaboration level

enum class CollabKind { Sender, Receiver };

std::string_view to_string(CollabKind kind);

struct CollabVertex {
  std::string id;
  CollabKind kind = CollabKind::Sender;
  std::string ip;
  DataType data_type = DataType::Audio;
  std::string session;

  friend auto operator<=>(const CollabVertex&, const CollabVertex&) = default;
};

struct Flow {
  std::string id;
  DataType data_type = DataType::Audio;
  std::string source;       // sender component id
  std::string destination;  // receiver component id
  std::string session;

  friend auto operator<=>(const Flow&, const Flow&) = default;
};

struct Session {
  std::string name;
  std::set<std::string> flows;

  friend bool operator==(const Session&, const Session&) = default;
};

struct CollaborationGraph {
  std::map<std::string, CollabVertex> vertices;
  std::map<std::string, Flow> flows;

  // Sessions are the partition of flows by their session attribute.
  std::map<std::string, Session> sessions() const;
  bool empty() const { return vertices.empty() && flows.empty(); }

  friend bool operator==(const CollaborationGraph&, const CollaborationGraph&) = default;
};

// Invariant codes for the collaboration graph; empty when valid.
std::vector<std::string> violations(const CollaborationGraph& graph);

// ---------------------------------------------------------------------------
// Middleware level (event-based communication)

enum class MwKind { EP, EC, CM };
enum class LinkKind { Push, Pull };

std::string_view to_string(MwKind kind);
std::string_view to_string(LinkKind kind);

struct MwVertex {
  std::string id;
  MwKind kind = MwKind::EP;
  DataType data_type = DataType::Audio;
  std::string session;
  std::string ip;

  friend auto operator<=>(const MwVertex&, const MwVertex&) = default;
};

struct MwEdge {
  std::string from;
  std::string to;
  LinkKind kind = LinkKind::Push;

  std::string id() const { return from + "->" + to; }
  friend auto operator<=>(const MwEdge&, const MwEdge&) = default;
};

// Edges are not stored: every EP pushes to its session's CM and every EC pulls
// from it, so the edge set is a function of the vertices.
struct MiddlewareGraph {
  std::map<std::string, MwVertex> vertices;

  std::vector<MwEdge> edges() const;
  // CM host per session name.
  std::map<std::string, std::string> cm_hosts() const;
  void add(MwVertex vertex) { vertices[vertex.id] = std::move(vertex); }
  bool empty() const { return vertices.empty(); }

  friend bool operator==(const MiddlewareGraph&, const MiddlewareGraph&) = default;
};

std::vector<std::string> violations(const MiddlewareGraph& graph);

// Logical component ids. They are derived from roles and sessions, never from
// the CM host, so a host change shows up as a move.
std::string cm_id(std::string_view session);

// ---------------------------------------------------------------------------
// Serialization

std::string to_graphml(const CollaborationGraph& graph);
std::string to_graphml(const MiddlewareGraph& graph);
std::string to_dot(const CollaborationGraph& graph);
std::string to_dot(const MiddlewareGraph& graph);

using AnyGraph = std::variant<CollaborationGraph, MiddlewareGraph>;

AnyGraph from_graphml(const std::string& text);
CollaborationGraph collaboration_from_graphml(const std::string& text);
MiddlewareGraph middleware_from_graphml(const std::string& text);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, unsigned long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  unsigned long line() const noexcept { return line_; }

 private:
  unsigned long line_;
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::string key)
      : std::runtime_error("missing or malformed GraphML key: " + key), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(std::string invariant)
      : std::runtime_error("graph invariant violated: " + invariant), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// ---------------------------------------------------------------------------
// Migration plans

struct Move {
  MwVertex before;
  MwVertex after;

  const std::string& id() const { return before.id; }
  const std::string& from() const { return before.ip; }
  const std::string& to() const { return after.ip; }

  friend bool operator==(const Move&, const Move&) = default;
};

struct MigrationPlan {
  std::vector<MwVertex> added;
  std::vector<MwVertex> removed;
  std::vector<Move> moved;

  bool empty() const { return added.empty() && removed.empty() && moved.empty(); }
  std::size_t size() const { return added.size() + removed.size() + moved.size(); }
  // "+<added> -<removed> ~<moved>"
  std::string summary() const;

  friend bool operator==(const MigrationPlan&, const MigrationPlan&) = default;
};

// Components only in `next` are added, only in `current` removed; a component
// present in both whose host (or any other attribute) differs is moved.
MigrationPlan diff(const MiddlewareGraph& current, const MiddlewareGraph& next);

}  // namespace colladapt

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

#include "colladapt/graphs.hpp"

#include <algorithm>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace colladapt {

namespace pt = boost::property_tree;

std::string_view to_string(DataType type) {
  switch (type) {
    case DataType::Audio: return "audio";
    case DataType::Text: return "text";
    case DataType::Video: return "video";
  }
  return "?";
}

std::optional<DataType> parse_data_type(std::string_view text) {
  if (text == "audio") return DataType::Audio;
  if (text == "text") return DataType::Text;
  if (text == "video") return DataType::Video;
  return std::nullopt;
}

std::string_view to_string(CollabKind kind) { return kind == CollabKind::Sender ? "sender" : "receiver"; }

std::string_view to_string(MwKind kind) {
  switch (kind) {
    case MwKind::EP: return "EP";
    case MwKind::EC: return "EC";
    case MwKind::CM: return "CM";
  }
  return "?";
}

std::string_view to_string(LinkKind kind) { return kind == LinkKind::Push ? "push" : "pull"; }

std::string cm_id(std::string_view session) { return "cm:" + std::string(session); }

// ---------------------------------------------------------------------------

std::map<std::string, Session> CollaborationGraph::sessions() const {
  std::map<std::string, Session> out;
  for (const auto& [id, flow] : flows) {
    auto& s = out[flow.session];
    s.name = flow.session;
    s.flows.insert(id);
  }
  return out;
}

std::vector<std::string> violations(const CollaborationGraph& graph) {
  std::vector<std::string> out;
  for (const auto& [id, v] : graph.vertices) {
    if (v.id != id) out.push_back("vertex-key");
  }
  for (const auto& [id, flow] : graph.flows) {
    if (flow.id != id) out.push_back("flow-key");
    if (flow.source == flow.destination) out.push_back("flow-self-loop");
    auto src = graph.vertices.find(flow.source);
    auto dst = graph.vertices.find(flow.destination);
    if (src == graph.vertices.end() || dst == graph.vertices.end()) {
      out.push_back("dangling-flow-endpoint");
      continue;
    }
    if (src->second.kind != CollabKind::Sender) out.push_back("flow-source-kind");
    if (dst->second.kind != CollabKind::Receiver) out.push_back("flow-destination-kind");
    if (src->second.session != flow.session || dst->second.session != flow.session) {
      out.push_back("flow-session-mismatch");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<MwEdge> MiddlewareGraph::edges() const {
  std::map<std::string, std::string> cms;
  for (const auto& [id, v] : vertices) {
    if (v.kind == MwKind::CM) cms.emplace(v.session, id);
  }
  std::vector<MwEdge> out;
  for (const auto& [id, v] : vertices) {
    auto cm = cms.find(v.session);
    if (cm == cms.end()) continue;
    if (v.kind == MwKind::EP) out.push_back({id, cm->second, LinkKind::Push});
    if (v.kind == MwKind::EC) out.push_back({cm->second, id, LinkKind::Pull});
  }
  std::sort(out.begin(), out.end(), [](const MwEdge& a, const MwEdge& b) { return a.id() < b.id(); });
  return out;
}

std::map<std::string, std::string> MiddlewareGraph::cm_hosts() const {
  std::map<std::string, std::string> out;
  for (const auto& [id, v] : vertices) {
    if (v.kind == MwKind::CM) out[v.session] = v.ip;
  }
  return out;
}

std::vector<std::string> violations(const MiddlewareGraph& graph) {
  std::vector<std::string> out;
  std::map<std::string, int> cms;
  std::set<std::string> sessions;
  for (const auto& [id, v] : graph.vertices) {
    if (v.id != id) out.push_back("vertex-key");
    sessions.insert(v.session);
    if (v.kind == MwKind::CM) ++cms[v.session];
  }
  for (const auto& s : sessions) {
    auto n = cms[s];
    if (n == 0) out.push_back("missing-CM");
    if (n > 1) out.push_back("one-CM-per-session");
  }
  return out;
}

// ---------------------------------------------------------------------------
// GraphML

namespace {

std::string xml_escape(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::string_view kHeader =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
    "  <key id=\"id\" for=\"node\" attr.name=\"id\" attr.type=\"string\"/>\n"
    "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
    "  <key id=\"datatype\" for=\"node\" attr.name=\"datatype\" attr.type=\"string\"/>\n"
    "  <key id=\"session\" for=\"node\" attr.name=\"session\" attr.type=\"string\"/>\n"
    "  <key id=\"ip\" for=\"node\" attr.name=\"ip\" attr.type=\"string\"/>\n";

void write_node(std::ostringstream& os, const std::string& id, std::string_view kind, DataType type,
                const std::string& session, const std::string& ip) {
  os << "    <node id=\"" << xml_escape(id) << "\">\n"
     << "      <data key=\"id\">" << xml_escape(id) << "</data>\n"
     << "      <data key=\"kind\">" << kind << "</data>\n"
     << "      <data key=\"datatype\">" << to_string(type) << "</data>\n"
     << "      <data key=\"session\">" << xml_escape(session) << "</data>\n"
     << "      <data key=\"ip\">" << xml_escape(ip) << "</data>\n"
     << "    </node>\n";
}

}  // namespace

std::string to_graphml(const CollaborationGraph& graph) {
  std::ostringstream os;
  os << kHeader
     << "  <key id=\"edge_datatype\" for=\"edge\" attr.name=\"datatype\" attr.type=\"string\"/>\n"
     << "  <key id=\"edge_session\" for=\"edge\" attr.name=\"session\" attr.type=\"string\"/>\n"
     << "  <graph id=\"collaboration\" edgedefault=\"directed\">\n";
  for (const auto& [id, v] : graph.vertices) {
    write_node(os, id, to_string(v.kind), v.data_type, v.session, v.ip);
  }
  for (const auto& [id, f] : graph.flows) {
    os << "    <edge id=\"" << xml_escape(id) << "\" source=\"" << xml_escape(f.source) << "\" target=\""
       << xml_escape(f.destination) << "\">\n"
       << "      <data key=\"edge_datatype\">" << to_string(f.data_type) << "</data>\n"
       << "      <data key=\"edge_session\">" << xml_escape(f.session) << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string to_graphml(const MiddlewareGraph& graph) {
  std::ostringstream os;
  os << kHeader << "  <key id=\"edge_kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <graph id=\"middleware\" edgedefault=\"directed\">\n";
  for (const auto& [id, v] : graph.vertices) {
    write_node(os, id, to_string(v.kind), v.data_type, v.session, v.ip);
  }
  for (const auto& e : graph.edges()) {
    os << "    <edge id=\"" << xml_escape(e.id()) << "\" source=\"" << xml_escape(e.from) << "\" target=\""
       << xml_escape(e.to) << "\">\n"
       << "      <data key=\"edge_kind\">" << to_string(e.kind) << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

namespace {

struct RawNode {
  std::string id;
  std::map<std::string, std::string> data;
};

struct RawEdge {
  std::string id;
  std::string source;
  std::string target;
  std::map<std::string, std::string> data;
};

struct RawGraph {
  std::string kind;
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
};

std::map<std::string, std::string> read_data(const pt::ptree& element) {
  std::map<std::string, std::string> out;
  for (const auto& [tag, child] : element) {
    if (tag != "data") continue;
    auto key = child.get_optional<std::string>("<xmlattr>.key");
    if (!key) throw SchemaError("data@key");
    out[*key] = child.get_value<std::string>();
  }
  return out;
}

RawGraph read_raw(const std::string& text) {
  pt::ptree doc;
  std::istringstream in(text);
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  auto root = doc.get_child_optional("graphml");
  if (!root) throw SchemaError("graphml");
  auto graph = root->get_child_optional("graph");
  if (!graph) throw SchemaError("graph");

  RawGraph raw;
  raw.kind = graph->get<std::string>("<xmlattr>.id", "");
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      auto id = child.get_optional<std::string>("<xmlattr>.id");
      if (!id) throw SchemaError("node@id");
      raw.nodes.push_back({*id, read_data(child)});
    } else if (tag == "edge") {
      auto src = child.get_optional<std::string>("<xmlattr>.source");
      auto dst = child.get_optional<std::string>("<xmlattr>.target");
      if (!src) throw SchemaError("edge@source");
      if (!dst) throw SchemaError("edge@target");
      raw.edges.push_back({child.get<std::string>("<xmlattr>.id", *src + "->" + *dst), *src, *dst,
                           read_data(child)});
    }
  }
  return raw;
}

const std::string& require(const std::map<std::string, std::string>& data, const std::string& key) {
  auto it = data.find(key);
  if (it == data.end()) throw SchemaError(key);
  return it->second;
}

DataType require_type(const std::map<std::string, std::string>& data, const std::string& key) {
  auto t = parse_data_type(require(data, key));
  if (!t) throw SchemaError(key);
  return *t;
}

void check_node_id(const RawNode& n) {
  if (require(n.data, "id") != n.id) throw InvariantError("node-id");
}

CollaborationGraph build_collaboration(const RawGraph& raw) {
  CollaborationGraph g;
  for (const auto& n : raw.nodes) {
    check_node_id(n);
    CollabVertex v;
    v.id = n.id;
    const auto& kind = require(n.data, "kind");
    if (kind == "sender") {
      v.kind = CollabKind::Sender;
    } else if (kind == "receiver") {
      v.kind = CollabKind::Receiver;
    } else {
      throw SchemaError("kind");
    }
    v.data_type = require_type(n.data, "datatype");
    v.session = require(n.data, "session");
    v.ip = require(n.data, "ip");
    if (!g.vertices.emplace(v.id, v).second) throw InvariantError("duplicate-id");
  }
  for (const auto& e : raw.edges) {
    Flow f{e.id, require_type(e.data, "edge_datatype"), e.source, e.target, require(e.data, "edge_session")};
    if (!g.flows.emplace(f.id, f).second) throw InvariantError("duplicate-id");
  }
  if (auto v = violations(g); !v.empty()) throw InvariantError(v.front());
  return g;
}

MiddlewareGraph build_middleware(const RawGraph& raw) {
  MiddlewareGraph g;
  for (const auto& n : raw.nodes) {
    check_node_id(n);
    MwVertex v;
    v.id = n.id;
    const auto& kind = require(n.data, "kind");
    if (kind == "EP") {
      v.kind = MwKind::EP;
    } else if (kind == "EC") {
      v.kind = MwKind::EC;
    } else if (kind == "CM") {
      v.kind = MwKind::CM;
    } else {
      throw SchemaError("kind");
    }
    v.data_type = require_type(n.data, "datatype");
    v.session = require(n.data, "session");
    v.ip = require(n.data, "ip");
    if (!g.vertices.emplace(v.id, v).second) throw InvariantError("duplicate-id");
  }
  if (auto v = violations(g); !v.empty()) throw InvariantError(v.front());

  // The stored edges must be exactly the push/pull links implied by the vertices.
  std::set<MwEdge> expected;
  for (const auto& e : g.edges()) expected.insert(e);
  std::set<MwEdge> seen;
  for (const auto& e : raw.edges) {
    auto src = g.vertices.find(e.source);
    auto dst = g.vertices.find(e.target);
    if (src == g.vertices.end() || dst == g.vertices.end()) throw InvariantError("dangling-edge");
    auto a = src->second.kind;
    auto b = dst->second.kind;
    if ((a == MwKind::EP && b == MwKind::EC) || (a == MwKind::EC && b == MwKind::EP)) {
      throw InvariantError("ep-ec-edge");
    }
    const auto& label = require(e.data, "edge_kind");
    LinkKind kind;
    if (label == "push") {
      kind = LinkKind::Push;
    } else if (label == "pull") {
      kind = LinkKind::Pull;
    } else {
      throw SchemaError("edge_kind");
    }
    MwEdge edge{e.source, e.target, kind};
    if (!expected.contains(edge)) throw InvariantError("unexpected-edge");
    seen.insert(edge);
  }
  for (const auto& e : expected) {
    if (!seen.contains(e)) throw InvariantError(e.kind == LinkKind::Push ? "push-edge" : "pull-edge");
  }
  return g;
}

}  // namespace

AnyGraph from_graphml(const std::string& text) {
  auto raw = read_raw(text);
  if (raw.kind == "collaboration") return build_collaboration(raw);
  if (raw.kind == "middleware") return build_middleware(raw);
  throw SchemaError("graph@id");
}

CollaborationGraph collaboration_from_graphml(const std::string& text) {
  auto g = from_graphml(text);
  if (auto* c = std::get_if<CollaborationGraph>(&g)) return std::move(*c);
  throw SchemaError("graph@id");
}

MiddlewareGraph middleware_from_graphml(const std::string& text) {
  auto g = from_graphml(text);
  if (auto* m = std::get_if<MiddlewareGraph>(&g)) return std::move(*m);
  throw SchemaError("graph@id");
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_quote(std::string_view in) {
  std::string out = "\"";
  for (char c : in) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const CollaborationGraph& graph) {
  std::ostringstream os;
  os << "digraph collaboration {\n";
  for (const auto& [id, v] : graph.vertices) {
    os << "  " << dot_quote(id) << " [label=" << dot_quote(std::string(to_string(v.kind)) + "\\n" + v.ip)
       << ", session=" << dot_quote(v.session) << "];\n";
  }
  for (const auto& [id, f] : graph.flows) {
    os << "  " << dot_quote(f.source) << " -> " << dot_quote(f.destination)
       << " [label=" << dot_quote(to_string(f.data_type)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const MiddlewareGraph& graph) {
  std::ostringstream os;
  os << "digraph middleware {\n";
  for (const auto& [id, v] : graph.vertices) {
    os << "  " << dot_quote(id) << " [label=" << dot_quote(std::string(to_string(v.kind)) + "\\n" + v.ip)
       << ", session=" << dot_quote(v.session) << (v.kind == MwKind::CM ? ", shape=box" : "") << "];\n";
  }
  for (const auto& e : graph.edges()) {
    os << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to) << " [label=" << dot_quote(to_string(e.kind))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

std::string MigrationPlan::summary() const {
  return "+" + std::to_string(added.size()) + " -" + std::to_string(removed.size()) + " ~" +
         std::to_string(moved.size());
}

MigrationPlan diff(const MiddlewareGraph& current, const MiddlewareGraph& next) {
  MigrationPlan plan;
  for (const auto& [id, v] : current.vertices) {
    auto it = next.vertices.find(id);
    if (it == next.vertices.end()) {
      plan.removed.push_back(v);
    } else if (it->second != v) {
      plan.moved.push_back({v, it->second});
    }
  }
  for (const auto& [id, v] : next.vertices) {
    if (!current.vertices.contains(id)) plan.added.push_back(v);
  }
  return plan;
}

}  // namespace colladapt

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

enum class NodeKind : std::uint8_t {
  Item,
  Hazard,
  SafetyGoal,
  FunctionalReq,
  TechnicalReq,
  HwElement,
  SwElement,
  Test,
  WorkProduct,
};

enum class Relation : std::uint8_t { Derives, Allocates, Verifies, Covers };

std::string_view to_string(NodeKind k) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view s) noexcept;
std::string_view to_string(Relation r) noexcept;
std::optional<Relation> parse_relation(std::string_view s) noexcept;

/// Canonical kind pairs: covers goal->hazard, derives functional->goal and
/// technical->functional, allocates hw|sw->technical, verifies test->functional|technical.
bool relation_allowed(Relation r, NodeKind from, NodeKind to) noexcept;

struct TraceNode {
  std::string id;
  NodeKind kind = NodeKind::WorkProduct;
  std::optional<Asil> asil;
  std::string title;

  friend bool operator==(const TraceNode&, const TraceNode&) = default;
};

struct TraceEdge {
  std::string from;
  std::string to;
  Relation relation = Relation::Derives;

  friend bool operator==(const TraceEdge&, const TraceEdge&) = default;
};

struct TraceGraph {
  std::vector<TraceNode> nodes;
  std::vector<TraceEdge> edges;

  const TraceNode* find(std::string_view id) const noexcept;

  friend bool operator==(const TraceGraph&, const TraceGraph&) = default;
};

/// Completeness and consistency rules. Missing ASILs count as QM.
///
///   TR-GOAL-NOREQ    error    safety goal without a deriving functional requirement
///   TR-FREQ-NOTREQ   error    functional requirement (>= A) without a deriving technical one
///   TR-TREQ-NOALLOC  error    technical requirement allocated to no element
///   TR-REQ-NOTEST    error    functional/technical requirement (>= A) verified by no test
///   TR-ASIL-DROP     error    derives edge whose child is rated below its parent
///   TR-BAD-RELATION  error    edge whose endpoint kinds do not fit its relation
///   TR-ORPHAN        warning  node without any edge
///
/// Edges naming unknown nodes are skipped; the loader rejects them.
std::vector<Finding> check_traceability(const TraceGraph& graph);

/// For each node of `from_kind`, the `to_kind` nodes reachable along edge direction or
/// against it (never mixing the two in one path). A node always reaches itself.
std::map<std::string, std::set<std::string>> trace_matrix(const TraceGraph& graph,
                                                          NodeKind from_kind, NodeKind to_kind);

/// One TR-CYCLE per strongly connected component of the derives subgraph with two or more
/// members, or a self-loop. Subject is the smallest member id.
std::vector<Finding> detect_cycles(const TraceGraph& graph);

}  // namespace fusa

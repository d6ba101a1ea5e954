#include "fusa/trace.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace fusa {

std::string_view to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Item: return "item";
    case NodeKind::Hazard: return "hazard";
    case NodeKind::SafetyGoal: return "safety_goal";
    case NodeKind::FunctionalReq: return "functional_req";
    case NodeKind::TechnicalReq: return "technical_req";
    case NodeKind::HwElement: return "hw_element";
    case NodeKind::SwElement: return "sw_element";
    case NodeKind::Test: return "test";
    case NodeKind::WorkProduct: return "work_product";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) noexcept {
  for (auto k : {NodeKind::Item, NodeKind::Hazard, NodeKind::SafetyGoal, NodeKind::FunctionalReq,
                 NodeKind::TechnicalReq, NodeKind::HwElement, NodeKind::SwElement, NodeKind::Test,
                 NodeKind::WorkProduct}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Derives: return "derives";
    case Relation::Allocates: return "allocates";
    case Relation::Verifies: return "verifies";
    case Relation::Covers: return "covers";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view s) noexcept {
  for (auto r : {Relation::Derives, Relation::Allocates, Relation::Verifies, Relation::Covers}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

bool relation_allowed(Relation r, NodeKind from, NodeKind to) noexcept {
  switch (r) {
    case Relation::Covers:
      return from == NodeKind::SafetyGoal && to == NodeKind::Hazard;
    case Relation::Derives:
      return (from == NodeKind::FunctionalReq && to == NodeKind::SafetyGoal) ||
             (from == NodeKind::TechnicalReq && to == NodeKind::FunctionalReq);
    case Relation::Allocates:
      return (from == NodeKind::HwElement || from == NodeKind::SwElement) &&
             to == NodeKind::TechnicalReq;
    case Relation::Verifies:
      return from == NodeKind::Test &&
             (to == NodeKind::FunctionalReq || to == NodeKind::TechnicalReq);
  }
  return false;
}

const TraceNode* TraceGraph::find(std::string_view id) const noexcept {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

namespace {

using NodeIndex = std::unordered_map<std::string, const TraceNode*>;

NodeIndex index_nodes(const TraceGraph& g) {
  NodeIndex idx;
  for (const auto& n : g.nodes) idx.emplace(n.id, &n);
  return idx;
}

Asil rated(const TraceNode& n) noexcept { return n.asil.value_or(Asil::QM); }

}  // namespace

std::vector<Finding> check_traceability(const TraceGraph& graph) {
  std::vector<Finding> out;
  const auto idx = index_nodes(graph);

  struct Incoming {
    bool derives_from_freq = false;
    bool derives_from_treq = false;
    bool allocated = false;
    bool verified = false;
    bool touched = false;
  };
  std::unordered_map<std::string, Incoming> in;

  for (const auto& e : graph.edges) {
    auto fi = idx.find(e.from);
    auto ti = idx.find(e.to);
    if (fi == idx.end() || ti == idx.end()) continue;
    const TraceNode& from = *fi->second;
    const TraceNode& to = *ti->second;
    in[from.id].touched = true;
    auto& dst = in[to.id];
    dst.touched = true;

    if (!relation_allowed(e.relation, from.kind, to.kind)) {
      out.push_back({"TR-BAD-RELATION", Severity::Error, from.id,
                     std::string(to_string(e.relation)) + " edge " + from.id + " -> " + to.id +
                         " joins " + std::string(to_string(from.kind)) + " to " +
                         std::string(to_string(to.kind))});
    }
    switch (e.relation) {
      case Relation::Derives:
        if (from.kind == NodeKind::FunctionalReq) dst.derives_from_freq = true;
        if (from.kind == NodeKind::TechnicalReq) dst.derives_from_treq = true;
        if (rated(from) < rated(to)) {
          out.push_back({"TR-ASIL-DROP", Severity::Error, from.id,
                         "rated ASIL " + std::string(to_string(rated(from))) + " but derives from " +
                             to.id + " rated ASIL " + std::string(to_string(rated(to)))});
        }
        break;
      case Relation::Allocates: dst.allocated = true; break;
      case Relation::Verifies: dst.verified = true; break;
      case Relation::Covers: break;
    }
  }

  for (const auto& n : graph.nodes) {
    const Incoming c = in.count(n.id) ? in.at(n.id) : Incoming{};
    const bool safety_rated = rated(n) >= Asil::A;
    switch (n.kind) {
      case NodeKind::SafetyGoal:
        if (!c.derives_from_freq)
          out.push_back({"TR-GOAL-NOREQ", Severity::Error, n.id,
                         "no functional requirement derives from this safety goal"});
        break;
      case NodeKind::FunctionalReq:
        if (safety_rated && !c.derives_from_treq)
          out.push_back({"TR-FREQ-NOTREQ", Severity::Error, n.id,
                         "no technical requirement derives from this functional requirement"});
        break;
      case NodeKind::TechnicalReq:
        if (!c.allocated)
          out.push_back({"TR-TREQ-NOALLOC", Severity::Error, n.id,
                         "technical requirement is allocated to no hardware or software element"});
        break;
      default: break;
    }
    if ((n.kind == NodeKind::FunctionalReq || n.kind == NodeKind::TechnicalReq) && safety_rated &&
        !c.verified)
      out.push_back({"TR-REQ-NOTEST", Severity::Error, n.id, "requirement is verified by no test"});
    if (!c.touched)
      out.push_back({"TR-ORPHAN", Severity::Warning, n.id, "node has no trace links"});
  }

  sort_findings(out);
  return out;
}

std::map<std::string, std::set<std::string>> trace_matrix(const TraceGraph& graph,
                                                          NodeKind from_kind, NodeKind to_kind) {
  const auto idx = index_nodes(graph);
  std::unordered_map<std::string, std::vector<std::string>> fwd, bwd;
  for (const auto& e : graph.edges) {
    if (!idx.count(e.from) || !idx.count(e.to)) continue;
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }

  const auto reach = [](const std::string& start,
                        const std::unordered_map<std::string, std::vector<std::string>>& adj,
                        std::set<std::string>& seen) {
    std::deque<std::string> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      auto it = adj.find(cur);
      if (it == adj.end()) continue;
      for (const auto& n : it->second)
        if (seen.insert(n).second) queue.push_back(n);
    }
  };

  std::map<std::string, std::set<std::string>> out;
  for (const auto& n : graph.nodes) {
    if (n.kind != from_kind) continue;
    std::set<std::string> down, up;
    reach(n.id, fwd, down);
    reach(n.id, bwd, up);
    auto& row = out[n.id];
    for (const auto* s : {&down, &up})
      for (const auto& id : *s)
        if (idx.at(id)->kind == to_kind) row.insert(id);
  }
  return out;
}

std::vector<Finding> detect_cycles(const TraceGraph& graph) {
  // Tarjan over the derives subgraph; vertices in sorted id order for stable output.
  std::vector<std::string> ids;
  for (const auto& n : graph.nodes) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos.emplace(ids[i], i);

  std::vector<std::vector<std::size_t>> adj(ids.size());
  std::vector<bool> self_loop(ids.size(), false);
  for (const auto& e : graph.edges) {
    if (e.relation != Relation::Derives || !pos.count(e.from) || !pos.count(e.to)) continue;
    const auto a = pos.at(e.from), b = pos.at(e.to);
    adj[a].push_back(b);
    if (a == b) self_loop[a] = true;
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(ids.size(), kUnvisited), low(ids.size(), 0);
  std::vector<bool> on_stack(ids.size(), false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::vector<Finding> out;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (order[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] != order[v]) return;
    std::vector<std::string> members;
    std::size_t w = 0;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      members.push_back(ids[w]);
    } while (w != v);
    if (members.size() < 2 && !self_loop[v]) return;
    std::sort(members.begin(), members.end());
    std::string list;
    for (const auto& m : members) list += (list.empty() ? "" : ", ") + m;
    out.push_back({"TR-CYCLE", Severity::Error, members.front(), "derives cycle through {" + list + "}"});
  };
  for (std::size_t v = 0; v < ids.size(); ++v)
    if (order[v] == kUnvisited) visit(v);

  sort_findings(out);
  return out;
}

}  // namespace fusa

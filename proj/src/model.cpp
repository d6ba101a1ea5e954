#include "fusa/model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace fusa {

using nlohmann::json;

const SafetyGoal* SafetyModel::find_goal(std::string_view id) const noexcept {
  for (const auto& g : safety_goals)
    if (g.id == id) return &g;
  return nullptr;
}

namespace {

struct LoadContext {
  bool strict = false;
  std::vector<Finding> warnings;
};

std::string_view kind_name(const json& j) { return j.type_name(); }

/// Object accessor that remembers which keys were read, so leftovers can be reported.
class Fields {
 public:
  Fields(const json& j, std::string path, LoadContext& ctx) : j_(j), path_(std::move(path)), ctx_(ctx) {
    if (!j_.is_object())
      throw SchemaError(path_, "expected an object, found " + std::string(kind_name(j_)));
  }

  Fields(const Fields&) = delete;
  Fields& operator=(const Fields&) = delete;

  ~Fields() noexcept(false) {
    if (std::uncaught_exceptions() == 0) finish();
  }

  const std::string& path() const noexcept { return path_; }
  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  const json* find(std::string_view key) {
    used_.insert(std::string(key));
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& need(std::string_view key) {
    const json* v = find(key);
    if (!v) throw SchemaError(at(key), "required key is missing");
    return *v;
  }

  std::string text(std::string_view key) {
    const json& v = need(key);
    if (!v.is_string()) throw SchemaError(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::string nonempty_text(std::string_view key) {
    auto s = text(key);
    if (s.empty()) throw SchemaError(at(key), "must not be empty");
    return s;
  }

  std::optional<std::string> opt_text(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw SchemaError(at(key), "expected a string");
    return v->get<std::string>();
  }

  bool flag(std::string_view key, std::optional<bool> fallback = std::nullopt) {
    const json* v = find(key);
    if (!v) {
      if (fallback) return *fallback;
      throw SchemaError(at(key), "required key is missing");
    }
    if (!v->is_boolean()) throw SchemaError(at(key), "expected true or false");
    return v->get<bool>();
  }

  double number(std::string_view key) {
    auto v = opt_number(key);
    if (!v) throw SchemaError(at(key), "required key is missing");
    return *v;
  }

  std::optional<double> opt_number(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw SchemaError(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw SchemaError(at(key), "number must be finite");
    return d;
  }

  UnitInterval unit_interval(std::string_view key) {
    const double d = number(key);
    return checked_unit(key, d);
  }

  std::optional<UnitInterval> opt_unit_interval(std::string_view key) {
    auto d = opt_number(key);
    if (!d) return std::nullopt;
    return checked_unit(key, *d);
  }

  std::optional<Asil> opt_asil(std::string_view key) {
    auto s = opt_text(key);
    if (!s) return std::nullopt;
    auto a = parse_asil(*s);
    if (!a) throw SchemaError(at(key), "unknown ASIL '" + *s + "' (expected QM, A, B, C or D)");
    return a;
  }

  const json& array(std::string_view key) {
    const json& v = need(key);
    if (!v.is_array()) throw SchemaError(at(key), "expected an array");
    return v;
  }

  /// Absent arrays read as empty.
  const json& opt_array(std::string_view key) {
    static const json kEmpty = json::array();
    const json* v = find(key);
    if (!v) return kEmpty;
    if (!v->is_array()) throw SchemaError(at(key), "expected an array");
    return *v;
  }

  std::vector<std::string> strings(std::string_view key, bool required = false) {
    const json& arr = required ? array(key) : opt_array(key);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string())
        throw SchemaError(at(key) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

  FailureRate rate(std::string_view key) {
    Fields f(need(key), at(key), ctx_);
    const double value = f.number("value");
    const auto unit_text = f.text("unit");
    const auto unit = parse_rate_unit(unit_text);
    if (!unit) throw SchemaError(f.at("unit"), "unknown unit '" + unit_text + "' (expected FIT or per_hour)");
    try {
      return FailureRate::from(value, *unit);
    } catch (const DomainError& e) {
      throw SchemaError(f.at("value"), e.what());
    }
  }

  void finish() {
    if (finished_) return;
    finished_ = true;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (used_.count(it.key())) continue;
      const std::string where = at(it.key());
      if (ctx_.strict) throw SchemaError(where, "unknown key");
      ctx_.warnings.push_back({"MODEL-UNKNOWN-KEY", Severity::Warning, where, "unknown key ignored"});
    }
  }

 private:
  UnitInterval checked_unit(std::string_view key, double d) {
    try {
      return UnitInterval(d);
    } catch (const DomainError& e) {
      throw SchemaError(at(key), e.what());
    }
  }

  const json& j_;
  std::string path_;
  LoadContext& ctx_;
  std::set<std::string> used_;
  bool finished_ = false;
};

std::string element(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

class IdRegistry {
 public:
  void add(const std::string& id, const std::string& path) {
    if (id.empty()) throw SchemaError(path, "id must not be empty");
    auto [it, fresh] = seen_.emplace(id, path);
    if (!fresh) throw ReferenceError(id, "duplicate id '" + id + "' at " + path + " (first declared at " + it->second + ")");
  }

 private:
  std::map<std::string, std::string> seen_;
};

void need_ref(bool ok, const std::string& id, const std::string& path, std::string_view what) {
  if (!ok) throw ReferenceError(id, path + ": unknown " + std::string(what) + " '" + id + "'");
}

ItemDefinition read_item(const json& j, LoadContext& ctx) {
  Fields f(j, "item", ctx);
  ItemDefinition item;
  item.name = f.nonempty_text("name");
  item.description = f.opt_text("description").value_or("");

  const auto checklist = [&](std::string_view key, auto keys, auto& flags) {
    const json* v = f.find(key);
    if (!v) return;
    Fields c(*v, f.at(key), ctx);
    for (std::size_t i = 0; i < keys.size(); ++i) flags[i] = c.flag(keys[i], false);
  };
  checklist("requirements", kRequirementKeys, item.requirement_checklist);
  checklist("boundary", kBoundaryKeys, item.boundary_checklist);
  checklist("artifacts", kArtifactKeys, item.artifacts_present);

  const json& sigs = f.opt_array("interfaces");
  std::set<std::string> names;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    Fields s(sigs[i], element(f.at("interfaces"), i), ctx);
    InterfaceSignal sig;
    sig.name = s.nonempty_text("name");
    if (!names.insert(sig.name).second) throw SchemaError(s.path(), "duplicate signal '" + sig.name + "'");
    const auto dir = s.text("direction");
    auto d = parse_direction(dir);
    if (!d) throw SchemaError(s.at("direction"), "unknown direction '" + dir + "' (expected in, out or inout)");
    sig.direction = *d;
    sig.semantic_type = s.opt_text("semantic_type").value_or("");
    sig.unit = s.opt_text("unit");
    sig.range_min = s.opt_number("range_min");
    sig.range_max = s.opt_number("range_max");
    if (sig.range_min && sig.range_max && *sig.range_min > *sig.range_max)
      throw SchemaError(s.path(), "range_min exceeds range_max");
    item.interfaces.push_back(std::move(sig));
  }
  return item;
}

StateMachine read_machine(const json& j, const std::string& path, LoadContext& ctx) {
  Fields f(j, path, ctx);
  StateMachine sm;
  sm.name = f.nonempty_text("name");
  sm.states = f.strings("states", true);
  if (sm.states.empty()) throw SchemaError(f.at("states"), "a state machine needs at least one state");
  std::set<std::string> states;
  for (const auto& s : sm.states)
    if (!states.insert(s).second) throw SchemaError(f.at("states"), "state '" + s + "' declared twice");
  sm.initial = f.text("initial");
  need_ref(states.count(sm.initial) > 0, sm.initial, f.at("initial"), "state");
  sm.events = f.strings("events");
  std::set<std::string> events;
  for (const auto& e : sm.events)
    if (!events.insert(e).second) throw SchemaError(f.at("events"), "event '" + e + "' declared twice");

  const json& ts = f.opt_array("transitions");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Fields t(ts[i], element(f.at("transitions"), i), ctx);
    Transition tr{t.text("from"), t.text("event"), t.text("to")};
    need_ref(states.count(tr.from) > 0, tr.from, t.at("from"), "state");
    need_ref(states.count(tr.to) > 0, tr.to, t.at("to"), "state");
    need_ref(events.count(tr.event) > 0, tr.event, t.at("event"), "event");
    sm.transitions.push_back(std::move(tr));
  }
  return sm;
}

}  // namespace

LoadResult load_model_with_warnings(std::string_view source_text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(source_text.begin(), source_text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, source_text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (source_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed model at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }

  LoadContext ctx{options.strict, {}};
  SafetyModel m;
  IdRegistry ids;
  {
    Fields top(doc, "$", ctx);
    m.item = read_item(top.need("item"), ctx);

    const json& sms = top.opt_array("state_machines");
    for (std::size_t i = 0; i < sms.size(); ++i) {
      const auto path = element("state_machines", i);
      m.state_machines.push_back(read_machine(sms[i], path, ctx));
      ids.add(m.state_machines.back().name, path);
    }

    const json& hs = top.opt_array("hazards");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Fields f(hs[i], element("hazards", i), ctx);
      Hazard h;
      h.id = f.nonempty_text("id");
      ids.add(h.id, f.path());
      h.description = f.nonempty_text("description");
      h.operational_situation = f.opt_text("operational_situation").value_or("");
      h.asil = f.opt_asil("asil");
      h.goals = f.strings("goals");
      m.hazards.push_back(std::move(h));
    }

    const json& gs = top.opt_array("safety_goals");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      Fields f(gs[i], element("safety_goals", i), ctx);
      SafetyGoal g;
      g.id = f.nonempty_text("id");
      ids.add(g.id, f.path());
      g.statement = f.opt_text("statement").value_or("");
      auto a = f.opt_asil("asil");
      if (!a) throw SchemaError(f.at("asil"), "required key is missing");
      g.asil = *a;
      g.covers = f.strings("covers", true);
      if (g.covers.empty()) throw SchemaError(f.at("covers"), "a safety goal must cover at least one hazard");
      m.safety_goals.push_back(std::move(g));
    }

    const json& rows = top.opt_array("fmeda");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Fields f(rows[i], element("fmeda", i), ctx);
      FmedaRow r;
      r.id = f.nonempty_text("id");
      ids.add(r.id, f.path());
      r.component_id = f.nonempty_text("component_id");
      r.failure_mode = f.nonempty_text("failure_mode");
      r.lambda_total = f.rate("lambda_total");
      r.safety_related = f.flag("safety_related");
      r.can_violate_goal_directly = f.flag("can_violate_goal_directly", false);
      r.dc_residual = f.opt_unit_interval("dc_residual");
      r.can_be_latent = f.flag("can_be_latent", false);
      r.dc_latent = f.opt_unit_interval("dc_latent");
      if (r.dc_latent && !r.can_be_latent)
        throw SchemaError(f.at("dc_latent"), "dc_latent requires can_be_latent");
      r.safety_goal = f.opt_text("safety_goal");
      m.fmeda.push_back(std::move(r));
    }

    if (const json* s = top.find("sotif")) {
      Fields f(*s, "sotif", ctx);
      std::array<double, 8> v{};
      for (std::size_t i = 0; i < kLeafSymbols.size(); ++i) v[i] = f.unit_interval(kLeafSymbols[i]).value();
      m.sotif = make_leaves(v);
    }

    const json& ts = top.opt_array("targets");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      Fields f(ts[i], element("targets", i), ctx);
      ValidationTarget t;
      t.name = f.nonempty_text("name");
      ids.add(t.name, f.path());
      t.symbol = f.text("symbol");
      if (!is_sotif_symbol(t.symbol)) throw SchemaError(f.at("symbol"), "unknown harm-model symbol '" + t.symbol + "'");
      t.threshold = f.number("threshold");
      if (t.threshold < 0.0) throw SchemaError(f.at("threshold"), "threshold must be >= 0");
      const auto cmp = f.text("comparator");
      auto c = parse_comparator(cmp);
      if (!c) throw SchemaError(f.at("comparator"), "unknown comparator '" + cmp + "' (expected le, lt, ge or gt)");
      t.comparator = *c;
      m.targets.push_back(std::move(t));
    }

    if (const json* tr = top.find("trace")) {
      Fields f(*tr, "trace", ctx);
      const json& ns = f.opt_array("nodes");
      for (std::size_t i = 0; i < ns.size(); ++i) {
        Fields n(ns[i], element("trace.nodes", i), ctx);
        TraceNode node;
        node.id = n.nonempty_text("id");
        ids.add(node.id, n.path());
        const auto kind = n.text("kind");
        auto k = parse_node_kind(kind);
        if (!k) throw SchemaError(n.at("kind"), "unknown node kind '" + kind + "'");
        node.kind = *k;
        node.asil = n.opt_asil("asil");
        node.title = n.opt_text("title").value_or("");
        m.trace.nodes.push_back(std::move(node));
      }
      const json& es = f.opt_array("edges");
      for (std::size_t i = 0; i < es.size(); ++i) {
        Fields e(es[i], element("trace.edges", i), ctx);
        TraceEdge edge;
        edge.from = e.text("from");
        edge.to = e.text("to");
        const auto rel = e.text("relation");
        auto r = parse_relation(rel);
        if (!r) throw SchemaError(e.at("relation"), "unknown relation '" + rel + "'");
        edge.relation = *r;
        m.trace.edges.push_back(std::move(edge));
      }
    }

    if (const json* c = top.find("safety_case")) {
      Fields f(*c, "safety_case", ctx);
      SafetyCase sc;
      sc.root = f.text("root");
      const json& cs = f.opt_array("claims");
      for (std::size_t i = 0; i < cs.size(); ++i) {
        Fields n(cs[i], element("safety_case.claims", i), ctx);
        Claim cl{n.nonempty_text("id"), n.opt_text("text").value_or(""), n.strings("supported_by")};
        ids.add(cl.id, n.path());
        sc.claims.push_back(std::move(cl));
      }
      const json& as = f.opt_array("arguments");
      for (std::size_t i = 0; i < as.size(); ++i) {
        Fields n(as[i], element("safety_case.arguments", i), ctx);
        Argument a;
        a.id = n.nonempty_text("id");
        ids.add(a.id, n.path());
        a.text = n.opt_text("text").value_or("");
        a.acceptance_criteria_reasonableness = n.unit_interval("acceptance_criteria_reasonableness");
        a.suitability = n.unit_interval("suitability");
        a.premises = n.strings("premises");
        a.evidence = n.strings("evidence");
        sc.arguments.push_back(std::move(a));
      }
      const json& ev = f.opt_array("evidence");
      for (std::size_t i = 0; i < ev.size(); ++i) {
        Fields n(ev[i], element("safety_case.evidence", i), ctx);
        Evidence e;
        e.id = n.nonempty_text("id");
        ids.add(e.id, n.path());
        e.text = n.opt_text("text").value_or("");
        e.confidence = n.unit_interval("confidence");
        e.coverage = n.unit_interval("coverage");
        sc.evidence.push_back(std::move(e));
      }
      m.safety_case = std::move(sc);
    }
  }

  // Cross-references.
  std::set<std::string> hazard_ids, goal_ids, node_ids;
  for (const auto& h : m.hazards) hazard_ids.insert(h.id);
  for (const auto& g : m.safety_goals) goal_ids.insert(g.id);
  for (std::size_t i = 0; i < m.hazards.size(); ++i)
    for (const auto& g : m.hazards[i].goals)
      need_ref(goal_ids.count(g) > 0, g, element("hazards", i) + ".goals", "safety goal");
  for (std::size_t i = 0; i < m.safety_goals.size(); ++i)
    for (const auto& h : m.safety_goals[i].covers)
      need_ref(hazard_ids.count(h) > 0, h, element("safety_goals", i) + ".covers", "hazard");
  for (std::size_t i = 0; i < m.fmeda.size(); ++i)
    if (const auto& g = m.fmeda[i].safety_goal)
      need_ref(goal_ids.count(*g) > 0, *g, element("fmeda", i) + ".safety_goal", "safety goal");

  node_ids.insert(hazard_ids.begin(), hazard_ids.end());
  node_ids.insert(goal_ids.begin(), goal_ids.end());
  for (const auto& n : m.trace.nodes) node_ids.insert(n.id);
  for (std::size_t i = 0; i < m.trace.edges.size(); ++i) {
    const auto& e = m.trace.edges[i];
    need_ref(node_ids.count(e.from) > 0, e.from, element("trace.edges", i) + ".from", "trace node");
    need_ref(node_ids.count(e.to) > 0, e.to, element("trace.edges", i) + ".to", "trace node");
  }

  if (m.safety_case) {
    const auto& sc = *m.safety_case;
    std::set<std::string> claims, args, evidence;
    for (const auto& c : sc.claims) claims.insert(c.id);
    for (const auto& a : sc.arguments) args.insert(a.id);
    for (const auto& e : sc.evidence) evidence.insert(e.id);
    need_ref(claims.count(sc.root) > 0, sc.root, "safety_case.root", "claim");
    for (std::size_t i = 0; i < sc.claims.size(); ++i)
      for (const auto& a : sc.claims[i].supported_by)
        need_ref(args.count(a) > 0, a, element("safety_case.claims", i) + ".supported_by", "argument");
    for (std::size_t i = 0; i < sc.arguments.size(); ++i) {
      for (const auto& p : sc.arguments[i].premises)
        need_ref(claims.count(p) > 0, p, element("safety_case.arguments", i) + ".premises", "claim");
      for (const auto& e : sc.arguments[i].evidence)
        need_ref(evidence.count(e) > 0, e, element("safety_case.arguments", i) + ".evidence", "evidence");
    }
  }

  sort_findings(ctx.warnings);
  return LoadResult{std::move(m), std::move(ctx.warnings)};
}

SafetyModel load_model(std::string_view source_text, const LoadOptions& options) {
  return load_model_with_warnings(source_text, options).model;
}

LoadResult load_model_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read model file '" + path + "'");
  return load_model_with_warnings(buf.str(), options);
}

namespace {

json rate_json(const FailureRate& r) {
  return json{{"value", r.per_hour()}, {"unit", "per_hour"}};
}

}  // namespace

std::string serialize_model(const SafetyModel& m) {
  json doc;
  json item{{"name", m.item.name}, {"description", m.item.description}};
  for (std::size_t i = 0; i < kRequirementKeys.size(); ++i)
    item["requirements"][std::string(kRequirementKeys[i])] = m.item.requirement_checklist[i];
  for (std::size_t i = 0; i < kBoundaryKeys.size(); ++i)
    item["boundary"][std::string(kBoundaryKeys[i])] = m.item.boundary_checklist[i];
  for (std::size_t i = 0; i < kArtifactKeys.size(); ++i)
    item["artifacts"][std::string(kArtifactKeys[i])] = m.item.artifacts_present[i];
  item["interfaces"] = json::array();
  for (const auto& s : m.item.interfaces) {
    json js{{"name", s.name}, {"direction", to_string(s.direction)}, {"semantic_type", s.semantic_type}};
    if (s.unit) js["unit"] = *s.unit;
    if (s.range_min) js["range_min"] = *s.range_min;
    if (s.range_max) js["range_max"] = *s.range_max;
    item["interfaces"].push_back(std::move(js));
  }
  doc["item"] = std::move(item);

  doc["state_machines"] = json::array();
  for (const auto& sm : m.state_machines) {
    json js{{"name", sm.name}, {"states", sm.states}, {"initial", sm.initial}, {"events", sm.events}};
    js["transitions"] = json::array();
    for (const auto& t : sm.transitions)
      js["transitions"].push_back({{"from", t.from}, {"event", t.event}, {"to", t.to}});
    doc["state_machines"].push_back(std::move(js));
  }

  doc["hazards"] = json::array();
  for (const auto& h : m.hazards) {
    json js{{"id", h.id}, {"description", h.description}, {"operational_situation", h.operational_situation}};
    if (h.asil) js["asil"] = to_string(*h.asil);
    if (!h.goals.empty()) js["goals"] = h.goals;
    doc["hazards"].push_back(std::move(js));
  }

  doc["safety_goals"] = json::array();
  for (const auto& g : m.safety_goals)
    doc["safety_goals"].push_back(
        {{"id", g.id}, {"statement", g.statement}, {"asil", to_string(g.asil)}, {"covers", g.covers}});

  doc["fmeda"] = json::array();
  for (const auto& r : m.fmeda) {
    json js{{"id", r.id},
            {"component_id", r.component_id},
            {"failure_mode", r.failure_mode},
            {"lambda_total", rate_json(r.lambda_total)},
            {"safety_related", r.safety_related},
            {"can_violate_goal_directly", r.can_violate_goal_directly},
            {"can_be_latent", r.can_be_latent}};
    if (r.dc_residual) js["dc_residual"] = r.dc_residual->value();
    if (r.dc_latent) js["dc_latent"] = r.dc_latent->value();
    if (r.safety_goal) js["safety_goal"] = *r.safety_goal;
    doc["fmeda"].push_back(std::move(js));
  }

  if (m.sotif) {
    json js;
    for (auto sym : kLeafSymbols) js[std::string(sym)] = *leaf_value(*m.sotif, sym);
    doc["sotif"] = std::move(js);
  }

  doc["targets"] = json::array();
  for (const auto& t : m.targets)
    doc["targets"].push_back({{"name", t.name},
                              {"symbol", t.symbol},
                              {"threshold", t.threshold},
                              {"comparator", to_string(t.comparator)}});

  json trace{{"nodes", json::array()}, {"edges", json::array()}};
  for (const auto& n : m.trace.nodes) {
    json js{{"id", n.id}, {"kind", to_string(n.kind)}, {"title", n.title}};
    if (n.asil) js["asil"] = to_string(*n.asil);
    trace["nodes"].push_back(std::move(js));
  }
  for (const auto& e : m.trace.edges)
    trace["edges"].push_back({{"from", e.from}, {"to", e.to}, {"relation", to_string(e.relation)}});
  doc["trace"] = std::move(trace);

  if (m.safety_case) {
    const auto& sc = *m.safety_case;
    json js{{"root", sc.root}, {"claims", json::array()}, {"arguments", json::array()}, {"evidence", json::array()}};
    for (const auto& c : sc.claims)
      js["claims"].push_back({{"id", c.id}, {"text", c.text}, {"supported_by", c.supported_by}});
    for (const auto& a : sc.arguments)
      js["arguments"].push_back({{"id", a.id},
                                 {"text", a.text},
                                 {"acceptance_criteria_reasonableness", a.acceptance_criteria_reasonableness.value()},
                                 {"suitability", a.suitability.value()},
                                 {"premises", a.premises},
                                 {"evidence", a.evidence}});
    for (const auto& e : sc.evidence)
      js["evidence"].push_back({{"id", e.id},
                                {"text", e.text},
                                {"confidence", e.confidence.value()},
                                {"coverage", e.coverage.value()}});
    doc["safety_case"] = std::move(js);
  }
  return doc.dump(2) + "\n";
}

std::vector<Finding> validate_model(const SafetyModel& m) {
  std::vector<Finding> out;
  for (const auto& h : m.hazards) {
    if (!h.asil) out.push_back({"HAZ-NO-ASIL", Severity::Warning, h.id, "hazard has no ASIL"});
    for (const auto& gid : h.goals) {
      const auto* g = m.find_goal(gid);
      if (g && std::find(g->covers.begin(), g->covers.end(), h.id) == g->covers.end())
        out.push_back({"HAZ-GOAL-ASYM", Severity::Warning, h.id,
                       "hazard names safety goal " + gid + ", which does not cover it"});
    }
  }
  for (const auto& r : m.fmeda) {
    if (!r.safety_related && r.safety_goal)
      out.push_back({"FMEDA-NSR-GOAL", Severity::Warning, r.id,
                     "row is not safety-related but references safety goal " + *r.safety_goal});
    if (r.safety_related && r.dc_residual && !r.can_violate_goal_directly)
      out.push_back({"FMEDA-DC-UNUSED", Severity::Info, r.id,
                     "dc_residual is ignored because the row cannot violate a goal directly"});
  }
  sort_findings(out);
  return out;
}

TraceGraph build_trace_graph(const SafetyModel& m) {
  TraceGraph g;
  for (const auto& h : m.hazards) g.nodes.push_back({h.id, NodeKind::Hazard, h.asil, h.description});
  for (const auto& sg : m.safety_goals) g.nodes.push_back({sg.id, NodeKind::SafetyGoal, sg.asil, sg.statement});
  g.nodes.insert(g.nodes.end(), m.trace.nodes.begin(), m.trace.nodes.end());
  for (const auto& sg : m.safety_goals)
    for (const auto& h : sg.covers) g.edges.push_back({sg.id, h, Relation::Covers});
  for (const auto& e : m.trace.edges)
    if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) g.edges.push_back(e);
  return g;
}

Asil hardware_target_asil(const SafetyModel& m) {
  Asil a = Asil::QM;
  for (const auto& g : m.safety_goals) a = std::max(a, g.asil);
  return a;
}

}  // namespace fusa

#include "iid/diagram_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iid/errors.hpp"

namespace iid {

namespace {

using nlohmann::json;

std::vector<std::string> split_context_key(const std::string& key) {
  std::vector<std::string> labels;
  std::string cur;
  for (char ch : key) {
    if (ch == ',') {
      labels.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  labels.push_back(cur);
  return labels;
}

BoundVector bounds_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) {
    throw ParseError("lower_bounds value for " + where + " must be an array");
  }
  std::vector<double> values;
  values.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw ParseError("lower_bounds entry for " + where +
                       " must be a number");
    }
    values.push_back(v.get<double>());
  }
  return BoundVector(std::move(values));
}

}  // namespace

InfluenceDiagram diagram_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError("document must be an object with a \"nodes\" array");
  }

  // First pass: outcome spaces, so parent labels resolve regardless of
  // declaration order.
  std::vector<OutcomeSpace> spaces;
  for (const auto& jn : doc["nodes"]) {
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string()) {
      throw ParseError("every node needs a string \"id\"");
    }
    OutcomeSpace space;
    space.node_id = jn["id"].get<std::string>();
    if (!jn.contains("outcomes") || !jn["outcomes"].is_array()) {
      throw ParseError("node '" + space.node_id +
                       "' needs an \"outcomes\" array");
    }
    for (const auto& label : jn["outcomes"]) {
      if (!label.is_string()) {
        throw ParseError("node '" + space.node_id +
                         "' has a non-string outcome label");
      }
      space.outcomes.push_back(label.get<std::string>());
    }
    spaces.push_back(std::move(space));
  }

  auto space_of = [&](const NodeId& id) -> const OutcomeSpace* {
    for (const auto& s : spaces) {
      if (s.node_id == id) return &s;
    }
    return nullptr;
  };

  std::vector<Node> nodes;
  int node_index = 0;
  for (const auto& jn : doc["nodes"]) {
    Node node;
    node.space = spaces[node_index++];
    const NodeId& id = node.space.node_id;

    std::vector<NodeId> parents;
    if (jn.contains("parents")) {
      if (!jn["parents"].is_array()) {
        throw ParseError("node '" + id + "' has a non-array \"parents\"");
      }
      for (const auto& p : jn["parents"]) {
        if (!p.is_string()) {
          throw ParseError("node '" + id + "' has a non-string parent");
        }
        parents.push_back(p.get<std::string>());
      }
    }

    // Unknown parents get cardinality 0; validation reports them while the
    // rest of the table still loads.
    std::vector<int> cards;
    bool parents_resolved = true;
    for (const auto& p : parents) {
      const OutcomeSpace* ps = space_of(p);
      cards.push_back(ps ? ps->size() : 0);
      if (!ps) parents_resolved = false;
    }
    int contexts = 1;
    for (int c : cards) contexts *= c;

    std::vector<BoundVector> entries(std::max(contexts, 0));
    std::vector<std::string> unmatched;

    if (!jn.contains("lower_bounds") || !jn["lower_bounds"].is_object()) {
      throw ParseError("node '" + id + "' needs a \"lower_bounds\" object");
    }
    for (const auto& [key, value] : jn["lower_bounds"].items()) {
      BoundVector bv =
          bounds_from_json(value, "node '" + id + "' context '" + key + "'");
      if (!parents_resolved) {
        unmatched.push_back(key);
        continue;
      }
      const auto labels =
          parents.empty() && key.empty() ? std::vector<std::string>{}
                                         : split_context_key(key);
      if (labels.size() != parents.size()) {
        unmatched.push_back(key);
        continue;
      }
      int flat = 0;
      bool matched = true;
      for (std::size_t i = 0; i < parents.size(); ++i) {
        const auto idx = space_of(parents[i])->index_of(labels[i]);
        if (!idx) {
          matched = false;
          break;
        }
        flat = flat * cards[i] + *idx;
      }
      if (!matched) {
        unmatched.push_back(key);
        continue;
      }
      entries[flat] = std::move(bv);
    }

    LowerBoundTable table(id, parents, cards, std::move(entries));
    for (auto& k : unmatched) table.add_unmatched_context_key(std::move(k));
    node.table = std::move(table);
    nodes.push_back(std::move(node));
  }
  return InfluenceDiagram(std::move(nodes));
}

InfluenceDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read '" + path + "'");
  return diagram_from_json(buf.str());
}

std::string diagram_to_json(const InfluenceDiagram& d) {
  json doc;
  doc["nodes"] = json::array();
  for (const Node& n : d.nodes()) {
    json jn;
    jn["id"] = n.id();
    jn["outcomes"] = n.space.outcomes;
    jn["parents"] = n.table.parents();
    json bounds = json::object();
    const int contexts = n.table.context_count();
    for (int c = 0; c < contexts; ++c) {
      const auto cfg = n.table.config_at(c);
      std::string key;
      for (std::size_t i = 0; i < cfg.assignments.size(); ++i) {
        if (i) key += ",";
        const Node& parent = d.node(n.table.parents()[i]);
        key += parent.space.outcomes[cfg.assignments[i]];
      }
      bounds[key] = n.table.at_index(c).values();
    }
    jn["lower_bounds"] = std::move(bounds);
    doc["nodes"].push_back(std::move(jn));
  }
  return doc.dump(2);
}

}  // namespace iid

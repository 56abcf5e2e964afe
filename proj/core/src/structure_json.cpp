#include <json.hpp>

#include "odfkit/structures.hpp"

namespace odfkit {

using nlohmann::json;

namespace {

json labelsToJson(const std::vector<LabelSet>& ps) {
  json arr = json::array();
  for (auto& ls : ps) {
    json pos = json::array();
    for (auto& p : ls) pos.push_back(p);
    arr.push_back(pos);
  }
  return arr;
}

std::vector<LabelSet> labelsFromJson(const json& arr) {
  std::vector<LabelSet> out;
  for (auto& pos : arr) {
    LabelSet ls;
    for (auto& p : pos) ls.insert(p.get<std::string>());
    out.push_back(std::move(ls));
  }
  return out;
}

json treeToJson(const TreeModel& t, int idx, const Structure& flat) {
  json node;
  json labels = json::array();
  for (auto& p : t.labels[idx]) labels.push_back(p);
  node["labels"] = labels;
  json kids = json::array();
  for (size_t j = 0; j < t.size(); ++j)
    if (flat.parent[j] == idx) kids.push_back(treeToJson(t, (int)j, flat));
  node["children"] = kids;
  return node;
}

void treeFromJson(const json& node, const NodeAddr& at, TreeModel& t) {
  t.nodes.push_back(at);
  LabelSet ls;
  if (node.contains("labels"))
    for (auto& p : node["labels"]) ls.insert(p.get<std::string>());
  t.labels.push_back(std::move(ls));
  if (node.contains("children")) {
    int i = 0;
    for (auto& c : node["children"]) {
      NodeAddr child = at;
      child.push_back(i++);
      treeFromJson(c, child, t);
    }
  }
}

}  // namespace

std::string serializeWord(const WordModel& w) {
  json j;
  j["kind"] = "word";
  j["positions"] = labelsToJson(w.positions);
  return j.dump();
}

std::string serializeLasso(const LassoWord& w) {
  json j;
  j["kind"] = "omega";
  j["prefix"] = labelsToJson(w.prefix);
  j["period"] = labelsToJson(w.period);
  return j.dump();
}

std::string serializeDataWord(const DataWordModel& w) {
  json j;
  j["kind"] = "dataword";
  j["positions"] = labelsToJson(w.word.positions);
  j["classes"] = w.classes;
  return j.dump();
}

std::string serializeTwoOrder(const TwoOrderWord& w) {
  json j;
  j["kind"] = "twoorder";
  j["positions"] = labelsToJson(w.word.positions);
  j["perm"] = w.perm;
  return j.dump();
}

std::string serializeTree(const TreeModel& t) {
  json j;
  j["kind"] = "tree";
  Structure flat = flatten(t);
  j["root"] = treeToJson(t, 0, flat);
  return j.dump();
}

std::string serializeStructure(const AnyStructure& s) {
  switch (s.cls) {
    case StructureClass::word: return serializeWord(s.word);
    case StructureClass::omega: return serializeLasso(s.lasso);
    case StructureClass::dataword: return serializeDataWord(s.dataword);
    case StructureClass::twoorder: return serializeTwoOrder(s.twoorder);
    case StructureClass::tree: return serializeTree(s.tree);
  }
  throw std::runtime_error("bad structure class");
}

AnyStructure deserializeStructure(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("kind")) throw std::runtime_error("missing structure kind");
  std::string kind = j["kind"];
  AnyStructure s{};
  if (kind == "word") {
    s.cls = StructureClass::word;
    s.word.positions = labelsFromJson(j.at("positions"));
    if (s.word.positions.empty()) throw std::runtime_error("empty word");
  } else if (kind == "omega") {
    s.cls = StructureClass::omega;
    s.lasso.prefix = labelsFromJson(j.at("prefix"));
    s.lasso.period = labelsFromJson(j.at("period"));
    if (s.lasso.period.empty()) throw std::runtime_error("empty period");
  } else if (kind == "dataword") {
    s.cls = StructureClass::dataword;
    s.dataword.word.positions = labelsFromJson(j.at("positions"));
    s.dataword.classes = j.at("classes").get<std::vector<int>>();
    if (s.dataword.classes.size() != s.dataword.word.positions.size())
      throw std::runtime_error("classes must cover every position");
  } else if (kind == "twoorder") {
    s.cls = StructureClass::twoorder;
    s.twoorder.word.positions = labelsFromJson(j.at("positions"));
    s.twoorder.perm = j.at("perm").get<std::vector<int>>();
    size_t n = s.twoorder.word.positions.size();
    std::vector<bool> seen(n, false);
    if (s.twoorder.perm.size() != n)
      throw std::runtime_error("perm must cover every position");
    for (int p : s.twoorder.perm) {
      if (p < 0 || (size_t)p >= n || seen[p])
        throw std::runtime_error("perm is not a permutation");
      seen[p] = true;
    }
  } else if (kind == "tree") {
    s.cls = StructureClass::tree;
    treeFromJson(j.at("root"), {}, s.tree);
    if (!s.tree.valid()) throw std::runtime_error("malformed tree");
  } else {
    throw std::runtime_error("unknown structure kind: " + kind);
  }
  return s;
}

}  // namespace odfkit

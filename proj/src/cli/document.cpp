#include "symdyn/document.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, where + ": " + what);
}

void only_keys(const json& object, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) invalid(where, "must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) invalid(where, "unknown field '" + key + "'");
  }
}

std::string as_string(const json& value, const std::string& where) {
  if (!value.is_string()) invalid(where, "must be a string");
  return value.get<std::string>();
}

std::size_t as_count(const json& value, const std::string& where) {
  if (!value.is_number_unsigned()) invalid(where, "must be a nonnegative integer");
  return value.get<std::size_t>();
}

std::vector<std::string> as_strings(const json& value, const std::string& where) {
  if (!value.is_array()) invalid(where, "must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as_string(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Sft parse_sft(const json& node) {
  only_keys(node, "sft", {"symbols", "transitions"});
  if (!node.contains("symbols")) invalid("sft", "missing field 'symbols'");
  if (!node.contains("transitions")) invalid("sft", "missing field 'transitions'");
  TransitionGraph g;
  g.names = as_strings(node["symbols"], "sft.symbols");
  if (g.names.empty()) invalid("sft.symbols", "symbol set must be nonempty");
  std::set<std::string> seen;
  for (const auto& n : g.names) {
    if (n.empty()) invalid("sft.symbols", "symbol identifiers must be nonempty");
    if (!seen.insert(n).second) invalid("sft.symbols", "symbol identifiers must be unique ('" + n + "' repeats)");
  }
  const auto index_of = [&](const std::string& name, const std::string& where) {
    const auto it = std::find(g.names.begin(), g.names.end(), name);
    if (it == g.names.end()) invalid(where, "transition references unknown symbol '" + name + "'");
    return static_cast<Symbol>(it - g.names.begin());
  };
  const json& transitions = node["transitions"];
  if (!transitions.is_array()) invalid("sft.transitions", "must be an array of [from, to] pairs");
  std::set<std::pair<Symbol, Symbol>> edges;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string where = "sft.transitions[" + std::to_string(i) + "]";
    const json& t = transitions[i];
    if (!t.is_array() || t.size() != 2) invalid(where, "must be a [from, to] pair");
    const auto edge = std::make_pair(index_of(as_string(t[0], where), where), index_of(as_string(t[1], where), where));
    if (!edges.insert(edge).second) invalid(where, "duplicate transition");
  }
  g.edges.assign(edges.begin(), edges.end());
  Adjacency adj(g.names.size());
  for (const auto& [a, b] : g.edges) adj[a].push_back(b);
  const auto alive = essential_mask(adj);
  for (std::size_t v = 0; v < alive.size(); ++v) {
    if (!alive[v]) invalid("sft", "shift must be essential; symbol '" + g.names[v] + "' lies on no bi-infinite path");
  }
  return Sft::from_graph(g);
}

BlockCode parse_code(const json& node, const Sft& sft) {
  only_keys(node, "code", {"map"});
  if (!node.contains("map")) invalid("code", "missing field 'map'");
  const json& map = node["map"];
  if (!map.is_object()) invalid("code.map", "must be an object from domain symbols to image symbols");
  for (const auto& [key, value] : map.items()) {
    if (!sft.find(key)) invalid("code.map", "unknown domain symbol '" + key + "'");
  }
  std::vector<std::string> labels;
  for (const auto& name : sft.names()) {
    if (!map.contains(name)) invalid("code.map", "symbol map must be total; '" + name + "' has no image");
    labels.push_back(as_string(map[name], "code.map." + name));
    if (labels.back().empty()) invalid("code.map." + name, "image symbol must be nonempty");
  }
  return BlockCode::from_label_names(sft, labels);
}

MeasureSpec parse_measure(const json& node) {
  only_keys(node, "measure", {"bernoulli", "periodic"});
  if (node.size() != 1) invalid("measure", "give exactly one of 'bernoulli' or 'periodic'");
  MeasureSpec spec;
  if (node.contains("bernoulli")) {
    std::vector<Rational> probs;
    const auto entries = as_strings(node["bernoulli"], "measure.bernoulli");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      try {
        probs.push_back(parse_rational(entries[i]));
      } catch (const Error& e) {
        invalid("measure.bernoulli[" + std::to_string(i) + "]", e.what());
      }
    }
    try {
      BernoulliMeasure check(probs);
    } catch (const Error& e) {
      invalid("measure.bernoulli", e.what());
    }
    spec.bernoulli = std::move(probs);
  } else {
    spec.periodic = as_string(node["periodic"], "measure.periodic");
    if (spec.periodic->empty()) invalid("measure.periodic", "cycle word must be nonempty");
  }
  return spec;
}

QueryDefaults parse_query(const json& node) {
  only_keys(node, "query", {"y", "cap", "order", "reps", "window", "samples", "seed", "kind", "words"});
  QueryDefaults q;
  if (node.contains("y")) q.y = as_string(node["y"], "query.y");
  if (node.contains("cap")) q.cap = as_count(node["cap"], "query.cap");
  if (node.contains("order")) {
    if (!node["order"].is_array()) invalid("query.order", "must be an array of indices");
    std::vector<std::size_t> order;
    for (const auto& v : node["order"]) order.push_back(as_count(v, "query.order"));
    q.order = std::move(order);
  }
  if (node.contains("reps")) q.reps = as_strings(node["reps"], "query.reps");
  if (node.contains("window")) q.window = as_count(node["window"], "query.window");
  if (node.contains("samples")) q.samples = as_count(node["samples"], "query.samples");
  if (node.contains("seed")) q.seed = as_count(node["seed"], "query.seed");
  if (node.contains("kind")) q.kind = as_string(node["kind"], "query.kind");
  if (node.contains("words")) q.words = as_strings(node["words"], "query.words");
  return q;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ProblemDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string detail = e.what();
    const auto cut = detail.find("parse error");
    if (cut != std::string::npos) detail = detail.substr(cut);
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail);
  }
  only_keys(root, "document", {"version", "sft", "code", "family", "N", "measure", "potential", "query"});
  if (!root.contains("version")) invalid("document", "missing mandatory field 'version'");
  if (!root["version"].is_number_integer() || root["version"].get<long long>() != ProblemDocument::current_version) {
    invalid("version", "unsupported version (expected " + std::to_string(ProblemDocument::current_version) + ")");
  }

  const bool explicit_form = root.contains("sft") || root.contains("code");
  const bool alias_form = root.contains("family") || root.contains("N");
  if (explicit_form == alias_form) invalid("document", "give either 'sft' and 'code' or the 'family'/'N' alias");

  std::optional<BlockCode> code;
  std::optional<std::string> family;
  if (alias_form) {
    if (!root.contains("family") || !root.contains("N")) invalid("document", "alias needs both 'family' and 'N'");
    family = as_string(root["family"], "family");
    const std::size_t n = as_count(root["N"], "N");
    if (n < 2) invalid("N", "group codes need N >= 2");
    if (*family == "difference") {
      code = difference_code(n);
    } else if (*family == "sum") {
      code = sum_code(n);
    } else {
      invalid("family", "expected 'difference' or 'sum'");
    }
  } else {
    if (!root.contains("sft")) invalid("document", "missing field 'sft'");
    if (!root.contains("code")) invalid("document", "missing field 'code'");
    code = parse_code(root["code"], parse_sft(root["sft"]));
  }

  ProblemDocument doc{*std::move(code), family, std::nullopt, std::nullopt, {}};
  if (root.contains("measure")) doc.measure = parse_measure(root["measure"]);
  if (root.contains("potential")) {
    const json& node = root["potential"];
    if (!node.is_object()) invalid("potential", "must be an object from domain symbols to numbers");
    std::map<std::string, double> weights;
    for (const auto& [key, value] : node.items()) {
      if (!doc.code.domain().find(key)) invalid("potential", "unknown domain symbol '" + key + "'");
      if (!value.is_number()) invalid("potential." + key, "must be a number");
      weights[key] = value.get<double>();
    }
    for (const auto& name : doc.code.domain().names()) {
      if (!weights.count(name)) invalid("potential", "potential must be total; '" + name + "' has no weight");
    }
    doc.potential = std::move(weights);
  }
  if (root.contains("query")) doc.query = parse_query(root["query"]);
  return doc;
}

std::string emit_document(const ProblemDocument& document) {
  const Sft& x = document.code.domain();
  ordered_json root;
  root["version"] = ProblemDocument::current_version;
  ordered_json sft;
  sft["symbols"] = x.names();
  ordered_json transitions = ordered_json::array();
  for (const auto& [a, b] : x.edges()) transitions.push_back({x.name(a), x.name(b)});
  sft["transitions"] = std::move(transitions);
  root["sft"] = std::move(sft);
  ordered_json map = ordered_json::object();
  for (Symbol a = 0; a < x.size(); ++a) map[x.name(a)] = document.code.image_name(document.code.label(a));
  root["code"]["map"] = std::move(map);
  if (document.measure) {
    ordered_json measure = ordered_json::object();
    if (document.measure->bernoulli) {
      ordered_json probs = ordered_json::array();
      for (const auto& p : *document.measure->bernoulli) probs.push_back(format_rational(p));
      measure["bernoulli"] = std::move(probs);
    } else {
      measure["periodic"] = *document.measure->periodic;
    }
    root["measure"] = std::move(measure);
  }
  if (document.potential) {
    ordered_json potential = ordered_json::object();
    for (const auto& name : x.names()) potential[name] = document.potential->at(name);
    root["potential"] = std::move(potential);
  }
  if (!document.query.empty()) {
    const QueryDefaults& q = document.query;
    ordered_json query = ordered_json::object();
    if (q.y) query["y"] = *q.y;
    if (q.cap) query["cap"] = *q.cap;
    if (q.order) query["order"] = *q.order;
    if (q.reps) query["reps"] = *q.reps;
    if (q.window) query["window"] = *q.window;
    if (q.samples) query["samples"] = *q.samples;
    if (q.seed) query["seed"] = *q.seed;
    if (q.kind) query["kind"] = *q.kind;
    if (q.words) query["words"] = *q.words;
    root["query"] = std::move(query);
  }
  return root.dump(2) + "\n";
}

}  // namespace symdyn

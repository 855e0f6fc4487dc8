#include "symdyn/commands.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "symdyn/class_lab.hpp"
#include "symdyn/error.hpp"
#include "symdyn/estimator.hpp"
#include "symdyn/group_codes.hpp"
#include "symdyn/periodic_fiber.hpp"

namespace symdyn {

namespace {

using nlohmann::ordered_json;

const ProblemDocument& need_document(const ProblemDocument* document, const std::string& command) {
  if (!document) throw Error(ErrorKind::InvalidArgument, "command '" + command + "' needs a document");
  return *document;
}

ordered_json enclosure_json(const Enclosure& e) {
  ordered_json j;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  return j;
}

ordered_json tolerant(double value, double tolerance) {
  ordered_json j;
  j["value"] = value;
  j["tolerance"] = tolerance;
  return j;
}

std::vector<std::string> symbol_names(const Sft& x, const std::vector<Symbol>& symbols) {
  std::vector<std::string> out;
  for (Symbol s : symbols) out.push_back(x.name(s));
  return out;
}

PeriodicPoint resolve_y(const ProblemDocument& doc, const CommandOptions& options) {
  std::optional<std::string> text = options.y;
  if (!text) text = doc.query.y;
  if (!text && doc.measure && doc.measure->periodic) text = doc.measure->periodic;
  if (!text) throw Error(ErrorKind::InvalidArgument, "an image cycle is required (--y)");
  return image_point(doc.code, doc.code.parse_image_word(*text));
}

ordered_json y_json(const BlockCode& code, const PeriodicPoint& y) {
  ordered_json j;
  j["cycle"] = code.format_image_word(y.word());
  j["period"] = y.period();
  return j;
}

ordered_json joining_json(const BlockCode& code, const TupleOrbitJoining& joining) {
  const Sft& x = code.domain();
  ordered_json j;
  j["arity"] = joining.arity();
  j["period"] = joining.period();
  ordered_json rows = ordered_json::array();
  for (const auto& row : joining.rows()) rows.push_back(symbol_names(x, row));
  j["rows"] = std::move(rows);
  ordered_json margins = ordered_json::array();
  for (const auto& m : joining.margins()) margins.push_back(x.format_word(m.word()));
  j["margins"] = std::move(margins);
  return j;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorKind::InvalidArgument, "expected a comma-separated list of indices");
    }
    out.push_back(std::stoul(token));
  }
  return out;
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) out.push_back(parse_rational(token));
  return out;
}

std::vector<std::size_t> parse_residues(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  if (text.find(',') != std::string::npos || n > 10) {
    for (std::size_t v : parse_indices(text)) out.push_back(v);
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorKind::InvalidArgument, "expected residues");
      out.push_back(static_cast<std::size_t>(c - '0'));
    }
  }
  for (std::size_t v : out) {
    if (v >= n) throw Error(ErrorKind::InvalidArgument, "residue out of range");
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty residue word");
  return out;
}

std::string format_residues(const std::vector<std::size_t>& word, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (n > 10 && i > 0) out += ',';
    out += std::to_string(word[i]);
  }
  return out;
}

LocallyConstantPotential resolve_potential(const ProblemDocument& doc, const CommandOptions& options,
                                           bool& supplied) {
  const Sft& x = doc.code.domain();
  std::vector<double> weights(x.size(), 0.0);
  supplied = false;
  if (options.potential) {
    supplied = true;
    std::vector<bool> seen(x.size(), false);
    std::istringstream in(*options.potential);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "potential entries look like sym=weight");
      const auto s = x.find(item.substr(0, eq));
      if (!s) throw Error(ErrorKind::InvalidArgument, "unknown symbol '" + item.substr(0, eq) + "' in potential");
      try {
        weights[*s] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "potential weight is not a number");
      }
      seen[*s] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorKind::InvalidArgument, "potential must give a weight to every domain symbol");
    }
  } else if (doc.potential) {
    supplied = true;
    for (Symbol a = 0; a < x.size(); ++a) weights[a] = doc.potential->at(x.name(a));
  }
  return LocallyConstantPotential::on_symbols(std::move(weights));
}

std::string resolve_family(const ProblemDocument* doc, const CommandOptions& options) {
  std::string family = options.family ? *options.family : (doc && doc->family ? *doc->family : "difference");
  if (family != "difference" && family != "sum") {
    throw Error(ErrorKind::InvalidArgument, "family must be 'difference' or 'sum'");
  }
  return family;
}

std::optional<BernoulliMeasure> resolve_bernoulli(const ProblemDocument* doc, const CommandOptions& options) {
  if (options.vector) return BernoulliMeasure(parse_vector(*options.vector));
  if (doc && doc->measure && doc->measure->bernoulli) return BernoulliMeasure(*doc->measure->bernoulli);
  return std::nullopt;
}

ordered_json vector_json(const BernoulliMeasure& mu) {
  ordered_json j = ordered_json::array();
  for (const auto& p : mu.probabilities()) j.push_back(format_rational(p));
  return j;
}

ordered_json cmd_degree(const ProblemDocument& doc, const CommandOptions& options) {
  const std::size_t cap = options.cap ? *options.cap : (doc.query.cap ? *doc.query.cap : default_length_cap(doc.code));
  const DegreeCertificate cert = degree(doc.code, cap);
  ordered_json r;
  r["degree"] = cert.degree;
  r["witness"] = doc.code.format_image_word(cert.witness);
  r["coordinate"] = cert.coordinate;
  r["symbols"] = symbol_names(doc.code.domain(), cert.symbols);
  r["length_cap"] = cert.length_cap;
  r["converged"] = cert.converged;
  return r;
}

ordered_json cmd_finite_to_one(const ProblemDocument& doc) {
  const bool finite = is_finite_to_one(doc.code);
  const Enclosure hx = entropy(doc.code.domain());
  const Enclosure hy = image_entropy(doc.code);
  ordered_json r;
  r["finite_to_one"] = finite;
  r["domain_entropy"] = enclosure_json(hx);
  r["image_entropy"] = enclosure_json(hy);
  r["entropy_consistent"] = finite ? hx.overlaps(hy, 1e-9) : hx.lower > hy.upper;
  return r;
}

ordered_json cmd_fiber(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  try {
    const auto points = fiber_points(doc.code, y);
    r["finite"] = true;
    r["size"] = points.size();
    ordered_json list = ordered_json::array();
    for (const auto& x : points) {
      ordered_json p;
      p["word"] = doc.code.domain().format_word(x.word());
      p["period"] = x.period();
      list.push_back(std::move(p));
    }
    r["points"] = std::move(list);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InfiniteFiber) throw;
    r["finite"] = false;
    r["fiber_graph_nodes"] = FiberGraph::build(doc.code, y).nodes().size();
  }
  return r;
}

ordered_json cmd_lifts(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  const std::size_t d = degree_at(doc.code, y);
  const auto lifts = ergodic_lifts(doc.code, y);
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  r["degree_at"] = d;
  ordered_json list = ordered_json::array();
  std::size_t msum = 0, qsum = 0;
  for (const auto& l : lifts) {
    ordered_json e;
    e["orbit"] = doc.code.domain().format_word(l.measure.word());
    e["period"] = l.measure.period();
    e["multiplicity"] = l.multiplicity;
    msum += l.multiplicity;
    qsum += l.measure.period();
    list.push_back(std::move(e));
  }
  r["lifts"] = std::move(list);
  r["multiplicity_sum"] = msum;
  r["sum_equals_degree"] = msum == d;
  r["period_sum"] = qsum;
  r["period_sum_equals_degree_times_period"] = qsum == d * y.period();
  return r;
}

ordered_json cmd_canonical_lift(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  const RationalMixture mix = canonical_lift(doc.code, y);
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  ordered_json list = ordered_json::array();
  Rational total = 0;
  for (const auto& [w, orbit] : mix.components) {
    ordered_json e;
    e["weight"] = format_rational(w);
    e["orbit"] = doc.code.domain().format_word(orbit.word());
    total += w;
    list.push_back(std::move(e));
  }
  r["components"] = std::move(list);
  r["weight_sum"] = format_rational(total);
  return r;
}

ordered_json cmd_joining(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  const auto fiber = fiber_points(doc.code, y);
  std::vector<std::size_t> order(fiber.size());
  std::iota(order.begin(), order.end(), 0);
  if (options.order) {
    order = *options.order;
  } else if (doc.query.order) {
    order = *doc.query.order;
  }
  const TupleOrbitJoining joining = degree_joining(doc.code, y, order);
  std::map<OrbitMeasure, std::size_t> counts;
  for (const auto& m : joining.margins()) ++counts[m];
  bool margins_match = true;
  for (const auto& l : ergodic_lifts(doc.code, y)) margins_match = margins_match && counts[l.measure] == l.multiplicity;
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  r["order"] = order;
  r["joining"] = joining_json(doc.code, joining);
  r["separating"] = joining.is_separating();
  r["relative"] = joining.is_relative(doc.code);
  r["margins_match_multiplicities"] = margins_match;
  return r;
}

ordered_json cmd_classes(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  const ClassPartition part = class_partition(doc.code, y);
  const Sft& x = doc.code.domain();
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  r["class_degree"] = part.count();
  ordered_json comps = ordered_json::array();
  for (const auto& c : part.components()) {
    ordered_json e;
    e["nodes"] = c.nodes.size();
    e["cyclic_period"] = c.cyclic_period;
    comps.push_back(std::move(e));
  }
  r["components"] = std::move(comps);
  ordered_json classes = ordered_json::array();
  for (const auto& c : part.classes()) {
    ordered_json e;
    e["component"] = c.component;
    e["residue"] = c.residue;
    e["origin_symbols"] = symbol_names(x, c.origin_symbols);
    classes.push_back(std::move(e));
  }
  r["classes"] = std::move(classes);
  ordered_json mults = ordered_json::array();
  std::size_t total = 0;
  for (const auto& m : class_multiplicities(doc.code, y)) {
    ordered_json e;
    e["component"] = m.component;
    e["lift"] = x.format_word(m.lift.word());
    e["classes"] = m.classes;
    e["multiplicity"] = m.multiplicity;
    total += m.multiplicity;
    mults.push_back(std::move(e));
  }
  r["class_multiplicities"] = std::move(mults);
  r["multiplicity_sum"] = total;
  r["sum_equals_class_degree"] = total == part.count();
  return r;
}

ordered_json cmd_class_joining(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  std::vector<PhasedPoint> reps;
  const auto& given = options.reps ? options.reps : doc.query.reps;
  if (given) {
    for (const auto& w : *given) reps.push_back(PhasedPoint::from_cycle(doc.code.domain(), doc.code.domain().parse_word(w)));
  } else {
    reps = default_class_representatives(doc.code, y);
  }
  const TupleOrbitJoining joining = class_degree_joining(doc.code, y, reps);
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  ordered_json list = ordered_json::array();
  for (const auto& p : reps) list.push_back(doc.code.domain().format_word(p.word()));
  r["representatives"] = std::move(list);
  r["joining"] = joining_json(doc.code, joining);
  r["relative"] = joining.is_relative(doc.code);
  r["no_bitransition"] = verify_no_bitransition_tuple(doc.code, reps);
  return r;
}

ordered_json cmd_class_max(const ProblemDocument& doc, const CommandOptions& options) {
  const PeriodicPoint y = resolve_y(doc, options);
  bool supplied = false;
  const LocallyConstantPotential f = resolve_potential(doc, options, supplied);
  const ClassMaximalReport report = class_maximal(doc.code, y, f);
  const ClassPartition part = class_partition(doc.code, y);
  const auto& g = part.graph();
  ordered_json r;
  r["y"] = y_json(doc.code, y);
  r["potential_supplied"] = supplied;
  ordered_json entries = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json j;
    j["component"] = e.component;
    j["classes"] = e.classes;
    j["pressure"] = enclosure_json(e.pressure);
    j["entropy"] = enclosure_json(e.entropy);
    j["integral"] = tolerant(e.integral, 1e-12);
    ordered_json nodes = ordered_json::array();
    const auto& members = part.components()[e.component].nodes;
    for (std::size_t i = 0; i < members.size(); ++i) {
      ordered_json n;
      n["phase"] = g.nodes()[members[i]].phase;
      n["symbol"] = doc.code.domain().name(g.nodes()[members[i]].symbol);
      n["stationary"] = tolerant(e.stationary[i], 1e-12);
      nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    entries.push_back(std::move(j));
  }
  r["entries"] = std::move(entries);
  r["maximizers"] = report.maximizers;
  r["maximizers_at_most_class_degree"] = report.maximizers.size() <= part.count();
  return r;
}

ordered_json cmd_closed_form(const ProblemDocument* doc, const CommandOptions& options) {
  const std::string family = resolve_family(doc, options);
  const auto mu = resolve_bernoulli(doc, options);
  ordered_json r;
  r["family"] = family;
  if (family == "difference") {
    if (!mu) throw Error(ErrorKind::InvalidArgument, "closed-form needs a probability vector (--vector)");
    const ClosedForm form = multiplicity_closed_form(*mu);
    const std::size_t n = mu->size();
    r["N"] = n;
    r["vector"] = vector_json(*mu);
    r["least_period"] = form.least_period;
    r["multiplicity"] = form.multiplicity;
    r["lift_count"] = form.lifts.size();
    ordered_json lifts = ordered_json::array();
    for (const auto& l : form.lifts) lifts.push_back(vector_json(l));
    r["lifts"] = std::move(lifts);
    r["product_equals_N"] = form.lifts.size() * form.multiplicity == n;
    r["lift_count_divides_N"] = n % form.lifts.size() == 0;
    r["two_point_factor"] = has_two_point_factor(*mu);
    return r;
  }
  const std::size_t window = options.window ? *options.window : (doc && doc->query.window ? *doc->query.window : 6);
  SumCodeLifts lifts;
  if (mu) {
    r["N"] = mu->size();
    r["vector"] = vector_json(*mu);
    lifts = sum_code_lifts(*mu, window);
  } else if (doc && doc->measure && doc->measure->periodic) {
    const std::size_t n = doc->code.image_size();
    const auto cycle = parse_residues(*doc->measure->periodic, n);
    r["N"] = n;
    r["periodic"] = format_residues(cycle, n);
    lifts = sum_code_lifts(n, cycle, window);
  } else {
    throw Error(ErrorKind::InvalidArgument, "closed-form needs a probability vector (--vector) or periodic measure");
  }
  r["window"] = lifts.window;
  ordered_json list = ordered_json::array();
  std::size_t total = 0;
  for (std::size_t i = 0; i < lifts.lifts.size(); ++i) {
    ordered_json e;
    e["margins"] = lifts.lifts[i].margins;
    e["multiplicity"] = lifts.multiplicities[i];
    total += lifts.multiplicities[i];
    list.push_back(std::move(e));
  }
  r["lifts"] = std::move(list);
  r["multiplicity_sum"] = total;
  return r;
}

ordered_json cmd_estimate(const ProblemDocument* doc, const CommandOptions& options) {
  const std::string family = resolve_family(doc, options);
  const auto mu = resolve_bernoulli(doc, options);
  if (!mu) throw Error(ErrorKind::InvalidArgument, "estimate needs a probability vector (--vector)");
  const QueryDefaults none;
  const QueryDefaults& q = doc ? doc->query : none;
  EstimatorConfig config;
  config.family = family == "difference" ? CodeFamily::Difference : CodeFamily::Sum;
  config.window = options.window ? *options.window : q.window.value_or(10);
  config.samples = options.samples ? *options.samples : q.samples.value_or(100000);
  config.seed = options.seed ? *options.seed : q.seed.value_or(1);
  config.threads = options.threads;
  const std::string kind = options.kind ? *options.kind : q.kind.value_or("diagonal");

  ordered_json r;
  r["family"] = family;
  r["vector"] = vector_json(*mu);
  r["kind"] = kind;
  r["window"] = config.window;
  r["samples"] = config.samples;
  r["seed"] = config.seed;
  if (kind == "diagonal") {
    const EstimateReport est = estimate_diagonal_mass(*mu, config);
    ordered_json e;
    e["value"] = est.estimate;
    e["standard_error"] = est.standard_error;
    r["estimate"] = std::move(e);
    r["implied_multiplicity"] = est.implied_multiplicity;
    if (config.family == CodeFamily::Difference) {
      r["closed_form_multiplicity"] = multiplicity_closed_form(*mu).multiplicity;
    } else {
      r["closed_form_multiplicity"] = sum_code_lifts(*mu, 3).multiplicities.front();
    }
    return r;
  }
  if (kind != "genericity") throw Error(ErrorKind::InvalidArgument, "kind must be 'diagonal' or 'genericity'");
  const auto& word_text = options.words ? options.words : q.words;
  if (!word_text || word_text->empty()) throw Error(ErrorKind::InvalidArgument, "genericity needs --words");
  std::vector<std::vector<std::size_t>> words;
  for (const auto& w : *word_text) words.push_back(parse_residues(w, mu->size()));
  const GenericityReport report = empirical_genericity(*mu, config, words);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json e;
    e["companion"] = row.companion;
    e["word"] = format_residues(row.word, mu->size());
    e["exact"] = format_rational(row.exact);
    e["mean_frequency"] = row.mean_frequency;
    e["mean_abs_deviation"] = row.mean_abs_deviation;
    e["max_abs_deviation"] = row.max_abs_deviation;
    rows.push_back(std::move(e));
  }
  r["rows"] = std::move(rows);
  r["max_deviation"] = report.max_deviation;
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"degree",  "finite-to-one", "fiber",     "lifts",
                                                 "canonical-lift", "joining", "classes", "class-joining",
                                                 "class-max", "closed-form", "estimate"};
  return names;
}

nlohmann::ordered_json run_command(const std::string& command, const ProblemDocument* document,
                                   const CommandOptions& options) {
  ordered_json body;
  if (command == "degree") {
    body = cmd_degree(need_document(document, command), options);
  } else if (command == "finite-to-one") {
    body = cmd_finite_to_one(need_document(document, command));
  } else if (command == "fiber") {
    body = cmd_fiber(need_document(document, command), options);
  } else if (command == "lifts") {
    body = cmd_lifts(need_document(document, command), options);
  } else if (command == "canonical-lift") {
    body = cmd_canonical_lift(need_document(document, command), options);
  } else if (command == "joining") {
    body = cmd_joining(need_document(document, command), options);
  } else if (command == "classes") {
    body = cmd_classes(need_document(document, command), options);
  } else if (command == "class-joining") {
    body = cmd_class_joining(need_document(document, command), options);
  } else if (command == "class-max") {
    body = cmd_class_max(need_document(document, command), options);
  } else if (command == "closed-form") {
    body = cmd_closed_form(document, options);
  } else if (command == "estimate") {
    body = cmd_estimate(document, options);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
  }
  ordered_json report;
  report["command"] = command;
  for (auto& [key, value] : body.items()) report[key] = value;
  return report;
}

std::string render_text(const nlohmann::ordered_json& report) {
  std::string out;
  for (const auto& [key, value] : report.items()) {
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return out;
}

nlohmann::ordered_json error_object(const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j;
}

}  // namespace symdyn

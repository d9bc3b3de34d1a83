#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "klc/cactus.hpp"
#include "klc/errors.hpp"

namespace klc::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string command;
  std::string action;  // cactus verify|act|orbits
  std::string type;
  std::string matrix;
  std::string weights;
  std::string parabolic;
  std::string side;
  std::string out;
  std::string word;
  std::string element;
  std::string check;
  std::string format = "json";
  std::size_t jobs = 1;
  std::optional<std::size_t> max_length;
  bool allow_large = false;
};

// Named types available without --allow-large.
bool in_catalog(const std::string& name) {
  static const std::set<std::string> kCatalog{"A1", "A2", "A3", "A4", "B2", "B3", "B4",
                                              "C2", "C3", "C4", "D4", "G2", "H3"};
  return kCatalog.count(name) > 0 || name.rfind("I2(", 0) == 0;
}
constexpr std::uint64_t kLargestCatalogOrder = 384;

// --config: a JSON object whose keys mirror the flags. Flags given on the
// command line win.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!config.is_object()) throw UsageError("config file must hold a JSON object");

  static const std::set<std::string> kFlags{"type",  "matrix",  "weights", "parabolic", "side",       "out",
                                            "jobs",  "word",    "element", "check",     "max-length", "format"};
  std::vector<std::string> flags;
  std::vector<std::string> commands;
  for (const auto& [key, value] : config.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "command" || name == "action") continue;
    if (name == "allow-large") {
      if (!value.is_boolean()) throw UsageError("config key 'allow_large' must be a boolean");
      if (value.get<bool>()) flags.push_back("--allow-large");
      continue;
    }
    if (!kFlags.count(name)) throw UsageError("unknown config key '" + key + "'");
    flags.push_back("--" + name);
    if (value.is_string()) {
      flags.push_back(value.get<std::string>());
    } else if (value.is_number_integer()) {
      flags.push_back(std::to_string(value.get<long long>()));
    } else if (name == "matrix" && value.is_array()) {
      flags.push_back(value.dump());
    } else {
      throw UsageError("config key '" + key + "' has an unsupported value");
    }
  }
  const bool has_command = !rest.empty() && rest.front().rfind("-", 0) != 0;
  if (!has_command) {
    if (config.contains("command")) commands.push_back(config["command"].get<std::string>());
    if (config.contains("action")) commands.push_back(config["action"].get<std::string>());
  }
  std::vector<std::string> merged = commands;
  if (has_command) {
    // subcommand tokens first so that the flags land on the right parser
    std::size_t k = 0;
    while (k < rest.size() && rest[k].rfind("-", 0) != 0) merged.push_back(rest[k++]);
    merged.insert(merged.end(), flags.begin(), flags.end());
    merged.insert(merged.end(), rest.begin() + static_cast<std::ptrdiff_t>(k), rest.end());
  } else {
    merged.insert(merged.end(), flags.begin(), flags.end());
    merged.insert(merged.end(), rest.begin(), rest.end());
  }
  return merged;
}

CoxeterSystem parse_matrix(const std::string& text) {
  json m;
  try {
    m = json::parse(text);
  } catch (const json::parse_error&) {
    throw UsageError("--matrix must be JSON: [[1,3],[3,1]] or {\"labels\":[..],\"matrix\":[[..]]}");
  }
  std::vector<std::string> labels;
  if (m.is_object()) {
    if (!m.contains("matrix")) throw UsageError("--matrix object needs a 'matrix' entry");
    if (m.contains("labels")) labels = m["labels"].get<std::vector<std::string>>();
    m = m["matrix"];
  }
  if (!m.is_array() || m.empty()) throw UsageError("--matrix must be a nonempty square array");
  std::vector<std::vector<int>> matrix;
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != m.size()) throw UsageError("--matrix must be square");
    std::vector<int> r;
    for (const auto& e : row) {
      if (e.is_string() && (e == "inf" || e == "oo")) {
        r.push_back(kInfinite);
      } else if (e.is_number_integer()) {
        r.push_back(e.get<int>());
      } else {
        throw UsageError("--matrix entries are integers or \"inf\"");
      }
    }
    matrix.push_back(std::move(r));
  }
  if (labels.empty())
    for (std::size_t i = 1; i <= matrix.size(); ++i) labels.push_back("s" + std::to_string(i));
  if (labels.size() != matrix.size()) throw UsageError("--matrix labels do not match its size");
  return CoxeterSystem(labels, matrix, "custom");
}

CoxeterSystem load_system(const Options& o) {
  if (o.type.empty() == o.matrix.empty()) throw UsageError("give exactly one of --type and --matrix");
  CoxeterSystem system = o.type.empty() ? parse_matrix(o.matrix) : CoxeterSystem::named(o.type);
  const auto order = system.group_order();
  if (order && !o.allow_large) {
    const bool listed = o.type.empty() ? *order <= kLargestCatalogOrder : in_catalog(system.name());
    if (!listed) {
      throw UsageError(system.name() + " has " + std::to_string(*order) +
                       " elements, beyond the built-in catalog; pass --allow-large to compute anyway");
    }
  }
  return system;
}

std::shared_ptr<const CoxeterGroup> load_group(const Options& o, const CoxeterSystem& system, bool need_finite) {
  if (need_finite && !system.is_finite()) throw UsageError(system.name() + " is infinite; this command needs a finite W");
  if (system.is_finite()) return CoxeterGroup::build(system);
  if (!o.max_length) throw UsageError(system.name() + " is infinite; pass --max-length");
  return CoxeterGroup::build(system, o.max_length);
}

Side parse_side(const std::string& text) {
  if (text.empty() || text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  throw UsageError("--side must be 'left' or 'right' here");
}

GeneratorSet parse_subset(const CoxeterSystem& system, const std::string& text) {
  if (text.empty()) return system.all();
  const GeneratorSet I = system.parse_set(text);
  if (I.empty()) throw UsageError("--parabolic must name at least one generator");
  if (!system.is_finite(I)) throw UsageError("W_I is infinite for I = {" + system.render(I) + "}");
  return I;
}

json report_json(const Report& report) {
  json checks = json::array();
  for (const auto& c : report.checks()) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed()},
                      {"cases", c.cases},
                      {"failures", c.failures},
                      {"witnesses", c.witnesses}});
  }
  return {{"passed", report.passed()}, {"checks", checks}};
}

json elements_json(const CoxeterGroup& group, const std::vector<Elem>& elems) {
  json out = json::array();
  for (Elem w : elems) out.push_back(show(group, w));
  return out;
}

json system_json(const CoxeterSystem& system, const WeightFunction* weights) {
  json matrix = json::array();
  for (const auto& row : system.matrix()) {
    json r = json::array();
    for (int m : row) r.push_back(m == kInfinite ? json("inf") : json(m));
    matrix.push_back(r);
  }
  json out{{"name", system.name()}, {"labels", system.labels()}, {"matrix", matrix}};
  if (weights) {
    json w = json::object();
    for (Generator s = 0; s < system.rank(); ++s) w[system.label(s)] = (*weights)[s].to_string();
    out["weights"] = w;
  }
  return out;
}

struct Artifacts {
  // (file name, content); the first entry of the requested format is what
  // goes to stdout when no --out directory is given.
  std::vector<std::pair<std::string, std::string>> files;
  bool failed = false;

  void add_json(const std::string& name, const json& value) { files.emplace_back(name + ".json", value.dump(2) + "\n"); }
  void add(const std::string& file, std::string content) { files.emplace_back(file, std::move(content)); }
};

void emit(const Options& o, const Artifacts& a, std::ostream& out) {
  if (o.out.empty()) {
    const std::string suffix = "." + o.format;
    for (const auto& [name, content] : a.files) {
      if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        out << content;
        return;
      }
    }
    throw UsageError("this command has no " + o.format + " output");
  }
  std::filesystem::create_directories(o.out);
  for (const auto& [name, content] : a.files) {
    const auto path = std::filesystem::path(o.out) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path.string());
    file << content;
    out << path.string() << "\n";
  }
}

// --- commands ------------------------------------------------------------

Artifacts cmd_group(const Options& o) {
  const auto system = load_system(o);
  const auto group = load_group(o, system, false);
  json elements = json::array();
  for (Elem w = 0; w < group->size(); ++w) {
    elements.push_back({{"w", show(*group, w)},
                        {"length", group->length(w)},
                        {"left_descents", system.render(group->descents(w, Side::Left))},
                        {"right_descents", system.render(group->descents(w, Side::Right))},
                        {"inverse", show(*group, group->inverse(w))}});
  }
  json doc{{"system", system_json(system, nullptr)},
           {"finite", system.is_finite()},
           {"complete", group->is_complete()},
           {"size", group->size()},
           {"elements", elements}};
  if (system.is_finite()) doc["longest"] = show(*group, group->longest());
  if (o.max_length) doc["max_length"] = *o.max_length;
  Artifacts a;
  a.add_json("group", doc);
  return a;
}

Artifacts cmd_klbasis(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  const auto& g = ws.group();
  std::vector<Elem> ys;
  if (o.element.empty()) {
    for (Elem y = 0; y < g.size(); ++y) ys.push_back(y);
  } else {
    ys.push_back(g.parse(o.element));
  }
  json columns = json::array();
  for (Elem y : ys) {
    json terms = json::array();
    for (const auto& [x, p] : ws.algebra().kl_column(y)) terms.push_back({{"x", show(g, x)}, {"p", p.to_string()}});
    columns.push_back({{"y", show(g, y)}, {"terms", terms}});
  }
  Artifacts a;
  a.add_json("klbasis", {{"system", system_json(system, &ws.weights())}, {"kl", columns}});
  return a;
}

std::string dot_graph(const CoxeterGroup& g, const Preorder& p, CellKind kind) {
  std::ostringstream out;
  out << "digraph \"" << to_string(kind) << "\" {\n";
  out << "  rankdir=BT;\n";
  for (std::size_t c = 0; c < p.cell_count(); ++c) {
    std::string label;
    for (Elem w : p.members(c)) label += (label.empty() ? "" : " ") + show(g, w);
    out << "  c" << c << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [lo, hi] : p.covers()) out << "  c" << lo << " -> c" << hi << ";\n";
  out << "}\n";
  return out.str();
}

Artifacts cmd_cells(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  const auto& g = ws.group();
  std::vector<CellKind> kinds{CellKind::Left, CellKind::Right, CellKind::TwoSided};
  if (!o.side.empty()) kinds = {parse_cell_kind(o.side)};
  json doc{{"system", system_json(system, &ws.weights())}};
  Artifacts a;
  for (CellKind kind : kinds) {
    const auto& p = ws.cells().preorder(kind);
    json cells = json::array();
    for (const auto& members : p.cells()) cells.push_back(elements_json(g, members));
    json order = json::array();
    for (const auto& [lo, hi] : p.covers()) order.push_back({{"below", lo}, {"above", hi}});
    doc[to_string(kind)] = {{"cells", cells}, {"covers", order}, {"count", p.cell_count()}};
  }
  a.add_json("cells", doc);
  for (CellKind kind : {CellKind::TwoSided, CellKind::Left, CellKind::Right})
    if (std::find(kinds.begin(), kinds.end(), kind) != kinds.end())
      a.add(to_string(kind) + ".dot", dot_graph(g, ws.cells().preorder(kind), kind));
  return a;
}

Artifacts cmd_afunction(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  const auto& g = ws.group();
  const auto& afn = ws.afunction();
  std::vector<std::size_t> bad;
  const auto d = duflo_map(afn, ws.cells(), &bad);
  json rows = json::array();
  for (Elem w = 0; w < g.size(); ++w) {
    json row{{"w", show(g, w)},
             {"a", afn.a(w).to_string()},
             {"alpha", afn.alpha(w).to_string()},
             {"delta", afn.delta(w).to_string()},
             {"duflo", afn.is_duflo(w)}};
    if (d) row["d"] = show(g, (*d)[w]);
    rows.push_back(row);
  }
  json doc{{"system", system_json(system, &ws.weights())},
           {"elements", rows},
           {"duflo", elements_json(g, afn.duflo())},
           {"dmap_available", d.has_value()}};
  if (!d) doc["left_cells_without_unique_duflo"] = bad;
  Artifacts a;
  a.add_json("afunction", doc);
  return a;
}

Artifacts cmd_conjectures(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  std::vector<std::string> which;
  std::stringstream list(o.check.empty() ? "P1,P4,P8,P9" : o.check);
  for (std::string item; std::getline(list, item, ',');)
    if (!item.empty()) which.push_back(item);
  const auto report = verify_conjectures(ws.afunction(), ws.cells(), which);
  Artifacts a;
  a.failed = !report.passed();
  a.add_json("conjectures", {{"system", system_json(system, &ws.weights())}, {"report", report_json(report)}});
  return a;
}

Artifacts cmd_cellmaps(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  const auto& g = ws.group();
  const GeneratorSet I = parse_subset(system, o.parabolic);
  const auto& ml = ws.mathas_lusztig(I);
  const auto& local = ws.sub(I);
  const auto& sg = local.group();

  json local_rows = json::array();
  std::string csv = "w,two_sided_cell_id,eta\n";
  for (Elem x = 0; x < sg.size(); ++x) {
    local_rows.push_back({{"w", show(sg, x)},
                          {"rho", show(sg, ml.rho[x])},
                          {"lambda", show(sg, ml.lambda[x])},
                          {"eta", ml.eta[x]},
                          {"alpha", ml.alpha[x].to_string()}});
    csv += show(sg, x) + "," + std::to_string(local.cells().two_sided().cell_of(x)) + "," + std::to_string(ml.eta[x]) + "\n";
  }
  json extended = json::array();
  for (Elem w = 0; w < g.size(); ++w) {
    extended.push_back({{"w", show(g, w)},
                        {"lambda_L", show(g, ml.lambda_L[w])},
                        {"rho_R", show(g, ml.rho_R[w])},
                        {"eta_L", ml.eta_L[w]},
                        {"eta_R", ml.eta_R[w]}});
  }
  json doc{{"system", system_json(system, &ws.weights())},
           {"parabolic", system.render(I)},
           {"hypotheses_verified", ml.hypotheses_verified},
           {"hypotheses", report_json(ml.hypotheses)},
           {"consistency", report_json(ml.checks)},
           {"local", local_rows},
           {"extended", extended},
           {"mixed_sign_cells", mixed_sign_cells(local)}};

  bool failed = !ml.hypotheses.passed() || !ml.checks.passed();
  if (!o.check.empty()) {
    std::set<std::string> wanted;
    std::stringstream list(o.check);
    for (std::string item; std::getline(list, item, ',');)
      if (!item.empty()) wanted.insert(item);
    static const std::vector<std::string> kSuites{"cellular", "descent",     "geck",       "characterization",
                                                  "commutation", "equivariance", "degree"};
    if (wanted.count("all")) wanted = {kSuites.begin(), kSuites.end()};
    json verification = json::object();
    for (const auto& name : wanted) {
      Report r;
      if (name == "cellular") {
        r.merge(verify_cellular_pair(ws, ml.left_pair()), "left: ");
        r.merge(verify_cellular_pair(ws, ml.right_pair()), "right: ");
      } else if (name == "descent") {
        r.merge(verify_descent_invariance(g, ml.left_pair()), "left: ");
        r.merge(verify_descent_invariance(g, ml.right_pair()), "right: ");
      } else if (name == "geck") {
        r.merge(verify_geck(ws, I));
        r.merge(verify_geck_sign_identity(ws, I, ml.lambda, ml.eta));
      } else if (name == "characterization") {
        r = verify_characterization(ws, I);
      } else if (name == "commutation") {
        for (GeneratorSet J : CactusPresentation::build(system).generators) {
          const auto& other = ws.mathas_lusztig(J);
          r.merge(verify_commutation(ws, I, other.left_pair()), "{" + system.render(J) + "} left: ");
          r.merge(verify_commutation(ws, I, other.right_pair()), "{" + system.render(J) + "} right: ");
        }
      } else if (name == "equivariance") {
        r = verify_equivariance(ws);
      } else if (name == "degree") {
        r = verify_degree_bounds(ws);
      } else {
        throw UsageError("unknown check '" + name + "' (cellular, descent, geck, characterization, commutation, "
                         "equivariance, degree, all)");
      }
      failed = failed || !r.passed();
      verification[name] = report_json(r);
    }
    doc["verification"] = verification;
  }
  Artifacts a;
  a.failed = failed;
  a.add_json("cellmaps", doc);
  a.add("eta.csv", csv);
  return a;
}

Artifacts cmd_cactus(const Options& o) {
  const auto system = load_system(o);
  Workspace ws(load_group(o, system, true), WeightFunction::parse(system, o.weights), o.jobs);
  const auto& g = ws.group();
  CactusAction action(ws);
  const auto& p = action.presentation();
  json generators = json::array();
  for (GeneratorSet I : p.generators) generators.push_back(system.render(I));
  json doc{{"system", system_json(system, &ws.weights())}, {"generators", generators}};
  Artifacts a;
  if (o.action == "verify") {
    json relations = json::array();
    for (const auto& r : p.relations) relations.push_back(r.to_string(system));
    const auto report = action.verify_relations();
    doc["relations"] = relations;
    doc["report"] = report_json(report);
    doc["sign_comparison"] = report_json(action.compare_relation_signs());
    a.failed = !report.passed();
  } else if (o.action == "act") {
    const auto word = parse_cactus_word(p, system, o.word);
    const Side side = parse_side(o.side);
    const auto composite = action.compose(word, side);
    json images = json::array();
    auto row = [&](Elem w) {
      images.push_back({{"w", show(g, w)}, {"image", show(g, composite.map[w])}, {"sign", composite.sign[w]}});
    };
    if (o.element.empty()) {
      for (Elem w = 0; w < g.size(); ++w) row(w);
    } else {
      row(g.parse(o.element));
    }
    doc["word"] = render_cactus_word(system, word);
    doc["side"] = side == Side::Left ? "left" : "right";
    doc["projection"] = show(g, project_to_W(g, word));
    doc["images"] = images;
  } else if (o.action == "orbits") {
    const CellKind kind = o.side.empty() ? CellKind::TwoSided : parse_cell_kind(o.side);
    json orbits = json::array();
    for (const auto& orbit : action.orbits(kind)) orbits.push_back(elements_json(g, orbit));
    doc["side"] = to_string(kind);
    doc["orbits"] = orbits;
  } else {
    throw UsageError("cactus needs one of verify, act, orbits");
  }
  a.add_json("cactus", doc);
  return a;
}

void dump_violation(const Options& o, const TheoremViolation& e, std::ostream& err) {
  const json dump{{"error", "theorem violation"}, {"message", e.what()}, {"witness", e.witness()}};
  err << dump.dump(2) << "\n";
  if (!o.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    std::ofstream(std::filesystem::path(o.out) / "violation.json") << dump.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kazhdan-Lusztig cells, cellular involutions and cactus group actions", "klc"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "klc 1.0");

  app.add_option("--type", o.type, "Named Coxeter type: An, Bn, Dn, E6-8, F4, G2, H3, H4, I2(m)");
  app.add_option("--matrix", o.matrix, "Coxeter matrix as JSON, e.g. [[1,3],[3,1]]");
  app.add_option("--weights", o.weights, "Weight function, e.g. \"t=2,s1=1,s2=1\" or \"s=(1,0),t=(0,1)\"");
  app.add_option("--parabolic", o.parabolic, "Parabolic subset I, e.g. \"s1,s2\" (default: all of S)");
  app.add_option("--side", o.side, "left, right or two-sided");
  app.add_option("--out", o.out, "Write artifacts into this directory instead of stdout");
  app.add_option("--format", o.format, "Output on stdout: json, dot (cells) or csv (cellmaps)")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  app.add_option("--jobs", o.jobs, "Worker threads (0: one per core)");
  app.add_option("--max-length", o.max_length, "Enumerate an infinite W up to this length (group only)");
  app.add_option("--word", o.word, "Cactus word, letters separated by '|', e.g. \"s,t|s\"");
  app.add_option("--element", o.element, "Element as a word in the labels, e.g. \"s.t.s\"");
  app.add_option("--check", o.check, "Checks to run (conjectures: P1,P4,P8,P9; cellmaps: cellular,...,all)");
  app.add_flag("--allow-large", o.allow_large, "Allow groups beyond the built-in catalog");
  app.add_option("--config", "JSON file whose keys mirror the flags");

  std::vector<CLI::App*> commands;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"group", "Elements, lengths and descents"},
           {"klbasis", "Kazhdan-Lusztig basis in the standard basis"},
           {"cells", "Left, right and two-sided cells with their order"},
           {"afunction", "a-function, alpha, Delta and Duflo elements"},
           {"cellmaps", "Involutions rho_I, lambda_I and signs eta^I"},
           {"cactus", "Cactus group action"},
           {"conjectures", "Check P1, P4, P8, P9"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&o, name = name] { o.command = name; });
    commands.push_back(sub);
  }
  auto* cactus = app.get_subcommand("cactus");
  cactus->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"verify", "Check the defining relations on W"},
           {"act", "Apply a word to elements"},
           {"orbits", "Orbits of the left, right or both families"}}) {
    auto* sub = cactus->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&o, name = name] { o.action = name; });
  }

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Artifacts a;
    if (o.command == "group") a = cmd_group(o);
    else if (o.command == "klbasis") a = cmd_klbasis(o);
    else if (o.command == "cells") a = cmd_cells(o);
    else if (o.command == "afunction") a = cmd_afunction(o);
    else if (o.command == "cellmaps") a = cmd_cellmaps(o);
    else if (o.command == "cactus") a = cmd_cactus(o);
    else if (o.command == "conjectures") a = cmd_conjectures(o);
    emit(o, a, out);
    return a.failed ? kViolation : kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TheoremViolation& e) {
    dump_violation(o, e, err);
    return kViolation;
  } catch (const Error& e) {
    err << json{{"error", "computation failed"}, {"message", e.what()}}.dump(2) << "\n";
    return kViolation;
  }
}

}  // namespace klc::cli

// nbp: command-line front end for the near-bipartite toolkit.
//
// Exit codes: 0 = property holds / operation succeeded, 1 = property fails
// (a witness is printed), 2 = input error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbp/coloring.hpp"
#include "nbp/configuration.hpp"
#include "nbp/corpus.hpp"
#include "nbp/discharging.hpp"
#include "nbp/io.hpp"
#include "nbp/reduction.hpp"
#include "nbp/report.hpp"

namespace fs = std::filesystem;
using nbp::report::json;

namespace {

struct Outcome {
  int exit_code = 0;
  json body = json::object();
  std::string text;
};

struct Options {
  bool json = false;
  std::string input;
  std::string dir;
  std::string cycle;
  std::string pre;
  std::string hit;
  std::string fixture;
  std::string fb_dir;
  std::string out;
  std::string strategy = "sub";
  int n = 12;
  std::uint64_t seed = 1;
  double density = 0.5;
  bool corrupt = false;
  bool choose_outer = false;
};

std::vector<nbp::Vertex> parse_ids(const std::string& list) {
  std::vector<nbp::Vertex> out;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw nbp::Error(nbp::ErrorKind::parse_error, "bad vertex id '" + tok + "'");
    }
  }
  return out;
}

nbp::IFColoring parse_pre(const std::string& list) {
  nbp::IFColoring out;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq + 2 != tok.size() || (tok[eq + 1] != 'I' && tok[eq + 1] != 'F')) {
      throw nbp::Error(nbp::ErrorKind::parse_error, "bad precoloring entry '" + tok + "'");
    }
    out[parse_ids(tok.substr(0, eq)).at(0)] = tok[eq + 1] == 'I' ? nbp::Color::I : nbp::Color::F;
  }
  return out;
}

bool is_map_file(const std::string& path) {
  std::ifstream in(path);
  std::string magic;
  in >> magic;
  return magic == "nbmap";
}

std::string canonical_text(const std::string& path) {
  if (is_map_file(path)) return nbp::io::write_nbmap(nbp::io::load_nbmap(path));
  return nbp::io::write_nbg(nbp::io::load_graph(path));
}

// Map plus its C0: the outer boundary, or a re-designated short face.
std::pair<nbp::PlanarMap, nbp::CycleRef> map_with_c0(const std::string& path, bool choose) {
  nbp::PlanarMap map = nbp::io::load_nbmap(path);
  if (!choose) return {map, nbp::outer_cycle(map)};
  auto chosen = nbp::choose_outer(map);
  if (!chosen) {
    throw nbp::Error(nbp::ErrorKind::outer_mismatch, "no face is bounded by a cycle of length <= 14");
  }
  return *chosen;
}

std::vector<nbp::NamedGraph> load_catalog(const std::string& dir) {
  std::vector<nbp::NamedGraph> out;
  if (dir.empty() || !fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".nbg") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back({f.stem().string(), nbp::io::load_graph(f.string())});
  return out;
}

std::string coloring_line(const nbp::IFColoring& c) {
  std::string out;
  for (const auto& [v, col] : c) {
    out += (out.empty() ? "" : " ") + std::to_string(v) + "=" + nbp::to_char(col);
  }
  return out;
}

std::string hit_line(const nbp::ConfigurationHit& h) {
  std::string out = nbp::to_string(h.kind);
  if (!h.name.empty()) out += "(" + h.name + ")";
  if (h.face) out += " face " + std::to_string(*h.face);
  out += ":";
  for (const auto& [label, v] : h.roles) out += " " + label + "=" + std::to_string(v);
  return out;
}

// ----------------------------------------------------------------------------

Outcome cmd_check(const std::string& path) {
  nbp::Graph g = nbp::io::load_graph(path);
  Outcome o;
  auto c = nbp::solve(g);
  if (c && !nbp::validate(g, *c)) {
    o.body = {{"verdict", "near-bipartite"}, {"certificate", nbp::report::to_json(*c)}};
    o.text = "near-bipartite\n" + nbp::format_coloring(*c);
  } else {
    o.exit_code = 1;
    o.body = {{"verdict", "NOT near-bipartite"}};
    o.text = "NOT near-bipartite\n";
  }
  return o;
}

Outcome cmd_oracle(const std::string& path) {
  nbp::Graph g = nbp::io::load_graph(path);
  if (g.order() > 24) throw nbp::Error(nbp::ErrorKind::too_large, "oracle limited to 24 vertices");
  auto n = nbp::count_all(g);
  Outcome o;
  o.body = {{"count", n}};
  o.text = std::to_string(n) + " valid IF-colorings\n";
  return o;
}

Outcome cmd_superextend(const Options& opt) {
  nbp::Graph g = nbp::io::load_graph(opt.input);
  nbp::CycleRef c{parse_ids(opt.cycle)};
  nbp::require_cycle(g, c);
  Outcome o;
  if (!opt.pre.empty()) {
    auto pre = parse_pre(opt.pre);
    auto ext = nbp::superextends(g, c, pre);
    o.body = {{"precoloring", nbp::report::to_json(pre)},
              {"extension", ext ? nbp::report::to_json(*ext) : json()}};
    if (ext) {
      o.text = "superextends\n" + nbp::format_coloring(*ext);
    } else {
      o.exit_code = 1;
      o.text = "does not superextend\n";
    }
    return o;
  }
  auto rep = nbp::check_superextendable(g, c);
  o.body = nbp::report::to_json(rep);
  std::ostringstream text;
  text << (rep.superextendable() ? "superextendable" : "NOT superextendable") << " ("
       << rep.verdicts.size() << " precolorings, " << rep.failures() << " without extension)\n";
  for (const auto& v : rep.verdicts) {
    text << "  " << coloring_line(v.precoloring) << " -> "
         << (v.extension ? coloring_line(*v.extension) : std::string("none")) << "\n";
  }
  o.text = text.str();
  o.exit_code = rep.superextendable() ? 0 : 1;
  return o;
}

Outcome cmd_detect(const Options& opt) {
  auto [map, c0] = map_with_c0(opt.input, opt.choose_outer);
  auto cls = nbp::classify(map, c0);
  auto hits = nbp::detect_all(map, c0, cls, load_catalog(opt.fb_dir));
  Outcome o;
  o.body = {{"hits", nbp::report::to_json(hits)},
            {"classification", nbp::report::to_json(cls)},
            {"fa_structures", nbp::count_fa_structures(cls)},
            {"outer_cycle", nbp::report::to_json(c0.vertices)}};
  std::ostringstream text;
  text << hits.size() << " configuration hits\n";
  for (const auto& h : hits) text << "  " << hit_line(h) << "\n";
  o.text = text.str();
  return o;
}

Outcome cmd_discharge(const Options& opt) {
  auto [map, c0] = map_with_c0(opt.input, opt.choose_outer);
  auto cls = nbp::classify(map, c0);
  auto ledger = nbp::apply_rules(nbp::initial_charges(map), map, c0, cls);
  Outcome o;
  o.body = {{"ledger", nbp::report::to_json(ledger)}};
  std::ostringstream text;
  text << "element      initial  ch1      final\n";
  for (const auto& e : ledger.entries()) {
    std::string label = e.element.kind_name() + " " + std::to_string(e.element.id);
    text << label << std::string(label.size() < 13 ? 13 - label.size() : 1, ' ') << e.initial.str()
         << std::string(9 - std::min<std::size_t>(8, e.initial.str().size()), ' ') << e.ch1.str()
         << std::string(9 - std::min<std::size_t>(8, e.ch1.str().size()), ' ') << e.final.str() << "\n";
  }
  text << "totals: initial " << ledger.total_initial().str() << ", ch1 " << ledger.total_ch1().str()
       << ", final " << ledger.total_final().str() << "\n";
  o.text = text.str();
  return o;
}

Outcome cmd_audit(const std::string& path, const Options& opt) {
  auto [map, c0] = map_with_c0(path, opt.choose_outer);
  auto run = nbp::run_audit(map, c0, load_catalog(opt.fb_dir));
  Outcome o;
  o.body = nbp::report::to_json(run.verdict);
  o.body["outer_cycle"] = nbp::report::to_json(c0.vertices);
  std::ostringstream text;
  text << nbp::to_string(run.verdict.kind) << "\n";
  for (const auto& f : run.verdict.findings) {
    text << "  " << f.reason << ":";
    for (auto v : f.witness) text << " " << v;
    text << "\n";
  }
  for (const auto& b : run.verdict.bound_failures) {
    text << "  bound " << b.element.kind_name() << " " << b.element.id << " final " << b.final.str()
         << " violates " << b.bound << "\n";
  }
  o.text = text.str();
  o.exit_code = run.verdict.kind == nbp::VerdictKind::charge_contradiction ? 1 : 0;
  return o;
}

nbp::ConfigurationHit select_hit(const nbp::PlanarMap& map, const nbp::CycleRef& c0,
                                 const std::string& descriptor) {
  auto colon = descriptor.find(':');
  const std::string kind_text = descriptor.substr(0, colon);
  auto kind = nbp::hit_kind_from(kind_text);
  if (!kind) throw nbp::Error(nbp::ErrorKind::parse_error, "unknown hit kind " + kind_text);
  int index = 0;
  if (colon != std::string::npos) index = parse_ids(descriptor.substr(colon + 1)).at(0);
  if (*kind == nbp::HitKind::low_degree && colon != std::string::npos) {
    nbp::ConfigurationHit h;
    h.kind = *kind;
    h.roles = {{"v", index}};
    return h;
  }
  auto cls = nbp::classify(map, c0);
  std::vector<nbp::ConfigurationHit> matching;
  for (auto& h : nbp::detect_all(map, c0, cls)) {
    if (h.kind == *kind) matching.push_back(h);
  }
  if (index < 0 || index >= static_cast<int>(matching.size())) {
    throw nbp::Error(nbp::ErrorKind::invalid_hit,
                     "no " + kind_text + " hit with index " + std::to_string(index));
  }
  return matching[static_cast<std::size_t>(index)];
}

Outcome cmd_reduce(const Options& opt) {
  auto [map, c0] = map_with_c0(opt.input, opt.choose_outer);
  auto hit = select_hit(map, c0, opt.hit);
  auto [star, trace] = nbp::reduce(map.graph(), hit, &c0);
  Outcome o;
  o.body = {{"trace", nbp::report::to_json(trace)}, {"g_star", nbp::io::write_nbg(star)}};
  o.text = nbp::io::write_nbg(star) + nbp::report::dump(nbp::report::to_json(trace));
  return o;
}

Outcome cmd_verify(const Options& opt) {
  std::string path = opt.input;
  std::string descriptor = opt.hit;
  if (!opt.fixture.empty()) {
    path = nbp::fixtures_dir() + "/" + opt.fixture + ".nbmap";
    if (descriptor.empty()) descriptor = opt.fixture;
  }
  if (descriptor.empty()) throw nbp::Error(nbp::ErrorKind::parse_error, "verify needs --hit or --fixture");
  auto [map, c0] = map_with_c0(path, opt.choose_outer);
  auto hit = select_hit(map, c0, descriptor);
  nbp::LiftFunction lift_fn = nbp::lift_unchecked;
  if (opt.corrupt) {
    lift_fn = [](const nbp::Graph& g, const nbp::CycleRef& c, const nbp::ReductionTrace& t,
                 const nbp::IFColoring& star) {
      auto r = nbp::lift_unchecked(g, c, t, star);
      nbp::Vertex v2 = t.role(t.roles.count("v2") ? "v2" : "v");
      r.coloring[v2] = nbp::opposite(r.coloring.at(v2));
      return r;
    };
  }
  auto rep = nbp::verify_reducibility(map.graph(), c0, hit, lift_fn);
  Outcome o;
  o.body = nbp::report::to_json(rep);
  std::ostringstream text;
  text << (rep.ok() ? "reducible" : "LIFT FAILURES") << ": " << rep.superextensions
       << " superextensions of G* (" << rep.star_order << " vertices) over " << rep.precolorings
       << " precolorings, " << rep.failures.size() << " failures\n";
  for (const auto& [label, n] : rep.case_counts) text << "  " << label << ": " << n << "\n";
  if (!rep.failures.empty()) {
    const auto& f = rep.failures.front();
    text << "  first failure [" << f.case_label << "] " << f.defect << "\n";
  }
  o.text = text.str();
  o.exit_code = rep.ok() ? 0 : 1;
  return o;
}

Outcome cmd_gen(const Options& opt) {
  nbp::GenParams p;
  p.target = opt.n;
  p.seed = opt.seed;
  p.strategy = nbp::strategy_from(opt.strategy);
  p.density = opt.density;
  auto map = nbp::generate(p);
  const std::string text = nbp::io::write_nbmap(map);
  Outcome o;
  o.body = {{"map", text}, {"vertices", map.graph().order()}, {"edges", map.graph().size()}};
  if (!opt.out.empty()) {
    std::ofstream(opt.out) << text;
    o.text = "wrote " + opt.out + " (" + std::to_string(map.graph().order()) + " vertices)\n";
  } else {
    o.text = text;
  }
  return o;
}

Outcome cmd_fixtures(const Options& opt) {
  fs::create_directories(opt.out);
  json written = json::array();
  for (const auto& name : nbp::fixture_names()) {
    const std::string file = opt.out + "/" + name + ".nbmap";
    std::ofstream(file) << nbp::io::write_nbmap(nbp::build_fixture(name));
    written.push_back(file);
  }
  fs::create_directories(opt.out + "/maps");
  for (int n : {3, 8, 13}) {
    const std::string file = opt.out + "/maps/c" + std::to_string(n) + ".nbmap";
    std::ofstream(file) << nbp::io::write_nbmap(nbp::cycle_map(n));
    written.push_back(file);
  }
  fs::create_directories(opt.out + "/classics");
  for (const auto& g : nbp::classics()) {
    const std::string file = opt.out + "/classics/" + g.name + ".nbg";
    std::ofstream(file) << nbp::io::write_nbg(g.graph);
    written.push_back(file);
  }
  Outcome o;
  o.body = {{"written", written}};
  for (const auto& f : written) o.text += "wrote " + f.get<std::string>() + "\n";
  return o;
}

std::vector<std::string> dir_inputs(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".nbg" || ext == ".nbmap")) out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void emit(const std::string& command, const std::string& input, const Outcome& o, bool as_json) {
  if (as_json) {
    json j = o.body;
    j["command"] = command;
    j["exit_code"] = o.exit_code;
    if (!input.empty()) {
      j["input"] = input;
      j["digest"] = nbp::report::digest(canonical_text(input));
    }
    std::cout << nbp::report::dump(j);
  } else {
    if (!input.empty()) std::cout << "# " << input << " digest " << nbp::report::digest(canonical_text(input)) << "\n";
    std::cout << o.text;
  }
}

// Runs a per-file command over a directory, merging reports in sorted order.
int fan_out(const std::string& command, const Options& opt,
            const std::function<Outcome(const std::string&)>& run) {
  int worst = 0;
  json reports = json::array();
  for (const auto& path : dir_inputs(opt.dir)) {
    Outcome o;
    try {
      o = run(path);
    } catch (const nbp::Error& e) {
      o.exit_code = 2;
      o.body = {{"error", e.what()}};
      o.text = std::string("error: ") + e.what() + "\n";
    }
    worst = std::max(worst, o.exit_code);
    if (opt.json) {
      json j = o.body;
      j["input"] = path;
      j["exit_code"] = o.exit_code;
      if (o.exit_code != 2) j["digest"] = nbp::report::digest(canonical_text(path));
      reports.push_back(j);
    } else {
      std::cout << "# " << path << "\n" << o.text;
    }
  }
  if (opt.json) {
    std::cout << nbp::report::dump({{"command", command}, {"reports", reports}, {"exit_code", worst}});
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-bipartite toolkit for planar graphs without 4- to 7-cycles"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit a JSON report");

  auto input = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("input", opt.input, "Input file (.nbg or .nbmap)");
    if (required) o->required();
    return o;
  };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", opt.json, "Emit a JSON report"); };
  auto outer_flag = [&](CLI::App* sub) {
    sub->add_flag("--choose-outer", opt.choose_outer,
                  "Use a 3-face (else the shortest face of length <= 14) as the outer face");
  };
  const std::string default_fb = nbp::fixtures_dir() + "/fb";

  auto* check = app.add_subcommand("check", "Decide near-bipartiteness, printing a certificate");
  input(check, false);
  check->add_option("--dir", opt.dir, "Check every .nbg/.nbmap file in a directory");
  json_flag(check);

  auto* superextend = app.add_subcommand("superextend", "Superextendability of a cycle");
  input(superextend);
  superextend->add_option("--cycle", opt.cycle, "Cycle as comma-separated vertex ids")->required();
  superextend->add_option("--pre", opt.pre, "One precoloring, e.g. 0=I,1=F,2=F");
  json_flag(superextend);

  auto* detect = app.add_subcommand("detect", "Classify vertices and list configurations");
  input(detect);
  detect->add_option("--fb", opt.fb_dir, "Directory of forbidden-subgraph .nbg files")->default_str(default_fb);
  outer_flag(detect);
  json_flag(detect);

  auto* discharge = app.add_subcommand("discharge", "Charge ledger after the discharging rules");
  input(discharge);
  outer_flag(discharge);
  json_flag(discharge);

  auto* audit = app.add_subcommand("audit", "Reducible structures and charge bounds");
  input(audit, false);
  audit->add_option("--dir", opt.dir, "Audit every .nbmap file in a directory");
  audit->add_option("--fb", opt.fb_dir, "Directory of forbidden-subgraph .nbg files");
  outer_flag(audit);
  json_flag(audit);

  auto* reduce = app.add_subcommand("reduce", "Build G* for one configuration hit");
  input(reduce);
  reduce->add_option("--hit", opt.hit, "kind[:index] or low_degree:vertex")->required();
  outer_flag(reduce);
  json_flag(reduce);

  auto* verify = app.add_subcommand("verify", "Exhaustively check the coloring lift for a hit");
  input(verify, false);
  verify->add_option("--fixture", opt.fixture, "Fixture name (tetrad, m_face, mm_face)");
  verify->add_option("--hit", opt.hit, "kind[:index] or low_degree:vertex");
  verify->add_flag("--corrupt", opt.corrupt, "Flip v2 after lifting (negative control)");
  outer_flag(verify);
  json_flag(verify);

  auto* gen = app.add_subcommand("gen", "Generate a planar map without 4- to 7-cycles");
  gen->add_option("--n", opt.n, "Target vertex count")->capture_default_str();
  gen->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  gen->add_option("--strategy", opt.strategy, "sub or glue")->capture_default_str();
  gen->add_option("--density", opt.density, "Pendant 3-face density for glue")->capture_default_str();
  gen->add_option("--out", opt.out, "Output .nbmap file (stdout when omitted)");
  json_flag(gen);

  auto* oracle = app.add_subcommand("oracle", "Count valid IF-colorings by brute force");
  input(oracle);
  json_flag(oracle);

  auto* fixtures = app.add_subcommand("fixtures", "Write the fixture hosts and classic graphs");
  fixtures->add_option("--out", opt.out, "Output directory")->required();
  json_flag(fixtures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (detect->parsed() && opt.fb_dir.empty()) opt.fb_dir = default_fb;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if ((check->parsed() || audit->parsed()) && !opt.dir.empty()) {
      auto run = [&](const std::string& path) {
        return check->parsed() ? cmd_check(path) : cmd_audit(path, opt);
      };
      return fan_out(command, opt, run);
    }
    Outcome o;
    std::string in = opt.input;
    if (check->parsed() || audit->parsed()) {
      if (opt.input.empty()) throw nbp::Error(nbp::ErrorKind::parse_error, "an input file or --dir is required");
    }
    if (check->parsed()) o = cmd_check(opt.input);
    else if (superextend->parsed()) o = cmd_superextend(opt);
    else if (detect->parsed()) o = cmd_detect(opt);
    else if (discharge->parsed()) o = cmd_discharge(opt);
    else if (audit->parsed()) o = cmd_audit(opt.input, opt);
    else if (reduce->parsed()) o = cmd_reduce(opt);
    else if (verify->parsed()) {
      o = cmd_verify(opt);
      if (!opt.fixture.empty()) in = nbp::fixtures_dir() + "/" + opt.fixture + ".nbmap";
    }
    else if (gen->parsed()) o = cmd_gen(opt);
    else if (oracle->parsed()) o = cmd_oracle(opt.input);
    else if (fixtures->parsed()) o = cmd_fixtures(opt);
    emit(command, in, o, opt.json);
    return o.exit_code;
  } catch (const nbp::Error& e) {
    if (opt.json) {
      std::cout << nbp::report::dump({{"command", command}, {"error", e.what()}, {"exit_code", 2}});
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

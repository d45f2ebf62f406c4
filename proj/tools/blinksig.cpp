// blinksig: concordance invariants of boundary links from block Seifert matrices.
//
// Exit codes: 0 ok, 1 validation/usage error, 2 ambiguous single-point evaluation,
// 3 lab suite failure (selftest: acceptance failure).

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "blinksig/acceptance.hpp"
#include "blinksig/io.hpp"
#include "blinksig/lab.hpp"
#include "blinksig/presentation.hpp"
#include "blinksig/twisted_signature.hpp"

namespace {

using namespace blinksig;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitAmbiguous = 2;
constexpr int kExitSuiteFailure = 3;

struct Tolerances {
  double unitarity = kUnitarityTol;
  double inertia = kInertiaTol;
  double discriminant = kDiscriminantTol;
  double refine = kRefineTol;

  void check() const {
    if (!(unitarity > 0 && inertia > 0 && discriminant > 0 && refine > 0))
      throw ValidationError("tolerances must be positive");
  }
  json to_json() const {
    return json{{"unitarity", unitarity}, {"projection", kProjectionTol}, {"inertia", inertia},
                {"discriminant", discriminant}, {"refine", refine}};
  }
};

struct RunConfig {
  std::string command;
  std::string link_path;
  std::string rep_path;
  json link_doc;  // filled from link_path or a replayed header
  json rep_doc;
  Convention convention = Convention::classical;
  Tolerances tol;
  std::string out = "json";
  std::uint64_t seed = 0;
  int level = 0;  // 0 = q
  int component = 1;
  int samples = 1024;
  int k = 1;
  int resolution = 12;
  int scans = 20;
  std::string suite;
  LabParams lab;
  std::optional<std::string> stamp;

  json args() const {
    json a{{"out", out}};
    if (command == "alexander") a["level"] = level;
    if (command == "scan") {
      a["component"] = component;
      a["samples"] = samples;
      a["k"] = k;
    }
    if (command == "grid") a["resolution"] = resolution;
    if (command == "loci") {
      a["k"] = k;
      a["scans"] = scans;
      a["samples"] = samples;
      a["seed"] = seed;
    }
    if (command == "lab") {
      a["suite"] = suite;
      a["seed"] = seed;
      a["params"] = lab.to_json();
    }
    return a;
  }
};

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json header(const RunConfig& cfg) {
  json inputs = json::object();
  if (!cfg.link_doc.is_null()) inputs["link"] = cfg.link_doc;
  if (!cfg.rep_doc.is_null()) inputs["rep"] = cfg.rep_doc;
  json h{{"schema", kSchemaVersion},
         {"tool", kToolName},
         {"version", kToolVersion},
         {"command", cfg.command},
         {"convention", std::string(to_string(cfg.convention))},
         {"tolerances", cfg.tol.to_json()},
         {"args", cfg.args()},
         {"input_digest", sha256_hex(inputs.dump())},
         {"inputs", inputs}};
  if (cfg.stamp) h["timestamp"] = *cfg.stamp;
  return h;
}

std::string now_stamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct RunResult {
  std::string text;
  int exit_code = kExitOk;
};

std::string json_output(const RunConfig& cfg, json body) {
  body["header"] = header(cfg);
  return body.dump(2) + "\n";
}

BoundaryLinkData load_link(const RunConfig& cfg) { return validate_link(cfg.link_doc); }

RunResult run_validate(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  return {json_output(cfg, json{{"valid", true}, {"link", link_to_json(link)}, {"warnings", link.warnings()}})};
}

RunResult run_alexander(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  const int level = cfg.level == 0 ? link.q() : cfg.level;
  const LaurentPoly p = alexander_polynomial(link, level, cfg.convention);
  if (cfg.out == "text") return {p.to_string() + "\n"};
  return {json_output(cfg, json{{"level", level}, {"polynomial", p.to_string()}, {"normalized", poly_to_json(p)}})};
}

RunResult run_signature(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  const UnitaryTuple alpha = rep_from_json(cfg.rep_doc, cfg.tol.unitarity);
  const HermitianMatrix h = twisted_form(link, alpha);
  const InertiaResult r = inertia(h, cfg.tol.inertia);
  const DiscriminantMembership disc = in_discriminant(link, alpha, cfg.tol.discriminant, cfg.convention);
  json body = inertia_to_json(r);
  body["margin_h"] = hadamard(h.matrix()).margin;
  body["on_discriminant"] = disc.member;
  body["margins_p"] = margins_to_json(disc.margins);
  const bool ambiguous = r.ambiguous || disc.member;
  if (ambiguous)
    body["ambiguity"] = disc.member ? "point lies on the discriminant; the signature is not locally constant here"
                                    : "an eigenvalue lies inside the threshold band";
  return {json_output(cfg, body), ambiguous ? kExitAmbiguous : kExitOk};
}

UnitaryTuple scan_base(const RunConfig& cfg, const BoundaryLinkData& link) {
  if (!cfg.rep_doc.is_null()) return rep_from_json(cfg.rep_doc, cfg.tol.unitarity);
  std::vector<ComplexMatrix> us;
  for (int r = 0; r < link.m(); ++r)
    us.push_back(r + 1 == cfg.component ? ComplexMatrix::Identity(cfg.k, cfg.k)
                                        : ComplexMatrix(-ComplexMatrix::Identity(cfg.k, cfg.k)));
  return UnitaryTuple(cfg.k, std::move(us));
}

RunResult run_scan(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  const UnitaryTuple base = scan_base(cfg, link);
  ScanOptions opts;
  opts.samples = cfg.samples;
  opts.refine_tol = cfg.tol.refine;
  opts.inertia_tol = cfg.tol.inertia;
  opts.convention = cfg.convention;
  const JumpReport report = scan_path(link, circle_on_component(base, cfg.component - 1), opts);
  if (cfg.out == "csv") {
    std::ostringstream os;
    os << "# " << header(cfg).dump() << '\n' << "s,signature,nullity,margin_H,margin_P,ambiguous\n";
    for (const auto& s : report.samples)
      os << fmt(s.s) << ',' << s.signature << ',' << s.nullity << ',' << fmt(s.margin_h) << ',' << fmt(s.margin_p) << ','
         << (s.ambiguous ? 1 : 0) << '\n';
    for (const auto& j : report.jumps) {
      double mp = 1.0;
      for (const auto& m : j.margins_p) mp = std::min(mp, m.margin);
      os << "# jump s=" << fmt(j.s) << " before=" << j.before << " after=" << j.after << " margin_H=" << fmt(j.margin_h)
         << " margin_P=" << fmt(mp) << '\n';
    }
    return {os.str()};
  }
  json samples = json::array();
  for (const auto& s : report.samples)
    samples.push_back(json{{"s", s.s}, {"signature", s.signature}, {"nullity", s.nullity}, {"margin_h", s.margin_h},
                           {"margin_p", s.margin_p}, {"ambiguous", s.ambiguous}});
  json jumps = json::array();
  for (const auto& j : report.jumps)
    jumps.push_back(json{{"s", j.s}, {"bracket", j.bracket}, {"before", j.before}, {"after", j.after},
                         {"margin_h", j.margin_h}, {"margins_p", margins_to_json(j.margins_p)}});
  return {json_output(cfg, json{{"samples", samples}, {"jumps", jumps}, {"ambiguous_samples", report.ambiguous_samples}})};
}

RunResult run_grid(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  const auto grid = torus_grid(link, cfg.resolution, cfg.convention, cfg.tol.inertia);
  if (cfg.out == "csv") {
    std::ostringstream os;
    os << "# " << header(cfg).dump() << '\n';
    for (int j = 1; j <= link.m(); ++j) os << "theta" << j << ',';
    os << "signature,nullity,margin_H,margin_P,ambiguous\n";
    for (const auto& g : grid) {
      for (double a : g.angles) os << fmt(a) << ',';
      os << g.inertia.signature << ',' << g.inertia.nullity << ',' << fmt(g.margin_h) << ',' << fmt(g.margin_p) << ','
         << (g.inertia.ambiguous ? 1 : 0) << '\n';
    }
    return {os.str()};
  }
  json points = json::array();
  for (const auto& g : grid)
    points.push_back(json{{"angles", g.angles}, {"signature", g.inertia.signature}, {"nullity", g.inertia.nullity},
                          {"margin_h", g.margin_h}, {"margin_p", g.margin_p}, {"ambiguous", g.inertia.ambiguous}});
  return {json_output(cfg, json{{"points", points}})};
}

RunResult run_lab(const RunConfig& cfg) {
  LabParams p = cfg.lab;
  p.convention = cfg.convention;
  const PropertyReport report = run_suite(parse_suite(cfg.suite), p, cfg.seed);
  return {json_output(cfg, report.to_json()), report.passed() ? kExitOk : kExitSuiteFailure};
}

RunResult run_loci(const RunConfig& cfg) {
  const BoundaryLinkData link = load_link(cfg);
  const LocusReport report = compare_loci(link, cfg.k, cfg.scans, cfg.seed, cfg.convention, cfg.samples);
  return {json_output(cfg, report.to_json())};
}

RunResult run_selftest() {
  std::ostringstream os;
  int failed = 0;
  for (const auto& r : acceptance::run_all()) {
    os << acceptance::format(r) << '\n';
    if (!r.passed) ++failed;
  }
  os << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return {os.str(), failed == 0 ? kExitOk : kExitSuiteFailure};
}

RunResult execute(const RunConfig& cfg) {
  cfg.tol.check();
  if (cfg.command == "validate") return run_validate(cfg);
  if (cfg.command == "alexander") return run_alexander(cfg);
  if (cfg.command == "signature") return run_signature(cfg);
  if (cfg.command == "scan") return run_scan(cfg);
  if (cfg.command == "grid") return run_grid(cfg);
  if (cfg.command == "lab") return run_lab(cfg);
  if (cfg.command == "loci") return run_loci(cfg);
  if (cfg.command == "selftest") return run_selftest();
  throw ValidationError("unknown command '" + cfg.command + "'");
}

// Rebuilds the configuration recorded in an output header.
RunConfig config_from_header(const json& h) {
  if (h.value("tool", "") != kToolName) throw ValidationError("not a blinksig output");
  if (h.value("schema", 0) != kSchemaVersion) throw ValidationError("unsupported schema version");
  RunConfig cfg;
  cfg.command = h.at("command").get<std::string>();
  cfg.convention = parse_convention(h.at("convention").get<std::string>());
  const json& t = h.at("tolerances");
  cfg.tol.unitarity = t.at("unitarity").get<double>();
  cfg.tol.inertia = t.at("inertia").get<double>();
  cfg.tol.discriminant = t.at("discriminant").get<double>();
  cfg.tol.refine = t.at("refine").get<double>();
  const json& inputs = h.at("inputs");
  if (inputs.contains("link")) cfg.link_doc = inputs.at("link");
  if (inputs.contains("rep")) cfg.rep_doc = inputs.at("rep");
  const json& a = h.at("args");
  cfg.out = a.value("out", "json");
  cfg.level = a.value("level", 0);
  cfg.component = a.value("component", 1);
  cfg.samples = a.value("samples", 1024);
  cfg.k = a.value("k", 1);
  cfg.resolution = a.value("resolution", 12);
  cfg.scans = a.value("scans", 20);
  cfg.seed = a.value("seed", std::uint64_t{0});
  cfg.suite = a.value("suite", "");
  if (a.contains("params")) {
    const json& p = a.at("params");
    cfg.lab.trials = p.at("trials").get<int>();
    cfg.lab.m_max = p.at("m_max").get<int>();
    cfg.lab.k_max = p.at("k_max").get<int>();
    cfg.lab.block_max = p.at("block_max").get<int>();
    cfg.lab.points = p.at("points").get<int>();
    cfg.lab.inject_bad_q = p.at("inject_bad_q").get<bool>();
  }
  if (h.contains("timestamp")) cfg.stamp = h.at("timestamp").get<std::string>();
  if (sha256_hex(inputs.dump()) != h.at("input_digest").get<std::string>())
    throw ValidationError("input digest does not match the embedded inputs");
  return cfg;
}

int replay(const std::string& path) {
  const std::string text = read_file(path);
  json h;
  if (text.starts_with("# ")) {
    h = json::parse(text.substr(2, text.find('\n') - 2));
  } else {
    h = json::parse(text).at("header");
  }
  const RunResult again = execute(config_from_header(h));
  const bool match = again.text == text;
  std::cout << json{{"replay", path}, {"command", h.at("command")}, {"match", match}}.dump() << '\n';
  return match ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blinksig: boundary-link signature and discriminant toolkit"};
  app.option_defaults()->always_capture_default();
  RunConfig cfg;
  std::string convention = "classical";
  std::string replay_path;
  bool stamp = false;

  app.add_option("--replay", replay_path, "Re-run the command recorded in an output file and compare byte-for-byte");
  auto add_common = [&](CLI::App* sub, bool needs_link) {
    if (needs_link) sub->add_option("link", cfg.link_path, "Link JSON document")->required()->check(CLI::ExistingFile);
    sub->add_option("--convention", convention, "Presentation sign convention")
        ->check(CLI::IsMember({"classical", "paper"}));
    sub->add_option("--unitarity-tol", cfg.tol.unitarity, "Unitarity tolerance");
    sub->add_option("--inertia-tol", cfg.tol.inertia, "Relative eigenvalue threshold");
    sub->add_option("--disc-tol", cfg.tol.discriminant, "Discriminant margin threshold");
    sub->add_option("--refine-tol", cfg.tol.refine, "Jump bisection width");
    sub->add_flag("--stamp", stamp, "Record a timestamp in the output header");
  };

  auto* validate = app.add_subcommand("validate", "Validate a link document");
  add_common(validate, true);

  auto* alexander = app.add_subcommand("alexander", "Normalized Alexander-type discriminant polynomial");
  add_common(alexander, true);
  alexander->add_option("--level", cfg.level, "Level (0 = q)");
  alexander->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* signature = app.add_subcommand("signature", "Twisted signature at one representation point");
  add_common(signature, true);
  signature->add_option("--rep", cfg.rep_path, "Representation JSON")->required()->check(CLI::ExistingFile);

  auto* scan = app.add_subcommand("scan", "Scan a circle through one component and refine signature jumps");
  add_common(scan, true);
  scan->add_option("--component", cfg.component, "Component to rotate (1-based)");
  scan->add_option("--samples", cfg.samples, "Number of samples");
  scan->add_option("--k", cfg.k, "Representation dimension of the default base point");
  scan->add_option("--rep", cfg.rep_path, "Base representation point (default: -I off the scanned component)")
      ->check(CLI::ExistingFile);
  scan->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* grid = app.add_subcommand("grid", "k=1 torus grid of signatures and margins");
  add_common(grid, true);
  grid->add_option("--resolution", cfg.resolution, "Grid points per circle");
  grid->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* lab = app.add_subcommand("lab", "Randomized property suite");
  add_common(lab, false);
  lab->add_option("--suite", cfg.suite, "Suite name")->required();
  lab->add_option("--trials", cfg.lab.trials, "Trials (<= 1000)");
  lab->add_option("--seed", cfg.seed, "Seed");
  lab->add_option("--m-max", cfg.lab.m_max, "Max components (<= 3)");
  lab->add_option("--k-max", cfg.lab.k_max, "Max representation dimension (<= 3)");
  lab->add_option("--block-max", cfg.lab.block_max, "Max block size (<= 5)");
  lab->add_option("--points", cfg.lab.points, "Representation points per trial (metabolic-vanishing default 50)");
  lab->add_flag("--inject-bad-q", cfg.lab.inject_bad_q, "congruence-invariance: also attempt a det-2 move");
  lab->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json"}));
  bool points_given = false;
  bool block_given = false;

  auto* loci = app.add_subcommand("loci", "Compare signature jumps with the discriminant along random circles");
  add_common(loci, true);
  loci->add_option("--k", cfg.k, "Representation dimension");
  loci->add_option("--scans", cfg.scans, "Number of random circles");
  loci->add_option("--samples", cfg.samples, "Samples per circle");
  loci->add_option("--seed", cfg.seed, "Seed");

  app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
    points_given = lab->count("--points") > 0;
    block_given = lab->count("--block-max") > 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (!replay_path.empty()) return replay(replay_path);
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kExitInvalid;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.convention = parse_convention(convention);
    if (stamp) cfg.stamp = now_stamp();
    if (cfg.command == "lab") {
      const LabParams defaults = default_params(parse_suite(cfg.suite));
      if (!points_given) cfg.lab.points = defaults.points;
      if (!block_given) cfg.lab.block_max = defaults.block_max;
    }
    if (!cfg.link_path.empty()) cfg.link_doc = read_json_file(cfg.link_path);
    if (!cfg.rep_path.empty()) cfg.rep_doc = read_json_file(cfg.rep_path);
    const RunResult result = execute(cfg);
    std::cout << result.text;
    return result.exit_code;
  } catch (const ValidationError& e) {
    std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
    return kExitInvalid;
  } catch (const UnsupportedConfiguration& e) {
    std::cerr << json{{"error", "unsupported"}, {"message", e.what()}}.dump() << '\n';
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "json"}, {"message", e.what()}}.dump() << '\n';
    return kExitInvalid;
  }
}

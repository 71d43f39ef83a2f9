#include "injrad/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/integrals.hpp"
#include "injrad/mappings.hpp"
#include "injrad/qfield.hpp"
#include "injrad/radius.hpp"
#include "injrad/text.hpp"

namespace injrad::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;
constexpr const char* kConfigEnv = "INJRAD_CONFIG";

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return text::format_real(v);
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) body_ << (i ? "," : "") << columns[i];
    body_ << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << "\n";
  }
  std::string str() const { return body_.str(); }

 private:
  std::ostringstream body_;
};

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> r_max;
  std::optional<double> r_cap;
  std::optional<double> cap_constant;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  std::string out = "-";
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path,
                  std::string("JSON config file (default: $") + kConfigEnv + ")");
  sub->add_option("--seed", c.seed, "Monte Carlo seed");
  sub->add_option("--samples", c.samples, "Monte Carlo sample count");
  sub->add_option("--r-max", c.r_max, "upper cap for singular radial integrals");
  sub->add_option("--r-cap", c.r_cap, "largest reported radius");
  sub->add_option("--cap-constant", c.cap_constant, "spherical-cap modulus constant");
  sub->add_option("--abs-tol", c.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
  sub->add_option("-o,--out", c.out, "output path, - for standard output");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

template <class T>
void read_key(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config key '") + key + "': " + e.what());
  }
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ParseError("config file '" + path + "' must hold a JSON object");
  static const char* known[] = {"seed",         "sample_count",   "max_resample",
                                "abs_tol",      "rel_tol",        "max_subdivisions",
                                "r_max",        "r_cap",          "divergence_threshold",
                                "cap_constant", "witness_tol",    "witness_budget",
                                "probe_samples"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return item.key() == k; }) == std::end(known))
      throw ParseError("unknown config key '" + item.key() + "'");
  }
  Config cfg;
  read_key(j, "seed", cfg.seed);
  read_key(j, "sample_count", cfg.sample_count);
  read_key(j, "max_resample", cfg.max_resample);
  read_key(j, "abs_tol", cfg.abs_tol);
  read_key(j, "rel_tol", cfg.rel_tol);
  read_key(j, "max_subdivisions", cfg.max_subdivisions);
  read_key(j, "r_max", cfg.r_max);
  read_key(j, "r_cap", cfg.r_cap);
  read_key(j, "divergence_threshold", cfg.divergence_threshold);
  if (j.contains("cap_constant")) {
    double v = 0.0;
    read_key(j, "cap_constant", v);
    cfg.cap_constant = v;
  }
  read_key(j, "witness_tol", cfg.witness_tol);
  read_key(j, "witness_budget", cfg.witness_budget);
  read_key(j, "probe_samples", cfg.probe_samples);
  return cfg;
}

Config build_config(const Common& c) {
  Config cfg;
  std::string path = c.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (!path.empty()) cfg = load_config(path);
  if (c.seed) cfg.seed = *c.seed;
  if (c.samples) cfg.sample_count = *c.samples;
  if (c.r_max) cfg.r_max = *c.r_max;
  if (c.r_cap) cfg.r_cap = *c.r_cap;
  if (c.cap_constant) cfg.cap_constant = *c.cap_constant;
  if (c.abs_tol) cfg.abs_tol = *c.abs_tol;
  if (c.rel_tol) cfg.rel_tol = *c.rel_tol;
  cfg.validate();
  return cfg;
}

json config_json(const Config& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["sample_count"] = cfg.sample_count;
  j["abs_tol"] = num(cfg.abs_tol);
  j["rel_tol"] = num(cfg.rel_tol);
  j["max_subdivisions"] = cfg.max_subdivisions;
  j["r_max"] = num(cfg.r_max);
  j["r_cap"] = num(cfg.r_cap);
  j["divergence_threshold"] = num(cfg.divergence_threshold);
  j["cap_constant"] = cfg.cap_constant ? num(*cfg.cap_constant) : json(nullptr);
  j["witness_tol"] = num(cfg.witness_tol);
  j["witness_budget"] = cfg.witness_budget;
  j["probe_samples"] = cfg.probe_samples;
  return j;
}

json header(const std::string& command) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into '" + path + "'");
  }
}

void emit(const Common& c, const json& report, const std::string& csv, std::ostream& out) {
  const std::string content = c.format == "csv" ? csv : report.dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    out << content;
    out.flush();
  } else {
    write_atomic(c.out, content);
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (std::string_view tok : text::split(s, ',')) out.push_back(text::parse_real(tok, what));
  return out;
}

// Splits a family list at commas that start a new map spec.
std::vector<std::string> split_family(const std::string& s) {
  static const char* prefixes[] = {"stretch:", "winding:", "exp2d:", "compose:"};
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != ',') continue;
    const std::string_view rest = std::string_view(s).substr(i + 1);
    for (const char* p : prefixes) {
      if (rest.substr(0, std::char_traits<char>::length(p)) == p) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
        break;
      }
    }
  }
  out.push_back(s.substr(start));
  return out;
}

json divergence_json(const DivergenceClass& d) {
  json j;
  j["verdict"] = to_string(d.verdict);
  j["c"] = num(d.c);
  json partials = json::array();
  for (std::size_t i = 0; i < d.partial_values.size(); ++i)
    partials.push_back({{"eps", num(d.epsilons[i])}, {"I", num(d.partial_values[i])}});
  j["partials"] = partials;
  j["fit"] = {{"model", d.fit.model}, {"slope", num(d.fit.slope)}, {"points", d.fit.points}};
  return j;
}

json growth_json(const GrowthCheck& g) {
  return {{"holds", g.holds},
          {"c_estimate", num(g.c_estimate)},
          {"relative_trend", num(g.relative_trend)},
          {"nodes_used", g.nodes_used}};
}

json fmo_json(const FmoReport& f) {
  json j;
  j["is_fmo"] = to_string(f.is_fmo);
  j["x0"] = nums(f.x0);
  j["epsilons"] = nums(f.epsilons);
  j["ball_means"] = nums(f.ball_means);
  j["oscillations"] = nums(f.oscillations);
  j["limsup_estimate"] = num(f.limsup_estimate);
  j["relative_trend"] = num(f.relative_trend);
  j["epsilon0"] = f.epsilon0 ? num(*f.epsilon0) : json(nullptr);
  return j;
}

json ring_json(const RingCheck& rc) {
  return {{"r1", num(rc.r1)},
          {"r2", num(rc.r2)},
          {"lhs_modulus", num(rc.lhs_modulus)},
          {"rhs_bound", num(rc.rhs_bound)},
          {"passed", rc.passed},
          {"slack", num(rc.slack)},
          {"relative_gap", num(rc.relative_gap)}};
}

json witness_json(const Witness& w) {
  return {{"x1", nums(w.x1)},
          {"x2", nums(w.x2)},
          {"image_gap", num(w.image_gap)},
          {"containment_radius", num(w.containment_radius)},
          {"method", w.method}};
}

// Upper limit used for I(r, upper) curves of a radial field.
double curve_upper(const QField& q, const Config& cfg) {
  if (q.outer_radius() < 1.0) return q.outer_radius();
  double w0 = 0.0;
  try {
    w0 = q.radial_log(0.0);
  } catch (const Error&) {
  }
  return (w0 > 0.0 && std::isfinite(w0)) ? 1.0 : cfg.r_max;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_analyze(const std::string& qspec, int n, const Common& c, std::ostream& out) {
  const Config cfg = build_config(c);
  const QField q = parse_qspec(qspec, n);
  json rep = header("analyze");
  rep["n"] = n;
  rep["q"] = q.describe();
  rep["config"] = config_json(cfg);

  double lo = 1e-8, hi = 0.5;
  if (const auto* t = std::get_if<TabulatedField>(&q.kind())) {
    lo = std::max(lo, t->profile.min_radius());
    hi = std::min(hi, t->profile.max_radius());
  }
  const Point origin(n, 0.0);
  const RadialProfile prof = q_profile(q, origin, log_grid(lo, hi, 41), cfg);
  rep["profile_provenance"] = prof.provenance();

  rep["divergence"] = divergence_json(classify_divergence(q, cfg));
  try {
    rep["growth"] = growth_json(log_growth_check(prof, n));
  } catch (const InconclusiveError& e) {
    rep["growth"] = {{"holds", "inconclusive"}, {"message", e.what()}};
  }
  try {
    const auto grid = default_fmo_grid();
    rep["fmo"] = fmo_json(fmo_oscillation(q, origin, grid, cfg));
  } catch (const Error& e) {
    rep["fmo"] = {{"is_fmo", "inconclusive"}, {"message", e.what()}};
  }

  Csv csv({"r", "q0", "I"});
  json curve = json::array();
  std::optional<PsiWeight> psi;
  double upper = 1.0;
  if (q.is_radial()) {
    upper = curve_upper(q, cfg);
    psi = psi_canonical(q, 0.0, q.outer_radius());
    rep["I_upper"] = num(upper);
  }
  for (std::size_t i = 0; i < prof.radii().size(); ++i) {
    const double r = prof.radii()[i];
    const double I = psi ? integrate_I(*psi, r, upper, cfg).value : NAN;
    curve.push_back({{"r", num(r)}, {"q0", num(prof.values()[i])}, {"I", num(I)}});
    csv.row({cell(r), cell(prof.values()[i]), cell(I)});
  }
  rep["curve"] = curve;
  emit(c, rep, csv.str(), out);
  return kOk;
}

json report_json(const InjectivityReport& r, const Config& cfg) {
  json j = header("radius");
  j["n"] = r.n;
  j["q"] = r.q_summary;
  j["psi"] = to_string(r.psi_kind);
  j["method"] = to_string(r.method);
  j["status"] = to_string(r.status);
  j["divergence"] = divergence_json(r.divergence);
  j["params"] = {{"C", num(r.params.C)},
                 {"alpha", num(r.params.alpha)},
                 {"cap_constant", num(r.params.cap_constant)},
                 {"cap_integrated", num(r.params.cap_integrated)}};
  j["I_target"] = num(r.I_target);
  j["upper"] = num(r.upper);
  j["delta"] = num(r.delta);
  j["log_delta"] = num(r.log_delta);
  j["I_at_delta"] = num(r.I_at_delta);
  j["epsilon0"] = r.epsilon0 ? num(*r.epsilon0) : json(nullptr);
  if (r.growth) j["growth"] = growth_json(*r.growth);
  if (r.fmo) j["fmo"] = fmo_json(*r.fmo);
  j["caveats"] = r.caveats;
  j["witnesses"] = json::array();
  j["ring_checks"] = json::array();
  j["config"] = config_json(cfg);
  return j;
}

int cmd_radius(const std::string& qspec, int n, const std::string& method, const Common& c,
               std::ostream& out) {
  Config cfg = build_config(c);
  const QField q = parse_qspec(qspec, n);
  InjectivityReport r;
  if (method == "canonical") {
    const BoundParameters p = default_parameters(n, PsiKind::canonical, q, cfg);
    r = estimate_delta(q, n, PsiKind::canonical, p, cfg);
  } else if (method == "log_growth") {
    r = corollary_report(q, n, cfg);
  } else {
    r = fmo_report(q, n, cfg);
  }
  if (!cfg.cap_constant) cfg.cap_constant = r.params.cap_constant;
  const json rep = report_json(r, cfg);

  Csv csv({"r", "I"});
  if (r.status == Status::ok) {
    const PsiWeight psi = r.psi_kind == PsiKind::fmo ? psi_fmo(*r.epsilon0, n)
                                                     : psi_canonical(q, 0.0, q.outer_radius());
    const double top = std::min(r.upper, cfg.r_cap);
    double lo = 1e-8;
    if (const auto* t = std::get_if<TabulatedField>(&q.kind())) lo = t->profile.min_radius();
    if (lo < top)
      for (double x : log_grid(lo, top, 41)) csv.row({cell(x), cell(integrate_I(psi, x, r.upper, cfg).value)});
  }
  emit(c, rep, csv.str(), out);
  switch (r.status) {
    case Status::ok: return kOk;
    case Status::not_applicable: return kNotApplicable;
    default: return kInconclusive;
  }
}

int cmd_sharp(const std::string& qspec, int n, double delta, std::optional<int> k, bool normalize,
              double clearance, const Common& c, std::ostream& out) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("--delta must lie in (0, 1)");
  const Config cfg = build_config(c);
  const QField q = parse_qspec(qspec, n);
  SharpnessOptions opts;
  opts.k = k;
  opts.normalize_by_K = normalize;
  opts.clearance = clearance;
  const SharpnessPlan plan = build_sharpness(q, delta, n, cfg, opts);

  json rep = header("sharp");
  rep["n"] = n;
  rep["q"] = q.describe();
  rep["delta"] = num(plan.delta);
  rep["k"] = plan.k;
  rep["K"] = num(plan.K);
  rep["normalized"] = plan.normalized;
  rep["q_tilde"] = plan.q_tilde.describe();
  rep["domain_radius"] = num(plan.domain_radius);
  rep["sigma"] = num(plan.sigma);
  rep["axis"] = {{"base", nums(plan.axis.base)}, {"u", nums(plan.axis.u)}, {"v", nums(plan.axis.v)}};
  rep["axis_clearance"] = num(plan.axis_clearance);
  rep["composed"] = plan.composed.label;
  rep["witnesses"] = json::array({witness_json(plan.witness)});
  json rings = json::array();
  for (const RingCheck& rc : plan.ring_checks_q_tilde) {
    json j = ring_json(rc);
    j["against"] = "q_tilde";
    rings.push_back(j);
  }
  for (const RingCheck& rc : plan.ring_checks_bound) {
    json j = ring_json(rc);
    j["against"] = plan.normalized ? "q" : "K*q";
    rings.push_back(j);
  }
  rep["ring_checks"] = rings;
  rep["caveats"] = plan.caveats;
  rep["config"] = config_json(cfg);

  Csv csv({"r", "rho"});
  const auto& st = std::get<RadialStretch>(plan.stretch.kind);
  for (double r : log_grid(1e-6, plan.domain_radius, 61)) csv.row({cell(r), cell(st.rho(r))});
  emit(c, rep, csv.str(), out);
  return kOk;
}

int cmd_verify(const std::string& mapspec, const std::string& qspec, int n, double r1, double r2,
               const Common& c, std::ostream& out) {
  const Config cfg = build_config(c);
  const MapSpec f = parse_mapspec(mapspec, n, cfg);
  const QField q = parse_qspec(qspec, n);
  const RingCheck rc = verify_ring_inequality(f, q, r1, r2, n, cfg);
  json rep = header("verify");
  rep["n"] = n;
  rep["map"] = f.label;
  rep["q"] = q.describe();
  rep["ring_checks"] = json::array({ring_json(rc)});
  rep["config"] = config_json(cfg);
  Csv csv({"r1", "r2", "lhs_modulus", "rhs_bound", "passed", "slack"});
  csv.row({cell(rc.r1), cell(rc.r2), cell(rc.lhs_modulus), cell(rc.rhs_bound),
           rc.passed ? "true" : "false", cell(rc.slack)});
  emit(c, rep, csv.str(), out);
  return kOk;
}

const char* branch_name(KorBranch b) {
  switch (b) {
    case KorBranch::origin_and_b: return "origin_and_b";
    case KorBranch::a_and_b: return "a_and_b";
    default: return "neither";
  }
}

int cmd_kor(const std::string& a_s, const std::string& b_s, double r, int t_count,
            const std::string& p_s, const Common& c, std::ostream& out) {
  const Config cfg = build_config(c);
  const Point a = parse_list(a_s, "--a");
  const Point b = parse_list(b_s, "--b");
  json rep = header("kor");
  rep["a"] = nums(a);
  rep["b"] = nums(b);
  rep["r"] = num(r);
  Point p;
  if (!p_s.empty()) {
    p = parse_list(p_s, "--p");
  } else {
    try {
      p = kor_point(a, b, r, t_count);
    } catch (const NoCertificateError& e) {
      rep["status"] = "no_certificate";
      rep["message"] = e.what();
      rep["best_candidate"] = nums(e.best_candidate());
      Csv csv({"t", "branch"});
      emit(c, rep, csv.str(), out);
      return kNotApplicable;
    }
  }
  const KorCertificate cert = kor_verify(p, a, b, r, t_count);
  rep["status"] = cert.all_pass ? "certified" : "failed";
  rep["p"] = nums(cert.p);
  rep["all_pass"] = cert.all_pass;
  json samples = json::array();
  Csv csv({"t", "branch"});
  for (std::size_t i = 0; i < cert.t_samples.size(); ++i) {
    samples.push_back({{"t", num(cert.t_samples[i])}, {"branch", branch_name(cert.branch[i])}});
    csv.row({cell(cert.t_samples[i]), branch_name(cert.branch[i])});
  }
  rep["samples"] = samples;
  rep["config"] = config_json(cfg);
  emit(c, rep, csv.str(), out);
  return cert.all_pass ? kOk : kNotApplicable;
}

int cmd_probe(const std::string& family_s, const std::string& x0_s, const std::string& radii_s,
              int n, const Common& c, std::ostream& out) {
  const Config cfg = build_config(c);
  std::vector<MapSpec> family;
  for (const std::string& s : split_family(family_s)) family.push_back(parse_mapspec(s, n, cfg));
  Point x0 = parse_list(x0_s, "--x0");
  if (x0.size() == 1 && n > 1) x0.assign(n, x0.front());
  if (static_cast<int>(x0.size()) != n) throw ArgumentError("--x0 needs n coordinates");
  const std::vector<double> radii = parse_list(radii_s, "--radii");
  const ProbeTable table = equicontinuity_probe(family, x0, radii, cfg);

  json rep = header("probe");
  rep["n"] = n;
  json labels = json::array();
  for (const MapSpec& f : family) labels.push_back(f.label);
  rep["family"] = labels;
  rep["x0"] = nums(x0);
  json rows = json::array();
  Csv csv({"s", "raw", "modulus"});
  for (std::size_t i = 0; i < table.radii.size(); ++i) {
    rows.push_back({{"s", num(table.radii[i])}, {"raw", num(table.raw[i])},
                    {"modulus", num(table.modulus[i])}});
    csv.row({cell(table.radii[i]), cell(table.raw[i]), cell(table.modulus[i])});
  }
  rep["table"] = rows;
  rep["config"] = config_json(cfg);
  emit(c, rep, csv.str(), out);
  return kOk;
}

void emit_status(const Common& c, const std::string& command, const char* status,
                 const std::string& message, std::ostream& out) {
  if (c.format != "json") return;
  json rep = header(command);
  rep["status"] = status;
  rep["message"] = message;
  try {
    emit(c, rep, "", out);
  } catch (const Error&) {
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Injectivity-radius tools for ring Q-homeomorphisms", "injrad"};
  app.require_subcommand(1);

  Common common;
  std::string qspec, mapspec, method = "canonical", family, x0 = "0", radii, a, b, p;
  int n = 3;
  double delta = 0.0, r1 = 0.0, r2 = 0.0, r = 1.0, clearance = 0.05;
  std::optional<int> k;
  bool normalize = false;
  int t_count = 64;

  auto* analyze = app.add_subcommand("analyze", "profile, divergence, growth and oscillation tests");
  analyze->add_option("--q", qspec, "Q-spec")->required();
  analyze->add_option("--n", n, "dimension")->required();
  add_common(analyze, common);

  auto* radius = app.add_subcommand("radius", "lower bound for the injectivity radius");
  radius->add_option("--q", qspec, "Q-spec")->required();
  radius->add_option("--n", n, "dimension")->required();
  radius->add_option("--method", method, "canonical, log_growth or fmo")
      ->check(CLI::IsMember({"canonical", "log_growth", "fmo"}));
  add_common(radius, common);

  auto* sharp = app.add_subcommand("sharp", "non-injective example for a convergent integral");
  sharp->add_option("--q", qspec, "Q-spec")->required();
  sharp->add_option("--n", n, "dimension")->required();
  sharp->add_option("--delta", delta, "radius of the ball that must contain the witness")->required();
  sharp->add_option("--k", k, "winding order (default: smallest feasible)");
  sharp->add_flag("--normalize-by-k", normalize, "divide the outer part of Q~ by K");
  sharp->add_option("--clearance", clearance, "axis distance beyond the image ball");
  add_common(sharp, common);

  auto* verify = app.add_subcommand("verify", "ring modulus check for a radial stretch");
  verify->add_option("--map", mapspec, "map spec")->required();
  verify->add_option("--q", qspec, "Q-spec")->required();
  verify->add_option("--n", n, "dimension")->required();
  verify->add_option("--r1", r1, "inner radius")->required();
  verify->add_option("--r2", r2, "outer radius")->required();
  add_common(verify, common);

  auto* kor = app.add_subcommand("kor", "separating point for two points on a sphere");
  kor->add_option("--a", a, "first point, comma separated")->required();
  kor->add_option("--b", b, "second point, comma separated")->required();
  kor->add_option("--r", r, "sphere radius");
  kor->add_option("--t-count", t_count, "number of t samples");
  kor->add_option("--p", p, "candidate to verify instead of searching");
  add_common(kor, common);

  auto* probe = app.add_subcommand("probe", "sampled modulus of continuity of a family");
  probe->add_option("--family", family, "comma separated map specs")->required();
  probe->add_option("--x0", x0, "centre, comma separated or a single broadcast value");
  probe->add_option("--radii", radii, "increasing radii, comma separated")->required();
  probe->add_option("--n", n, "dimension")->required();
  add_common(probe, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (sub == analyze) return cmd_analyze(qspec, n, common, out);
    if (sub == radius) return cmd_radius(qspec, n, method, common, out);
    if (sub == sharp) return cmd_sharp(qspec, n, delta, k, normalize, clearance, common, out);
    if (sub == verify) return cmd_verify(mapspec, qspec, n, r1, r2, common, out);
    if (sub == kor) return cmd_kor(a, b, r, t_count, p, common, out);
    return cmd_probe(family, x0, radii, n, common, out);
  } catch (const NotApplicableError& e) {
    err << "not applicable: " << e.what() << "\n";
    emit_status(common, name, "not_applicable", e.what(), out);
    return kNotApplicable;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    emit_status(common, name, "inconclusive", e.what(), out);
    return kInconclusive;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedMapError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace injrad::cli

#include "vctl/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "vctl/core/error.hpp"
#include "vctl/core/grid.hpp"

extern char** environ;

namespace vctl::cli {

double RunConfig::dt() const { return grid.final_time / steps(); }

int RunConfig::steps() const {
  if (grid.cfl > 0.0) {
    const double dx = 2.0 * grid.x_extent / grid.nx;
    const double target = grid.cfl * dx / std::sqrt(2.0);
    return std::max(1, static_cast<int>(std::ceil(grid.final_time / target - 1e-12)));
  }
  return grid.nt;
}

namespace {

std::string line_of(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  if (m.line < 0) return "";
  return "line " + std::to_string(m.line + 1) + ": ";
}

/// Decodes one mapping, recording type errors and unknown keys instead of throwing.
class Reader {
 public:
  Reader(const YAML::Node& node, std::string path, std::vector<std::string>& errors)
      : node_(node), path_(std::move(path)), errors_(errors) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      errors_.push_back(line_of(node_) + path_ + ": expected a mapping");
      valid_ = false;
    }
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!valid_ || !node_ || node_.IsNull()) return;
    const YAML::Node v = node_[key];
    if (!v || v.IsNull()) return;
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      errors_.push_back(line_of(v) + name(key) + ": cannot read value '" + scalar(v) + "'");
    }
  }

  void get(const char* key, Vec2& out) {
    std::vector<double> xs;
    const std::size_t before = errors_.size();
    get(key, xs);
    if (errors_.size() != before || !has(key)) return;
    if (xs.size() != 2) {
      errors_.push_back(line_of(node_[key]) + name(key) + ": expected two components");
      return;
    }
    out = {xs[0], xs[1]};
  }

  Reader child(const char* key) {
    seen_.insert(key);
    if (!valid_ || !node_ || node_.IsNull()) return Reader(YAML::Node(), name(key), errors_);
    return Reader(node_[key], name(key), errors_);
  }

  bool has(const char* key) const {
    return valid_ && node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
  }
  YAML::Node raw(const char* key) {
    seen_.insert(key);
    return has(key) ? node_[key] : YAML::Node();
  }
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  /// Reports keys that were never requested.
  void finish() {
    if (!valid_ || !node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string k = kv.first.as<std::string>();
      if (!seen_.count(k)) errors_.push_back(line_of(kv.first) + "unknown key '" + name(k) + "'");
    }
  }

  std::vector<std::string>& errors() { return errors_; }

 private:
  static std::string scalar(const YAML::Node& v) { return v.IsScalar() ? v.Scalar() : "<structure>"; }

  YAML::Node node_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
  bool valid_ = true;
};

void read_waveform(Reader r, WaveformConfig& w) {
  r.get("amplitude", w.amplitude);
  r.get("frequency", w.frequency);
  r.get("phase", w.phase);
  r.finish();
}

void read_coil_list(const YAML::Node& list, const std::string& path, std::vector<CoilSpec>& out,
                    std::vector<std::string>& errors) {
  if (!list || list.IsNull()) return;
  if (!list.IsSequence()) {
    errors.push_back(line_of(list) + path + ": expected a sequence of coils");
    return;
  }
  out.clear();
  for (std::size_t k = 0; k < list.size(); ++k) {
    Reader r(list[k], path + "[" + std::to_string(k) + "]", errors);
    CoilSpec c;
    std::string shape = to_string(c.shape);
    r.get("shape", shape);
    try {
      c.shape = coil_shape_from_string(shape);
    } catch (const ConfigError& e) {
      errors.push_back(line_of(list[k]) + r.name("shape") + ": " + e.what());
    }
    r.get("center", c.center);
    r.get("radius", c.radius);
    r.get("amplitude", c.amplitude);
    r.get("angle", c.angle);
    r.finish();
    out.push_back(c);
  }
}

void decode(const YAML::Node& root, RunConfig& c, std::vector<std::string>& errors) {
  Reader top(root, "", errors);
  {
    Reader r = top.child("grid");
    r.get("x_extent", c.grid.x_extent);
    r.get("p_extent", c.grid.p_extent);
    r.get("nx", c.grid.nx);
    r.get("np", c.grid.np);
    r.get("final_time", c.grid.final_time);
    r.get("nt", c.grid.nt);
    r.get("cfl", c.grid.cfl);
    r.finish();
  }
  {
    Reader r = top.child("initial");
    r.get("profile", c.initial.profile);
    r.get("background", c.initial.background);
    r.get("separation", c.initial.separation);
    r.get("path", c.initial.path);
    Reader b = r.child("blob");
    BlobConfig& blob = c.initial.blob;
    b.get("center", blob.center);
    b.get("drift", blob.drift);
    b.get("sigma_x", blob.sigma_x);
    b.get("sigma_p", blob.sigma_p);
    b.get("radius_x", blob.radius_x);
    b.get("radius_p", blob.radius_p);
    b.get("amplitude", blob.amplitude);
    b.finish();
    r.finish();
  }
  {
    Reader r = top.child("coils");
    r.get("preset", c.coils.preset);
    r.get("count", c.coils.count);
    r.get("offset", c.coils.offset);
    r.get("radius", c.coils.radius);
    r.get("amplitude", c.coils.amplitude);
    read_coil_list(r.raw("list"), r.name("list"), c.coils.list, errors);
    r.finish();
  }
  {
    Reader r = top.child("control");
    r.get("source", c.control.source);
    r.get("path", c.control.path);
    read_waveform(r.child("waveform"), c.control.waveform);
    r.finish();
  }
  {
    Reader r = top.child("objective");
    r.get("target", c.objective.target);
    r.get("path", c.objective.path);
    r.get("beta", c.objective.beta);
    r.get("beta1", c.objective.beta1);
    r.get("beta2", c.objective.beta2);
    r.get("tracking", c.objective.tracking);
    read_waveform(r.child("twin"), c.objective.twin);
    r.finish();
  }
  {
    Reader r = top.child("optimizer");
    OptimizerConfig& o = c.optimizer;
    r.get("max_iters", o.max_iters);
    r.get("c1", o.c1);
    r.get("backtrack", o.backtrack);
    r.get("initial_step", o.initial_step);
    r.get("pg_tolerance", o.pg_tolerance);
    r.get("objective_tolerance", o.objective_tolerance);
    r.get("max_backtracks", o.max_backtracks);
    r.get("barzilai_borwein", o.barzilai_borwein);
    r.finish();
  }
  {
    Reader r = top.child("gradcheck");
    r.get("directions", c.gradcheck.directions);
    r.get("seed", c.gradcheck.seed);
    r.get("modes", c.gradcheck.modes);
    r.get("epsilons", c.gradcheck.epsilons);
    r.get("base_scale", c.gradcheck.base_scale);
    r.finish();
  }
  {
    Reader r = top.child("output");
    r.get("directory", c.output.directory);
    r.get("snapshot_steps", c.output.snapshot_steps);
    r.get("snapshot_stride", c.output.snapshot_stride);
    r.get("snapshot_mode", c.output.snapshot_mode);
    r.get("snapshot_directory", c.output.snapshot_directory);
    r.finish();
  }
  {
    Reader r = top.child("run");
    r.get("threads", c.run.threads);
    r.get("fixed_point_passes", c.run.fixed_point_passes);
    r.get("abort_on_escape", c.run.abort_on_escape);
    r.get("clip_negative", c.run.clip_negative);
    r.finish();
  }
  {
    Reader r = top.child("validate");
    r.get("suites", c.validate.suites);
    r.finish();
  }
  top.finish();
}

const std::set<std::string> kSections{"grid",      "initial", "coils", "control", "objective", "optimizer",
                                      "gradcheck", "output",  "run",   "validate"};
const std::set<std::string> kSubsections{"blob", "waveform", "twin"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

/// VCTL_SECTION_KEY=value -> root[section][key] = value, with optional subsection prefix on the key.
void apply_environment(YAML::Node& root, const std::map<std::string, std::string>& env,
                       std::vector<std::string>& errors) {
  for (const auto& [name, value] : env) {
    if (name.rfind("VCTL_", 0) != 0) continue;
    const std::string rest = lower(name.substr(5));
    const auto cut = rest.find('_');
    if (cut == std::string::npos || !kSections.count(rest.substr(0, cut))) {
      errors.push_back("environment " + name + ": no config section matches");
      continue;
    }
    const std::string section = rest.substr(0, cut);
    std::string key = rest.substr(cut + 1);
    YAML::Node parsed;
    try {
      parsed = YAML::Load(value);
      // Scalars are rebuilt without a source mark so errors do not cite a line of the file.
      if (parsed.IsScalar()) parsed = YAML::Node(parsed.Scalar());
    } catch (const YAML::Exception& e) {
      errors.push_back("environment " + name + ": " + e.msg);
      continue;
    }
    if (!root[section] || !root[section].IsMap()) root[section] = YAML::Node(YAML::NodeType::Map);
    YAML::Node target = root[section];
    const auto sub = key.find('_');
    if (sub != std::string::npos && kSubsections.count(key.substr(0, sub))) {
      const std::string child = key.substr(0, sub);
      if (!target[child] || !target[child].IsMap()) target[child] = YAML::Node(YAML::NodeType::Map);
      target[child][key.substr(sub + 1)] = parsed;
    } else {
      target[key] = parsed;
    }
  }
}

double blob_x_radius(const BlobConfig& b, const Vec2& offset) { return norm(b.center + offset) + b.radius_x; }

}  // namespace

double plasma_radius(const RunConfig& c) {
  const InitialConfig& in = c.initial;
  if (in.profile == "zero") return 0.0;
  if (in.profile == "two-bump") {
    const Vec2 h{0.5 * in.separation, 0.0};
    return std::max(blob_x_radius(in.blob, h), blob_x_radius(in.blob, -h));
  }
  if (in.profile == "gaussian-blob") return blob_x_radius(in.blob, {});
  return c.grid.x_extent;
}

double plasma_momentum_radius(const RunConfig& c) {
  const InitialConfig& in = c.initial;
  if (in.profile == "zero") return 0.0;
  if (in.profile == "gaussian-blob" || in.profile == "two-bump") return norm(in.blob.drift) + in.blob.radius_p;
  return 0.0;
}

std::vector<CoilSpec> coil_specs(const CoilsConfig& k) {
  std::vector<CoilSpec> out;
  if (k.preset == "ring-coil") {
    for (int j = 0; j < k.count; ++j) {
      const double a = 2.0 * std::numbers::pi * j / std::max(k.count, 1);
      CoilSpec s;
      s.shape = CoilShape::ring;
      s.center = {k.offset * std::cos(a), k.offset * std::sin(a)};
      s.radius = k.radius;
      s.amplitude = k.amplitude;
      out.push_back(s);
    }
  } else if (k.preset == "crossed-coils") {
    for (int j = 0; j < 2; ++j) {
      CoilSpec s;
      s.shape = CoilShape::straight;
      s.center = {};
      s.radius = k.radius;
      s.amplitude = k.amplitude;
      s.angle = 0.5 * std::numbers::pi * j;
      out.push_back(s);
    }
  } else if (k.preset == "list") {
    out = k.list;
  }
  return out;
}

std::vector<std::string> config_violations(const RunConfig& c) {
  std::vector<std::string> v;
  const GridConfig& g = c.grid;
  if (!(g.x_extent > 0.0)) v.push_back("grid.x_extent must be positive");
  if (!(g.p_extent > 0.0)) v.push_back("grid.p_extent must be positive");
  if (g.nx < 8) v.push_back("grid.nx must be at least 8");
  if (g.np < 8) v.push_back("grid.np must be at least 8");
  if (!(g.final_time > 0.0)) v.push_back("grid.final_time must be positive");
  if (g.cfl < 0.0 || g.cfl > 1.0) v.push_back("grid.cfl must lie in [0, 1] (0 selects grid.nt)");
  if (g.cfl == 0.0 && g.nt < 1) v.push_back("grid.nt must be at least 1");
  const bool grid_ok = g.x_extent > 0.0 && g.nx > 0 && g.final_time > 0.0 && (g.cfl > 0.0 || g.nt > 0);
  if (grid_ok) {
    const double dx = 2.0 * g.x_extent / g.nx;
    const double bound = dx / std::sqrt(2.0);
    const double dt = c.dt();
    if (dt > bound * (1.0 + 1e-12)) {
      std::ostringstream s;
      s.precision(6);
      s << "grid: dt = " << dt << " violates the CFL bound dt <= dx/sqrt(2) = " << bound << " (dx = " << dx
        << ")";
      v.push_back(s.str());
    }
  }

  const InitialConfig& in = c.initial;
  static const std::set<std::string> profiles{"gaussian-blob", "two-bump", "zero", "file"};
  if (!profiles.count(in.profile))
    v.push_back("initial.profile '" + in.profile + "' is not one of gaussian-blob, two-bump, zero, file");
  if (in.background != "local")
    v.push_back("initial.background '" + in.background +
                "' is not supported: only 'local' gives compactly supported initial fields");
  if (in.profile == "file" && in.path.empty()) v.push_back("initial.path is required for profile 'file'");
  const BlobConfig& b = in.blob;
  if (in.profile == "gaussian-blob" || in.profile == "two-bump") {
    if (!(b.sigma_x > 0.0) || !(b.sigma_p > 0.0)) v.push_back("initial.blob: sigma_x and sigma_p must be positive");
    if (!(b.radius_x > 0.0) || !(b.radius_p > 0.0))
      v.push_back("initial.blob: radius_x and radius_p must be positive");
    if (in.profile == "two-bump" && !(in.separation >= 0.0)) v.push_back("initial.separation must be non-negative");
    const double rp = plasma_momentum_radius(c);
    if (!(g.p_extent > rp)) {
      std::ostringstream s;
      s << "grid.p_extent = " << g.p_extent << " must exceed the plasma momentum support " << rp;
      v.push_back(s.str());
    }
  }

  const CoilsConfig& k = c.coils;
  static const std::set<std::string> presets{"ring-coil", "crossed-coils", "none", "list"};
  if (!presets.count(k.preset))
    v.push_back("coils.preset '" + k.preset + "' is not one of ring-coil, crossed-coils, none, list");
  if (k.preset == "ring-coil" && k.count < 1) v.push_back("coils.count must be at least 1");
  if (k.preset == "list" && k.list.empty()) v.push_back("coils.list is empty for preset 'list'");
  const std::vector<CoilSpec> coils = coil_specs(k);
  double L = 0.0;
  for (std::size_t j = 0; j < coils.size(); ++j) {
    const CoilSpec& s = coils[j];
    const std::string who = "coil " + std::to_string(j);
    if (!(s.radius > 0.0)) v.push_back(who + ": radius must be positive");
    const double r = s.support_radius();
    L = std::max(L, r);
    if (s.radius > r + 1e-15) v.push_back(who + ": radius exceeds its support radius");
  }
  if (L > g.x_extent) {
    std::ostringstream s;
    s << "coils: support radius L = " << L << " exceeds grid.x_extent = " << g.x_extent;
    v.push_back(s.str());
  }
  {
    const double R = plasma_radius(c);
    const double R_field = 0.0;
    const double required = R_field + L + R + g.final_time;
    if (in.profile != "file" && required > g.x_extent * (1.0 + 1e-12)) {
      std::ostringstream s;
      s << "support inequality violated: fields can reach |x| = R~ + L + R + T = " << R_field << " + " << L << " + "
        << R << " + " << g.final_time << " = " << required << ", which needs grid.x_extent >= " << required
        << " (have " << g.x_extent << ", short by " << required - g.x_extent << ")";
      v.push_back(s.str());
    }
  }

  const auto check_waveform = [&](const WaveformConfig& w, const std::string& where) {
    const std::size_t n = coils.size();
    if (w.amplitude.size() != n || w.frequency.size() != n || w.phase.size() != n)
      v.push_back(where + ": amplitude, frequency and phase need one entry per coil (" + std::to_string(n) + ")");
    for (double a : w.amplitude)
      if (!(std::abs(a) <= 1.0)) {
        v.push_back(where + ": |amplitude| must be <= 1 for a feasible control");
        break;
      }
  };
  static const std::set<std::string> sources{"zeros", "waveform", "file"};
  if (!sources.count(c.control.source))
    v.push_back("control.source '" + c.control.source + "' is not one of zeros, waveform, file");
  if (c.control.source == "waveform") check_waveform(c.control.waveform, "control.waveform");
  if (c.control.source == "file" && c.control.path.empty()) v.push_back("control.path is required for source 'file'");

  const ObjectiveConfig& o = c.objective;
  static const std::set<std::string> targets{"zero", "twin", "file"};
  if (!targets.count(o.target)) v.push_back("objective.target '" + o.target + "' is not one of zero, twin, file");
  if (o.target == "twin") check_waveform(o.twin, "objective.twin");
  if (o.target == "file" && o.path.empty()) v.push_back("objective.path is required for target 'file'");
  if (!(o.beta >= 0.0) || !(o.beta1 >= 0.0) || !(o.beta2 >= 0.0))
    v.push_back("objective: beta, beta1 and beta2 must be non-negative");

  for (const std::string& s : c.optimizer.violations()) v.push_back("optimizer: " + s);

  const GradcheckConfig& gc = c.gradcheck;
  if (gc.directions < 1) v.push_back("gradcheck.directions must be at least 1");
  if (gc.modes < 1) v.push_back("gradcheck.modes must be at least 1");
  if (gc.epsilons.empty()) v.push_back("gradcheck.epsilons must not be empty");
  for (double e : gc.epsilons)
    if (!(e > 0.0)) {
      v.push_back("gradcheck.epsilons must be positive");
      break;
    }

  if (c.output.directory.empty()) v.push_back("output.directory must not be empty");
  if (c.output.snapshot_stride < 1) v.push_back("output.snapshot_stride must be at least 1");
  if (c.output.snapshot_mode != "interpolate" && c.output.snapshot_mode != "recompute")
    v.push_back("output.snapshot_mode '" + c.output.snapshot_mode + "' is not one of interpolate, recompute");
  for (int s : c.output.snapshot_steps)
    if (s < 0 || (grid_ok && s > c.steps())) {
      v.push_back("output.snapshot_steps entry " + std::to_string(s) + " is outside [0, " +
                  std::to_string(grid_ok ? c.steps() : 0) + "]");
    }

  if (c.run.threads < 1) v.push_back("run.threads must be at least 1");
  if (c.run.fixed_point_passes < 0 || c.run.fixed_point_passes > 2) v.push_back("run.fixed_point_passes must lie in [0, 2]");
  if (c.validate.suites.empty()) v.push_back("validate.suites must not be empty");
  return v;
}

RunConfig parse_config_string(const std::string& text, const std::map<std::string, std::string>& env) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  std::vector<std::string> errors;
  if (!root.IsMap()) throw ConfigError(line_of(root) + "top level must be a mapping of sections");
  apply_environment(root, env, errors);
  RunConfig c;
  decode(root, c, errors);
  for (std::string& s : config_violations(c)) errors.push_back(std::move(s));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), config_environment());
}

std::map<std::string, std::string> config_environment() {
  std::map<std::string, std::string> env;
  for (char** e = environ; e && *e; ++e) {
    const std::string kv(*e);
    if (kv.rfind("VCTL_", 0) != 0) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    env[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return env;
}

namespace {

void emit(YAML::Emitter& out, const Vec2& v) { out << YAML::Flow << YAML::BeginSeq << v.x1 << v.x2 << YAML::EndSeq; }

template <class T>
void emit(YAML::Emitter& out, const std::vector<T>& xs) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const T& x : xs) out << x;
  out << YAML::EndSeq;
}

void emit_waveform(YAML::Emitter& out, const char* key, const WaveformConfig& w) {
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "amplitude" << YAML::Value;
  emit(out, w.amplitude);
  out << YAML::Key << "frequency" << YAML::Value;
  emit(out, w.frequency);
  out << YAML::Key << "phase" << YAML::Value;
  emit(out, w.phase);
  out << YAML::EndMap;
}

}  // namespace

std::string dump_config(const RunConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "x_extent" << YAML::Value << c.grid.x_extent;
  out << YAML::Key << "p_extent" << YAML::Value << c.grid.p_extent;
  out << YAML::Key << "nx" << YAML::Value << c.grid.nx;
  out << YAML::Key << "np" << YAML::Value << c.grid.np;
  out << YAML::Key << "final_time" << YAML::Value << c.grid.final_time;
  out << YAML::Key << "nt" << YAML::Value << c.grid.nt;
  out << YAML::Key << "cfl" << YAML::Value << c.grid.cfl;
  out << YAML::EndMap;

  const BlobConfig& b = c.initial.blob;
  out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "profile" << YAML::Value << c.initial.profile;
  out << YAML::Key << "background" << YAML::Value << c.initial.background;
  out << YAML::Key << "blob" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "center" << YAML::Value;
  emit(out, b.center);
  out << YAML::Key << "drift" << YAML::Value;
  emit(out, b.drift);
  out << YAML::Key << "sigma_x" << YAML::Value << b.sigma_x;
  out << YAML::Key << "sigma_p" << YAML::Value << b.sigma_p;
  out << YAML::Key << "radius_x" << YAML::Value << b.radius_x;
  out << YAML::Key << "radius_p" << YAML::Value << b.radius_p;
  out << YAML::Key << "amplitude" << YAML::Value << b.amplitude;
  out << YAML::EndMap;
  out << YAML::Key << "separation" << YAML::Value << c.initial.separation;
  out << YAML::Key << "path" << YAML::Value << c.initial.path;
  out << YAML::EndMap;

  out << YAML::Key << "coils" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << c.coils.preset;
  out << YAML::Key << "count" << YAML::Value << c.coils.count;
  out << YAML::Key << "offset" << YAML::Value << c.coils.offset;
  out << YAML::Key << "radius" << YAML::Value << c.coils.radius;
  out << YAML::Key << "amplitude" << YAML::Value << c.coils.amplitude;
  out << YAML::Key << "list" << YAML::Value << YAML::BeginSeq;
  for (const CoilSpec& s : c.coils.list) {
    out << YAML::BeginMap;
    out << YAML::Key << "shape" << YAML::Value << to_string(s.shape);
    out << YAML::Key << "center" << YAML::Value;
    emit(out, s.center);
    out << YAML::Key << "radius" << YAML::Value << s.radius;
    out << YAML::Key << "amplitude" << YAML::Value << s.amplitude;
    out << YAML::Key << "angle" << YAML::Value << s.angle;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "control" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "source" << YAML::Value << c.control.source;
  emit_waveform(out, "waveform", c.control.waveform);
  out << YAML::Key << "path" << YAML::Value << c.control.path;
  out << YAML::EndMap;

  const ObjectiveConfig& o = c.objective;
  out << YAML::Key << "objective" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "target" << YAML::Value << o.target;
  emit_waveform(out, "twin", o.twin);
  out << YAML::Key << "path" << YAML::Value << o.path;
  out << YAML::Key << "beta" << YAML::Value << o.beta;
  out << YAML::Key << "beta1" << YAML::Value << o.beta1;
  out << YAML::Key << "beta2" << YAML::Value << o.beta2;
  out << YAML::Key << "tracking" << YAML::Value << o.tracking;
  out << YAML::EndMap;

  const OptimizerConfig& op = c.optimizer;
  out << YAML::Key << "optimizer" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "max_iters" << YAML::Value << op.max_iters;
  out << YAML::Key << "c1" << YAML::Value << op.c1;
  out << YAML::Key << "backtrack" << YAML::Value << op.backtrack;
  out << YAML::Key << "initial_step" << YAML::Value << op.initial_step;
  out << YAML::Key << "pg_tolerance" << YAML::Value << op.pg_tolerance;
  out << YAML::Key << "objective_tolerance" << YAML::Value << op.objective_tolerance;
  out << YAML::Key << "max_backtracks" << YAML::Value << op.max_backtracks;
  out << YAML::Key << "barzilai_borwein" << YAML::Value << op.barzilai_borwein;
  out << YAML::EndMap;

  out << YAML::Key << "gradcheck" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directions" << YAML::Value << c.gradcheck.directions;
  out << YAML::Key << "seed" << YAML::Value << c.gradcheck.seed;
  out << YAML::Key << "modes" << YAML::Value << c.gradcheck.modes;
  out << YAML::Key << "epsilons" << YAML::Value;
  emit(out, c.gradcheck.epsilons);
  out << YAML::Key << "base_scale" << YAML::Value << c.gradcheck.base_scale;
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "directory" << YAML::Value << c.output.directory;
  out << YAML::Key << "snapshot_steps" << YAML::Value;
  emit(out, c.output.snapshot_steps);
  out << YAML::Key << "snapshot_stride" << YAML::Value << c.output.snapshot_stride;
  out << YAML::Key << "snapshot_mode" << YAML::Value << c.output.snapshot_mode;
  out << YAML::Key << "snapshot_directory" << YAML::Value << c.output.snapshot_directory;
  out << YAML::EndMap;

  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "threads" << YAML::Value << c.run.threads;
  out << YAML::Key << "fixed_point_passes" << YAML::Value << c.run.fixed_point_passes;
  out << YAML::Key << "abort_on_escape" << YAML::Value << c.run.abort_on_escape;
  out << YAML::Key << "clip_negative" << YAML::Value << c.run.clip_negative;
  out << YAML::EndMap;

  out << YAML::Key << "validate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "suites" << YAML::Value;
  emit(out, c.validate.suites);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace vctl::cli

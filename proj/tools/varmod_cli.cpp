// command-line front end: binds flat key=value configs to the library
// operations and writes reproducible CSV + summary artifacts.
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "varmod/exponents.hpp"
#include "varmod/falsifier.hpp"
#include "varmod/geometry.hpp"
#include "varmod/modular.hpp"
#include "varmod/operators.hpp"
#include "varmod/verifier.hpp"

namespace {

using namespace varmod;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = comma == std::string::npos ? s.substr(start)
                                                  : s.substr(start, comma - start);
    out.push_back(trim(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Flat INI-style config: [section] headers, key = value lines, full-line #
// comments. Keys the active command never reads are typos and rejected.
class Config {
 public:
  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config: " + path);
    Config cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      const std::string where = path + ":" + std::to_string(lineno);
      if (t.front() == '[') {
        if (t.back() != ']')
          throw validation_error(where + ": malformed section header");
        section = trim(t.substr(1, t.size() - 2));
        if (section.empty())
          throw validation_error(where + ": empty section name");
        cfg.sections_[section];
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw validation_error(where + ": expected key = value");
      const std::string key = trim(t.substr(0, eq));
      const std::string val = trim(t.substr(eq + 1));
      if (key.empty()) throw validation_error(where + ": empty key");
      if (section.empty())
        throw validation_error(where + ": key outside any [section]");
      if (!cfg.sections_[section].emplace(key, val).second)
        throw validation_error(where + ": duplicate key '" + key + "'");
    }
    return cfg;
  }

  bool has_section(const std::string& sec) const {
    return sections_.count(sec) != 0;
  }

  std::optional<std::string> get(const std::string& sec, const std::string& key) {
    used_sections_.insert(sec);
    const auto s = sections_.find(sec);
    if (s == sections_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    consumed_.insert({sec, key});
    return k->second;
  }

  std::string require(const std::string& sec, const std::string& key) {
    auto v = get(sec, key);
    if (!v) throw validation_error("[" + sec + "] is missing key '" + key + "'");
    return *v;
  }

  double to_double(const std::string& sec, const std::string& key,
                   const std::string& raw) const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size() || raw.empty() || errno == ERANGE)
      throw validation_error("[" + sec + "] " + key + ": not a number: '" + raw + "'");
    return v;
  }

  double require_double(const std::string& sec, const std::string& key) {
    return to_double(sec, key, require(sec, key));
  }

  double get_double(const std::string& sec, const std::string& key, double dflt) {
    auto v = get(sec, key);
    return v ? to_double(sec, key, *v) : dflt;
  }

  long long to_int(const std::string& sec, const std::string& key,
                   const std::string& raw) const {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(raw.c_str(), &end, 10);
    if (end != raw.c_str() + raw.size() || raw.empty() || errno == ERANGE)
      throw validation_error("[" + sec + "] " + key + ": not an integer: '" + raw + "'");
    return v;
  }

  int require_int(const std::string& sec, const std::string& key) {
    return static_cast<int>(to_int(sec, key, require(sec, key)));
  }

  int get_int(const std::string& sec, const std::string& key, int dflt) {
    auto v = get(sec, key);
    return v ? static_cast<int>(to_int(sec, key, *v)) : dflt;
  }

  Point require_point(const std::string& sec, const std::string& key) {
    const auto parts = split_list(require(sec, key));
    std::vector<double> coords;
    for (const auto& p : parts) coords.push_back(to_double(sec, key, p));
    if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim))
      throw validation_error("[" + sec + "] " + key + ": bad coordinate count");
    return make_point(coords);
  }

  // Every key inside a section the run touched must have been consumed.
  void check_all_consumed() const {
    for (const auto& sec : used_sections_) {
      const auto s = sections_.find(sec);
      if (s == sections_.end()) continue;
      for (const auto& [key, val] : s->second)
        if (!consumed_.count({sec, key}))
          throw validation_error("[" + sec + "] has unknown key '" + key + "'");
    }
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::set<std::string> used_sections_;
  std::set<std::pair<std::string, std::string>> consumed_;
};

Region build_region(Config& cfg, const std::string& name,
                    std::set<std::string>& stack) {
  const std::string sec = "region " + name;
  if (!cfg.has_section(sec))
    throw validation_error("unknown region '" + name + "' (need a [" + sec + "] section)");
  if (!stack.insert(name).second)
    throw validation_error("region '" + name + "' is defined in terms of itself");
  const std::string shape = cfg.require(sec, "shape");
  Region r = [&]() -> Region {
    if (shape == "box")
      return region_box(cfg.require_point(sec, "lo"), cfg.require_point(sec, "hi"));
    if (shape == "disk")
      return region_disk(cfg.require_point(sec, "center"),
                         cfg.require_double(sec, "radius"));
    if (shape == "annulus")
      return region_annulus(cfg.require_point(sec, "center"),
                            cfg.require_double(sec, "inner_radius"),
                            cfg.require_double(sec, "outer_radius"));
    if (shape == "halfplane_neighborhood")
      return neighborhood_halfplane(cfg.require_point(sec, "tau"),
                                    cfg.require_double(sec, "gamma"));
    if (shape == "union") {
      std::vector<Region> members;
      for (const auto& m : split_list(cfg.require(sec, "members"))) {
        if (m.empty())
          throw validation_error("[" + sec + "] members: empty member name");
        members.push_back(build_region(cfg, m, stack));
      }
      return region_union(std::move(members));
    }
    throw validation_error("[" + sec + "] unknown shape '" + shape + "'");
  }();
  stack.erase(name);
  return r;
}

Region build_region(Config& cfg, const std::string& name) {
  std::set<std::string> stack;
  return build_region(cfg, name, stack);
}

Domain build_domain(Config& cfg) {
  const std::string kind = cfg.require("run", "domain");
  if (kind == "disk") return disk_domain();
  if (kind == "halfplane") return halfplane_domain();
  if (kind == "halfspace") return halfspace_domain(cfg.require_int("run", "dimension"));
  throw validation_error("[run] unknown domain '" + kind + "'");
}

KernelId build_kernel(Config& cfg, const std::string& sec) {
  const std::string name = cfg.require(sec, "kernel");
  if (name == "bergman_disk") return bergman_disk_kernel();
  if (name == "bergman_halfplane") return bergman_halfplane_kernel();
  if (name == "harmonic_halfspace")
    return harmonic_halfspace_kernel(cfg.require_int(sec, "dimension"));
  throw validation_error("[" + sec + "] unknown kernel '" + name + "'");
}

std::string kernel_name(const KernelId& id) {
  switch (id.tag) {
    case KernelId::Tag::BergmanDisk: return "bergman_disk";
    case KernelId::Tag::BergmanHalfPlane: return "bergman_halfplane";
    case KernelId::Tag::HarmonicHalfSpace:
      return "harmonic_halfspace(" + std::to_string(id.dimension) + ")";
  }
  return "?";
}

ExponentField build_exponent(Config& cfg, const Domain& domain) {
  const std::string kind = cfg.require("exponent", "kind");
  if (kind == "constant")
    return constant_exponent(domain, cfg.require_double("exponent", "value"));
  if (kind == "radial") {
    std::vector<double> coeffs;
    for (const auto& c : split_list(cfg.require("exponent", "coeffs")))
      coeffs.push_back(cfg.to_double("exponent", "coeffs", c));
    return radial_exponent(domain, std::move(coeffs));
  }
  if (kind == "two_level") {
    Region rm = build_region(cfg, cfg.require("exponent", "region_minus"));
    Region rp = build_region(cfg, cfg.require("exponent", "region_plus"));
    return two_level_exponent(domain, std::move(rm),
                              cfg.require_double("exponent", "value_minus"),
                              std::move(rp),
                              cfg.require_double("exponent", "value_plus"),
                              cfg.require_double("exponent", "background"));
  }
  throw validation_error("[exponent] unknown kind '" + kind + "'");
}

struct Flags {
  std::string config_path;
  std::string out_override;
  bool strict = false;
  bool force = false;
  int resolution = 0;   // 0: take the config value
  long long seed = -1;  // <0: take the config value
};

struct RunOutput {
  std::string csv;
  std::string summary;
  bool strict_failed = false;
  std::string strict_reason;
};

int pick_resolution(Config& cfg, const std::string& sec, const Flags& fl) {
  // the config key is still read (and consumed) when the flag overrides it
  if (fl.resolution > 0) {
    cfg.get_int(sec, "resolution", fl.resolution);
    return fl.resolution;
  }
  return cfg.require_int(sec, "resolution");
}

RunOutput run_norm(Config& cfg, const Flags& fl) {
  const Domain domain = build_domain(cfg);
  const ExponentField p = build_exponent(cfg, domain);
  const std::string region_name = cfg.require("norm", "region");
  const Region support = build_region(cfg, region_name);
  const std::string grid_name =
      cfg.get("norm", "grid_region").value_or(region_name);
  const Region grid_region =
      grid_name == region_name ? support : build_region(cfg, grid_name);
  const double scale = cfg.get_double("norm", "scale", 1.0);
  const double tol = cfg.get_double("norm", "tolerance", 1e-10);
  const int resolution = pick_resolution(cfg, "norm", fl);
  cfg.check_all_consumed();

  const QuadratureGrid grid = build_grid(grid_region, domain, resolution);
  const SampledFunction f = scale == 1.0 ? indicator(domain, support)
                                         : scaled_indicator(domain, scale, support);
  const double m = measure(support, domain);
  const double rho = modular(f, p, grid);
  const double nrm = luxemburg_norm(f, p, grid, tol);

  RunOutput out;
  out.csv = "measure,modular,luxemburg_norm\n" + fmt17(m) + "," + fmt17(rho) +
            "," + fmt17(nrm) + "\n";
  out.summary = "command: norm\nexponent: " + describe_exponent(p) +
                "\nregion: " + region_name + "\nscale: " + fmt17(scale) +
                "\nresolution: " + std::to_string(resolution) +
                "\nmeasure: " + fmt17(m) + "\nmodular: " + fmt17(rho) +
                "\nnorm: " + fmt17(nrm) + "\n";
  return out;
}

RunOutput run_project(Config& cfg, const Flags& fl) {
  const KernelId id = build_kernel(cfg, "project");
  const Domain domain = kernel_domain(id);
  const std::string source_name = cfg.require("project", "source_region");
  const std::string target_name = cfg.require("project", "target_region");
  const Region source_region = build_region(cfg, source_name);
  const Region target_region = build_region(cfg, target_name);
  const int resolution = pick_resolution(cfg, "project", fl);
  const int source_resolution =
      cfg.get_int("project", "source_resolution", resolution);
  cfg.check_all_consumed();

  const QuadratureGrid source = build_grid(source_region, domain, source_resolution);
  const QuadratureGrid targets = build_grid(target_region, domain, resolution);
  const SampledFunction f = indicator(domain, source_region);
  const auto values = project_table(id, f, targets, source);

  RunOutput out;
  std::string header;
  for (int a = 0; a < targets.dim; ++a)
    header += "x" + std::to_string(a) + ",";
  out.csv = header + "re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Point z = targets.node(i);
    std::string row;
    for (int a = 0; a < targets.dim; ++a) row += fmt17(z[a]) + ",";
    out.csv += row + fmt17(values[i].real()) + "," + fmt17(values[i].imag()) + "\n";
  }
  out.summary = "command: project\nkernel: " + kernel_name(id) +
                "\nsource: " + source_name + "\ntarget: " + target_name +
                "\nresolution: " + std::to_string(resolution) +
                "\nsource_nodes: " + std::to_string(source.size()) +
                "\ntarget_nodes: " + std::to_string(targets.size()) + "\n";
  // curvature checks only make sense on single-box target grids
  if (id.tag == KernelId::Tag::HarmonicHalfSpace) {
    if (!targets.shape.empty()) {
      RealFieldGrid fg;
      fg.shape = targets.shape;
      fg.spacing = targets.spacing[0];
      fg.values.resize(values.size());
      for (std::size_t i = 0; i < values.size(); ++i)
        fg.values[i] = values[i].real();
      try {
        out.summary += "harmonicity_residual: " +
                       fmt17(harmonicity_residual(fg)) + "\n";
      } catch (const validation_error&) {
      }
    }
  } else {
    try {
      out.summary += "holomorphy_residual: " +
                     fmt17(holomorphy_residual(make_field_table(targets, values))) +
                     "\n";
    } catch (const validation_error&) {
    }
  }
  return out;
}

RunOutput run_verify(Config& cfg, const Flags& fl) {
  const KernelId id = build_kernel(cfg, "verify-lemma");
  const Region region = build_region(cfg, cfg.require("verify-lemma", "region"));
  const int trials = cfg.get_int("verify-lemma", "trials", 100);
  const int resolution = pick_resolution(cfg, "verify-lemma", fl);
  const int cfg_seed = cfg.get_int("verify-lemma", "seed", 0);
  const std::uint64_t seed = fl.seed >= 0 ? static_cast<std::uint64_t>(fl.seed)
                                          : static_cast<std::uint64_t>(cfg_seed);
  cfg.check_all_consumed();

  const LemmaReport rep = verify_lower_bound(id, region, trials, resolution, seed);

  RunOutput out;
  const int d = rep.neighborhood.dim();
  std::string header = "trial,";
  for (int a = 0; a < d; ++a) header += "e_lo" + std::to_string(a) + ",";
  for (int a = 0; a < d; ++a) header += "e_hi" + std::to_string(a) + ",";
  for (int a = 0; a < d; ++a) header += "z" + std::to_string(a) + ",";
  out.csv = header + "lhs,bound,margin\n";
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    const auto& t = rep.trials[i];
    const auto& b = std::get<BoxShape>(t.e.shape);
    std::string row = std::to_string(i) + ",";
    for (int a = 0; a < d; ++a) row += fmt17(b.lo[a]) + ",";
    for (int a = 0; a < d; ++a) row += fmt17(b.hi[a]) + ",";
    for (int a = 0; a < d; ++a) row += fmt17(t.z[a]) + ",";
    out.csv += row + fmt17(t.lhs) + "," + fmt17(t.bound) + "," +
               fmt17(t.margin) + "\n";
  }
  out.summary = "command: verify-lemma\nkernel: " + kernel_name(id) +
                "\ntrials: " + std::to_string(trials) +
                "\nresolution: " + std::to_string(resolution) +
                "\nseed: " + std::to_string(seed) +
                "\nc_tau: " + fmt17(rep.c_tau) +
                "\nmin_margin: " + fmt17(rep.min_margin) +
                "\ntol_quadrature: " + fmt17(rep.tol_quadrature) +
                "\nverified: " + (rep.verified ? "true" : "false") + "\n";
  if (fl.strict && !rep.verified) {
    out.strict_failed = true;
    out.strict_reason = "lemma not verified: min_margin " + fmt17(rep.min_margin) +
                        " below -tol " + fmt17(-rep.tol_quadrature);
  }
  return out;
}

RunOutput run_falsify(Config& cfg, const Flags& fl) {
  const KernelId id = build_kernel(cfg, "falsify");
  const Domain domain = kernel_domain(id);
  const ExponentField p = build_exponent(cfg, domain);
  const Region region = build_region(cfg, cfg.require("falsify", "region"));
  const Point tau = cfg.require_point("falsify", "tau");
  const double k_min = cfg.get_double("falsify", "k_min", 1.0);
  const double k_max = cfg.get_double("falsify", "k_max", 1e6);
  const int k_count = cfg.get_int("falsify", "k_count", 7);
  const int resolution = pick_resolution(cfg, "falsify", fl);
  const auto expect = cfg.get("falsify", "expect");
  const auto c_hyp = cfg.get("falsify", "c_hypothetical");
  if (expect && *expect != "Violated" && *expect != "Bounded")
    throw validation_error("[falsify] expect must be Violated or Bounded");
  const double c_value =
      c_hyp ? cfg.to_double("falsify", "c_hypothetical", *c_hyp) : 0.0;
  cfg.check_all_consumed();

  const auto schedule = geometric_schedule(k_min, k_max, k_count);
  const FalsificationReport rep = falsify(id, p, tau, region, schedule, resolution);

  RunOutput out;
  out.csv = "k,lhs,rhs,ratio\n";
  for (std::size_t i = 0; i < rep.k_schedule.size(); ++i)
    out.csv += fmt17(rep.k_schedule[i]) + "," + fmt17(rep.lhs[i]) + "," +
               fmt17(rep.rhs[i]) + "," + fmt17(rep.ratios[i]) + "\n";
  out.summary = "command: falsify\nkernel: " + kernel_name(id) +
                "\nexponent: " + rep.exponent +
                "\nresolution: " + std::to_string(resolution) +
                "\ns_minus: " + fmt17(rep.s_minus) +
                "\ns_plus: " + fmt17(rep.s_plus) +
                "\nc_tau: " + fmt17(rep.c_tau) +
                "\npredicted_slope: " + fmt17(rep.predicted_slope) +
                "\nfitted_slope: " + fmt17(rep.fitted_slope) +
                "\nverdict: " + verdict_name(rep.verdict) + "\n";
  if (c_hyp) {
    if (rep.verdict == Verdict::Violated) {
      const ChainWitness w = proof_chain_check(id, p, rep, c_value);
      out.summary += "c_hypothetical: " + fmt17(c_value) +
                     "\nk_star: " + fmt17(w.k_star) +
                     "\nchain_lhs_bound: " + fmt17(w.lhs_bound) +
                     "\nchain_rhs_bound: " + fmt17(w.rhs_bound) + "\n";
    } else {
      out.summary += "proof_chain: skipped (verdict Bounded)\n";
    }
  }
  if (expect) {
    const bool matched = *expect == verdict_name(rep.verdict);
    out.summary += "expect: " + *expect + "\nexpect_matched: " +
                   (matched ? "true" : "false") + "\n";
    if (fl.strict && !matched) {
      out.strict_failed = true;
      out.strict_reason = "verdict " + std::string(verdict_name(rep.verdict)) +
                          " does not match expected " + *expect;
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw validation_error("cannot open output file: " + path);
  outf.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!outf) throw validation_error("failed writing output file: " + path);
}

int run_command(const std::string& command, const Flags& fl) {
  Config cfg = Config::load(fl.config_path);
  const std::string out_path =
      !fl.out_override.empty()
          ? fl.out_override
          : cfg.get("run", "out").value_or("");
  if (out_path.empty())
    throw validation_error("no output path: pass --out or set out in [run]");
  const std::string summary_path = out_path + ".summary";
  if (!fl.force) {
    if (std::filesystem::exists(out_path))
      throw validation_error("output exists: " + out_path + " (use --force)");
    if (std::filesystem::exists(summary_path))
      throw validation_error("output exists: " + summary_path + " (use --force)");
  }

  RunOutput out;
  if (command == "norm") out = run_norm(cfg, fl);
  else if (command == "project") out = run_project(cfg, fl);
  else if (command == "verify-lemma") out = run_verify(cfg, fl);
  else out = run_falsify(cfg, fl);

  write_file(out_path, out.csv);
  write_file(summary_path, out.summary);
  std::fputs(out.summary.c_str(), stdout);
  std::printf("wrote: %s\nwrote: %s\n", out_path.c_str(), summary_path.c_str());
  if (out.strict_failed) {
    std::fprintf(stderr, "error: strict: %s\n", out.strict_reason.c_str());
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent modular analysis toolkit"};
  app.require_subcommand(1);
  Flags fl;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", fl.config_path, "path to the run config")
        ->required();
    sub->add_option("--out", fl.out_override,
                    "output CSV path (overrides out in [run])");
    sub->add_flag("--strict", fl.strict,
                  "exit 4 when a lemma fails to verify or a verdict "
                  "mismatches the configured expectation");
    sub->add_flag("--force", fl.force, "overwrite existing output files");
    sub->add_option("--resolution", fl.resolution,
                    "override the config resolution")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", fl.seed, "override the config seed")
        ->check(CLI::NonNegativeNumber);
  };
  add_common(app.add_subcommand("norm", "Luxemburg norm and modular of an indicator"));
  add_common(app.add_subcommand("project", "tabulate a projected indicator"));
  add_common(app.add_subcommand(
      "verify-lemma", "randomized check of the kernel lower-bound inequality"));
  add_common(app.add_subcommand(
      "falsify", "modular-inequality scaling experiment along a k-schedule"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, fl);
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 2;
  } catch (const nonpositive_infimum& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 2;
  } catch (const no_exponent_gap& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 2;
  } catch (const convergence_error& e) {
    std::fprintf(stderr, "error: convergence: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
}

#include "hoffman/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hoffman/calmness.hpp"
#include "hoffman/continuous.hpp"
#include "hoffman/core.hpp"
#include "hoffman/geometry.hpp"
#include "hoffman/hoffman_global.hpp"
#include "hoffman/lab.hpp"
#include "hoffman/semilocal.hpp"

namespace hoffman::cli {

namespace {

using nlohmann::json;

json vec_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json modulus_json(const ModulusValue& m) {
  if (m.is_infinite()) return json("inf");
  return json(m.value());
}

json subset_json(const FiniteSystem& sys, const IndexSubset& s) {
  json j;
  j["indices"] = s.indices;
  json labels = json::array();
  for (int t : s.indices) labels.push_back(sys.row(t).label);
  j["labels"] = labels;
  if (s.certificate) j["certificate"] = vec_json(*s.certificate);
  return j;
}

struct LoadedSystem {
  std::optional<FiniteSystem> finite;
  std::optional<Rhs> inline_b;
  std::optional<ContinuousSystem> continuous;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("JSON parse error in '" + path + "': " + e.what());
  }
  return j;
}

Vector json_vector(const json& a, const std::string& what) {
  if (!a.is_array()) throw ValidationError(what + " must be an array");
  Vector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw ValidationError(what + " must hold numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

LoadedSystem parse_system_json(const json& j) {
  LoadedSystem out;
  if (j.contains("builtin")) {
    out.continuous = builtin_system(j.at("builtin").get<std::string>());
    return out;
  }
  if (j.contains("segments")) {
    ContinuousSystem cs;
    cs.n = j.at("n").get<int>();
    cs.norm = norm_from_name(j.value("norm", "l2"));
    for (const auto& seg : j.at("segments")) {
      auto samples = seg.at("samples").get<std::vector<std::vector<double>>>();
      Segment s = tabulated_segment(samples, cs.n);
      if (seg.contains("lo")) s.lo = seg.at("lo").get<double>();
      if (seg.contains("hi")) s.hi = seg.at("hi").get<double>();
      cs.segments.push_back(std::move(s));
    }
    if (j.contains("extra_rows"))
      for (const auto& e : j.at("extra_rows"))
        cs.extra_rows.push_back({e.at("label").get<std::string>(),
                                 json_vector(e.at("a"), "extra row a"),
                                 e.at("b").get<double>()});
    cs.validate();
    out.continuous = std::move(cs);
    return out;
  }
  const int n = j.at("n").get<int>();
  const NormKind norm = norm_from_name(j.value("norm", "l2"));
  std::vector<SystemRow> rows;
  for (const auto& r : j.at("rows"))
    rows.push_back({r.at("label").get<std::string>(),
                    json_vector(r.at("a"), "row a")});
  out.finite = FiniteSystem(n, std::move(rows), norm);
  if (j.contains("b")) out.inline_b = Rhs(json_vector(j.at("b"), "b"));
  return out;
}

json normalized_json(const FiniteSystem& sys, const std::optional<Rhs>& b) {
  json j;
  j["n"] = sys.dimension();
  j["norm"] = norm_name(sys.norm());
  json rows = json::array();
  for (const auto& r : sys.rows()) {
    json row;
    row["label"] = r.label;
    row["a"] = vec_json(r.a);
    rows.push_back(row);
  }
  j["rows"] = rows;
  if (b) j["b"] = vec_json(b->b);
  return j;
}

Vector parse_point(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (...) {
      throw ValidationError("cannot parse point component '" + tok + "'");
    }
  }
  if (vals.empty()) throw ValidationError("empty point");
  Vector v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

std::vector<double> parse_steps(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if (vals.empty()) throw ValidationError("empty step list");
  return vals;
}

struct CommonOpts {
  std::string system_path;
  std::string rhs_path;
  double grid_step = 0.0;  // discretize a continuous input when > 0
  bool dump_normalized = false;
  Tolerances tols;
  std::uint64_t seed = 1;
};

std::pair<FiniteSystem, std::optional<Rhs>> load_finite(const CommonOpts& o) {
  LoadedSystem ls = parse_system_json(read_json_file(o.system_path));
  std::optional<FiniteSystem> sys;
  std::optional<Rhs> b = ls.inline_b;
  if (ls.finite) {
    sys = std::move(ls.finite);
  } else {
    if (!(o.grid_step > 0.0))
      throw ValidationError(
          "continuous system input needs --grid-step to discretize");
    auto [fs, fb] = discretize(*ls.continuous, GridSpec{o.grid_step});
    sys = std::move(fs);
    b = fb;
  }
  if (!o.rhs_path.empty()) {
    json jb = read_json_file(o.rhs_path);
    if (jb.is_array())
      b = Rhs(json_vector(jb, "rhs"));
    else
      b = Rhs(json_vector(jb.at("b"), "rhs"));
  }
  return {std::move(*sys), std::move(b)};
}

Rhs require_rhs(const FiniteSystem& sys, const std::optional<Rhs>& b) {
  if (!b) throw ValidationError("this command needs a right-hand side (--rhs)");
  b->check_matches(sys);
  return *b;
}

json envelope(const std::string& command, const CommonOpts& o) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["tolerances"] = {{"tol_active", o.tols.tol_active},
                     {"tol_strict", o.tols.tol_strict},
                     {"tol_rank", o.tols.tol_rank}};
  return j;
}

json estimate_json(const ModulusEstimate& e) {
  json j;
  j["value"] = e.diverged ? json("inf") : json(e.value.value());
  j["diverged"] = e.diverged;
  j["level_max"] = e.level_max;
  j["level_pairs"] = e.level_pairs;
  return j;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const SizeLimitExceeded& e) {
    err << "size limit: " << e.what() << "\n";
    return 4;
  } catch (const InfeasiblePoint& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 5;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Hoffman and calmness constants for linear inequality systems"};
  app.require_subcommand(1);

  CommonOpts o;
  long long cap = kDefaultSubsetCap;
  int samples = 10000;
  double radius = 3.0;
  std::string point_str, fixture_name, builtin_name, steps_str;
  double ybar = 0.0, fixture_R = 1e3;
  bool exhaustive = false;
  int lab_levels = 14, lab_per_level = 48;
  double lab_cap = 1e6;

  auto add_common = [&](CLI::App* cmd, bool needs_system) {
    if (needs_system)
      cmd->add_option("system", o.system_path, "system JSON file")->required();
    cmd->add_option("--rhs", o.rhs_path, "right-hand side JSON file");
    cmd->add_option("--grid-step", o.grid_step,
                    "discretization step for continuous inputs");
    cmd->add_flag("--dump-normalized", o.dump_normalized,
                  "emit the normalized system file and exit");
    cmd->add_option("--tol-active", o.tols.tol_active);
    cmd->add_option("--tol-strict", o.tols.tol_strict);
    cmd->add_option("--tol-rank", o.tols.tol_rank);
    cmd->add_option("--cap", cap, "subset enumeration cap");
    cmd->add_option("--seed", o.seed);
  };

  auto* c_global = app.add_subcommand("global", "global Hoffman constant");
  add_common(c_global, true);
  c_global->add_flag("--exhaustive", exhaustive,
                     "cross-check against the all-subsets route (m <= 24)");

  auto* c_at = app.add_subcommand("at", "semi-local Hoffman modulus at b");
  add_common(c_at, true);

  auto* c_calm = app.add_subcommand("calmness", "calmness modulus at (b, x)");
  add_common(c_calm, true);
  c_calm->add_option("--point", point_str, "feasible point v1,v2,...")
      ->required();

  auto* c_vert = app.add_subcommand("vertices", "extreme points E(b)");
  add_common(c_vert, true);

  auto* c_verify = app.add_subcommand(
      "verify", "sampling estimators and chain cross-checks");
  add_common(c_verify, true);
  c_verify->add_option("--samples", samples);
  c_verify->add_option("--radius", radius);

  auto* c_lab = app.add_subcommand("lab", "generic multifunction moduli");
  c_lab->add_option("--fixture", fixture_name, "fixture name")->required();
  c_lab->add_option("--ybar", ybar)->required();
  c_lab->add_option("--truncation", fixture_R, "staircase branch cap");
  c_lab->add_option("--levels", lab_levels);
  c_lab->add_option("--per-level", lab_per_level);
  c_lab->add_option("--cap", lab_cap, "divergence cap");
  c_lab->add_option("--seed", o.seed);

  auto* c_grid = app.add_subcommand("grid-study", "grid refinement study");
  c_grid->add_option("--builtin", builtin_name);
  c_grid->add_option("system", o.system_path, "continuous system JSON file");
  c_grid->add_option("--steps", steps_str, "comma-separated grid steps")
      ->required();
  c_grid->add_option("--point", point_str, "also report clm at this point");
  c_grid->add_option("--cap", cap);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "argument error: " << e.what() << "\n";
    return 2;
  }

  if (c_global->parsed()) {
    auto [sys, b] = load_finite(o);
    if (o.dump_normalized) {
      out << normalized_json(sys, b).dump(2) << "\n";
      return 0;
    }
    GlobalHoffmanReport rep = hof_global(sys, cap, o.tols.tol_rank);
    json j = envelope("global", o);
    j["value"] = modulus_json(rep.value);
    j["subset"] = subset_json(sys, rep.attaining);
    j["certificate"] = vec_json(rep.dual_certificate);
    if (exhaustive) {
      ModulusValue ex = hof_global_exhaustive(sys);
      rep.route_values["exhaustive"] = ex.value();
      j["routes"] = rep.route_values;
      j["routes_agree"] =
          std::abs(ex.value() - rep.value.value()) <=
          1e-8 * std::max({1.0, ex.value(), rep.value.value()});
    } else {
      j["routes"] = rep.route_values;
    }
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_at->parsed()) {
    auto [sys, b0] = load_finite(o);
    if (o.dump_normalized) {
      out << normalized_json(sys, b0).dump(2) << "\n";
      return 0;
    }
    Rhs b = require_rhs(sys, b0);
    SemiLocalReport rep = hof_at(sys, b, cap, o.tols);
    json j = envelope("at", o);
    j["value"] = modulus_json(rep.value);
    j["attaining_point"] = vec_json(rep.attaining_point);
    json cands = json::array();
    for (const auto& [v, cr] : rep.candidates) {
      json c;
      c["point"] = vec_json(v);
      c["clm"] = modulus_json(cr.value);
      c["attaining_D"] = subset_json(sys, cr.attaining);
      cands.push_back(c);
    }
    j["candidates"] = cands;
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_calm->parsed()) {
    auto [sys, b0] = load_finite(o);
    if (o.dump_normalized) {
      out << normalized_json(sys, b0).dump(2) << "\n";
      return 0;
    }
    Rhs b = require_rhs(sys, b0);
    Vector x = parse_point(point_str);
    CalmnessReport rep = clm_at(sys, b, x, o.tols);
    json j = envelope("calmness", o);
    j["value"] = modulus_json(rep.value);
    j["point"] = vec_json(x);
    j["attaining_D"] = subset_json(sys, rep.attaining);
    j["active_set"] = subset_json(sys, rep.family.active);
    json members = json::array();
    for (const auto& D : rep.family.members)
      members.push_back(subset_json(sys, D));
    j["d_family"] = members;
    json hulls = json::array();
    for (const auto& hull : rep.end_set_hulls) {
      json h = json::array();
      for (const auto& p : hull) h.push_back(vec_json(p));
      hulls.push_back(h);
    }
    j["end_set_hulls"] = hulls;
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_vert->parsed()) {
    auto [sys, b0] = load_finite(o);
    if (o.dump_normalized) {
      out << normalized_json(sys, b0).dump(2) << "\n";
      return 0;
    }
    Rhs b = require_rhs(sys, b0);
    auto verts = enumerate_vertices(sys, b, cap, o.tols);
    json j = envelope("vertices", o);
    json arr = json::array();
    for (const auto& v : verts) arr.push_back(vec_json(v));
    j["vertices"] = arr;
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_verify->parsed()) {
    auto [sys, b0] = load_finite(o);
    Rhs b = require_rhs(sys, b0);
    json j = envelope("verify", o);
    j["seed"] = o.seed;
    j["samples"] = samples;
    j["radius"] = radius;

    SemiLocalReport rep = hof_at(sys, b, cap, o.tols);
    j["hof_at"] = modulus_json(rep.value);

    std::vector<Vector> anchors;
    for (const auto& [v, cr] : rep.candidates) anchors.push_back(v);
    SamplingEstimate mc =
        mc_ratio_sup(sys, b, anchored_mixture_sampler(sys.dimension(), radius, anchors),
                     samples, o.seed);
    j["mc_ratio_sup"] = modulus_json(mc.estimate);
    j["mc_used"] = mc.used;

    SamplingEstimate os = hof_at_sampling(
        sys, b, uniform_box_sampler(sys.dimension(), radius), samples, o.seed,
        o.tols);
    j["hof_at_sampling"] = modulus_json(os.estimate);
    j["hof_at_sampling_used"] = os.used;
    if (os.empty_sampler)
      j["hof_at_sampling_warning"] = "no infeasible samples";

    ChainCheckReport chain =
        chain_check(sys, b, 200, samples, o.seed, o.tols);
    j["chain"] = {{"passed", chain.passed},
                  {"hof_value", chain.hof_value},
                  {"max_boundary_clm", chain.max_boundary_clm},
                  {"mc_estimate", chain.mc_estimate},
                  {"boundary_samples", chain.boundary_samples},
                  {"has_interior", chain.has_interior},
                  {"interior_clm", chain.interior_clm}};
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_lab->parsed()) {
    SampledMultifunction m = fixture(fixture_name, ybar, fixture_R);
    LabSchedules s;
    s.levels = lab_levels;
    s.y_per_level = lab_per_level;
    s.cap = lab_cap;
    s.seed = o.seed;
    ModuliEstimates est = estimate_moduli(m, s);
    json j = envelope("lab", o);
    j["fixture"] = fixture_name;
    j["ybar"] = ybar;
    j["seed"] = o.seed;
    j["cap"] = lab_cap;
    j["sup_clm"] = estimate_json(est.sup_clm);
    j["uclm"] = estimate_json(est.uclm);
    j["uclm_local"] = estimate_json(est.uclm_local);
    j["lipusc"] = estimate_json(est.lipusc);
    j["hof"] = estimate_json(est.hof);
    json clms = json::array();
    for (const auto& [x, e] : est.clm_per_point) {
      json c;
      c["point"] = vec_json(x);
      c["clm"] = estimate_json(e);
      clms.push_back(c);
    }
    j["clm_per_point"] = clms;
    out << j.dump(2) << "\n";
    return 0;
  }

  if (c_grid->parsed()) {
    ContinuousSystem cs;
    if (!builtin_name.empty()) {
      cs = builtin_system(builtin_name);
    } else if (!o.system_path.empty()) {
      LoadedSystem ls = parse_system_json(read_json_file(o.system_path));
      if (!ls.continuous)
        throw ValidationError("grid-study needs a continuous system");
      cs = *ls.continuous;
    } else {
      throw ValidationError("grid-study needs --builtin or a system file");
    }
    std::optional<Vector> x;
    if (!point_str.empty()) x = parse_point(point_str);
    json j = envelope("grid-study", o);
    j["builtin"] = builtin_name;
    json rows = json::array();
    for (double step : parse_steps(steps_str)) {
      GridGlobalReport g = hof_global_grid(cs, step, cap);
      json r;
      r["step"] = step;
      r["rows"] = g.row_count;
      r["hof_global"] = modulus_json(g.report.value);
      if (x) {
        auto [fs, fb] = discretize(cs, GridSpec{step});
        r["clm_at_point"] =
            modulus_json(clm_at(fs, fb, *x, o.tols).value);
      }
      rows.push_back(r);
    }
    j["steps"] = rows;
    out << j.dump(2) << "\n";
    return 0;
  }

  err << "no subcommand\n";
  return 2;
}

}  // namespace

}  // namespace hoffman::cli

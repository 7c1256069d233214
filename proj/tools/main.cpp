// gwgames command line tool: outcome probabilities of k-jump games on
// Galton-Watson trees, phase-transition constants, class probabilities,
// and Monte Carlo cross-checks. Talks to the library through the C API.
//
// Exit codes: 0 ok, 1 statistical tripwire (|z| > 4 in simulate),
// 2 solver failure, 3 usage / domain error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwgames.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTripwire = 1;
constexpr int kExitSolver = 2;
constexpr int kExitUsage = 3;

int exit_code_for(gw_status s) {
  switch (s) {
    case GW_OK:
      return kExitOk;
    case GW_ERR_NO_CONVERGENCE:
    case GW_ERR_BRACKET:
      return kExitSolver;
    default:
      return kExitUsage;
  }
}

[[noreturn]] void fail(gw_status s, const std::string& context) {
  std::cerr << "error: " << context << ": " << gw_status_str(s) << " ("
            << gw_last_error() << ")\n";
  std::exit(exit_code_for(s));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct DistFlags {
  double poisson = 0.0;
  std::string finite;
};

void add_dist_flags(CLI::App* cmd, DistFlags& df) {
  auto* p = cmd->add_option("--poisson", df.poisson, "Poisson offspring rate");
  auto* f = cmd->add_option("--finite", df.finite,
                            "comma-separated offspring masses p0,p1,...");
  p->excludes(f);
}

gw_dist* make_dist(const DistFlags& df) {
  gw_dist* d = nullptr;
  gw_status s;
  if (!df.finite.empty()) {
    std::vector<double> mass;
    std::stringstream ss(df.finite);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        mass.push_back(std::stod(tok));
      } catch (const std::exception&) {
        std::cerr << "error: bad --finite entry '" << tok << "'\n";
        std::exit(kExitUsage);
      }
    }
    s = gw_dist_finite(mass.data(), mass.size(), &d);
  } else if (df.poisson > 0.0) {
    s = gw_dist_poisson(df.poisson, &d);
  } else {
    std::cerr << "error: one of --poisson or --finite is required\n";
    std::exit(kExitUsage);
  }
  if (s != GW_OK) fail(s, "offspring distribution");
  return d;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitUsage);
  }
  return file;
}

struct Point {
  gw_outcome_triple triple;
  gw_phase_info info;
};

std::optional<Point> solve_point(const gw_dist* d, int k, gw_variant v,
                                 double tol, long max_iter,
                                 std::string* err) {
  gw_ladder* l = nullptr;
  gw_status s = gw_ladder_new(d, k, tol, &l);
  if (s != GW_OK) {
    if (err) *err = gw_last_error();
    return std::nullopt;
  }
  Point pt;
  s = gw_solve_outcomes(l, v, tol, max_iter, &pt.triple, &pt.info);
  gw_ladder_free(l);
  if (s != GW_OK) {
    if (err) *err = gw_last_error();
    return std::nullopt;
  }
  return pt;
}

int cmd_outcomes(const DistFlags& df, int k, const std::string& variant,
                 double tol, long max_iter, bool json) {
  gw_dist* d = make_dist(df);
  std::vector<gw_variant> variants;
  if (variant == "both") {
    variants = {GW_NORMAL, GW_MISERE};
  } else {
    variants = {variant == "misere" ? GW_MISERE : GW_NORMAL};
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (gw_variant v : variants) {
    std::string err;
    auto pt = solve_point(d, k, v, tol, max_iter, &err);
    if (!pt) {
      std::cerr << "error: solve failed: " << err << "\n";
      gw_dist_free(d);
      return kExitSolver;
    }
    if (json) {
      nlohmann::ordered_json j;
      j["variant"] = v == GW_MISERE ? "misere" : "normal";
      j["k"] = k;
      j["loss"] = pt->triple.loss;
      j["win"] = pt->triple.win;
      j["draw"] = pt->triple.draw;
      j["c_k"] = pt->info.c_k;
      j["chat_k"] = pt->info.chat_k;
      j["slope_at_ck"] = pt->info.slope_at_ck;
      j["draw_positive"] = pt->info.draw_positive != 0;
      if (pt->info.eta != 0.0) j["eta"] = pt->info.eta;
      out.push_back(j);
    } else {
      std::cout << (v == GW_MISERE ? "misere" : "normal") << " k=" << k
                << "\n"
                << "  loss  " << fmt(pt->triple.loss) << "\n"
                << "  win   " << fmt(pt->triple.win) << "\n"
                << "  draw  " << fmt(pt->triple.draw) << "\n"
                << "  c_k   " << fmt(pt->info.c_k) << "\n"
                << "  chat_k " << fmt(pt->info.chat_k) << "\n"
                << "  slope_at_ck " << fmt(pt->info.slope_at_ck) << "\n"
                << "  draw_positive " << (pt->info.draw_positive ? "yes" : "no")
                << "\n";
    }
  }
  if (json) std::cout << out.dump(2) << "\n";
  gw_dist_free(d);
  return kExitOk;
}

int cmd_sweep(const DistFlags& df, const std::vector<int>& ks,
              const std::string& grid, const std::string& variant, double tol,
              long max_iter, const std::string& out_path) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      !(start <= stop) || !(step > 0)) {
    std::cerr << "error: --lambda expects start:stop:step with start <= stop\n";
    return kExitUsage;
  }
  const long n_grid = long((stop - start) / step) + 1;
  if (n_grid > 100000) {
    std::cerr << "error: lambda grid larger than 1e5 points\n";
    return kExitUsage;
  }
  std::vector<gw_variant> variants;
  if (variant == "both") {
    variants = {GW_NORMAL, GW_MISERE};
  } else {
    variants = {variant == "misere" ? GW_MISERE : GW_NORMAL};
  }
  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  os << "k,lambda,variant,loss,win,draw,c_k,slope_at_ck,error\n";
  long failures = 0, rows = 0;
  for (int k : ks) {
    for (long gi = 0; gi < n_grid; ++gi) {
      const double lam = start + double(gi) * step;
      gw_dist* d = nullptr;
      gw_status s = gw_dist_poisson(lam, &d);
      for (gw_variant v : variants) {
        ++rows;
        const char* vname = v == GW_MISERE ? "misere" : "normal";
        std::string err = s == GW_OK ? "" : gw_last_error();
        std::optional<Point> pt;
        if (s == GW_OK) pt = solve_point(d, k, v, tol, max_iter, &err);
        if (!pt) {
          ++failures;
          os << k << ',' << fmt(lam) << ',' << vname << ",,,,,," << '"' << err
             << '"' << "\n";
          continue;
        }
        os << k << ',' << fmt(lam) << ',' << vname << ','
           << fmt(pt->triple.loss) << ',' << fmt(pt->triple.win) << ','
           << fmt(pt->triple.draw) << ',' << fmt(pt->info.c_k) << ','
           << fmt(pt->info.slope_at_ck) << ",\n";
      }
      gw_dist_free(d);
    }
  }
  return failures == rows ? kExitSolver : kExitOk;
}

int cmd_phase(bool json) {
  double lc = 0, l0 = 0, em = 0;
  gw_status s = gw_lambda_c(1e-10, &lc);
  if (s != GW_OK) fail(s, "lambda_c");
  s = gw_eta_extremum(&l0, &em);
  if (s != GW_OK) fail(s, "eta extremum");
  if (json) {
    nlohmann::ordered_json j;
    j["lambda_c"] = lc;
    j["lambda_0"] = l0;
    j["eta_max"] = em;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "lambda_c " << fmt(lc) << "\n"
              << "lambda_0 " << fmt(l0) << "\n"
              << "eta_max  " << fmt(em) << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const DistFlags& df, int k, const std::string& variant,
                 int horizon, long samples, unsigned long long seed,
                 long node_cap, double tol, long max_iter,
                 const std::string& out_path) {
  if (samples < 1) {
    std::cerr << "error: --samples must be >= 1\n";
    return kExitUsage;
  }
  if (horizon < 1) {
    std::cerr << "error: --horizon must be >= 1\n";
    return kExitUsage;
  }
  gw_dist* d = make_dist(df);
  const gw_variant v = variant == "misere" ? GW_MISERE : GW_NORMAL;

  gw_ladder* l = nullptr;
  gw_status s = gw_ladder_new(d, k, tol, &l);
  if (s != GW_OK) fail(s, "ladder");

  std::vector<gw_mc_row> rows(static_cast<size_t>(horizon));
  long excluded = 0;
  s = gw_mc_estimate(d, k, v, horizon, samples, seed, node_cap, rows.data(),
                     &excluded);
  if (s != GW_OK) fail(s, "mc_estimate");

  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  os << "n,analytic_loss,mc_loss,mc_se_loss,z_loss,analytic_win,mc_win,"
        "mc_se_win,z_win\n";
  const long m = samples - excluded;
  bool tripped = false;
  for (int n = 1; n <= horizon; ++n) {
    double al = 0, aw = 0;
    s = gw_analytic_horizon(l, v, n, &al, &aw);
    if (s != GW_OK) fail(s, "analytic horizon");
    const gw_mc_row& r = rows[size_t(n - 1)];
    // z against the analytic binomial spread: well-defined even when the
    // empirical frequency is 0 or 1.
    auto z_of = [&](double mc, double an) {
      const double se = std::sqrt(an * (1.0 - an) / double(m > 0 ? m : 1));
      if (se == 0.0) return mc == an ? 0.0 : 99.0;
      return (mc - an) / se;
    };
    const double zl = z_of(r.loss, al);
    const double zw = z_of(r.win, aw);
    if (std::fabs(zl) > 4.0 || std::fabs(zw) > 4.0) tripped = true;
    os << n << ',' << fmt(al) << ',' << fmt(r.loss) << ',' << fmt(r.se_loss)
       << ',' << fmt(zl) << ',' << fmt(aw) << ',' << fmt(r.win) << ','
       << fmt(r.se_win) << ',' << fmt(zw) << "\n";
  }
  if (excluded > 0) {
    std::cerr << "note: " << excluded << " of " << samples
              << " trees hit the node cap and were excluded\n";
  }
  gw_ladder_free(l);
  gw_dist_free(d);
  return tripped ? kExitTripwire : kExitOk;
}

int cmd_classes(const DistFlags& df, int k, double tol, long max_iter,
                bool json, const std::string& out_path) {
  gw_dist* d = make_dist(df);
  gw_ladder* l = nullptr;
  gw_status s = gw_ladder_new(d, k, tol, &l);
  if (s != GW_OK) fail(s, "ladder");
  double nl = 0;
  s = gw_solve_nl(l, tol, max_iter, &nl);
  if (s != GW_OK) fail(s, "solve_nl");
  const size_t cap = size_t(k) * size_t(k + 1) / 2;
  std::vector<double> probs(cap);
  std::vector<int> pi(cap), pj(cap);
  size_t count = 0;
  s = gw_class_probs(l, nl, probs.data(), pi.data(), pj.data(), cap, &count);
  if (s != GW_OK) fail(s, "class_probs");
  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  if (json) {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["nl"] = nl;
    j["classes"] = nlohmann::ordered_json::array();
    for (size_t idx = 0; idx < count; ++idx) {
      j["classes"].push_back(
          {{"i", pi[idx]}, {"j", pj[idx]}, {"p", probs[idx]}});
    }
    os << j.dump(2) << "\n";
  } else {
    os << "i,j,p\n";
    for (size_t idx = 0; idx < count; ++idx) {
      os << pi[idx] << ',' << pj[idx] << ',' << fmt(probs[idx]) << "\n";
    }
  }
  gw_ladder_free(l);
  gw_dist_free(d);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-jump games on Galton-Watson trees"};
  app.require_subcommand(1);

  double tol = 1e-13;
  long max_iter = 1000000;
  app.add_option("--tol", tol, "solver tolerance")->capture_default_str();
  app.add_option("--max-iter", max_iter, "fixed-point iteration cap")
      ->capture_default_str();

  // outcomes
  auto* oc = app.add_subcommand("outcomes", "solve one (k, dist) point");
  DistFlags oc_df;
  int oc_k = 2;
  std::string oc_variant = "normal";
  bool oc_json = false;
  add_dist_flags(oc, oc_df);
  oc->add_option("--k", oc_k, "jump distance")->check(CLI::PositiveNumber);
  oc->add_option("--variant", oc_variant)
      ->check(CLI::IsMember({"normal", "misere", "both"}));
  oc->add_flag("--json", oc_json);

  // sweep
  auto* sw = app.add_subcommand("sweep", "CSV sweep over a Poisson grid");
  DistFlags sw_df;  // unused; sweep is Poisson-grid only
  std::vector<int> sw_ks{1, 2, 3};
  std::string sw_grid = "0.2:8:0.05";
  std::string sw_variant = "normal";
  std::string sw_out;
  sw->add_option("--k", sw_ks, "jump distances")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sw->add_option("--lambda", sw_grid, "grid start:stop:step")
      ->capture_default_str();
  sw->add_option("--variant", sw_variant)
      ->check(CLI::IsMember({"normal", "misere", "both"}));
  sw->add_option("--out", sw_out, "output path (default stdout)");

  // phase
  auto* ph = app.add_subcommand("phase", "Poisson k=2 phase constants");
  bool ph_json = false;
  ph->add_flag("--json", ph_json);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo vs analytic");
  DistFlags sim_df;
  int sim_k = 2, sim_horizon = 6;
  long sim_samples = 100000;
  unsigned long long sim_seed = 1;
  long sim_node_cap = 1000000;
  std::string sim_variant = "normal", sim_out;
  add_dist_flags(sim, sim_df);
  sim->add_option("--k", sim_k)->check(CLI::PositiveNumber);
  sim->add_option("--variant", sim_variant)
      ->check(CLI::IsMember({"normal", "misere"}));
  sim->add_option("--horizon", sim_horizon)->capture_default_str();
  sim->add_option("--samples", sim_samples)->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--node-cap", sim_node_cap)->capture_default_str();
  sim->add_option("--out", sim_out, "output path (default stdout)");

  // classes
  auto* cl = app.add_subcommand("classes", "class probabilities at nl_k");
  DistFlags cl_df;
  int cl_k = 2;
  bool cl_json = false;
  std::string cl_out;
  add_dist_flags(cl, cl_df);
  cl->add_option("--k", cl_k)->check(CLI::PositiveNumber);
  cl->add_flag("--json", cl_json);
  cl->add_option("--out", cl_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (oc->parsed()) {
    return cmd_outcomes(oc_df, oc_k, oc_variant, tol, max_iter, oc_json);
  }
  if (sw->parsed()) {
    return cmd_sweep(sw_df, sw_ks, sw_grid, sw_variant, tol, max_iter, sw_out);
  }
  if (ph->parsed()) return cmd_phase(ph_json);
  if (sim->parsed()) {
    return cmd_simulate(sim_df, sim_k, sim_variant, sim_horizon, sim_samples,
                        sim_seed, sim_node_cap, tol, max_iter, sim_out);
  }
  if (cl->parsed()) {
    return cmd_classes(cl_df, cl_k, tol, max_iter, cl_json, cl_out);
  }
  return kExitUsage;
}

// Command-line front end: reproducible batch runs of the book simulator,
// profile fitting, parameter estimation, and the intraday volatility
// comparison, with plot-ready CSV and JSON outputs.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lob/common.hpp"
#include "lob/est/estimators.hpp"
#include "lob/io/lobster.hpp"
#include "lob/model/model.hpp"
#include "lob/price/price.hpp"

using json = nlohmann::ordered_json;
using namespace lob;

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// Shortest round-trip decimal form, so reruns are byte-identical.
std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot open output file: " + path.string());
  out << text;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw config_error("cannot create output directory: " + p.string());
  return p;
}

double lag1_autocorr(const std::vector<double>& x) {
  if (x.size() < 3) return nan_v;
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = x[k] - m;
    den += d * d;
    if (k + 1 < x.size()) num += d * (x[k + 1] - m);
  }
  return den > 0.0 ? num / den : nan_v;
}

// ---------------------------------------------------------------- ingestion

struct IngestOpts {
  std::string input;
  std::string ts_mode = "auto";
  std::string message_file;
  int levels = 10;
};

io::ParseReport parse_book(const IngestOpts& in) {
  if (in.input.empty()) throw config_error("no input file given (--input)");
  io::ParseOptions opts;
  if (in.ts_mode == "auto")
    opts.timestamps = io::ParseOptions::Timestamps::autodetect;
  else if (in.ts_mode == "first")
    opts.timestamps = io::ParseOptions::Timestamps::first_column;
  else if (in.ts_mode == "companion")
    opts.timestamps = io::ParseOptions::Timestamps::companion;
  else if (in.ts_mode == "none")
    opts.timestamps = io::ParseOptions::Timestamps::none;
  else
    throw config_error("unknown --timestamps mode: " + in.ts_mode);
  opts.message_file = in.message_file;
  io::ParseReport rep = io::parse_orderbook_file(in.input, in.levels, opts);
  if (rep.snapshots.empty())
    throw data_error("no parsable snapshots in " + in.input);
  return rep;
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
  double t_end = 10.0;
  double dt = 0.01;
  int paths = 1;
  std::string scheme = "exact";
  double eta_b = 1.0, beta_b = 0.0, alpha_b = 0.0, band_b = 1.0;
  double eta_a = 1.0, beta_a = 0.0, alpha_a = 0.0, band_a = 1.0;
  double sigma_b = 0.1, sigma_a = 0.1, rho = 0.0;
  double theta = 0.01, c_s = 0.5;
  double vbar_b = 0.0, vbar_a = 0.0;
  double v0_b = 1.0, v0_a = 1.0, s0 = 100.0;
};

void run_simulate(const SimulateOpts& o, std::uint64_t seed,
                  const std::string& out_dir) {
  if (!(o.dt > 0.0)) throw config_error("step size must be > 0");
  if (!(o.t_end > 0.0)) throw config_error("horizon must be > 0");
  if (o.paths < 1) throw config_error("path count must be >= 1");

  model::ModelParams p;
  p.bid = {o.eta_b, o.beta_b, o.alpha_b, o.band_b, spectral::Side::bid};
  p.ask = {o.eta_a, o.beta_a, o.alpha_a, o.band_a, spectral::Side::ask};
  p.sigma_b = o.sigma_b;
  p.sigma_a = o.sigma_a;
  p.rho_ab = o.rho;
  p.theta = o.theta;
  p.c_s = o.c_s;
  p.vbar_b = o.vbar_b;
  p.vbar_a = o.vbar_a;

  const bool mean_rev = p.vbar_b > 0.0 || p.vbar_a > 0.0;
  const bool milstein = o.scheme == "milstein";
  if (milstein && !mean_rev)
    throw config_error("the milstein scheme applies to the mean-reverting "
                       "mode (set vbar_b/vbar_a > 0)");

  auto n_steps = static_cast<std::size_t>(std::llround(o.t_end / o.dt));
  if (n_steps < 1) throw config_error("horizon shorter than one step");
  sde::TimeGrid grid{0.0, o.dt, n_steps};
  model::FactorState init{o.v0_b, o.v0_a, o.s0};

  std::string csv = "time,v_b,v_a,s\n";
  double rv_sum = 0.0, mv_b = 0.0, mv_a = 0.0;
  double md_b = 0.0, md_a = 0.0, ac_sum = 0.0;
  int ac_count = 0;
  model::FactorState final_state;
  for (int path = 0; path < o.paths; ++path) {
    model::Trajectory tr =
        mean_rev ? model::simulate_mean_reverting(
                       p, init, grid, seed, static_cast<std::uint64_t>(path),
                       milstein ? model::Scheme::milstein
                                : model::Scheme::exact)
                 : model::simulate_two_factor(
                       p, init, grid, seed, static_cast<std::uint64_t>(path));

    double rv = 0.0;
    std::vector<double> imbalance;
    imbalance.reserve(tr.states.size());
    double sv_b = 0.0, sv_a = 0.0, sd_b = 0.0, sd_a = 0.0;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      const model::FactorState& st = tr.states[k];
      if (k + 1 < tr.states.size()) {
        double ds = tr.states[k + 1].s - st.s;
        rv += ds * ds;
      }
      sv_b += st.v_b;
      sv_a += st.v_a;
      model::Depths d = model::depth(p, st);
      sd_b += d.d_b;
      sd_a += d.d_a;
      imbalance.push_back(model::volume_and_imbalance(p, st).imbalance);
    }
    auto n_pts = static_cast<double>(tr.states.size());
    rv_sum += rv / grid.horizon();
    mv_b += sv_b / n_pts;
    mv_a += sv_a / n_pts;
    md_b += sd_b / n_pts;
    md_a += sd_a / n_pts;
    double ac = lag1_autocorr(imbalance);
    if (std::isfinite(ac)) {
      ac_sum += ac;
      ++ac_count;
    }

    if (path == 0) {
      final_state = tr.states.back();
      for (std::size_t k = 0; k < tr.states.size(); ++k) {
        csv += fmt(grid.time(k));
        csv += ',';
        csv += fmt(tr.states[k].v_b);
        csv += ',';
        csv += fmt(tr.states[k].v_a);
        csv += ',';
        csv += fmt(tr.states[k].s);
        csv += '\n';
      }
    }
  }
  const double n_paths = static_cast<double>(o.paths);

  json j;
  j["command"] = "simulate";
  j["seed"] = seed;
  j["mode"] = mean_rev ? "mean_reverting" : "two_factor";
  j["scheme"] = mean_rev ? o.scheme : "exact";
  j["t_end"] = o.t_end;
  j["dt"] = o.dt;
  j["n_steps"] = n_steps;
  j["paths"] = o.paths;
  j["params"]["bid"] = {{"eta", o.eta_b},
                        {"beta", o.beta_b},
                        {"alpha", o.alpha_b},
                        {"band", o.band_b}};
  j["params"]["ask"] = {{"eta", o.eta_a},
                        {"beta", o.beta_a},
                        {"alpha", o.alpha_a},
                        {"band", o.band_a}};
  j["params"]["sigma_b"] = p.sigma_b;
  j["params"]["sigma_a"] = p.sigma_a;
  j["params"]["rho_ab"] = p.rho_ab;
  j["params"]["theta"] = p.theta;
  j["params"]["c_s"] = p.c_s;
  j["params"]["vbar_b"] = p.vbar_b;
  j["params"]["vbar_a"] = p.vbar_a;
  j["params"]["nu_b"] = p.nu_b();
  j["params"]["nu_a"] = p.nu_a();
  j["initial"] = {{"v_b", o.v0_b}, {"v_a", o.v0_a}, {"s", o.s0}};
  j["predicted_sigma_s"] = price::mid_vol(p);
  j["realized_sigma_s"] = std::sqrt(rv_sum / n_paths);
  j["mean_v_b"] = mv_b / n_paths;
  j["mean_v_a"] = mv_a / n_paths;
  j["mean_depth_b"] = md_b / n_paths;
  j["mean_depth_a"] = md_a / n_paths;
  j["imbalance_autocorr_lag1"] =
      ac_count > 0 ? ac_sum / ac_count : nan_v;
  j["final"] = {{"v_b", final_state.v_b},
                {"v_a", final_state.v_a},
                {"s", final_state.s}};

  auto dir = ensure_out_dir(out_dir);
  write_file(dir / "trajectory.csv", csv);
  write_file(dir / "summary.json", j.dump(2) + "\n");
}

// -------------------------------------------------------------- profile-fit

struct ProfileFitOpts {
  int max_ticks = 20;
  double window = 1800.0;
  double fit_l = 0.0; // 0: use twice the tick span
  std::int64_t tick_units = 0;
  double scaling_exponent_a = 1.0;
  bool nonlinear = false;
};

struct FitOutcome {
  bool ok = false;
  est::ProfileFit fit;
  std::string error;
};

FitOutcome try_ls(const est::TickProfile& prof, double L, bool nonlinear) {
  FitOutcome out;
  try {
    out.fit = est::fit_profile_ls(prof, L, nonlinear);
    out.ok = true;
  } catch (const data_error& e) {
    out.error = e.what();
  }
  return out;
}

FitOutcome try_peak(const est::TickProfile& prof, double L) {
  FitOutcome out;
  try {
    out.fit = est::fit_profile_peak(prof, L);
    out.ok = true;
  } catch (const data_error& e) {
    out.error = e.what();
  }
  return out;
}

json fit_to_json(const FitOutcome& o) {
  if (!o.ok) return json{{"error", o.error}};
  json j;
  j["gamma"] = o.fit.gamma;
  j["volume_scale"] = o.fit.volume_scale;
  j["scaling_exponent_a"] = o.fit.scaling_exponent_a;
  j["residual"] = o.fit.residual;
  j["converged"] = o.fit.converged;
  j["gamma_at_boundary"] = o.fit.gamma_at_boundary;
  j["peak_at_first_tick"] = o.fit.peak_at_first_tick;
  j["iterations"] = o.fit.iterations;
  return j;
}

std::string profile_csv(const est::TickProfile& prof) {
  std::string csv = "tick,mean_size\n";
  for (std::size_t i = 0; i < prof.tick.size(); ++i) {
    csv += fmt(prof.tick[i]);
    csv += ',';
    csv += fmt(prof.size[i]);
    csv += '\n';
  }
  return csv;
}

void run_profile_fit(const IngestOpts& in, const ProfileFitOpts& o,
                     const std::string& out_dir) {
  if (!(o.window > 0.0)) throw config_error("window length must be > 0");
  io::ParseReport rep = parse_book(in);
  const auto& snaps = rep.snapshots;
  const std::int64_t t0 = snaps.front().t_ns;
  const std::int64_t t1 = snaps.back().t_ns;

  // Full-range profile, written with the (optionally power-scaled) tick
  // coordinate; the fits always work on the unscaled tick axis and estimate
  // any nonlinearity themselves when --nonlinear-scaling is set.
  io::SideProfiles shown = io::average_profile(
      snaps, t0, t1 + 1, o.max_ticks, o.tick_units, o.scaling_exponent_a);
  io::SideProfiles linear =
      o.scaling_exponent_a == 1.0
          ? shown
          : io::average_profile(snaps, t0, t1 + 1, o.max_ticks, o.tick_units,
                                1.0);

  const double L = o.fit_l > 0.0 ? o.fit_l : 2.0 * o.max_ticks;
  FitOutcome ls_b = try_ls(linear.bid, L, o.nonlinear);
  FitOutcome ls_a = try_ls(linear.ask, L, o.nonlinear);
  FitOutcome pk_b = try_peak(linear.bid, L);
  FitOutcome pk_a = try_peak(linear.ask, L);

  // One fit per window of the recording, indexed from zero; windows without
  // snapshots are skipped and reported.
  const auto w_ns = static_cast<std::int64_t>(std::llround(o.window * 1e9));
  if (w_ns <= 0) throw config_error("window length below 1 ns");
  std::string wcsv =
      "window,t_begin_s,t_end_s,gamma_ls_b,gamma_ls_a,gamma_peak_b,"
      "gamma_peak_a\n";
  json skipped = json::array();
  int index = 0;
  for (std::int64_t begin = t0; begin <= t1; begin += w_ns, ++index) {
    try {
      io::SideProfiles wp = io::average_profile(
          snaps, begin, begin + w_ns, o.max_ticks, o.tick_units, 1.0);
      FitOutcome wls_b = try_ls(wp.bid, L, o.nonlinear);
      FitOutcome wls_a = try_ls(wp.ask, L, o.nonlinear);
      FitOutcome wpk_b = try_peak(wp.bid, L);
      FitOutcome wpk_a = try_peak(wp.ask, L);
      wcsv += std::to_string(index);
      wcsv += ',';
      wcsv += fmt(static_cast<double>(begin) / 1e9);
      wcsv += ',';
      wcsv += fmt(static_cast<double>(begin + w_ns) / 1e9);
      wcsv += ',';
      wcsv += fmt(wls_b.ok ? wls_b.fit.gamma : nan_v);
      wcsv += ',';
      wcsv += fmt(wls_a.ok ? wls_a.fit.gamma : nan_v);
      wcsv += ',';
      wcsv += fmt(wpk_b.ok ? wpk_b.fit.gamma : nan_v);
      wcsv += ',';
      wcsv += fmt(wpk_a.ok ? wpk_a.fit.gamma : nan_v);
      wcsv += '\n';
    } catch (const data_error& e) {
      skipped.push_back({{"window", index}, {"reason", e.what()}});
    }
  }

  json j;
  j["command"] = "profile-fit";
  j["input"] = in.input;
  j["levels"] = in.levels;
  j["snapshots"] = snaps.size();
  j["rows_skipped_on_parse"] = rep.skipped.size();
  j["max_ticks"] = o.max_ticks;
  j["fit_l"] = L;
  j["nonlinear_scaling"] = o.nonlinear;
  j["scaling_exponent_a"] = o.scaling_exponent_a;
  j["window_seconds"] = o.window;
  j["full_range"]["bid"]["least_squares"] = fit_to_json(ls_b);
  j["full_range"]["bid"]["peak"] = fit_to_json(pk_b);
  j["full_range"]["ask"]["least_squares"] = fit_to_json(ls_a);
  j["full_range"]["ask"]["peak"] = fit_to_json(pk_a);
  j["windows"] = index;
  j["skipped_windows"] = skipped;

  auto dir = ensure_out_dir(out_dir);
  write_file(dir / "profile_bid.csv", profile_csv(shown.bid));
  write_file(dir / "profile_ask.csv", profile_csv(shown.ask));
  write_file(dir / "gamma_windows.csv", wcsv);
  write_file(dir / "fit_report.json", j.dump(2) + "\n");
}

// ----------------------------------------------------------------- estimate

struct SeriesOpts {
  double dt = 1.0;
  int k_depth = 2;
  double window = 1800.0;
};

est::DepthSeries load_series(const IngestOpts& in, const SeriesOpts& o) {
  io::ParseReport rep = parse_book(in);
  return io::resample(rep.snapshots, o.dt, o.k_depth);
}

json estimates_to_json(const est::ParamEstimates& e) {
  json j;
  j["dbar_b"] = e.dbar_b;
  j["dbar_a"] = e.dbar_a;
  j["c_b"] = e.c_b;
  j["c_a"] = e.c_a;
  j["nu_b"] = e.nu_b;
  j["nu_a"] = e.nu_a;
  j["sigma_b"] = e.sigma_b;
  j["sigma_a"] = e.sigma_a;
  j["sigma_b_rv"] = e.sigma_b_rv;
  j["sigma_a_rv"] = e.sigma_a_rv;
  j["rho_ab"] = e.rho_ab;
  j["heavy_tail_b"] = e.heavy_tail_b;
  j["heavy_tail_a"] = e.heavy_tail_a;
  j["ok"] = e.ok;
  j["diagnostic"] = e.diagnostic;
  return j;
}

void run_estimate(const IngestOpts& in, const SeriesOpts& o,
                  const std::string& out_dir) {
  if (!(o.window > 0.0)) throw config_error("window length must be > 0");
  est::DepthSeries series = load_series(in, o);
  est::ParamEstimates all = est::estimate_all(series);

  const auto m = static_cast<std::size_t>(std::llround(o.window / o.dt));
  if (m < 1) throw data_error("window shorter than two samples");
  std::string wcsv =
      "window,t_begin_s,t_end_s,dbar_b,dbar_a,nu_b,nu_a,sigma_b,sigma_a,"
      "sigma_b_rv,sigma_a_rv,rho_ab,ok\n";
  const std::size_t n = series.d_b.size();
  int index = 0;
  for (std::size_t first = 0; first + m < n; first += m, ++index) {
    est::DepthSeries win;
    win.grid = sde::TimeGrid{series.grid.time(first), o.dt, m};
    auto begin = static_cast<std::ptrdiff_t>(first);
    auto end = static_cast<std::ptrdiff_t>(first + m + 1);
    win.d_b.assign(series.d_b.begin() + begin, series.d_b.begin() + end);
    win.d_a.assign(series.d_a.begin() + begin, series.d_a.begin() + end);
    est::ParamEstimates we;
    bool usable = true;
    try {
      we = est::estimate_all(win);
    } catch (const data_error&) {
      usable = false; // e.g. a window of constant depth
    }
    wcsv += std::to_string(index);
    wcsv += ',';
    wcsv += fmt(win.grid.t0);
    wcsv += ',';
    wcsv += fmt(win.grid.time(m));
    for (double v : {usable ? we.dbar_b : nan_v, usable ? we.dbar_a : nan_v,
                     usable ? we.nu_b : nan_v, usable ? we.nu_a : nan_v,
                     usable ? we.sigma_b : nan_v, usable ? we.sigma_a : nan_v,
                     usable ? we.sigma_b_rv : nan_v,
                     usable ? we.sigma_a_rv : nan_v,
                     usable ? we.rho_ab : nan_v}) {
      wcsv += ',';
      wcsv += fmt(v);
    }
    wcsv += ',';
    wcsv += (usable && we.ok) ? '1' : '0';
    wcsv += '\n';
  }

  json j;
  j["command"] = "estimate";
  j["input"] = in.input;
  j["levels"] = in.levels;
  j["dt"] = o.dt;
  j["k_depth"] = o.k_depth;
  j["window_seconds"] = o.window;
  j["samples"] = n;
  j["t_begin"] = series.grid.t0;
  j["t_end"] = series.grid.time(series.grid.n_steps);
  j["has_price"] = series.has_price();
  j["estimates"] = estimates_to_json(all);
  j["windows"] = index;

  auto dir = ensure_out_dir(out_dir);
  write_file(dir / "estimates.json", j.dump(2) + "\n");
  write_file(dir / "windows.csv", wcsv);
}

// -------------------------------------------------------------- vol-compare

void run_vol_compare(const IngestOpts& in, const SeriesOpts& o, double c_s,
                     double theta, const std::string& out_dir) {
  est::DepthSeries series = load_series(in, o);
  std::vector<est::WindowVol> rows =
      est::vol_compare(series, c_s, theta, o.window);
  std::string csv = "window,t_begin_s,t_end_s,sigma_rv,sigma_rcg,"
                    "sigma_realized\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv += std::to_string(i);
    csv += ',';
    csv += fmt(rows[i].t_begin);
    csv += ',';
    csv += fmt(rows[i].t_end);
    csv += ',';
    csv += fmt(rows[i].sigma_rv);
    csv += ',';
    csv += fmt(rows[i].sigma_rcg);
    csv += ',';
    csv += fmt(rows[i].sigma_realized);
    csv += '\n';
  }
  auto dir = ensure_out_dir(out_dir);
  write_file(dir / "vol_compare.csv", csv);
}

void add_ingest_options(CLI::App* cmd, IngestOpts& in) {
  cmd->add_option("--input", in.input, "Order-book CSV file to read");
  cmd->add_option("--timestamps", in.ts_mode,
                  "Timestamp layout: auto, first, companion, none")
      ->check(CLI::IsMember({"auto", "first", "companion", "none"}));
  cmd->add_option("--message-file", in.message_file,
                  "Companion file supplying timestamps in its first column");
  cmd->add_option("--levels", in.levels, "Book levels per side in the input")
      ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-book simulation and estimation toolkit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.allow_config_extras(true);
  app.set_config("--config", "",
                 "Config file (key=value with one [section] per command)");

  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "Master seed for stochastic commands");
  app.add_option("--out-dir", out_dir, "Directory for output files")
      ->envname("LOBSIM_OUT_DIR");

  SimulateOpts sim;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "Simulate the two-sided book factor model");
  c_sim->fallthrough();
  c_sim->add_option("--t-end", sim.t_end, "Horizon in seconds");
  c_sim->add_option("--dt", sim.dt, "Step size in seconds");
  c_sim->add_option("--paths", sim.paths,
                    "Independent paths pooled into the summary");
  c_sim->add_option("--scheme", sim.scheme, "Integration scheme")
      ->check(CLI::IsMember({"exact", "milstein"}));
  c_sim->add_option("--eta-b", sim.eta_b, "Bid diffusivity");
  c_sim->add_option("--beta-b", sim.beta_b, "Bid drift");
  c_sim->add_option("--alpha-b", sim.alpha_b, "Bid net order-flow rate");
  c_sim->add_option("--band-b", sim.band_b, "Bid band width (price units)");
  c_sim->add_option("--eta-a", sim.eta_a, "Ask diffusivity");
  c_sim->add_option("--beta-a", sim.beta_a, "Ask drift");
  c_sim->add_option("--alpha-a", sim.alpha_a, "Ask net order-flow rate");
  c_sim->add_option("--band-a", sim.band_a, "Ask band width (price units)");
  c_sim->add_option("--sigma-b", sim.sigma_b, "Bid factor volatility");
  c_sim->add_option("--sigma-a", sim.sigma_a, "Ask factor volatility");
  c_sim->add_option("--rho", sim.rho, "Driver correlation");
  c_sim->add_option("--theta", sim.theta, "Tick size in price units");
  c_sim->add_option("--c-s", sim.c_s, "Price-impact constant");
  c_sim->add_option("--vbar-b", sim.vbar_b,
                    "Bid source intensity (0 = homogeneous two-factor mode)");
  c_sim->add_option("--vbar-a", sim.vbar_a,
                    "Ask source intensity (0 = homogeneous two-factor mode)");
  c_sim->add_option("--v0-b", sim.v0_b, "Initial bid volume factor");
  c_sim->add_option("--v0-a", sim.v0_a, "Initial ask volume factor");
  c_sim->add_option("--s0", sim.s0, "Initial mid-price");

  IngestOpts pf_in;
  ProfileFitOpts pf;
  CLI::App* c_pf = app.add_subcommand(
      "profile-fit", "Average the book profile and fit its shape");
  c_pf->fallthrough();
  add_ingest_options(c_pf, pf_in);
  c_pf->add_option("--max-ticks", pf.max_ticks,
                   "Ticks from the touch kept in the profile")
      ->check(CLI::PositiveNumber);
  c_pf->add_option("--window", pf.window, "Window length in seconds");
  c_pf->add_option("--fit-l", pf.fit_l,
                   "Band width for the fits in ticks (0: twice --max-ticks)");
  c_pf->add_option("--tick-units", pf.tick_units,
                   "Price-grid spacing in price units (0: infer)");
  c_pf->add_option("--scaling-exponent-a", pf.scaling_exponent_a,
                   "Power scaling of the reported tick coordinate");
  c_pf->add_flag("--nonlinear-scaling", pf.nonlinear,
                 "Also estimate the tick-scaling exponent in the fit");

  IngestOpts est_in;
  SeriesOpts est_o;
  CLI::App* c_est = app.add_subcommand(
      "estimate", "Estimate model parameters from a depth series");
  c_est->fallthrough();
  add_ingest_options(c_est, est_in);
  c_est->add_option("--dt", est_o.dt, "Resampling interval in seconds");
  c_est->add_option("--k-depth", est_o.k_depth,
                    "Levels averaged into the depth measure")
      ->check(CLI::PositiveNumber);
  c_est->add_option("--window", est_o.window,
                    "Per-window table length in seconds");

  IngestOpts vc_in;
  SeriesOpts vc_o;
  double vc_cs = 0.5, vc_theta = 0.01;
  CLI::App* c_vc = app.add_subcommand(
      "vol-compare", "Compare depth-based and realized price volatility");
  c_vc->fallthrough();
  add_ingest_options(c_vc, vc_in);
  c_vc->add_option("--dt", vc_o.dt, "Resampling interval in seconds");
  c_vc->add_option("--k-depth", vc_o.k_depth,
                   "Levels averaged into the depth measure")
      ->check(CLI::PositiveNumber);
  c_vc->add_option("--window", vc_o.window, "Window length in seconds");
  c_vc->add_option("--c-s", vc_cs, "Price-impact constant");
  c_vc->add_option("--theta", vc_theta, "Tick size in price units");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_sim)) run_simulate(sim, seed, out_dir);
    if (app.got_subcommand(c_pf)) run_profile_fit(pf_in, pf, out_dir);
    if (app.got_subcommand(c_est)) run_estimate(est_in, est_o, out_dir);
    if (app.got_subcommand(c_vc))
      run_vol_compare(vc_in, vc_o, vc_cs, vc_theta, out_dir);
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const data_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

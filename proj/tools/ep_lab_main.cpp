#include <eplab/eplab.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(eplab_status st) {
  switch (st) {
  case EPLAB_OK:
    return 0;
  case EPLAB_ERR_INVALID_ARGUMENT:
  case EPLAB_ERR_UNKNOWN_PRESET:
  case EPLAB_ERR_TOO_FEW_POINTS:
  case EPLAB_ERR_PARSE:
  case EPLAB_ERR_IO:
    return 2;
  case EPLAB_ERR_NO_ROOT_IN_INTERVAL:
  case EPLAB_ERR_NO_CONVERGENCE:
  case EPLAB_ERR_LEFT_BOX:
    return 4;
  default:
    return 3; // numeric failures
  }
}

[[noreturn]] void die(eplab_status st) {
  std::cerr << "ep-lab: " << eplab_last_error() << "\n";
  std::exit(exit_code_for(st));
}

[[noreturn]] void die_usage(const std::string &msg) {
  std::cerr << "ep-lab: " << msg << "\n";
  std::exit(2);
}

void check(eplab_status st) {
  if (st != EPLAB_OK)
    die(st);
}

struct ScenarioHandle {
  eplab_scenario *sc = nullptr;
  ~ScenarioHandle() { eplab_scenario_free(sc); }
};

struct SweepHandle {
  eplab_sweep *sw = nullptr;
  ~SweepHandle() { eplab_sweep_free(sw); }
};

struct CommonOpts {
  std::string preset;
  std::string config;
  std::string outdir = ".";
  int grid_n = 0;
  bool gnuplot = false;
};

void add_common(CLI::App *cmd, CommonOpts &o) {
  cmd->add_option("--preset", o.preset,
                  "preset name (fig1_left, fig1_right, fig2_left, fig2_right)");
  cmd->add_option("--config", o.config, "scenario config JSON path");
  cmd->add_option("-o,--out", o.outdir, "output directory (created if absent)");
  cmd->add_option("--grid", o.grid_n, "override the grid point count");
  cmd->add_flag("--gnuplot", o.gnuplot,
                "emit a gnuplot script instead of plot.svg");
}

bool resolve_scenario(const CommonOpts &o, ScenarioHandle &h) {
  if (!o.preset.empty() && !o.config.empty())
    std::cerr << "ep-lab: warning: --preset overrides --config\n";
  if (!o.preset.empty()) {
    check(eplab_scenario_preset(o.preset.c_str(), &h.sc));
  } else if (!o.config.empty()) {
    std::ifstream in(o.config, std::ios::binary);
    if (!in)
      die_usage("cannot read config file: " + o.config);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    check(eplab_scenario_parse(text.c_str(), &h.sc));
  } else {
    return false;
  }
  if (o.grid_n != 0) {
    double start = 0, stop = 0;
    int count = 0;
    check(eplab_scenario_grid(h.sc, &start, &stop, &count));
    check(eplab_scenario_set_grid(h.sc, start, stop, o.grid_n));
  }
  return true;
}

// -0.0 would print with a sign and break byte-level determinism guarantees
double pz(double v) { return v == 0.0 ? 0.0 : v; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", pz(v));
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", pz(v));
  return buf;
}

void write_text(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    die_usage("cannot write " + path);
  out << content;
  out.flush();
  if (!out)
    die_usage("cannot write " + path);
}

void ensure_outdir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir))
    die_usage("cannot create output directory: " + dir);
}

json scenario_json(const eplab_scenario *sc) {
  char *txt = nullptr;
  check(eplab_scenario_to_json(sc, &txt));
  json j = json::parse(txt);
  eplab_string_free(txt);
  return j;
}

std::string timestamp_iso() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_manifest(const std::string &dir, const std::string &command,
                    const json &config,
                    const std::vector<std::string> &outputs) {
  json m;
  m["command"] = command;
  m["config"] = config;
  m["outputs"] = outputs;
  m["timestamp"] = timestamp_iso();
  m["version"] = eplab_version();
  write_text(dir + "/manifest.json", m.dump(2) + "\n");
}

// ---- plotting ----

struct Series {
  std::string label;
  std::string color;
  bool dashed;
  const std::vector<double> *y;
};

void append_panel(std::string &svg, int index, const std::string &title,
                  const std::vector<double> &x,
                  const std::vector<Series> &series) {
  const double left = 70, right = 770;
  const double top = 20 + index * 295 + 28;
  const double bottom = top + 215;
  double xmin = x.front(), xmax = x.back();
  if (xmax <= xmin)
    xmax = xmin + 1;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const Series &s : series)
    for (double v : *s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (!(ymax > ymin)) {
    ymin -= 1;
    ymax += 1;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double v) {
    return left + (v - xmin) / (xmax - xmin) * (right - left);
  };
  auto py = [&](double v) {
    return bottom - (v - ymin) / (ymax - ymin) * (bottom - top);
  };
  svg += "<g class=\"panel\">\n";
  svg += "<text x=\"70\" y=\"" + fmt6(top - 10) +
         "\" font-size=\"14\" font-family=\"sans-serif\">" + title +
         "</text>\n";
  svg += "<rect x=\"" + fmt6(left) + "\" y=\"" + fmt6(top) + "\" width=\"" +
         fmt6(right - left) + "\" height=\"" + fmt6(bottom - top) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";
  // axis extremes
  svg += "<text x=\"" + fmt6(left) + "\" y=\"" + fmt6(bottom + 16) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + fmt6(xmin) +
         "</text>\n";
  svg += "<text x=\"" + fmt6(right - 30) + "\" y=\"" + fmt6(bottom + 16) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + fmt6(xmax) +
         "</text>\n";
  svg += "<text x=\"" + fmt6(left - 6) + "\" y=\"" + fmt6(bottom) +
         "\" font-size=\"11\" font-family=\"sans-serif\" "
         "text-anchor=\"end\">" +
         fmt6(ymin) + "</text>\n";
  svg += "<text x=\"" + fmt6(left - 6) + "\" y=\"" + fmt6(top + 10) +
         "\" font-size=\"11\" font-family=\"sans-serif\" "
         "text-anchor=\"end\">" +
         fmt6(ymax) + "</text>\n";
  svg += "<text x=\"" + fmt6(0.5 * (left + right)) + "\" y=\"" +
         fmt6(bottom + 16) +
         "\" font-size=\"11\" font-family=\"sans-serif\">a</text>\n";
  double lx = right - 150, ly = top + 14;
  for (const Series &s : series) {
    svg += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"";
    if (s.dashed)
      svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"";
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k)
        svg += " ";
      svg += fmt6(px(x[k])) + "," + fmt6(py((*s.y)[k]));
    }
    svg += "\"/>\n";
    svg += "<line x1=\"" + fmt6(lx) + "\" y1=\"" + fmt6(ly - 4) + "\" x2=\"" +
           fmt6(lx + 18) + "\" y2=\"" + fmt6(ly - 4) + "\" stroke=\"" +
           s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"6 4\"") : "") +
           "/>\n";
    svg += "<text x=\"" + fmt6(lx + 22) + "\" y=\"" + fmt6(ly) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + s.label +
           "</text>\n";
    ly += 14;
  }
  svg += "</g>\n";
}

struct SweepColumns {
  std::vector<double> a, E1, E2, G1, G2, b11, b12, b21, b22, r1, r2, zabs,
      e1b, e2b;
  std::vector<int> defect;
};

SweepColumns collect(const eplab_sweep *sw) {
  SweepColumns c;
  int n = eplab_sweep_count(sw);
  for (int k = 0; k < n; ++k) {
    eplab_sweep_row r;
    check(eplab_sweep_row_at(sw, k, &r));
    c.a.push_back(r.a);
    c.E1.push_back(r.E1);
    c.E2.push_back(r.E2);
    c.G1.push_back(r.G1_half);
    c.G2.push_back(r.G2_half);
    c.b11.push_back(r.b11sq);
    c.b12.push_back(r.b12sq);
    c.b21.push_back(r.b21sq);
    c.b22.push_back(r.b22sq);
    c.r1.push_back(r.r1_abs);
    c.r2.push_back(r.r2_abs);
    c.zabs.push_back(r.Z_abs);
    c.defect.push_back(r.defect);
    c.e1b.push_back(r.e1_bare);
    c.e2b.push_back(r.e2_bare);
  }
  return c;
}

std::string render_svg(const SweepColumns &c) {
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"905\" viewBox=\"0 0 800 905\">\n";
  svg += "<rect width=\"800\" height=\"905\" fill=\"white\"/>\n";
  append_panel(svg, 0, "energies", c.a,
               {{"E1", "#1f77b4", false, &c.E1},
                {"E2", "#d62728", false, &c.E2},
                {"e1 bare", "#888888", true, &c.e1b},
                {"e2 bare", "#bbbbbb", true, &c.e2b}});
  append_panel(svg, 1, "half widths", c.a,
               {{"G1_half", "#1f77b4", false, &c.G1},
                {"G2_half", "#d62728", false, &c.G2}});
  append_panel(svg, 2, "mixing coefficients", c.a,
               {{"b11sq", "#1f77b4", false, &c.b11},
                {"b12sq", "#d62728", false, &c.b12},
                {"b21sq", "#2ca02c", false, &c.b21},
                {"b22sq", "#9467bd", false, &c.b22}});
  svg += "</svg>\n";
  return svg;
}

std::string render_gnuplot() {
  return "set datafile separator ','\n"
         "set terminal svg size 800,905\n"
         "set output 'plot.svg'\n"
         "set multiplot layout 3,1\n"
         "set xlabel 'a'\n"
         "set ylabel 'E'\n"
         "plot 'sweep.csv' skip 1 using 1:2 with lines lw 2 title 'E1', \\\n"
         "     '' skip 1 using 1:3 with lines lw 2 title 'E2', \\\n"
         "     '' skip 1 using 1:14 with lines dt 2 title 'e1 bare', \\\n"
         "     '' skip 1 using 1:15 with lines dt 2 title 'e2 bare'\n"
         "set ylabel 'Gamma/2'\n"
         "plot 'sweep.csv' skip 1 using 1:4 with lines lw 2 title 'G1_half', "
         "\\\n"
         "     '' skip 1 using 1:5 with lines lw 2 title 'G2_half'\n"
         "set ylabel '|b|^2'\n"
         "plot 'sweep.csv' skip 1 using 1:6 with lines title 'b11sq', \\\n"
         "     '' skip 1 using 1:7 with lines title 'b12sq', \\\n"
         "     '' skip 1 using 1:8 with lines title 'b21sq', \\\n"
         "     '' skip 1 using 1:9 with lines title 'b22sq'\n"
         "unset multiplot\n";
}

// ---- subcommands ----

int cmd_sweep(const CommonOpts &o) {
  ScenarioHandle h;
  if (!resolve_scenario(o, h))
    die_usage("sweep needs --preset or --config");
  ensure_outdir(o.outdir);
  SweepHandle sw;
  check(eplab_sweep_run(h.sc, 0, &sw.sw));

  std::string csv = "a,E1,E2,G1_half,G2_half,b11sq,b12sq,b21sq,b22sq,"
                    "r1_abs,r2_abs,Z_abs,defect,e1_bare,e2_bare\n";
  int n = eplab_sweep_count(sw.sw);
  for (int k = 0; k < n; ++k) {
    eplab_sweep_row r;
    check(eplab_sweep_row_at(sw.sw, k, &r));
    csv += fmt(r.a) + "," + fmt(r.E1) + "," + fmt(r.E2) + "," +
           fmt(r.G1_half) + "," + fmt(r.G2_half) + "," + fmt(r.b11sq) + "," +
           fmt(r.b12sq) + "," + fmt(r.b21sq) + "," + fmt(r.b22sq) + "," +
           fmt(r.r1_abs) + "," + fmt(r.r2_abs) + "," + fmt(r.Z_abs) + "," +
           (r.defect ? "1" : "0") + "," + fmt(r.e1_bare) + "," +
           fmt(r.e2_bare) + "\n";
  }
  write_text(o.outdir + "/sweep.csv", csv);

  std::vector<std::string> outputs = {"sweep.csv"};
  if (o.gnuplot) {
    write_text(o.outdir + "/plot.gp", render_gnuplot());
    outputs.push_back("plot.gp");
  } else {
    write_text(o.outdir + "/plot.svg", render_svg(collect(sw.sw)));
    outputs.push_back("plot.svg");
  }
  write_manifest(o.outdir, "sweep", scenario_json(h.sc), outputs);
  return 0;
}

const char *kind_name(int kind) {
  switch (kind) {
  case EPLAB_EP_ANALYTIC_IMAG_COUPLING:
    return "analytic_imag_coupling";
  case EPLAB_EP_ANALYTIC_GAINLOSS_REAL_COUPLING:
    return "analytic_gainloss_real_coupling";
  default:
    return "newton_general";
  }
}

const char *context_name(int ctx) {
  switch (ctx) {
  case EPLAB_CONTEXT_Z_REAL_SIDE:
    return "Z_real_side";
  case EPLAB_CONTEXT_Z_IMAG_SIDE:
    return "Z_imag_side";
  default:
    return "none";
  }
}

int cmd_find_ep(const CommonOpts &o, const std::string &unknowns_arg,
                const std::vector<double> &box_arg,
                const std::vector<double> &seed_arg, double at_arg,
                bool at_given) {
  ScenarioHandle h;
  if (!resolve_scenario(o, h))
    die_usage("find-ep needs --preset or --config");

  std::vector<std::string> unknowns;
  std::string token;
  for (std::size_t i = 0; i <= unknowns_arg.size(); ++i) {
    if (i == unknowns_arg.size() || unknowns_arg[i] == ',') {
      if (!token.empty())
        unknowns.push_back(token);
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(unknowns_arg[i]))) {
      token += unknowns_arg[i];
    }
  }
  auto valid = [](const std::string &u) {
    return u == "a" || u == "omega_r" || u == "omega_i";
  };
  if (unknowns.size() != 2 || !valid(unknowns[0]) || !valid(unknowns[1]) ||
      unknowns[0] == unknowns[1])
    die_usage("--unknowns needs two distinct names from a, omega_r, omega_i");

  double start = 0, stop = 0;
  int count = 0;
  check(eplab_scenario_grid(h.sc, &start, &stop, &count));
  double fixed_a = at_given ? at_arg : 0.5 * (start + stop);

  eplab_system mid;
  check(eplab_scenario_system_at(h.sc, 0.5 * (start + stop), &mid));
  double scale0 = std::max(
      {std::hypot(mid.e1, 0.5 * mid.g1), std::hypot(mid.e2, 0.5 * mid.g2),
       std::hypot(mid.omega.re, mid.omega.im), 1.0});

  // default boxes: the grid range for a; [0, 2*scale] for a coupling
  // component (omega and -omega are spectrally equivalent, so the default
  // searches the non-negative half; pass --box for a signed search)
  double lo[2], hi[2];
  for (int i = 0; i < 2; ++i) {
    if (unknowns[static_cast<std::size_t>(i)] == "a") {
      lo[i] = start;
      hi[i] = stop;
    } else {
      lo[i] = 0.0;
      hi[i] = 2.0 * scale0;
    }
  }
  if (!box_arg.empty()) {
    if (box_arg.size() != 4)
      die_usage("--box needs lo1,hi1,lo2,hi2");
    lo[0] = box_arg[0];
    hi[0] = box_arg[1];
    lo[1] = box_arg[2];
    hi[1] = box_arg[3];
  }
  const double *seed = nullptr;
  double seed_buf[2];
  if (!seed_arg.empty()) {
    if (seed_arg.size() != 2)
      die_usage("--seed needs s1,s2");
    seed_buf[0] = seed_arg[0];
    seed_buf[1] = seed_arg[1];
    seed = seed_buf;
  }

  // a family with omega_r structurally frozen at zero may admit a proof
  // that no EP exists; report it instead of letting Newton wander
  bool unknown_omega_r =
      unknowns[0] == "omega_r" || unknowns[1] == "omega_r";
  if (!unknown_omega_r) {
    eplab_certificate cert;
    eplab_status st = eplab_no_ep_certificate(h.sc, &cert);
    if (st == EPLAB_OK) {
      std::cerr << cert.text << "\n";
      json j;
      j["certificate"]["family"] = cert.family;
      if (cert.family == 1)
        j["certificate"]["min_bound"] = cert.min_bound;
      else
        j["certificate"]["obstruction"] = cert.obstruction;
      j["certificate"]["min_abs_z"] = cert.min_abs_z;
      j["certificate"]["a_at_min"] = cert.a_at_min;
      j["certificate"]["omega_r"] = 0.0;
      j["certificate"]["text"] = cert.text;
      std::cout << j.dump(2) << "\n";
      return 4;
    }
    if (st != EPLAB_ERR_FAMILY_MISMATCH)
      die(st);
  }

  eplab_ep_solution sol;
  check(eplab_find_ep(h.sc, unknowns[0].c_str(), unknowns[1].c_str(), fixed_a,
                      lo, hi, seed, &sol));
  json j;
  for (int i = 0; i < sol.nparams; ++i)
    j[sol.params[i].name] = sol.params[i].value;
  j["residual"] = sol.residual;
  j["kind"] = kind_name(sol.kind);
  j["branch_context"] = context_name(sol.branch_context);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_smatrix(const CommonOpts &o, const std::vector<std::string> &res_arg,
                const std::vector<std::string> &dp_arg, bool from_sweep,
                double at_arg, bool at_given, double emin, double emax,
                int points, bool features) {
  int modes = (res_arg.empty() ? 0 : 1) + (dp_arg.empty() ? 0 : 1) +
              (from_sweep ? 1 : 0);
  if (modes != 1)
    die_usage("pick one of --res, --double-pole, --from-sweep");
  if (!(emax > emin) || points < 2)
    die_usage("empty energy range");

  struct Res {
    double e, g;
  };
  std::vector<Res> res;
  double dp_e = 0, dp_g = 0;
  bool dp = false;
  json cfg;

  ScenarioHandle h;
  if (!res_arg.empty()) {
    if (res_arg.size() > 2)
      die_usage("--res accepts at most two resonances");
    for (const std::string &s : res_arg) {
      double e = 0, g = 0;
      if (std::sscanf(s.c_str(), "%lf,%lf", &e, &g) != 2)
        die_usage("--res needs E,Gamma: " + s);
      res.push_back({e, g});
      cfg["resonances"].push_back({e, g});
    }
  } else if (!dp_arg.empty()) {
    bool got_e = false, got_g = false;
    for (const std::string &s : dp_arg) {
      double v = 0;
      if (std::sscanf(s.c_str(), "E_d=%lf", &v) == 1) {
        dp_e = v;
        got_e = true;
      } else if (std::sscanf(s.c_str(), "G_d=%lf", &v) == 1) {
        dp_g = v;
        got_g = true;
      } else {
        die_usage("--double-pole needs E_d=<v> G_d=<v>: " + s);
      }
    }
    if (!got_e || !got_g)
      die_usage("--double-pole needs both E_d=<v> and G_d=<v>");
    dp = true;
    cfg["double_pole"]["E_d"] = dp_e;
    cfg["double_pole"]["G_d"] = dp_g;
  } else {
    if (!resolve_scenario(o, h))
      die_usage("--from-sweep needs --preset or --config");
    if (!at_given)
      die_usage("--from-sweep needs --at");
    SweepHandle sw;
    check(eplab_sweep_run(h.sc, 0, &sw.sw));
    int n = eplab_sweep_count(sw.sw);
    int best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      eplab_sweep_row r;
      check(eplab_sweep_row_at(sw.sw, k, &r));
      double d = std::fabs(r.a - at_arg);
      if (d < bestd) {
        bestd = d;
        best = k;
      }
    }
    eplab_sweep_row r;
    check(eplab_sweep_row_at(sw.sw, best, &r));
    res.push_back({r.E1, 2.0 * r.G1_half});
    res.push_back({r.E2, 2.0 * r.G2_half});
    cfg["scenario"] = scenario_json(h.sc);
    cfg["at"] = at_arg;
    cfg["resonances"].push_back({res[0].e, res[0].g});
    cfg["resonances"].push_back({res[1].e, res[1].g});
  }
  cfg["emin"] = emin;
  cfg["emax"] = emax;
  cfg["points"] = points;

  ensure_outdir(o.outdir);
  std::vector<double> energy(static_cast<std::size_t>(points));
  std::vector<double> sigma(static_cast<std::size_t>(points));
  std::string csv = "E,sigma,S_re,S_im\n";
  for (int k = 0; k < points; ++k) {
    double e = emin + (k * (emax - emin)) / (points - 1);
    eplab_complex s;
    if (dp)
      check(eplab_s_double_pole(e, dp_e, dp_g, &s));
    else if (res.size() == 1)
      check(eplab_s_one(e, res[0].e, res[0].g, &s));
    else
      check(eplab_s_two(e, res[0].e, res[0].g, res[1].e, res[1].g, &s));
    double sg = eplab_cross_section(s);
    energy[static_cast<std::size_t>(k)] = e;
    sigma[static_cast<std::size_t>(k)] = sg;
    csv += fmt(e) + "," + fmt(sg) + "," + fmt(s.re) + "," + fmt(s.im) + "\n";
  }
  write_text(o.outdir + "/sigma.csv", csv);
  std::vector<std::string> outputs = {"sigma.csv"};

  if (features) {
    eplab_peak peaks[64], minima[64];
    int np = 0, nm = 0;
    check(eplab_line_shape_features(energy.data(), sigma.data(), points,
                                    peaks, 64, &np, minima, 64, &nm));
    json f;
    f["peaks"] = json::array();
    for (int i = 0; i < np; ++i) {
      json p;
      p["position"] = peaks[i].position;
      p["height"] = peaks[i].height;
      p["left_halfwidth"] = peaks[i].left_halfwidth;
      p["right_halfwidth"] = peaks[i].right_halfwidth;
      p["asymmetry"] = peaks[i].asymmetry;
      f["peaks"].push_back(p);
    }
    f["minima"] = json::array();
    for (int i = 0; i < nm; ++i) {
      json p;
      p["position"] = minima[i].position;
      p["height"] = minima[i].height;
      f["minima"].push_back(p);
    }
    write_text(o.outdir + "/features.json", f.dump(2) + "\n");
    outputs.push_back("features.json");
  }
  write_manifest(o.outdir, "smatrix", cfg, outputs);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"two-level non-Hermitian spectra: sweeps, exceptional points "
               "and resonance line shapes"};
  app.set_version_flag("--version", eplab_version());
  app.require_subcommand(1);

  CommonOpts sweep_o, findep_o, smatrix_o;

  CLI::App *sweep = app.add_subcommand("sweep", "parameter sweep to CSV/SVG");
  add_common(sweep, sweep_o);

  CLI::App *findep =
      app.add_subcommand("find-ep", "locate an exceptional point");
  add_common(findep, findep_o);
  std::string unknowns = "a,omega_r";
  std::vector<double> box, seed;
  double at_f = 0.0;
  findep->add_option("--unknowns", unknowns,
                     "two of a, omega_r, omega_i (comma separated)");
  findep->add_option("--box", box, "search box lo1,hi1,lo2,hi2")
      ->delimiter(',')
      ->expected(4);
  findep->add_option("--seed", seed, "Newton seed s1,s2")
      ->delimiter(',')
      ->expected(2);
  CLI::Option *at_opt_f =
      findep->add_option("--at", at_f, "fixed a when a is not an unknown");

  CLI::App *smatrix =
      app.add_subcommand("smatrix", "resonance line shape to CSV");
  add_common(smatrix, smatrix_o);
  std::vector<std::string> res_arg, dp_arg;
  bool from_sweep = false, features = false;
  double at_s = 0.0, emin = -1.0, emax = 1.0;
  int points = 1001;
  smatrix->add_option("--res", res_arg,
                      "resonance E,Gamma (repeat for two resonances)");
  smatrix->add_option("--double-pole", dp_arg,
                      "double pole as E_d=<v> G_d=<v>")
      ->expected(2);
  smatrix->add_flag("--from-sweep", from_sweep,
                    "take both resonances from a sweep row");
  CLI::Option *at_opt_s =
      smatrix->add_option("--at", at_s, "sweep parameter for --from-sweep");
  smatrix->add_option("--emin", emin, "energy range start");
  smatrix->add_option("--emax", emax, "energy range stop");
  smatrix->add_option("--points", points, "energy grid size");
  smatrix->add_flag("--features", features, "also write features.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand(sweep))
    return cmd_sweep(sweep_o);
  if (app.got_subcommand(findep))
    return cmd_find_ep(findep_o, unknowns, box, seed, at_f,
                       at_opt_f->count() > 0);
  return cmd_smatrix(smatrix_o, res_arg, dp_arg, from_sweep, at_s,
                     at_opt_s->count() > 0, emin, emax, points, features);
}

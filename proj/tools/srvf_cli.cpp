// srvf: command line front end for the elastic shape library.
//
// Exit codes: 0 success, 2 file or input errors, 3 numeric or configuration
// errors. Outputs are deterministic: repeated runs produce identical bytes.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "srvf/srvf.hpp"

namespace {

struct GlobalOpts {
  std::size_t grid_n = 1024;
  int dp_radius = 4;
  bool axis_moves = true;
  double tol = 1e-6;
  std::string output_dir = ".";
  std::string format = "csv";
};

srvf::DpOptions dp_options(const GlobalOpts& g, std::size_t lattice = 0) {
  srvf::DpOptions o;
  o.radius = g.dp_radius;
  o.axis_moves = g.axis_moves;
  o.lattice_n = lattice;
  return o;
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  return (std::filesystem::path(g.output_dir) / name).string();
}

srvf::Rational parse_rational_or_decimal(const std::string& s) {
  if (s.find('/') != std::string::npos) return srvf::parse_rational(s);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return srvf::rational_from_double(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + s + "'");
  }
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = s.find(',', start);
    const std::string tok =
        s.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!tok.empty()) out.push_back(std::stoull(tok));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (auto v : parse_size_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

void print_distance(double d) { std::printf("%.12f\n", d); }

// ---- transform ----

struct TransformArgs {
  std::string input;
  std::string out;
  bool inverse = false;
};

void run_transform(const GlobalOpts& g, const TransformArgs& a) {
  const bool json = g.format == "json";
  if (a.inverse) {
    const srvf::Srvf q = json ? srvf::read_srvf_json(a.input)
                              : srvf::read_srvf_csv(a.input);
    const srvf::Curve c = srvf::srvt_inverse(q);
    const std::string path =
        a.out.empty() ? out_path(g, json ? "curve.json" : "curve.csv") : a.out;
    if (json)
      srvf::write_curve_json(c, path);
    else
      srvf::write_curve_csv(c, path);
    std::printf("wrote %s\n", path.c_str());
  } else {
    const srvf::Curve c = srvf::read_curve(a.input);
    const srvf::Srvf q = srvt(c);
    const std::string path =
        a.out.empty() ? out_path(g, json ? "srvf.json" : "srvf.csv") : a.out;
    if (json)
      srvf::write_srvf_json(q, path);
    else
      srvf::write_srvf_csv(q, path);
    std::printf("wrote %s\n", path.c_str());
  }
}

// ---- distance ----

struct DistanceArgs {
  std::string b, c;
  std::string mode = "param";
  std::string alignment_out;
};

void run_distance(const GlobalOpts& g, const DistanceArgs& a) {
  const srvf::Curve b = srvf::read_curve(a.b);
  const srvf::Curve c = srvf::read_curve(a.c);
  if (a.mode == "param") {
    print_distance(srvf::dist_param(b, c));
    return;
  }
  if (a.mode != "quotient")
    throw std::invalid_argument("distance: mode must be param or quotient");
  const auto al = srvf::quotient_distance(b, c, dp_options(g, g.grid_n));
  print_distance(al.quotient_distance);
  if (!a.alignment_out.empty()) {
    srvf::write_alignment_json(al, a.alignment_out + ".json");
    srvf::write_alignment_csv(al, a.alignment_out + ".csv");
  }
}

// ---- geodesic ----

struct GeodesicArgs {
  std::string b, c;
  std::size_t steps = 8;
  std::string prefix = "geodesic";
};

void run_geodesic(const GlobalOpts& g, const GeodesicArgs& a) {
  if (a.steps < 1) throw std::invalid_argument("geodesic: steps must be >= 1");
  const srvf::Curve b = srvf::read_curve(a.b);
  const srvf::Curve c = srvf::read_curve(a.c);
  const double total = srvf::dist_param(b, c);
  auto table = srvf::detail::open_out(out_path(g, a.prefix + "_distances.csv"));
  table << "step,s,dist_from_b,dist_to_c\n";
  for (std::size_t k = 0; k <= a.steps; ++k) {
    const double s =
        static_cast<double>(k) / static_cast<double>(a.steps);
    const srvf::Curve step = srvf::geodesic(b, c, s);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03zu.csv", a.prefix.c_str(), k);
    srvf::write_curve_csv(step, out_path(g, name));
    table << k << "," << srvf::format_full(s) << ","
          << srvf::format_full(srvf::dist_param(b, step)) << ","
          << srvf::format_full(srvf::dist_param(step, c)) << "\n";
  }
  std::printf("wrote %zu geodesic steps, total param distance %.12f\n",
              a.steps + 1, total);
}

// ---- counterexample ----

struct CounterexampleArgs {
  int level = 10;
  std::string epsilon = "1/10";
  std::string delta;
  std::string grid_list;
  std::string kprime_list;
  std::string prefix = "counterexample";
};

void run_counterexample(const GlobalOpts& g, const CounterexampleArgs& a) {
  srvf::CounterexampleConfig cfg;
  cfg.cantor_level = a.level;
  cfg.epsilon = parse_rational_or_decimal(a.epsilon);
  cfg.grid_n = g.grid_n;
  if (!a.delta.empty()) cfg.fatten_delta = parse_rational_or_decimal(a.delta);
  cfg.validate();

  std::vector<std::size_t> grids =
      a.grid_list.empty() ? std::vector<std::size_t>{cfg.grid_n}
                          : parse_size_list(a.grid_list);
  std::vector<int> kprimes;
  if (a.kprime_list.empty()) {
    for (int k = 1; k <= std::min(8, cfg.cantor_level); ++k) kprimes.push_back(k);
  } else {
    kprimes = parse_int_list(a.kprime_list);
  }

  const auto rep =
      srvf::counterexample_report(cfg, grids, kprimes, dp_options(g));
  srvf::write_report_json(rep, out_path(g, a.prefix + "_report.json"));
  srvf::write_report_csv(rep, out_path(g, a.prefix + "_report.csv"));
  srvf::write_report_plot_csv(rep, out_path(g, a.prefix + "_plot.csv"));

  // the pair itself, at the finest grid, as SRVFs and as curves
  srvf::CounterexampleConfig fin = cfg;
  fin.grid_n = grids.back();
  const auto pq = srvf::build_pq(fin);
  srvf::write_srvf_csv(pq.p, out_path(g, a.prefix + "_p.csv"));
  srvf::write_srvf_csv(pq.q, out_path(g, a.prefix + "_q.csv"));
  srvf::write_curve_csv(srvf::srvt_inverse(pq.p), out_path(g, a.prefix + "_b.csv"));
  srvf::write_curve_csv(srvf::srvt_inverse(pq.q), out_path(g, a.prefix + "_c.csv"));
  {
    auto out = srvf::detail::open_out(out_path(g, a.prefix + "_cantor.json"));
    out << srvf::interval_set_to_json(pq.B).dump(2) << "\n";
  }

  std::printf("dist_sq = %s = %.12f\n", srvf::to_string(rep.dist_sq_exact).c_str(),
              rep.dist_sq);
  for (std::size_t i = 0; i < grids.size(); ++i)
    std::printf("N=%zu: dp=%.12f gap_to_half=%.12f qdist_sq=%.12f resolvable_kprime=%d\n",
                grids[i], rep.dp_values[i], 0.5 - rep.dp_values[i], rep.qdist_sq[i],
                rep.resolvable[i]);
  for (std::size_t i = 0; i < kprimes.size(); ++i)
    std::printf("k'=%d: explicit=%.12f gap_to_half=%.12f\n", kprimes[i],
                srvf::to_double(rep.explicit_exact[i]),
                0.5 - srvf::to_double(rep.explicit_exact[i]));
}

// ---- matrix ----

struct MatrixArgs {
  std::string corpus;
  std::string out;
};

void run_matrix(const GlobalOpts& g, const MatrixArgs& a) {
  const auto entries = srvf::read_corpus_json(a.corpus);
  std::vector<srvf::ShapeRecord> records;
  records.reserve(entries.size());
  for (const auto& [id, curve] : entries)
    records.push_back(srvf::canonical(curve, id));
  const auto m = srvf::distance_matrix(records, dp_options(g, g.grid_n));
  if (!m.zero_length_ids.empty()) {
    std::fprintf(stderr, "warning: zero-length curves:");
    for (const auto& id : m.zero_length_ids) std::fprintf(stderr, " %s", id.c_str());
    std::fprintf(stderr, "\n");
  }
  if (a.out.empty()) {
    srvf::write_matrix_csv(m, std::cout);
  } else {
    srvf::write_matrix_csv(m, a.out);
    std::printf("wrote %s\n", a.out.c_str());
  }
}

// ---- canonical ----

struct CanonicalArgs {
  std::string input;
  std::string out;
  std::string warp_out;
};

void run_canonical(const GlobalOpts& g, const CanonicalArgs& a) {
  const srvf::Curve c = srvf::read_curve(a.input);
  const auto [rep, warp] = srvf::constant_speed(c);
  const bool json = g.format == "json";
  const std::string path =
      a.out.empty() ? out_path(g, json ? "canonical.json" : "canonical.csv") : a.out;
  if (json)
    srvf::write_curve_json(rep, path);
  else
    srvf::write_curve_csv(rep, path);
  if (!a.warp_out.empty()) srvf::write_warp_csv(warp, a.warp_out);
  std::printf("wrote %s\n", path.c_str());
}

// ---- probe ----

struct ProbeArgs {
  std::string curve;
  std::string h;
  std::string eps_list = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6";
};

void run_probe(const GlobalOpts&, const ProbeArgs& a) {
  const srvf::Curve c = srvf::read_curve(a.curve);
  const srvf::Curve h = srvf::read_curve(a.h);
  std::vector<double> eps;
  {
    std::size_t start = 0;
    const std::string& s = a.eps_list;
    while (start <= s.size()) {
      const std::size_t pos = s.find(',', start);
      const std::string tok =
          s.substr(start, pos == std::string::npos ? pos : pos - start);
      if (!tok.empty()) eps.push_back(std::stod(tok));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  if (eps.empty()) throw std::invalid_argument("probe: empty eps list");
  const auto values = srvf::probe_nondifferentiability(c, h, eps);
  std::printf("eps,value\n");
  for (std::size_t i = 0; i < eps.size(); ++i)
    std::printf("%s,%s\n", srvf::format_full(eps[i]).c_str(),
                srvf::format_full(values[i]).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  CLI::App app{"square-root velocity transforms, elastic distances and the "
               "reparametrisation counterexample"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file")->envname("SRVF_CONFIG");
  app.add_option("--grid-n", g.grid_n, "lattice size for quotient distances")
      ->capture_default_str();
  app.add_option("--dp-radius", g.dp_radius, "largest DP step component")
      ->capture_default_str();
  app.add_flag("--axis-moves,!--no-axis-moves", g.axis_moves,
               "allow one-sided pauses in the DP (semigroup moves)")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance for equivalence checks")
      ->capture_default_str();
  app.add_option("--output-dir", g.output_dir, "directory for generated files")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  TransformArgs ta;
  auto* t = app.add_subcommand("transform", "curve -> SRVF (or back with --inverse)");
  t->add_option("input", ta.input, "input file")->required();
  t->add_option("--out", ta.out, "output file");
  t->add_flag("--inverse", ta.inverse, "apply the inverse transform");

  DistanceArgs da;
  auto* d = app.add_subcommand("distance", "distance between two curves");
  d->add_option("b", da.b, "first curve")->required();
  d->add_option("c", da.c, "second curve")->required();
  d->add_option("--mode", da.mode, "param or quotient")
      ->check(CLI::IsMember({"param", "quotient"}))
      ->capture_default_str();
  d->add_option("--alignment-out", da.alignment_out,
                "write the optimal warps to PREFIX.json and PREFIX.csv");

  GeodesicArgs ga;
  auto* ge = app.add_subcommand("geodesic", "interpolating curves between two shapes");
  ge->add_option("b", ga.b, "first curve")->required();
  ge->add_option("c", ga.c, "second curve")->required();
  ge->add_option("--steps", ga.steps, "number of segments")->capture_default_str();
  ge->add_option("--out-prefix", ga.prefix, "file name prefix")->capture_default_str();

  CounterexampleArgs ca;
  auto* ce = app.add_subcommand("counterexample",
                                "reproduce the optimal-reparametrisation gap");
  ce->add_option("--level", ca.level, "Cantor construction depth")
      ->capture_default_str();
  ce->add_option("--epsilon", ca.epsilon, "turning rate, rational or decimal, < 1/6")
      ->capture_default_str();
  ce->add_option("--delta", ca.delta, "fattening override (default 4^-(k'+2))");
  ce->add_option("--grid-list", ca.grid_list, "comma separated lattice sizes");
  ce->add_option("--kprime-list", ca.kprime_list, "comma separated truncation levels");
  ce->add_option("--out-prefix", ca.prefix, "file name prefix")->capture_default_str();

  MatrixArgs ma;
  auto* mx = app.add_subcommand("matrix", "pairwise quotient distances for a corpus");
  mx->add_option("corpus", ma.corpus, "corpus JSON file")->required();
  mx->add_option("--out", ma.out, "output CSV (default: stdout)");

  CanonicalArgs cna;
  auto* cn = app.add_subcommand("canonical", "constant-speed representative");
  cn->add_option("input", cna.input, "input curve")->required();
  cn->add_option("--out", cna.out, "output file");
  cn->add_option("--warp-out", cna.warp_out, "also write the recovered warp");

  ProbeArgs pa;
  auto* pr = app.add_subcommand("probe", "difference quotients of the transform");
  pr->add_option("curve", pa.curve, "base curve")->required();
  pr->add_option("perturbation", pa.h,
                 "perturbation curve, supported where the base curve is flat")
      ->required();
  pr->add_option("--eps-list", pa.eps_list, "comma separated step sizes")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;  // bad flags or config file
  }

  try {
    if (t->parsed()) run_transform(g, ta);
    if (d->parsed()) run_distance(g, da);
    if (ge->parsed()) run_geodesic(g, ga);
    if (ce->parsed()) run_counterexample(g, ca);
    if (mx->parsed()) run_matrix(g, ma);
    if (cn->parsed()) run_canonical(g, cna);
    if (pr->parsed()) run_probe(g, pa);
  } catch (const srvf::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

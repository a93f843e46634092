#pragma once

// File formats. CSV carries one float per cell with 17 significant digits so
// emit/parse round-trips are exact; JSON goes through nlohmann::json, whose
// shortest-round-trip doubles are exact as well. Parse failures throw
// ParseError with file and line context.

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srvf/counterexample.hpp"
#include "srvf/curve.hpp"
#include "srvf/dp.hpp"
#include "srvf/interval_set.hpp"
#include "srvf/rational.hpp"
#include "srvf/shape.hpp"

namespace srvf {

struct ParseError : std::runtime_error {
  ParseError(const std::string& where, std::size_t line, const std::string& msg)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
    out.back().pop_back();
  return out;
}

inline double parse_double(const std::string& tok, const std::string& where,
                           std::size_t line) {
  std::size_t a = tok.find_first_not_of(" \t");
  std::size_t b = tok.find_last_not_of(" \t");
  if (a == std::string::npos)
    throw ParseError(where, line, "empty numeric field");
  double v = 0.0;
  const char* first = tok.data() + a;
  const char* last = tok.data() + b + 1;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ParseError(where, line, "cannot parse number '" + tok + "'");
  return v;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  return out;
}

}  // namespace detail

// ---- curves: CSV "t,x1,...,xd", knots strictly increasing from 0 to 1 ----

inline void write_curve_csv(const Curve& c, std::ostream& out) {
  out << "t";
  for (std::size_t k = 1; k <= c.dim(); ++k) out << ",x" << k;
  out << "\n";
  for (std::size_t i = 0; i <= c.cells(); ++i) {
    out << format_full(c.knots()[i]);
    for (const double v : c.point(i)) out << "," << format_full(v);
    out << "\n";
  }
}

inline void write_curve_csv(const Curve& c, const std::string& path) {
  auto out = detail::open_out(path);
  write_curve_csv(c, out);
}

inline Curve read_curve_csv(std::istream& in, const std::string& where) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(where, 1, "missing header row");
  const auto header = detail::split_csv(line);
  if (header.size() < 2 || header[0] != "t")
    throw ParseError(where, 1, "header must be t,x1,...,xd");
  const std::size_t dim = header.size() - 1;

  std::vector<double> knots, samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto toks = detail::split_csv(line);
    if (toks.size() != dim + 1)
      throw ParseError(where, lineno, "expected " + std::to_string(dim + 1) +
                                          " fields, got " + std::to_string(toks.size()));
    const double t = detail::parse_double(toks[0], where, lineno);
    if (!knots.empty() && !(t > knots.back()))
      throw ParseError(where, lineno, "t values must be strictly increasing");
    knots.push_back(t);
    for (std::size_t k = 1; k < toks.size(); ++k)
      samples.push_back(detail::parse_double(toks[k], where, lineno));
  }
  if (knots.size() < 2) throw ParseError(where, lineno, "need at least two rows");
  try {
    return Curve(dim, std::move(knots), std::move(samples));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, lineno, e.what());
  }
}

inline Curve read_curve_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return read_curve_csv(in, path);
}

// ---- curves: JSON {"dim": d, "knots": [...], "samples": [[...], ...]} ----

inline nlohmann::json curve_to_json(const Curve& c) {
  nlohmann::json j;
  j["dim"] = c.dim();
  j["knots"] = c.knots();
  auto samples = nlohmann::json::array();
  for (std::size_t i = 0; i <= c.cells(); ++i) {
    auto pt = nlohmann::json::array();
    for (const double v : c.point(i)) pt.push_back(v);
    samples.push_back(std::move(pt));
  }
  j["samples"] = std::move(samples);
  return j;
}

inline Curve curve_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto knots = j.at("knots").get<std::vector<double>>();
    std::vector<double> samples;
    for (const auto& pt : j.at("samples")) {
      if (pt.size() != dim)
        throw std::invalid_argument("sample point has wrong dimension");
      for (const auto& v : pt) samples.push_back(v.get<double>());
    }
    return Curve(dim, knots, std::move(samples));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline void write_curve_json(const Curve& c, const std::string& path) {
  auto out = detail::open_out(path);
  out << curve_to_json(c).dump(2) << "\n";
}

inline Curve read_curve_json(const std::string& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return curve_from_json(j, path);
}

// Reads a curve from .json or .csv based on the extension.
inline Curve read_curve(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return read_curve_json(path);
  return read_curve_csv(path);
}

// ---- SRVFs: CSV "t,q1,...,qd": N cell rows plus a closing row at t = 1
// repeating the last cell, so the file has the same shape as a curve ----

inline void write_srvf_csv(const Srvf& q, std::ostream& out) {
  out << "t";
  for (std::size_t k = 1; k <= q.dim(); ++k) out << ",q" << k;
  out << "\n";
  for (std::size_t i = 0; i <= q.cells(); ++i) {
    const auto cell = q.cell(i < q.cells() ? i : q.cells() - 1);
    out << format_full(q.knots()[i]);
    for (const double v : cell) out << "," << format_full(v);
    out << "\n";
  }
}

inline void write_srvf_csv(const Srvf& q, const std::string& path) {
  auto out = detail::open_out(path);
  write_srvf_csv(q, out);
}

inline Srvf read_srvf_csv(std::istream& in, const std::string& where) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(where, 1, "missing header row");
  const auto header = detail::split_csv(line);
  if (header.size() < 2 || header[0] != "t")
    throw ParseError(where, 1, "header must be t,q1,...,qd");
  const std::size_t dim = header.size() - 1;

  std::vector<double> knots, cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto toks = detail::split_csv(line);
    if (toks.size() != dim + 1)
      throw ParseError(where, lineno, "expected " + std::to_string(dim + 1) + " fields");
    const double t = detail::parse_double(toks[0], where, lineno);
    if (!knots.empty() && !(t > knots.back()))
      throw ParseError(where, lineno, "t values must be strictly increasing");
    knots.push_back(t);
    for (std::size_t k = 1; k < toks.size(); ++k)
      cells.push_back(detail::parse_double(toks[k], where, lineno));
  }
  if (knots.size() < 2) throw ParseError(where, lineno, "need at least two rows");
  cells.resize((knots.size() - 1) * dim);  // drop the repeated closing row
  try {
    return Srvf(dim, std::move(knots), std::move(cells));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, lineno, e.what());
  }
}

inline Srvf read_srvf_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return read_srvf_csv(in, path);
}

inline nlohmann::json srvf_to_json(const Srvf& q) {
  nlohmann::json j;
  j["dim"] = q.dim();
  j["knots"] = q.knots();
  auto cells = nlohmann::json::array();
  for (std::size_t i = 0; i < q.cells(); ++i) {
    auto cell = nlohmann::json::array();
    for (const double v : q.cell(i)) cell.push_back(v);
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  return j;
}

inline Srvf srvf_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto knots = j.at("knots").get<std::vector<double>>();
    std::vector<double> cells;
    for (const auto& cell : j.at("cells")) {
      if (cell.size() != dim)
        throw std::invalid_argument("cell has wrong dimension");
      for (const auto& v : cell) cells.push_back(v.get<double>());
    }
    return Srvf(dim, knots, std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline void write_srvf_json(const Srvf& q, const std::string& path) {
  auto out = detail::open_out(path);
  out << srvf_to_json(q).dump(2) << "\n";
}

inline Srvf read_srvf_json(const std::string& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return srvf_from_json(j, path);
}

// ---- reparametrisations: CSV "t,gamma" ----

inline void write_warp_csv(const Warp& w, std::ostream& out) {
  out << "t,gamma\n";
  for (std::size_t i = 0; i <= w.cells(); ++i)
    out << format_full(w.knots()[i]) << "," << format_full(w.values()[i]) << "\n";
}

inline void write_warp_csv(const Warp& w, const std::string& path) {
  auto out = detail::open_out(path);
  write_warp_csv(w, out);
}

inline Warp read_warp_csv(std::istream& in, const std::string& where) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(where, 1, "missing header row");
  const auto header = detail::split_csv(line);
  if (header.size() != 2 || header[0] != "t")
    throw ParseError(where, 1, "header must be t,gamma");
  std::vector<double> knots, values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto toks = detail::split_csv(line);
    if (toks.size() != 2) throw ParseError(where, lineno, "expected 2 fields");
    const double t = detail::parse_double(toks[0], where, lineno);
    if (!knots.empty() && !(t > knots.back()))
      throw ParseError(where, lineno, "t values must be strictly increasing");
    knots.push_back(t);
    values.push_back(detail::parse_double(toks[1], where, lineno));
  }
  if (knots.size() < 2) throw ParseError(where, lineno, "need at least two rows");
  try {
    return Warp(std::move(knots), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, lineno, e.what());
  }
}

inline Warp read_warp_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return read_warp_csv(in, path);
}

// ---- alignments ----

inline nlohmann::json warp_to_json(const Warp& w) {
  nlohmann::json j;
  j["knots"] = w.knots();
  j["values"] = w.values();
  return j;
}

inline nlohmann::json alignment_to_json(const Alignment& al) {
  nlohmann::json j;
  j["matching_value"] = al.matching_value;
  j["quotient_distance"] = al.quotient_distance;
  j["grid_n"] = al.grid_n;
  j["beta"] = warp_to_json(al.beta);
  j["gamma"] = warp_to_json(al.gamma);
  auto moves = nlohmann::json::array();
  for (const auto& [a, b] : al.move_set) moves.push_back({a, b});
  j["move_set"] = std::move(moves);
  j["dp_cells_evaluated"] = al.dp_cells_evaluated;
  return j;
}

inline void write_alignment_json(const Alignment& al, const std::string& path) {
  auto out = detail::open_out(path);
  out << alignment_to_json(al).dump(2) << "\n";
}

// CSV "t,beta,gamma" over the union of both warps' knots.
inline void write_alignment_csv(const Alignment& al, std::ostream& out) {
  out << "t,beta,gamma\n";
  const auto merged = merge_knots(al.beta.knots(), al.gamma.knots());
  for (const double t : merged)
    out << format_full(t) << "," << format_full(al.beta.at(t)) << ","
        << format_full(al.gamma.at(t)) << "\n";
}

inline void write_alignment_csv(const Alignment& al, const std::string& path) {
  auto out = detail::open_out(path);
  write_alignment_csv(al, out);
}

// ---- interval sets: JSON list of [a, b] with exact rational strings ----

inline nlohmann::json interval_set_to_json(const IntervalSet& s) {
  auto arr = nlohmann::json::array();
  for (const auto& iv : s.intervals())
    arr.push_back({to_string(iv.first), to_string(iv.second)});
  return arr;
}

inline IntervalSet interval_set_from_json(const nlohmann::json& j,
                                          const std::string& where) {
  std::vector<IntervalSet::Interval> ivs;
  try {
    for (const auto& iv : j) {
      if (!iv.is_array() || iv.size() != 2)
        throw std::invalid_argument("interval must be a pair");
      ivs.emplace_back(parse_rational(iv[0].get<std::string>()),
                       parse_rational(iv[1].get<std::string>()));
    }
    return IntervalSet(std::move(ivs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// ---- counterexample reports ----

inline nlohmann::json report_to_json(const CounterexampleReport& rep) {
  nlohmann::json j;
  j["config"] = {{"cantor_level", rep.config.cantor_level},
                 {"epsilon", to_string(rep.config.epsilon)},
                 {"grid_n", rep.config.grid_n},
                 {"fatten_delta", to_string(rep.config.fatten_delta)}};
  j["dist_sq_exact"] = to_string(rep.dist_sq_exact);
  j["dist_sq"] = rep.dist_sq;
  j["grid_sizes"] = rep.grid_sizes;
  j["dp_values"] = rep.dp_values;
  j["qdist_sq"] = rep.qdist_sq;
  j["resolvable_level"] = rep.resolvable;
  j["kprimes"] = rep.kprimes;
  auto ee = nlohmann::json::array();
  for (const auto& r : rep.explicit_exact) ee.push_back(to_string(r));
  j["explicit_exact"] = std::move(ee);
  j["explicit_checked"] = rep.explicit_checked;
  auto rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"N", r.grid_n},
                    {"k_prime", r.kprime},
                    {"dp_value", r.dp_value},
                    {"explicit_value", r.explicit_value},
                    {"gap_to_half", r.gap_to_half},
                    {"qdist_sq", r.qdist_sq}});
  j["rows"] = std::move(rows);
  return j;
}

inline void write_report_json(const CounterexampleReport& rep, const std::string& path) {
  auto out = detail::open_out(path);
  out << report_to_json(rep).dump(2) << "\n";
}

inline void write_report_csv(const CounterexampleReport& rep, std::ostream& out) {
  out << "N,k_prime,dp_value,explicit_value,gap_to_half,qdist_sq\n";
  for (const auto& r : rep.rows)
    out << r.grid_n << "," << r.kprime << "," << format_full(r.dp_value) << ","
        << format_full(r.explicit_value) << "," << format_full(r.gap_to_half) << ","
        << format_full(r.qdist_sq) << "\n";
}

inline void write_report_csv(const CounterexampleReport& rep, const std::string& path) {
  auto out = detail::open_out(path);
  write_report_csv(rep, out);
}

// Plot data: one row per (grid, kprime) with both gaps and the squared
// parametrised distance, for the gap-versus-resolution figure.
inline void write_report_plot_csv(const CounterexampleReport& rep, std::ostream& out) {
  out << "N,k_prime,dp_value,dp_gap_to_half,explicit_value,explicit_gap_to_half,"
         "qdist_sq,qdist_sq_gap_to_one,dist_sq\n";
  for (const auto& r : rep.rows) {
    out << r.grid_n << "," << r.kprime << "," << format_full(r.dp_value) << ","
        << format_full(0.5 - r.dp_value) << "," << format_full(r.explicit_value)
        << "," << format_full(0.5 - r.explicit_value) << ","
        << format_full(r.qdist_sq) << "," << format_full(r.qdist_sq - 1.0) << ","
        << format_full(rep.dist_sq) << "\n";
  }
}

inline void write_report_plot_csv(const CounterexampleReport& rep,
                                  const std::string& path) {
  auto out = detail::open_out(path);
  write_report_plot_csv(rep, out);
}

// ---- distance matrices: CSV with an id header row and column ----

inline void write_matrix_csv(const MatrixResult& m, std::ostream& out) {
  out << "id";
  for (const auto& id : m.ids) out << "," << id;
  out << "\n";
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    out << m.ids[i];
    for (std::size_t j = 0; j < m.ids.size(); ++j)
      out << "," << format_full(m.at(i, j));
    out << "\n";
  }
}

inline void write_matrix_csv(const MatrixResult& m, const std::string& path) {
  auto out = detail::open_out(path);
  write_matrix_csv(m, out);
}

// ---- corpora: JSON array of {"id", "file"} or {"id", "curve"} ----

inline std::vector<std::pair<std::string, Curve>> read_corpus_json(
    const std::string& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError(path + ": corpus must be a JSON array");
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<std::pair<std::string, Curve>> out;
  for (const auto& entry : j) {
    try {
      const std::string id = entry.at("id").get<std::string>();
      if (entry.contains("curve")) {
        out.emplace_back(id, curve_from_json(entry.at("curve"), path + " id=" + id));
      } else if (entry.contains("file")) {
        const std::filesystem::path ref = entry.at("file").get<std::string>();
        const auto resolved = ref.is_absolute() ? ref : base / ref;
        out.emplace_back(id, read_curve(resolved.string()));
      } else {
        throw ParseError(path + ": corpus entry '" + id +
                         "' needs a 'file' or 'curve' field");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return out;
}

}  // namespace srvf

/// @file cli.hpp
/// Command-line driver. All logic lives here so tests can call run() in-process.
///
/// Exit codes: 0 success, 1 verification mismatch or internal failure,
/// 2 bad input or arguments, 3 invalid or unsupported root system, 4 point
/// outside the cone of the vectors.
#pragma once

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vpf/latex.hpp"
#include "vpf/serialize.hpp"

namespace vpf::cli {

enum ExitCode : int { Ok = 0, Mismatch = 1, BadInput = 2, BadRank = 3, Outside = 4 };

/// JSON array of integer arrays, or whitespace-separated rows (blank lines and
/// lines starting with '#' ignored).
inline std::vector<IntVector> parse_vector_list(const std::string& text) {
  std::vector<IntVector> rows;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Parse, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_array()) fail(ErrorKind::Parse, "expected an array of rows");
    for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      std::istringstream ls(line);
      std::vector<Int> row;
      std::string tok;
      while (ls >> tok) {
        std::size_t used = 0;
        Int v = 0;
        try {
          v = std::stoll(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) fail(ErrorKind::Parse, "not an integer: '" + tok + "'");
        row.push_back(v);
      }
      rows.emplace_back(row.begin(), row.end());
    }
  }
  if (rows.empty()) fail(ErrorKind::Parse, "no vectors");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size() || r.size() == 0) fail(ErrorKind::Parse, "rows differ in length");
    if (r.is_zero() || !r.is_nonnegative()) fail(ErrorKind::Parse, "vectors must be nonzero and nonnegative");
  }
  return rows;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Input selection shared by the subcommands.
struct Input {
  std::string vectors_file;
  std::string type;
  std::size_t rank = 0;

  void add_options(CLI::App* app) {
    app->add_option("--vectors", vectors_file, "vector list file (JSON or rows of integers)");
    app->add_option("--type", type, "root system type A-G");
    app->add_option("--rank", rank, "root system rank");
  }

  bool is_root_system() const { return vectors_file.empty(); }

  char label() const {
    if (type.size() != 1) fail(ErrorKind::InvalidRank, "root system type must be one letter");
    return static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  }

  std::vector<IntVector> vectors() const {
    if (!vectors_file.empty()) return parse_vector_list(read_file(vectors_file));
    if (type.empty()) fail(ErrorKind::Parse, "need --vectors or --type/--rank");
    return positive_roots(label(), rank).positive_roots;
  }

  std::string display_name() const {
    if (!is_root_system()) return "";
    return std::string(1, label()) + "_" + std::to_string(rank);
  }
};

inline Strategy parse_strategy(const std::string& s, const Input& in) {
  if (s == "minabs") return Strategy::min_abs();
  if (s == "nbc") return Strategy::non_broken_circuit();
  if (s == "classical") {
    if (!in.is_root_system()) fail(ErrorKind::Parse, "classical strategy needs --type/--rank");
    return Strategy::classical(in.label(), in.rank);
  }
  fail(ErrorKind::Parse, "unknown strategy '" + s + "'");
}

inline RationalVector parse_point(const std::string& text, std::size_t dim) {
  RationalVector p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) p.push_back(parse_rational(tok));
  if (p.size() != dim) fail(ErrorKind::Parse, "point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(dim));
  return p;
}

/// Deterministic pole-free points for checksums: coordinates k/(k+p) for
/// varying primes p, skipping any point on a pole of either side.
inline std::vector<RationalVector> checksum_points(const FractionSum& a, const FractionSum& b, std::size_t count) {
  static constexpr Int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<RationalVector> out;
  for (Int seed = 1; out.size() < count && seed < 200; ++seed) {
    RationalVector pt;
    for (std::size_t i = 0; i < a.dim; ++i) {
      const Int p = primes[(static_cast<std::size_t>(seed) + 3 * i) % 16];
      pt.push_back(make_rational(seed + static_cast<Int>(i) + 1, seed + static_cast<Int>(i) + 1 + p));
    }
    try {
      (void)substitute_fraction_sum(a, pt);
      (void)substitute_fraction_sum(b, pt);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleHit) continue;
      throw;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

/// Chamber formulas, read from or written to a JSON cache when a path is given.
inline std::vector<ChamberFormula> cached_formulas(const std::vector<IntVector>& vectors, const ChamberComplex& cx,
                                                   const Strategy& strategy, const std::string& strategy_name,
                                                   const std::string& cache_path) {
  std::string key_src = strategy_name + ";";
  for (const auto& v : vectors) key_src += v.str();
  std::ostringstream key;
  key << std::hex << fnv1a(key_src);
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    try {
      const Json j = Json::parse(read_file(cache_path));
      if (j.at("key") == key.str()) {
        std::vector<ChamberFormula> out;
        for (const auto& f : j.at("formulas")) out.push_back(chamber_formula_from_json(f));
        if (out.size() == cx.chambers.size()) return out;
      }
    } catch (const std::exception&) {
      // unreadable cache: rebuild
    }
  }
  auto out = all_chamber_formulas(vectors, strategy, &cx);
  if (!cache_path.empty()) {
    Json j = {{"key", key.str()}, {"strategy", strategy_name}, {"vectors", to_json(vectors)}, {"formulas", Json::array()}};
    for (const auto& f : out) j["formulas"].push_back(to_json(f));
    std::ofstream(cache_path) << j.dump(1) << "\n";
  }
  return out;
}

inline int cmd_kostant(const Input& in, const std::string& format, std::ostream& out) {
  const RootSystem rs = positive_roots(in.label(), in.rank);
  if (format == "json") {
    out << to_json(rs).dump(2) << "\n";
  } else {
    for (const auto& r : rs.positive_roots) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
      out << "\n";
    }
  }
  return Ok;
}

inline int cmd_decompose(const Input& in, const std::string& strategy_name, const std::string& format, unsigned threads,
                         std::ostream& out, std::ostream& err) {
  const auto vectors = in.vectors();
  const Strategy strategy = parse_strategy(strategy_name, in);
  const GeneratingFraction product = GeneratingFraction::product(vectors);
  const FractionSum input = single(product);
  DecomposeOptions opt;
  opt.threads = threads;
  const PfdResult r = decompose(input, strategy, opt);
  for (const auto& pt : checksum_points(input, r.fractions, 1))
    if (substitute_fraction_sum(input, pt) != substitute_fraction_sum(r.fractions, pt)) {
      err << "checksum failed\n";
      return Mismatch;
    }
  if (format == "json")
    out << to_json(r).dump(2) << "\n";
  else
    out << decomposition_latex(in.display_name(), product, r.fractions);
  return Ok;
}

inline int cmd_chambers(const Input& in, const std::string& format, std::ostream& out) {
  const auto vectors = in.vectors();
  const ChamberComplex cx = chambers(vectors);
  if (format == "json") {
    Json j = {{"vectors", to_json(vectors)}, {"chambers", Json::array()}};
    for (const auto& c : cx.chambers) j["chambers"].push_back(to_json(c));
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < cx.chambers.size(); ++i) {
      out << "chamber " << i << ":";
      for (const auto& g : cx.chambers[i].generators) out << " " << g.str();
      out << "\n";
    }
  }
  return Ok;
}

inline int cmd_evaluate(const Input& in, const std::string& point_text, const std::string& mode,
                        const std::string& cache_override, std::ostream& out, std::ostream& err) {
  const auto vectors = in.vectors();
  const RationalVector p = parse_point(point_text, vectors.front().size());
  IntVector g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].get_den() != 1) fail(ErrorKind::Parse, "point must be integral");
    g[i] = to_int(p[i].get_num());
  }
  if (rank(vectors) != g.size()) fail(ErrorKind::NotFullRank, "vectors do not span the space");
  if (!cone_contains(cone_of(vectors), g)) {
    err << "point " << g.str() << " lies outside the cone of the vectors\n";
    return Outside;
  }
  if (mode == "oracle") {
    out << vpf_bruteforce(vectors, g).get_str() << "\n";
    return Ok;
  }
  if (mode != "formula") fail(ErrorKind::Parse, "mode must be oracle or formula");
  const ChamberComplex cx = chambers(vectors);
  const auto idx = locate_chamber(cx, p);
  if (!idx) {
    err << "no chamber contains " << g.str() << "\n";
    return Outside;
  }
  std::string cache = cache_override;
  if (cache.empty() && !in.vectors_file.empty()) cache = in.vectors_file + ".chambers.json";
  const auto formulas = cached_formulas(vectors, cx, Strategy::min_abs(), "minabs", cache);
  out << formulas[*idx].formula(g).get_str() << "\n";
  return Ok;
}

inline int cmd_verify(const Input& in, Int box, const std::string& golden, const std::string& strategy_name,
                      std::ostream& out) {
  const auto vectors = in.vectors();
  const std::size_t n = vectors.front().size();
  const FractionSum input = single(GeneratingFraction::product(vectors));
  Json report = {{"checksum", true}, {"series", true}, {"chambers", Json::array()}};
  bool ok = true;

  FractionSum candidate;
  PfdResult pfd;
  if (!golden.empty()) {
    candidate = parse_decomposition_latex(read_file(golden), n);
  } else {
    DecomposeOptions opt;
    pfd = decompose(input, parse_strategy(strategy_name, in), opt);
    candidate = pfd.fractions;
  }
  for (const auto& pt : checksum_points(input, candidate, 3))
    if (substitute_fraction_sum(input, pt) != substitute_fraction_sum(candidate, pt)) report["checksum"] = false;
  const Int series_box = std::min<Int>(box, n <= 2 ? 8 : 5);
  if (series_truncate(input, 0, series_box) != series_truncate(candidate, 0, series_box)) report["series"] = false;
  ok = report["checksum"].get<bool>() && report["series"].get<bool>();

  if (golden.empty()) {
    const ChamberComplex cx = chambers(vectors);
    const auto avoid = indicator_avoid_list(vectors, pfd);
    const PartitionTable table(vectors, box);
    for (std::size_t i = 0; i < cx.chambers.size(); ++i) {
      const auto rep = verify_chamber(chamber_formula(pfd, cx.chambers[i], avoid), table, box, i);
      ok = ok && rep.ok();
      report["chambers"].push_back(to_json(rep));
    }
  }
  report["ok"] = ok;
  out << report.dump(2) << "\n";
  return ok ? Ok : Mismatch;
}

inline int cmd_period(const Input& in, std::ostream& out) {
  const char l = in.label();
  if (l == 'E' || l == 'F') fail(ErrorKind::InvalidRank, "period computation for E and F is out of reach here");
  const auto vectors = positive_roots(l, in.rank).positive_roots;
  Int period = 1;
  for (const auto& f : all_chamber_formulas(vectors, Strategy::min_abs())) period = std::lcm(period, possible_period(f.formula));
  out << period << "\n";
  return Ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vector partition functions"};
  app.require_subcommand(1);
  Input in;
  std::string strategy = "minabs", format = "latex", point, mode = "oracle", golden, cache;
  Int box = 10;
  unsigned threads = 0;

  auto* kostant = app.add_subcommand("kostant", "positive roots in simple coordinates");
  in.add_options(kostant);
  kostant->add_option("--format", format, "json|text");
  auto* dec = app.add_subcommand("decompose", "partial fraction decomposition of the generating function");
  in.add_options(dec);
  dec->add_option("--strategy", strategy, "minabs|nbc|classical");
  dec->add_option("--format", format, "latex|json");
  dec->add_option("--threads", threads, "worker threads (default VPF_THREADS)");
  auto* ch = app.add_subcommand("chambers", "chamber complex of the vectors");
  in.add_options(ch);
  ch->add_option("--format", format, "json|text");
  auto* ev = app.add_subcommand("evaluate", "value of the partition function at a point");
  in.add_options(ev);
  ev->add_option("--point", point, "c1,...,cn")->required();
  ev->add_option("--mode", mode, "oracle|formula");
  ev->add_option("--cache", cache, "chamber formula cache file");
  auto* ver = app.add_subcommand("verify", "checksum, series and chamber checks");
  in.add_options(ver);
  ver->add_option("--box", box, "box side for chamber checks");
  ver->add_option("--golden", golden, "LaTeX decomposition to check instead of computing one");
  ver->add_option("--strategy", strategy, "minabs|nbc|classical");
  auto* per = app.add_subcommand("period", "lcm of the periods of all chamber formulas");
  in.add_options(per);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return BadInput;
  }

  try {
    if (kostant->parsed()) return cmd_kostant(in, format == "latex" ? "text" : format, out);
    if (dec->parsed()) return cmd_decompose(in, strategy, format, threads, out, err);
    if (ch->parsed()) return cmd_chambers(in, format == "latex" ? "text" : format, out);
    if (ev->parsed()) return cmd_evaluate(in, point, mode, cache, out, err);
    if (ver->parsed()) return cmd_verify(in, box, golden, strategy, out);
    if (per->parsed()) return cmd_period(in, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
        return BadInput;
      case ErrorKind::InvalidRank:
        return BadRank;
      default:
        return Mismatch;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return Mismatch;
  }
  return BadInput;
}

}  // namespace vpf::cli

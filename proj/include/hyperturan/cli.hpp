#ifndef HYPERTURAN_CLI_HPP
#define HYPERTURAN_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperturan/constructions.hpp"
#include "hyperturan/copy_counter.hpp"
#include "hyperturan/edge_list_io.hpp"
#include "hyperturan/formulas.hpp"
#include "hyperturan/pattern.hpp"
#include "hyperturan/report_json.hpp"
#include "hyperturan/turan_search.hpp"

namespace hyperturan::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

/// Everything a subcommand needs, filled in by the argument parser.
struct RunConfig {
  std::string spec;
  std::string input;
  std::string config;
  std::vector<std::string> patterns;
  std::string output;
  std::string n_range;
  std::size_t n = 0;
  std::optional<std::size_t> r;
  std::optional<std::size_t> q;
  std::size_t trials = 0;
  std::size_t rewires = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t budget = TuranOptions{}.budget;
  std::size_t witness_cap = TuranOptions{}.witness_cap;
  bool json = false;
  bool tsv = false;
  bool per_edge = false;
  bool per_vertex = false;
  bool timing = false;
  bool full = false;
  bool symmetry = false;
};

namespace detail {

inline std::vector<std::string> read_config_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

inline std::vector<std::string> specs_of(const RunConfig& cfg) {
  if (!cfg.config.empty()) return read_config_lines(cfg.config);
  if (cfg.spec.empty()) return {};
  return {cfg.spec};
}

inline Pattern single_pattern(const RunConfig& cfg) {
  if (cfg.patterns.size() != 1) throw DomainError("exactly one --pattern is required");
  return pattern_by_name(cfg.patterns.front());
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw DomainError("cannot write " + cfg.output);
  f << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  auto specs = specs_of(cfg);
  if (specs.empty()) throw DomainError("gen needs --spec or --config");
  std::string text;
  Json arr = Json::array();
  for (const std::string& s : specs) {
    const ConstructionSpec spec = ConstructionSpec::parse(s);
    const Construction c = spec.build();
    const std::string problem = validate_construction(c, spec);
    if (!problem.empty()) throw InternalError("construction failed validation: " + problem);
    if (cfg.json) {
      Json j;
      j["spec"] = spec.to_string();
      j["n"] = c.n();
      j["m"] = c.system.edge_count();
      Json added = Json::array();
      for (const Triple& t : c.added) added.push_back(to_json(t));
      j["added"] = std::move(added);
      Json removed = Json::array();
      for (const Triple& t : c.removed) removed.push_back(to_json(t));
      j["removed"] = std::move(removed);
      j["part_sizes"] = c.parts.part_sizes();
      j["edge_list"] = serialize_edge_list(c.system);
      arr.push_back(std::move(j));
    } else {
      text += serialize_edge_list(c.system);
    }
  }
  if (cfg.json) text = dump(arr.size() == 1 ? arr[0] : arr);
  emit(cfg, out, text);
  return ok;
}

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const Pattern p = single_pattern(cfg);
  std::vector<TripleSystem> hosts;
  if (!cfg.input.empty()) hosts.push_back(read_edge_list_file(cfg.input));
  for (const std::string& s : specs_of(cfg)) hosts.push_back(ConstructionSpec::parse(s).build().system);
  if (hosts.empty()) throw DomainError("count needs --input, --spec or --config");
  ReportOptions ro;
  ro.per_edge = cfg.per_edge;
  ro.per_vertex = cfg.per_vertex;
  ro.count.workers = cfg.workers;
  std::string text;
  Json arr = Json::array();
  for (const TripleSystem& h : hosts) {
    const CountReport r = count_report(h, p, ro);
    if (cfg.tsv) {
      text += r.pattern + "\t" + std::to_string(r.n) + "\t" + std::to_string(r.m) + "\t" +
              r.total_copies.to_string() + "\t" + std::to_string(r.nodes) + "\n";
    } else {
      arr.push_back(to_json(r, cfg.timing));
    }
  }
  if (cfg.tsv) text = "pattern\tn\tm\ttotal_copies\tnodes\n" + text;
  else text = dump(arr.size() == 1 ? arr[0] : arr);
  emit(cfg, out, text);
  return ok;
}

inline int cmd_cexact(const RunConfig& cfg, std::ostream& out) {
  const Pattern p = single_pattern(cfg);
  if (cfg.n == 0) throw DomainError("cexact needs --n");
  CountOptions co;
  co.workers = cfg.workers;
  const CopyBound b =
      c_exact(p, cfg.n, cfg.r, cfg.full ? CExactMode::full_enumeration : CExactMode::orbit_representatives, co);
  if (cfg.tsv) {
    emit(cfg, out,
         "pattern\tn\tc_exact\twitness\n" + b.pattern + "\t" + std::to_string(b.n) + "\t" + b.value.to_string() +
             "\t" + to_string(b.witness) + "\n");
  } else {
    emit(cfg, out, dump(to_json(b)));
  }
  return ok;
}

inline int cmd_search(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n == 0) throw DomainError("search needs --n");
  std::vector<Pattern> forbidden;
  for (const std::string& name : cfg.patterns) forbidden.push_back(pattern_by_name(name));
  TuranOptions to;
  to.budget = cfg.budget;
  to.workers = cfg.workers;
  to.witness_cap = cfg.witness_cap;
  to.symmetry_breaking = cfg.symmetry;
  const SearchResult r = exact_turan(cfg.n, forbidden, to);
  emit(cfg, out, dump(to_json(r, cfg.timing)));
  return ok;
}

inline int cmd_audit(const RunConfig& cfg, std::ostream& out) {
  const Pattern p = single_pattern(cfg);
  auto specs = specs_of(cfg);
  if (specs.empty()) throw DomainError("audit needs --spec or --config");
  CountOptions co;
  co.workers = cfg.workers;
  Json arr = Json::array();
  for (const std::string& s : specs) {
    const ConstructionSpec spec = ConstructionSpec::parse(s);
    if (cfg.trials > 0) {
      std::size_t q = cfg.q.value_or(0);
      if (!cfg.q) q = spec.build().added.size();
      arr.push_back(to_json(audit_perturbed(spec, p, q, cfg.trials, cfg.seed, cfg.rewires, co)));
    } else {
      arr.push_back(to_json(audit_sharpness(spec, p, cfg.q, co)));
    }
  }
  emit(cfg, out, dump(arr.size() == 1 ? arr[0] : arr));
  return ok;
}

inline std::pair<std::size_t, std::size_t> parse_n_range(const RunConfig& cfg) {
  if (cfg.n_range.empty()) throw DomainError("formulas needs --n <N> or --n <A>..<B>");
  const auto dots = cfg.n_range.find("..");
  auto num = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("bad --n value '" + s + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  if (dots == std::string::npos) {
    const std::size_t n = num(cfg.n_range);
    return {n, n};
  }
  return {num(cfg.n_range.substr(0, dots)), num(cfg.n_range.substr(dots + 2))};
}

inline int cmd_formulas(const RunConfig& cfg, std::ostream& out) {
  const auto [lo, hi] = parse_n_range(cfg);
  if (lo < 3 || hi < lo) throw DomainError("formulas needs 3 <= A <= B");
  const std::size_t r = cfg.r.value_or(4);
  auto cell = [](bool defined, std::uint64_t v) { return defined ? std::to_string(v) : std::string("-"); };
  if (cfg.json) {
    Json arr = Json::array();
    for (std::size_t n = lo; n <= hi; ++n) {
      Json j;
      j["n"] = n;
      j["p3"] = p3_size(n);
      j["t3"] = t3_size(n);
      j["b3"] = b3_size(n);
      j["r"] = r;
      j["t3r"] = n >= r ? Json(t3r_size(n, r)) : Json(nullptr);
      j["c_fano"] = n >= 7 ? Json(c_fano(n)) : Json(nullptr);
      j["q_fano"] = n >= 8 ? Json(q_fano(n)) : Json(nullptr);
      arr.push_back(std::move(j));
    }
    emit(cfg, out, dump(arr));
    return ok;
  }
  std::string text = "n\tp3\tt3\tb3\tt3r(" + std::to_string(r) + ")\tc_fano\tq_fano\n";
  for (std::size_t n = lo; n <= hi; ++n) {
    text += std::to_string(n) + "\t" + std::to_string(p3_size(n)) + "\t" + std::to_string(t3_size(n)) + "\t" +
            std::to_string(b3_size(n)) + "\t" + cell(n >= r, n >= r ? t3r_size(n, r) : 0) + "\t" +
            cell(n >= 7, n >= 7 ? c_fano(n) : 0) + "\t" + cell(n >= 8, n >= 8 ? q_fano(n) : 0) + "\n";
  }
  emit(cfg, out, text);
  return ok;
}

} // namespace detail

/**
 * Parses argv and dispatches. Exit codes: 0 success, 1 domain error
 * (unknown pattern, malformed spec, infeasible parameters), 2 usage error.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal triple systems, forbidden configurations and copy counting", "hyperturan"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_workers = [&](CLI::App* sc) {
    sc->add_option("--workers", cfg.workers, "worker threads (results do not depend on it)")
        ->envname("HYPERTURAN_WORKERS")
        ->check(CLI::Range(1U, 256U));
  };
  auto add_format = [&](CLI::App* sc) {
    auto* j = sc->add_flag("--json", cfg.json, "JSON output");
    auto* t = sc->add_flag("--tsv", cfg.tsv, "TSV output");
    j->excludes(t);
  };
  auto add_output = [&](CLI::App* sc) { sc->add_option("-o,--output", cfg.output, "write to file instead of stdout"); };

  auto* gen = app.add_subcommand(
      "gen", "Generate an extremal construction (P3, T3, B3, T3r bases plus sharpness edge additions) as an edge list");
  gen->add_option("--spec", cfg.spec, "construction spec, e.g. p3:n=8+zero2:q=4");
  gen->add_option("--config", cfg.config, "file with one construction spec per line");
  add_output(gen);
  add_format(gen);

  auto* count = app.add_subcommand(
      "count", "Count copies of a pattern F: edge-preserving injections V(F) -> V(H) divided by |Aut(F)|");
  count->add_option("--pattern", cfg.patterns, "pattern name (fano, f5, k4minus, b5, pasch, L4, ...)")->required();
  count->add_option("--input", cfg.input, "host in u3 edge-list format");
  count->add_option("--spec", cfg.spec, "host given as a construction spec");
  count->add_option("--config", cfg.config, "file with one construction spec per line");
  count->add_flag("--per-edge", cfg.per_edge, "also count copies through every host edge");
  count->add_flag("--per-vertex", cfg.per_vertex, "also count copies through every host vertex");
  count->add_flag("--timing", cfg.timing, "include wall-clock millis (output no longer reproducible)");
  add_workers(count);
  add_output(count);
  add_format(count);

  auto* cex = app.add_subcommand(
      "cexact", "Compute c(n,F): the fewest copies of F created by adding one edge to the extremal construction");
  cex->add_option("--pattern", cfg.patterns, "fano, f5, k4minus, b5 or L<r+1>")->required();
  cex->add_option("--n", cfg.n, "vertex count")->required();
  cex->add_option("--r", cfg.r, "number of parts for expanded cliques");
  cex->add_flag("--full", cfg.full, "evaluate every non-edge instead of one per part signature");
  add_workers(cex);
  add_output(cex);
  add_format(cex);

  auto* search = app.add_subcommand(
      "search", "Exact Turan number ex(n, F1..Fk) by branch-and-bound (proved optimal for n <= 7)");
  search->add_option("--n", cfg.n, "vertex count")->required();
  search->add_option("--pattern", cfg.patterns, "forbidden pattern (repeatable or comma separated)")->delimiter(',');
  search->add_option("--budget", cfg.budget, "node budget");
  search->add_option("--witnesses", cfg.witness_cap, "maximum witnesses to report");
  search->add_flag("--symmetry", cfg.symmetry, "force triple {0,1,2} (symmetry breaking)");
  search->add_flag("--timing", cfg.timing, "include wall-clock millis");
  add_workers(search);
  add_output(search);
  add_format(search);

  auto* audit = app.add_subcommand(
      "audit", "Audit a sharpness construction: total copies, copies per added edge, copies using exactly one added "
               "edge, against q * c(n,F)");
  audit->add_option("--spec", cfg.spec, "construction spec");
  audit->add_option("--config", cfg.config, "file with one construction spec per line");
  audit->add_option("--pattern", cfg.patterns, "pattern name")->required();
  audit->add_option("--q", cfg.q, "expected number of added edges (perturbed mode: edges to add)");
  audit->add_option("--trials", cfg.trials, "run randomized perturbation trials on the base instead");
  audit->add_option("--rewires", cfg.rewires, "base edges swapped out per perturbation trial");
  audit->add_option("--seed", cfg.seed, "random seed (default 0)");
  add_workers(audit);
  add_output(audit);
  add_format(audit);

  auto* formulas = app.add_subcommand(
      "formulas", "Tabulate p3(n), t3(n), b3(n), t3r(n), c(n,Fano) and q(n,Fano) in exact integers");
  formulas->add_option("--n", cfg.n_range, "N or A..B")->required();
  formulas->add_option("--r", cfg.r, "parts for the t3r column (default 4)");
  add_output(formulas);
  add_format(formulas);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream o, er;
      app.exit(e, o, er);
      out << o.str();
      return ok;
    }
    std::ostringstream o, er;
    app.exit(e, o, er);
    err << er.str() << o.str();
    return usage_error;
  }

  try {
    if (*gen) return detail::cmd_gen(cfg, out);
    if (*count) return detail::cmd_count(cfg, out);
    if (*cex) return detail::cmd_cexact(cfg, out);
    if (*search) return detail::cmd_search(cfg, out);
    if (*audit) return detail::cmd_audit(cfg, out);
    if (*formulas) return detail::cmd_formulas(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return domain_error;
  }
  return usage_error;
}

} // namespace hyperturan::cli

#endif

// Command-line front end: point-set generation, unexpectedness detection,
// form extraction, duality and Lefschetz checks, and reproduction of the
// published detection tables.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "unx/report.hpp"

namespace fs = std::filesystem;
using namespace unx;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDowngrade = 2;
constexpr int kExitGoldenMismatch = 3;

bool g_quiet = false;

void log_line(const std::string& msg) {
  if (!g_quiet) std::cerr << msg << "\n";
}

struct PointSource {
  std::string file;
  std::string system;
  int rank = 0;
  int count = 10;
  uint64_t seed = 0;

  PointSet resolve() const {
    if (!file.empty()) {
      PointFormat fmt = file.size() >= 4 && file.substr(file.size() - 4) == ".csv"
                            ? PointFormat::csv
                            : PointFormat::json;
      return load_pointset(file, fmt);
    }
    if (system.empty()) throw error("no point source: pass --points or --system");
    if (system == "fermat12") return fermat_supersolvable_duals();
    if (system == "twisted-cubic") return twisted_cubic_points(count, seed);
    RootFamily fam = root_family_from_string(system);
    int r = rank;
    if (r == 0) {
      switch (fam) {
        case RootFamily::E6: r = 6; break;
        case RootFamily::E7: r = 7; break;
        case RootFamily::E8: r = 8; break;
        case RootFamily::F4: r = 4; break;
        case RootFamily::H3: r = 3; break;
        case RootFamily::H4: r = 4; break;
        default: throw error("--rank is required for systems A, B, C, D");
      }
    }
    return root_system(fam, r);
  }

  std::string describe() const { return file.empty() ? system : file; }
};

void add_point_source(CLI::App* cmd, PointSource& src) {
  cmd->add_option("--points", src.file, "point-set file (.json or .csv)");
  cmd->add_option("--system", src.system,
                  "A|B|C|D|E6|E7|E8|F4|H3|H4|fermat12|twisted-cubic");
  cmd->add_option("--rank", src.rank, "rank for A/B/C/D systems");
  cmd->add_option("--count", src.count, "point count for twisted-cubic");
}

struct CommonOpts {
  uint64_t seed = 7;
  int trials = 3;
  std::string bound;
  int threads = 0;
  bool certify = false;
  std::string cache_dir;

  DetectOptions detect_options() const {
    DetectOptions o;
    o.seed = seed;
    o.trials = trials;
    if (!bound.empty()) o.bound = Int(bound);
    return o;
  }
  int thread_count() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("UNX_THREADS")) return std::atoi(env);
    return 0;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "PRNG seed (default 7)");
  cmd->add_option("--trials", c.trials, "specialization trials (default 3)");
  cmd->add_option("--bound", c.bound, "sampling bound (default 2^31)");
  cmd->add_option("--threads", c.threads, "worker threads (default: all cores)");
  cmd->add_flag("--certify", c.certify,
                "exit 2 when any requested cell lacks a certificate");
  cmd->add_option("--cache", c.cache_dir, "cell result cache directory");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw error("cannot write '" + path + "'");
  out << text;
}

void emit_report(const std::string& out_path, const ojson& j) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text(out_path, j.dump(2) + "\n");
}

std::string cache_key(const std::string& label, int d, int m, DetectMode mode,
                      uint64_t seed) {
  std::ostringstream k;
  k << label << "_d" << d << "_m" << m << "_" << to_string(mode) << "_s" << seed;
  return k.str();
}

// Cell cache so long E7/E8 grids can resume; single-writer discipline is
// enforced by the search loop collecting results before any write.
std::optional<DetectionCell> cache_load(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  fs::path p = fs::path(dir) / (key + ".json");
  if (!fs::exists(p)) return std::nullopt;
  std::ifstream in(p);
  ojson j;
  in >> j;
  DetectionCell cell;
  cell.n = j.at("n").get<int>();
  cell.d = j.at("d").get<int>();
  cell.m = j.at("m").get<int>();
  cell.edim = j.at("edim").get<long long>();
  cell.adim = j.at("adim").get<long long>();
  cell.unexpected = j.at("unexpected").get<bool>();
  cell.certificate = j.at("certificate").get<std::string>() == "certified"
                         ? CertStatus::certified
                         : CertStatus::probabilistic;
  cell.kernel_dim_claimed = j.at("kernel_dim_claimed").get<int>();
  cell.rank_q1 = j.at("ranks").at("q1").get<int>();
  cell.rank_q2 = j.at("ranks").at("q2").get<int>();
  cell.rank_n.rank = j.at("ranks").at("n").at("rank").get<int>();
  cell.rank_n.mode = j.at("ranks").at("n").at("mode").get<std::string>() == "exact-symbolic"
                         ? RankMode::exact_symbolic
                         : RankMode::probabilistic;
  cell.rank_n.witness = j.at("ranks").at("n").at("witness").get<std::string>();
  return cell;
}

void cache_store(const std::string& dir, const std::string& key,
                 const DetectionCell& cell) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  write_text((fs::path(dir) / (key + ".json")).string(),
             detection_cell_json(cell, false).dump(2) + "\n");
}

std::vector<DetectionCell> cached_search(const PointSet& Z, int d_lo, int d_hi,
                                         int m_lo, int m_hi, DetectMode mode,
                                         const CommonOpts& common) {
  DetectOptions opts = common.detect_options();
  std::vector<std::pair<int, int>> wanted;
  for (int d = d_lo; d <= d_hi; ++d)
    for (int m = m_lo; m <= std::min(m_hi, d); ++m) wanted.emplace_back(d, m);
  std::vector<DetectionCell> cells;
  std::vector<std::pair<int, int>> missing;
  for (auto [d, m] : wanted) {
    auto hit = cache_load(common.cache_dir, cache_key(Z.label(), d, m, mode, opts.seed));
    if (hit) {
      cells.push_back(*hit);
    } else {
      missing.emplace_back(d, m);
    }
  }
  for (auto [d, m] : missing) {
    // grid cells with matching (d, m) ranges run in one parallel batch
  }
  if (!missing.empty()) {
    std::vector<DetectionCell> fresh;
    // run the full rectangle only when nothing was cached; otherwise run
    // cell by cell to honor exactly the missing set
    if (cells.empty() && int(wanted.size()) == int(missing.size())) {
      fresh = search(Z, d_lo, d_hi, m_lo, m_hi, mode, opts, common.thread_count());
    } else {
      for (auto [d, m] : missing) fresh.push_back(detect(Z, d, m, mode, opts));
    }
    for (const auto& cell : fresh) {
      cache_store(common.cache_dir, cache_key(Z.label(), cell.d, cell.m, mode, opts.seed),
                  cell);
      cells.push_back(cell);
    }
  }
  std::sort(cells.begin(), cells.end(), [](const DetectionCell& l, const DetectionCell& r) {
    return std::pair(l.d, l.m) < std::pair(r.d, r.m);
  });
  return cells;
}

int certify_exit(const std::vector<DetectionCell>& cells, bool certify) {
  if (!certify) return kExitOk;
  for (const auto& c : cells)
    if (c.certificate != CertStatus::certified) {
      log_line("certification downgrade at (" + std::to_string(c.n) + "," +
               std::to_string(c.d) + "," + std::to_string(c.m) + ")");
      return kExitDowngrade;
    }
  return kExitOk;
}

RunConfig make_config(const std::string& command, const PointSource& src,
                      const CommonOpts& common, int d_lo, int d_hi, int m_lo, int m_hi,
                      const std::string& mode) {
  RunConfig cfg;
  cfg.command = command;
  cfg.points = src.describe();
  cfg.d_lo = d_lo;
  cfg.d_hi = d_hi;
  cfg.m_lo = m_lo;
  cfg.m_hi = m_hi;
  cfg.mode = mode;
  cfg.seed = common.seed;
  cfg.trials = common.trials;
  cfg.bound = common.bound.empty() ? "2^31" : common.bound;
  cfg.certify = common.certify;
  return cfg;
}

struct GoldenCheck {
  std::string name;
  const std::vector<GoldenTuple>& golden;
  std::vector<DetectionCell> cells;
};

int diff_against_golden(const std::vector<DetectionCell>& cells,
                        const std::vector<GoldenTuple>& golden,
                        const std::string& name) {
  std::vector<GoldenTuple> found;
  for (const auto& c : cells)
    if (c.unexpected) found.push_back({c.n, c.d, c.m, c.edim, c.adim});
  bool ok = found.size() == golden.size();
  if (ok)
    for (size_t i = 0; i < found.size(); ++i) ok = ok && found[i] == golden[i];
  if (ok) {
    log_line(name + ": all " + std::to_string(golden.size()) + " tuples match");
    return kExitOk;
  }
  std::cerr << name << ": MISMATCH\n  expected:";
  for (const auto& g : golden)
    std::cerr << " (" << g.n << "," << g.d << "," << g.m << "," << g.edim << ","
              << g.adim << ")";
  std::cerr << "\n  found:   ";
  for (const auto& g : found)
    std::cerr << " (" << g.n << "," << g.d << "," << g.m << "," << g.edim << ","
              << g.adim << ")";
  std::cerr << "\n";
  return kExitGoldenMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact detection of unexpected hypersurfaces for finite point sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("unx ") + kVersion);
  app.add_flag("--quiet", g_quiet, "suppress progress logs");

  // ---- points ----
  auto* points_cmd = app.add_subcommand("points", "generate or convert point sets");
  PointSource points_src;
  add_point_source(points_cmd, points_src);
  uint64_t points_seed = 0;
  std::string points_out, points_format = "json";
  points_cmd->add_option("--seed", points_seed, "seed for twisted-cubic shuffling");
  points_cmd->add_option("--out", points_out, "output file")->required();
  points_cmd->add_option("--format", points_format, "json|csv");

  // ---- detect ----
  auto* detect_cmd = app.add_subcommand("detect", "decide one (d, m) cell");
  PointSource detect_src;
  CommonOpts detect_common;
  int detect_d = 0, detect_m = 0;
  std::string detect_mode = "hybrid", detect_out;
  bool detect_forms = false;
  add_point_source(detect_cmd, detect_src);
  add_common(detect_cmd, detect_common);
  detect_cmd->add_option("--d", detect_d, "degree")->required();
  detect_cmd->add_option("--m", detect_m, "multiplicity")->required();
  detect_cmd->add_option("--mode", detect_mode, "symbolic|probabilistic|hybrid");
  detect_cmd->add_flag("--forms", detect_forms, "include extracted forms");
  detect_cmd->add_option("--out", detect_out, "output JSON path (default stdout)");

  // ---- search ----
  auto* search_cmd = app.add_subcommand("search", "scan a (d, m) grid");
  PointSource search_src;
  CommonOpts search_common;
  int search_dmin = 2, search_dmax = 6, search_mmin = 2, search_mmax = 0;
  std::string search_mode = "hybrid", search_out, search_csv;
  add_point_source(search_cmd, search_src);
  add_common(search_cmd, search_common);
  search_cmd->add_option("--dmin", search_dmin, "min degree (default 2)");
  search_cmd->add_option("--dmax", search_dmax, "max degree (default 6)")->required();
  search_cmd->add_option("--mmin", search_mmin, "min multiplicity (default 2)");
  search_cmd->add_option("--mmax", search_mmax, "max multiplicity (default dmax)");
  search_cmd->add_option("--mode", search_mode, "symbolic|probabilistic|hybrid");
  search_cmd->add_option("--out", search_out, "JSON report path");
  search_cmd->add_option("--csv", search_csv, "CSV summary path");

  // ---- form ----
  auto* form_cmd = app.add_subcommand("form", "extract unexpected forms");
  PointSource form_src;
  CommonOpts form_common;
  int form_d = 0, form_m = 0, form_count = 1;
  std::string form_out;
  add_point_source(form_cmd, form_src);
  add_common(form_cmd, form_common);
  form_cmd->add_option("--d", form_d)->required();
  form_cmd->add_option("--m", form_m)->required();
  form_cmd->add_option("--n-forms", form_count, "how many forms (default 1)");
  form_cmd->add_option("--out", form_out, "output JSON path (default stdout)");

  // ---- duality ----
  auto* duality_cmd = app.add_subcommand("duality", "BMSS duality analysis");
  PointSource duality_src;
  CommonOpts duality_common;
  int duality_d = 0, duality_m = 0, duality_samples = 3;
  std::string duality_out;
  add_point_source(duality_cmd, duality_src);
  add_common(duality_cmd, duality_common);
  duality_cmd->add_option("--d", duality_d)->required();
  duality_cmd->add_option("--m", duality_m)->required();
  duality_cmd->add_option("--samples", duality_samples, "sample points (default 3)");
  duality_cmd->add_option("--out", duality_out, "output JSON path (default stdout)");

  // ---- wlp ----
  auto* wlp_cmd = app.add_subcommand("wlp", "Lefschetz checks for power ideals");
  PointSource wlp_src;
  CommonOpts wlp_common;
  int wlp_k = 0, wlp_d = 0, wlp_m = 0;
  bool wlp_equiv = false;
  std::string wlp_out;
  add_point_source(wlp_cmd, wlp_src);
  add_common(wlp_cmd, wlp_common);
  wlp_cmd->add_option("--k", wlp_k, "exponent: tests xL on degree k-1 -> k");
  wlp_cmd->add_option("--d", wlp_d, "degree for an SLP cell check");
  wlp_cmd->add_option("--m", wlp_m, "multiplicity for an SLP cell check");
  wlp_cmd->add_flag("--check-equivalence", wlp_equiv,
                    "also run the detector and compare verdicts");
  wlp_cmd->add_option("--out", wlp_out, "output JSON path (default stdout)");

  // ---- reproduce ----
  auto* repro_cmd = app.add_subcommand("reproduce", "reproduce published tables");
  CommonOpts repro_common;
  std::string repro_target, repro_mode = "hybrid", repro_out;
  repro_cmd->add_option("target", repro_target, "table1|d4|f4|h3|h4|e7|e8")->required();
  repro_cmd->add_option("--mode", repro_mode, "symbolic|probabilistic|hybrid");
  repro_cmd->add_option("--out", repro_out, "JSON report path");
  add_common(repro_cmd, repro_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*points_cmd) {
      points_src.seed = points_seed;
      PointSet Z = points_src.resolve();
      PointFormat fmt = points_format == "csv" ? PointFormat::csv : PointFormat::json;
      save_pointset(Z, points_out, fmt);
      log_line("wrote " + std::to_string(Z.size()) + " points (" + Z.label() + ") to " +
               points_out);
      return kExitOk;
    }

    if (*detect_cmd) {
      PointSet Z = detect_src.resolve();
      DetectMode mode = detect_mode_from_string(detect_mode);
      DetectOptions opts = detect_common.detect_options();
      opts.want_forms = detect_forms;
      auto cached =
          cache_load(detect_common.cache_dir,
                     cache_key(Z.label(), detect_d, detect_m, mode, opts.seed));
      DetectionCell cell = cached ? *cached : detect(Z, detect_d, detect_m, mode, opts);
      if (!cached)
        cache_store(detect_common.cache_dir,
                    cache_key(Z.label(), detect_d, detect_m, mode, opts.seed), cell);
      log_line("cell (" + std::to_string(cell.n) + "," + std::to_string(cell.d) + "," +
               std::to_string(cell.m) + "): edim " + std::to_string(cell.edim) +
               ", adim " + std::to_string(cell.adim) +
               (cell.unexpected ? ", UNEXPECTED" : ", not unexpected") + " [" +
               to_string(cell.certificate) + "], " +
               std::to_string(cell.runtime_sec) + "s");
      RunConfig cfg = make_config("detect", detect_src, detect_common, detect_d,
                                  detect_d, detect_m, detect_m, detect_mode);
      emit_report(detect_out, detection_report_json(cfg, Z, {cell}, detect_forms));
      return certify_exit({cell}, detect_common.certify);
    }

    if (*search_cmd) {
      PointSet Z = search_src.resolve();
      if (search_mmax == 0) search_mmax = search_dmax;
      DetectMode mode = detect_mode_from_string(search_mode);
      auto cells = cached_search(Z, search_dmin, search_dmax, search_mmin, search_mmax,
                                 mode, search_common);
      int found = 0;
      for (const auto& c : cells)
        if (c.unexpected) {
          ++found;
          log_line("unexpected: (" + std::to_string(c.n) + "," + std::to_string(c.d) +
                   "," + std::to_string(c.m) + "," + std::to_string(c.edim) + "," +
                   std::to_string(c.adim) + ") [" + to_string(c.certificate) + "]");
        }
      log_line(Z.label() + ": " + std::to_string(found) + " unexpected cells of " +
               std::to_string(cells.size()));
      RunConfig cfg = make_config("search", search_src, search_common, search_dmin,
                                  search_dmax, search_mmin, search_mmax, search_mode);
      if (!search_csv.empty()) write_text(search_csv, cells_csv(cells));
      emit_report(search_out, detection_report_json(cfg, Z, cells, false));
      return certify_exit(cells, search_common.certify);
    }

    if (*form_cmd) {
      PointSet Z = form_src.resolve();
      auto forms = extract_form(Z, form_d, form_m, form_count, form_common.detect_options());
      ojson j;
      j["version"] = kVersion;
      j["label"] = Z.label();
      j["d"] = form_d;
      j["m"] = form_m;
      ojson arr = ojson::array();
      for (const auto& f : forms)
        arr.push_back(ojson{{"bidegree", ojson::array({f.a_degree, f.x_degree})},
                            {"poly", f.poly.to_string()}});
      j["forms"] = arr;
      emit_report(form_out, j);
      return kExitOk;
    }

    if (*duality_cmd) {
      PointSet Z = duality_src.resolve();
      DetectOptions opts = duality_common.detect_options();
      auto samples = bmss_sample_points(Z, duality_samples, duality_common.seed);
      DualityReport rep = bmss_check(Z, duality_d, duality_m, samples, opts);
      ojson j;
      j["version"] = kVersion;
      j["label"] = Z.label();
      j["d"] = duality_d;
      j["m"] = duality_m;
      j["report"] = duality_report_json(rep);
      emit_report(duality_out, j);
      log_line(std::string("tangent cone match: ") +
               (rep.tangent_cone_match ? "yes" : "NO"));
      return kExitOk;
    }

    if (*wlp_cmd) {
      PointSet Z = wlp_src.resolve();
      ojson j;
      j["version"] = kVersion;
      j["label"] = Z.label();
      if (wlp_k > 0) {
        PowerIdealSpec spec = power_ideal_from_points(Z, wlp_k);
        LefschetzVerdict v = slp_check(Z, wlp_k, wlp_k, wlp_common.seed);
        j["k"] = wlp_k;
        j["wlp"] = lefschetz_verdict_json(v);
        log_line("WLP degree " + std::to_string(wlp_k - 1) + " -> " +
                 std::to_string(wlp_k) + (v.fails ? ": FAILS" : ": maximal rank"));
        if (wlp_equiv) {
          bool shared = equivalence_test(Z, wlp_k, wlp_k, wlp_common.seed,
                                         DetectMode::hybrid, wlp_common.detect_options());
          j["equivalence_verdict"] = shared;
        }
      }
      if (wlp_d > 0 && wlp_m > 0) {
        LefschetzVerdict v = slp_check(Z, wlp_d, wlp_m, wlp_common.seed);
        j["slp"] = lefschetz_verdict_json(v);
        if (wlp_equiv) {
          bool shared = equivalence_test(Z, wlp_d, wlp_m, wlp_common.seed,
                                         DetectMode::hybrid, wlp_common.detect_options());
          j["equivalence_verdict"] = shared;
        }
      }
      emit_report(wlp_out, j);
      return kExitOk;
    }

    if (*repro_cmd) {
      DetectMode mode = detect_mode_from_string(repro_mode);
      std::vector<DetectionCell> all;
      int code = kExitOk;
      ojson cells_json = ojson::array();
      if (repro_target == "table1") {
        std::vector<DetectionCell> found_cells;
        for (int rank = 3; rank <= 7; ++rank) {
          PointSet Z = root_system(RootFamily::B, rank);
          log_line("B" + std::to_string(rank) + ": scanning d,m in 2..6");
          auto cells = cached_search(Z, 2, 6, 2, 6, mode, repro_common);
          for (const auto& c : cells) {
            found_cells.push_back(c);
            cells_json.push_back(detection_cell_json(c, false));
          }
        }
        code = diff_against_golden(found_cells, golden_table1(), "table1");
        all = found_cells;
      } else {
        struct Target {
          const char* name;
          RootFamily fam;
          int rank, dmax;
          const std::vector<GoldenTuple>& golden;
        };
        const Target targets[] = {
            {"d4", RootFamily::D, 4, 6, golden_d4()},
            {"f4", RootFamily::F4, 4, 10, golden_f4()},
            {"h3", RootFamily::H3, 3, 8, golden_h3()},
            {"h4", RootFamily::H4, 4, 6, golden_h4()},
            {"e7", RootFamily::E7, 7, 0, golden_e7()},
            {"e8", RootFamily::E8, 8, 0, golden_e8()},
        };
        bool handled = false;
        for (const auto& t : targets) {
          if (repro_target != t.name) continue;
          handled = true;
          PointSet Z = root_system(t.fam, t.rank);
          std::vector<DetectionCell> cells;
          if (t.dmax > 0) {
            cells = cached_search(Z, 2, t.dmax, 2, t.dmax, mode, repro_common);
          } else {
            // long-running: probe exactly the published cells
            for (const auto& g : t.golden)
              cells.push_back(detect(Z, g.d, g.m, DetectMode::probabilistic,
                                     repro_common.detect_options()));
          }
          for (const auto& c : cells) cells_json.push_back(detection_cell_json(c, false));
          code = diff_against_golden(cells, t.golden, t.name);
          all = cells;
        }
        if (!handled) {
          std::cerr << "unknown reproduce target '" << repro_target << "'\n";
          return kExitUsage;
        }
      }
      ojson j;
      j["version"] = kVersion;
      j["target"] = repro_target;
      j["mode"] = repro_mode;
      j["seed"] = repro_common.seed;
      j["matches_golden"] = (code == kExitOk);
      j["cells"] = cells_json;
      if (!repro_out.empty()) write_text(repro_out, j.dump(2) + "\n");
      if (code == kExitOk) {
        int downgrade = certify_exit(all, repro_common.certify);
        return downgrade;
      }
      return code;
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

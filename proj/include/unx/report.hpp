#ifndef UNX_REPORT_HPP
#define UNX_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unx/duality.hpp"
#include "unx/lefschetz.hpp"

namespace unx {

inline constexpr const char* kVersion = "0.1.0";

using ojson = nlohmann::ordered_json;

ojson field_spec_json(const FieldSpecPtr& field);
ojson rank_certificate_json(const RankCertificate& cert);
/// Byte-stable cell record; runtime is deliberately left out (it goes
/// to the log instead) so identical configs re-serialize identically.
ojson detection_cell_json(const DetectionCell& cell, bool include_forms);
ojson duality_report_json(const DualityReport& report);
ojson lefschetz_verdict_json(const LefschetzVerdict& verdict);

struct RunConfig {
  std::string command;
  std::string points;  // label or path
  int d_lo = 0, d_hi = 0, m_lo = 0, m_hi = 0;
  std::string mode;
  uint64_t seed = 7;
  int trials = 3;
  std::string bound;
  int threads = 0;
  bool certify = false;
};

ojson run_config_json(const RunConfig& config);

/// Full report: config + field + cells, stable key order.
ojson detection_report_json(const RunConfig& config, const PointSet& Z,
                            const std::vector<DetectionCell>& cells,
                            bool include_forms);

std::string cells_csv(const std::vector<DetectionCell>& cells);

struct GoldenTuple {
  int n, d, m;
  long long edim, adim;
  bool operator==(const GoldenTuple& o) const {
    return n == o.n && d == o.d && m == o.m && edim == o.edim && adim == o.adim;
  }
};

/// The reported unexpected tuples per point-set family.
const std::vector<GoldenTuple>& golden_table1();  // B systems, n = 2..6
const std::vector<GoldenTuple>& golden_d4();
const std::vector<GoldenTuple>& golden_f4();
const std::vector<GoldenTuple>& golden_h3();
const std::vector<GoldenTuple>& golden_h4();
const std::vector<GoldenTuple>& golden_e7();
const std::vector<GoldenTuple>& golden_e8();

}  // namespace unx

#endif

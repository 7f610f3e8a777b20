#include "unx/report.hpp"

#include <sstream>

namespace unx {

ojson field_spec_json(const FieldSpecPtr& field) {
  if (field->is_rationals()) return ojson{{"kind", "rationals"}};
  return ojson{{"kind", "quadratic"},
               {"p", rat_to_string(field->p())},
               {"q", rat_to_string(field->q())}};
}

ojson rank_certificate_json(const RankCertificate& cert) {
  ojson j;
  j["rank"] = cert.rank;
  j["mode"] = cert.mode == RankMode::exact_symbolic ? "exact-symbolic" : "probabilistic";
  if (cert.mode == RankMode::probabilistic) {
    j["trials"] = cert.trials;
    j["seed"] = cert.seed;
  }
  j["witness"] = cert.witness;
  return j;
}

ojson detection_cell_json(const DetectionCell& cell, bool include_forms) {
  ojson j;
  j["n"] = cell.n;
  j["d"] = cell.d;
  j["m"] = cell.m;
  j["edim"] = cell.edim;
  j["adim"] = cell.adim;
  j["unexpected"] = cell.unexpected;
  j["certificate"] = to_string(cell.certificate);
  j["kernel_dim_claimed"] = cell.kernel_dim_claimed;
  j["ranks"] = ojson{{"q1", cell.rank_q1},
                     {"q2", cell.rank_q2},
                     {"n", rank_certificate_json(cell.rank_n)}};
  if (include_forms && !cell.kernel_forms.empty()) {
    ojson forms = ojson::array();
    for (const auto& f : cell.kernel_forms) forms.push_back(f.star().to_string());
    j["forms"] = forms;
  }
  return j;
}

ojson duality_report_json(const DualityReport& report) {
  ojson j;
  j["bidegree"] = ojson::array({report.a_degree, report.x_degree});
  j["diag_mult_in_a"] = report.diag_mult_in_a;
  j["diag_mult_in_x"] = report.diag_mult_in_x;
  j["swap_relation"] = to_string(report.swap_relation);
  j["tangent_cone_match"] = report.tangent_cone_match;
  j["sign_matches_parity"] = report.sign_matches_parity;
  j["samples_checked"] = report.samples_checked;
  j["form"] = report.form.to_string();
  return j;
}

ojson lefschetz_verdict_json(const LefschetzVerdict& v) {
  ojson j;
  j["degree_i"] = v.degree_i;
  j["range_k"] = v.range_k;
  j["dim_source"] = v.dim_source;
  j["dim_target"] = v.dim_target;
  j["map_rank"] = v.map_rank;
  j["fails"] = v.fails;
  return j;
}

ojson run_config_json(const RunConfig& config) {
  ojson j;
  j["command"] = config.command;
  j["points"] = config.points;
  j["d"] = ojson::array({config.d_lo, config.d_hi});
  j["m"] = ojson::array({config.m_lo, config.m_hi});
  j["mode"] = config.mode;
  j["seed"] = config.seed;
  j["trials"] = config.trials;
  j["bound"] = config.bound;
  j["certify"] = config.certify;
  return j;
}

ojson detection_report_json(const RunConfig& config, const PointSet& Z,
                            const std::vector<DetectionCell>& cells,
                            bool include_forms) {
  ojson j;
  j["version"] = kVersion;
  j["config"] = run_config_json(config);
  j["label"] = Z.label();
  j["field"] = field_spec_json(Z.field());
  j["points"] = Z.size();
  ojson arr = ojson::array();
  for (const auto& cell : cells) arr.push_back(detection_cell_json(cell, include_forms));
  j["cells"] = arr;
  return j;
}

std::string cells_csv(const std::vector<DetectionCell>& cells) {
  std::ostringstream out;
  out << "n,d,m,edim,adim,unexpected,certificate,kernel_dim_claimed\n";
  for (const auto& c : cells)
    out << c.n << "," << c.d << "," << c.m << "," << c.edim << "," << c.adim << ","
        << (c.unexpected ? "true" : "false") << "," << to_string(c.certificate) << ","
        << c.kernel_dim_claimed << "\n";
  return out.str();
}

const std::vector<GoldenTuple>& golden_table1() {
  static const std::vector<GoldenTuple> rows = {
      {2, 4, 3, 0, 1},  {3, 4, 4, -1, 1}, {4, 4, 4, 10, 11}, {5, 3, 3, -1, 5},
      {5, 4, 4, 34, 35}, {6, 3, 3, 7, 14}, {6, 4, 4, 77, 78}};
  return rows;
}

const std::vector<GoldenTuple>& golden_d4() {
  static const std::vector<GoldenTuple> rows = {{3, 3, 3, -2, 1}, {3, 4, 4, 3, 4}};
  return rows;
}

const std::vector<GoldenTuple>& golden_f4() {
  static const std::vector<GoldenTuple> rows = {{3, 4, 3, 2, 4},
                                                {3, 4, 4, -8, 1},
                                                {3, 5, 5, -3, 3},
                                                {3, 6, 6, 4, 7},
                                                {3, 7, 7, 12, 13}};
  return rows;
}

const std::vector<GoldenTuple>& golden_h3() {
  static const std::vector<GoldenTuple> rows = {
      {2, 6, 5, -2, 1}, {2, 7, 6, 0, 2}, {2, 8, 7, 2, 3}};
  return rows;
}

const std::vector<GoldenTuple>& golden_h4() {
  static const std::vector<GoldenTuple> rows = {
      {3, 6, 3, 14, 15}, {3, 6, 4, 4, 9}, {3, 6, 5, -11, 4}, {3, 6, 6, -32, 1}};
  return rows;
}

const std::vector<GoldenTuple>& golden_e7() {
  static const std::vector<GoldenTuple> rows = {{6, 4, 4, 63, 64}};
  return rows;
}

const std::vector<GoldenTuple>& golden_e8() {
  static const std::vector<GoldenTuple> rows = {
      {7, 4, 3, 174, 175}, {7, 4, 4, 90, 99}, {7, 5, 5, 342, 343}};
  return rows;
}

}  // namespace unx

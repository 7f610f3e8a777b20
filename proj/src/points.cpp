#include "unx/points.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "unx/prng.hpp"

namespace unx {

namespace {
#include "root_data.inc"

FieldScalar coord_scalar(const RootCoord& c, const FieldSpecPtr& field) {
  return FieldScalar(Rat(c.c0), Rat(c.c1), field);
}
}  // namespace

ProjectivePoint::ProjectivePoint(std::vector<FieldScalar> coords)
    : coords_(std::move(coords)) {
  size_t first = coords_.size();
  for (size_t i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) {
      first = i;
      break;
    }
  if (first == coords_.size())
    throw error("projective point with all coordinates zero");
  FieldScalar inv = coords_[first].inv();
  for (auto& c : coords_) c *= inv;
}

std::string ProjectivePoint::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].to_string();
  }
  return s + "]";
}

void PointSet::add(std::vector<FieldScalar> coords) {
  if (int(coords.size()) != n_ + 1)
    throw error("point has " + std::to_string(coords.size()) +
                " coordinates, expected " + std::to_string(n_ + 1));
  for (const auto& c : coords)
    if (!(c.spec() == field_ || *c.spec() == *field_))
      throw field_mismatch_error("point coordinate in a different field");
  ProjectivePoint p(std::move(coords));
  for (const auto& q : points_)
    if (q == p) return;
  points_.push_back(std::move(p));
}

RootFamily root_family_from_string(const std::string& name) {
  if (name == "A") return RootFamily::A;
  if (name == "B" || name == "C") return RootFamily::B;  // Z_C == Z_B
  if (name == "D") return RootFamily::D;
  if (name == "E6") return RootFamily::E6;
  if (name == "E7") return RootFamily::E7;
  if (name == "E8") return RootFamily::E8;
  if (name == "F4") return RootFamily::F4;
  if (name == "H3") return RootFamily::H3;
  if (name == "H4") return RootFamily::H4;
  throw error("unknown root system '" + name + "'");
}

std::string root_family_to_string(RootFamily fam) {
  switch (fam) {
    case RootFamily::A: return "A";
    case RootFamily::B: return "B";
    case RootFamily::D: return "D";
    case RootFamily::E6: return "E6";
    case RootFamily::E7: return "E7";
    case RootFamily::E8: return "E8";
    case RootFamily::F4: return "F4";
    case RootFamily::H3: return "H3";
    case RootFamily::H4: return "H4";
  }
  return "?";
}

namespace {

void require_rank(RootFamily fam, int rank, int expected) {
  if (rank != expected)
    throw error(root_family_to_string(fam) + " has rank " +
                std::to_string(expected) + ", got " + std::to_string(rank));
}

PointSet from_integer_rows(const RootCoord* data, int count, int width,
                           const FieldSpecPtr& field, const std::string& label) {
  PointSet Z(width - 1, field, label);
  for (int i = 0; i < count; ++i) {
    std::vector<FieldScalar> coords;
    coords.reserve(width);
    for (int j = 0; j < width; ++j) coords.push_back(coord_scalar(data[size_t(i) * width + j], field));
    Z.add(std::move(coords));
  }
  return Z;
}

// The 120 explicit E8 representatives, one per +-pair of roots.
std::vector<std::vector<long>> e8_rows() {
  std::vector<std::vector<long>> rows;
  for (int i = 0; i < 120; ++i) {
    std::vector<long> row(8);
    for (int j = 0; j < 8; ++j) row[size_t(j)] = kE8Points[i][j].c0;
    rows.push_back(std::move(row));
  }
  return rows;
}

// E7: members of the E8 list with the first two coordinates equal, the
// first coordinate dropped.  E6 repeats the filter once more.
std::vector<std::vector<long>> equal_head_filter(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<long>> out;
  for (const auto& row : rows) {
    if (row[0] != row[1]) continue;
    out.emplace_back(row.begin() + 1, row.end());
  }
  return out;
}

PointSet from_long_rows(const std::vector<std::vector<long>>& rows,
                        const std::string& label) {
  const FieldSpecPtr field = FieldSpec::rationals();
  PointSet Z(int(rows[0].size()) - 1, field, label);
  for (const auto& row : rows) {
    std::vector<FieldScalar> coords;
    coords.reserve(row.size());
    for (long v : row) coords.emplace_back(Rat(v), field);
    Z.add(std::move(coords));
  }
  return Z;
}

}  // namespace

PointSet root_system(RootFamily fam, int rank) {
  const FieldSpecPtr Q = FieldSpec::rationals();
  switch (fam) {
    case RootFamily::A: {
      // Roots e_i - e_j of A_rank live in R^{rank+1}; drop the last
      // coordinate, then projectivize.  Unit vectors survive the
      // projection, so |Z| = binom(rank+1, 2) and not binom(rank, 2).
      if (rank < 2 || rank > 8) throw error("A rank out of range [2,8]");
      PointSet Z(rank - 1, Q, "A" + std::to_string(rank));
      const int dim = rank + 1;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (i == j) continue;
          std::vector<FieldScalar> v(size_t(rank), FieldScalar::zero(Q));
          if (i < rank) v[size_t(i)] = FieldScalar::one(Q);
          if (j < rank) v[size_t(j)] = -FieldScalar::one(Q);
          bool nonzero = false;
          for (const auto& c : v) nonzero = nonzero || !c.is_zero();
          if (nonzero) Z.add(std::move(v));
        }
      return Z;
    }
    case RootFamily::B: {
      if (rank < 2 || rank > 8) throw error("B rank out of range [2,8]");
      PointSet Z(rank - 1, Q, "B" + std::to_string(rank));
      for (int i = 0; i < rank; ++i) {
        std::vector<FieldScalar> v(size_t(rank), FieldScalar::zero(Q));
        v[size_t(i)] = FieldScalar::one(Q);
        Z.add(std::move(v));
      }
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int sign = 0; sign < 2; ++sign) {
            std::vector<FieldScalar> v(size_t(rank), FieldScalar::zero(Q));
            v[size_t(i)] = FieldScalar::one(Q);
            v[size_t(j)] = sign ? -FieldScalar::one(Q) : FieldScalar::one(Q);
            Z.add(std::move(v));
          }
      return Z;
    }
    case RootFamily::D: {
      if (rank < 3 || rank > 8) throw error("D rank out of range [3,8]");
      PointSet Z(rank - 1, Q, "D" + std::to_string(rank));
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int sign = 0; sign < 2; ++sign) {
            std::vector<FieldScalar> v(size_t(rank), FieldScalar::zero(Q));
            v[size_t(i)] = FieldScalar::one(Q);
            v[size_t(j)] = sign ? -FieldScalar::one(Q) : FieldScalar::one(Q);
            Z.add(std::move(v));
          }
      return Z;
    }
    case RootFamily::E8:
      require_rank(fam, rank, 8);
      return from_long_rows(e8_rows(), "E8");
    case RootFamily::E7:
      require_rank(fam, rank, 7);
      return from_long_rows(equal_head_filter(e8_rows()), "E7");
    case RootFamily::E6:
      require_rank(fam, rank, 6);
      return from_long_rows(equal_head_filter(equal_head_filter(e8_rows())), "E6");
    case RootFamily::F4:
      require_rank(fam, rank, 4);
      return from_integer_rows(&kF4Points[0][0], 24, 4, FieldSpec::rationals(), "F4");
    case RootFamily::H3:
      require_rank(fam, rank, 3);
      return from_integer_rows(&kH3Points[0][0], 15, 3,
                               FieldSpec::quadratic(Rat(0), Rat(5)), "H3");
    case RootFamily::H4:
      require_rank(fam, rank, 4);
      return from_integer_rows(&kH4Points[0][0], 60, 4,
                               FieldSpec::quadratic(Rat(1), Rat(1)), "H4");
  }
  throw error("unreachable root family");
}

PointSet fermat_supersolvable_duals() {
  // omega = t with t^2 = -t - 1, a primitive cube root of unity.
  const FieldSpecPtr K = FieldSpec::quadratic(Rat(-1), Rat(-1));
  const FieldScalar zero = FieldScalar::zero(K), one = FieldScalar::one(K);
  const FieldScalar w = FieldScalar::t(K), w2 = w * w;
  PointSet Z(2, K, "fermat12");
  Z.add({one, zero, zero});   // x
  Z.add({zero, one, zero});   // y
  Z.add({zero, zero, one});   // z
  for (const FieldScalar& r : {one, w, w2}) {
    Z.add({one, -r, zero});   // x - r y
    Z.add({one, zero, -r});   // x - r z
    Z.add({zero, one, -r});   // y - r z
  }
  if (Z.size() != 12) throw error("fermat dual set is not 12 points");
  return Z;
}

PointSet twisted_cubic_points(int count, uint64_t seed) {
  if (count < 1) throw error("twisted_cubic_points requires count >= 1");
  const FieldSpecPtr Q = FieldSpec::rationals();
  std::vector<Rat> params;
  if (seed == 0) {
    for (int i = 1; i <= count; ++i) params.emplace_back(i);
  } else {
    std::set<long> used;
    uint64_t state = seed;
    while (int(used.size()) < count)
      used.insert(long(splitmix64(state) % 1000003) + 1);
    for (long v : used) params.emplace_back(v);
  }
  PointSet Z(3, Q, "twisted-cubic-" + std::to_string(count));
  for (const Rat& tpar : params) {
    FieldScalar t1(tpar, Q);
    Z.add({FieldScalar::one(Q), t1, t1 * t1, t1 * t1 * t1});
  }
  return Z;
}

std::vector<SparsePoly> dualize(const PointSet& Z) {
  std::vector<SparsePoly> forms;
  forms.reserve(size_t(Z.size()));
  for (const auto& pt : Z.points()) {
    SparsePoly L(Z.n(), Z.field());
    for (int i = 0; i <= Z.n(); ++i) {
      if (pt.coords()[size_t(i)].is_zero()) continue;
      Monomial m = Monomial::unit(Z.n());
      m.x_exp[size_t(i)] = 1;
      L.add_term(m, pt.coords()[size_t(i)]);
    }
    forms.push_back(std::move(L));
  }
  return forms;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json field_to_json(const FieldSpecPtr& field) {
  if (field->is_rationals()) return json{{"kind", "rationals"}};
  return json{{"kind", "quadratic"},
              {"p", rat_to_string(field->p())},
              {"q", rat_to_string(field->q())}};
}

FieldSpecPtr field_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind == "quadratic")
    return FieldSpec::quadratic(rat_from_string(j.at("p").get<std::string>()),
                                rat_from_string(j.at("q").get<std::string>()));
  throw error("unknown field kind '" + kind + "'");
}

}  // namespace

PointSet load_pointset(const std::string& path, PointFormat format) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  if (format == PointFormat::json) {
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw parse_error(std::string("bad JSON in '") + path + "': " + e.what(), 1);
    }
    FieldSpecPtr field = field_from_json(j.at("field"));
    PointSet Z(j.at("n").get<int>(), field,
               j.value("label", std::string("pointset")));
    int row = 0;
    for (const auto& pt : j.at("points")) {
      ++row;
      std::vector<FieldScalar> coords;
      for (const auto& c : pt) {
        try {
          coords.push_back(FieldScalar::from_string(c.get<std::string>(), field));
        } catch (const error& e) {
          throw parse_error(std::string("bad coordinate: ") + e.what(), row);
        }
      }
      try {
        Z.add(std::move(coords));
      } catch (const error& e) {
        throw parse_error(e.what(), row);
      }
    }
    return Z;
  }
  // CSV: optional "# field: ..."/"# n: ..." headers, then one point per line.
  std::string line;
  int lineno = 0;
  FieldSpecPtr field = FieldSpec::rationals();
  int n = -1;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string key;
      hdr >> key;
      if (key == "field:") {
        std::string kind;
        hdr >> kind;
        if (kind == "rationals") {
          field = FieldSpec::rationals();
        } else if (kind == "quadratic") {
          std::string p, q;
          hdr >> p >> q;
          field = FieldSpec::quadratic(rat_from_string(p), rat_from_string(q));
        } else {
          throw parse_error("unknown field kind '" + kind + "'", lineno);
        }
      }
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (n < 0) n = int(cells.size()) - 1;
    if (int(cells.size()) != n + 1)
      throw parse_error("expected " + std::to_string(n + 1) + " coordinates, got " +
                        std::to_string(cells.size()), lineno);
    rows.push_back(std::move(cells));
  }
  if (n < 0) throw parse_error("no points in '" + path + "'", 1);
  PointSet Z(n, field, "pointset");
  int row = 0;
  for (const auto& cells : rows) {
    ++row;
    std::vector<FieldScalar> coords;
    for (size_t i = 0; i < cells.size(); ++i) {
      try {
        coords.push_back(FieldScalar::from_string(cells[i], field));
      } catch (const error& e) {
        throw parse_error(e.what(), row, int(i) + 1);
      }
    }
    try {
      Z.add(std::move(coords));
    } catch (const error& e) {
      throw parse_error(e.what(), row);
    }
  }
  return Z;
}

void save_pointset(const PointSet& Z, const std::string& path, PointFormat format) {
  std::ofstream out(path);
  if (!out) throw error("cannot write '" + path + "'");
  if (format == PointFormat::json) {
    json j;
    j["n"] = Z.n();
    j["field"] = field_to_json(Z.field());
    json pts = json::array();
    for (const auto& p : Z.points()) {
      json row = json::array();
      for (const auto& c : p.coords()) row.push_back(c.to_string());
      pts.push_back(row);
    }
    j["points"] = pts;
    j["label"] = Z.label();
    out << j.dump(2) << "\n";
    return;
  }
  if (!Z.field()->is_rationals())
    out << "# field: quadratic " << rat_to_string(Z.field()->p()) << " "
        << rat_to_string(Z.field()->q()) << "\n";
  for (const auto& p : Z.points()) {
    for (size_t i = 0; i < p.coords().size(); ++i) {
      if (i) out << ",";
      out << p.coords()[i].to_string();
    }
    out << "\n";
  }
}

}  // namespace unx

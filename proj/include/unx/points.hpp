#ifndef UNX_POINTS_HPP
#define UNX_POINTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "unx/poly.hpp"

namespace unx {

/// A point of P^n, canonically scaled so its first nonzero coordinate is 1.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<FieldScalar> coords);
  const std::vector<FieldScalar>& coords() const { return coords_; }
  int n() const { return int(coords_.size()) - 1; }
  bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
  std::string to_string() const;

 private:
  std::vector<FieldScalar> coords_;
};

/// A finite, duplicate-free list of projective points over one field.
class PointSet {
 public:
  PointSet(int n, FieldSpecPtr field, std::string label)
      : n_(n), field_(std::move(field)), label_(std::move(label)) {}

  int n() const { return n_; }
  const FieldSpecPtr& field() const { return field_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<ProjectivePoint>& points() const { return points_; }
  int size() const { return int(points_.size()); }

  /// Canonicalizes and inserts; duplicates are silently dropped.
  void add(std::vector<FieldScalar> coords);

 private:
  int n_;
  FieldSpecPtr field_;
  std::string label_;
  std::vector<ProjectivePoint> points_;
};

enum class RootFamily { A, B, D, E6, E7, E8, F4, H3, H4 };

RootFamily root_family_from_string(const std::string& name);
std::string root_family_to_string(RootFamily fam);

/// Projectivized root set for the named system.  `rank` is the usual
/// subscript (B with rank r yields r^2 points in P^{r-1}); it is fixed
/// for E6/E7/E8/F4/H3/H4 and validated.
PointSet root_system(RootFamily fam, int rank);

/// The 12 points of P^2 dual to the linear factors of
/// xyz(x^3-y^3)(x^3-z^3)(y^3-z^3), over Q[t]/(t^2+t+1).
PointSet fermat_supersolvable_duals();

/// `count` distinct points [1 : t : t^2 : t^3] on the twisted cubic;
/// parameters are 1,2,3,... for seed 0, otherwise seed-shuffled
/// distinct integers.
PointSet twisted_cubic_points(int count, uint64_t seed = 0);

/// The linear form c_0 x_0 + ... + c_n x_n for each point [c_0:...:c_n].
std::vector<SparsePoly> dualize(const PointSet& Z);

enum class PointFormat { json, csv };

PointSet load_pointset(const std::string& path, PointFormat format);
void save_pointset(const PointSet& Z, const std::string& path, PointFormat format);

}  // namespace unx

#endif

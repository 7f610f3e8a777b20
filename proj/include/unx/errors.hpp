#ifndef UNX_ERRORS_HPP
#define UNX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace unx {

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different coefficient fields.
struct field_mismatch_error : error {
  explicit field_mismatch_error(const std::string& what) : error(what) {}
};

struct division_by_zero_error : error {
  explicit division_by_zero_error(const std::string& what) : error(what) {}
};

/// Malformed input file; carries a 1-based line (and column when known).
struct parse_error : error {
  int line = 0;
  int column = 0;
  parse_error(const std::string& what, int line_, int column_ = 0)
      : error(what + " (line " + std::to_string(line_) +
              (column_ > 0 ? ", column " + std::to_string(column_) : "") + ")"),
        line(line_),
        column(column_) {}
};

/// Requested more independent kernel vectors than the matrix has.
struct kernel_deficient_error : error {
  explicit kernel_deficient_error(const std::string& what) : error(what) {}
};

/// Form extraction requested for a cell that is not unexpected.
struct not_unexpected_error : error {
  explicit not_unexpected_error(const std::string& what) : error(what) {}
};

/// detect() and slp_check() disagreed on a cell; indicates a bug.
struct equivalence_violation_error : error {
  explicit equivalence_violation_error(const std::string& what) : error(what) {}
};

/// Two independently seeded "general" samples disagreed.
struct unreliable_sample_error : error {
  explicit unreliable_sample_error(const std::string& what) : error(what) {}
};

/// Tangent-cone multiplicity precondition failed.
struct multiplicity_mismatch_error : error {
  explicit multiplicity_mismatch_error(const std::string& what) : error(what) {}
};

}  // namespace unx

#endif

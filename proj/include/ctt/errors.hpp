#ifndef CTT_ERRORS_HPP
#define CTT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ctt {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad (n, d) or a board over the documented cell cap.
struct invalid_dims_error : error {
  using error::error;
};

// A coordinate tuple outside [1,n]^d or with the wrong arity.
struct invalid_cell_error : error {
  using error::error;
};

struct illegal_move_error : error {
  enum class kind { occupied, floating, out_of_range };
  illegal_move_error(kind k, const std::string& what) : error(what), why(k) {}
  kind why;
};

// A column chosen more than n times in a column-sequence play.
struct overfull_column_error : error {
  using error::error;
};

// An operation-specific precondition failed (halving, slack, assignment quota, ...).
struct precondition_error : error {
  using error::error;
};

// A cap was exceeded; carries whatever partial result was produced.
struct resource_limit_error : error {
  resource_limit_error(const std::string& what, std::uint64_t partial_count = 0)
      : error(what), partial(partial_count) {}
  std::uint64_t partial;
};

}  // namespace ctt

#endif

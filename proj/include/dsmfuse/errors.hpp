#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsmfuse {

enum class errc {
  invalid_argument,
  atom_out_of_range,
  frame_mismatch,
  capacity_exceeded,
  negative_mass,
  mass_on_empty,
  sum_not_one,
  vacuous_model,
  invalid_constraint,
  conditions_not_met,
  parse_error,
  invalid_document,
};

/// Library-wide error. Parse errors carry the offending input position.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(errc code, std::string message, std::size_t position = npos)
      : std::runtime_error(std::move(message)), code_(code), position_(position) {}

  errc code() const { return code_; }
  std::size_t position() const { return position_; }

 private:
  errc code_;
  std::size_t position_;
};

}  // namespace dsmfuse

#pragma once

#include <stdexcept>
#include <string>

namespace zipstrata {

enum class ErrorKind {
  unsupported_series,
  unsupported_group,
  invalid_cartan,
  invalid_word,
  invalid_type,
  mismatched_root_data,
  non_minuscule,
  non_dominant,
  invalid_cocharacter,
  element_not_in_parabolic,
  division_by_zero,
  invalid_field,
  budget_exceeded,
  representative_collision,
  poset_violation,
  insufficient_data,
  not_a_character,
  no_siegel_target,
  ill_defined_section,
  not_stabilized,
  incomplete_classification,
  constraint_violation,
  config_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zipstrata

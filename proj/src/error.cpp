#include "zipstrata/error.hpp"

namespace zipstrata {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::unsupported_series: return "unsupported-series";
    case ErrorKind::unsupported_group: return "unsupported-group";
    case ErrorKind::invalid_cartan: return "invalid-cartan";
    case ErrorKind::invalid_word: return "invalid-word";
    case ErrorKind::invalid_type: return "invalid-type";
    case ErrorKind::mismatched_root_data: return "mismatched-root-data";
    case ErrorKind::non_minuscule: return "non-minuscule";
    case ErrorKind::non_dominant: return "non-dominant";
    case ErrorKind::invalid_cocharacter: return "invalid-cocharacter";
    case ErrorKind::element_not_in_parabolic: return "element-not-in-parabolic";
    case ErrorKind::division_by_zero: return "division-by-zero";
    case ErrorKind::invalid_field: return "invalid-field";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::representative_collision: return "representative-collision";
    case ErrorKind::poset_violation: return "poset-violation";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::not_a_character: return "not-a-character";
    case ErrorKind::no_siegel_target: return "no-siegel-target";
    case ErrorKind::ill_defined_section: return "ill-defined-section";
    case ErrorKind::not_stabilized: return "not-stabilized";
    case ErrorKind::incomplete_classification: return "incomplete-classification";
    case ErrorKind::constraint_violation: return "constraint-violation";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

}  // namespace zipstrata

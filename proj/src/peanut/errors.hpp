#pragma once

#include <stdexcept>
#include <string>

namespace peanut {

// Every failure the library can report, by name. The CLI and the C API map
// these onto their coarse status codes; tests match on the enum.
enum class Errc {
  length_mismatch,
  unsorted_dates,
  duplicate_date,
  duplicate_weekly_date,
  unknown_column,
  column_name_clash,
  file_not_found,
  missing_header_column,
  unparsable_number,
  insufficient_training_rows,
  no_observed_values,
  dimension_mismatch,
  rank_deficient,
  too_few_rows,
  invalid_df,
  prob_out_of_range,
  empty_input,
  feature_count_mismatch,
  bad_k,
  missing_values_present,
  empty_metric_input,
  frame_mismatch,
  invalid_spec,
  parse_error,
  validation_error,
  io_error,
  numeric_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace peanut

#include "peanut/errors.hpp"

namespace peanut {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::unsorted_dates: return "unsorted_dates";
    case Errc::duplicate_date: return "duplicate_date";
    case Errc::duplicate_weekly_date: return "duplicate_weekly_date";
    case Errc::unknown_column: return "unknown_column";
    case Errc::column_name_clash: return "column_name_clash";
    case Errc::file_not_found: return "file_not_found";
    case Errc::missing_header_column: return "missing_header_column";
    case Errc::unparsable_number: return "unparsable_number";
    case Errc::insufficient_training_rows: return "insufficient_training_rows";
    case Errc::no_observed_values: return "no_observed_values";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::rank_deficient: return "rank_deficient";
    case Errc::too_few_rows: return "too_few_rows";
    case Errc::invalid_df: return "invalid_df";
    case Errc::prob_out_of_range: return "prob_out_of_range";
    case Errc::empty_input: return "empty_input";
    case Errc::feature_count_mismatch: return "feature_count_mismatch";
    case Errc::bad_k: return "bad_k";
    case Errc::missing_values_present: return "missing_values_present";
    case Errc::empty_metric_input: return "empty_metric_input";
    case Errc::frame_mismatch: return "frame_mismatch";
    case Errc::invalid_spec: return "invalid_spec";
    case Errc::parse_error: return "parse_error";
    case Errc::validation_error: return "validation_error";
    case Errc::io_error: return "io_error";
    case Errc::numeric_error: return "numeric_error";
  }
  return "unknown_error";
}

}  // namespace peanut

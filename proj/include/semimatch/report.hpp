#pragma once

#include <optional>
#include <string>

#include "semimatch/params.hpp"
#include "semimatch/phase_engine.hpp"

namespace semimatch {

struct CsvRecord {
  std::string run_id;
  std::size_t n = 0;
  std::size_t m = 0;
  Rational eps;
  Mode mode = Mode::kUntilQuiescent;
  RunStats stats;
  std::size_t final_size = 0;
  std::optional<std::size_t> opt_size;
};

/// run_id,n,m,eps,mode,passes,bundles,phases,final_size,opt_size,ratio,peak_words
std::string csv_header();
/// No trailing newline. opt_size and ratio are empty without an oracle value.
std::string csv_row(const CsvRecord& r);

}  // namespace semimatch

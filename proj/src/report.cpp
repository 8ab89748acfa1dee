#include "semimatch/report.hpp"

#include <iomanip>
#include <sstream>

namespace semimatch {

std::string csv_header() {
  return "run_id,n,m,eps,mode,passes,bundles,phases,final_size,opt_size,ratio,peak_words";
}

std::string csv_row(const CsvRecord& r) {
  std::ostringstream out;
  out << r.run_id << ',' << r.n << ',' << r.m << ',' << std::setprecision(6) << to_double(r.eps)
      << ',' << to_string(r.mode) << ',' << r.stats.passes << ',' << r.stats.bundles << ','
      << r.stats.phases << ',' << r.final_size << ',';
  if (r.opt_size) {
    out << *r.opt_size << ',';
    if (*r.opt_size == 0) {
      out << "1.000000";
    } else {
      out << std::fixed << std::setprecision(6)
          << static_cast<double>(r.final_size) / static_cast<double>(*r.opt_size);
    }
  } else {
    out << ',';
  }
  out << ',' << r.stats.peak_words;
  return out.str();
}

}  // namespace semimatch

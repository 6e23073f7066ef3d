#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "braces/p2q2.hpp"

namespace braces::cli {

  enum class Status { Pass, Fail, Skip };
  char const* status_name(Status s);

  struct Check {
    std::string name;
    Status      status = Status::Skip;
    std::string detail;
  };

  struct ReportOptions {
    std::size_t jobs    = 0;
    std::size_t samples = 0;  // 0: exhaustive up to kVerifyBound, else 10⁶ samples
  };

  struct Report {
    std::int64_t            p = 0, q = 0;
    std::vector<Check>      checks;
    p2q2::CountReport       counts;
    bool                    all_pass() const;
    std::string             to_text() const;
    nlohmann::ordered_json  to_json() const;
  };

  // Throws PreconditionError when (p, q) fails the hypothesis. Progress lines
  // go to `log` when non-null.
  Report run_report(std::int64_t p, std::int64_t q, ReportOptions const& opts, std::ostream* log);

}  // namespace braces::cli

#ifndef VERIFY_CASES_HPP
#define VERIFY_CASES_HPP

#include <functional>
#include <string>
#include <vector>

namespace verify {

struct RunCtx {
  unsigned seed = 0;
  int samples = 25;
};

enum class Status { pass, fail, documented };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "discrepancy-documented";
  }
}

struct CaseResult {
  Status status = Status::pass;
  std::string witness;  // offending expression (fail) or documented discrepancy
};

struct Case {
  std::string id;
  std::string tag;  // lie | spencer | adjoint | divergence | cohomology | curvature | nonlinear
  std::string paper_ref;
  std::function<CaseResult(const RunCtx&)> run;
};

const std::vector<Case>& registry();

/// Groups of case ids forming the numbered acceptance criteria, with a short
/// description per criterion.
struct Criterion {
  std::string description;
  std::vector<std::string> case_ids;
};
const std::vector<Criterion>& criteria();

}  // namespace verify

#endif

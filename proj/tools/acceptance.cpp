// Runs the case registry grouped into the numbered acceptance criteria and
// prints one pass/fail line per criterion. Exit status 0 iff all pass.

#include <iostream>
#include <map>

#include "cases.hpp"

int main() {
  std::map<std::string, const verify::Case*> by_id;
  for (const auto& c : verify::registry()) by_id[c.id] = &c;

  verify::RunCtx ctx;
  std::map<std::string, verify::Status> outcome;
  bool all_ok = true;
  int num = 0;
  for (const auto& crit : verify::criteria()) {
    ++num;
    bool ok = true;
    std::string why;
    for (const auto& id : crit.case_ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        ok = false;
        why = "unknown case " + id;
        continue;
      }
      if (!outcome.count(id)) {
        try {
          outcome[id] = it->second->run(ctx).status;
        } catch (const std::exception& e) {
          outcome[id] = verify::Status::fail;
        }
      }
      if (outcome[id] == verify::Status::fail && ok) {
        ok = false;
        why = "case " + id + " failed";
      }
    }
    all_ok = all_ok && ok;
    std::cout << "criterion " << num << " (" << crit.description
              << "): " << (ok ? "pass" : "FAIL");
    if (!ok) std::cout << " [" << why << "]";
    std::cout << "\n";
  }
  return all_ok ? 0 : 1;
}

// Command-line runner for the verification case registry.
//
//   verify <case-id> | --all [--tag T] [--format text|json]
//          [--seed S] [--samples K] [--jobs N]
//
// Exit status: 0 when every selected case passes (documented discrepancies
// count as pass), 1 when any case fails, 2 on usage errors.

#include <atomic>
#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cases.hpp"

namespace {

struct Timed {
  verify::CaseResult result;
  long long millis = 0;
};

Timed run_case(const verify::Case& c, const verify::RunCtx& ctx) {
  Timed t;
  auto start = std::chrono::steady_clock::now();
  try {
    t.result = c.run(ctx);
  } catch (const std::exception& e) {
    t.result.status = verify::Status::fail;
    t.result.witness = std::string("unexpected exception: ") + e.what();
  }
  t.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
                 .count();
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the computations behind the engine"};
  std::string case_id, tag, format = "text";
  bool all = false;
  unsigned seed = 0;
  int samples = 25, jobs = 1;
  app.add_option("case", case_id, "id of a single case to run");
  app.add_flag("--all", all, "run every registered case");
  app.add_option("--tag", tag, "restrict --all to one tag");
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "seed for randomized property cases");
  app.add_option("--samples", samples, "sample count for randomized cases")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "run cases in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (all == !case_id.empty()) {
    std::cerr << "give exactly one of: a case id, or --all\n";
    return 2;
  }

  std::vector<const verify::Case*> selected;
  for (const auto& c : verify::registry()) {
    if (!case_id.empty() && c.id != case_id) continue;
    if (!tag.empty() && c.tag != tag) continue;
    selected.push_back(&c);
  }
  if (selected.empty()) {
    std::cerr << "no such case or tag\n";
    return 2;
  }

  verify::RunCtx ctx{seed, samples};
  std::vector<Timed> results(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++)
      results[i] = run_case(*selected[i], ctx);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int pass = 0, fail = 0, documented = 0;
  for (const auto& r : results) {
    switch (r.result.status) {
      case verify::Status::pass: ++pass; break;
      case verify::Status::fail: ++fail; break;
      case verify::Status::documented: ++documented; break;
    }
  }

  if (format == "json") {
    nlohmann::ordered_json out;
    out["cases"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < selected.size(); ++i) {
      nlohmann::ordered_json c;
      c["id"] = selected[i]->id;
      c["status"] = verify::status_name(results[i].result.status);
      c["paper_ref"] = selected[i]->paper_ref;
      if (results[i].result.status != verify::Status::pass)
        c["witness"] = results[i].result.witness;
      c["millis"] = results[i].millis;
      out["cases"].push_back(std::move(c));
    }
    out["summary"] = {{"pass", pass}, {"fail", fail}, {"documented", documented}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < selected.size(); ++i) {
      std::cout << selected[i]->id << ": "
                << verify::status_name(results[i].result.status) << " ("
                << selected[i]->paper_ref << ", " << results[i].millis << " ms)\n";
      if (results[i].result.status != verify::Status::pass)
        std::cout << "  " << results[i].result.witness << "\n";
    }
    std::cout << pass << " passed, " << fail << " failed, " << documented
              << " documented\n";
  }
  return fail == 0 ? 0 : 1;
}

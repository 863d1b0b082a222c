// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "newtonmaps/verification.hpp"

using namespace newtonmaps;
using verify::json;

namespace {

constexpr std::uint64_t kSeed = 20240501;

struct Outcome {
  bool ok = false;
  std::string note;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt >= budget_s) {
    o.ok = false;
    o.note += (o.note.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!o.ok) ++failures;
  std::printf("criterion %2d: %s  %-34s %8.3f s%s%s\n", id, o.ok ? "PASS" : "FAIL", title, dt,
              o.note.empty() ? "" : "  ", o.note.c_str());
  std::fflush(stdout);
}

Outcome table_outcome(int d, std::size_t expected) {
  const auto j = verify::table_suite(d);
  int matched = 0;
  for (const auto& r : j["rows"]) matched += r["matched"].get<bool>();
  const auto found = j["found_rows"].get<std::size_t>();
  return {j["passed"].get<bool>() && found == expected,
          std::to_string(found) + " maps, " + std::to_string(matched) + "/" + std::to_string(j["rows"].size()) + " rows matched"};
}

}  // namespace

int main() {
  criterion(1, "degree-4 table", 1.0, [] { return table_outcome(4, 5); });
  criterion(2, "degree-5 table", 1.0, [] {
    auto o = table_outcome(5, 8);
    // the complex-parameter pair must be present
    const cplx a = cplx(-2.0, std::sqrt(5.0)) / 3.0;
    int seen = 0;
    for (const auto& row : enumerate(5).rows)
      for (const auto& p : row.params)
        if (std::abs(p.value - a) < 1e-9 || std::abs(p.value - std::conj(a)) < 1e-9) ++seen;
    if (seen < 2) o = {false, "complex rows missing"};
    return o;
  });
  criterion(3, "critical points of F1..F5", 5.0, [] {
    const auto j = verify::critical_table_suite();
    std::string bad;
    int total = 0;
    for (const auto& r : j["rows"]) {
      ++total;
      if (!r["ok"].get<bool>()) bad += (bad.empty() ? "" : ", ") + r["map"].get<std::string>() + " row " + std::to_string(total);
    }
    std::string note = std::to_string(total) + " rows";
    if (!bad.empty()) note += ", mismatched: " + bad;
    return Outcome{j["passed"].get<bool>(), note};
  });

  std::vector<verify::CorpusItem> corpus;
  criterion(4, "residue indices", 30.0, [&] {
    corpus = verify::newton_corpus(kSeed);
    const auto j = verify::residue_suite(corpus);
    return Outcome{j["passed"].get<bool>() && corpus.size() == 200, std::to_string(corpus.size()) + " maps"};
  });
  criterion(5, "multiplier laws and degree", 0.0, [&] {
    const auto j = verify::multiplier_suite(corpus);
    return Outcome{j["passed"].get<bool>(), std::to_string(j["failures"].get<int>()) + " failures"};
  });
  criterion(6, "characterization round trip", 0.0, [&] {
    const auto j = verify::characterization_suite(corpus, kSeed);
    return Outcome{j["passed"].get<bool>(), "rejection rate " + j["rejection_rate"].dump()};
  });
  criterion(7, "scaling conjugacy", 0.0, [] {
    const auto j = verify::scaling_suite(kSeed);
    return Outcome{j["passed"].get<bool>(), "worst rel err " + j["worst_relative_error"].dump()};
  });
  criterion(8, "McMullen family", 60.0, [] {
    const auto j = verify::mcmullen_suite(kSeed);
    std::string bad;
    for (const auto& c : j["cases"])
      if (!c["ok"].get<bool>()) bad += " (" + std::to_string(c["m"].get<int>()) + "," + std::to_string(c["n"].get<int>()) + ")";
    if (!j["line_case"]["passed"].get<bool>()) bad += " line-case";
    return Outcome{j["passed"].get<bool>(), std::to_string(j["cases"].size()) + " cases" + (bad.empty() ? "" : ", failed:" + bad)};
  });
  criterion(9, "disconnection evidence", 0.0, [] {
    const auto j = verify::disconnection_suite();
    int ok = 0;
    for (const auto& r : j["rows"]) ok += r["ok"].get<bool>();
    return Outcome{j["passed"].get<bool>(), std::to_string(ok) + "/" + std::to_string(j["rows"].size()) + " complete"};
  });
  criterion(10, "deterministic verify all", 0.0, [] {
    const auto a = verify::run_suite("all", kSeed).dump();
    const auto b = verify::run_suite("all", kSeed).dump();
    return Outcome{a == b && !a.empty(), std::to_string(a.size()) + " bytes"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

// Acceptance runner: one pass/fail line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "paircorr/paircorr.hpp"

using namespace paircorr;
using W = std::uint64_t;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> notes;
};

Outcome from_report(const VerificationReport& rep) {
  Outcome o{rep.passed(), {}};
  for (const auto& c : rep.checks)
    if (!c.pass) o.notes.push_back(c.description + ": observed " + c.observed + ", expected " + c.expected);
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome timed(const std::function<VerificationReport()>& run, double limit) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = from_report(run());
  const double t = seconds_since(t0);
  if (t > limit) {
    o.pass = false;
    o.notes.push_back("runtime " + std::to_string(t) + " s exceeds " + std::to_string(limit) + " s");
  }
  return o;
}

W circle_gap(W a, W b) {
  const W d = a - b;
  return std::min<W>(d, W(0) - d);
}

Outcome performance() {
  Outcome o{true, {}};
  const std::size_t n = 10000000;
  const auto pts = to_unit_batch(generate<W>(SequenceSpec{}, n));

  const auto t0 = std::chrono::steady_clock::now();
  const PairCountResult r = f_stat(pts, 1.0, 0.5);
  const double t = seconds_since(t0);
  o.notes.push_back("N=1e7 alpha=0.5 s=1: count " + std::to_string(r.ordered_pair_count) + ", F " +
                    std::to_string(r.f) + ", " + std::to_string(t) + " s");
  if (t > 10) {
    o.pass = false;
    o.notes.push_back("fast count exceeded 10 s");
  }

  const SortedCircle<W> sc(raw_words(pts));
  const W thr = threshold_from<W>(1.0, n, 0.5).distance.raw;
  const auto& x = sc.sorted();
  const auto nb = sc.neighbor_counts(thr);
  const std::uint64_t total = std::accumulate(nb.begin(), nb.end(), std::uint64_t{0});
  if (total != r.ordered_pair_count) {
    o.pass = false;
    o.notes.push_back("neighbor sum " + std::to_string(total) + " != fast count");
  }

  std::mt19937_64 rng(12);
  std::size_t mismatches = 0;
  for (int t2 = 0; t2 < 1000; ++t2) {
    const std::size_t i = rng() % n;
    std::uint64_t c = 0;
    for (std::size_t k = 1; k < n && circle_gap(x[(i + k) % n], x[i]) <= thr; ++k) ++c;
    for (std::size_t k = 1; k < n && circle_gap(x[(i + n - k) % n], x[i]) <= thr; ++k) ++c;
    if (c != nb[i]) ++mismatches;
  }
  if (mismatches != 0) {
    o.pass = false;
    o.notes.push_back(std::to_string(mismatches) + " of 1000 windowed recounts disagree");
  }
  return o;
}

struct Criterion {
  std::string description;
  std::function<Outcome()> run;
};

std::vector<Criterion> criteria() {
  return {
      {"fast count matches brute force",
       [] { return timed([] { return verify_oracle<W>(); }, 30); }},
      {"low-discrepancy sequences approach 2s",
       [] {
         Thm6Config c;
         c.witness_max_exponent = 0;
         return timed([&] { return verify_thm6<W>(c); }, 120);
       }},
      {"dyadic van der Corput has F = 0 at alpha = 1, s = 1/2",
       [] {
         Thm6Config c;
         c.bases.clear();
         return from_report(verify_thm6<W>(c));
       }},
      {"golden rotation has F = 0 at alpha = 1, s = 1/2 for N = q_h",
       [] {
         Thm7Config c;
         c.convergence = false;
         return from_report(verify_thm7<W>(c));
       }},
      {"golden rotation converges for alpha < 1",
       [] {
         Thm7Config c;
         c.witness = false;
         return timed([&] { return verify_thm7<W>(c); }, 60);
       }},
      {"three gap lengths match prediction", [] { return from_report(verify_threegap<W>()); }},
      {"large-gap counts in windows lie in {g, g+1}", [] { return from_report(verify_lemma10<W>()); }},
      {"Ostrowski weighted ratio bounds", [] { return from_report(verify_lemma11()); }},
      {"q_h ||q_{h-1} phi|| (1 + 1/phi^2) tends to 1", [] { return from_report(verify_lemma12()); }},
      {"per-point neighbour counts within bounds", [] { return from_report(verify_lemma9<W>()); }},
      {"i.i.d. uniform points give F near 2s", [] { return from_report(verify_cor5<W>()); }},
      {"N = 1e7 fast count within 10 s and spot-checked", performance},
  };
}

}  // namespace

int main(int argc, char** argv) {
  const auto all = criteria();
  std::vector<std::size_t> pick;
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int k = std::atoi(argv[2]);
    if (k < 1 || k > static_cast<int>(all.size())) {
      std::cerr << "criterion must be 1.." << all.size() << "\n";
      return 2;
    }
    pick.push_back(static_cast<std::size_t>(k));
  } else if (argc == 1) {
    for (std::size_t k = 1; k <= all.size(); ++k) pick.push_back(k);
  } else {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }

  bool ok = true;
  for (std::size_t k : pick) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[k - 1].run();
    } catch (const std::exception& e) {
      o = {false, {std::string("exception: ") + e.what()}};
    }
    std::printf("criterion %zu: %s %s (%.2f s)\n", k, o.pass ? "PASS" : "FAIL", all[k - 1].description.c_str(),
                seconds_since(t0));
    for (const auto& n : o.notes) std::printf("  %s\n", n.c_str());
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}

// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-7 drive the
// CLI in-process and inspect the certificates it writes; 8 is a seeded
// property suite; 9 reruns 1-6 under two worker counts and compares digests.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "bilin/cli.hpp"
#include "bilin/rng.hpp"

using namespace bilin;
namespace fs = std::filesystem;
using cert::Json;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      notes.push_back(what);
    }
  }
};

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  double seconds = 0.0;
  Json cert;
};

fs::path g_dir;

CliRun run_cli(std::vector<std::string> args, const std::string& cert_name) {
  CliRun r;
  const auto path = (g_dir / cert_name).string();
  args.push_back("--cert");
  args.push_back(path);
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  r.code = cli::run(args, out, err);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.out = out.str();
  r.err = err.str();
  if (fs::exists(path)) r.cert = cert::parse_json(cert::read_text(path), cert_name);
  return r;
}

void require_run(Outcome& o, const CliRun& r, double limit) {
  o.require(r.code == 0, "exit code " + std::to_string(r.code) + (r.err.empty() ? "" : ": " + r.err));
  o.require(r.seconds < limit, "took " + std::to_string(r.seconds) + " s, limit " + std::to_string(limit) + " s");
  o.require(r.cert.is_object(), "no certificate written");
  if (r.cert.is_object()) {
    const auto rep = cert::replay(r.cert);
    o.require(rep.ok, "replay: " + rep.message);
  }
}

Index count_of(const Json& payload, const std::string& group, const std::string& key) {
  const auto& g = payload[group];
  return g.contains(key) ? g[key].get<Index>() : 0;
}

// Elements of the span of matrices given as row lists, as flat entry vectors.
std::set<std::vector<Residue>> span_of(const Json& basis, Residue p) {
  std::set<std::vector<Residue>> out{{}};
  std::vector<std::vector<Residue>> flat;
  for (const auto& m : basis) {
    std::vector<Residue> f;
    for (const auto& row : m)
      for (const auto& e : row) f.push_back(e.get<Residue>());
    flat.push_back(std::move(f));
  }
  if (flat.empty()) return out;
  out.clear();
  const std::size_t len = flat[0].size();
  Index total = 1;
  for (std::size_t i = 0; i < flat.size(); ++i) total *= p;
  for (Index c = 0; c < total; ++c) {
    std::vector<Residue> v(len, 0);
    Index rest = c;
    for (const auto& f : flat) {
      const Residue k = rest % p;
      rest /= p;
      for (std::size_t j = 0; j < len; ++j) v[j] = (v[j] + k * f[j]) % p;
    }
    out.insert(v);
  }
  return out;
}

// ---------------------------------------------------------------- 1-7

Outcome criterion1(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "f3"}, "c1_" + jobs + ".json");
  require_run(o, r, 1.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& pl = r.cert["payload"];
  o.require(r.cert["kind"] == "non_bilinear" && pl["status"] == "non_bilinear", "verdict non_bilinear");
  o.require(pl["size"] == 29, "|P| = 29");
  o.require(pl["closure_size"] == 33, "closure size 33");
  o.require(pl["ann"] == Json::parse("[[[1,0],[0,2]]]"), "ann = span{diag(1,2)}");
  o.require(pl["witness"] == Json::array({4, 4}), "witness ((1,1),(1,1)) = indices (4,4)");
  const auto s = f3_example();
  o.require(is_transverse(s, TransverseMode::Direct) && is_transverse(s, TransverseMode::Fiberwise), "transverse in both modes");
  return o;
}

Outcome criterion2(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "sigma-fig2"}, "c2_" + jobs + ".json");
  require_run(o, r, 1.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& pl = r.cert["payload"];
  const std::set<std::vector<Residue>> displayed = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 1, 0, 0, 1, 0, 1, 0}, {0, 0, 1, 0, 0, 0, 1, 1, 0}};
  o.require(pl["ann"].size() == 2 && span_of(pl["ann"], 2) == displayed, "ann is the displayed four-element space");
  o.require(pl["size"] == 22, "|P_sigma| = 22");
  o.require(pl["status"] == "non_bilinear", "verdict non_bilinear");
  // ((1,0,0),(0,1,0)) has indices (1, 2)
  o.require(pl["witness"] == Json::array({1, 2}), "closure pair ((1,0,0),(0,1,0)) reported");
  bool member = false;
  for (const auto& e : pl["set"]) member = member || e == Json::array({1, 2});
  o.require(!member, "((1,0,0),(0,1,0)) not in P_sigma");
  return o;
}

Outcome criterion3(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "exhaustive", "--p", "2", "--n", "2"}, "c3_" + jobs + ".json");
  require_run(o, r, 60.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& pl = r.cert["payload"];
  Index total = 0;
  for (const auto& [k, v] : pl["classes"].items()) total += v.get<Index>();
  o.require(r.cert["parameters"]["candidates"] == 65536 && total == 65536, "all 65536 subsets classified");
  o.require(count_of(pl, "classes", "transverse_non_bilinear") == 0, "no transverse non-bilinear subset");
  o.require(count_of(pl, "classes", "transverse_bilinear") == count_of(pl, "tallies", "bilinear"),
            "bilinear subsets are exactly the nonempty transverse ones");
  o.require(pl["failure_count"] == 0 && pl["ok"] == true, "oracle agreement on every subset");
  return o;
}

Outcome criterion4(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "classification"}, "c4_" + jobs + ".json");
  // three classification sweeps and one xi sweep; the whole run under 60 s
  require_run(o, r, 60.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& parts = r.cert["payload"]["parts"];
  o.require(parts.size() == 4, "four sweeps");
  if (parts.size() != 4) return o;
  for (int k = 0; k < 2; ++k) {
    const auto& pl = parts[k]["payload"];
    const std::string tag = "(" + std::to_string(parts[k]["parameters"]["p"].get<int>()) + ",2) ";
    o.require(count_of(pl, "classes", "alternative_3") == 0 && count_of(pl, "classes", "no_alternative") == 0,
              tag + "every transverse set in alternatives 1-2");
    o.require(count_of(pl, "classes", "alternative_1") + count_of(pl, "classes", "alternative_2") > 0, tag + "nonempty classification");
    o.require(pl["failure_count"] == 0, tag + "all bilinear");
  }
  o.require(parts[0]["parameters"]["p"] == 2 && parts[1]["parameters"]["p"] == 3, "sweeps at p = 2, 3");
  const auto& xi = parts[3];
  o.require(xi["parameters"]["name"] == "xi_sweep" && xi["parameters"]["p"] == 5, "xi sweep at p = 5");
  o.require(xi["parameters"]["candidates"] == 720, "720 line bijections");
  o.require(count_of(xi["payload"], "classes", "projective") == 120, "exactly 120 projective");
  o.require(count_of(xi["payload"], "classes", "non_projective") == 600 &&
                count_of(xi["payload"], "tallies", "non_projective_ann_zero_non_bilinear") == 600,
            "every non-projective xi' gives ann = {0} and non_bilinear");
  return o;
}

Outcome criterion5(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "fundamental", "--p", "2", "--n", "3"}, "c5_" + jobs + ".json");
  require_run(o, r, 10.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& pl = r.cert["payload"];
  o.require(r.cert["parameters"]["candidates"] == 5040, "5040 permutations");
  o.require(count_of(pl, "classes", "line_preserving_projective") == 168, "168 line-preserving, all projective");
  o.require(count_of(pl, "classes", "line_preserving_not_projective") == 0 && count_of(pl, "classes", "projective_not_line_preserving") == 0,
            "line-preserving iff projective");
  o.require(count_of(pl, "classes", "neither") == 5040 - 168, "the rest are neither");
  return o;
}

Outcome criterion6(const std::string& jobs, std::string* digest) {
  Outcome o;
  const auto r = run_cli({"--jobs", jobs, "verify", "collineation", "--p", "2"}, "c6_" + jobs + ".json");
  require_run(o, r, 300.0);
  if (!r.cert.is_object()) return o;
  *digest = r.cert["digest"];
  const auto& pl = r.cert["payload"];
  o.require(r.cert["parameters"]["candidates"] == 823543, "all 7^7 maps");
  o.require(count_of(pl, "classes", "violation") == 0 && pl["failure_count"] == 0, "zero violations");
  o.require(count_of(pl, "classes", "constant") + count_of(pl, "classes", "injective") + count_of(pl, "classes", "fails_line_condition") == 823543,
            "each map constant, injective, or outside the line condition");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto r = run_cli({"verify", "counting"}, "c7.json");
  require_run(o, r, 1.0);
  for (Residue p : {2U, 3U}) {
    const auto [b, q] = bijection_vs_projective(p);
    o.require(b == q, "(p+1)! = (p+1)p(p-1) at p = " + std::to_string(p));
  }
  const auto primes = first_primes(15);
  for (std::size_t i = 2; i < 12; ++i) {
    const auto [b, q] = bijection_vs_projective(primes[i]);
    o.require(b > q, "(p+1)! > (p+1)p(p-1) at p = " + std::to_string(primes[i]));
  }
  o.require(inequality_check(13, 2, InequalityMode::ExactFactorial), "(13,2) exact violated");
  o.require(!inequality_check(11, 2, InequalityMode::ExactFactorial), "(11,2) exact not violated");
  for (auto p : primes) {
    const auto n0 = n0_estimate(p, InequalityMode::Stirling);
    o.require(n0 && *n0 <= 11, "n0(" + std::to_string(p) + ", stirling) <= 11");
  }
  if (r.cert.is_object()) {
    o.require(count_of(r.cert["payload"], "classes", "failed") == 0, "every counting record passed");
  }
  return o;
}

// ---------------------------------------------------------------- 8

constexpr int kCases = 10000;

Subspace random_subspace(SeededRng& rng, Residue p, std::size_t n) {
  std::vector<VecP> vs;
  const auto k = rng.below(n + 2);
  for (std::uint64_t i = 0; i < k; ++i) vs.push_back(VecP::decode(rng.below(checked_pow(p, n)), p, n));
  return Subspace::span(p, n, vs);
}

FormSpace random_forms(SeededRng& rng, Residue p, std::size_t n1, std::size_t n2) {
  std::vector<MatP> ms;
  const auto k = rng.below(n1 * n2 + 1);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::vector<Residue> e(n1 * n2);
    for (auto& x : e) x = static_cast<Residue>(rng.below(p));
    ms.emplace_back(p, n1, n2, std::move(e));
  }
  return FormSpace::span(p, n1, n2, ms);
}

PairSet random_subset(SeededRng& rng, Residue p, std::size_t n) {
  PairSet s(p, n, n);
  // density 1/d, d in 1..8, biased toward sparse sets
  const auto d = 1 + rng.below(8);
  for (Index i = 0; i < s.universe(); ++i) {
    if (rng.below(d) == 0) s.insert(s.x_of(i), s.y_of(i));
  }
  return s;
}

// Transverse sets: bilinear zero sets, P_sigma, and fiber maps kept when transverse.
PairSet random_transverse(SeededRng& rng, Residue p, std::size_t n, int kind) {
  if (kind == 0) {
    const auto w1 = random_subspace(rng, p, n), w2 = random_subspace(rng, p, n);
    return orth(random_forms(rng, p, n, n), w1, w2);
  }
  if (kind == 1) return build_P_sigma(random_sigma(p, n, rng.next()));
  const auto points = proj_size(p, n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto f0 = random_subspace(rng, p, n);
    auto inside = [&] {
      std::vector<VecP> vs;
      for (auto k = rng.below(f0.dim() + 1); k > 0; --k) {
        std::vector<Residue> c(f0.dim());
        for (auto& x : c) x = static_cast<Residue>(rng.below(p));
        vs.push_back(f0.combination(c));
      }
      return Subspace::span(p, n, vs);
    };
    std::vector<std::optional<Subspace>> fibers(points);
    for (auto& f : fibers) {
      if (rng.below(2) == 0) f = rng.below(2) == 0 ? f0 : inside();
    }
    const auto s = FiberMap(p, n, n, f0, fibers).to_pairset();
    if (is_transverse(s)) return s;
  }
  return random_transverse(rng, p, n, 0);
}

struct PropertyStats {
  std::map<std::string, Index> cases;
  std::map<std::string, Index> failures;
  Index transverse_probes = 0;
  Index probes = 0;
};

Outcome criterion8(PropertyStats& st) {
  Outcome o;
  const std::vector<std::pair<Residue, std::size_t>> shapes = {{2, 2}, {3, 2}, {2, 3}};
  for (auto [p, n] : shapes) {
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(n) + ") ";
    SeededRng rng(derive_seed(0xacce97, p * 16 + n));
    const auto full = Subspace::full(p, n);
    auto tally = [&](const std::string& prop, bool ok) {
      ++st.cases[tag + prop];
      if (!ok) ++st.failures[tag + prop];
    };
    for (int t = 0; t < kCases; ++t) {
      // Galois identities on the full product
      const auto s = random_subset(rng, p, n);
      const auto a = ann(s, full, full);
      tally("ann.orth.ann = ann", ann(orth(a, full, full), full, full) == a);
      const auto m = random_forms(rng, p, n, n);
      const auto om = orth(m, full, full);
      tally("orth.ann.orth = orth", orth(ann(om, full, full), full, full) == om);

      // closure on the spans of the projections
      if (!s.empty()) {
        const auto c = closure(s);
        tally("closure extensive", s.subset_of(c.set));
        tally("closure idempotent", closure(c.set).set == c.set);
      } else {
        tally("closure extensive", true);
        tally("closure idempotent", true);
      }

      // phi fixes transverse sets
      const auto tr = random_transverse(rng, p, n, t % 3);
      std::string word;
      for (auto k = 1 + rng.below(4); k > 0; --k) word += rng.below(2) ? 'V' : 'H';
      tally("phi fixpoint", phi(tr, "V") == tr && phi(tr, "H") == tr && phi(tr, word) == tr);

      // direct and fiberwise transversality agree, on random sets and on
      // transverse sets with one pair toggled
      auto near = tr;
      const Index i = rng.below(near.universe());
      PairSet one(p, n, n);
      one.insert(near.x_of(i), near.y_of(i));
      if (near.contains(near.x_of(i), near.y_of(i))) {
        PairSet rest(p, n, n);
        for (auto j : near.indices()) {
          if (j != i) rest.insert(near.x_of(j), near.y_of(j));
        }
        near = rest;
      } else {
        near |= one;
      }
      const auto probe = t % 2 ? s : near;
      ++st.probes;
      if (is_transverse(probe)) ++st.transverse_probes;
      tally("direct = fiberwise",
            is_transverse(probe, TransverseMode::Direct) == is_transverse(probe, TransverseMode::Fiberwise) &&
                is_transverse(tr, TransverseMode::Direct) && is_transverse(tr, TransverseMode::Fiberwise));
    }
  }
  for (const auto& [k, c] : st.cases) {
    o.require(c >= kCases, k + ": only " + std::to_string(c) + " cases");
    const auto f = st.failures.count(k) ? st.failures.at(k) : 0;
    o.require(f == 0, k + ": " + std::to_string(f) + " failures");
  }
  return o;
}

// ---------------------------------------------------------------- driver

using Criterion = std::function<Outcome(const std::string&, std::string*)>;

void report(int n, const Outcome& o, double seconds, const std::string& extra, bool& all) {
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  (" << std::fixed << std::setprecision(3) << seconds << " s)"
            << (extra.empty() ? "" : "  " + extra) << "\n";
  std::cout.unsetf(std::ios::floatfield);
  for (const auto& note : o.notes) std::cout << "    " << note << "\n";
  all = all && o.pass;
}

}  // namespace

int main() {
  g_dir = fs::temp_directory_path() / ("bilin_acceptance_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(g_dir);
  bool all = true;
  const std::vector<Criterion> sweeps = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6};
  std::vector<std::string> digests1(sweeps.size()), digests8(sweeps.size());

  try {
    for (std::size_t k = 0; k < sweeps.size(); ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto o = sweeps[k]("1", &digests1[k]);
      report(static_cast<int>(k + 1), o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), "", all);
    }
    {
      const auto t0 = std::chrono::steady_clock::now();
      const auto o = criterion7();
      report(7, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), "", all);
    }
    {
      PropertyStats st;
      const auto t0 = std::chrono::steady_clock::now();
      auto o = criterion8(st);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(secs < 120.0, "took " + std::to_string(secs) + " s, limit 120 s");
      Index total = 0;
      for (const auto& [k, c] : st.cases) total += c;
      report(8, o, secs, std::to_string(st.cases.size()) + " properties, " + std::to_string(total) + " cases, " + std::to_string(st.transverse_probes) + " of " +
                           std::to_string(st.probes) + " transversality probes transverse",
             all);
    }
    {
      Outcome o;
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t k = 0; k < sweeps.size(); ++k) {
        const auto again = sweeps[k]("8", &digests8[k]);
        o.require(again.pass, "criterion " + std::to_string(k + 1) + " failed under --jobs 8");
        o.require(!digests1[k].empty() && digests1[k] == digests8[k],
                  "criterion " + std::to_string(k + 1) + " digest " + digests1[k] + " vs " + digests8[k]);
      }
      report(9, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), "", all);
    }
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << "\n";
    all = false;
  }
  fs::remove_all(g_dir);
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}

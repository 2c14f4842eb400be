// Command-line front end. Exit codes: 0 verified or success, 1 verification
// failed (claim false or certificate invalid), 2 usage or format error.
#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bilin/bilinear.hpp"
#include "bilin/certificate.hpp"
#include "bilin/constructions.hpp"
#include "bilin/counting.hpp"
#include "bilin/explorer.hpp"
#include "bilin/pairsets.hpp"
#include "bilin/projgeom.hpp"

namespace bilin::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t jobs = 1;
  bool override_cap = false;
  std::optional<Residue> p;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_cod;
  std::optional<std::uint64_t> seed;
  std::optional<Index> samples;
  std::string mode;
  std::string set_path;
  std::string out_path;
  std::string cert_path;
  std::string word;
  bool allow_slow = false;
};

/// Collects pass/fail lines for one command.
class Checklist {
 public:
  explicit Checklist(std::ostream& out) : out_(out) {}

  bool expect(bool cond, const std::string& what) {
    out_ << (cond ? "  ok    " : "  FAIL  ") << what << "\n";
    ok_ = ok_ && cond;
    return cond;
  }

  bool ok() const { return ok_; }

 private:
  std::ostream& out_;
  bool ok_ = true;
};

namespace detail {

inline Cap cap_of(const Options& o) { return o.override_cap ? Cap::unlimited() : Cap{}; }

inline SweepOptions sweep_options(const Options& o) {
  SweepOptions s;
  s.jobs = o.jobs;
  s.cap = cap_of(o);
  s.allow_slow = o.allow_slow;
  return s;
}

inline std::uint64_t require_seed(const Options& o, const std::string& what) {
  if (!o.seed) throw UsageError(what + " is randomized and requires --seed");
  return *o.seed;
}

inline std::string pair_text(Residue p, std::size_t n1, std::size_t n2, Index x, Index y) {
  auto vec = [&](Index v, std::size_t n) {
    std::ostringstream s;
    s << "(";
    const auto d = VecP::decode(v, p, n);
    for (std::size_t i = 0; i < n; ++i) s << (i ? "," : "") << d[i];
    s << ")";
    return s.str();
  };
  return "(" + vec(x, n1) + ", " + vec(y, n2) + ")";
}

inline void print_matrix(std::ostream& out, const MatP& m, const std::string& indent) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.at(r, c);
    out << "]\n";
  }
}

inline void print_verdict(std::ostream& out, const PairSet& s, const BilinearVerdict& v) {
  out << "  verdict        " << to_string(v.status) << "\n";
  if (v.status == BilinearStatus::Empty) return;
  out << "  |P|            " << s.size() << "\n";
  out << "  |closure|      " << v.closure_size << "\n";
  out << "  r1, r2, r3     " << v.r1() << ", " << v.r2() << ", " << v.r3() << "\n";
  if (v.witness) out << "  witness        " << pair_text(s.p(), s.n1(), s.n2(), v.witness->first, v.witness->second) << "\n";
  if (v.projection_not_subspace) out << "  projection " << *v.projection_not_subspace << " is not a subspace\n";
  std::size_t k = 0;
  for (const auto& q : v.ann.basis()) {
    out << "  ann[" << k++ << "]\n";
    print_matrix(out, q, "    ");
  }
}

inline void print_sweep(std::ostream& out, const SweepReport& r) {
  out << r.name << "  p=" << r.p << " n1=" << r.n1 << " n2=" << r.n2 << " mode=" << r.mode;
  if (r.seed) out << " seed=" << *r.seed;
  out << " workers=" << r.workers << "\n";
  out << "  candidates     " << r.candidates << "\n";
  for (const auto& [k, v] : r.result.classes) out << "  " << std::left << std::setw(40) << k << std::right << v << "\n";
  for (const auto& [k, v] : r.result.tallies) out << "  " << std::left << std::setw(40) << ("(" + k + ")") << std::right << v << "\n";
  out << "  hits           " << r.result.hit_count << "\n";
  out << "  failures       " << r.result.failure_count << "\n";
  for (const auto& f : r.result.failures) out << "    " << f << "\n";
  out << "  wall time      " << std::fixed << std::setprecision(3) << r.wall_seconds << " s\n";
  out.unsetf(std::ios::floatfield);
}

inline int finish(std::ostream& out, const Options& o, const cert::Json& doc, bool ok) {
  if (!o.cert_path.empty()) cert::write_text(o.cert_path, cert::write_certificate(doc));
  out << "digest: " << doc["digest"].get<std::string>() << "\n";
  out << (ok ? "result: verified" : "result: FAILED") << "\n";
  return ok ? kOk : kFailed;
}

inline Index encode(Residue p, std::vector<Residue> c) { return VecP(p, std::move(c)).encode(); }

}  // namespace detail

// ---------------------------------------------------------------- construct

inline int cmd_construct(const std::string& what, const Options& o, std::ostream& out) {
  if (o.out_path.empty()) throw UsageError("construct requires --out FILE");
  PairSet s;
  if (what == "f3") {
    s = f3_example();
  } else if (what == "sigma-fig2") {
    s = build_P_sigma(sigma_figure2());
  } else if (what == "p-sigma") {
    const auto seed = detail::require_seed(o, "construct p-sigma");
    const Residue p = o.p.value_or(2);
    const std::size_t n = o.n.value_or(3);
    const auto sigma = random_sigma(p, n, seed, detail::cap_of(o));
    s = build_P_sigma(sigma, detail::cap_of(o));
  } else {
    const auto seed = detail::require_seed(o, "construct p-xi");
    const Residue p = o.p.value_or(5);
    const std::size_t n = o.n.value_or(2);
    if (n < 2) throw UsageError("construct p-xi needs --n >= 2");
    std::vector<VecP> wb;
    for (std::size_t i = 2; i < n; ++i) wb.push_back(VecP::unit(p, n, i));
    const auto w = Subspace::span(p, n, wb);
    const auto l = Subspace::span(p, n, std::vector<VecP>{VecP::unit(p, n, 0), VecP::unit(p, n, 1)});
    const auto xi = random_sigma(p, 2, seed);
    out << "  xi' projective " << (recognize_projective(xi).has_value() ? "yes" : "no") << "\n";
    s = build_P_xi(w, l, xi, detail::cap_of(o));
  }
  const auto text = cert::write_set(s);
  cert::write_text(o.out_path, text);
  out << "constructed " << what << ": p=" << s.p() << " n1=" << s.n1() << " n2=" << s.n2() << " |P|=" << s.size() << "\n";
  out << "digest: sha256:" << cert::sha256_hex(text) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- check

inline int cmd_check(const std::string& what, const Options& o, std::ostream& out) {
  if (o.set_path.empty()) throw UsageError("check requires --set FILE");
  const auto s = cert::load_set(o.set_path);
  out << "set " << o.set_path << ": p=" << s.p() << " n1=" << s.n1() << " n2=" << s.n2() << " |P|=" << s.size() << "\n";
  if (what == "transverse") {
    const auto doc = cert::transverse_certificate(s);
    const bool t = doc["payload"]["transverse"].get<bool>();
    out << "  transverse     " << (t ? "yes" : "no") << "\n";
    if (!t) {
      const auto& v = doc["payload"]["violation"];
      out << "  first violation: condition " << v["condition"].get<int>() << ", missing pair "
          << detail::pair_text(s.p(), s.n1(), s.n2(), v["x"].get<Index>(), v["y"].get<Index>()) << "  " << v["detail"].get<std::string>()
          << "\n";
    }
    if (!o.cert_path.empty()) cert::write_text(o.cert_path, cert::write_certificate(doc));
    out << "digest: " << doc["digest"].get<std::string>() << "\n";
    return t ? kOk : kFailed;
  }
  const auto v = is_bilinear(s);
  const auto doc = cert::bilinear_certificate(s, v);
  detail::print_verdict(out, s, v);
  if (what == "closure" && v.status != BilinearStatus::Empty) {
    const auto c = closure(s);
    out << "  closure w1 dim " << c.w1.dim() << ", w2 dim " << c.w2.dim() << "\n";
    if (!o.out_path.empty()) {
      cert::save_set(o.out_path, c.set);
      out << "  closure written to " << o.out_path << "\n";
    }
  }
  if (!o.cert_path.empty()) cert::write_text(o.cert_path, cert::write_certificate(doc));
  out << "digest: " << doc["digest"].get<std::string>() << "\n";
  if (what == "bilinear") return v.status == BilinearStatus::Bilinear ? kOk : kFailed;
  if (what == "closure" && v.status == BilinearStatus::Empty) {
    out << "  the empty set has no closure\n";
    return kFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- phi

inline int cmd_phi(const Options& o, std::ostream& out) {
  if (o.set_path.empty() || o.out_path.empty() || o.word.empty()) throw UsageError("phi requires --set FILE --word WORD --out FILE");
  const auto s = cert::load_set(o.set_path);
  PairSet t;
  try {
    t = phi(s, o.word);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("phi: ") + e.what());
  }
  const auto text = cert::write_set(t);
  cert::write_text(o.out_path, text);
  out << "phi " << o.word << ": |A|=" << s.size() << " -> |T|=" << t.size() << "\n";
  out << "digest: sha256:" << cert::sha256_hex(text) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

inline int verify_f3(const Options& o, std::ostream& out) {
  out << "f3 example over F_3\n";
  Checklist c(out);
  const auto s = f3_example();
  c.expect(s.size() == 29, "|P| = 29");
  c.expect(is_transverse(s, TransverseMode::Direct) && is_transverse(s, TransverseMode::Fiberwise), "transverse in both modes");
  const auto v = is_bilinear(s);
  c.expect(v.ann == FormSpace::span(3, 2, 2, std::vector<MatP>{MatP(3, 2, 2, {1, 0, 0, 2})}), "ann(P) = span{diag(1, 2)}");
  c.expect(v.closure_size == 33, "|closure| = 33");
  const auto w = std::make_pair(detail::encode(3, {1, 1}), detail::encode(3, {1, 1}));
  c.expect(v.witness == w, "witness ((1,1), (1,1))");
  c.expect(v.status == BilinearStatus::NonBilinear, "verdict non_bilinear");
  detail::print_verdict(out, s, v);
  const auto doc = cert::bilinear_certificate(s, v);
  c.expect(cert::replay(doc).ok, "certificate replays");
  return detail::finish(out, o, doc, c.ok());
}

inline int verify_sigma_fig2(const Options& o, std::ostream& out) {
  out << "P_sigma for the tabulated sigma on P(F_2^3)\n";
  Checklist c(out);
  const auto s = build_P_sigma(sigma_figure2());
  c.expect(s.size() == 22, "|P_sigma| = 22");
  c.expect(is_transverse(s, TransverseMode::Direct) && is_transverse(s, TransverseMode::Fiberwise), "transverse in both modes");
  const auto v = is_bilinear(s);
  const std::set<std::vector<Residue>> displayed = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 1, 0, 0, 1, 0, 1, 0}, {0, 0, 1, 0, 0, 0, 1, 1, 0}};
  std::set<std::vector<Residue>> got;
  for (const auto& q : v.ann.elements()) got.emplace(q.entries().begin(), q.entries().end());
  c.expect(v.ann.dim() == 2 && got == displayed, "ann(P_sigma) is the displayed 2-dimensional space of four matrices");
  const Index x = detail::encode(2, {1, 0, 0}), y = detail::encode(2, {0, 1, 0});
  c.expect(orth(v.ann).contains(x, y) && !s.contains(x, y), "closure contains ((1,0,0), (0,1,0)), which is not in P_sigma");
  c.expect(v.status == BilinearStatus::NonBilinear, "verdict non_bilinear");
  detail::print_verdict(out, s, v);
  const auto doc = cert::bilinear_certificate(s, v);
  c.expect(cert::replay(doc).ok, "certificate replays");
  return detail::finish(out, o, doc, c.ok());
}

inline int verify_exhaustive(const Options& o, std::ostream& out) {
  const Residue p = o.p.value_or(2);
  const std::size_t n = o.n.value_or(2);
  const auto r = exhaustive_subset_sweep(p, n, detail::sweep_options(o));
  detail::print_sweep(out, r);
  Checklist c(out);
  c.expect(r.result.class_total() == r.candidates, "every subset scanned and classified");
  c.expect(r.result.count("transverse_non_bilinear") == 0, "every nonempty transverse subset is bilinear");
  c.expect(r.ok(), "is_bilinear agrees with the brute-force oracle; transversality modes agree");
  const auto doc = cert::sweep_certificate(r);
  return detail::finish(out, o, doc, c.ok());
}

inline int verify_classification(const Options& o, std::ostream& out) {
  Checklist c(out);
  std::vector<cert::Json> parts;
  auto classify = [&](Residue p, std::size_t n) {
    const auto r = classify_hyperplane_fibers(p, n, detail::sweep_options(o));
    detail::print_sweep(out, r);
    c.expect(r.ok(), "(" + std::to_string(p) + "," + std::to_string(n) + ") every candidate fits an alternative; alternatives 1-2 bilinear");
    c.expect(r.result.class_total() == r.candidates, "(" + std::to_string(p) + "," + std::to_string(n) + ") counts sum to the fiber-map count");
    if (p <= 3) c.expect(r.result.count("alternative_3") == 0, "(" + std::to_string(p) + "," + std::to_string(n) + ") no set in alternative 3");
    parts.push_back(cert::sweep_certificate(r));
  };
  auto xi = [&](Residue p, std::size_t n) {
    const auto r = xi_sweep(p, n, n, detail::sweep_options(o));
    detail::print_sweep(out, r);
    const Index projective = static_cast<Index>(p + 1) * p * (p - 1);
    c.expect(r.result.count("projective") == projective,
             "(" + std::to_string(p) + "," + std::to_string(n) + ") exactly (p+1)p(p-1) = " + std::to_string(projective) + " projective xi'");
    c.expect(r.result.count("non_projective_ann_zero_non_bilinear") == r.result.count("non_projective"),
             "every non-projective xi' gives ann = {0} and a non-bilinear set");
    c.expect(r.ok(), "no failures");
    parts.push_back(cert::sweep_certificate(r));
  };
  if (o.p || o.n) {
    const Residue p = o.p.value_or(2);
    const std::size_t n = o.n.value_or(2);
    classify(p, n);
    if (p >= 5) xi(p, n);
  } else {
    classify(2, 2);
    classify(3, 2);
    classify(5, 2);
    xi(5, 2);
  }
  return detail::finish(out, o, cert::combined_certificate("classification", parts), c.ok());
}

inline int verify_sigma_search(const Options& o, std::ostream& out) {
  const Residue p = o.p.value_or(2);
  const std::size_t n = o.n.value_or(3);
  const std::string mode = o.mode.empty() ? "exhaustive" : o.mode;
  SweepReport r;
  if (mode == "exhaustive") {
    r = search_sigma(p, n, SigmaMode::Exhaustive, 0, 0, detail::sweep_options(o));
  } else if (mode == "samples") {
    const auto seed = detail::require_seed(o, "verify sigma-search --mode samples");
    if (!o.samples) throw UsageError("verify sigma-search --mode samples requires --samples");
    r = search_sigma(p, n, SigmaMode::Samples, *o.samples, seed, detail::sweep_options(o));
  } else {
    throw UsageError("--mode must be exhaustive or samples");
  }
  detail::print_sweep(out, r);
  Checklist c(out);
  c.expect(r.ok(), "every projective sigma yields a bilinear P_sigma; every P_sigma transverse");
  if (p == 2 && n == 3 && mode == "exhaustive") {
    c.expect(r.result.count("projective") == 168, "168 projective sigma");
    c.expect(r.result.count("tabulated_sigma_non_bilinear") == 1, "the tabulated sigma is among the hits");
  }
  out << "  non-bilinear P_sigma: " << r.result.hit_count << "\n";
  return detail::finish(out, o, cert::sweep_certificate(r), c.ok());
}

inline int verify_collineation(const Options& o, std::ostream& out) {
  const Residue p = o.p.value_or(2);
  const std::size_t n = o.n.value_or(3);
  const std::size_t m = o.n_cod.value_or(n);
  const auto r = verify_collineation_lemma(p, n, m, detail::sweep_options(o));
  detail::print_sweep(out, r);
  Checklist c(out);
  c.expect(r.result.class_total() == r.candidates, "every map enumerated");
  c.expect(r.result.count("violation") == 0 && r.ok(), "every line-condition map is constant or injective");
  return detail::finish(out, o, cert::sweep_certificate(r), c.ok());
}

inline int verify_fundamental(const Options& o, std::ostream& out) {
  const Residue p = o.p.value_or(2);
  const std::size_t n = o.n.value_or(3);
  const auto r = fundamental_sweep(p, n, detail::sweep_options(o));
  detail::print_sweep(out, r);
  Checklist c(out);
  c.expect(r.ok(), "line-preserving and projective agree permutation by permutation");
  if (p == 2 && n == 3) {
    c.expect(r.candidates == 5040, "5040 permutations");
    c.expect(r.result.count("line_preserving_projective") == 168, "168 line-preserving, each projective");
  }
  return detail::finish(out, o, cert::sweep_certificate(r), c.ok());
}

inline int verify_counting(const Options& o, std::ostream& out) {
  SweepReport r{"counting", 0, 0, 0, "checks", std::nullopt, 1, 0, {}, 0.0};
  cert::Json records = cert::Json::array();
  Checklist c(out);
  auto record = [&](const std::string& check, const std::string& value, bool pass) {
    c.expect(pass, check + ": " + value);
    records.push_back(cert::Json{{"check", check}, {"value", value}, {"pass", pass}});
    ++r.candidates;
    r.result.add_class(pass ? "passed" : "failed");
    if (!pass) r.result.fail(check);
  };

  const auto primes = first_primes(15);
  out << "bijections vs projective maps of P(F_p^2)\n";
  for (std::size_t i = 0; i < 12; ++i) {
    const auto [b, pr] = bijection_vs_projective(primes[i]);
    const bool pass = i < 2 ? b == pr : b > pr;
    record("p=" + std::to_string(primes[i]) + " (p+1)! " + (i < 2 ? "=" : ">") + " (p+1)p(p-1)", b.str() + " vs " + pr.str(), pass);
  }

  out << "factorial against the subspace-count bound\n";
  const auto s13 = inequality_sides(13, 2, InequalityMode::ExactFactorial);
  record("(13,2) exact factorial violated", "ln 169! ... ln(13!) = " + std::to_string(s13.lhs) + " > " + std::to_string(s13.rhs), s13.violated);
  const auto s11 = inequality_sides(11, 2, InequalityMode::ExactFactorial);
  record("(11,2) exact factorial not violated", "ln(11!) = " + std::to_string(s11.lhs) + " < " + std::to_string(s11.rhs), !s11.violated);
  const auto t13 = inequality_sides(13, 2, InequalityMode::Stirling);
  out << "  note  the Stirling lower bound alone does not settle (13,2): " << t13.lhs << " < " << t13.rhs
      << "; the exact factorial does\n";

  out << "n0 per prime (smallest n with the inequality violated)\n";
  out << "  " << std::setw(6) << "p" << std::setw(10) << "stirling" << std::setw(10) << "exact" << "\n";
  for (auto p : primes) {
    const auto ns = n0_estimate(p, InequalityMode::Stirling), ne = n0_estimate(p, InequalityMode::ExactFactorial);
    out << "  " << std::setw(6) << p << std::setw(10) << (ns ? std::to_string(*ns) : "> 64") << std::setw(10)
        << (ne ? std::to_string(*ne) : "> 64") << "\n";
    record("p=" + std::to_string(p) + " n0(stirling) <= 11", ns ? std::to_string(*ns) : "> 64", ns && *ns <= 11);
    record("p=" + std::to_string(p) + " n0(exact) <= n0(stirling)", ne ? std::to_string(*ne) : "> 64", ns && ne && *ne <= *ns);
  }
  record("(2,11) stirling violated and (2,10) not", "boundary", inequality_check(2, 11, InequalityMode::Stirling) && !inequality_check(2, 10, InequalityMode::Stirling));

  out << "subspace totals within the bound\n";
  for (auto [p, m] : {std::pair<Residue, std::size_t>{2, 1}, {2, 4}, {3, 4}, {2, 9}}) {
    const auto sc = subspace_counts(p, m);
    record("p=" + std::to_string(p) + " m=" + std::to_string(m) + " subspaces <= bound", sc.exact_total.str(), sc.within_bound);
  }
  return detail::finish(out, o, cert::sweep_certificate(r, records), c.ok());
}

// ---------------------------------------------------------------- replay

inline int cmd_replay(const Options& o, std::ostream& out) {
  if (o.cert_path.empty()) throw UsageError("replay requires --cert FILE");
  const auto doc = cert::parse_json(cert::read_text(o.cert_path), o.cert_path);
  const auto r = cert::replay(doc);
  out << "kind: " << doc["kind"].get<std::string>() << "\n";
  out << (r.ok ? "valid: " : "INVALID: ") << r.message << "\n";
  out << "digest: " << cert::digest_of(doc) << "\n";
  return r.ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- entry

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transverse and bilinear subsets of F_p^n1 x F_p^n2"};
  app.name("bilin");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  o.jobs = default_jobs();
  app.add_option("--jobs", o.jobs, std::string("Worker threads for sweeps (default: $") + kJobsEnv + " or hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--override-cap", o.override_cap, "Lift the 2^26 enumeration cap");

  auto add_pn = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Prime");
    sub->add_option("--n", o.n, "Dimension");
  };

  std::string what;
  auto* construct = app.add_subcommand("construct", "Build a set and write it as a set file");
  construct->add_option("what", what)->required()->check(CLI::IsMember({"f3", "sigma-fig2", "p-sigma", "p-xi"}));
  add_pn(construct);
  construct->add_option("--seed", o.seed, "Seed (required for p-sigma and p-xi)");
  construct->add_option("--out", o.out_path, "Output set file");

  auto* check = app.add_subcommand("check", "Check a property of a set file");
  check->add_option("what", what)->required()->check(CLI::IsMember({"transverse", "bilinear", "ann", "closure"}));
  check->add_option("--set", o.set_path, "Input set file");
  check->add_option("--cert", o.cert_path, "Certificate output");
  check->add_option("--out", o.out_path, "Closure output (check closure)");

  auto* phi_cmd = app.add_subcommand("phi", "Apply a word in phi_V, phi_H");
  phi_cmd->add_option("--set", o.set_path, "Input set file");
  phi_cmd->add_option("--word", o.word, "Word over {V, H}, applied right to left");
  phi_cmd->add_option("--out", o.out_path, "Output set file");

  auto* verify = app.add_subcommand("verify", "Reproduce a computation and emit a certificate");
  verify->add_option("what", what)
      ->required()
      ->check(CLI::IsMember({"f3", "sigma-fig2", "exhaustive", "classification", "sigma-search", "collineation", "fundamental", "counting"}));
  add_pn(verify);
  verify->add_option("--n-cod", o.n_cod, "Codomain dimension (collineation)");
  verify->add_option("--mode", o.mode, "exhaustive | samples (sigma-search)");
  verify->add_option("--samples", o.samples, "Sample count (sigma-search --mode samples)");
  verify->add_option("--seed", o.seed, "Seed (required for sampling)");
  verify->add_option("--cert", o.cert_path, "Certificate output");
  verify->add_flag("--allow-slow", o.allow_slow, "Permit classification sweeps above two million fiber maps");

  auto* replay_cmd = app.add_subcommand("replay", "Independently re-check a certificate");
  replay_cmd->add_option("--cert", o.cert_path, "Certificate file");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (o.p && !is_prime(*o.p)) throw UsageError("--p must be prime");
    if (*construct) return cmd_construct(what, o, out);
    if (*check) return cmd_check(what, o, out);
    if (*phi_cmd) return cmd_phi(o, out);
    if (*replay_cmd) return cmd_replay(o, out);
    if (what == "f3") return verify_f3(o, out);
    if (what == "sigma-fig2") return verify_sigma_fig2(o, out);
    if (what == "exhaustive") return verify_exhaustive(o, out);
    if (what == "classification") return verify_classification(o, out);
    if (what == "sigma-search") return verify_sigma_search(o, out);
    if (what == "collineation") return verify_collineation(o, out);
    if (what == "fundamental") return verify_fundamental(o, out);
    return verify_counting(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cert::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace bilin::cli

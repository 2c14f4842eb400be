// Set files, certificates, and the replay checker.
//
// Every document is a JSON object with sorted keys, dumped without
// whitespace. A certificate's digest is "sha256:" followed by the hex SHA-256
// of that canonical dump with the "digest" member removed. Replay re-derives
// every claim from the serialized data with its own small mod-p routines and
// does not call the library's linear algebra.
#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "bilin/bilinear.hpp"
#include "bilin/explorer.hpp"
#include "bilin/pairsets.hpp"

namespace bilin::cert {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr std::size_t kEmbeddedHits = 4;

/// Malformed input: bad JSON, missing or ill-typed fields, out-of-range values.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string canonical(const Json& j) { return j.dump(); }

inline std::string digest_of(const Json& doc) {
  Json body = doc;
  body.erase("digest");
  return "sha256:" + sha256_hex(canonical(body));
}

inline Json seal(Json doc) {
  doc["digest"] = digest_of(doc);
  return doc;
}

inline Json make_certificate(const std::string& kind, Json parameters, Json payload) {
  Json doc = Json::object();
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["parameters"] = std::move(parameters);
  doc["payload"] = std::move(payload);
  return seal(std::move(doc));
}

// ---------------------------------------------------------------- file io

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << text;
}

/// Parses JSON, reporting failures as "line L, column C: ...".
inline Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError(what + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw FormatError("field '" + path + "': expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError("field '" + path + (path.empty() ? "" : ".") + key + "': missing");
  return *it;
}

inline std::uint64_t uint_field(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw FormatError("field '" + path + "': expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::uint64_t get_uint(const Json& j, const std::string& key, const std::string& path) {
  return uint_field(field(j, key, path), path.empty() ? key : path + "." + key);
}

inline void require_version(const Json& j, const std::string& what) {
  if (get_uint(j, "format_version", "") != static_cast<std::uint64_t>(kFormatVersion)) {
    throw FormatError(what + ": field 'format_version': unsupported version");
  }
}

}  // namespace detail

inline Json pairs_json(const PairSet& s) {
  std::vector<std::pair<Index, Index>> v;
  s.bits().for_each([&](Index i) { v.emplace_back(s.x_of(i), s.y_of(i)); });
  std::sort(v.begin(), v.end());
  Json out = Json::array();
  for (auto [x, y] : v) out.push_back(Json::array({x, y}));
  return out;
}

inline Json set_json(const PairSet& s) {
  return Json{{"format_version", kFormatVersion}, {"p", s.p()}, {"n1", s.n1()}, {"n2", s.n2()}, {"pairs", pairs_json(s)}};
}

inline std::string write_set(const PairSet& s) { return canonical(set_json(s)) + "\n"; }

/// Reads pairs under shape (p, n1, n2), requiring strictly ascending (x, y).
inline PairSet pairs_from_json(const Json& pairs, Residue p, std::size_t n1, std::size_t n2, const std::string& path) {
  if (!pairs.is_array()) throw FormatError("field '" + path + "': expected an array");
  PairSet s(p, n1, n2);
  std::optional<std::pair<Index, Index>> prev;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto here = path + "[" + std::to_string(k) + "]";
    const auto& e = pairs[k];
    if (!e.is_array() || e.size() != 2) throw FormatError("field '" + here + "': expected [x_index, y_index]");
    const auto x = detail::uint_field(e[0], here + "[0]"), y = detail::uint_field(e[1], here + "[1]");
    if (x >= s.size1()) throw FormatError("field '" + here + "[0]': index " + std::to_string(x) + " >= p^n1 = " + std::to_string(s.size1()));
    if (y >= s.size2()) throw FormatError("field '" + here + "[1]': index " + std::to_string(y) + " >= p^n2 = " + std::to_string(s.size2()));
    const std::pair<Index, Index> xy{x, y};
    if (prev && !(*prev < xy)) throw FormatError("field '" + here + "': pairs must be strictly ascending by (x_index, y_index)");
    prev = xy;
    s.insert(x, y);
  }
  return s;
}

inline std::tuple<Residue, std::size_t, std::size_t> shape_from_json(const Json& j, const std::string& path) {
  const auto p = detail::get_uint(j, "p", path);
  const auto n1 = detail::get_uint(j, "n1", path), n2 = detail::get_uint(j, "n2", path);
  if (p > (1U << 16) || !is_prime(p)) throw FormatError("field '" + (path.empty() ? "" : path + ".") + "p': not a supported prime");
  if (n1 > 62 || n2 > 62) throw FormatError("field '" + (path.empty() ? "" : path + ".") + "n1/n2': dimension too large");
  try {
    checked_pow(p, n1 + n2);
  } catch (const std::overflow_error&) {
    throw FormatError("field '" + (path.empty() ? "" : path + ".") + "n1/n2': ambient too large");
  }
  return {static_cast<Residue>(p), n1, n2};
}

inline PairSet read_set(std::string_view text, const std::string& what = "set file") {
  const Json j = parse_json(text, what);
  try {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    detail::require_version(j, what);
    const auto [p, n1, n2] = shape_from_json(j, "");
    for (const auto& [k, v] : j.items()) {
      if (k != "format_version" && k != "p" && k != "n1" && k != "n2" && k != "pairs") throw FormatError("field '" + k + "': unknown field");
    }
    return pairs_from_json(detail::field(j, "pairs", ""), p, n1, n2, "pairs");
  } catch (const FormatError& e) {
    throw FormatError(what + ": " + e.what());
  }
}

inline PairSet load_set(const std::string& path) { return read_set(read_text(path), path); }
inline void save_set(const std::string& path, const PairSet& s) { write_text(path, write_set(s)); }

// ---------------------------------------------------------------- producers

inline Json rows_json(const Subspace& w) {
  Json out = Json::array();
  for (const auto& b : w.basis()) out.push_back(Json(std::vector<Residue>(b.coords().begin(), b.coords().end())));
  return out;
}

inline Json matrix_json(const MatP& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json shape_json(const PairSet& s) { return Json{{"p", s.p()}, {"n1", s.n1()}, {"n2", s.n2()}}; }

inline Json transverse_certificate(const PairSet& s) {
  Json payload{{"set", pairs_json(s)}, {"size", s.size()}};
  const auto v = fiberwise_violation(s);
  const bool direct = is_transverse(s, TransverseMode::Direct);
  if (direct != !v.has_value()) throw std::logic_error("transverse_certificate: transversality modes disagree");
  payload["transverse"] = direct;
  if (v) {
    payload["violation"] = Json{{"condition", v->condition}, {"x", v->x}, {"y", v->y}, {"detail", v->detail}};
  } else {
    payload["violation"] = nullptr;
  }
  return make_certificate("transverse_check", shape_json(s), std::move(payload));
}

inline Json verdict_payload(const PairSet& s, const BilinearVerdict& v) {
  Json payload{{"set", pairs_json(s)}, {"size", s.size()}, {"status", to_string(v.status)}};
  if (v.status == BilinearStatus::Empty) {
    payload["empty"] = true;
    return payload;
  }
  payload["empty"] = false;
  payload["w1"] = rows_json(v.w1);
  payload["w2"] = rows_json(v.w2);
  Json ann = Json::array();
  for (const auto& q : v.ann.basis()) ann.push_back(matrix_json(q));
  payload["ann"] = std::move(ann);
  payload["r1"] = v.r1();
  payload["r2"] = v.r2();
  payload["r3"] = v.r3();
  payload["closure_size"] = v.closure_size;
  payload["witness"] = v.witness ? Json::array({v.witness->first, v.witness->second}) : Json(nullptr);
  payload["projection_not_subspace"] = v.projection_not_subspace ? Json(*v.projection_not_subspace) : Json(nullptr);
  return payload;
}

/// An empty set is never bilinear (bilinear sets contain (0, 0)), so its
/// certificate has kind non_bilinear with status "empty".
inline Json bilinear_certificate(const PairSet& s, const BilinearVerdict& v) {
  const char* kind = v.status == BilinearStatus::Bilinear ? "bilinear" : "non_bilinear";
  return make_certificate(kind, shape_json(s), verdict_payload(s, v));
}

inline Json bilinear_certificate(const PairSet& s) { return bilinear_certificate(s, is_bilinear(s)); }

inline Json sweep_parameters(const SweepReport& r) {
  return Json{{"name", r.name}, {"p", r.p}, {"n1", r.n1}, {"n2", r.n2}, {"mode", r.mode},
              {"seed", r.seed ? Json(*r.seed) : Json(nullptr)}, {"candidates", r.candidates}};
}

/// Worker count and wall time are run metadata and stay out of the document.
inline Json sweep_certificate(const SweepReport& r, Json records = Json::array()) {
  Json classes = Json::object(), tallies = Json::object();
  for (const auto& [k, v] : r.result.classes) classes[k] = v;
  for (const auto& [k, v] : r.result.tallies) tallies[k] = v;
  Json hits = Json::array(), embedded = Json::array();
  for (std::size_t i = 0; i < r.result.hits.size(); ++i) {
    const auto& h = r.result.hits[i];
    const auto c = bilinear_certificate(h.set, h.verdict);
    hits.push_back(Json{{"rank", h.rank}, {"label", h.label}, {"digest", c["digest"]}});
    if (i < kEmbeddedHits) embedded.push_back(c);
  }
  Json payload{{"classes", classes},
               {"tallies", tallies},
               {"hit_count", r.result.hit_count},
               {"hits", hits},
               {"hit_certificates", embedded},
               {"failure_count", r.result.failure_count},
               {"failures", r.result.failures},
               {"records", std::move(records)},
               {"parts", Json::array()},
               {"ok", r.ok()}};
  return make_certificate("sweep_report", sweep_parameters(r), std::move(payload));
}

/// Several sweep certificates under one name; ok when every part is.
inline Json combined_certificate(const std::string& name, const std::vector<Json>& parts) {
  Index candidates = 0, failures = 0;
  bool ok = true;
  for (const auto& c : parts) {
    candidates += c["parameters"]["candidates"].get<Index>();
    failures += c["payload"]["failure_count"].get<Index>();
    ok = ok && c["payload"]["ok"].get<bool>();
  }
  Json params{{"name", name}, {"mode", "combined"}, {"candidates", candidates}, {"seed", nullptr}};
  Json payload{{"classes", Json::object()}, {"tallies", Json::object()}, {"hit_count", 0},         {"hits", Json::array()},
               {"hit_certificates", Json::array()}, {"failure_count", failures}, {"failures", Json::array()},
               {"records", Json::array()},          {"parts", parts},            {"ok", ok}};
  return make_certificate("sweep_report", std::move(params), std::move(payload));
}

// ---------------------------------------------------------------- replay

struct ReplayResult {
  bool ok = false;
  std::string message;
};

namespace replay_detail {

using Vec = std::vector<std::uint64_t>;

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline Vec digits(std::uint64_t v, std::uint64_t p, std::size_t n) {
  Vec d(n);
  for (auto& x : d) {
    x = v % p;
    v /= p;
  }
  return d;
}

inline std::uint64_t undigits(const Vec& d, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

inline std::size_t rank(std::vector<Vec> rows, std::uint64_t p) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const auto inv = pow_mod(rows[r][c], p - 2, p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const auto k = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = (rows[i][j] + (p - k) * rows[r][j]) % p;
    }
    ++r;
  }
  return r;
}

/// Every combination of the rows, as encoded indices.
inline std::vector<std::uint64_t> span_elements(const std::vector<Vec>& rows, std::uint64_t p, std::size_t n) {
  std::vector<std::uint64_t> out;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Vec v(n, 0);
    std::uint64_t code = c;
    for (const auto& r : rows) {
      const auto k = code % p;
      code /= p;
      for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + k * r[j]) % p;
    }
    out.push_back(undigits(v, p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t form_value(const std::vector<Vec>& q, const Vec& x, const Vec& y, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) acc = (acc + x[i] * q[i][j] % p * y[j]) % p;
  }
  return acc;
}

inline std::vector<Vec> read_rows(const Json& j, std::size_t width, std::uint64_t p, const std::string& path) {
  if (!j.is_array()) throw FormatError("field '" + path + "': expected an array of rows");
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto here = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != width) throw FormatError("field '" + here + "': expected " + std::to_string(width) + " entries");
    Vec v;
    for (std::size_t c = 0; c < width; ++c) {
      const auto e = detail::uint_field(j[r][c], here + "[" + std::to_string(c) + "]");
      if (e >= p) throw FormatError("field '" + here + "[" + std::to_string(c) + "]': entry not reduced mod p");
      v.push_back(e);
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

struct SetData {
  std::uint64_t p = 2;
  std::size_t n1 = 0, n2 = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::set<std::pair<std::uint64_t, std::uint64_t>> lookup;
};

inline SetData read_set_data(const Json& params, const Json& payload) {
  SetData d;
  const auto [p, n1, n2] = shape_from_json(params, "parameters");
  d.p = p;
  d.n1 = n1;
  d.n2 = n2;
  const auto s = pairs_from_json(detail::field(payload, "set", "payload"), p, n1, n2, "payload.set");
  for (const auto& e : detail::field(payload, "set", "payload")) {
    d.pairs.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>());
  }
  d.lookup.insert(d.pairs.begin(), d.pairs.end());
  if (detail::get_uint(payload, "size", "payload") != d.pairs.size()) throw FormatError("field 'payload.size': does not match the set");
  return d;
}

/// A + A = A in both directions, from the definition.
inline std::optional<std::string> transverse_failure(const SetData& d) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_x, by_y;
  for (auto [x, y] : d.pairs) {
    by_x[x].push_back(y);
    by_y[y].push_back(x);
  }
  auto add = [&](std::uint64_t a, std::uint64_t b, std::size_t n) {
    auto da = digits(a, d.p, n), db = digits(b, d.p, n);
    for (std::size_t i = 0; i < n; ++i) da[i] = (da[i] + db[i]) % d.p;
    return undigits(da, d.p);
  };
  for (const auto& [x, ys] : by_x) {
    for (auto a : ys) {
      for (auto b : ys) {
        if (!d.lookup.count({x, add(a, b, d.n2)})) return "vertical sum leaves the set at x = " + std::to_string(x);
      }
    }
  }
  for (const auto& [y, xs] : by_y) {
    for (auto a : xs) {
      for (auto b : xs) {
        if (!d.lookup.count({add(a, b, d.n1), y})) return "horizontal sum leaves the set at y = " + std::to_string(y);
      }
    }
  }
  return std::nullopt;
}

inline ReplayResult fail(std::string m) { return {false, std::move(m)}; }

inline ReplayResult replay_transverse(const Json& params, const Json& payload) {
  const auto d = read_set_data(params, payload);
  const auto& claim = detail::field(payload, "transverse", "payload");
  if (!claim.is_boolean()) throw FormatError("field 'payload.transverse': expected a boolean");
  const auto failure = transverse_failure(d);
  if (claim.get<bool>() != !failure.has_value()) {
    return fail(std::string("transversality claim is false") + (failure ? ": " + *failure : ""));
  }
  if (failure) {
    const auto& v = detail::field(payload, "violation", "payload");
    if (!v.is_object()) return fail("non-transverse claim without a violation");
    const auto x = detail::get_uint(v, "x", "payload.violation"), y = detail::get_uint(v, "y", "payload.violation");
    if (d.lookup.count({x, y})) return fail("violation pair is a member of the set");
    return {true, "not transverse: " + *failure};
  }
  return {true, "transverse"};
}

inline ReplayResult replay_verdict(const std::string& kind, const Json& params, const Json& payload) {
  const auto d = read_set_data(params, payload);
  const auto& status_j = detail::field(payload, "status", "payload");
  if (!status_j.is_string()) throw FormatError("field 'payload.status': expected a string");
  const auto status = status_j.get<std::string>();
  if (status != "bilinear" && status != "non_bilinear" && status != "empty") throw FormatError("field 'payload.status': unknown verdict");
  if ((kind == "bilinear") != (status == "bilinear")) return fail("kind and status disagree");
  if (status == "empty") {
    if (!d.pairs.empty()) return fail("status empty for a nonempty set");
    return {true, "empty set: not bilinear"};
  }
  if (d.pairs.empty()) return fail("nonempty verdict for the empty set");

  const auto p = d.p;
  const auto w1 = read_rows(detail::field(payload, "w1", "payload"), d.n1, p, "payload.w1");
  const auto w2 = read_rows(detail::field(payload, "w2", "payload"), d.n2, p, "payload.w2");
  if (rank(w1, p) != w1.size()) return fail("w1 rows are dependent");
  if (rank(w2, p) != w2.size()) return fail("w2 rows are dependent");

  // span(pi_k) == span(w_k)
  std::vector<Vec> xs, ys;
  {
    std::set<std::uint64_t> sx, sy;
    for (auto [x, y] : d.pairs) {
      sx.insert(x);
      sy.insert(y);
    }
    for (auto x : sx) xs.push_back(digits(x, p, d.n1));
    for (auto y : sy) ys.push_back(digits(y, p, d.n2));
    auto same_span = [&](const std::vector<Vec>& pts, const std::vector<Vec>& basis) {
      auto both = basis;
      both.insert(both.end(), pts.begin(), pts.end());
      const auto r = rank(both, p);
      return r == basis.size() && r == rank(pts, p);
    };
    if (!same_span(xs, w1)) return fail("w1 is not the span of the first projection");
    if (!same_span(ys, w2)) return fail("w2 is not the span of the second projection");
    const auto& pns = detail::field(payload, "projection_not_subspace", "payload");
    if (!pns.is_null()) {
      const auto k = detail::uint_field(pns, "payload.projection_not_subspace");
      const auto& pts = k == 1 ? sx : sy;
      std::uint64_t span_size = 1;
      for (std::size_t i = 0; i < (k == 1 ? w1.size() : w2.size()); ++i) span_size *= p;
      if ((k != 1 && k != 2) || pts.size() == span_size) return fail("projection flagged as non-subspace is a subspace");
    }
  }

  const auto& ann_j = detail::field(payload, "ann", "payload");
  if (!ann_j.is_array()) throw FormatError("field 'payload.ann': expected an array of matrices");
  std::vector<std::vector<Vec>> ann;
  for (std::size_t k = 0; k < ann_j.size(); ++k) ann.push_back(read_rows(ann_j[k], d.n2, p, "payload.ann[" + std::to_string(k) + "]"));
  for (std::size_t k = 0; k < ann.size(); ++k) {
    if (ann[k].size() != d.n1) throw FormatError("field 'payload.ann[" + std::to_string(k) + "]': expected n1 rows");
  }

  if (detail::get_uint(payload, "r1", "payload") != d.n1 - w1.size() || detail::get_uint(payload, "r2", "payload") != d.n2 - w2.size() ||
      detail::get_uint(payload, "r3", "payload") != ann.size()) {
    return fail("r1, r2, r3 do not match the bases");
  }

  // every ann form vanishes on P
  for (std::size_t k = 0; k < ann.size(); ++k) {
    for (auto [x, y] : d.pairs) {
      if (form_value(ann[k], digits(x, p, d.n1), digits(y, p, d.n2), p) != 0) {
        return fail("ann[" + std::to_string(k) + "] does not vanish at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  // independent on w1 x w2, and as many as the annihilator dimension
  {
    std::vector<Vec> restricted;
    for (const auto& q : ann) {
      Vec c;
      for (const auto& a : w1) {
        for (const auto& b : w2) c.push_back(form_value(q, a, b, p));
      }
      restricted.push_back(std::move(c));
    }
    if (!restricted.empty() && rank(restricted, p) != restricted.size()) return fail("ann forms are dependent on w1 x w2");
    std::vector<Vec> tensors;
    for (auto [x, y] : d.pairs) {
      const auto xv = digits(x, p, d.n1), yv = digits(y, p, d.n2);
      Vec t;
      for (auto a : xv) {
        for (auto b : yv) t.push_back(a * b % p);
      }
      tensors.push_back(std::move(t));
    }
    const auto expected = w1.size() * w2.size() - rank(tensors, p);
    if (ann.size() != expected) return fail("ann has dimension " + std::to_string(ann.size()) + ", expected " + std::to_string(expected));
  }

  // closure = common zeros of ann on span(w1) x span(w2)
  std::set<std::pair<std::uint64_t, std::uint64_t>> closure;
  for (auto x : span_elements(w1, p, d.n1)) {
    const auto xv = digits(x, p, d.n1);
    for (auto y : span_elements(w2, p, d.n2)) {
      const auto yv = digits(y, p, d.n2);
      if (std::all_of(ann.begin(), ann.end(), [&](const auto& q) { return form_value(q, xv, yv, p) == 0; })) closure.insert({x, y});
    }
  }
  if (detail::get_uint(payload, "closure_size", "payload") != closure.size()) return fail("closure_size does not match");

  if (status == "bilinear") {
    if (closure != d.lookup) return fail("set differs from the zero set of its annihilator");
    return {true, "bilinear: set equals the zero set of " + std::to_string(ann.size()) + " forms on w1 x w2"};
  }
  const auto& w = detail::field(payload, "witness", "payload");
  if (!w.is_array() || w.size() != 2) return fail("non-bilinear verdict without a witness pair");
  const std::pair<std::uint64_t, std::uint64_t> wp{detail::uint_field(w[0], "payload.witness[0]"), detail::uint_field(w[1], "payload.witness[1]")};
  if (d.lookup.count(wp)) return fail("witness is a member of the set");
  if (!closure.count(wp)) return fail("witness is not annihilated by every form on w1 x w2");
  return {true, "non-bilinear: witness (" + std::to_string(wp.first) + ", " + std::to_string(wp.second) + ") lies in the closure"};
}

}  // namespace replay_detail

inline ReplayResult replay(const Json& doc);

namespace replay_detail {

inline ReplayResult replay_sweep(const Json& params, const Json& payload) {
  const auto candidates = detail::get_uint(params, "candidates", "parameters");
  const auto& mode = detail::field(params, "mode", "parameters");
  if (!mode.is_string()) throw FormatError("field 'parameters.mode': expected a string");
  const auto& classes = detail::field(payload, "classes", "payload");
  if (!classes.is_object()) throw FormatError("field 'payload.classes': expected an object");
  std::uint64_t total = 0;
  for (const auto& [k, v] : classes.items()) total += detail::uint_field(v, "payload.classes." + k);
  const bool combined = mode.get<std::string>() == "combined";
  if (!combined && total != candidates) return fail("class counts do not sum to the candidate count");
  const auto& parts = detail::field(payload, "parts", "payload");
  if (!parts.is_array()) throw FormatError("field 'payload.parts': expected an array");
  std::uint64_t part_candidates = 0, part_failures = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto sub = replay(parts[i]);
    if (!sub.ok) return fail("part " + std::to_string(i) + ": " + sub.message);
    part_candidates += detail::get_uint(detail::field(parts[i], "parameters", ""), "candidates", "parameters");
    part_failures += detail::get_uint(detail::field(parts[i], "payload", ""), "failure_count", "payload");
  }
  if (combined && (part_candidates != candidates || part_failures != detail::get_uint(payload, "failure_count", "payload"))) {
    return fail("combined totals do not match the parts");
  }

  const auto& hits = detail::field(payload, "hits", "payload");
  const auto& embedded = detail::field(payload, "hit_certificates", "payload");
  if (!hits.is_array() || !embedded.is_array()) throw FormatError("field 'payload.hits': expected arrays");
  if (embedded.size() > hits.size()) return fail("more embedded certificates than hits");
  if (detail::get_uint(payload, "hit_count", "payload") < hits.size()) return fail("hit_count below the listed hits");
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    const auto sub = replay(embedded[i]);
    if (!sub.ok) return fail("embedded hit certificate " + std::to_string(i) + ": " + sub.message);
    if (embedded[i]["digest"] != detail::field(hits[i], "digest", "payload.hits[" + std::to_string(i) + "]")) {
      return fail("embedded hit certificate " + std::to_string(i) + " does not match its listed digest");
    }
  }
  const auto failures = detail::get_uint(payload, "failure_count", "payload");
  const auto& ok = detail::field(payload, "ok", "payload");
  if (!ok.is_boolean()) throw FormatError("field 'payload.ok': expected a boolean");
  if (ok.get<bool>() != (failures == 0)) return fail("ok flag disagrees with failure_count");
  if (!ok.get<bool>()) return fail("sweep recorded " + std::to_string(failures) + " failures");
  if (combined) return {true, "combined report consistent: " + std::to_string(parts.size()) + " parts replayed"};
  return {true, "sweep report consistent: " + std::to_string(total) + " candidates classified, " + std::to_string(embedded.size()) +
                    " embedded hit certificates replayed"};
}

}  // namespace replay_detail

/// Structural problems throw FormatError; a false or tampered claim returns ok = false.
inline ReplayResult replay(const Json& doc) {
  if (!doc.is_object()) throw FormatError("certificate: expected a JSON object");
  detail::require_version(doc, "certificate");
  const auto& kind_j = detail::field(doc, "kind", "");
  if (!kind_j.is_string()) throw FormatError("field 'kind': expected a string");
  const auto kind = kind_j.get<std::string>();
  const auto& digest = detail::field(doc, "digest", "");
  if (!digest.is_string()) throw FormatError("field 'digest': expected a string");
  if (digest.get<std::string>() != digest_of(doc)) return replay_detail::fail("digest mismatch");
  const auto& params = detail::field(doc, "parameters", "");
  const auto& payload = detail::field(doc, "payload", "");
  if (kind == "transverse_check") return replay_detail::replay_transverse(params, payload);
  if (kind == "bilinear" || kind == "non_bilinear") return replay_detail::replay_verdict(kind, params, payload);
  if (kind == "sweep_report") return replay_detail::replay_sweep(params, payload);
  throw FormatError("field 'kind': unknown certificate kind '" + kind + "'");
}

inline std::string write_certificate(const Json& doc) { return canonical(doc) + "\n"; }

}  // namespace bilin::cert

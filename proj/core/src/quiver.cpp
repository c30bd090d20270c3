#include "friezekit/quiver.hpp"

#include <cstdlib>
#include <numeric>

#include "friezekit/errors.hpp"
#include "json.hpp"

namespace friezekit {

namespace {

using json = nlohmann::json;

Quiver named_quiver(FamilySpec spec, const std::string& names, std::vector<int> delta,
                    const std::vector<std::pair<char, char>>& arrows) {
  Quiver q;
  q.family = spec;
  q.matrix = ExchangeMatrix(static_cast<int>(names.size()));
  for (char c : names) q.labels.emplace_back(1, c);
  q.delta = std::move(delta);
  for (auto [from, to] : arrows)
    q.matrix.add_arrows(static_cast<int>(names.find(from)), static_cast<int>(names.find(to)));
  return q;
}

// Vertices X^1..X^{N+1} stored at 0..N. Sinks: 3, odd chain vertices, and
// N, N+1 exactly when N-1 is a source.
Quiver d_quiver(int N) {
  Quiver q;
  q.family = FamilySpec::d(N);
  q.matrix = ExchangeMatrix(N + 1);
  for (int k = 1; k <= N + 1; ++k) q.labels.push_back("X" + std::to_string(k));
  q.delta.assign(static_cast<std::size_t>(N + 1), 2);
  q.delta[0] = q.delta[1] = q.delta[N - 1] = q.delta[N] = 1;
  auto chain_sink = [](int v) { return v % 2 == 1; };
  auto sink = [&](int v) {
    if (v == 1 || v == 2) return false;
    if (v == N || v == N + 1) return !chain_sink(N - 1);
    return chain_sink(v);
  };
  std::vector<std::pair<int, int>> edges = {{1, 3}, {2, 3}};
  for (int i = 3; i < N - 1; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(N - 1, N);
  edges.emplace_back(N - 1, N + 1);
  for (auto [u, v] : edges) {
    if (sink(v)) q.matrix.add_arrows(u - 1, v - 1);
    else q.matrix.add_arrows(v - 1, u - 1);
  }
  return q;
}

// Cycle on p+q vertices: vertex k joined to (k+p) mod (p+q), arrows pointing
// to the smaller label. Its frieze interleaves the single A recurrence.
Quiver a_quiver(int p, int q_) {
  const int n = p + q_;
  Quiver q;
  q.family = FamilySpec::a(p, q_);
  q.matrix = ExchangeMatrix(n);
  for (int k = 0; k < n; ++k) q.labels.push_back("x" + std::to_string(k));
  q.delta.assign(static_cast<std::size_t>(n), 1);
  for (int k = 0; k < n; ++k) {
    int j = (k + p) % n;
    q.matrix.add_arrows(std::max(k, j), std::min(k, j));
  }
  return q;
}

}  // namespace

std::string FamilySpec::name() const {
  switch (family) {
    case Family::A: return "A(" + std::to_string(p) + "," + std::to_string(q) + ")";
    case Family::D: return "D" + std::to_string(N);
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

std::string FamilySpec::keyword() const {
  switch (family) {
    case Family::A: return "A";
    case Family::D: return "D";
    default: return name();
  }
}

void FamilySpec::validate() const {
  if (family == Family::D && N < 4) throw UsageError("D family requires N >= 4");
  if (family == Family::A) {
    if (p < 1 || q < 1) throw UsageError("A family requires p, q >= 1");
    if (std::gcd(p, q) != 1)
      throw UsageError("A(p,q) requires gcd(p,q) = 1; otherwise the quiver is not a single affine cycle");
  }
}

Family parse_family(const std::string& k) {
  if (k == "A") return Family::A;
  if (k == "D") return Family::D;
  if (k == "E6") return Family::E6;
  if (k == "E7") return Family::E7;
  if (k == "E8") return Family::E8;
  throw UsageError("unknown family '" + k + "' (expected A, D, E6, E7, E8)");
}

ExchangeMatrix ExchangeMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  ExchangeMatrix b(static_cast<int>(rows.size()));
  for (int i = 0; i < b.n_; ++i) {
    if (static_cast<int>(rows[i].size()) != b.n_) throw UsageError("exchange matrix must be square");
    for (int j = 0; j < b.n_; ++j) b.at(i, j) = rows[i][j];
  }
  if (!b.is_skew_symmetric()) throw UsageError("exchange matrix must be skew-symmetric");
  return b;
}

void ExchangeMatrix::add_arrows(int from, int to, int count) {
  if (from < 0 || to < 0 || from >= n_ || to >= n_) throw UsageError("arrow endpoint out of range");
  if (from == to) throw UsageError("loops are not allowed");
  at(from, to) += count;
  at(to, from) -= count;
}

std::vector<std::vector<int>> ExchangeMatrix::rows() const {
  std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

bool ExchangeMatrix::is_skew_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

ExchangeMatrix ExchangeMatrix::negated() const {
  ExchangeMatrix r = *this;
  for (auto& x : r.b_) x = -x;
  return r;
}

ExchangeMatrix mutate(const ExchangeMatrix& b, int k) {
  const int n = b.size();
  if (k < 0 || k >= n) throw UsageError("mutation vertex out of range");
  ExchangeMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) r.at(i, j) = -b(i, j);
      else r.at(i, j) = b(i, j) + (std::abs(b(i, k)) * b(k, j) + b(i, k) * std::abs(b(k, j))) / 2;
    }
  return r;
}

std::vector<int> Quiver::extending() const {
  std::vector<int> v;
  for (int i = 0; i < size(); ++i)
    if (delta[i] == 1) v.push_back(i);
  return v;
}

bool Quiver::is_sink(int k) const {
  for (int j = 0; j < size(); ++j)
    if (matrix(k, j) > 0) return false;
  return true;
}

bool Quiver::is_source(int k) const {
  for (int j = 0; j < size(); ++j)
    if (matrix(k, j) < 0) return false;
  return true;
}

int Quiver::vertex(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw UsageError("no vertex labelled '" + label + "'");
}

Quiver mutate_quiver(const Quiver& q, int k) {
  Quiver r = q;
  r.matrix = mutate(q.matrix, k);
  return r;
}

Quiver build_affine_quiver(const FamilySpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::A: return a_quiver(spec.p, spec.q);
    case Family::D: return d_quiver(spec.N);
    case Family::E6:
      return named_quiver(spec, "abcdefg", {1, 2, 3, 2, 1, 2, 1},
                          {{'a', 'b'}, {'c', 'd'}, {'c', 'f'}, {'c', 'b'}, {'g', 'f'}, {'e', 'd'}});
    case Family::E7:
      return named_quiver(spec, "abcdefgh", {1, 2, 3, 4, 2, 3, 2, 1},
                          {{'a', 'b'}, {'c', 'b'}, {'e', 'd'}, {'f', 'd'}, {'c', 'd'}, {'f', 'g'}, {'h', 'g'}});
    case Family::E8:
      return named_quiver(spec, "abcdefghi", {1, 2, 3, 4, 5, 6, 3, 4, 2},
                          {{'a', 'b'}, {'c', 'b'}, {'c', 'd'}, {'e', 'd'}, {'g', 'f'}, {'h', 'f'}, {'e', 'f'},
                           {'h', 'i'}});
  }
  throw UsageError("unknown family");
}

Quiver opposite(const Quiver& q) {
  Quiver r = q;
  r.matrix = q.matrix.negated();
  return r;
}

Quiver dynamics_quiver(const Quiver& q) {
  switch (q.family.family) {
    case Family::E6:
    case Family::E7:
    case Family::E8: return opposite(q);
    default: return q;
  }
}

std::vector<int> admissible_order(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<bool> done(n, false);
  std::vector<int> order;
  while (static_cast<int>(order.size()) < n) {
    std::vector<int> layer;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      bool sink = true;
      for (int j = 0; j < n && sink; ++j)
        if (!done[j] && b(k, j) > 0) sink = false;
      if (sink) layer.push_back(k);
    }
    if (layer.empty()) throw NoAdmissibleOrder("quiver has an oriented cycle; no admissible order");
    for (int k : layer) {
      done[k] = true;
      order.push_back(k);
    }
  }
  return order;
}

std::vector<int> admissible_order(const Quiver& q) { return admissible_order(q.matrix); }

std::string quiver_to_json(const Quiver& q) {
  json j;
  j["family"] = q.family.keyword();
  json params = json::object();
  if (q.family.family == Family::D) params["N"] = q.family.N;
  if (q.family.family == Family::A) {
    params["p"] = q.family.p;
    params["q"] = q.family.q;
  }
  j["params"] = params;
  j["vertices"] = q.labels;
  json arrows = json::array();
  for (int i = 0; i < q.size(); ++i)
    for (int k = 0; k < q.size(); ++k)
      if (q.matrix(i, k) > 0) arrows.push_back({q.labels[i], q.labels[k], q.matrix(i, k)});
  j["arrows"] = arrows;
  j["delta"] = q.delta;
  return j.dump(2);
}

Quiver quiver_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("quiver file is not valid JSON: ") + e.what());
  }
  try {
    Quiver q;
    q.family.family = parse_family(j.at("family").get<std::string>());
    const json params = j.value("params", json::object());
    q.family.N = params.value("N", 0);
    q.family.p = params.value("p", 0);
    q.family.q = params.value("q", 0);
    q.family.validate();
    q.labels = j.at("vertices").get<std::vector<std::string>>();
    q.matrix = ExchangeMatrix(static_cast<int>(q.labels.size()));
    auto endpoint = [&](const json& v) {
      if (v.is_number_integer()) {
        int k = v.get<int>();
        if (k < 0 || k >= q.size()) throw UsageError("arrow endpoint index out of range");
        return k;
      }
      return q.vertex(v.get<std::string>());
    };
    for (const auto& a : j.at("arrows")) {
      if (!a.is_array() || a.size() < 2 || a.size() > 3) throw UsageError("arrow must be [from, to, mult]");
      int mult = a.size() == 3 ? a[2].get<int>() : 1;
      if (mult < 1) throw UsageError("arrow multiplicity must be positive");
      int from = endpoint(a[0]), to = endpoint(a[1]);
      if (q.matrix(from, to) < 0) throw UsageError("2-cycles are not allowed");
      q.matrix.add_arrows(from, to, mult);
    }
    q.delta = j.at("delta").get<std::vector<int>>();
    if (q.delta.size() != q.labels.size()) throw UsageError("delta must have one entry per vertex");
    for (int d : q.delta)
      if (d < 1) throw UsageError("delta entries must be positive");
    return q;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed quiver file: ") + e.what());
  }
}

}  // namespace friezekit

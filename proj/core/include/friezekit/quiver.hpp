#pragma once

#include <string>
#include <vector>

namespace friezekit {

enum class Family { A, D, E6, E7, E8 };

struct FamilySpec {
  Family family = Family::E6;
  int N = 0;  // D only
  int p = 0;  // A only
  int q = 0;  // A only

  static FamilySpec a(int p, int q) { return {Family::A, 0, p, q}; }
  static FamilySpec d(int n) { return {Family::D, n, 0, 0}; }
  static FamilySpec e6() { return {Family::E6}; }
  static FamilySpec e7() { return {Family::E7}; }
  static FamilySpec e8() { return {Family::E8}; }

  // "A(1,2)", "D5", "E6", ...
  std::string name() const;
  // Family keyword used in files and on the command line: A, D, E6, E7, E8.
  std::string keyword() const;
  // Throws UsageError on invalid parameters.
  void validate() const;
  bool operator==(const FamilySpec&) const = default;
};

Family parse_family(const std::string& keyword);

// Skew-symmetric integer matrix; b(i, j) > 0 counts arrows i -> j.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  explicit ExchangeMatrix(int n) : n_(n), b_(static_cast<std::size_t>(n) * n, 0) {}
  static ExchangeMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  int operator()(int i, int j) const { return b_[static_cast<std::size_t>(i) * n_ + j]; }
  void add_arrows(int from, int to, int count = 1);
  std::vector<std::vector<int>> rows() const;
  bool is_skew_symmetric() const;
  ExchangeMatrix negated() const;

  bool operator==(const ExchangeMatrix&) const = default;

 private:
  int& at(int i, int j) { return b_[static_cast<std::size_t>(i) * n_ + j]; }

  int n_ = 0;
  std::vector<int> b_;
  friend ExchangeMatrix mutate(const ExchangeMatrix&, int);
};

// b'_ij = -b_ij if k in {i, j}, else b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2.
ExchangeMatrix mutate(const ExchangeMatrix& b, int k);

struct Quiver {
  FamilySpec family;
  ExchangeMatrix matrix;
  std::vector<std::string> labels;
  std::vector<int> delta;

  int size() const { return matrix.size(); }
  std::vector<int> extending() const;
  bool is_sink(int k) const;
  bool is_source(int k) const;
  int vertex(const std::string& label) const;
};

Quiver mutate_quiver(const Quiver& q, int k);
Quiver build_affine_quiver(const FamilySpec& spec);
Quiver opposite(const Quiver& q);

// The orientation whose sink-first mutation generates the family's frieze
// recurrences. For E families this is the opposite of the drawn quiver.
Quiver dynamics_quiver(const Quiver& q);

// Layered sink-first order: repeatedly take every sink of the remaining full
// subquiver, in index order. Throws NoAdmissibleOrder on an oriented cycle.
std::vector<int> admissible_order(const ExchangeMatrix& b);
std::vector<int> admissible_order(const Quiver& q);

// JSON file format:
// {"family": "...", "params": {...}, "vertices": [...], "arrows": [[from, to, mult]], "delta": [...]}
std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);

}  // namespace friezekit

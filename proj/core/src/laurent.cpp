#include "friezekit/laurent.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "friezekit/errors.hpp"

namespace friezekit {

namespace {

constexpr int kExpMax = std::numeric_limits<std::int16_t>::max();
constexpr int kExpMin = std::numeric_limits<std::int16_t>::min();

std::int16_t checked_exp(int e) {
  if (e > kExpMax || e < kExpMin) throw UsageError("Laurent exponent out of range");
  return static_cast<std::int16_t>(e);
}

Monomial add_mono(const Monomial& a, const Monomial& b, std::size_t n) {
  Monomial r;
  for (std::size_t i = 0; i < n; ++i) r.exp[i] = checked_exp(a.exp[i] + b.exp[i]);
  return r;
}

Monomial sub_mono(const Monomial& a, const Monomial& b, std::size_t n) {
  Monomial r;
  for (std::size_t i = 0; i < n; ++i) r.exp[i] = checked_exp(a.exp[i] - b.exp[i]);
  return r;
}

bool divides(const Monomial& d, const Monomial& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (d.exp[i] > m.exp[i]) return false;
  return true;
}

void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (!same_ring(a.variables(), b.variables()))
    throw UsageError("Laurent polynomials over different variable lists");
}

void sort_terms(std::vector<LaurentPoly::Term>& t) {
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return grlex_less(y.mono, x.mono); });
}

// Packed monomials: each exponent, biased to be nonnegative, takes one byte
// (variable 0 most significant) and the biased total degree sits above them.
// Integer order on keys is then grlex order and key addition is monomial
// multiplication, as long as no byte overflows.
__extension__ typedef unsigned __int128 Key;

constexpr std::size_t kPackedMaxVars = 14;
constexpr int kByte = 255;

struct Codec {
  std::size_t n = 0;
  std::array<int, kMaxVariables> bias{};

  Key pack(const Monomial& m) const {
    Key k = 0;
    unsigned deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto e = static_cast<unsigned>(m.exp[i] - bias[i]);
      deg += e;
      k = (k << 8) | e;
    }
    return k | (static_cast<Key>(deg) << (8 * n));
  }

  Monomial unpack(Key k) const {
    Monomial m;
    for (std::size_t i = n; i-- > 0;) {
      m.exp[i] = static_cast<std::int16_t>(static_cast<int>(k & 0xff) + bias[i]);
      k >>= 8;
    }
    return m;
  }

  // Per-variable byte of a key.
  int field(Key k, std::size_t i) const { return static_cast<int>((k >> (8 * (n - 1 - i))) & 0xff); }
};

void exponent_range(const std::vector<LaurentPoly::Term>& t, std::size_t n, std::array<int, kMaxVariables>& lo,
                    std::array<int, kMaxVariables>& hi) {
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = t[0].mono.exp[i];
    hi[i] = t[0].mono.exp[i];
  }
  for (const auto& x : t)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min<int>(lo[i], x.mono.exp[i]);
      hi[i] = std::max<int>(hi[i], x.mono.exp[i]);
    }
}

struct HeapEntry {
  Key key;
  std::uint32_t i;
  std::uint32_t j;
  bool operator<(const HeapEntry& o) const { return key < o.key; }
};

// Max-heap of distinct packed keys, each carrying a chain of (i, j) index
// pairs whose products share that monomial. Sparse products and quotients
// here collide heavily, so chaining equal keys through a hash index keeps
// heap traffic proportional to distinct monomials rather than to products.
class ChainedHeap {
 public:
  struct Pair {
    std::uint32_t i;
    std::uint32_t j;
    std::uint32_t next;
  };
  static constexpr std::uint32_t kNone = 0xffffffffu;

  explicit ChainedHeap(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 4 * expected) cap <<= 1;
    slots_.assign(cap, Slot{0, kNone});
  }

  bool empty() const { return heap_.empty(); }
  Key top() const { return heap_.front().key; }

  void push(Key k, std::uint32_t i, std::uint32_t j) {
    std::uint32_t node;
    if (free_ != kNone) {
      node = free_;
      free_ = pool_[node].next;
      pool_[node] = {i, j, kNone};
    } else {
      node = static_cast<std::uint32_t>(pool_.size());
      pool_.push_back({i, j, kNone});
    }
    Slot& s = find(k);
    if (s.head != kNone) {
      pool_[node].next = s.head;
      s.head = node;
      return;
    }
    s.key = k;
    s.head = node;
    ++used_;
    heap_.push_back({k, 0, 0});
    std::push_heap(heap_.begin(), heap_.end());
    if (4 * used_ > 3 * slots_.size()) grow();
  }

  // Removes the top key and returns its chain; release() recycles the nodes.
  std::uint32_t pop() {
    const Key k = heap_.front().key;
    std::pop_heap(heap_.begin(), heap_.end());
    heap_.pop_back();
    std::size_t at = index_of(k);
    const std::uint32_t head = slots_[at].head;
    erase(at);
    return head;
  }

  const Pair& node(std::uint32_t n) const { return pool_[n]; }
  void release(std::uint32_t n) {
    pool_[n].next = free_;
    free_ = n;
  }

 private:
  struct Slot {
    Key key;
    std::uint32_t head;
  };

  std::size_t hash(Key k) const {
    auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = (lo ^ (hi * 0x9e3779b97f4a7c15ull)) * 0xbf58476d1ce4e5b9ull;
    return static_cast<std::size_t>(h ^ (h >> 31)) & (slots_.size() - 1);
  }

  std::size_t index_of(Key k) const {
    std::size_t at = hash(k);
    while (slots_[at].head != kNone && slots_[at].key != k) at = (at + 1) & (slots_.size() - 1);
    return at;
  }

  Slot& find(Key k) { return slots_[index_of(k)]; }

  // Backward-shift deletion for linear probing.
  void erase(std::size_t at) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t next = (at + 1) & mask;
    while (slots_[next].head != kNone) {
      std::size_t home = hash(slots_[next].key);
      if (((next - home) & mask) >= ((next - at) & mask)) {
        slots_[at] = slots_[next];
        at = next;
      }
      next = (next + 1) & mask;
    }
    slots_[at].head = kNone;
    --used_;
  }

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.size() * 2, Slot{0, kNone});
    for (const auto& s : old)
      if (s.head != kNone) {
        Slot& t = find(s.key);
        t = s;
      }
  }

  std::vector<HeapEntry> heap_;
  std::vector<Slot> slots_;
  std::vector<Pair> pool_;
  std::uint32_t free_ = kNone;
  std::size_t used_ = 0;
};

__extension__ typedef __int128 Wide;

// Machine-word coefficients. Inputs and quotient terms are kept below 2^40
// so that any heap accumulation of 2^40 products fits in 128 bits.
struct SmallCoeffs {
  using C = std::int64_t;
  using A = Wide;
  static constexpr std::int64_t kLimit = std::int64_t{1} << 40;

  static bool load(const BigInt& z, C& c) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
    long v = z.get_si();
    if (v >= kLimit || v <= -kLimit) return false;
    c = v;
    return true;
  }
  static void clear(A& a) { a = 0; }
  static void set(A& a, const C& c) { a = c; }
  static void addmul(A& a, const C& x, const C& y) { a += static_cast<Wide>(x) * y; }
  static void submul(A& a, const C& x, const C& y) { a -= static_cast<Wide>(x) * y; }
  static bool zero(const A& a) { return a == 0; }
  static BigInt big(Wide a) {
    const bool neg = a < 0;
    __extension__ unsigned __int128 u = neg ? -static_cast<unsigned __int128>(a) : static_cast<unsigned __int128>(a);
    BigInt hi(static_cast<unsigned long>(u >> 64)), r;
    mpz_mul_2exp(r.get_mpz_t(), hi.get_mpz_t(), 64);
    r += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-r) : r;
  }
  // Quotient acc / lead if exact; false also when it leaves the small range
  // (the caller then retries with big coefficients).
  static int divide(const A& acc, const C& lead, C& q) {
    if (acc % lead != 0) return -1;
    Wide v = acc / lead;
    if (v >= kLimit || v <= -kLimit) return 0;
    q = static_cast<C>(v);
    return 1;
  }
};

struct BigCoeffs {
  using C = BigInt;
  using A = BigInt;
  static bool load(const BigInt& z, C& c) {
    c = z;
    return true;
  }
  static void clear(A& a) { a = 0; }
  static void set(A& a, const C& c) { a = c; }
  static void addmul(A& a, const C& x, const C& y) { mpz_addmul(a.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t()); }
  static void submul(A& a, const C& x, const C& y) { mpz_submul(a.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t()); }
  static bool zero(const A& a) { return a == 0; }
  static BigInt big(const A& a) { return a; }
  static int divide(const A& acc, const C& lead, C& q) {
    if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t())) return -1;
    mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
    return 1;
  }
};

template <class P>
bool load_all(const std::vector<LaurentPoly::Term>& t, std::vector<typename P::C>& out) {
  out.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!P::load(t[i].coeff, out[i])) return false;
  return true;
}

// Heap multiplication over packed keys; emits terms already in decreasing
// order. Returns false when exponents or coefficients do not fit policy P.
template <class P>
bool packed_multiply(const std::vector<LaurentPoly::Term>& a, const std::vector<LaurentPoly::Term>& b, std::size_t n,
                     std::vector<LaurentPoly::Term>& out) {
  if (n > kPackedMaxVars) return false;
  std::array<int, kMaxVariables> alo{}, ahi{}, blo{}, bhi{};
  exponent_range(a, n, alo, ahi);
  exponent_range(b, n, blo, bhi);
  Codec ca{n, alo}, cb{n, blo}, cr{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if ((ahi[i] - alo[i]) + (bhi[i] - blo[i]) > kByte) return false;
    cr.bias[i] = alo[i] + blo[i];
  }
  const bool a_small = a.size() <= b.size();
  const auto& small = a_small ? a : b;
  const auto& large = a_small ? b : a;
  const Codec& cs = a_small ? ca : cb;
  const Codec& cl = a_small ? cb : ca;
  std::vector<typename P::C> vs, vl;
  if (!load_all<P>(small, vs) || !load_all<P>(large, vl)) return false;
  std::vector<Key> ks(small.size()), kl(large.size());
  for (std::size_t i = 0; i < small.size(); ++i) ks[i] = cs.pack(small[i].mono);
  for (std::size_t j = 0; j < large.size(); ++j) kl[j] = cl.pack(large[j].mono);

  ChainedHeap heap(small.size());
  for (std::uint32_t i = 0; i < small.size(); ++i) heap.push(ks[i] + kl[0], i, 0);
  typename P::A c{};
  while (!heap.empty()) {
    const Key m = heap.top();
    P::clear(c);
    for (std::uint32_t at = heap.pop(); at != ChainedHeap::kNone;) {
      const auto e = heap.node(at);
      heap.release(at);
      P::addmul(c, vs[e.i], vl[e.j]);
      if (e.j + 1 < large.size()) heap.push(ks[e.i] + kl[e.j + 1], e.i, e.j + 1);
      at = e.next;
    }
    if (!P::zero(c)) out.push_back({cr.unpack(m), P::big(c)});
  }
  return true;
}

// Exact division of polynomials with nonnegative exponents (Johnson's heap
// algorithm). Returns false when packing or policy P does not apply.
template <class P>
bool packed_divide(const std::vector<LaurentPoly::Term>& num, const std::vector<LaurentPoly::Term>& den,
                   std::size_t n, std::vector<LaurentPoly::Term>& quot) {
  if (n > kPackedMaxVars) return false;
  std::array<int, kMaxVariables> nlo{}, nhi{}, dlo{}, dhi{};
  exponent_range(num, n, nlo, nhi);
  exponent_range(den, n, dlo, dhi);
  for (std::size_t i = 0; i < n; ++i)
    if (nhi[i] > kByte || dhi[i] > nhi[i]) return false;
  std::vector<typename P::C> vn, vd, vq;
  if (!load_all<P>(num, vn) || !load_all<P>(den, vd)) return false;
  const Codec c{n, {}};
  std::vector<Key> kn(num.size()), kd(den.size());
  for (std::size_t i = 0; i < num.size(); ++i) kn[i] = c.pack(num[i].mono);
  for (std::size_t i = 0; i < den.size(); ++i) kd[i] = c.pack(den[i].mono);
  const Key lead = kd[0];

  std::vector<Key> kq;
  ChainedHeap heap(kd.size());  // (i, j): den term i times quotient term j, i >= 1
  std::size_t next = 0;
  typename P::A acc{};
  typename P::C qc{};
  while (next < kn.size() || !heap.empty()) {
    Key m = 0;
    if (next < kn.size()) m = kn[next];
    if (!heap.empty() && heap.top() > m) m = heap.top();
    P::clear(acc);
    if (next < kn.size() && kn[next] == m) P::set(acc, vn[next++]);
    if (!heap.empty() && heap.top() == m) {
      for (std::uint32_t at = heap.pop(); at != ChainedHeap::kNone;) {
        const auto e = heap.node(at);
        heap.release(at);
        P::submul(acc, vd[e.i], vq[e.j]);
        if (e.i + 1 < kd.size()) heap.push(kd[e.i + 1] + kq[e.j], e.i + 1, e.j);
        at = e.next;
      }
    }
    if (P::zero(acc)) continue;
    // The quotient's exponents are bounded by num's maxima minus den's, so
    // anything outside that box proves the division inexact.
    for (std::size_t i = 0; i < n; ++i) {
      int qe = c.field(m, i) - c.field(lead, i);
      if (qe < 0 || qe + dhi[i] > nhi[i]) throw DivisionNotExact("nonzero remainder in Laurent division");
    }
    int st = P::divide(acc, vd[0], qc);
    if (st < 0) throw DivisionNotExact("nonzero remainder in Laurent division");
    if (st == 0) return false;
    const Key qk = m - lead;
    vq.push_back(qc);
    kq.push_back(qk);
    if (kd.size() > 1) heap.push(kd[1] + qk, 1, static_cast<std::uint32_t>(kq.size() - 1));
  }
  quot.reserve(kq.size());
  for (std::size_t j = 0; j < kq.size(); ++j) quot.push_back({c.unpack(kq[j]), P::big(vq[j])});
  return true;
}

bool fast_multiply(const std::vector<LaurentPoly::Term>& a, const std::vector<LaurentPoly::Term>& b, std::size_t n,
                   std::vector<LaurentPoly::Term>& out) {
  if (packed_multiply<SmallCoeffs>(a, b, n, out)) return true;
  out.clear();
  return packed_multiply<BigCoeffs>(a, b, n, out);
}

bool fast_divide(const std::vector<LaurentPoly::Term>& num, const std::vector<LaurentPoly::Term>& den,
                 std::size_t n, std::vector<LaurentPoly::Term>& quot) {
  if (packed_divide<SmallCoeffs>(num, den, n, quot)) return true;
  quot.clear();
  return packed_divide<BigCoeffs>(num, den, n, quot);
}

}  // namespace

Variables::Variables(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables) throw UsageError("too many Laurent variables");
}

std::size_t Variables::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw UsageError("unknown variable '" + std::string(name) + "'");
}

VarsPtr make_variables(std::vector<std::string> names) {
  return std::make_shared<const Variables>(std::move(names));
}

bool same_ring(const VarsPtr& a, const VarsPtr& b) { return a == b || (a && b && *a == *b); }

int Monomial::degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exp < b.exp;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exp) {
    h ^= static_cast<std::uint16_t>(e);
    h *= 1099511628211ull;
  }
  return h;
}

LaurentPoly::LaurentPoly(VarsPtr vars) : vars_(std::move(vars)) {
  if (!vars_) throw UsageError("Laurent polynomial without a variable list");
}

LaurentPoly LaurentPoly::constant(VarsPtr vars, const BigInt& c) {
  return monomial(std::move(vars), Monomial{}, c);
}

LaurentPoly LaurentPoly::variable(VarsPtr vars, std::size_t i) {
  if (i >= vars->size()) throw UsageError("variable index out of range");
  Monomial m;
  m.exp[i] = 1;
  return monomial(std::move(vars), m, 1);
}

LaurentPoly LaurentPoly::variable(VarsPtr vars, std::string_view name) {
  std::size_t i = vars->index(name);
  return variable(std::move(vars), i);
}

LaurentPoly LaurentPoly::monomial(VarsPtr vars, const Monomial& m, const BigInt& c) {
  LaurentPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

LaurentPoly LaurentPoly::from_terms(VarsPtr vars, std::vector<Term> terms) {
  LaurentPoly p(std::move(vars));
  sort_terms(terms);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].mono == Monomial{};
}

Monomial LaurentPoly::min_exponents() const {
  Monomial r;
  if (terms_.empty()) return r;
  r = terms_[0].mono;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < vars_->size(); ++i) r.exp[i] = std::min(r.exp[i], t.mono.exp[i]);
  return r;
}

bool LaurentPoly::coefficients_positive() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff > 0; });
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_same(*this, o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && grlex_less(o.terms_[j].mono, terms_[i].mono))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_less(terms_[i].mono, o.terms_[j].mono)) {
      out.push_back(o.terms_[j++]);
    } else {
      BigInt c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) out.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  const std::size_t n = a.vars_->size();
  LaurentPoly r(a.vars_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_monomial() || b.is_monomial()) {
    const LaurentPoly& mono = a.is_monomial() ? a : b;
    const LaurentPoly& other = a.is_monomial() ? b : a;
    const auto& mt = mono.terms_[0];
    r.terms_.reserve(other.size());
    // Multiplying by a monomial preserves the term order.
    for (const auto& t : other.terms_) r.terms_.push_back({add_mono(t.mono, mt.mono, n), t.coeff * mt.coeff});
    return r;
  }
  if (fast_multiply(a.terms_, b.terms_, n, r.terms_)) return r;
  std::unordered_map<Monomial, BigInt, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [it, inserted] = acc.try_emplace(add_mono(ta.mono, tb.mono, n));
      mpz_addmul(it->second.get_mpz_t(), ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t());
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  sort_terms(r.terms_);
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

LaurentPoly LaurentPoly::shifted(const Monomial& by, bool negate) const {
  LaurentPoly r(vars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    r.terms_.push_back({negate ? sub_mono(t.mono, by, vars_->size()) : add_mono(t.mono, by, vars_->size()), t.coeff});
  return r;
}

Rat LaurentPoly::eval(const std::vector<Rat>& point) const {
  const std::size_t n = vars_->size();
  if (point.size() != n) throw UsageError("evaluation point has the wrong dimension");
  for (std::size_t i = 0; i < n; ++i)
    if (point[i] == 0) throw UsageError("Laurent evaluation at zero for variable " + vars_->name(i));
  std::vector<std::map<int, Rat>> cache(n);
  auto power = [&](std::size_t i, int e) -> const Rat& {
    auto it = cache[i].find(e);
    if (it == cache[i].end()) it = cache[i].emplace(e, pow_int(point[i], e)).first;
    return it->second;
  };
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (std::size_t i = 0; i < n; ++i)
      if (t.mono.exp[i] != 0) v *= power(i, t.mono.exp[i]);
    sum += v;
  }
  return sum;
}

Rat LaurentPoly::eval(const std::map<std::string, Rat>& point) const {
  std::vector<Rat> v(vars_->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = point.find(vars_->name(i));
    if (it == point.end()) throw UsageError("no value for variable " + vars_->name(i));
    v[i] = it->second;
  }
  return eval(v);
}

LaurentPoly LaurentPoly::partial(std::size_t v) const {
  if (v >= vars_->size()) throw UsageError("variable index out of range");
  LaurentPoly r(vars_);
  for (const auto& t : terms_) {
    if (t.mono.exp[v] == 0) continue;
    Term nt{t.mono, t.coeff * t.mono.exp[v]};
    nt.mono.exp[v] = checked_exp(nt.mono.exp[v] - 1);
    r.terms_.push_back(std::move(nt));
  }
  // Lowering one exponent can reorder terms of different degree classes.
  sort_terms(r.terms_);
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigInt c = t.coeff;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    bool unit_mono = t.mono == Monomial{};
    bool wrote = false;
    if (c != 1 || unit_mono) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      int e = t.mono.exp[i];
      if (e == 0) continue;
      if (wrote) os << "*";
      os << vars_->name(i);
      if (e != 1) os << "^" << e;
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly laurent_exact_div(const LaurentPoly& num, const LaurentPoly& den) {
  require_same(num, den);
  if (den.is_zero()) throw UsageError("division by the zero polynomial");
  const VarsPtr& vars = num.variables();
  const std::size_t n = vars->size();
  if (num.is_zero()) return LaurentPoly(vars);

  if (den.is_monomial()) {
    const auto& d = den.terms()[0];
    std::vector<LaurentPoly::Term> out;
    out.reserve(num.size());
    for (const auto& t : num.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t()))
        throw DivisionNotExact("coefficient not divisible by monomial denominator");
      BigInt q;
      mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), d.coeff.get_mpz_t());
      out.push_back({sub_mono(t.mono, d.mono, n), std::move(q)});
    }
    return LaurentPoly::from_terms(vars, std::move(out));
  }

  // Move both operands into the polynomial subring. Neither shifted operand
  // is divisible by any variable, so an exact quotient is a polynomial and
  // ordinary single-divisor division decides exactness.
  const Monomial num_shift = num.min_exponents();
  const Monomial den_shift = den.min_exponents();
  const LaurentPoly d = den.shifted(den_shift, true);
  const auto& lead = d.terms()[0];
  const LaurentPoly shifted_num = num.shifted(num_shift, true);
  {
    std::vector<LaurentPoly::Term> packed;
    if (fast_divide(shifted_num.terms(), d.terms(), n, packed))
      return LaurentPoly::from_terms(vars, std::move(packed)).shifted(sub_mono(num_shift, den_shift, n), false);
  }

  std::map<Monomial, BigInt, GrlexGreater> rem;
  for (const auto& t : shifted_num.terms()) rem.emplace(t.mono, t.coeff);

  std::vector<LaurentPoly::Term> quotient;
  BigInt qc, prod;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!divides(lead.mono, top->first, n) ||
        !mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t()))
      throw DivisionNotExact("nonzero remainder in Laurent division");
    const Monomial qm = sub_mono(top->first, lead.mono, n);
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lead.coeff.get_mpz_t());
    for (const auto& t : d.terms()) {
      Monomial m = add_mono(t.mono, qm, n);
      prod = t.coeff * qc;
      auto [it, inserted] = rem.try_emplace(m);
      it->second -= prod;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({qm, qc});
  }
  // Quotient terms come out in decreasing order already.
  LaurentPoly q = LaurentPoly::from_terms(vars, std::move(quotient));
  return q.shifted(sub_mono(num_shift, den_shift, n), false);
}

Rat laurent_eval(const LaurentPoly& p, const std::map<std::string, Rat>& point) { return p.eval(point); }

LaurentPoly laurent_partial(const LaurentPoly& p, std::string_view v) {
  return p.partial(p.variables()->index(v));
}

LaurentFrac::LaurentFrac(LaurentPoly num)
    : num_(std::move(num)), den_(LaurentPoly::constant(num_.variables(), 1)) {}

LaurentFrac::LaurentFrac(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same(num_, den_);
  if (den_.is_zero()) throw BadSpecialization("symbolic division by zero");
  reduce();
}

void LaurentFrac::reduce() {
  if (den_.is_one()) return;
  try {
    num_ = laurent_exact_div(num_, den_);
    den_ = LaurentPoly::constant(num_.variables(), 1);
  } catch (const DivisionNotExact&) {
    // Genuine fraction; keep it and compare by cross-multiplication.
  }
}

LaurentFrac operator+(const LaurentFrac& a, const LaurentFrac& b) {
  if (a.den_ == b.den_) return LaurentFrac(a.num_ + b.num_, a.den_);
  return LaurentFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

LaurentFrac operator-(const LaurentFrac& a, const LaurentFrac& b) { return a + (-b); }

LaurentFrac operator*(const LaurentFrac& a, const LaurentFrac& b) {
  return LaurentFrac(a.num_ * b.num_, a.den_ * b.den_);
}

LaurentFrac operator/(const LaurentFrac& a, const LaurentFrac& b) {
  if (b.num_.is_zero()) throw BadSpecialization("symbolic division by zero");
  return LaurentFrac(a.num_ * b.den_, a.den_ * b.num_);
}

LaurentFrac LaurentFrac::operator-() const {
  LaurentFrac r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const LaurentFrac& a, const LaurentFrac& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string LaurentFrac::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace friezekit

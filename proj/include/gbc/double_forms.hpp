#pragma once

// Pointwise algebra of double forms over an n-dimensional oriented inner
// product space with a fixed orthonormal basis: a (k,l) double form is
// alternating separately in its first k and last l slots. Coefficients are
// stored sparsely on strictly increasing index tuples only; antisymmetry is
// applied at insertion and evaluation. Scalars are exact (Rational) or double,
// one mode per instance, never mixed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbc/linalg.hpp"
#include "gbc/rational.hpp"

namespace gbc {

/// Strictly increasing tuple of indices in [1, dims]; dims is carried by the
/// owning form.
using Indices = std::vector<int>;

/// Sorts a tuple in place and returns the permutation sign, or 0 when an
/// index repeats (the alternating value is then zero).
inline int canonicalize_tuple(Indices& t) {
  int sign = 1;
  // insertion sort, counting swaps
  for (size_t i = 1; i < t.size(); ++i) {
    int v = t[i];
    size_t j = i;
    while (j > 0 && t[j - 1] > v) {
      t[j] = t[j - 1];
      --j;
      sign = -sign;
    }
    t[j] = v;
  }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

/// Sign of merging two disjoint increasing tuples (a then b) into one sorted
/// tuple, or 0 when they intersect. On success `out` holds the merge.
inline int merge_tuples(const Indices& a, const Indices& b, Indices& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining elements of a
      if ((a.size() - i) % 2 != 0) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

template <class S>
class DoubleForm {
 public:
  using Key = std::pair<Indices, Indices>;
  using CoeffMap = std::map<Key, S>;

  DoubleForm(int dims, int left_deg, int right_deg)
      : dims_(dims), k_(left_deg), l_(right_deg) {
    if (dims < 1) throw std::domain_error("DoubleForm: dims must be >= 1");
    if (left_deg < 0 || right_deg < 0)
      throw std::domain_error("DoubleForm: negative degree");
  }

  int dims() const { return dims_; }
  int left_degree() const { return k_; }
  int right_degree() const { return l_; }
  bool is_zero() const { return c_.empty(); }
  const CoeffMap& coeffs() const { return c_; }

  /// The (1,1) metric form g with coefficients delta_ij.
  static DoubleForm metric(int n) {
    DoubleForm g(n, 1, 1);
    for (int i = 1; i <= n; ++i) g.c_[{{i}, {i}}] = S(1);
    return g;
  }

  /// The scalar 1 as a (0,0) form; the empty-power convention psi^0.
  static DoubleForm scalar_one(int n) {
    DoubleForm one(n, 0, 0);
    one.c_[{{}, {}}] = S(1);
    return one;
  }

  /// Accumulates v on the (possibly unsorted) tuple pair; antisymmetry signs
  /// are applied here and zero results are pruned.
  void add_term(Indices left, Indices right, const S& v) {
    check_tuple(left, k_);
    check_tuple(right, l_);
    int sl = canonicalize_tuple(left);
    int sr = canonicalize_tuple(right);
    if (sl == 0 || sr == 0) return;
    S signed_v = (sl * sr > 0) ? v : S(-v);
    auto key = Key(std::move(left), std::move(right));
    auto it = c_.find(key);
    if (it == c_.end()) {
      if (!(signed_v == S(0))) c_.emplace(std::move(key), std::move(signed_v));
    } else {
      it->second += signed_v;
      if (it->second == S(0)) c_.erase(it);
    }
  }

  /// Coefficient on canonical (strictly increasing) tuples.
  S coeff(const Indices& left, const Indices& right) const {
    auto it = c_.find(Key(left, right));
    return it == c_.end() ? S(0) : it->second;
  }

  /// Value on arbitrary basis tuples, with permutation signs on the fly.
  S evaluate(Indices left, Indices right) const {
    check_tuple(left, k_);
    check_tuple(right, l_);
    int sl = canonicalize_tuple(left);
    int sr = canonicalize_tuple(right);
    if (sl == 0 || sr == 0) return S(0);
    S v = coeff(left, right);
    return (sl * sr > 0) ? v : S(-v);
  }

  DoubleForm operator-() const {
    DoubleForm r(dims_, k_, l_);
    for (const auto& [key, v] : c_) r.c_[key] = -v;
    return r;
  }

  friend DoubleForm operator+(const DoubleForm& a, const DoubleForm& b) {
    a.require_same_shape(b, "operator+");
    DoubleForm r = a;
    for (const auto& [key, v] : b.c_) {
      auto it = r.c_.find(key);
      if (it == r.c_.end()) {
        r.c_[key] = v;
      } else {
        it->second += v;
        if (it->second == S(0)) r.c_.erase(it);
      }
    }
    return r;
  }

  friend DoubleForm operator-(const DoubleForm& a, const DoubleForm& b) {
    return a + (-b);
  }

  friend DoubleForm operator*(const S& s, const DoubleForm& a) {
    DoubleForm r(a.dims_, a.k_, a.l_);
    if (s == S(0)) return r;
    for (const auto& [key, v] : a.c_) r.c_[key] = s * v;
    return r;
  }

  friend bool operator==(const DoubleForm& a, const DoubleForm& b) {
    return a.dims_ == b.dims_ && a.k_ == b.k_ && a.l_ == b.l_ && a.c_ == b.c_;
  }
  friend bool operator!=(const DoubleForm& a, const DoubleForm& b) { return !(a == b); }

  /// Largest |coefficient|; float-mode forms only.
  double max_abs() const {
    double m = 0;
    for (const auto& [key, v] : c_) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
  }

 private:
  void check_tuple(const Indices& t, int expected) const {
    if (static_cast<int>(t.size()) != expected)
      throw std::invalid_argument("DoubleForm: tuple arity mismatch");
    for (int ix : t)
      if (ix < 1 || ix > dims_)
        throw std::out_of_range("DoubleForm: index outside [1, dims]");
  }
  void require_same_shape(const DoubleForm& o, const char* who) const {
    if (dims_ != o.dims_ || k_ != o.k_ || l_ != o.l_)
      throw std::invalid_argument(std::string("DoubleForm::") + who + ": shape mismatch");
  }

  int dims_;
  int k_, l_;
  CoeffMap c_;

  template <class T>
  friend DoubleForm<T> owedge(const DoubleForm<T>&, const DoubleForm<T>&);
  template <class T>
  friend DoubleForm<T> transpose(const DoubleForm<T>&);
  template <class T>
  friend DoubleForm<T> contract_once(const DoubleForm<T>&);
  template <class T>
  friend DoubleForm<T> restrict_dims(const DoubleForm<T>&, int);
};

/// Double wedge product. Degrees add; when they exceed the dimension the
/// result is the zero form of the overflowing bidegree (no storable keys
/// exist, so the map stays empty).
template <class S>
DoubleForm<S> owedge(const DoubleForm<S>& a, const DoubleForm<S>& b) {
  if (a.dims() != b.dims())
    throw std::invalid_argument("owedge: dims mismatch");
  DoubleForm<S> r(a.dims(), a.left_degree() + b.left_degree(),
                  a.right_degree() + b.right_degree());
  if (r.left_degree() > r.dims() || r.right_degree() > r.dims()) return r;
  Indices ml, mr;
  for (const auto& [ka, va] : a.coeffs()) {
    for (const auto& [kb, vb] : b.coeffs()) {
      int sl = merge_tuples(ka.first, kb.first, ml);
      if (sl == 0) continue;
      int sr = merge_tuples(ka.second, kb.second, mr);
      if (sr == 0) continue;
      S term = va * vb;
      if (sl * sr < 0) term = -term;
      auto key = typename DoubleForm<S>::Key(ml, mr);
      auto it = r.c_.find(key);
      if (it == r.c_.end()) {
        if (!(term == S(0))) r.c_.emplace(std::move(key), std::move(term));
      } else {
        it->second += term;
        if (it->second == S(0)) r.c_.erase(it);
      }
    }
  }
  return r;
}

template <class S>
DoubleForm<S> transpose(const DoubleForm<S>& a) {
  DoubleForm<S> r(a.dims(), a.right_degree(), a.left_degree());
  for (const auto& [key, v] : a.coeffs()) r.c_[{key.second, key.first}] = v;
  return r;
}

/// One contraction step (k,l) -> (k-1,l-1): trace over an appended basis
/// vector pair. Iterates stored keys only; removing index i from position j
/// of a size-k tuple costs the sign (-1)^(k-j).
template <class S>
DoubleForm<S> contract_once(const DoubleForm<S>& a) {
  if (a.left_degree() < 1 || a.right_degree() < 1)
    throw std::domain_error("contract: order exceeds bidegree");
  DoubleForm<S> r(a.dims(), a.left_degree() - 1, a.right_degree() - 1);
  for (const auto& [key, v] : a.coeffs()) {
    const Indices& left = key.first;
    const Indices& right = key.second;
    for (size_t jl = 0; jl < left.size(); ++jl) {
      int ix = left[jl];
      auto pos = std::lower_bound(right.begin(), right.end(), ix);
      if (pos == right.end() || *pos != ix) continue;
      size_t jr = static_cast<size_t>(pos - right.begin());
      int sign = ((left.size() - 1 - jl) + (right.size() - 1 - jr)) % 2 == 0 ? 1 : -1;
      Indices nl = left, nr = right;
      nl.erase(nl.begin() + jl);
      nr.erase(nr.begin() + jr);
      auto rkey = typename DoubleForm<S>::Key(std::move(nl), std::move(nr));
      S term = (sign > 0) ? v : S(-v);
      auto it = r.c_.find(rkey);
      if (it == r.c_.end()) {
        if (!(term == S(0))) r.c_.emplace(std::move(rkey), std::move(term));
      } else {
        it->second += term;
        if (it->second == S(0)) r.c_.erase(it);
      }
    }
  }
  return r;
}

/// Contraction operator of order p; C^0 is the identity.
template <class S>
DoubleForm<S> contract(const DoubleForm<S>& a, int p) {
  if (p < 0 || p > std::min(a.left_degree(), a.right_degree()))
    throw std::domain_error("contract: order out of range [0, min(k,l)]");
  DoubleForm<S> r = a;
  for (int i = 0; i < p; ++i) r = contract_once(r);
  return r;
}

/// Full contraction C^p of a (p,p) form, as a scalar.
template <class S>
S full_contract(const DoubleForm<S>& a) {
  if (a.left_degree() != a.right_degree())
    throw std::domain_error("full_contract: bidegree must be square");
  DoubleForm<S> r = contract(a, a.left_degree());
  return r.coeff({}, {});
}

/// Independent oracle for full_contract: the literal inductive definition,
/// summing psi(e_I; e_I) over all n^p index tuples I via tuple evaluation.
/// Cost guard n <= 6.
template <class S>
S brute_force_contract(const DoubleForm<S>& a) {
  if (a.left_degree() != a.right_degree())
    throw std::domain_error("brute_force_contract: bidegree must be square");
  if (a.dims() > 6)
    throw std::domain_error("brute_force_contract: dims > 6 (cost guard)");
  int p = a.left_degree();
  int n = a.dims();
  S sum(0);
  Indices tuple(p, 1);
  while (true) {
    sum += a.evaluate(tuple, tuple);
    int pos = p - 1;
    while (pos >= 0 && tuple[pos] == n) {
      tuple[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[pos];
  }
  return sum;
}

/// Repeated double wedge; psi^0 = 1 as a (0,0) form. Zero form when the
/// degree overflows the dimension.
template <class S>
DoubleForm<S> df_power(const DoubleForm<S>& a, int j) {
  if (j < 0) throw std::domain_error("df_power: negative exponent");
  DoubleForm<S> r = DoubleForm<S>::scalar_one(a.dims());
  for (int i = 0; i < j; ++i) r = owedge(r, a);
  return r;
}

/// Index filtering: keeps the coefficients supported on [1, new_dims] and
/// reinterprets them over the smaller space (boundary restriction in a frame
/// whose last vector is the normal).
template <class S>
DoubleForm<S> restrict_dims(const DoubleForm<S>& a, int new_dims) {
  if (new_dims < 1 || new_dims > a.dims())
    throw std::domain_error("restrict_dims: bad target dimension");
  DoubleForm<S> r(new_dims, a.left_degree(), a.right_degree());
  for (const auto& [key, v] : a.coeffs()) {
    bool inside = true;
    for (int ix : key.first)
      if (ix > new_dims) inside = false;
    for (int ix : key.second)
      if (ix > new_dims) inside = false;
    if (inside) r.c_[key] = v;
  }
  return r;
}

/// Conjugates a double form by an orthonormal frame change: the i-th new frame
/// vector has components q(.,i) in the old basis. Coefficients transform by
/// minor determinants of q on each side.
template <class S>
DoubleForm<S> conjugate_by_frame(const DoubleForm<S>& a, const SquareMatrix<S>& q) {
  int n = a.dims();
  if (q.size() != n) throw std::invalid_argument("conjugate_by_frame: size mismatch");
  auto minor_det = [&](const Indices& rows, const Indices& cols) {
    int d = static_cast<int>(rows.size());
    SquareMatrix<S> sub(std::max(d, 1));
    if (d == 0) return S(1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sub(i, j) = q(rows[i] - 1, cols[j] - 1);
    return determinant(sub);
  };
  auto all_subsets = [&](int deg) {
    std::vector<Indices> out;
    Indices cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == deg) {
        out.push_back(cur);
        return;
      }
      for (int v = start; v <= n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(1);
    return out;
  };
  DoubleForm<S> r(n, a.left_degree(), a.right_degree());
  auto lefts = all_subsets(a.left_degree());
  auto rights = all_subsets(a.right_degree());
  for (const auto& li : lefts) {
    for (const auto& ri : rights) {
      S v(0);
      for (const auto& [key, c] : a.coeffs())
        v += c * minor_det(key.first, li) * minor_det(key.second, ri);
      if (!(v == S(0))) r.add_term(li, ri, v);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Single-sided alternating forms (one degree), used for coframe products,
// the varpi map and the Grassmann scalar product.

template <class S>
class FormVector {
 public:
  FormVector(int dims, int degree) : dims_(dims), deg_(degree) {
    if (dims < 1) throw std::domain_error("FormVector: dims must be >= 1");
    if (degree < 0 || degree > dims)
      throw std::domain_error("FormVector: degree out of [0, dims]");
  }

  int dims() const { return dims_; }
  int degree() const { return deg_; }
  const std::map<Indices, S>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add_term(Indices ix, const S& v) {
    if (static_cast<int>(ix.size()) != deg_)
      throw std::invalid_argument("FormVector: tuple arity mismatch");
    for (int i : ix)
      if (i < 1 || i > dims_) throw std::out_of_range("FormVector: index out of range");
    int s = canonicalize_tuple(ix);
    if (s == 0) return;
    S sv = (s > 0) ? v : S(-v);
    auto it = c_.find(ix);
    if (it == c_.end()) {
      if (!(sv == S(0))) c_.emplace(std::move(ix), std::move(sv));
    } else {
      it->second += sv;
      if (it->second == S(0)) c_.erase(it);
    }
  }

  S coeff(const Indices& ix) const {
    auto it = c_.find(ix);
    return it == c_.end() ? S(0) : it->second;
  }

  friend bool operator==(const FormVector& a, const FormVector& b) {
    return a.dims_ == b.dims_ && a.deg_ == b.deg_ && a.c_ == b.c_;
  }

 private:
  int dims_, deg_;
  std::map<Indices, S> c_;
};

template <class S>
FormVector<S> wedge(const FormVector<S>& a, const FormVector<S>& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("wedge: dims mismatch");
  if (a.degree() + b.degree() > a.dims())
    throw std::domain_error("wedge: degree exceeds dims");
  FormVector<S> r(a.dims(), a.degree() + b.degree());
  Indices m;
  for (const auto& [ka, va] : a.coeffs())
    for (const auto& [kb, vb] : b.coeffs()) {
      int s = merge_tuples(ka, kb, m);
      if (s == 0) continue;
      r.add_term(m, (s > 0) ? va * vb : S(-(va * vb)));
    }
  return r;
}

/// alpha (x) beta as a (p,q) double form.
template <class S>
DoubleForm<S> tensor_product(const FormVector<S>& a, const FormVector<S>& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("tensor_product: dims mismatch");
  DoubleForm<S> r(a.dims(), a.degree(), b.degree());
  for (const auto& [ka, va] : a.coeffs())
    for (const auto& [kb, vb] : b.coeffs()) r.add_term(ka, kb, va * vb);
  return r;
}

/// Grassmann scalar product <alpha, beta> = (1/p!) C^p(alpha (x) beta).
template <class S>
S inner_product_forms(const FormVector<S>& a, const FormVector<S>& b) {
  if (a.dims() != b.dims() || a.degree() != b.degree())
    throw std::invalid_argument("inner_product_forms: degree/dims mismatch");
  S c = full_contract(tensor_product(a, b));
  if constexpr (std::is_same_v<S, Rational>) {
    return c / Rational(factorial(a.degree()));
  } else {
    return c / static_cast<S>(factorial(a.degree()).get_d());
  }
}

/// varpi_X = *(X^flat) for X given by components in the orthonormal basis
/// (positive orientation). For X = e_i this is
/// (-1)^(i-1) theta^1 ^ ... ^ (theta^i omitted) ^ ... ^ theta^n.
template <class S>
FormVector<S> hodge_varpi(const std::vector<S>& x) {
  int n = static_cast<int>(x.size());
  if (n < 1) throw std::domain_error("hodge_varpi: empty vector");
  FormVector<S> r(n, n - 1);
  for (int i = 1; i <= n; ++i) {
    if (x[i - 1] == S(0)) continue;
    Indices complement;
    complement.reserve(n - 1);
    for (int j = 1; j <= n; ++j)
      if (j != i) complement.push_back(j);
    S v = (i % 2 == 1) ? x[i - 1] : S(-x[i - 1]);
    r.add_term(complement, v);
  }
  return r;
}

/// X^flat as a 1-form.
template <class S>
FormVector<S> musical_flat(const std::vector<S>& x) {
  int n = static_cast<int>(x.size());
  FormVector<S> r(n, 1);
  for (int i = 1; i <= n; ++i)
    if (!(x[i - 1] == S(0))) r.add_term({i}, x[i - 1]);
  return r;
}

/// The volume element Theta = theta^1 ^ ... ^ theta^n.
template <class S>
FormVector<S> volume_element(int n) {
  FormVector<S> r(n, n);
  Indices all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  r.add_term(all, S(1));
  return r;
}

template <class S>
DoubleForm<S> make_metric_form(int n) {
  return DoubleForm<S>::metric(n);
}

/// Max |a - b| over coefficients of both supports (float-mode comparison).
template <class S>
double max_coeff_difference(const DoubleForm<S>& a, const DoubleForm<S>& b) {
  double m = 0;
  for (const auto& [key, v] : a.coeffs())
    m = std::max(m, std::abs(static_cast<double>(v) - static_cast<double>(b.coeff(key.first, key.second))));
  for (const auto& [key, v] : b.coeffs())
    m = std::max(m, std::abs(static_cast<double>(v) - static_cast<double>(a.coeff(key.first, key.second))));
  return m;
}

/// Largest |A(i,j;k,l) + A(j,k;i,l) + A(k,i;j,l)| over all basis 4-tuples,
/// as a double; zero exactly iff a (2,2) form satisfies the first Bianchi
/// identity in exact mode.
template <class S>
double first_bianchi_residual(const DoubleForm<S>& a) {
  if (a.left_degree() != 2 || a.right_degree() != 2)
    throw std::invalid_argument("first_bianchi_residual: needs a (2,2) form");
  int n = a.dims();
  double worst = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          S s = a.evaluate({i, j}, {k, l}) + a.evaluate({j, k}, {i, l}) +
                a.evaluate({k, i}, {j, l});
          if constexpr (std::is_same_v<S, Rational>) {
            worst = std::max(worst, std::abs(s.to_double()));
          } else {
            worst = std::max(worst, std::abs(static_cast<double>(s)));
          }
        }
  return worst;
}

template <class S>
bool is_symmetric(const DoubleForm<S>& a) {
  return transpose(a) == a;
}

}  // namespace gbc

#pragma once

// Symmetric polynomials in several variables and their conversion to sums of
// determinants det(F_i(x_j)) of one-variable polynomials.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

/// Sparse polynomial in m variables, keyed by exponent vector.
template <class T>
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(int nvars = 1) : m_(nvars) {}

  static MultiPoly constant(int nvars, T v) {
    MultiPoly p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), std::move(v));
    return p;
  }
  static MultiPoly variable(int nvars, int index) {
    MultiPoly p(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, T(1));
    return p;
  }
  /// k-th elementary symmetric polynomial.
  static MultiPoly elementary(int nvars, int k) {
    MultiPoly p(nvars);
    std::vector<int> pick(static_cast<std::size_t>(nvars), 0);
    std::fill(pick.end() - k, pick.end(), 1);
    do {
      p.add_term(pick, T(1));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return p;
  }
  /// prod_{i<j} (x_j - x_i) = det(x_j^{i-1})
  static MultiPoly vandermonde(int nvars) {
    MultiPoly p = constant(nvars, T(1));
    for (int i = 0; i < nvars; ++i)
      for (int j = i + 1; j < nvars; ++j) p = p * (variable(nvars, j) - variable(nvars, i));
    return p;
  }

  int nvars() const { return m_; }
  const std::map<Exponents, T>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exponents& e, T c) {
    if (static_cast<int>(e.size()) != m_) throw std::invalid_argument("exponent arity mismatch");
    auto [it, inserted] = t_.try_emplace(e, T(0));
    it->second += c;
    if (ScalarTraits<T>::is_zero(it->second)) t_.erase(it);
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.m_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponents e(ea.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(MultiPoly a, const T& s) {
    MultiPoly r(a.m_);
    for (const auto& [e, c] : a.t_) r.add_term(e, c * s);
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.m_ == b.m_ && a.t_ == b.t_;
  }

  template <class U>
  U operator()(const std::vector<U>& x) const {
    U acc = U(0);
    for (const auto& [e, c] : t_) {
      U term = U(c);
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int p = 0; p < e[k]; ++p) term = term * x[k];
      acc = acc + term;
    }
    return acc;
  }

  int max_degree_in_any_variable() const {
    int d = 0;
    for (const auto& [e, c] : t_)
      for (int v : e) d = std::max(d, v);
    return d;
  }

 private:
  int m_;
  std::map<Exponents, T> t_;
};

/// One determinant block: det(rows[i](x_j)), i, j = 0..m-1.
template <class T>
struct SchurBlock {
  std::vector<Polynomial<T>> rows;
};

namespace detail {

template <class T>
bool nearly_equal(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  } else {
    return a == b;
  }
}

}  // namespace detail

/// Random-point transposition test for symmetry.
template <class T>
bool is_symmetric(const MultiPoly<T>& f, unsigned seed = 12345u) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-7, 7);
  const int m = f.nvars();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<T> x(static_cast<std::size_t>(m));
    for (auto& v : x) v = T(dist(rng)) + T(1) / T(trial + 3);
    const T base = f(x);
    for (int k = 0; k + 1 < m; ++k) {
      std::vector<T> y = x;
      std::swap(y[static_cast<std::size_t>(k)], y[static_cast<std::size_t>(k) + 1]);
      if (!detail::nearly_equal(base, f(y))) return false;
    }
  }
  return true;
}

/// Expand det(rows[i](x_j)) into a MultiPoly.
template <class T>
MultiPoly<T> expand_block(const SchurBlock<T>& b) {
  const int m = static_cast<int>(b.rows.size());
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly<T> out(m);
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    // column j carries rows[perm[j]] evaluated at x_j
    MultiPoly<T> term = MultiPoly<T>::constant(m, (inversions % 2) ? T(-1) : T(1));
    for (int j = 0; j < m; ++j) {
      const auto& row = b.rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
      MultiPoly<T> factor(m);
      for (int k = 0; k <= row.degree(); ++k) {
        typename MultiPoly<T>::Exponents e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(j)] = k;
        factor.add_term(e, row.coeff(k));
      }
      term = term * factor;
    }
    out += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Write vandermonde(m) * F as a sum of determinant blocks det(F_i(x_j)).
/// Greedy elimination of the lexicographically largest strictly increasing exponent vector.
template <class T>
std::vector<SchurBlock<T>> antisym_to_schur(const MultiPoly<T>& f) {
  if (!is_symmetric(f)) throw std::invalid_argument("antisym_to_schur: input is not symmetric");
  const int m = f.nvars();
  MultiPoly<T> rest = MultiPoly<T>::vandermonde(m) * f;
  std::vector<SchurBlock<T>> blocks;
  while (!rest.is_zero()) {
    const typename MultiPoly<T>::Exponents* lead = nullptr;
    T coeff{};
    for (auto it = rest.terms().rbegin(); it != rest.terms().rend(); ++it) {
      const auto& e = it->first;
      if (std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) == e.end()) {
        lead = &e;
        coeff = it->second;
        break;
      }
    }
    if (lead == nullptr) throw std::logic_error("antisym_to_schur: residue is not antisymmetric");
    SchurBlock<T> b;
    for (int i = 0; i < m; ++i) {
      const int power = (*lead)[static_cast<std::size_t>(i)];
      b.rows.push_back(Polynomial<T>::monomial(power, i == 0 ? coeff : T(1)));
    }
    rest -= expand_block(b);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace toda

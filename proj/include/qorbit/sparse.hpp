// Column-oriented sparse matrices over an arbitrary ring.
#pragma once

#include <map>
#include <vector>

namespace qorbit {

template <class T>
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {}
  static SparseMat identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, T(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<int, T>& col(int j) const { return col_[j]; }

  void add(int i, int j, const T& v) {
    if (is_zero(v)) return;
    auto& c = col_[j];
    auto [it, fresh] = c.try_emplace(i, v);
    if (!fresh) {
      it->second += v;
      if (is_zero(it->second)) c.erase(it);
    }
  }
  void set(int i, int j, const T& v) {
    if (is_zero(v))
      col_[j].erase(i);
    else
      col_[j][i] = v;
  }
  T get(int i, int j) const {
    auto& c = col_[j];
    auto it = c.find(i);
    return it == c.end() ? T(0) : it->second;
  }

  bool zero() const {
    for (auto& c : col_)
      if (!c.empty()) return false;
    return true;
  }
  std::size_t nnz() const {
    std::size_t s = 0;
    for (auto& c : col_) s += c.size();
    return s;
  }

  std::map<int, T> apply(const std::map<int, T>& v) const {
    std::map<int, T> r;
    for (auto& [k, x] : v)
      for (auto& [i, a] : col_[k]) {
        auto [it, fresh] = r.try_emplace(i, a * x);
        if (!fresh) it->second += a * x;
      }
    std::erase_if(r, [](const auto& p) { return is_zero(p.second); });
    return r;
  }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    SparseMat r(a.rows_, b.cols_);
    for (int j = 0; j < b.cols_; ++j) r.col_[j] = a.apply(b.col_[j]);
    return r;
  }
  SparseMat& operator+=(const SparseMat& o) {
    for (int j = 0; j < cols_; ++j)
      for (auto& [i, v] : o.col_[j]) add(i, j, v);
    return *this;
  }
  SparseMat& operator-=(const SparseMat& o) {
    for (int j = 0; j < cols_; ++j)
      for (auto& [i, v] : o.col_[j]) add(i, j, -v);
    return *this;
  }
  friend SparseMat operator+(SparseMat a, const SparseMat& b) { return a += b; }
  friend SparseMat operator-(SparseMat a, const SparseMat& b) { return a -= b; }
  SparseMat scaled(const T& s) const {
    SparseMat r(rows_, cols_);
    if (is_zero(s)) return r;
    for (int j = 0; j < cols_; ++j)
      for (auto& [i, v] : col_[j]) r.col_[j].emplace(i, v * s);
    return r;
  }
  template <class F>
  auto map(F f) const {
    SparseMat<decltype(f(std::declval<T>()))> r(rows_, cols_);
    for (int j = 0; j < cols_; ++j)
      for (auto& [i, v] : col_[j]) r.set(i, j, f(v));
    return r;
  }

 private:
  static bool is_zero(const T& v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return v == T(0);
  }
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, T>> col_ = std::vector<std::map<int, T>>(cols_);

  template <class U>
  friend class SparseMat;
};

}  // namespace qorbit

#include <mgc/multivector.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace mgc {

namespace {

std::uint32_t bit(int i) { return std::uint32_t{1} << i; }

/// Sign of xi_A ^ xi_B relative to xi_{A|B}: (-1)^{#pairs a in A, b in B with a > b}.
int wedge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

}  // namespace

MultiVector::MultiVector(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("multivector dimension out of range");
  if (degree < 0) throw std::invalid_argument("negative multivector degree");
}

MultiVector MultiVector::scalar(const DiffPoly& f) {
  if (f.dim() == 0) throw std::invalid_argument("scalar multivector needs a dimension");
  MultiVector r(f.dim(), 0);
  r.add(0, f);
  return r;
}

bool MultiVector::is_zero() const { return coeffs_.empty(); }

int levi_civita(std::span<const int> indices, int dim) {
  for (int i : indices)
    if (i < 0 || i >= dim) throw std::out_of_range("Levi-Civita index out of range");
  int inversions = 0;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      if (indices[a] == indices[b]) return 0;
      if (indices[a] > indices[b]) ++inversions;
    }
  }
  return (inversions & 1) ? -1 : 1;
}

DiffPoly MultiVector::get(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index tuple length != degree");
  std::uint32_t mask = 0;
  for (int i : indices) {
    if (i < 0 || i >= dim_) throw std::out_of_range("multivector index out of range");
    mask |= bit(i);
  }
  if (std::popcount(mask) != degree_) return DiffPoly(dim_);
  auto it = coeffs_.find(mask);
  if (it == coeffs_.end()) return DiffPoly(dim_);
  int s = levi_civita(indices, dim_);
  return s > 0 ? it->second : -it->second;
}

void MultiVector::set(std::span<const int> indices, DiffPoly value) {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index tuple length != degree");
  int s = levi_civita(indices, dim_);
  if (s == 0) throw std::invalid_argument("repeated index in multivector component");
  std::uint32_t mask = 0;
  for (int i : indices) mask |= bit(i);
  if (s < 0) value = -value;
  coeffs_.erase(mask);
  if (!value.is_zero()) coeffs_.emplace(mask, std::move(value));
}

void MultiVector::add(std::uint32_t mask, const DiffPoly& value) {
  if (value.is_zero()) return;
  if (std::popcount(mask) != degree_) throw std::invalid_argument("component mask does not match degree");
  auto [it, inserted] = coeffs_.try_emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

MultiVector& MultiVector::operator+=(const MultiVector& other) {
  if (other.is_zero()) return *this;
  if (dim_ == 0 || is_zero()) {
    if (dim_ != 0 && (dim_ != other.dim_ || degree_ != other.degree_))
      throw std::invalid_argument("multivector dimension/degree mismatch");
    return *this = other;
  }
  if (dim_ != other.dim_ || degree_ != other.degree_)
    throw std::invalid_argument("multivector dimension/degree mismatch");
  for (const auto& [mask, p] : other.coeffs_) add(mask, p);
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& other) { return *this += Rational(-1) * other; }

MultiVector& MultiVector::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
  } else {
    for (auto& [mask, p] : coeffs_) p *= c;
  }
  return *this;
}

bool operator==(const MultiVector& a, const MultiVector& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  MultiVector r(a.dim(), a.degree() + b.degree());
  if (r.degree() > r.dim()) return r;
  std::map<std::uint32_t, PolyBuilder> acc;
  for (const auto& [ma, pa] : a.components()) {
    for (const auto& [mb, pb] : b.components()) {
      if (ma & mb) continue;
      auto it = acc.try_emplace(ma | mb, a.dim()).first;
      it->second.add_product(pa, pb, wedge_sign(ma, mb));
    }
  }
  for (auto& [mask, builder] : acc) r.add(mask, std::move(builder).build());
  return r;
}

MultiVector right_xi_derivative(const MultiVector& a, int k) {
  if (a.degree() == 0) return MultiVector(a.dim(), 0);
  MultiVector r(a.dim(), a.degree() - 1);
  for (const auto& [mask, p] : a.components()) {
    if (!(mask & bit(k))) continue;
    // Move xi_k to the right end past the indices greater than k.
    int after = std::popcount(mask >> (k + 1));
    r.add(mask & ~bit(k), (after & 1) ? -p : p);
  }
  return r;
}

MultiVector partial(const MultiVector& a, int k) {
  MultiVector r(a.dim(), a.degree());
  for (const auto& [mask, p] : a.components()) r.add(mask, dp_partial(p, k));
  return r;
}

MultiVector schouten(const MultiVector& a, const MultiVector& b, SchoutenSign sign) {
  if (a.dim() != b.dim()) throw std::invalid_argument("schouten: dimension mismatch");
  const int p = a.degree();
  const int q = b.degree();
  const int d = a.dim();
  if (p + q - 1 < 0 || p + q - 1 > d) return MultiVector(d, std::max(p + q - 1, 0));
  MultiVector r(d, p + q - 1);
  const int graded = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
  for (int k = 0; k < d; ++k) {
    if (p > 0) r += wedge(right_xi_derivative(a, k), partial(b, k));
    if (q == 0) continue;
    MultiVector second = wedge(right_xi_derivative(b, k), partial(a, k));
    if (graded > 0) {
      r -= second;
    } else {
      r += second;
    }
  }
  if (sign == SchoutenSign::flipped) r *= -1;
  return r;
}

MultiVector jacobiator(const MultiVector& p, SchoutenSign sign) {
  if (p.degree() != 2) throw std::invalid_argument("jacobiator expects a bi-vector");
  MultiVector r = schouten(p, p, sign);
  r *= Rational(1, 2);
  return r;
}

MultiVector density_multivector(int dim) {
  MultiVector r(dim, dim);
  r.add((std::uint32_t{1} << dim) - 1, DiffPoly::variable(dim, JetVar::rho()));
  return r;
}

MultiVector nambu_bivector(int dim, std::vector<int> casimir_labels) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("Nambu bi-vector needs 2 <= d <= 8");
  if (casimir_labels.empty()) {
    casimir_labels.resize(dim - 2);
    std::iota(casimir_labels.begin(), casimir_labels.end(), 1);
  }
  if (static_cast<int>(casimir_labels.size()) != dim - 2)
    throw std::invalid_argument(fmt::format("Nambu bi-vector on R^{} needs {} Casimirs", dim, dim - 2));
  MultiVector r(dim, 2);
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::uint32_t, std::vector<Term>> acc;
  do {
    const int i = perm[dim - 2];
    const int j = perm[dim - 1];
    if (i > j) continue;  // the (j, i) ordering contributes the same component with the same sign
    Monomial m{JetVar::rho()};
    for (int l = 0; l < dim - 2; ++l) m.push_back(JetVar::casimir(casimir_labels[l]).derived(perm[l]));
    int s = levi_civita(perm, dim);
    acc[bit(i) | bit(j)].push_back({std::move(m), Rational(s)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& [mask, terms] : acc) r.add(mask, DiffPoly::from_terms(dim, std::move(terms)));
  return r;
}

MultiVector plane_bivector_u() {
  MultiVector r(2, 2);
  r.add(0b11, DiffPoly::variable(2, JetVar::u()));
  return r;
}

MultiVector reduce_dimension(const MultiVector& a) {
  const int d = a.dim();
  MultiVector r(d - 1, a.degree());
  for (const auto& [mask, p] : a.components()) {
    DiffPoly reduced = dp_substitute_reduction(p);
    if (mask & bit(d - 1)) {
      if (!reduced.is_zero())
        throw std::invalid_argument("reduction: component along the dropped coordinate does not vanish");
      continue;
    }
    r.add(mask, reduced);
  }
  return r;
}

std::string to_string(const MultiVector& a) {
  std::string s;
  for (const auto& [mask, p] : a.components()) {
    std::string key;
    for (int i = 0; i < a.dim(); ++i)
      if (mask & bit(i)) key += std::to_string(i + 1);
    if (key.empty()) key = "0";
    s += fmt::format("{}: {}\n", key, to_string(p));
  }
  return s;
}

}  // namespace mgc

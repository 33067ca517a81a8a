#include "galoisforge/fieldext.hpp"

#include <algorithm>
#include <set>

#include "galoisforge/error.hpp"

namespace galoisforge::fieldext {

namespace {

int mod(long long a, int p)
{ return static_cast<int>(((a % p) + p) % p); }

int inv_mod(int a, int p)
{
  for (int b = 1; b < p; ++b)
    if (a * b % p == 1)
      return b;
  throw InvalidField("no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
}

void trim(Poly &a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

Poly poly_mul(Poly const &a, Poly const &b, int p)
{
  if (a.empty() || b.empty())
    return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod(c[i + j] + static_cast<long long>(a[i]) * b[j], p);
  trim(c);
  return c;
}

Poly poly_rem(Poly a, Poly const &m, int p)
{
  trim(a);
  int lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    int factor = mod(static_cast<long long>(a.back()) * lead_inv, p);
    auto shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = mod(a[shift + i] - static_cast<long long>(factor) * m[i], p);
    trim(a);
  }
  return a;
}

bool is_prime(int p)
{
  if (p < 2)
    return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

// Base-p digits of k, least significant first, exactly `len` of them.
std::vector<int> digits(long long k, int p, int len)
{
  std::vector<int> out(len);
  for (int i = 0; i < len; ++i) {
    out[i] = static_cast<int>(k % p);
    k /= p;
  }
  return out;
}

long long ipow(long long b, int e)
{
  long long r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

} // namespace

bool is_irreducible(int p, Poly const &modulus)
{
  Poly m = modulus;
  trim(m);
  int n = static_cast<int>(m.size()) - 1;
  if (n < 1)
    return false;
  for (int d = 1; d <= n / 2; ++d) {
    for (long long k = 0; k < ipow(p, d); ++k) {
      Poly f = digits(k, p, d);
      f.push_back(1);
      if (poly_rem(m, f, p).empty())
        return false;
    }
  }
  return true;
}

Poly find_irreducible(int p, int n)
{
  if (!is_prime(p) || n < 1)
    throw InvalidField("need a prime p and a positive degree");
  for (long long k = 0; k < ipow(p, n); ++k) {
    Poly f = digits(k, p, n);
    f.push_back(1);
    if (is_irreducible(p, f))
      return f;
  }
  throw InvalidField("no irreducible polynomial found");
}

FiniteField::FiniteField(int p, Poly modulus, Caps const &caps) : _p(p), _modulus(std::move(modulus))
{
  if (!is_prime(p))
    throw InvalidField("characteristic " + std::to_string(p) + " is not prime");
  for (int c : _modulus)
    if (c < 0 || c >= p)
      throw InvalidField("modulus coefficient " + std::to_string(c) + " is not in 0.." +
                         std::to_string(p - 1));
  if (_modulus.empty() || _modulus.back() != 1)
    throw InvalidField("modulus must be monic");
  _n = static_cast<int>(_modulus.size()) - 1;
  if (_n < 1)
    throw InvalidField("modulus must have positive degree");
  long long size = ipow(p, _n);
  if (size > static_cast<long long>(caps.field_size))
    throw CapExceeded("field_size", static_cast<long long>(caps.field_size), size);
  if (!is_irreducible(p, _modulus))
    throw InvalidField("modulus is reducible over F_" + std::to_string(p));
  _size = static_cast<int>(size);

  _add.assign(_size, std::vector<int>(_size));
  _mul.assign(_size, std::vector<int>(_size));
  for (int a = 0; a < _size; ++a) {
    auto ca = digits(a, p, _n);
    for (int b = 0; b < _size; ++b) {
      auto cb = digits(b, p, _n);
      std::vector<int> s(_n);
      for (int i = 0; i < _n; ++i)
        s[i] = (ca[i] + cb[i]) % p;
      _add[a][b] = from_coeffs(s);
      Poly pa = ca, pb = cb;
      trim(pa);
      trim(pb);
      _mul[a][b] = from_coeffs(poly_mul(pa, pb, p));
    }
  }
}

int FiniteField::neg(int a) const
{
  auto c = coeffs(a);
  for (int &x : c)
    x = mod(-x, _p);
  return from_coeffs(c);
}

int FiniteField::inv(int a) const
{
  if (a == 0)
    throw InvalidField("zero has no inverse");
  for (int b = 1; b < _size; ++b)
    if (_mul[a][b] == 1)
      return b;
  throw InvalidField("element " + std::to_string(a) + " has no inverse");
}

int FiniteField::pow(int a, long long k) const
{
  int r = 1;
  int base = a;
  while (k > 0) {
    if (k & 1)
      r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

std::vector<int> FiniteField::coeffs(int a) const
{ return digits(a, _p, _n); }

int FiniteField::from_coeffs(std::vector<int> const &c) const
{
  Poly a(c.begin(), c.end());
  for (int &x : a)
    x = mod(x, _p);
  a = poly_rem(a, _modulus, _p);
  int idx = 0;
  for (std::size_t i = a.size(); i-- > 0;)
    idx = idx * _p + a[i];
  return idx;
}

int FiniteField::generator() const
{ return from_coeffs({0, 1}); }

int FiniteField::eval(std::vector<int> const &poly, int a) const
{
  int r = 0;
  for (std::size_t i = poly.size(); i-- > 0;)
    r = add(mul(r, a), poly[i]);
  return r;
}

void FiniteField::check_axioms() const
{
  auto fail = [](std::string const &why) { throw InvalidField(why); };
  for (int a = 0; a < _size; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a)
      fail("identity law fails");
    if (add(a, neg(a)) != 0)
      fail("additive inverse fails");
    if (a != 0 && mul(a, inv(a)) != 1)
      fail("multiplicative inverse fails");
    for (int b = 0; b < _size; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
        fail("not commutative");
      for (int c = 0; c < _size; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c)) || mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail("not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          fail("not distributive");
      }
    }
  }
}

FieldExtension make_extension(int p, int n, std::optional<Poly> modulus, Caps const &caps)
{
  if (!is_prime(p))
    throw InvalidField("characteristic " + std::to_string(p) + " is not prime");
  if (n < 1)
    throw InvalidField("degree must be positive");
  long long size = ipow(p, n);
  if (size > static_cast<long long>(caps.field_size))
    throw CapExceeded("field_size", static_cast<long long>(caps.field_size), size);
  Poly m = modulus ? *modulus : find_irreducible(p, n);
  if (static_cast<int>(m.size()) - 1 != n)
    throw InvalidField("modulus degree " + std::to_string(static_cast<int>(m.size()) - 1) +
                       " differs from n = " + std::to_string(n));
  return FieldExtension{FiniteField(p, std::move(m), caps)};
}

namespace {

int frob_power(FiniteField const &f, int a, int k)
{
  for (int i = 0; i < k; ++i)
    a = f.pow(a, f.p());
  return a;
}

} // namespace

AutGroup aut_group(FieldExtension const &ext, Caps const &caps)
{
  auto const &L = ext.L;
  if (static_cast<std::size_t>(L.size()) > caps.field_size)
    throw CapExceeded("field_size", static_cast<long long>(caps.field_size), L.size());
  AutGroup out;
  out.group = algebra::cyclic_group(ext.n());
  std::set<std::vector<int>> distinct;
  for (int k = 0; k < ext.n(); ++k) {
    std::vector<int> t(L.size());
    for (int a = 0; a < L.size(); ++a)
      t[a] = frob_power(L, a, k);
    for (int a = 0; a < L.size(); ++a) {
      if (a < L.p() && t[a] != a)
        throw Error("InternalError", "Frobenius moves a prime-field element");
      for (int b = 0; b < L.size(); ++b)
        if (t[L.add(a, b)] != L.add(t[a], t[b]) || t[L.mul(a, b)] != L.mul(t[a], t[b]))
          throw Error("InternalError", "Frobenius power is not a ring map");
    }
    distinct.insert(t);
    out.automorphisms.push_back(std::move(t));
  }
  for (int a = 0; a < L.size(); ++a)
    if (frob_power(L, a, ext.n()) != a)
      throw Error("InternalError", "Frobenius has the wrong order");
  if (static_cast<int>(distinct.size()) != ext.n())
    throw Error("InternalError", "Frobenius powers are not distinct");
  return out;
}

std::vector<int> tensor_trivialize(FieldExtension const &ext)
{
  auto const &L = ext.L;
  std::vector<int> m;
  for (int c : L.modulus())
    m.push_back(L.scalar(c));
  std::vector<int> roots;
  for (int r = 0; r < L.size(); ++r)
    if (L.eval(m, r) == 0)
      roots.push_back(r);
  if (static_cast<int>(roots.size()) < ext.n())
    throw NotSeparable("modulus has " + std::to_string(roots.size()) + " roots, expected " +
                       std::to_string(ext.n()));
  return roots;
}

TensorElement tensor(FieldExtension const &ext, int a, int b)
{
  auto c = ext.L.coeffs(a);
  TensorElement t(ext.n());
  for (int i = 0; i < ext.n(); ++i)
    t[i] = ext.L.mul(b, ext.L.scalar(c[i]));
  return t;
}

TensorElement tensor_mul(FieldExtension const &ext, TensorElement const &s, TensorElement const &t)
{
  auto const &L = ext.L;
  int n = ext.n();
  std::vector<int> prod(2 * n - 1, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      prod[i + j] = L.add(prod[i + j], L.mul(s[i], t[j]));
  // Reduce by the monic modulus with coefficients in F_p.
  auto const &m = L.modulus();
  for (int d = 2 * n - 2; d >= n; --d) {
    int c = prod[d];
    if (c == 0)
      continue;
    prod[d] = 0;
    for (int i = 0; i < n; ++i)
      prod[d - n + i] = L.sub(prod[d - n + i], L.mul(c, L.scalar(m[i])));
  }
  prod.resize(n);
  return prod;
}

std::vector<int> phi(FieldExtension const &ext, int a, int b)
{
  std::vector<int> f(ext.n());
  for (int k = 0; k < ext.n(); ++k)
    f[k] = ext.L.mul(frob_power(ext.L, a, k), b);
  return f;
}

namespace {

// Evaluates y at Frob^k(x).
std::vector<int> evaluate(FieldExtension const &ext, TensorElement const &t)
{
  std::vector<int> out(ext.n());
  for (int k = 0; k < ext.n(); ++k)
    out[k] = ext.L.eval(t, frob_power(ext.L, ext.L.generator(), k));
  return out;
}

std::vector<int> pointwise(FieldExtension const &ext, std::vector<int> f, std::vector<int> const &g,
                           bool multiply)
{
  for (std::size_t k = 0; k < f.size(); ++k)
    f[k] = multiply ? ext.L.mul(f[k], g[k]) : ext.L.add(f[k], g[k]);
  return f;
}

std::vector<int> basis(FieldExtension const &ext)
{
  std::vector<int> out;
  for (int i = 0; i < ext.n(); ++i)
    out.push_back(ext.L.pow(ext.L.generator(), i));
  return out;
}

} // namespace

PhiCheck check_phi(FieldExtension const &ext)
{
  auto const &L = ext.L;
  PhiCheck c;
  auto B = basis(ext);

  c.multiplicative = true;
  for (int a : B)
    for (int b : B)
      for (int a2 : B)
        for (int b2 : B) {
          auto prod = tensor_mul(ext, tensor(ext, a, b), tensor(ext, a2, b2));
          if (prod != tensor(ext, L.mul(a, a2), L.mul(b, b2)) ||
              evaluate(ext, prod) != pointwise(ext, phi(ext, a, b), phi(ext, a2, b2), true))
            c.multiplicative = false;
        }

  c.bilinear = true;
  for (int a = 0; a < L.size() && c.bilinear; ++a)
    for (int a2 = 0; a2 < L.size(); ++a2)
      for (int b : B) {
        if (phi(ext, L.add(a, a2), b) != pointwise(ext, phi(ext, a, b), phi(ext, a2, b), false) ||
            phi(ext, b, L.add(a, a2)) != pointwise(ext, phi(ext, b, a), phi(ext, b, a2), false))
          c.bilinear = false;
      }
  for (int s = 0; s < L.p() && c.bilinear; ++s)
    for (int a = 0; a < L.size(); ++a)
      for (int b : B)
        if (phi(ext, L.mul(s, a), b) != phi(ext, a, L.mul(s, b)))
          c.bilinear = false;

  c.matches_evaluation = true;
  for (int a = 0; a < L.size() && c.matches_evaluation; ++a)
    for (int b = 0; b < L.size(); ++b)
      if (phi(ext, a, b) != evaluate(ext, tensor(ext, a, b))) {
        c.matches_evaluation = false;
        break;
      }

  std::vector<std::vector<int>> rows;
  for (int a : B)
    for (int b : B) {
      std::vector<int> row;
      for (int v : phi(ext, a, b))
        for (int x : L.coeffs(v))
          row.push_back(x);
      rows.push_back(std::move(row));
    }
  c.rank = rank_mod_p(rows, L.p());
  return c;
}

Subfield fixed_field(FieldExtension const &ext, std::vector<int> const &h)
{
  auto const &L = ext.L;
  int n = ext.n();
  auto cyc = algebra::cyclic_group(n);
  auto sorted = h;
  std::sort(sorted.begin(), sorted.end());
  if (!algebra::is_subgroup(cyc, sorted))
    throw NotASubgroup("not a subgroup of Z" + std::to_string(n));
  Subfield f;
  f.subgroup = sorted;
  for (int a = 0; a < L.size(); ++a)
    if (std::all_of(sorted.begin(), sorted.end(),
                    [&](int k) { return frob_power(L, a, k) == a; }))
      f.elements.push_back(a);
  int d = 0;
  for (long long s = 1; s < static_cast<long long>(f.elements.size()); s *= L.p())
    ++d;
  f.degree = d;

  // Minimal polynomial of x over F, by search among monic polynomials of
  // degree e with coefficients in F.
  int e = n / std::max(d, 1);
  auto const &F = f.elements;
  auto fsize = static_cast<long long>(F.size());
  long long combos = ipow(fsize, e);
  for (long long k = 0; k < combos && f.minimal_polynomial.empty(); ++k) {
    Poly m(e + 1, 1);
    long long r = k;
    for (int i = 0; i < e; ++i) {
      m[i] = F[r % fsize];
      r /= fsize;
    }
    if (L.eval(m, L.generator()) == 0)
      f.minimal_polynomial = m;
  }

  // Expand every element over F in the basis 1, x, ..., x^(e-1). In
  // L ⊗_F L = L[y]/(m_F) the map a -> a⊗1 sends a to its expansion in y and
  // a -> 1⊗a sends it to a constant, so they agree exactly when the
  // expansion is constant.
  std::vector<int> equalizer;
  auto xpow = basis(ext);
  for (long long k = 0; k < combos; ++k) {
    long long r = k;
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i) {
      c[i] = F[r % fsize];
      r /= fsize;
    }
    int a = 0;
    for (int i = 0; i < e; ++i)
      a = L.add(a, L.mul(c[i], xpow[i]));
    bool constant = std::all_of(c.begin() + 1, c.end(), [](int v) { return v == 0; });
    if (constant && a == c[0])
      equalizer.push_back(a);
  }
  std::sort(equalizer.begin(), equalizer.end());
  f.equalizer_agrees = equalizer == f.elements && combos == L.size() &&
                       static_cast<int>(f.minimal_polynomial.size()) == e + 1;
  return f;
}

std::vector<std::vector<int>> subfields_by_closure(FieldExtension const &ext)
{
  auto const &L = ext.L;
  std::set<std::vector<int>> found;
  for (int a = 0; a < L.size(); ++a) {
    std::vector<char> in(L.size(), 0);
    in[0] = in[1 % L.size()] = in[a] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < L.size(); ++x)
        for (int y = 0; y < L.size(); ++y)
          if (in[x] && in[y])
            for (int z : {L.add(x, y), L.mul(x, y)})
              if (!in[z]) {
                in[z] = 1;
                grew = true;
              }
    }
    std::vector<int> s;
    for (int x = 0; x < L.size(); ++x)
      if (in[x])
        s.push_back(x);
    found.insert(s);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](auto const &a, auto const &b) { return a.size() < b.size(); });
  return out;
}

HopfCheck hopf_invariants(FieldExtension const &ext)
{
  auto const &L = ext.L;
  int n = ext.n();
  int p = L.p();
  auto B = basis(ext);
  // A[k][i] = coefficient k of Frob(x^i).
  std::vector<std::vector<int>> A(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    auto c = L.coeffs(frob_power(L, B[i], 1));
    for (int k = 0; k < n; ++k)
      A[k][i] = c[k];
  }
  // Unknown c_ij, the coefficient of x^i ⊗ x^j, at column i*n + j.
  std::vector<std::vector<int>> diag, one;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      std::vector<int> rd(n * n, 0), ro(n * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rd[i * n + j] = mod(rd[i * n + j] + A[k][i] * A[l][j], p);
          if (j == l)
            ro[i * n + j] = mod(ro[i * n + j] + A[k][i], p);
        }
      rd[k * n + l] = mod(rd[k * n + l] - 1, p);
      ro[k * n + l] = mod(ro[k * n + l] - 1, p);
      diag.push_back(std::move(rd));
      one.push_back(std::move(ro));
    }

  auto image = [&](std::vector<int> const &c) {
    std::vector<int> f(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (c[i * n + j] != 0)
          f = pointwise(ext, f, phi(ext, B[i], L.mul(L.scalar(c[i * n + j]), B[j])), false);
    return f;
  };

  HopfCheck h;
  auto dn = nullspace_mod_p(diag, n * n, p);
  h.diagonal_invariants_dim = static_cast<int>(dn.size());
  std::vector<std::vector<int>> values;
  bool in_k = true;
  for (auto const &c : dn) {
    auto f = image(c);
    for (int v : f)
      in_k = in_k && L.is_scalar(v);
    values.push_back(f);
  }
  h.diagonal_image_is_maps_to_k =
    in_k && h.diagonal_invariants_dim == n && rank_mod_p(values, p) == n;

  auto on = nullspace_mod_p(one, n * n, p);
  h.one_sided_invariants_dim = static_cast<int>(on.size());
  bool constant = true;
  for (auto const &c : on) {
    auto f = image(c);
    constant = constant && std::all_of(f.begin(), f.end(), [&](int v) { return v == f[0]; });
  }
  h.one_sided_image_is_constants = constant && h.one_sided_invariants_dim == n;
  return h;
}

FieldCorrespondence field_correspondence(FieldExtension const &ext, Caps const &caps)
{
  FieldCorrespondence fc;
  fc.aut = aut_group(ext, caps);
  fc.subgroups = algebra::subgroups(fc.aut.group, caps);
  int n = ext.n();
  std::vector<std::string> sub_labels, field_labels;
  for (auto const &h : fc.subgroups) {
    fc.fields.push_back(fixed_field(ext, h));
    sub_labels.push_back(correspondence::subgroup_label({h}));
    field_labels.push_back("F_" + std::to_string(fc.fields.back().elements.size()));
    fc.bijection.emplace_back(static_cast<int>(fc.bijection.size()),
                              static_cast<int>(fc.bijection.size()));
  }
  auto contained = [](std::vector<int> const &a, std::vector<int> const &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  auto k = static_cast<int>(fc.subgroups.size());
  auto make = [&](std::vector<std::string> labels, auto const &le) {
    correspondence::Lattice l;
    l.labels = std::move(labels);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (le(i, j))
          l.leq.emplace_back(i, j);
    return l;
  };
  fc.subgroup_lattice = make(sub_labels, [&](int i, int j) {
    return contained(fc.subgroups[i], fc.subgroups[j]);
  });
  fc.field_lattice = make(field_labels, [&](int i, int j) {
    return contained(fc.fields[i].elements, fc.fields[j].elements);
  });

  fc.order_reversal_verified = true;
  fc.matches_divisor_lattice = true;
  fc.degrees_multiply = true;
  std::set<int> orders;
  for (int i = 0; i < k; ++i) {
    int hi = static_cast<int>(fc.subgroups[i].size());
    orders.insert(hi);
    if (n % hi != 0 || fc.fields[i].elements.size() != static_cast<std::size_t>(ipow(ext.p(), n / hi)))
      fc.matches_divisor_lattice = false;
    int e = static_cast<int>(fc.fields[i].minimal_polynomial.size()) - 1;
    if (e != hi || e * fc.fields[i].degree != n)
      fc.degrees_multiply = false;
    for (int j = 0; j < k; ++j) {
      int hj = static_cast<int>(fc.subgroups[j].size());
      bool sub = contained(fc.subgroups[i], fc.subgroups[j]);
      if (sub != contained(fc.fields[j].elements, fc.fields[i].elements))
        fc.order_reversal_verified = false;
      if (sub != (hj % hi == 0))
        fc.matches_divisor_lattice = false;
    }
  }
  int divisors = 0;
  for (int d = 1; d <= n; ++d)
    divisors += n % d == 0;
  if (static_cast<int>(orders.size()) != divisors || k != divisors)
    fc.matches_divisor_lattice = false;

  std::set<std::vector<int>> fixed, closed;
  for (auto const &f : fc.fields)
    fixed.insert(f.elements);
  for (auto const &s : subfields_by_closure(ext))
    closed.insert(s);
  fc.matches_closure_enumeration = fixed == closed;
  fc.hopf = hopf_invariants(ext);
  return fc;
}

int rank_mod_p(std::vector<std::vector<int>> rows, int p)
{
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (mod(rows[r][c], p) != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0)
      continue;
    std::swap(rows[rank], rows[pivot]);
    int iv = inv_mod(mod(rows[rank][c], p), p);
    for (auto &v : rows[rank])
      v = mod(static_cast<long long>(v) * iv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank)
        continue;
      int f = mod(rows[r][c], p);
      if (f == 0)
        continue;
      for (std::size_t j = 0; j < cols; ++j)
        rows[r][j] = mod(rows[r][j] - static_cast<long long>(f) * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<int>> nullspace_mod_p(std::vector<std::vector<int>> rows, int cols, int p)
{
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (mod(rows[r][c], p) != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0)
      continue;
    std::swap(rows[rank], rows[pivot]);
    int iv = inv_mod(mod(rows[rank][c], p), p);
    for (auto &v : rows[rank])
      v = mod(static_cast<long long>(v) * iv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank)
        continue;
      int f = mod(rows[r][c], p);
      if (f == 0)
        continue;
      for (int j = 0; j < cols; ++j)
        rows[r][j] = mod(rows[r][j] - static_cast<long long>(f) * rows[rank][j], p);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::vector<int>> out;
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col)
    is_pivot[c] = 1;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<int> v(cols, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r)
      v[pivot_col[r]] = mod(-rows[r][free], p);
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace galoisforge::fieldext

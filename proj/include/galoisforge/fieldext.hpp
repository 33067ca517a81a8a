#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galoisforge/algebra.hpp"
#include "galoisforge/caps.hpp"
#include "galoisforge/correspondence.hpp"

// Finite fields F_p[x]/(m) as extensions of F_p: Frobenius, the tensor
// trivialization and fixed fields.
namespace galoisforge::fieldext {

// Polynomials over F_p, little-endian coefficients, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<int>;

bool is_irreducible(int p, Poly const &modulus);

// The monic irreducible of degree n whose lower coefficients, read as a base-p
// number (constant term least significant), are smallest.
Poly find_irreducible(int p, int n);

// Element a is stored as the index sum_i c_i p^i of its coefficient vector.
class FiniteField
{
public:
  FiniteField() = default;
  // Throws InvalidField for a non-prime p, a non-monic or reducible modulus;
  // CapExceeded("field_size") when p^n exceeds the cap.
  FiniteField(int p, Poly modulus, Caps const &caps = {});

  int p() const
  { return _p; }

  int degree() const
  { return _n; }

  int size() const
  { return _size; }

  Poly const &modulus() const
  { return _modulus; }

  int add(int a, int b) const
  { return _add[a][b]; }

  int mul(int a, int b) const
  { return _mul[a][b]; }

  int neg(int a) const;
  int sub(int a, int b) const
  { return add(a, neg(b)); }
  int inv(int a) const;
  int pow(int a, long long k) const;

  std::vector<int> coeffs(int a) const;
  int from_coeffs(std::vector<int> const &c) const;

  // The class of x.
  int generator() const;

  // The image of c in F_p.
  int scalar(int c) const
  { return from_coeffs({((c % _p) + _p) % _p}); }

  bool is_scalar(int a) const
  { return a < _p; }

  // Value at a of a polynomial with coefficients in this field.
  int eval(std::vector<int> const &poly, int a) const;

  // Exhaustive check of the field axioms; throws InvalidField.
  void check_axioms() const;

private:
  int _p = 2;
  int _n = 1;
  int _size = 2;
  Poly _modulus;
  std::vector<std::vector<int>> _add, _mul;
};

struct FieldExtension
{
  FiniteField L; // over the prime field K = F_p, embedded as constants
  int p() const
  { return L.p(); }
  int n() const
  { return L.degree(); }
};

// Uses find_irreducible when no modulus is given.
FieldExtension make_extension(int p, int n, std::optional<Poly> modulus = std::nullopt,
                              Caps const &caps = {});

struct AutGroup
{
  algebra::FiniteGroup group;                // Z_n, element k acting as Frob^k
  std::vector<std::vector<int>> automorphisms; // element tables
};

AutGroup aut_group(FieldExtension const &ext, Caps const &caps = {});

// All roots of the modulus in L, ascending; throws NotSeparable if fewer
// than n.
std::vector<int> tensor_trivialize(FieldExtension const &ext);

// An element of L[y]/(m): n coefficients in L. The tensor a⊗b is identified
// with b·a(y), a read as a polynomial over F_p.
using TensorElement = std::vector<int>;

TensorElement tensor(FieldExtension const &ext, int a, int b);
TensorElement tensor_mul(FieldExtension const &ext, TensorElement const &s, TensorElement const &t);

// f(g) = g(a)·b for g in the automorphism group (indexed as in aut_group).
std::vector<int> phi(FieldExtension const &ext, int a, int b);

struct PhiCheck
{
  bool multiplicative = false; // on basis tensors
  bool bilinear = false;
  bool matches_evaluation = false; // phi agrees with evaluating y at the roots
  int rank = 0;                    // over F_p, of phi on the n^2 basis tensors
};

PhiCheck check_phi(FieldExtension const &ext);

struct Subfield
{
  std::vector<int> subgroup;
  std::vector<int> elements; // ascending
  int degree = 0;            // over F_p
  Poly minimal_polynomial;   // of x over the subfield, coefficients in L, monic
  bool equalizer_agrees = false;
};

// The invariants of H, cross-checked against the equalizer of the two maps
// L -> L ⊗_F L. Throws NotASubgroup.
Subfield fixed_field(FieldExtension const &ext, std::vector<int> const &h);

// Every subfield, found by closing each element under the field operations.
std::vector<std::vector<int>> subfields_by_closure(FieldExtension const &ext);

struct HopfCheck
{
  int diagonal_invariants_dim = 0;  // over F_p
  bool diagonal_image_is_maps_to_k = false;
  int one_sided_invariants_dim = 0;
  bool one_sided_image_is_constants = false;
};

// Invariants of L ⊗_K L under g(a⊗b) = g(a)⊗g(b) and under g(a)⊗b.
HopfCheck hopf_invariants(FieldExtension const &ext);

struct FieldCorrespondence
{
  AutGroup aut;
  std::vector<std::vector<int>> subgroups;
  std::vector<Subfield> fields; // fields[i] is fixed by subgroups[i]
  correspondence::Lattice subgroup_lattice;
  correspondence::Lattice field_lattice; // ordered by inclusion
  std::vector<std::pair<int, int>> bijection;
  bool order_reversal_verified = false;
  bool matches_divisor_lattice = false;
  bool matches_closure_enumeration = false;
  bool degrees_multiply = false;
  HopfCheck hopf;
};

FieldCorrespondence field_correspondence(FieldExtension const &ext, Caps const &caps = {});

// Rank of a matrix over F_p (rows of length `cols`).
int rank_mod_p(std::vector<std::vector<int>> rows, int p);

// Basis of {v | M v = 0} over F_p.
std::vector<std::vector<int>> nullspace_mod_p(std::vector<std::vector<int>> rows, int cols, int p);

} // namespace galoisforge::fieldext

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flagalg {

// F_q arithmetic for q = p^e, e <= 3, with precomputed tables.  Elements are
// codes 0..q-1 encoding polynomial coefficients base p: code = c0 + c1*p + ...
class Field {
 public:
  // Default moduli: F4: t^2+t+1, F8: t^3+t+1, F9: t^2+1.
  static Field with_default_modulus(long q);
  // modulus has e+1 coefficients c0..ce over F_p, monic, irreducible.
  Field(long p, long e, std::vector<int> modulus);

  long p() const { return p_; }
  long e() const { return e_; }
  long q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const;
  // Tr_{F_q/F_p}(x) = x + x^p + ... + x^{p^{e-1}}, returned in [0, p).
  int trace(int a) const { return trace_[a]; }
  // Embeds c of F_p (the coefficient of 1).
  int from_prime(long c) const;

  std::vector<int> to_coeffs(int a) const;
  int from_coeffs(const std::vector<int>& c) const;

  std::string element_str(int a) const;            // "3" or "c0,c1"
  int parse_element(const std::string& s) const;   // inverse of element_str

 private:
  long p_, e_, q_;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_, trace_;
};

int trace_to_prime(const Field& F, int x);

// Matrix over F_q with optional 1-based row/column labels (used for the
// S_mu x T_mu matrix forms).  Entries are element codes.
struct FqMatrix {
  const Field* F = nullptr;
  int nrows = 0, ncols = 0;
  std::vector<int> row_labels, col_labels;  // empty means 1..n
  std::vector<uint8_t> a;                   // row-major

  FqMatrix() = default;
  FqMatrix(const Field& field, int r, int c)
      : F(&field), nrows(r), ncols(c), a(static_cast<size_t>(r) * c, 0) {}

  uint8_t& at(int i, int j) { return a[static_cast<size_t>(i) * ncols + j]; }
  uint8_t at(int i, int j) const { return a[static_cast<size_t>(i) * ncols + j]; }

  int row_label(int i) const { return row_labels.empty() ? i + 1 : row_labels[i]; }
  int col_label(int j) const { return col_labels.empty() ? j + 1 : col_labels[j]; }
  int row_index(int label) const;
  int col_index(int label) const;

  bool operator==(const FqMatrix& o) const {
    return nrows == o.nrows && ncols == o.ncols && a == o.a;
  }
};

long rank(const FqMatrix& M);

// Submatrix keeping the given row/column labels (which must be present).
FqMatrix submatrix_by_labels(const FqMatrix& M, const std::vector<int>& rows,
                             const std::vector<int>& cols);

// Rows of B are independent vectors of F_q^N.  Returns the unique equivalent
// basis where each row's highest-index nonzero coordinate ("bottom" pivot)
// is 1, pivots are distinct, and every row vanishes at the other pivots.
// Rows come back sorted by pivot.  Throws on dependent rows.
FqMatrix bottom_pivot_reduce(const FqMatrix& B);

// 1-based pivot positions of a bottom-pivot-reduced matrix, ascending.
std::vector<int> bottom_pivots(const FqMatrix& canon);

std::string format_matrix(const FqMatrix& M);
FqMatrix parse_matrix(const Field& F, const std::string& text);

}  // namespace flagalg

#pragma once

// Multivariate polynomials over doubles, monomial bases and Lie derivatives.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace plateau {

// Exponent of each variable in a monomial.
class ExponentTuple {
 public:
  ExponentTuple() = default;
  explicit ExponentTuple(std::size_t variable_count) : exponents_(variable_count, 0) {}
  ExponentTuple(std::initializer_list<unsigned> exponents) : exponents_(exponents) {}
  explicit ExponentTuple(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}

  // x_index as a monomial.
  static ExponentTuple unit(std::size_t variable_count, std::size_t index);

  std::size_t size() const noexcept { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned degree() const noexcept;
  std::span<const unsigned> exponents() const noexcept { return exponents_; }

  ExponentTuple operator+(const ExponentTuple& other) const;

  // Human-readable form such as "x1^2*x3" (or "1" for the constant).
  std::string to_string() const;

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;

 private:
  std::vector<unsigned> exponents_;
};

// Graded-lexicographic order: lower total degree first; within a degree, the
// tuple with the larger leading exponent comes first (x1^2 < x1*x2 < x2^2).
struct GradedLexLess {
  bool operator()(const ExponentTuple& a, const ExponentTuple& b) const noexcept;
};

// Coefficients with |c| below this after arithmetic are dropped.
inline constexpr double kCoefficientDropThreshold = 1e-15;

class MultivariatePolynomial {
 public:
  using TermMap = std::map<ExponentTuple, double, GradedLexLess>;

  explicit MultivariatePolynomial(std::size_t variable_count);
  MultivariatePolynomial(std::size_t variable_count, TermMap terms);

  static MultivariatePolynomial constant(std::size_t variable_count, double value);
  static MultivariatePolynomial variable(std::size_t variable_count, std::size_t index);

  std::size_t variable_count() const noexcept { return variable_count_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Total degree; 0 for the zero polynomial.
  unsigned degree() const noexcept;
  double coefficient(const ExponentTuple& monomial) const;

  double evaluate(std::span<const double> point) const;
  MultivariatePolynomial derivative(std::size_t variable) const;

  MultivariatePolynomial operator+(const MultivariatePolynomial& other) const;
  MultivariatePolynomial operator-(const MultivariatePolynomial& other) const;
  MultivariatePolynomial operator*(const MultivariatePolynomial& other) const;
  MultivariatePolynomial operator*(double scale) const;
  friend MultivariatePolynomial operator*(double scale, const MultivariatePolynomial& p) {
    return p * scale;
  }

  friend bool operator==(const MultivariatePolynomial&, const MultivariatePolynomial&) = default;

  // One "c e1 ... en" line per term, graded-lex order, 17 significant digits.
  void write(std::ostream& out) const;
  static MultivariatePolynomial read(std::istream& in, std::size_t variable_count);

 private:
  void check_compatible(const MultivariatePolynomial& other) const;
  static void add_term(TermMap& terms, const ExponentTuple& monomial, double coeff);
  static void prune(TermMap& terms);

  std::size_t variable_count_;
  TermMap terms_;
};

class MonomialBasis {
 public:
  MonomialBasis(std::size_t variable_count, unsigned max_degree, bool include_constant);

  std::size_t variable_count() const noexcept { return variable_count_; }
  unsigned max_degree() const noexcept { return max_degree_; }
  bool include_constant() const noexcept { return include_constant_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const std::vector<ExponentTuple>& monomials() const noexcept { return monomials_; }
  const ExponentTuple& operator[](std::size_t i) const { return monomials_[i]; }

  // Position of a monomial, or size() if absent.
  std::size_t index_of(const ExponentTuple& monomial) const;

  // Writes the value of every monomial at point into out (size() entries).
  void evaluate(std::span<const double> point, std::span<double> out) const;

 private:
  std::size_t variable_count_;
  unsigned max_degree_;
  bool include_constant_;
  std::vector<ExponentTuple> monomials_;
};

MonomialBasis enumerate_monomials(std::size_t variable_count, unsigned max_degree,
                                  bool include_constant);

// C(max_degree + n, n), minus one without the constant.
std::size_t monomial_count(std::size_t variable_count, unsigned max_degree, bool include_constant);

class VectorField {
 public:
  explicit VectorField(std::vector<MultivariatePolynomial> components);

  std::size_t dimension() const noexcept { return components_.size(); }
  const MultivariatePolynomial& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<MultivariatePolynomial>& components() const noexcept { return components_; }
  unsigned max_degree() const noexcept;

  // Writes f(point) into out.
  void evaluate(std::span<const double> point, std::span<double> out) const;

 private:
  std::vector<MultivariatePolynomial> components_;
};

double evaluate(const MultivariatePolynomial& p, std::span<const double> point);

// X[p] = Σ_i f_i ∂p/∂x_i.
MultivariatePolynomial lie_derivative(const VectorField& field, const MultivariatePolynomial& p);

}  // namespace plateau

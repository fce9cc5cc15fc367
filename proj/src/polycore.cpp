#include "plateau/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "plateau/error.hpp"

namespace plateau {

namespace {

void check_point(std::size_t expected, std::size_t actual) {
  if (expected != actual) {
    throw DimensionError("point has " + std::to_string(actual) + " components, expected " +
                         std::to_string(expected));
  }
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

// ExponentTuple

ExponentTuple ExponentTuple::unit(std::size_t variable_count, std::size_t index) {
  ExponentTuple e(variable_count);
  e.exponents_.at(index) = 1;
  return e;
}

unsigned ExponentTuple::degree() const noexcept {
  unsigned total = 0;
  for (unsigned e : exponents_) total += e;
  return total;
}

ExponentTuple ExponentTuple::operator+(const ExponentTuple& other) const {
  if (size() != other.size()) throw DimensionError("exponent tuples of different length");
  ExponentTuple sum(*this);
  for (std::size_t i = 0; i < size(); ++i) sum.exponents_[i] += other.exponents_[i];
  return sum;
}

std::string ExponentTuple::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += "x" + std::to_string(i + 1);
    if (exponents_[i] > 1) out += "^" + std::to_string(exponents_[i]);
  }
  return out.empty() ? "1" : out;
}

bool GradedLexLess::operator()(const ExponentTuple& a, const ExponentTuple& b) const noexcept {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() < b.size();
}

// MultivariatePolynomial

MultivariatePolynomial::MultivariatePolynomial(std::size_t variable_count)
    : variable_count_(variable_count) {
  if (variable_count == 0) throw InvalidArgument("polynomial needs at least one variable");
}

MultivariatePolynomial::MultivariatePolynomial(std::size_t variable_count, TermMap terms)
    : MultivariatePolynomial(variable_count) {
  for (const auto& [monomial, coeff] : terms) {
    if (monomial.size() != variable_count) {
      throw DimensionError("term " + monomial.to_string() + " has wrong variable count");
    }
    if (!std::isfinite(coeff)) throw InvalidArgument("non-finite polynomial coefficient");
  }
  terms_ = std::move(terms);
  prune(terms_);
}

MultivariatePolynomial MultivariatePolynomial::constant(std::size_t variable_count, double value) {
  MultivariatePolynomial p(variable_count);
  add_term(p.terms_, ExponentTuple(variable_count), value);
  prune(p.terms_);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(std::size_t variable_count,
                                                        std::size_t index) {
  if (index >= variable_count) throw DimensionError("variable index out of range");
  MultivariatePolynomial p(variable_count);
  p.terms_.emplace(ExponentTuple::unit(variable_count, index), 1.0);
  return p;
}

unsigned MultivariatePolynomial::degree() const noexcept {
  // Terms are ordered by degree, so the last one carries the maximum.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

double MultivariatePolynomial::coefficient(const ExponentTuple& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? 0.0 : it->second;
}

double MultivariatePolynomial::evaluate(std::span<const double> point) const {
  check_point(variable_count_, point.size());
  if (terms_.empty()) return 0.0;
  const unsigned max_exp = degree();
  // powers[v * (max_exp + 1) + e] = point[v]^e
  std::vector<double> powers(variable_count_ * (max_exp + 1));
  for (std::size_t v = 0; v < variable_count_; ++v) {
    double* row = &powers[v * (max_exp + 1)];
    row[0] = 1.0;
    for (unsigned e = 1; e <= max_exp; ++e) row[e] = row[e - 1] * point[v];
  }
  double sum = 0.0;
  for (const auto& [monomial, coeff] : terms_) {
    double term = coeff;
    for (std::size_t v = 0; v < variable_count_; ++v) {
      if (monomial[v] != 0) term *= powers[v * (max_exp + 1) + monomial[v]];
    }
    sum += term;
  }
  return sum;
}

MultivariatePolynomial MultivariatePolynomial::derivative(std::size_t variable) const {
  if (variable >= variable_count_) throw DimensionError("derivative variable out of range");
  MultivariatePolynomial result(variable_count_);
  for (const auto& [monomial, coeff] : terms_) {
    const unsigned e = monomial[variable];
    if (e == 0) continue;
    std::vector<unsigned> lowered(monomial.exponents().begin(), monomial.exponents().end());
    lowered[variable] -= 1;
    add_term(result.terms_, ExponentTuple(std::move(lowered)), coeff * e);
  }
  prune(result.terms_);
  return result;
}

MultivariatePolynomial MultivariatePolynomial::operator+(const MultivariatePolynomial& other) const {
  check_compatible(other);
  MultivariatePolynomial result(*this);
  for (const auto& [monomial, coeff] : other.terms_) add_term(result.terms_, monomial, coeff);
  prune(result.terms_);
  return result;
}

MultivariatePolynomial MultivariatePolynomial::operator-(const MultivariatePolynomial& other) const {
  return *this + other * -1.0;
}

MultivariatePolynomial MultivariatePolynomial::operator*(const MultivariatePolynomial& other) const {
  check_compatible(other);
  MultivariatePolynomial result(variable_count_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) add_term(result.terms_, ma + mb, ca * cb);
  }
  prune(result.terms_);
  return result;
}

MultivariatePolynomial MultivariatePolynomial::operator*(double scale) const {
  MultivariatePolynomial result(variable_count_);
  for (const auto& [monomial, coeff] : terms_) result.terms_.emplace(monomial, coeff * scale);
  prune(result.terms_);
  return result;
}

void MultivariatePolynomial::write(std::ostream& out) const {
  for (const auto& [monomial, coeff] : terms_) {
    out << format_double(coeff);
    for (unsigned e : monomial.exponents()) out << ' ' << e;
    out << '\n';
  }
}

MultivariatePolynomial MultivariatePolynomial::read(std::istream& in, std::size_t variable_count) {
  MultivariatePolynomial p(variable_count);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream fields(line);
    double coeff = 0.0;
    std::vector<unsigned> exps(variable_count);
    bool ok = static_cast<bool>(fields >> coeff);
    for (std::size_t v = 0; ok && v < variable_count; ++v) ok = static_cast<bool>(fields >> exps[v]);
    std::string extra;
    if (!ok || (fields >> extra)) {
      throw InvalidArgument("malformed polynomial term on line " + std::to_string(line_no) +
                            ": '" + line + "'");
    }
    if (!std::isfinite(coeff)) throw InvalidArgument("non-finite coefficient on line " +
                                                     std::to_string(line_no));
    add_term(p.terms_, ExponentTuple(std::move(exps)), coeff);
  }
  prune(p.terms_);
  return p;
}

void MultivariatePolynomial::check_compatible(const MultivariatePolynomial& other) const {
  if (other.variable_count_ != variable_count_) {
    throw DimensionError("polynomials over " + std::to_string(variable_count_) + " and " +
                         std::to_string(other.variable_count_) + " variables");
  }
}

void MultivariatePolynomial::add_term(TermMap& terms, const ExponentTuple& monomial, double coeff) {
  auto [it, inserted] = terms.try_emplace(monomial, coeff);
  if (!inserted) it->second += coeff;
}

void MultivariatePolynomial::prune(TermMap& terms) {
  std::erase_if(terms, [](const auto& term) {
    return std::abs(term.second) < kCoefficientDropThreshold;
  });
}

// MonomialBasis

namespace {

// All exponent tuples of exactly `degree` over n variables, leading exponent
// descending (the graded-lex order within one degree).
void append_degree(std::size_t n, unsigned degree, std::vector<unsigned>& current,
                   std::size_t position, std::vector<ExponentTuple>& out) {
  if (position + 1 == n) {
    current[position] = degree;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = degree + 1; e-- > 0;) {
    current[position] = e;
    append_degree(n, degree - e, current, position + 1, out);
  }
  current[position] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t variable_count, unsigned max_degree, bool include_constant)
    : variable_count_(variable_count), max_degree_(max_degree), include_constant_(include_constant) {
  if (variable_count == 0) throw InvalidArgument("basis needs at least one variable");
  std::vector<unsigned> current(variable_count, 0);
  for (unsigned d = include_constant ? 0 : 1; d <= max_degree; ++d) {
    append_degree(variable_count, d, current, 0, monomials_);
  }
}

std::size_t MonomialBasis::index_of(const ExponentTuple& monomial) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), monomial, GradedLexLess{});
  if (it != monomials_.end() && *it == monomial) {
    return static_cast<std::size_t>(it - monomials_.begin());
  }
  return monomials_.size();
}

void MonomialBasis::evaluate(std::span<const double> point, std::span<double> out) const {
  check_point(variable_count_, point.size());
  if (out.size() != monomials_.size()) throw DimensionError("basis output has wrong size");
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    double value = 1.0;
    for (std::size_t v = 0; v < variable_count_; ++v) {
      for (unsigned e = 0; e < monomials_[i][v]; ++e) value *= point[v];
    }
    out[i] = value;
  }
}

MonomialBasis enumerate_monomials(std::size_t variable_count, unsigned max_degree,
                                  bool include_constant) {
  return MonomialBasis(variable_count, max_degree, include_constant);
}

std::size_t monomial_count(std::size_t variable_count, unsigned max_degree, bool include_constant) {
  // C(d + n, n) computed incrementally; each partial product is an integer.
  std::size_t count = 1;
  for (std::size_t i = 1; i <= variable_count; ++i) count = count * (max_degree + i) / i;
  return include_constant ? count : count - 1;
}

// VectorField

VectorField::VectorField(std::vector<MultivariatePolynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("vector field needs at least one component");
  for (const auto& c : components_) {
    if (c.variable_count() != components_.size()) {
      throw DimensionError("vector field component over " + std::to_string(c.variable_count()) +
                           " variables in a " + std::to_string(components_.size()) +
                           "-dimensional field");
    }
  }
}

unsigned VectorField::max_degree() const noexcept {
  unsigned d = 0;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

void VectorField::evaluate(std::span<const double> point, std::span<double> out) const {
  check_point(dimension(), point.size());
  if (out.size() != dimension()) throw DimensionError("field output has wrong size");
  for (std::size_t i = 0; i < dimension(); ++i) out[i] = components_[i].evaluate(point);
}

double evaluate(const MultivariatePolynomial& p, std::span<const double> point) {
  return p.evaluate(point);
}

MultivariatePolynomial lie_derivative(const VectorField& field, const MultivariatePolynomial& p) {
  if (p.variable_count() != field.dimension()) {
    throw DimensionError("polynomial over " + std::to_string(p.variable_count()) +
                         " variables, field of dimension " + std::to_string(field.dimension()));
  }
  MultivariatePolynomial result(p.variable_count());
  for (std::size_t i = 0; i < field.dimension(); ++i) {
    MultivariatePolynomial partial = p.derivative(i);
    if (partial.is_zero()) continue;
    result = result + field[i] * partial;
  }
  return result;
}

}  // namespace plateau

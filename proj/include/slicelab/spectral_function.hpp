#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace slicelab {

/// A real function evaluated on the spectrum of a symmetric matrix: the
/// functional parameter f of a QR-type step or g of a Toda-type flow.
class SpectralFunction {
 public:
  struct Identity {};
  struct Power {
    long num;
    long den;  // > 0, gcd(num, den) = 1
  };
  struct Log {};
  struct Exp {};
  struct ScaledExp {
    double t;
  };
  struct Polynomial {
    std::vector<double> coeffs;  // ascending: c0 + c1 x + ...
  };
  using Kind = std::variant<Identity, Power, Log, Exp, ScaledExp, Polynomial>;

  static SpectralFunction identity() { return SpectralFunction(Identity{}); }
  static SpectralFunction power(long num, long den = 1);
  static SpectralFunction log() { return SpectralFunction(Log{}); }
  static SpectralFunction exp() { return SpectralFunction(Exp{}); }
  static SpectralFunction scaled_exp(double t);
  static SpectralFunction polynomial(std::vector<double> coeffs);

  /// Parses `identity`, `log`, `exp`, `pow:<p>[/<q>]`, `poly:c0,c1,...`.
  static SpectralFunction parse(std::string_view spec);

  const Kind& kind() const noexcept { return kind_; }

  /// True for log and non-integer powers.
  bool requires_positive_spectrum() const noexcept;

  /// Throws DomainViolation outside the domain.
  double operator()(double x) const;

  std::string to_string() const;

 private:
  explicit SpectralFunction(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

}  // namespace slicelab

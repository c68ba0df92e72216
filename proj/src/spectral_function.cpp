#include "slicelab/spectral_function.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "slicelab/error.hpp"

namespace slicelab {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

[[noreturn]] void parse_fail(std::string_view spec, const std::string& why) {
  throw Error(ErrorKind::ParseError, "bad function spec '" + std::string(spec) + "': " + why);
}

long parse_long(std::string_view text, std::string_view spec) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) parse_fail(spec, "expected an integer");
  return v;
}

double parse_double(std::string_view text, std::string_view spec) {
  // from_chars for double is missing on older libstdc++; strtod on a copy.
  std::string copy(text);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    parse_fail(spec, "expected a real number");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SpectralFunction SpectralFunction::power(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "power with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return SpectralFunction(Power{num, den});
}

SpectralFunction SpectralFunction::scaled_exp(double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "scaled exp needs a finite time");
  return SpectralFunction(ScaledExp{t});
}

SpectralFunction SpectralFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial needs at least one coefficient");
  if (coeffs.back() == 0.0) throw Error(ErrorKind::InvalidArgument, "polynomial leading coefficient is zero");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "polynomial coefficient is not finite");
  return SpectralFunction(Polynomial{std::move(coeffs)});
}

SpectralFunction SpectralFunction::parse(std::string_view spec) {
  if (spec == "identity") return identity();
  if (spec == "log") return log();
  if (spec == "exp") return exp();
  if (spec.starts_with("pow:")) {
    const std::string_view body = spec.substr(4);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos) return power(parse_long(body, spec), 1);
    const long den = parse_long(body.substr(slash + 1), spec);
    if (den == 0) parse_fail(spec, "zero denominator");
    return power(parse_long(body.substr(0, slash), spec), den);
  }
  if (spec.starts_with("poly:")) {
    std::vector<double> coeffs;
    std::string_view body = spec.substr(5);
    while (true) {
      const auto comma = body.find(',');
      coeffs.push_back(parse_double(body.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    if (coeffs.back() == 0.0) parse_fail(spec, "leading coefficient is zero");
    return polynomial(std::move(coeffs));
  }
  parse_fail(spec, "unknown function");
}

bool SpectralFunction::requires_positive_spectrum() const noexcept {
  return std::visit(overloaded{
                        [](const Power& p) { return p.den != 1; },
                        [](const Log&) { return true; },
                        [](const auto&) { return false; },
                    },
                    kind_);
}

double SpectralFunction::operator()(double x) const {
  return std::visit(
      overloaded{
          [x](const Identity&) { return x; },
          [x](const Power& p) {
            if (p.den == 1) {
              if (p.num < 0 && x == 0.0) {
                throw Error(ErrorKind::DomainViolation, "negative power at a zero eigenvalue");
              }
              // Integer powers: pow keeps the sign for odd exponents.
              return std::pow(x, static_cast<double>(p.num));
            }
            if (!(x > 0.0)) throw Error(ErrorKind::DomainViolation, "fractional power needs a positive eigenvalue");
            return std::pow(x, static_cast<double>(p.num) / static_cast<double>(p.den));
          },
          [x](const Log&) {
            if (!(x > 0.0)) throw Error(ErrorKind::DomainViolation, "log needs a positive eigenvalue");
            return std::log(x);
          },
          [x](const Exp&) { return std::exp(x); },
          [x](const ScaledExp& e) { return std::exp(e.t * x); },
          [x](const Polynomial& p) {
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
      },
      kind_);
}

std::string SpectralFunction::to_string() const {
  return std::visit(overloaded{
                        [](const Identity&) { return std::string("identity"); },
                        [](const Power& p) {
                          std::string s = "pow:" + std::to_string(p.num);
                          if (p.den != 1) s += "/" + std::to_string(p.den);
                          return s;
                        },
                        [](const Log&) { return std::string("log"); },
                        [](const Exp&) { return std::string("exp"); },
                        [](const ScaledExp& e) { return "sexp:" + format_double(e.t); },
                        [](const Polynomial& p) {
                          std::string s = "poly:";
                          for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
                            if (k) s += ",";
                            s += format_double(p.coeffs[k]);
                          }
                          return s;
                        },
                    },
                    kind_);
}

}  // namespace slicelab

#include "orbicensus/signature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <optional>

#include "orbicensus/error.hpp"

namespace orbi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::InvalidMultiplicity: return "INVALID_MULTIPLICITY";
    case ErrorCode::InvalidDegree: return "INVALID_DEGREE";
    case ErrorCode::InfiniteMultiplicity: return "INFINITE_MULTIPLICITY";
    case ErrorCode::SubsetTooLarge: return "SUBSET_TOO_LARGE";
    case ErrorCode::DimOne: return "DIM_ONE";
    case ErrorCode::InfiniteQuotient: return "INFINITE_QUOTIENT";
    case ErrorCode::NonlinearLocus: return "NONLINEAR_LOCUS";
    case ErrorCode::NotUniformizable: return "NOT_UNIFORMIZABLE";
    case ErrorCode::NonIntegerResult: return "NON_INTEGER_RESULT";
    case ErrorCode::ConservationViolation: return "CONSERVATION_VIOLATION";
    case ErrorCode::InvalidCovering: return "INVALID_COVERING";
    case ErrorCode::EmptyLocus: return "EMPTY_LOCUS";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::Io: return "IO";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Multiplicity::Multiplicity(std::int64_t m) : m_(m) {
  if (m < 2) throw Error(ErrorCode::InvalidMultiplicity, "multiplicity must be >= 2, got " + std::to_string(m));
}

std::int64_t Multiplicity::value() const {
  if (is_infinite()) throw Error(ErrorCode::InfiniteMultiplicity, "operation requires finite multiplicities");
  return m_;
}

std::vector<LocusComponent> canonicalize(std::vector<LocusComponent> components) {
  std::sort(components.begin(), components.end(), std::greater<>());
  return components;
}

OrbifoldSignature::OrbifoldSignature(int dim, std::vector<LocusComponent> components)
    : dim_(dim), components_(canonicalize(std::move(components))) {
  if (dim < 1) throw Error(ErrorCode::Precondition, "dimension must be >= 1, got " + std::to_string(dim));
  if (components_.empty()) throw Error(ErrorCode::EmptyLocus, "signature has no locus components");
  for (const auto& c : components_) {
    if (c.degree < 1)
      throw Error(ErrorCode::InvalidDegree, "component degree must be >= 1, got " + std::to_string(c.degree));
    if (c.multiplicity.is_infinite() && c.degree != 1)
      throw Error(ErrorCode::InvalidDegree, "infinite multiplicity is only allowed on linear components");
  }
}

bool OrbifoldSignature::is_linear() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_linear(); });
}

bool OrbifoldSignature::is_finite() const noexcept {
  return std::none_of(components_.begin(), components_.end(),
                      [](const auto& c) { return c.multiplicity.is_infinite(); });
}

std::strong_ordering operator<=>(const OrbifoldSignature& a, const OrbifoldSignature& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (auto c = total_degree(a) <=> total_degree(b); c != 0) return c;
  return std::lexicographical_compare_three_way(a.components_.begin(), a.components_.end(),
                                                b.components_.begin(), b.components_.end());
}

OrbifoldSignature canonicalize(const OrbifoldSignature& sig) {
  return OrbifoldSignature(sig.dim(), {sig.components().begin(), sig.components().end()});
}

namespace {

constexpr std::string_view kInfinitySymbol = "∞";

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<LocusComponent> run() {
    skip_ws();
    expect('[');
    std::vector<LocusComponent> out;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      skip_ws();
      if (pos_ != text_.size()) fail(ErrorCode::Syntax, "unexpected trailing input");
      return out;
    }
    out.push_back(item());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      out.push_back(item());
      skip_ws();
    }
    expect(']');
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::Syntax, "unexpected trailing input");
    return out;
  }

 private:
  LocusComponent item() {
    skip_ws();
    const std::size_t start = pos_;
    std::optional<Multiplicity> mult;
    if (text_.substr(pos_).starts_with(kInfinitySymbol)) {
      pos_ += kInfinitySymbol.size();
      mult = Multiplicity::infinity();
    } else if (text_.substr(pos_).starts_with("inf")) {
      pos_ += 3;
      mult = Multiplicity::infinity();
    } else {
      const std::int64_t m = number("multiplicity");
      if (m < 2) fail_at(start, ErrorCode::InvalidMultiplicity, "multiplicity must be >= 2, got " + std::to_string(m));
      mult = Multiplicity(m);
    }
    skip_ws();
    std::int64_t degree = 1;
    if (peek() == '_') {
      ++pos_;
      skip_ws();
      const std::size_t dstart = pos_;
      degree = number("degree");
      if (degree < 1) fail_at(dstart, ErrorCode::InvalidDegree, "degree must be >= 1, got " + std::to_string(degree));
      if (mult->is_infinite() && degree != 1)
        fail_at(dstart, ErrorCode::InvalidDegree, "infinite multiplicity requires a linear component");
    }
    return LocusComponent{degree, *mult};
  }

  std::int64_t number(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(ErrorCode::Syntax, std::string("expected ") + what);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail_at(start, ErrorCode::Syntax, std::string(what) + " out of range");
    return v;
  }

  void expect(char c) {
    if (peek() != c) fail(ErrorCode::Syntax, std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // 1-based column counted in code points
  std::size_t column(std::size_t byte) const {
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text_.size(); ++i)
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
    return col;
  }

  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const { fail_at(pos_, code, msg); }
  [[noreturn]] void fail_at(std::size_t byte, ErrorCode code, const std::string& msg) const {
    throw ParseError(code, column(byte), msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<LocusComponent> parse_components(std::string_view text) { return Parser(text).run(); }

OrbifoldSignature parse_signature(std::string_view text, int dim) {
  return OrbifoldSignature(dim, parse_components(text));
}

std::string render(std::span<const LocusComponent> components, RenderStyle style) {
  std::string out = "[";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out += ',';
    const auto& c = components[i];
    if (c.multiplicity.is_infinite()) {
      out += style == RenderStyle::Human ? std::string(kInfinitySymbol) : std::string("inf");
    } else {
      out += std::to_string(c.multiplicity.value());
    }
    if (c.degree != 1) out += "_" + std::to_string(c.degree);
  }
  return out + "]";
}

std::string render(const OrbifoldSignature& sig, RenderStyle style) { return render(sig.components(), style); }

std::int64_t total_degree(const OrbifoldSignature& sig) {
  std::int64_t d = 0;
  for (const auto& c : sig.components()) d += c.degree;
  return d;
}

std::vector<std::int64_t> multiplicities(const OrbifoldSignature& sig) {
  std::vector<std::int64_t> out;
  out.reserve(sig.size());
  for (const auto& c : sig.components()) out.push_back(c.multiplicity.value());
  return out;
}

FVector f_vector(const OrbifoldSignature& sig) {
  FVector f;
  f.reserve(sig.size());
  for (const auto& c : sig.components()) {
    const std::int64_t m = c.multiplicity.value();
    f.push_back(m / std::gcd(m, c.degree));
  }
  return f;
}

void validate_subset(const OrbifoldSignature& sig, std::span<const int> subset) {
  if (static_cast<int>(subset.size()) > sig.dim())
    throw Error(ErrorCode::SubsetTooLarge, "stratum subset of size " + std::to_string(subset.size()) +
                                               " exceeds dimension " + std::to_string(sig.dim()));
  std::vector<bool> seen(sig.size(), false);
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= sig.size())
      throw Error(ErrorCode::Precondition, "component index " + std::to_string(i) + " out of range");
    if (seen[static_cast<std::size_t>(i)])
      throw Error(ErrorCode::Precondition, "component index " + std::to_string(i) + " repeated");
    seen[static_cast<std::size_t>(i)] = true;
  }
}

Integer stratum_b_value(const OrbifoldSignature& sig, std::span<const int> subset) {
  validate_subset(sig, subset);
  Integer b = 1;
  for (int i : subset) b *= static_cast<long>(sig[static_cast<std::size_t>(i)].multiplicity.value());
  return b;
}

IndexSet map_positions(std::span<const LocusComponent> written, const OrbifoldSignature& sig,
                       std::span<const int> positions) {
  if (written.size() != sig.size())
    throw Error(ErrorCode::Precondition, "written component list does not match the signature");
  std::vector<bool> used(sig.size(), false);
  IndexSet assignment(written.size(), -1);
  for (std::size_t p = 0; p < written.size(); ++p) {
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (!used[i] && sig[i] == written[p]) {
        used[i] = true;
        assignment[p] = static_cast<int>(i);
        break;
      }
    }
    if (assignment[p] < 0)
      throw Error(ErrorCode::Precondition, "written component list does not match the signature");
  }
  std::vector<bool> seen(written.size(), false);
  IndexSet out;
  for (int p : positions) {
    if (p < 0 || static_cast<std::size_t>(p) >= written.size())
      throw Error(ErrorCode::Precondition, "position " + std::to_string(p + 1) + " out of range 1.." +
                                               std::to_string(written.size()));
    if (seen[static_cast<std::size_t>(p)])
      throw Error(ErrorCode::Precondition, "position " + std::to_string(p + 1) + " repeated");
    seen[static_cast<std::size_t>(p)] = true;
    out.push_back(assignment[static_cast<std::size_t>(p)]);
  }
  return out;
}

}  // namespace orbi

#include "imono/imonoid.hpp"

#include <sstream>

namespace imono {

std::string IMonoid::display(elem e) const {
  if (e < element_names.size() && !element_names[e].empty()) {
    return element_names[e];
  }
  return std::to_string(static_cast<int>(e));
}

std::string ValidationReport::to_string() const {
  if (violations.empty()) {
    return "valid";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) {
      os << "; ";
    }
    os << violations[i].message;
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(report.to_string()), _report(std::move(report)) {}

ValidationReport validate_report(IMonoid const& a) {
  if (a.n < 1 || a.n > MAX_SIZE) {
    throw std::invalid_argument("algebra size out of range");
  }
  if (static_cast<int>(a.inv.size()) != a.n
      || a.mul.size() != static_cast<std::size_t>(a.n) * a.n) {
    throw std::invalid_argument("table lengths do not match size");
  }
  if (a.unit >= a.n) {
    throw std::invalid_argument("unit index out of range");
  }
  for (elem v : a.inv) {
    if (v >= a.n) {
      throw std::invalid_argument("inv entry out of range");
    }
  }
  for (elem v : a.mul) {
    if (v >= a.n) {
      throw std::invalid_argument("mul entry out of range");
    }
  }

  ValidationReport report;
  auto add = [&](std::string axiom, elem x, elem y, elem z, std::string msg) {
    report.violations.push_back({std::move(axiom), {x, y, z}, std::move(msg)});
  };

  for (elem x = 0; x < a.n; ++x) {
    for (elem y = 0; y < a.n; ++y) {
      for (elem z = 0; z < a.n; ++z) {
        if (a.at(a.at(x, y), z) != a.at(x, a.at(y, z))) {
          add("associativity", x, y, z,
              "not associative at (" + a.display(x) + "," + a.display(y) + ","
                  + a.display(z) + ")");
          goto assoc_done;
        }
      }
    }
  }
assoc_done:
  for (elem x = 0; x < a.n; ++x) {
    if (a.at(x, x) != x) {
      add("idempotency", x, 0, 0, "not idempotent at " + a.display(x));
      break;
    }
  }
  for (elem x = 0; x < a.n; ++x) {
    if (a.at(a.unit, x) != x || a.at(x, a.unit) != x) {
      add("unit", x, 0, 0, "unit law fails at " + a.display(x));
      break;
    }
  }
  for (elem x = 0; x < a.n; ++x) {
    if (a.inv_at(a.inv_at(x)) != x) {
      add("involution", x, 0, 0, "involution fails at " + a.display(x));
      break;
    }
  }
  return report;
}

IMonoid validate(IMonoid raw) {
  ValidationReport report = validate_report(raw);
  if (!report.ok()) {
    throw ValidationError(std::move(report));
  }
  return raw;
}

namespace {

IMonoid make(std::string name, int n, elem unit, std::vector<elem> inv,
             std::vector<std::vector<elem>> rows,
             std::vector<std::string> element_names) {
  IMonoid a;
  a.n = n;
  a.unit = unit;
  a.inv = std::move(inv);
  a.name = std::move(name);
  a.element_names = std::move(element_names);
  for (auto const& row : rows) {
    a.mul.insert(a.mul.end(), row.begin(), row.end());
  }
  return validate(std::move(a));
}

}  // namespace

std::vector<std::string> const& builtin_names() {
  static std::vector<std::string> const names = {
      "TRIVIAL", "2", "C2", "C3", "L3", "R3", "C3S",
      "L3S", "R3S", "WK", "SK", "M3", "M3OP"};
  return names;
}

IMonoid builtin(std::string const& name) {
  // 3-element subclassical algebras use universe order [0, 1, eps] so that
  // index 0 displays as "0" and index 1 as "1".
  if (name == "TRIVIAL") {
    return make("TRIVIAL", 1, 0, {0}, {{0}}, {"1"});
  }
  if (name == "2") {
    return make("2", 2, 1, {1, 0}, {{0, 0}, {0, 1}}, {"0", "1"});
  }
  if (name == "C2") {
    return make("C2", 2, 0, {0, 1}, {{0, 1}, {1, 1}}, {"\xf0\x9d\x9f\x99", "a"});
  }
  std::vector<std::string> uab = {"\xf0\x9d\x9f\x99", "a", "b"};  // 𝟙, a, b
  if (name == "C3") {
    return make("C3", 3, 0, {0, 1, 2}, {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, uab);
  }
  if (name == "L3") {
    return make("L3", 3, 0, {0, 1, 2}, {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}, uab);
  }
  if (name == "R3") {
    return make("R3", 3, 0, {0, 1, 2}, {{0, 1, 2}, {1, 1, 2}, {2, 1, 2}}, uab);
  }
  if (name == "C3S") {
    return make("C3S", 3, 0, {0, 2, 1}, {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, uab);
  }
  if (name == "L3S") {
    return make("L3S", 3, 0, {0, 2, 1}, {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}, uab);
  }
  if (name == "R3S") {
    return make("R3S", 3, 0, {0, 2, 1}, {{0, 1, 2}, {1, 1, 2}, {2, 1, 2}}, uab);
  }
  std::vector<std::string> zoe = {"0", "1", "\xce\xb5"};  // 0, 1, ε
  if (name == "WK") {
    return make("WK", 3, 1, {1, 0, 2}, {{0, 0, 2}, {0, 1, 2}, {2, 2, 2}}, zoe);
  }
  if (name == "SK") {
    return make("SK", 3, 1, {1, 0, 2}, {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}}, zoe);
  }
  if (name == "M3") {
    return make("M3", 3, 1, {1, 0, 2}, {{0, 0, 0}, {0, 1, 2}, {2, 2, 2}}, zoe);
  }
  if (name == "M3OP") {
    return make("M3OP", 3, 1, {1, 0, 2}, {{0, 0, 2}, {0, 1, 2}, {0, 2, 2}}, zoe);
  }
  throw std::invalid_argument("unknown builtin algebra: " + name);
}

IMonoid opposite(IMonoid const& a) {
  IMonoid b = a;
  for (elem x = 0; x < a.n; ++x) {
    for (elem y = 0; y < a.n; ++y) {
      b.mul[static_cast<std::size_t>(x) * a.n + y] = a.at(y, x);
    }
  }
  if (!b.name.empty()) {
    b.name += "^op";
  }
  return b;
}

IMonoid dual_algebra(IMonoid const& a) {
  IMonoid b = a;
  b.unit = a.zero();
  for (elem x = 0; x < a.n; ++x) {
    for (elem y = 0; y < a.n; ++y) {
      b.mul[static_cast<std::size_t>(x) * a.n + y] = a.join_at(x, y);
    }
  }
  if (!b.name.empty()) {
    b.name += "^d";
  }
  return b;
}

}  // namespace imono

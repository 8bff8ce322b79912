#include "mqg/tensor.hpp"

#include <cctype>

namespace mqg {

std::string format_basis(const GroupBackend& be, const BasisIndex& x) {
  return "[" + be.format(x.g) + ";" + be.format(x.h) + "]";
}

namespace {

template <std::size_t N>
std::string format_any(const Tensor<N>& t) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : t.terms()) {
    if (!first) out += " + ";
    first = false;
    out += c.short_str() + "*";
    for (std::size_t i = 0; i < N; ++i) {
      if (i) out += "|";
      out += format_basis(*t.backend(), key[i]);
    }
  }
  return out;
}

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

}  // namespace

std::string format_element(const Element& x) { return format_any(x); }
std::string format_tensor(const TensorElement& t) { return format_any(t); }
std::string format_tensor(const Tensor3& t) { return format_any(t); }

Element parse_element(const GroupBackend& backend, std::string_view text) {
  std::vector<Element::Term> terms;
  std::size_t i = 0;
  skip_ws(text, i);
  if (i < text.size() && text[i] == '0') {
    std::size_t j = i + 1;
    skip_ws(text, j);
    if (j == text.size()) return Element(&backend);
  }
  bool expect_term = true;
  while (true) {
    skip_ws(text, i);
    if (i == text.size()) break;
    int sign = 1;
    bool had_sign = false;
    while (i < text.size() && (text[i] == '+' || text[i] == '-' || std::isspace(static_cast<unsigned char>(text[i])))) {
      if (text[i] == '-') sign = -sign;
      if (text[i] != ' ') had_sign = true;
      ++i;
    }
    if (!expect_term && !had_sign) {
      throw std::invalid_argument("element literal: expected '+' or '-' at offset " + std::to_string(i));
    }
    Scalar coeff(1);
    if (i < text.size() && text[i] != '[') {
      const auto star = text.find('*', i);
      if (star == std::string_view::npos) {
        throw std::invalid_argument("element literal: expected 'coeff*[g;h]' at offset " + std::to_string(i));
      }
      std::string c(text.substr(i, star - i));
      while (!c.empty() && std::isspace(static_cast<unsigned char>(c.back()))) c.pop_back();
      coeff = Scalar::parse(c);
      i = star + 1;
      skip_ws(text, i);
    }
    if (i >= text.size() || text[i] != '[') {
      throw std::invalid_argument("element literal: expected '[' at offset " + std::to_string(i));
    }
    int depth = 0;
    std::size_t semi = std::string_view::npos;
    std::size_t close = std::string_view::npos;
    for (std::size_t j = i + 1; j < text.size(); ++j) {
      const char ch = text[j];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ';' && depth == 0 && semi == std::string_view::npos) semi = j;
      if (ch == ']' && depth == 0) {
        close = j;
        break;
      }
    }
    if (semi == std::string_view::npos || close == std::string_view::npos || semi > close) {
      throw std::invalid_argument("element literal: malformed basis literal at offset " + std::to_string(i));
    }
    const auto g = backend.parse(text.substr(i + 1, semi - i - 1));
    const auto h = backend.parse(text.substr(semi + 1, close - semi - 1));
    terms.push_back({{BasisIndex{g, h}}, coeff * Scalar(sign)});
    i = close + 1;
    expect_term = false;
  }
  if (expect_term) throw std::invalid_argument("element literal is empty");
  return Element::from_terms(&backend, std::move(terms));
}

}  // namespace mqg

// Copyright 2026 The padicval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "padicval/errors.hpp"
#include "padicval/polynomial.hpp"
#include "padicval/rational.hpp"

namespace padicval {

/// Hooks for parse_expression: symbol lookup and numeric literals.
template <class V>
struct ExprContext {
  std::function<std::optional<V>(const std::string&)> symbol;
  std::function<V(const Rat&)> number;
};

namespace detail {

template <class V>
class ExprParser {
 public:
  ExprParser(std::string_view text, const ExprContext<V>& ctx, std::size_t line)
      : s_(text), ctx_(ctx), line_(line) {}

  V run() {
    V v = sum();
    skip();
    if (i_ < s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const { throw ParseError(what, line_, i_ + 1); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  V sum() {
    V v = product();
    for (;;) {
      if (eat('+')) v = v + product();
      else if (eat('-')) v = v - product();
      else return v;
    }
  }

  V product() {
    V v = unary();
    while (eat('*')) v = v * unary();
    return v;
  }

  V unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  V power() {
    V base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) error("exponent must be a non-negative integer");
    unsigned long n = 0;
    try {
      n = std::stoul(std::string(s_.substr(start, i_ - start)));
    } catch (const std::exception&) {
      error("exponent out of range");
    }
    if (n > 100000) error("exponent out of range");
    V result = ctx_.number(Rat(1));
    while (n) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return result;
  }

  V atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      V v = sum();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Integer num = parse_integer(std::string(s_.substr(start, i_ - start)));
      if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        const std::size_t ds = ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        Integer den = parse_integer(std::string(s_.substr(ds, i_ - ds)));
        if (den == 0) error("zero denominator");
        return ctx_.number(Rat(num, den));
      }
      return ctx_.number(Rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(start, i_ - start));
      auto v = ctx_.symbol(name);
      if (!v) {
        i_ = start;
        error("unknown symbol '" + name + "'");
      }
      return *v;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const ExprContext<V>& ctx_;
  std::size_t line_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Infix expression with + - * ^, parentheses, integer and "a/b" literals
/// and named symbols. Columns in errors are 1-based offsets into `text`.
template <class V>
V parse_expression(std::string_view text, const ExprContext<V>& ctx, std::size_t line = 1) {
  return detail::ExprParser<V>(text, ctx, line).run();
}

/// Polynomial in X over Q; the symbol p stands for `prime` when given.
inline Poly<Rat> parse_rat_poly(std::string_view text, const std::optional<Integer>& prime = std::nullopt,
                                std::size_t line = 1) {
  ExprContext<Poly<Rat>> ctx;
  ctx.number = [](const Rat& q) { return Poly<Rat>::constant(q); };
  ctx.symbol = [&](const std::string& name) -> std::optional<Poly<Rat>> {
    if (name == "X") return Poly<Rat>::monomial(Rat(1), 1);
    if (name == "p" && prime) return Poly<Rat>::constant(Rat(*prime));
    return std::nullopt;
  };
  return parse_expression(text, ctx, line);
}

}  // namespace padicval

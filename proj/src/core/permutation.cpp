#include "prodlab/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "prodlab/error.hpp"

namespace prodlab {

Permutation::Permutation(std::vector<std::uint8_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto x : img_) {
    if (x >= img_.size() || seen[x]) throw Error(ErrorKind::InvalidParameters, "image array is not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, int n) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw Error(ErrorKind::ParseError, "expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<int> cycle;
    while (i < text.size() && text[i] != ')') {
      if (text[i] == ' ' || text[i] == ',') {
        ++i;
        continue;
      }
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{}) throw Error(ErrorKind::ParseError, "bad point in cycle notation: " + std::string(text));
      if (v < 1 || v > n) throw Error(ErrorKind::ParseError, "point " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (used[static_cast<std::size_t>(v - 1)]) throw Error(ErrorKind::ParseError, "point repeated across cycles: " + std::string(text));
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v - 1);
      i = static_cast<std::size_t>(ptr - text.data());
    }
    if (i >= text.size()) throw Error(ErrorKind::ParseError, "unterminated cycle: " + std::string(text));
    ++i;
    for (std::size_t k = 0; k < cycle.size(); ++k)
      img[static_cast<std::size_t>(cycle[k])] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
  }
  return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw Error(ErrorKind::SizeMismatch, "permutation degrees differ");
  std::vector<std::uint8_t> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[i] = rhs.img_[img_[i]];
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[img_[i]] = static_cast<std::uint8_t>(i);
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

std::vector<int> cycle_type_of(const std::uint8_t* images, int n) {
  std::vector<int> type;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images[j]) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::vector<int> Permutation::cycle_type() const { return cycle_type_of(img_.data(), degree()); }

bool Permutation::even() const {
  int transpositions = 0;
  for (int len : cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

int Permutation::fixed_points() const {
  int f = 0;
  for (std::size_t i = 0; i < img_.size(); ++i) f += img_[i] == i;
  return f;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace prodlab

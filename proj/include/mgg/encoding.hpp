#pragma once

// Rational encoding of Boolean matrices into exact dyadic numbers in [0,1),
// the xor norm, conditional norm, distance, and the gasket raster.
//
// No floating point is used anywhere: a dyadic value is a finite bit string
// b1 b2 ... bm meaning Σ bk 2^-k.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "mgg/boolmat.hpp"
#include "mgg/mcl.hpp"

namespace mgg {

/// Exact rational. Conditional norms are quotients of two dyadic values and
/// are not dyadic in general (3/8 ÷ 5/8 = 3/5).
using Ratio = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Ratio& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

class Dyadic {
 public:
  Dyadic() = default;

  /// bits[0] is the coefficient of 2^-1. Trailing zeros are dropped.
  explicit Dyadic(std::vector<bool> bits) : bits_(std::move(bits)) {
    while (!bits_.empty() && !bits_.back()) bits_.pop_back();
  }

  /// Parses "0.0110b" / "0.0110" / "0b".
  static Dyadic parse(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.back() == 'b') s.pop_back();
    if (s == "0" || s == "0.") return Dyadic();
    if (s.rfind("0.", 0) != 0) throw Error("malformed dyadic literal '" + text + "'");
    std::vector<bool> bits;
    for (std::size_t i = 2; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw Error("malformed dyadic literal '" + text + "'");
      bits.push_back(s[i] == '1');
    }
    return Dyadic(std::move(bits));
  }

  const std::vector<bool>& bits() const noexcept { return bits_; }
  std::size_t length() const noexcept { return bits_.size(); }
  bool is_zero() const noexcept { return bits_.empty(); }

  /// Coefficient of 2^-k (k ≥ 1); zero past the stored length.
  bool bit(std::size_t k) const { return k >= 1 && k <= bits_.size() && bits_[k - 1]; }

  /// Numerator over 2^length().
  BigInt numerator() const {
    BigInt n = 0;
    for (bool b : bits_) {
      n <<= 1;
      if (b) n += 1;
    }
    return n;
  }

  Ratio to_ratio() const {
    BigInt den = 1;
    den <<= static_cast<unsigned>(bits_.size());
    return Ratio(numerator(), den);
  }

  /// "0.011b"; zero renders as "0.0b".
  std::string to_binary_string() const {
    std::string s = "0.";
    if (bits_.empty()) s += '0';
    for (bool b : bits_) s += b ? '1' : '0';
    s += 'b';
    return s;
  }

  std::string to_fraction_string() const { return to_string(to_ratio()); }

  /// Bit string shifted right by `places` (value divided by 2^places).
  Dyadic shifted(std::size_t places) const {
    if (bits_.empty()) return *this;
    std::vector<bool> out(places, false);
    out.insert(out.end(), bits_.begin(), bits_.end());
    return Dyadic(std::move(out));
  }

  friend Dyadic operator^(const Dyadic& a, const Dyadic& b) { return bitwise(a, b, [](bool x, bool y) { return x != y; }); }
  friend Dyadic operator&(const Dyadic& a, const Dyadic& b) { return bitwise(a, b, [](bool x, bool y) { return x && y; }); }
  friend Dyadic operator|(const Dyadic& a, const Dyadic& b) { return bitwise(a, b, [](bool x, bool y) { return x || y; }); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

  // Canonical bit strings compare numerically as padded lexicographic strings.
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const std::size_t m = std::max(a.length(), b.length());
    for (std::size_t k = 1; k <= m; ++k) {
      if (a.bit(k) != b.bit(k)) return a.bit(k) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

 private:
  template <class Op>
  static Dyadic bitwise(const Dyadic& a, const Dyadic& b, Op op) {
    const std::size_t m = std::max(a.length(), b.length());
    std::vector<bool> out(m);
    for (std::size_t k = 1; k <= m; ++k) out[k - 1] = op(a.bit(k), b.bit(k));
    return Dyadic(std::move(out));
  }

  std::vector<bool> bits_;
};

/// Certainty part as the real component, nihil part as the imaginary one.
struct DyadicComplex {
  Dyadic re;
  Dyadic im;

  friend bool operator==(const DyadicComplex&, const DyadicComplex&) = default;
  friend auto operator<=>(const DyadicComplex&, const DyadicComplex&) = default;
};

/// Matrix cells visited by columns: bit k (1-based) is cell
/// (row ((k-1) mod n), column ⌊(k-1)/n⌋) in 0-based indices.
inline Dyadic ell(const BoolMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<bool> bits(n * n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) bits[col * n + row] = m.at(row, col);
  return Dyadic(std::move(bits));
}

inline DyadicComplex ell_complex(const ComplexTerm& z) { return {ell(z.cert_edges), ell(z.nihil_edges)}; }

/// ∥z∥ = ℓ(⟨z, z⟩); the dot product of a term with itself has an empty nihil
/// part and certainty part a ⊕ b.
inline Dyadic norm(const ComplexTerm& z) { return ell(dot(z, z).cert_edges); }

/// ∥z | y∥ = ∥z y∥ / ∥y∥
inline Ratio conditional_norm(const ComplexTerm& z, const ComplexTerm& y) {
  const Dyadic ny = norm(y);
  if (ny.is_zero()) throw DivisionByZero("conditional norm with respect to a term of norm zero");
  return norm(cmul(z, y)).to_ratio() / ny.to_ratio();
}

/// xor distance. With w1 = a1 ∨ i a2 and w2 = b1 ∨ i b2, the certainty
/// difference ∥w1∥ fills the first n² bits and the nihil difference ∥w2∥ the
/// next n² bits. When the nihil parts agree this is exactly ∥w1∥.
inline Dyadic distance(const ComplexTerm& z1, const ComplexTerm& z2) {
  detail::require_same_universe(z1, z2);
  const std::size_t n = z1.universe() ? z1.universe()->size() : 0;
  const Dyadic cert = norm(ComplexTerm::from_edges(z1.cert_edges, z2.cert_edges));
  const Dyadic nihil = norm(ComplexTerm::from_edges(z1.nihil_edges, z2.nihil_edges));
  return cert ^ nihil.shifted(n * n);
}

/// Monochrome raster, row-major, origin top-left; x is the column (abscissa),
/// y the row (ordinate).
class Bitmap {
 public:
  Bitmap(std::size_t width, std::size_t height) : width_(width), height_(height), bits_(width * height) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  bool at(std::size_t x, std::size_t y) const { return bits_.test(y * width_ + x); }
  void set(std::size_t x, std::size_t y, bool value = true) { bits_.set(y * width_ + x, value); }

  std::size_t count() const { return bits_.count(); }

  /// Plain portable bitmap (P1): one header line "P1 <w> <h>", then one line
  /// of '0'/'1' per row. Set pixels are '1' (black).
  std::string to_pbm() const {
    std::string out = "P1 " + std::to_string(width_) + " " + std::to_string(height_) + "\n";
    out.reserve(out.size() + (width_ + 1) * height_);
    for (std::size_t y = 0; y < height_; ++y) {
      for (std::size_t x = 0; x < width_; ++x) out += at(x, y) ? '1' : '0';
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  boost::dynamic_bitset<std::uint64_t> bits_;
};

/// 2^bits × 2^bits raster of the zeros of bitwise AND: (x, y) is set iff
/// x & y == 0. Points of the disjoint-term algebra land exactly on these.
inline Bitmap gasket_raster(int bits) {
  if (bits < 1 || bits > 16) throw RangeError("gasket bits must be in [1, 16]");
  const std::size_t side = std::size_t{1} << bits;
  Bitmap out(side, side);
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x)
      if ((x & y) == 0) out.set(x, y);
  return out;
}

/// ℓ-image of every disjoint edge term over `node_count` nodes: each cell is
/// absent, certainty or nihil, giving 3^(n²) points.
inline std::vector<DyadicComplex> h_points(std::size_t node_count) {
  if (node_count > 3) throw RangeError("h_points supports at most 3 nodes");
  const UniversePtr u = make_universe(node_count);
  const std::size_t cells = node_count * node_count;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= 3;

  std::vector<DyadicComplex> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    BoolMatrix cert(u), nihil(u);
    std::size_t c = code;
    for (std::size_t cell = 0; cell < cells; ++cell, c /= 3) {
      if (c % 3 == 1) cert.set(cell, true);
      if (c % 3 == 2) nihil.set(cell, true);
    }
    out.push_back(ell_complex(ComplexTerm::from_edges(cert, nihil)));
  }
  return out;
}

}  // namespace mgg

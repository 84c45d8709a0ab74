#ifndef TWOFACTOR_ALPHA_HPP_
#define TWOFACTOR_ALPHA_HPP_

// Local vertex configurations of a 2-factor on a grid column and the
// circular-word algebra built on top of them.
//
// A vertex of degree two picks two of its four grid directions. The six
// possible choices are the letters a..f:
//
//   a = {R,U}  b = {U,D}  c = {R,D}  d = {L,U}  e = {L,R}  f = {L,D}
//
// A column of m vertices is a circular word over these letters. Position 0 is
// the top row; the successor of position m-1 is position 0.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twofactor {

namespace dir {
inline constexpr std::uint8_t kLeft = 1;
inline constexpr std::uint8_t kRight = 2;
inline constexpr std::uint8_t kUp = 4;
inline constexpr std::uint8_t kDown = 8;
}  // namespace dir

class AlphaLetter {
 public:
  static constexpr int kCount = 6;

  constexpr AlphaLetter() = default;

  static constexpr AlphaLetter from_index(int index) {
    if (index < 0 || index >= kCount) {
      throw std::invalid_argument("alpha letter index out of range");
    }
    return AlphaLetter(static_cast<std::uint8_t>(index));
  }

  static constexpr AlphaLetter from_char(char id) {
    if (id < 'a' || id > 'f') {
      throw std::invalid_argument(std::string("not an alpha letter: ") + id);
    }
    return AlphaLetter(static_cast<std::uint8_t>(id - 'a'));
  }

  // Throws unless exactly two direction bits are set.
  static constexpr AlphaLetter from_edges(std::uint8_t edges) {
    for (int i = 0; i < kCount; ++i) {
      if (kEdges[i] == edges) return AlphaLetter(static_cast<std::uint8_t>(i));
    }
    throw std::invalid_argument("edge set is not a 2-subset of {L,R,U,D}");
  }

  constexpr int index() const { return index_; }
  constexpr char id() const { return static_cast<char>('a' + index_); }
  constexpr std::uint8_t edges() const { return kEdges[index_]; }

  constexpr bool left() const { return edges() & dir::kLeft; }
  constexpr bool right() const { return edges() & dir::kRight; }
  constexpr bool up() const { return edges() & dir::kUp; }
  constexpr bool down() const { return edges() & dir::kDown; }

  // Reflection over a horizontal line: U and D trade places.
  constexpr AlphaLetter hflip() const {
    const std::uint8_t e = edges();
    std::uint8_t out = e & (dir::kLeft | dir::kRight);
    if (e & dir::kUp) out |= dir::kDown;
    if (e & dir::kDown) out |= dir::kUp;
    return from_edges(out);
  }

  // Reflection over a vertical line: L and R trade places.
  constexpr AlphaLetter vflip() const {
    const std::uint8_t e = edges();
    std::uint8_t out = e & (dir::kUp | dir::kDown);
    if (e & dir::kLeft) out |= dir::kRight;
    if (e & dir::kRight) out |= dir::kLeft;
    return from_edges(out);
  }

  friend constexpr auto operator<=>(AlphaLetter, AlphaLetter) = default;

 private:
  static constexpr std::array<std::uint8_t, kCount> kEdges = {
      dir::kRight | dir::kUp,    // a
      dir::kUp | dir::kDown,     // b
      dir::kRight | dir::kDown,  // c
      dir::kLeft | dir::kUp,     // d
      dir::kLeft | dir::kRight,  // e
      dir::kLeft | dir::kDown,   // f
  };

  constexpr explicit AlphaLetter(std::uint8_t index) : index_(index) {}

  std::uint8_t index_ = 1;
};

namespace letters {
inline constexpr AlphaLetter a = AlphaLetter::from_index(0);
inline constexpr AlphaLetter b = AlphaLetter::from_index(1);
inline constexpr AlphaLetter c = AlphaLetter::from_index(2);
inline constexpr AlphaLetter d = AlphaLetter::from_index(3);
inline constexpr AlphaLetter e = AlphaLetter::from_index(4);
inline constexpr AlphaLetter f = AlphaLetter::from_index(5);
}  // namespace letters

/// Circular binary word of length 1..kMaxWidth.
///
/// Stored as an integer whose most significant of the m used bits is
/// position 0, so numeric order on equal widths is lexicographic order on the
/// printed word.
class BinaryWord {
 public:
  static constexpr int kMaxWidth = 30;

  BinaryWord() = default;

  BinaryWord(int width, std::uint32_t code) : width_(width), code_(code) {
    if (width < 1 || width > kMaxWidth) {
      throw std::invalid_argument("binary word width out of range");
    }
    if (code_ & ~mask()) throw std::invalid_argument("binary word code wider than width");
  }

  static BinaryWord from_string(std::string_view text) {
    std::uint32_t code = 0;
    for (char ch : text) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("binary word must be over {0,1}");
      code = (code << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return BinaryWord(static_cast<int>(text.size()), code);
  }

  static BinaryWord zeros(int width) { return BinaryWord(width, 0); }
  static BinaryWord ones(int width) { return BinaryWord(width, (std::uint32_t{1} << width) - 1); }

  int size() const { return width_; }
  std::uint32_t code() const { return code_; }
  bool operator[](int j) const { return (code_ >> (width_ - 1 - j)) & 1U; }
  int popcount() const { return std::popcount(code_); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(width_), '0');
    for (int j = 0; j < width_; ++j) s[static_cast<std::size_t>(j)] = (*this)[j] ? '1' : '0';
    return s;
  }

  // rho^k: w_{k+1} ... w_m w_1 ... w_k
  BinaryWord rotate(long long k) const {
    const int s = static_cast<int>(((k % width_) + width_) % width_);
    if (s == 0) return *this;
    const std::uint32_t out = ((code_ << s) | (code_ >> (width_ - s))) & mask();
    return BinaryWord(width_, out);
  }

  BinaryWord reverse() const {
    std::uint32_t out = 0;
    for (int j = 0; j < width_; ++j) out |= ((code_ >> j) & 1U) << (width_ - 1 - j);
    return BinaryWord(width_, out);
  }

  BinaryWord complement() const { return BinaryWord(width_, ~code_ & mask()); }

  friend auto operator<=>(const BinaryWord&, const BinaryWord&) = default;

 private:
  std::uint32_t mask() const {
    return width_ == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << width_) - 1;
  }

  int width_ = 1;
  std::uint32_t code_ = 0;
};

/// Circular word over the alpha letters; one column of a code matrix.
class AlphaWord {
 public:
  AlphaWord() = default;
  explicit AlphaWord(std::vector<AlphaLetter> letters) : letters_(std::move(letters)) {}

  static AlphaWord from_string(std::string_view text) {
    std::vector<AlphaLetter> out;
    out.reserve(text.size());
    for (char ch : text) out.push_back(AlphaLetter::from_char(ch));
    return AlphaWord(std::move(out));
  }

  static AlphaWord repeat(AlphaLetter letter, int width) {
    return AlphaWord(std::vector<AlphaLetter>(static_cast<std::size_t>(width), letter));
  }

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  AlphaLetter operator[](int j) const { return letters_[static_cast<std::size_t>(j)]; }
  std::span<const AlphaLetter> letters() const { return letters_; }

  std::string to_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (AlphaLetter l : letters_) s.push_back(l.id());
    return s;
  }

  // Base-6 key, unique among words of one width (width <= 24).
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (AlphaLetter l : letters_) k = k * AlphaLetter::kCount + static_cast<std::uint64_t>(l.index());
    return k;
  }

  bool is_column_valid() const {
    const int m = size();
    if (m == 0) return false;
    for (int j = 0; j < m; ++j) {
      if ((*this)[j].down() != (*this)[(j + 1) % m].up()) return false;
    }
    return true;
  }

  friend auto operator<=>(const AlphaWord&, const AlphaWord&) = default;

 private:
  std::vector<AlphaLetter> letters_;
};

// ---------------------------------------------------------------------------
// Word operations

inline AlphaWord rotate(const AlphaWord& w, long long k) {
  const int m = w.size();
  if (m == 0) return w;
  const int s = static_cast<int>(((k % m) + m) % m);
  std::vector<AlphaLetter> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] = w[(j + s) % m];
  return AlphaWord(std::move(out));
}

inline BinaryWord rotate(const BinaryWord& w, long long k) { return w.rotate(k); }

/// Reversed word with each letter reflected top-to-bottom.
inline AlphaWord horizontal_convert(const AlphaWord& w) {
  if (w.empty()) throw std::invalid_argument("horizontal_convert of an empty word");
  const int m = w.size();
  std::vector<AlphaLetter> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] = w[m - 1 - j].hflip();
  return AlphaWord(std::move(out));
}

/// Each letter reflected left-to-right, positions unchanged.
inline AlphaWord vertical_convert(const AlphaWord& w) {
  if (w.empty()) throw std::invalid_argument("vertical_convert of an empty word");
  std::vector<AlphaLetter> out;
  out.reserve(static_cast<std::size_t>(w.size()));
  for (AlphaLetter l : w.letters()) out.push_back(l.vflip());
  return AlphaWord(std::move(out));
}

namespace detail {

template <typename Pred>
inline std::uint32_t side_code(std::span<const AlphaLetter> letters, Pred pred) {
  std::uint32_t code = 0;
  for (AlphaLetter l : letters) code = (code << 1) | (pred(l) ? 1U : 0U);
  return code;
}

inline std::uint32_t outlet_code(std::span<const AlphaLetter> letters) {
  return side_code(letters, [](AlphaLetter l) { return l.right(); });
}

inline std::uint32_t inlet_code(std::span<const AlphaLetter> letters) {
  return side_code(letters, [](AlphaLetter l) { return l.left(); });
}

}  // namespace detail

inline BinaryWord outlet(const AlphaWord& w) {
  return BinaryWord(w.size(), detail::outlet_code(w.letters()));
}

inline BinaryWord inlet(const AlphaWord& w) {
  return BinaryWord(w.size(), detail::inlet_code(w.letters()));
}

// ---------------------------------------------------------------------------
// Enumeration

/// Bitmask over letter indices, bit i set when letter i may be used.
using LetterSet = std::uint8_t;
inline constexpr LetterSet kAllLetters = 0x3F;

/// Visits every column-valid word of width m whose letters lie in `allowed`,
/// in lexicographic order (a < b < ... < f). The visitor receives a span that
/// is only valid for the duration of the call.
template <typename Visitor>
void for_each_column_word(int m, LetterSet allowed, Visitor&& visit) {
  if (m < 1) throw std::invalid_argument("column width must be >= 1");
  std::vector<AlphaLetter> word(static_cast<std::size_t>(m));
  // Explicit stack of the next candidate letter index per position.
  std::vector<int> next(static_cast<std::size_t>(m), 0);
  int pos = 0;
  while (pos >= 0) {
    auto& cand = next[static_cast<std::size_t>(pos)];
    bool placed = false;
    while (cand < AlphaLetter::kCount) {
      const AlphaLetter l = AlphaLetter::from_index(cand++);
      if (!(allowed & (1U << l.index()))) continue;
      if (pos > 0 && word[static_cast<std::size_t>(pos - 1)].down() != l.up()) continue;
      if (pos == m - 1 && l.down() != word[0].up() && m > 1) continue;
      if (m == 1 && l.down() != l.up()) continue;
      word[static_cast<std::size_t>(pos)] = l;
      placed = true;
      break;
    }
    if (!placed) {
      cand = 0;
      --pos;
      continue;
    }
    if (pos == m - 1) {
      visit(std::span<const AlphaLetter>(word));
    } else {
      ++pos;
    }
  }
}

template <typename Visitor>
void for_each_column_word(int m, Visitor&& visit) {
  for_each_column_word(m, kAllLetters, std::forward<Visitor>(visit));
}

inline std::vector<AlphaWord> enumerate_column_words(int m, LetterSet allowed = kAllLetters) {
  if (m < 1) throw std::invalid_argument("column width must be >= 1");
  std::vector<AlphaWord> out;
  for_each_column_word(m, allowed, [&](std::span<const AlphaLetter> w) {
    out.emplace_back(std::vector<AlphaLetter>(w.begin(), w.end()));
  });
  return out;
}

/// Visits the outlet code of every column-valid word whose inlet is `in`.
/// Each word is visited once, so an outlet may be reported twice.
template <typename Visitor>
void for_each_outlet_with_inlet(const BinaryWord& in, Visitor&& visit) {
  const int m = in.size();
  // Position j chooses (R_j, U_j); D_j is then forced by degree two and must
  // equal U_{j+1}. Track U_0 to close the cycle.
  struct Frame {
    int choice;
    std::uint32_t code;
    int carry;  // D of the previous position, i.e. the forced U here
  };
  for (int u0 = 0; u0 <= 1; ++u0) {
    std::vector<Frame> stack;
    stack.push_back({0, 0, u0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      const int j = static_cast<int>(stack.size()) - 1;
      if (top.choice > 1) {
        stack.pop_back();
        continue;
      }
      const int r = top.choice++;
      const int l = in[j] ? 1 : 0;
      const int u = top.carry;
      const int d = 2 - l - r - u;
      if (d < 0 || d > 1) continue;
      const std::uint32_t code = (top.code << 1) | static_cast<std::uint32_t>(r);
      if (j == m - 1) {
        if (d == u0) visit(code);
        continue;
      }
      stack.push_back({0, code, d});
    }
  }
}

/// Number of column-valid words with inlet word u and outlet word w; at most 2.
inline int count_io_words(const BinaryWord& u, const BinaryWord& w) {
  if (u.size() != w.size()) throw std::invalid_argument("inlet and outlet widths differ");
  // Product of 2x2 transfer matrices over the vertical bit U_j -> U_{j+1}.
  std::array<std::array<int, 2>, 2> acc = {{{1, 0}, {0, 1}}};
  for (int j = 0; j < u.size(); ++j) {
    const int need = 2 - (u[j] ? 1 : 0) - (w[j] ? 1 : 0);
    std::array<std::array<int, 2>, 2> step{};
    for (int up = 0; up <= 1; ++up) {
      const int down = need - up;
      if (down == 0 || down == 1) step[up][down] = 1;
    }
    std::array<std::array<int, 2>, 2> next{};
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) next[i][l] += acc[i][k] * step[k][l];
    acc = next;
  }
  return acc[0][0] + acc[1][1];
}

}  // namespace twofactor

#endif  // TWOFACTOR_ALPHA_HPP_

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infconv/types.hpp"

namespace fixtures {

using namespace infconv;

inline AdmissiblePair ex1_p1() {
  return AdmissiblePair("p1", ExpandingMatrix(IMat::from_rows({{4, 0}, {4, -4}})),
                        DigitSet({{2, 0}, {3, 0}, {2, 1}, {3, 1}}),
                        std::vector<IVec>{{0, 0}, {2, 0}, {2, -2}, {4, -2}});
}

inline AdmissiblePair ex1_p2() {
  return AdmissiblePair("p2", ExpandingMatrix(IMat::from_rows({{3, -3}, {3, 3}})), DigitSet({{0, 2}, {1, 2}, {0, 3}}),
                        std::vector<IVec>{{0, 0}, {3, 1}, {3, -1}});
}

/// Example 1 menu, word cycling p1 p2.
inline ConvolutionSystem example1() { return ConvolutionSystem({ex1_p1(), ex1_p2()}, {}, {0, 1}); }

/// Example 1 menu with an explicit finite word; letters 0 = p1, 1 = p2.
inline ConvolutionSystem example1_word(const std::vector<std::size_t>& word) {
  return ConvolutionSystem({ex1_p1(), ex1_p2()}, word, {});
}

inline AdmissiblePair jp_pair() {
  return AdmissiblePair("jp", ExpandingMatrix(IMat::from_rows({{4}})), DigitSet(std::vector<IVec>{{0}, {2}}), std::vector<IVec>{{0}, {1}});
}

inline ConvolutionSystem jp() { return ConvolutionSystem::constant(jp_pair()); }

inline AdmissiblePair diag_pair(const std::string& name, Int m, std::vector<IVec> B, std::vector<IVec> L) {
  return AdmissiblePair(name, ExpandingMatrix(IMat::from_rows({{m, 0}, {0, m}})), DigitSet(std::move(B)), std::move(L));
}

/// First `levels` letters of Example 2: diag(3,3) on odd levels, diag(n,n) on even level n.
inline ConvolutionSystem example2(std::size_t levels = 6) {
  std::vector<AdmissiblePair> menu;
  menu.push_back(diag_pair("odd", 3, {{0, 0}, {0, 1}, {1, 0}}, {{0, 0}, {1, 2}, {2, 1}}));
  std::vector<std::size_t> word;
  for (std::size_t n = 1; n <= levels; ++n) {
    if (n % 2 == 1) {
      word.push_back(0);
      continue;
    }
    const Int m = static_cast<Int>(n);
    menu.push_back(diag_pair("even" + std::to_string(n), m, {{0, 0}, {m - 1, m - 1}}, {{0, 0}, {m / 2, 0}}));
    word.push_back(menu.size() - 1);
  }
  return ConvolutionSystem(std::move(menu), std::move(word), {});
}

/// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// 1/2 delta_0 + 1/2 delta_1.
inline DiscreteMeasure two_point() {
  return DiscreteMeasure(1, {Atom{QVec{Rational(0)}, Rational(1, 2)}, Atom{QVec{Rational(1)}, Rational(1, 2)}});
}

}  // namespace fixtures

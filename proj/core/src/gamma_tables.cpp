#include "tdc/gamma_tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdc::gamma {

namespace {

struct Span {
  int lo, hi;  // inclusive
};

std::vector<int> expand(const std::vector<Span>& spans) {
  std::vector<int> out;
  for (const auto& s : spans)
    for (int x = s.lo; x <= s.hi; ++x) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<int> kSet1 = expand({{320, 320}, {323, 324}, {326, 326}, {338, 338}, {340, 341},
                                       {346, 346}, {348, 350}, {352, 357}, {359, 468}, {470, 480},
                                       {482, 486}, {489, 494}, {496, 500}, {504, 504}, {506, 506},
                                       {512, 512}, {516, 516}, {518, 518}, {522, 522}, {524, 524},
                                       {528, 528}, {536, 536}, {560, 560}});

const std::vector<int> kSet2 = expand({{313, 313}, {329, 329}, {331, 334}, {337, 339}, {343, 349},
                                       {351, 450}, {452, 459}, {461, 462}, {464, 464}, {466, 468},
                                       {470, 470}, {472, 472}, {474, 474}, {476, 476}, {478, 480},
                                       {482, 482}, {484, 484}, {486, 486}, {488, 488}, {494, 494},
                                       {496, 496}, {500, 500}, {503, 504}, {506, 506}, {512, 512},
                                       {524, 524}, {528, 528}, {554, 554}, {560, 560}});

const std::vector<int> kSet3 = expand({{320, 320}, {323, 324}, {326, 326}, {338, 338}, {340, 341},
                                       {346, 346}, {348, 350}, {353, 357}, {359, 464}, {466, 468},
                                       {470, 480}, {482, 486}, {488, 492}, {494, 494}, {496, 500},
                                       {504, 504}, {506, 506}, {512, 512}, {516, 516}, {522, 522},
                                       {524, 524}, {528, 528}, {536, 536}, {560, 560}});

std::vector<int> make_union() {
  std::vector<int> u;
  for (const auto* s : {&kSet1, &kSet2, &kSet3}) u.insert(u.end(), s->begin(), s->end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

const std::vector<int> kUnion = make_union();

}  // namespace

const std::vector<int>& beta_set(int id) {
  switch (id) {
    case 1: return kSet1;
    case 2: return kSet2;
    case 3: return kSet3;
    case 4: return kSet2;  // identical reference rows
    default: throw std::invalid_argument("beta_set: id must be in 1..4");
  }
}

const std::vector<int>& beta_union() { return kUnion; }

bool contains(const std::vector<int>& sorted_set, int beta) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), beta);
}

}  // namespace tdc::gamma

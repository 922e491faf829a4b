#include <doctest.h>

#include <random>

#include "latticelab/catalogue.hpp"
#include "latticelab/ideals.hpp"
#include "latticelab/kernels.hpp"

using namespace latticelab;
using kernels::Word;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<Word> v(n);
  for (auto& w : v) {
    w = rng();
    for (int i = 0; i < density; ++i) w &= rng();
  }
  return v;
}

struct Restore {
  std::string name{kernels::active().name};
  ~Restore() { kernels::select(name); }
};

}  // namespace

TEST_CASE("scalar kernels are always available and listed first") {
  const auto tables = kernels::available();
  REQUIRE(!tables.empty());
  CHECK(tables.front()->name == "scalar");
  CHECK(kernels::select("scalar"));
  CHECK_FALSE(kernels::select("no-such-kernel"));
  kernels::select(tables.back()->name);
}

TEST_CASE("every kernel variant agrees with scalar on random rows") {
  const kernels::Table& ref = kernels::scalar();
  std::mt19937_64 rng(7);
  for (const kernels::Table* t : kernels::available()) {
    CAPTURE(t->name);
    for (std::size_t n = 0; n <= 37; ++n)
      for (int density = 0; density < 4; ++density)
        for (int rep = 0; rep < 8; ++rep) {
          const auto a = random_words(rng, n, density);
          auto b = random_words(rng, n, density);
          if (rep % 3 == 0)
            for (std::size_t i = 0; i < n; ++i) b[i] |= a[i];  // force subsets
          CHECK(t->is_subset(a.data(), b.data(), n) == ref.is_subset(a.data(), b.data(), n));
          CHECK(t->intersects(a.data(), b.data(), n) == ref.intersects(a.data(), b.data(), n));
          CHECK(t->popcount(a.data(), n) == ref.popcount(a.data(), n));
          CHECK(t->and_popcount(a.data(), b.data(), n) == ref.and_popcount(a.data(), b.data(), n));
          for (auto op : {&kernels::Table::or_into, &kernels::Table::and_into, &kernels::Table::andnot_into}) {
            auto x = a, y = a;
            (t->*op)(x.data(), b.data(), n);
            (ref.*op)(y.data(), b.data(), n);
            CHECK(x == y);
          }
        }
  }
}

TEST_CASE("large closures do not depend on the kernel variant") {
  Restore restore;
  std::mt19937_64 rng(11);
  const Poset p = random_poset(300, rng);
  const Poset q = random_poset(40, rng);
  std::vector<std::size_t> widths;
  std::vector<std::vector<Pair>> covers;
  std::vector<std::size_t> ideal_counts;
  for (const kernels::Table* t : kernels::available()) {
    kernels::select(t->name);
    widths.push_back(width(p));
    covers.push_back(p.covers());
    ideal_counts.push_back(ideals_of(q).size());
  }
  for (std::size_t i = 1; i < widths.size(); ++i) {
    CHECK(widths[i] == widths[0]);
    CHECK(covers[i] == covers[0]);
    CHECK(ideal_counts[i] == ideal_counts[0]);
  }
}

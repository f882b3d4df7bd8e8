#include <bertrand/bertrand.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace bertrand;

namespace {

// 8x8 golden blocks, rows and columns in genealogical order
const std::int64_t kGolden[8][8] = {
    {1, 0, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0},
    {1, 1, 2, 1, 0, 0, 0, 0},
    {1, 2, 1, 0, 1, 0, 0, 0},
    {1, 1, 3, 3, 0, 1, 0, 0},
    {1, 2, 2, 1, 2, 0, 1, 0},
    {1, 2, 3, 1, 1, 0, 0, 1},
};

const std::int64_t kBase2[8][8] = {
    {1, 0, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 1, 0, 0, 0, 0, 0},
    {1, 2, 0, 1, 0, 0, 0, 0},
    {1, 1, 2, 0, 1, 0, 0, 0},
    {1, 2, 1, 1, 0, 1, 0, 0},
    {1, 2, 2, 1, 0, 0, 1, 0},
    {1, 3, 0, 3, 0, 0, 0, 1},
};

}  // namespace

TEST_CASE("golden-ratio triangle block", "[triangle]") {
  auto sys = make_system("1,1");
  auto block = triangle_block(sys, 8, 8);
  REQUIRE(block.rows == 8);
  REQUIRE(block.cols == 8);
  CHECK_FALSE(block.modular);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      INFO("entry (" << i << "," << j << ")");
      CHECK(block.at(i, j) == kGolden[i][j]);
    }

  SECTION("header words are the language in order") {
    std::vector<std::string> want{"", "1", "10", "100", "101", "1000", "1001", "1010"};
    for (int i = 0; i < 8; ++i) {
      CHECK(word_to_string(block.row_words[static_cast<std::size_t>(i)]) == want[static_cast<std::size_t>(i)]);
      CHECK(word_to_string(block.col_words[static_cast<std::size_t>(i)]) == want[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("base-2 triangle block", "[triangle]") {
  auto block = triangle_block(make_system("2"), 8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      INFO("entry (" << i << "," << j << ")");
      CHECK(block.at(i, j) == kBase2[i][j]);
    }
}

TEST_CASE("triangle block structure", "[triangle]") {
  auto sys = make_system("1,1");
  auto block = triangle_block(sys, 21, 21);
  for (int i = 0; i < block.rows; ++i) {
    CHECK(block.at(i, 0) == 1);  // empty word embeds once
    CHECK(block.at(i, i) == 1);  // diagonal
    for (int j = i + 1; j < block.cols; ++j) {
      // genealogical order is length-compatible, so strictly longer columns vanish
      if (block.col_words[static_cast<std::size_t>(j)].size() >
          block.row_words[static_cast<std::size_t>(i)].size())
        CHECK(block.at(i, j) == 0);
    }
  }
  CHECK_THROWS_AS(triangle_block(sys, 0, 4), std::invalid_argument);
}

TEST_CASE("modular triangle blocks reduce the exact one", "[triangle]") {
  auto sys = make_system("1,1");
  auto exact = triangle_block(sys, 13, 13);
  for (std::int64_t q : {2, 3, 5}) {
    auto mod = triangle_block_mod(sys, 13, 13, q);
    CHECK(mod.modular);
    CHECK(mod.modulus == q);
    for (int i = 0; i < 13; ++i)
      for (int j = 0; j < 13; ++j) CHECK(mod.at(i, j) == exact.at(i, j) % q);
  }
  CHECK_THROWS_AS(triangle_block_mod(sys, 4, 4, 6), std::invalid_argument);

  SECTION("threaded and serial fills agree") {
    auto serial = triangle_block_mod(sys, 34, 34, 2, 1);
    auto threaded = triangle_block_mod(sys, 34, 34, 2, 4);
    CHECK(serial.values == threaded.values);
  }
}

TEST_CASE("unary columns replay the classical triangle", "[triangle]") {
  // base 2 rows/cols restricted to 1^m give C(m, n)
  auto sys = make_system("2");
  auto block = triangle_block(sys, 64, 64);
  auto idx = [&](int m) {  // rank of 1^m: value 2^m - 1
    return (1LL << m) - 1;
  };
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      CHECK(block.at(static_cast<int>(idx(m)), static_cast<int>(idx(n))) ==
            binomial_coefficient(m, n));
}

TEST_CASE("normalized square sets", "[triangle]") {
  auto sys = make_system("1,1");
  auto res = make_residue_spec(2, 1);

  SECTION("depth 3 cells, exact") {
    auto set = u_set(sys, 3, res);
    CHECK(set.n == 3);
    CHECK(set.grid == 5);
    CHECK(set.unit() == Catch::Approx(0.2));
    // {col, row}, sorted by (row, col): row i covers the columns with odd entries
    std::vector<SquareSet::Cell> want{{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2},
                                      {0, 3}, {1, 3}, {3, 3}, {0, 4}, {2, 4}, {4, 4}};
    CHECK(set.cells == want);
  }

  SECTION("cell counts at larger depths") {
    CHECK(u_set(sys, 4, res).cells.size() == 25);
    CHECK(u_set(sys, 9, res, 4).cells.size() == 1030);
    CHECK(u_set(sys, 9, res, 4).grid == 89);
  }

  SECTION("cells are exactly the odd block entries") {
    auto set = u_set(sys, 5, res);
    auto block = triangle_block_mod(sys, 13, 13, 2);
    std::size_t found = 0;
    for (int i = 0; i < 13; ++i)
      for (int j = 0; j < 13; ++j)
        if (block.at(i, j) == 1) {
          CHECK(std::find(set.cells.begin(), set.cells.end(),
                          SquareSet::Cell{j, i}) != set.cells.end());
          ++found;
        }
    CHECK(found == set.cells.size());
  }

  SECTION("residue classes partition the nonzero entries") {
    auto block = triangle_block_mod(sys, 13, 13, 3);
    std::size_t nonzero = 0;
    for (auto v : block.values) nonzero += (v != 0);
    CHECK(u_set(sys, 5, make_residue_spec(3, 1)).cells.size() +
              u_set(sys, 5, make_residue_spec(3, 2)).cells.size() ==
          nonzero);
  }

  SECTION("guards") {
    CHECK_THROWS_AS(u_set(sys, -1, res), std::invalid_argument);
    CHECK_THROWS_AS(u_set(make_system("10"), 7, res), std::invalid_argument);  // grid 10^7
  }
}

TEST_CASE("portable bitmap rendering", "[triangle]") {
  auto sys = make_system("1,1");
  auto res = make_residue_spec(2, 1);
  auto set = u_set(sys, 3, res);

  SECTION("dimensions and density") {
    auto pbm = render_pbm(set);
    CHECK(pbm.rfind("P1\n5 5\n", 0) == 0);
    std::size_t ones = 0, zeros = 0;
    for (char c : pbm.substr(7)) {
      ones += (c == '1');
      zeros += (c == '0');
    }
    CHECK(ones == set.cells.size());
    CHECK(ones + zeros == 25);
  }

  SECTION("scaling multiplies pixels") {
    auto pbm = render_pbm(set, 3);
    CHECK(pbm.rfind("P1\n15 15\n", 0) == 0);
    std::size_t ones = 0;
    for (char c : pbm.substr(9)) ones += (c == '1');  // skip the header
    CHECK(ones == set.cells.size() * 9);
  }

  SECTION("line length stays within the format limit") {
    auto big = u_set(sys, 9, res, 4);
    auto pbm = render_pbm(big);
    std::size_t start = 0;
    for (std::size_t e = pbm.find('\n'); e != std::string::npos; e = pbm.find('\n', start)) {
      CHECK(e - start <= 70);
      start = e + 1;
    }
  }

  SECTION("guards") {
    CHECK_THROWS_AS(render_pbm(set, 0), std::invalid_argument);
    auto big = u_set(sys, 9, res, 4);
    CHECK_THROWS_AS(render_pbm(big, 113), std::invalid_argument);  // 89 * 113 > 10000
  }
}

TEST_CASE("triangle CSV output", "[triangle]") {
  auto sys = make_system("1,1");
  auto csv = triangle_csv(triangle_block(sys, 3, 3));
  CHECK(csv ==
        "i,j,word_i,word_j,value\n"
        "0,0,,,1\n"
        "0,1,,1,0\n"
        "0,2,,10,0\n"
        "1,0,1,,1\n"
        "1,1,1,1,1\n"
        "1,2,1,10,0\n"
        "2,0,10,,1\n"
        "2,1,10,1,1\n"
        "2,2,10,10,1\n");
}

TEST_CASE("file writers", "[triangle]") {
  auto sys = make_system("1,1");
  auto res = make_residue_spec(2, 1);
  auto set = u_set(sys, 3, res);
  const std::string pbm_path = "test_triangle_out.pbm";
  const std::string csv_path = "test_triangle_out.csv";

  write_pbm(set, pbm_path);
  write_triangle_csv(triangle_block(sys, 3, 3), csv_path);

  std::ifstream pf(pbm_path);
  std::string header;
  std::getline(pf, header);
  CHECK(header == "P1");

  std::ifstream cf(csv_path);
  std::getline(cf, header);
  CHECK(header == "i,j,word_i,word_j,value");

  CHECK_THROWS_AS(write_pbm(set, "no_such_dir/x.pbm"), std::runtime_error);

  std::remove(pbm_path.c_str());
  std::remove(csv_path.c_str());
}

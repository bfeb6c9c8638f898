#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fse/io.hpp"
#include "fse/solution.hpp"

using namespace fse;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("fse_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("solution text round trips byte for byte") {
  Solution flip = build_r_f(EndoMap::identity(2));
  std::string text = solution_to_text(flip.pm);
  // frozen golden rendering: sorted keys, two-space indent, trailing newline
  std::string golden =
      "{\n"
      "  \"l\": [\n"
      "    [\n"
      "      0,\n"
      "      1\n"
      "    ],\n"
      "    [\n"
      "      0,\n"
      "      1\n"
      "    ]\n"
      "  ],\n"
      "  \"n\": 2,\n"
      "  \"r\": [\n"
      "    [\n"
      "      0,\n"
      "      0\n"
      "    ],\n"
      "    [\n"
      "      1,\n"
      "      1\n"
      "    ]\n"
      "  ]\n"
      "}\n";
  CHECK(text == golden);
  PairMap back = solution_from_text(text);
  CHECK(back == flip.pm);
  CHECK(solution_to_text(back) == text);
}

TEST_CASE("endo text round trips byte for byte") {
  EndoMap f(3, {1, 1, 2});
  std::string text = endo_to_text(f);
  CHECK(text ==
        "{\n"
        "  \"f\": [\n"
        "    1,\n"
        "    1,\n"
        "    2\n"
        "  ],\n"
        "  \"n\": 3\n"
        "}\n");
  CHECK(endo_from_text(text) == f);
}

TEST_CASE("file save and load round trip") {
  TempDir td;
  Solution s = build_r_omega(2, 2, EndoMap(2, {1, 0}));
  std::string p = td.file("sol.json");
  save_solution_file(p, s.pm);
  CHECK(load_solution_file(p) == s.pm);
  std::string bytes = slurp(p);
  save_solution_file(p, load_solution_file(p));
  CHECK(slurp(p) == bytes);

  EndoMap f(4, {1, 0, 3, 3});
  std::string q = td.file("endo.json");
  save_endo_file(q, f);
  CHECK(load_endo_file(q) == f);
  CHECK(probe_file(p) == FileKind::solution);
  CHECK(probe_file(q) == FileKind::endo);
}

TEST_CASE("syntax errors carry the line and column") {
  TempDir td;
  std::string p = td.file("broken.json");
  spit(p, "{\n  \"n\": 2,\n  ]\n}\n");
  try {
    load_solution_file(p);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.kind == IoError::Kind::parse);
    CHECK(std::string(e.tag()) == "parse");
    CHECK(e.line == 3);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("shape errors: wrong keys, types and lengths") {
  auto expect_shape = [](const std::string& text) {
    try {
      solution_from_text(text);
      return std::string("no error");
    } catch (const IoError& e) {
      return std::string(e.tag());
    }
  };
  // missing r
  CHECK(expect_shape("{\"n\": 1, \"l\": [[0]]}") == "shape");
  // unknown extra key
  CHECK(expect_shape("{\"n\": 1, \"l\": [[0]], \"r\": [[0]], \"x\": 1}") == "shape");
  // l not an array of arrays
  CHECK(expect_shape("{\"n\": 1, \"l\": [0], \"r\": [[0]]}") == "shape");
  // row length mismatch
  CHECK(expect_shape("{\"n\": 2, \"l\": [[0,1],[0]], \"r\": [[0,0],[1,1]]}") == "shape");
  // non-integer entry
  CHECK(expect_shape("{\"n\": 1, \"l\": [[\"a\"]], \"r\": [[0]]}") == "shape");
  // document is not an object
  CHECK(expect_shape("[1,2]") == "shape");
  // n itself broken
  CHECK(expect_shape("{\"n\": \"two\", \"l\": [[0]], \"r\": [[0]]}") == "shape");

  auto expect_endo = [](const std::string& text) {
    try {
      endo_from_text(text);
      return std::string("no error");
    } catch (const IoError& e) {
      return std::string(e.tag());
    }
  };
  CHECK(expect_endo("{\"n\": 2, \"f\": [0]}") == "shape");
  CHECK(expect_endo("{\"n\": 2, \"f\": [0, 1], \"g\": []}") == "shape");
}

TEST_CASE("range errors name the offending entry") {
  try {
    solution_from_text("{\"n\": 2, \"l\": [[0,1],[0,3]], \"r\": [[0,0],[1,1]]}");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.kind == IoError::Kind::range);
    std::string msg = e.what();
    CHECK(msg.find("\"l\"[1][1]") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
  try {
    endo_from_text("{\"n\": 2, \"f\": [2, 0]}");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.kind == IoError::Kind::range);
    std::string msg = e.what();
    CHECK(msg.find("\"f\"[0]") != std::string::npos);
  }
  // n out of its own range
  try {
    endo_from_text("{\"n\": 0, \"f\": []}");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.kind == IoError::Kind::range);
  }
}

TEST_CASE("missing files raise an error naming the path") {
  try {
    load_solution_file("/nonexistent/definitely/missing.json");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }
}

TEST_CASE("loaded solutions feed straight into the verifier") {
  TempDir td;
  std::string p = td.file("valid.json");
  spit(p,
       "{\"n\": 2, \"l\": [[0, 1], [0, 1]], \"r\": [[0, 0], [1, 1]]}");
  PairMap pm = load_solution_file(p);
  CHECK(verify_fs(pm).valid);
  Solution s = Solution::from_pairmap(pm);
  CHECK(classify(s).involutive);
}

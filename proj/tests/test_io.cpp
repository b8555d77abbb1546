#include "matchkit/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace matchkit;

TEST(Io, CurveRoundTripIsByteIdentical) {
  Polyline c;
  c.closed = true;
  c.points = {Point(0, 0), Point(1.5, -2), Point(0.1, 3)};
  const std::string t = io::format_curve(c);
  EXPECT_NE(t.find("\"version\": 1"), std::string::npos);
  const Polyline back = io::parse_curve(t);
  EXPECT_EQ(back.points, c.points);
  EXPECT_TRUE(back.closed);
  EXPECT_EQ(io::format_curve(back), t);
}

TEST(Io, IntegralCoordinatesAreWrittenAsIntegers) {
  Polyline c;
  c.points = {Point(3, -4), Point(5, 0)};
  const std::string t = io::format_curve(c);
  EXPECT_EQ(t.find("3.0"), std::string::npos);
  EXPECT_NE(t.find("-4"), std::string::npos);
}

TEST(Io, FormulaRoundTrip) {
  for (const auto& e : std::filesystem::directory_iterator(MATCHKIT_TEST_DATA "/corpus")) {
    const std::string t = io::read_file(e.path());
    EXPECT_EQ(io::format_formula(io::parse_formula(t)), t) << e.path();
  }
}

TEST(Io, InstanceDirectoryRoundTrip) {
  const Instance inst = reduce(EmbeddedFormula{3, {{{1, 2, 3}, Side::Above}}});
  const auto dir = std::filesystem::temp_directory_path() / "matchkit_io_test";
  std::filesystem::remove_all(dir);
  io::write_instance(dir, inst);
  const Instance back = io::read_instance(dir);
  EXPECT_EQ(io::format_network(back.network), io::format_network(inst.network));
  EXPECT_EQ(io::format_curve(back.curve), io::format_curve(inst.curve));
  EXPECT_EQ(io::format_provenance(back), io::format_provenance(inst));
  EXPECT_EQ(io::read_file(dir / "provenance"), io::format_provenance(back));
  std::filesystem::remove_all(dir);
}

TEST(Io, WalkRoundTrip) {
  const Walk w{{3, 1, 4, 1, 5}, WalkShape::Path};
  const Walk back = io::parse_walk(io::format_walk(w));
  EXPECT_EQ(back.vertex_ids, w.vertex_ids);
  EXPECT_EQ(back.shape, w.shape);
}

TEST(Io, DiagnosticsNameTheProblem) {
  try {
    io::parse_curve("{\"format\": \"matchkit-curve\",\n \"version\": 1,\n \"closed\": tru }");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    io::parse_network(R"({"format": "matchkit-network", "version": 1, "vertices": [[0, 0], [1, 0]], "edges": [[0, 7]]})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("edges[0]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::parse_formula(R"({"format": "matchkit-formula", "version": 2, "num_vars": 1, "clauses": []})"),
               InputError);
  EXPECT_THROW(io::parse_formula(R"({"format": "matchkit-curve", "version": 1})"), InputError);
  try {
    io::parse_formula(
        R"({"format": "matchkit-formula", "version": 1, "num_vars": 1, "clauses": [{"literals": [1, 1], "side": "above"}]})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("clauses[0].literals"), std::string::npos) << e.what();
  }
}

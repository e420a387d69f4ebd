#include <gtest/gtest.h>

#include <filesystem>

#include "tsmlab/io.hpp"
#include "tsmlab/twisted_transforms.hpp"

using namespace tsmlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tsmlab_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Io, NumbersCarrySeventeenDigits) {
  EXPECT_EQ(io::num(0.1), "0.10000000000000001");
  EXPECT_EQ(io::num(-2.0), "-2");
  EXPECT_EQ(std::stod(io::num(kPi)), kPi);
}

TEST(Io, FieldRoundTripIsExact) {
  const auto grid = shared_polar_grid(1, {6.0, 8, 16});
  const auto f = SampledField::sample(grid, [](const Point& z) { return std::exp(-z.norm2() / 3) * cplx(1.0, z[0].imag()); });
  const auto dir = scratch("field");
  io::write_field(dir / "f", f);
  const auto g = io::read_field(dir / "f");
  ASSERT_EQ(g.values().size(), f.values().size());
  for (std::size_t i = 0; i < f.values().size(); ++i) EXPECT_EQ(g.values()[i], f.values()[i]);
  EXPECT_EQ(g.decay_class(), f.decay_class());
  const auto header = io::Json::parse(io::read_text(dir / "f.json"));
  EXPECT_EQ(header["dim"], 1);
  EXPECT_EQ(header["grid"]["angular"], 16);
}

TEST(Io, FieldCsvHeaderOnC2) {
  const auto grid = shared_polar_grid(2, {6.0, 2, 4});
  const auto f = SampledField::sample(grid, [](const Point&) { return cplx(1.0); });
  const auto csv = io::field_csv(f);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "re_z1,im_z1,re_z2,im_z2,re_f,im_f");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), grid->size() + 1);
}

TEST(Io, ReadFieldRejectsTamperedCoordinates) {
  const auto grid = shared_polar_grid(1, {6.0, 4, 8});
  const auto f = SampledField::sample(grid, [](const Point&) { return cplx(1.0); });
  const auto dir = scratch("tamper");
  io::write_field(dir / "f", f);
  auto csv = io::read_text(dir / "f.csv");
  const auto second = csv.find('\n') + 1;
  csv.replace(second, csv.find(',', second) - second, "5");
  io::write_text(dir / "f.csv", csv);
  EXPECT_THROW(io::read_field(dir / "f"), GridMismatch);
}

TEST(Io, ProfileAndMeanTableCsv) {
  MeanProfile p;
  p.radii = {0.5, 1.0};
  p.values = {cplx(1.0, -1.0), cplx(0.25, 0.0)};
  EXPECT_EQ(io::profile_csv(p), "r,re,im\n0.5,1,-1\n1,0.25,0\n");
  EXPECT_EQ(io::mean_table_csv({{cplx(1.0, 0.0), 2.0, -0.5}}), "center_re,center_im,r,value\n1,0,2,-0.5\n");
}

TEST(Io, OperatorExportAndReportAreDeterministic) {
  SetParams sp;
  sp.radii = {0.5, 1.5};
  const auto op = assemble_operator(make_set(SetKind::coxeter_lines, sp), 1, Engine::twisted);
  const auto side = io::operator_sidecar(op);
  EXPECT_EQ(side["rows"].size(), op.row_index.size());
  EXPECT_EQ(side["columns"].size(), 4u);
  const auto csv = io::operator_csv(op);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), op.row_index.size() + 1);
  const auto rep = injectivity_probe(op, {.degree_steps = {0}});
  const auto a = io::to_json(rep).dump(2);
  const auto b = io::to_json(injectivity_probe(assemble_operator(make_set(SetKind::coxeter_lines, sp), 1, Engine::twisted),
                                               {.degree_steps = {0}}))
                     .dump(2);
  EXPECT_EQ(a, b);
  const auto j = io::to_json(rep);
  for (const char* key : {"set", "K", "sigma", "near_null", "caveat"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Io, WriteTextCreatesDirectories) {
  const auto dir = scratch("nested");
  io::write_text(dir / "a" / "b.txt", "x");
  EXPECT_EQ(io::read_text(dir / "a" / "b.txt"), "x");
}

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "molcav/error.hpp"
#include "molcav/timeseries.hpp"

using namespace molcav;

namespace {

Record make(std::size_t step, double x) {
  Record r;
  r.step = step;
  r.time_fs = 0.1 * std::sqrt(2.0) * step;
  r.norm = 1.0 - 1e-15 * x;
  r.energy = 0.0431234567890123 + x;
  r.photon_number = 4.0 + x / 3.0;
  r.entropy_a_bc = x / 7.0;
  r.entropy_b_ac = x / 7.0 + 1e-17;
  r.entropy_c_ab = x / 3.0;
  r.negativity_ab = x / 11.0;
  r.purity_ab = 1.0 - x / 13.0;
  r.leakage = 1e-9 * x;
  r.trusted = step % 2 == 0;
  if (step > 0) {
    r.wigner_min = -x / 17.0;
    r.wigner_negativity_volume = x / 19.0;
  }
  return r;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST(TimeSeries, RoundTripAtFullPrecision) {
  TimeSeries ts;
  ts.metadata = {"integrator: test", "units: fs"};
  for (std::size_t k = 0; k < 5; ++k) ts.records.push_back(make(k * 10, 0.1 * k + 1e-3));
  std::stringstream io;
  write_timeseries(io, ts);
  const auto back = read_timeseries(io);
  ASSERT_EQ(back.size(), ts.size());
  EXPECT_EQ(back.metadata, ts.metadata);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto &a = ts.records[k], &b = back.records[k];
    EXPECT_EQ(a.step, b.step);
    EXPECT_EQ(a.trusted, b.trusted);
    for (auto f : {&Record::time_fs, &Record::norm, &Record::energy, &Record::photon_number, &Record::entropy_a_bc,
                   &Record::entropy_b_ac, &Record::entropy_c_ab, &Record::negativity_ab, &Record::purity_ab,
                   &Record::leakage, &Record::wigner_min, &Record::wigner_negativity_volume})
      EXPECT_TRUE(same(a.*f, b.*f));
  }
}

TEST(TimeSeries, HeaderMatchesColumns) {
  std::stringstream io;
  write_timeseries(io, TimeSeries{});
  std::string line;
  std::getline(io, line);
  while (!line.empty() && line[0] == '#') std::getline(io, line);
  std::string expected;
  for (const auto& c : timeseries_columns()) expected += (expected.empty() ? "" : ",") + c;
  EXPECT_EQ(line, expected);
  EXPECT_EQ(timeseries_columns().size(), 14u);
}

TEST(TimeSeries, ColumnAndArgmax) {
  TimeSeries ts;
  for (std::size_t k = 0; k < 6; ++k) ts.records.push_back(make(k, k == 3 ? 9.0 : 1.0 * k));
  EXPECT_EQ(ts.argmax(&Record::entropy_c_ab).step, 3u);
  EXPECT_EQ(ts.column(&Record::entropy_c_ab).size(), 6u);
}

TEST(TimeSeries, MalformedRowRejected) {
  std::stringstream good;
  write_timeseries(good, TimeSeries{});
  std::stringstream bad(good.str() + "1,2,3\n");
  EXPECT_THROW(read_timeseries(bad), FormatError);
}

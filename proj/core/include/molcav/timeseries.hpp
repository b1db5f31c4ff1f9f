#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace molcav {

/// Observables recorded at one time.
struct Record {
  std::size_t step = 0;
  double time_fs = 0.0;
  double norm = 0.0;
  double energy = 0.0;         // hartree, includes the photon zero-point energy
  double photon_number = 0.0;
  double entropy_a_bc = 0.0;   // bits
  double entropy_b_ac = 0.0;
  double entropy_c_ab = 0.0;
  double negativity_ab = 0.0;  // bits, projected molecular state
  double purity_ab = 0.0;
  double leakage = 0.0;
  bool trusted = true;
  double wigner_min = std::numeric_limits<double>::quiet_NaN();
  double wigner_negativity_volume = std::numeric_limits<double>::quiet_NaN();
};

struct TimeSeries {
  std::vector<Record> records;
  /// Free-form provenance lines written as `#` comments ahead of the header.
  std::vector<std::string> metadata;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
  std::vector<double> column(double Record::*field) const;
  /// Record with the largest value of `field`.
  const Record& argmax(double Record::*field) const;
};

/// Comma-separated, header row with units; doubles at full round-trip precision.
void write_timeseries(std::ostream& out, const TimeSeries& ts);
void write_timeseries_header(std::ostream& out, const TimeSeries& ts);
void write_record(std::ostream& out, const Record& r);
TimeSeries read_timeseries(std::istream& in);

/// Column names in file order.
const std::vector<std::string>& timeseries_columns();

}  // namespace molcav

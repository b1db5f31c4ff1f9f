#include "molcav/timeseries.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "molcav/error.hpp"

namespace molcav {

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols = {
      "step",          "time_fs",       "norm",          "energy_Eh",   "photon_number", "S_A_BC_bits",
      "S_B_AC_bits",   "S_C_AB_bits",   "EN_AB_bits",    "purity_AB",   "leakage",       "trusted",
      "wigner_min",    "wigner_negvol"};
  return cols;
}

std::vector<double> TimeSeries::column(double Record::*field) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.*field);
  return out;
}

const Record& TimeSeries::argmax(double Record::*field) const {
  if (records.empty()) throw std::logic_error("TimeSeries::argmax on empty series");
  const Record* best = &records.front();
  for (const auto& r : records)
    if (r.*field > best->*field) best = &r;
  return *best;
}

namespace {

void put(std::ostream& out, double x) {
  if (std::isnan(x)) {
    out << "nan";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

}  // namespace

void write_timeseries_header(std::ostream& out, const TimeSeries& ts) {
  for (const auto& m : ts.metadata) out << "# " << m << '\n';
  const auto& cols = timeseries_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_record(std::ostream& out, const Record& r) {
  out << r.step << ',';
  for (double x : {r.time_fs, r.norm, r.energy, r.photon_number, r.entropy_a_bc, r.entropy_b_ac, r.entropy_c_ab,
                   r.negativity_ab, r.purity_ab, r.leakage}) {
    put(out, x);
    out << ',';
  }
  out << (r.trusted ? 1 : 0) << ',';
  put(out, r.wigner_min);
  out << ',';
  put(out, r.wigner_negativity_volume);
  out << '\n';
}

void write_timeseries(std::ostream& out, const TimeSeries& ts) {
  write_timeseries_header(out, ts);
  for (const auto& r : ts.records) write_record(out, r);
}

TimeSeries read_timeseries(std::istream& in) {
  TimeSeries ts;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      ts.metadata.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != timeseries_columns().size()) throw FormatError("timeseries: wrong column count in '" + line + "'");
    auto num = [&](std::size_t i) { return cells[i] == "nan" ? std::nan("") : std::stod(cells[i]); };
    Record r;
    r.step = std::stoull(cells[0]);
    r.time_fs = num(1);
    r.norm = num(2);
    r.energy = num(3);
    r.photon_number = num(4);
    r.entropy_a_bc = num(5);
    r.entropy_b_ac = num(6);
    r.entropy_c_ab = num(7);
    r.negativity_ab = num(8);
    r.purity_ab = num(9);
    r.leakage = num(10);
    r.trusted = cells[11] == "1";
    r.wigner_min = num(12);
    r.wigner_negativity_volume = num(13);
    ts.records.push_back(r);
  }
  return ts;
}

}  // namespace molcav

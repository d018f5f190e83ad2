#include "caft/dataset_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "caft/csv.hpp"
#include "caft/error.hpp"

namespace caft {

namespace {

constexpr char kHeader[] = "u0,u1,l,a,t0,ta,t_obs,d";
constexpr char kMagic[8] = {'C', 'A', 'F', 'T', 'D', 'S', '0', '1'};

static_assert(std::endian::native == std::endian::little, "binary cache assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw IoError("truncated binary dataset");
  return value;
}

int parse_flag(const std::string& s) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw IoError("expected 0/1 flag, got '" + s + "'");
}

}  // namespace

void write_csv(const Dataset& data, std::ostream& out) {
  out << kHeader << '\n';
  csv::Writer w(out);
  for (const auto& r : data.records()) {
    w.row({csv::format_number(r.u0), csv::format_number(r.u1), csv::format_number(r.l), std::to_string(r.a),
           csv::format_number(r.t0), csv::format_number(r.ta), csv::format_number(r.t_obs), std::to_string(r.d)});
  }
}

Dataset read_csv(std::istream& in) {
  const csv::Table t = csv::read(in);
  if (t.header != csv::split(kHeader)) throw IoError("dataset CSV header must be " + std::string(kHeader));
  std::vector<CohortRecord> records;
  records.reserve(t.rows.size());
  bool confounder = !t.rows.empty();
  for (const auto& row : t.rows) {
    CohortRecord r;
    r.u0 = csv::parse_number(row[0]);
    r.u1 = csv::parse_number(row[1]);
    r.l = csv::parse_number(row[2]);
    r.a = parse_flag(row[3]);
    r.t0 = csv::parse_number(row[4]);
    r.ta = csv::parse_number(row[5]);
    r.t_obs = csv::parse_number(row[6]);
    r.d = parse_flag(row[7]);
    confounder = confounder && !std::isnan(r.l);
    records.push_back(r);
  }
  return Dataset(std::move(records), confounder);
}

void write_binary(const Dataset& data, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, data.size());
  put<std::uint8_t>(out, data.has_confounder() ? 1 : 0);
  for (const auto& r : data.records()) {
    for (double x : {r.u0, r.u1, r.l, r.t0, r.ta, r.t_obs}) put<double>(out, x);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(r.a));
    put<std::uint8_t>(out, static_cast<std::uint8_t>(r.d));
  }
}

Dataset read_binary(std::istream& in) {
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw IoError("not a caft binary dataset");
  const auto n = get<std::uint64_t>(in);
  const bool confounder = get<std::uint8_t>(in) != 0;
  std::vector<CohortRecord> records;
  records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    CohortRecord r;
    r.u0 = get<double>(in);
    r.u1 = get<double>(in);
    r.l = get<double>(in);
    r.t0 = get<double>(in);
    r.ta = get<double>(in);
    r.t_obs = get<double>(in);
    r.a = get<std::uint8_t>(in);
    r.d = get<std::uint8_t>(in);
    records.push_back(r);
  }
  return Dataset(std::move(records), confounder);
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(data, out);
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

void save_binary(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_binary(data, out);
}

Dataset load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_binary(in);
}

}  // namespace caft

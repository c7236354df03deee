#include "netshare/harness/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netshare::harness {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Non-empty lines after the header, which must match exactly.
std::vector<std::vector<std::string>> read_rows(const std::string& text, const char* header, std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw std::runtime_error("csv: unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != columns) {
      throw std::runtime_error("csv: expected " + std::to_string(columns) + " fields in '" + line + "'");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

bool parse_flag(const std::string& s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw std::runtime_error("csv: bad flag '" + s + "'");
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::runtime_error("csv: bad integer '" + s + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& s) {
  if (s.empty()) throw std::runtime_error("csv: empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::runtime_error("csv: bad number '" + s + "'");
  return v;
}

std::string samples_csv(const std::vector<netsim::RateSample>& samples) {
  std::string out = std::string(kSamplesHeader) + "\n";
  for (const auto& s : samples) {
    out += std::to_string(s.drop) + "," + std::to_string(s.ue_id) + "," + format_number(s.throughput_bps) + "\n";
  }
  return out;
}

std::vector<netsim::RateSample> parse_samples_csv(const std::string& text) {
  std::vector<netsim::RateSample> out;
  for (const auto& f : read_rows(text, kSamplesHeader, 3)) {
    out.push_back({parse_int(f[0]), parse_int(f[1]), parse_number(f[2])});
  }
  return out;
}

std::string sweep_csv(const std::vector<externality::SweepPoint>& points) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& p : points) {
    out += format_number(p.n) + "," + format_number(p.rate5) + "," + format_number(p.ci_lo) + "," +
           format_number(p.ci_hi) + "\n";
  }
  return out;
}

std::vector<externality::SweepPoint> parse_sweep_csv(const std::string& text) {
  std::vector<externality::SweepPoint> out;
  for (const auto& f : read_rows(text, kSweepHeader, 4)) {
    out.push_back({parse_number(f[0]), parse_number(f[1]), parse_number(f[2]), parse_number(f[3])});
  }
  return out;
}

std::string market_csv(const std::vector<game::MarketRow>& rows) {
  std::string out = std::string(kMarketHeader) + "\n";
  const double nan = std::nan("");
  for (const auto& r : rows) {
    const auto& o = r.outcome;
    const bool bad = !r.error.empty();
    auto num = [&](double v) { return format_number(bad ? nan : v); };
    auto flag = [&](bool b) { return std::string(b ? "1" : "0"); };
    out += format_number(r.params.omega_hat) + "," + format_number(r.params.q_hat) + "," +
           format_number(r.params.mu) + "," + game::to_string(r.regime) + "," +
           game::to_string(r.params.convention) + "," + num(o.q1) + "," + num(o.q2) + "," + num(o.p1) + "," +
           num(o.p2) + "," + num(o.shares.n1) + "," + num(o.shares.n2) + "," + num(o.shares.omega_over) + "," +
           num(o.shares.omega_under) + "," + num(o.profit1) + "," + num(o.profit2) + "," +
           num(o.consumer_surplus) + "," + flag(!bad && o.conditions.eq8_ok) + "," +
           flag(!bad && o.conditions.eq9_ok) + "," + flag(r.prefers_sharing_1) + "," + flag(r.prefers_sharing_2) +
           "\n";
  }
  return out;
}

std::vector<game::MarketRow> parse_market_csv(const std::string& text) {
  std::vector<game::MarketRow> out;
  for (const auto& f : read_rows(text, kMarketHeader, 20)) {
    game::MarketRow r;
    r.params.omega_hat = parse_number(f[0]);
    r.params.q_hat = parse_number(f[1]);
    r.params.mu = parse_number(f[2]);
    r.regime = game::regime_from_string(f[3]);
    r.params.convention = game::convention_from_string(f[4]);
    auto& o = r.outcome;
    o.regime = r.regime;
    o.q1 = parse_number(f[5]);
    o.q2 = parse_number(f[6]);
    o.p1 = parse_number(f[7]);
    o.p2 = parse_number(f[8]);
    o.shares.n1 = parse_number(f[9]);
    o.shares.n2 = parse_number(f[10]);
    o.shares.omega_over = parse_number(f[11]);
    o.shares.omega_under = parse_number(f[12]);
    o.profit1 = parse_number(f[13]);
    o.profit2 = parse_number(f[14]);
    o.consumer_surplus = parse_number(f[15]);
    o.conditions.eq8_ok = parse_flag(f[16]);
    o.conditions.eq9_ok = parse_flag(f[17]);
    o.shares.valid = o.conditions.eq9_ok;
    r.prefers_sharing_1 = parse_flag(f[18]);
    r.prefers_sharing_2 = parse_flag(f[19]);
    if (std::isnan(o.q1) && std::isnan(o.p1) && std::isnan(o.consumer_surplus)) r.error = "error row";
    out.push_back(std::move(r));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace netshare::harness

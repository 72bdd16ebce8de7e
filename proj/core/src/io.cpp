#include "tdc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tdc::io {

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("parse error: " + what); }

}  // namespace

std::string format_design(const DesignFile& d) {
  std::ostringstream os;
  os << d.params.v << ' ' << d.params.k << ' ' << d.params.lambda << '\n';
  for (int i = 0; i < d.incidence.blocks(); ++i) {
    for (int j = 0; j < d.incidence.points(); ++j) os << (d.incidence.get(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

DesignFile parse_design(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) bad("empty design file");
  DesignFile d;
  {
    std::istringstream is(lines[0]);
    if (!(is >> d.params.v >> d.params.k >> d.params.lambda)) bad("design header");
  }
  if (static_cast<int>(lines.size()) < 1 + d.params.v) bad("design row count");
  d.incidence = design::IncidenceStructure(d.params.v, d.params.v);
  for (int i = 0; i < d.params.v; ++i) {
    const std::string& row = lines[1 + i];
    if (static_cast<int>(row.size()) != d.params.v) bad("design row length");
    for (int j = 0; j < d.params.v; ++j) {
      if (row[j] != '0' && row[j] != '1') bad("design entry");
      if (row[j] == '1') d.incidence.set(i, j, true);
    }
  }
  return d;
}

std::string format_orbit_matrix(const om::OrbitMatrix& m) {
  std::ostringstream os;
  os << m.params.v << ' ' << m.params.k << ' ' << m.params.lambda << ' ' << m.group_order << '\n';
  for (int i = 0; i < m.t(); ++i) os << m.row_orbit_sizes[i] << (i + 1 < m.t() ? ' ' : '\n');
  for (int j = 0; j < m.t(); ++j) os << m.col_orbit_sizes[j] << (j + 1 < m.t() ? ' ' : '\n');
  for (int i = 0; i < m.t(); ++i)
    for (int j = 0; j < m.t(); ++j) os << m.at(i, j) << (j + 1 < m.t() ? ' ' : '\n');
  return os.str();
}

om::OrbitMatrix parse_orbit_matrix(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.size() < 3) bad("orbit matrix header");
  om::OrbitMatrix m;
  {
    std::istringstream is(lines[0]);
    if (!(is >> m.params.v >> m.params.k >> m.params.lambda >> m.group_order)) bad("orbit matrix header");
  }
  auto parse_ints = [](const std::string& line) {
    std::istringstream is(line);
    std::vector<int> out;
    int x;
    while (is >> x) out.push_back(x);
    return out;
  };
  m.row_orbit_sizes = parse_ints(lines[1]);
  m.col_orbit_sizes = parse_ints(lines[2]);
  const int t = static_cast<int>(m.row_orbit_sizes.size());
  if (t == 0 || static_cast<int>(m.col_orbit_sizes.size()) != t) bad("orbit sizes");
  if (static_cast<int>(lines.size()) < 3 + t) bad("orbit matrix rows");
  m.s.reserve(static_cast<std::size_t>(t) * t);
  for (int i = 0; i < t; ++i) {
    auto row = parse_ints(lines[3 + i]);
    if (static_cast<int>(row.size()) != t) bad("orbit matrix row length");
    m.s.insert(m.s.end(), row.begin(), row.end());
  }
  return m;
}

std::string format_code(const code::TernaryCode& c) {
  std::ostringstream os;
  os << c.n << ' ' << c.k << '\n';
  for (int i = 0; i < c.k; ++i) {
    for (int j = 0; j < c.n; ++j) os << static_cast<char>('0' + c.generator.get(i, j));
    os << '\n';
  }
  return os.str();
}

code::TernaryCode parse_code(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) bad("empty code file");
  int n = 0, k = 0;
  {
    std::istringstream is(lines[0]);
    if (!(is >> n >> k)) bad("code header");
  }
  if (n <= 0 || k <= 0 || static_cast<int>(lines.size()) < 1 + k) bad("code dimensions");
  std::vector<std::string> rows(lines.begin() + 1, lines.begin() + 1 + k);
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) bad("code row length");
  code::TernaryCode c = code::code_from_generator(gf3::TritMatrix::from_strings(rows));
  if (c.k != k) bad("code generator not full rank");
  return c;
}

std::string format_weight_report(const weight::WeightReport& r) {
  std::ostringstream os;
  os << "n=" << r.n << '\n' << "k=" << r.k << '\n' << "d=" << r.d << '\n';
  os << "classification=" << weight::to_string(r.classification) << '\n';
  os << "counts=";
  bool first = true;
  for (const auto& [w, a] : r.counts) {
    if (!first) os << ',';
    os << w << ':' << a;
    first = false;
  }
  os << '\n';
  if (r.beta >= 0) os << "beta=" << r.beta << '\n';
  return os.str();
}

weight::WeightReport parse_weight_report(const std::string& text) {
  weight::WeightReport r;
  for (const auto& line : lines_of(text)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) bad("report line");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "n") r.n = std::stoi(val);
    else if (key == "k") r.k = std::stoi(val);
    else if (key == "d") r.d = std::stoi(val);
    else if (key == "beta") r.beta = std::stoll(val);
    else if (key == "classification") {
      if (val == "extremal") r.classification = weight::Classification::extremal;
      else if (val == "near_extremal") r.classification = weight::Classification::near_extremal;
      else if (val == "neither") r.classification = weight::Classification::neither;
      else bad("classification value");
    } else if (key == "counts") {
      std::istringstream is(val);
      std::string item;
      while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) bad("counts entry");
        r.counts[std::stoi(item.substr(0, colon))] = std::stoll(item.substr(colon + 1));
      }
    } else {
      bad("unknown report key " + key);
    }
  }
  return r;
}

std::string weight_report_json(const weight::WeightReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["d"] = r.d;
  j["classification"] = weight::to_string(r.classification);
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [w, a] : r.counts) counts[std::to_string(w)] = a;
  j["counts"] = counts;
  if (r.beta >= 0) j["beta"] = r.beta;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace tdc::io
